"""Ideal triangulations of 3-manifolds, angle structures and normal surfaces.

Tetrahedron vertices are 0..3 and face ``f`` is the face opposite vertex
``f``.  A gluing sends face ``f`` of tetrahedron ``t`` to face ``g`` of
tetrahedron ``u`` by a vertex permutation ``perm`` (a 4-tuple) with
``perm[f] == g``.  Each tetrahedron has six edge slots, the vertex pairs, in
three opposite pairs::

    pair 0: {0,1} and {2,3}
    pair 1: {0,2} and {1,3}
    pair 2: {0,3} and {1,2}

An angle structure assigns one angle per (tetrahedron, pair); angles sum to 1
(pi-units) in each tetrahedron and to the edge-sum target (default 2) around
each edge class.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconsistentGluing, InvariantViolation, NonOrientable, UnGluedFace
from .rational_lp import OPTIMAL, RationalLP, as_fraction, solve
from .surface import TriangulatedSurface, build_surface

ZERO = Fraction(0)
ONE = Fraction(1)

SLOTS = tuple(itertools.combinations(range(4), 2))
PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
SLOT_PAIR = {s: p for p, pair in enumerate(PAIRS) for s in pair}


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * 4
    for a, b in enumerate(perm):
        inv[b] = a
    return tuple(inv)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


class IdealTriangulation3:
    """Tetrahedra with face gluings, edge classes and valences."""

    def __init__(self, tet_count: int, gluing: dict, closed: bool = True):
        self.tet_count = tet_count
        self.gluing = dict(gluing)  # (t, f) -> (u, g, perm)
        if closed:
            for t in range(tet_count):
                for f in range(4):
                    if (t, f) not in self.gluing:
                        raise UnGluedFace(f"face {f} of tetrahedron {t} is not glued")
        parent = {(t, s): (t, s) for t in range(tet_count) for s in SLOTS}
        for (t, f), (u, g, perm) in self.gluing.items():
            for s in SLOTS:
                if f in s:
                    continue
                img = tuple(sorted((perm[s[0]], perm[s[1]])))
                a, b = _find(parent, (t, s)), _find(parent, (u, img))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        classes: dict = {}
        slot_edge = {}
        for t in range(tet_count):
            for s in SLOTS:
                r = _find(parent, (t, s))
                if r not in classes:
                    classes[r] = len(classes)
                slot_edge[(t, s)] = classes[r]
        self.slot_edge = slot_edge
        self.edge_count = len(classes)
        self.edge_slots = tuple(
            tuple(k for k, e in slot_edge.items() if e == idx) for idx in range(self.edge_count)
        )

    @property
    def valences(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.edge_slots)

    def is_orientable(self) -> bool:
        o: dict[int, int] = {}
        for start in range(self.tet_count):
            if start in o:
                continue
            o[start] = 1
            queue = deque([start])
            while queue:
                t = queue.popleft()
                for f in range(4):
                    if (t, f) not in self.gluing:
                        continue
                    u, g, perm = self.gluing[(t, f)]
                    want = -o[t] * _perm_sign(perm)
                    if u not in o:
                        o[u] = want
                        queue.append(u)
                    elif o[u] != want:
                        return False
        return True

    def vertex_link(self) -> TriangulatedSurface:
        """The boundary surface: one triangle per (tetrahedron, vertex).

        Triangle ``4 t + a`` has corners at the other three vertices of
        ``t`` in increasing order; its side in face ``b`` is slot index of
        ``b`` in that order.
        """

        def corners(a):
            return [b for b in range(4) if b != a]

        gl = []
        seen = set()
        for (t, f), (u, g, perm) in self.gluing.items():
            for a in range(4):
                if a == f:
                    continue
                key = (t, a, f)
                if key in seen:
                    continue
                a2, f2 = perm[a], g
                seen.add(key)
                seen.add((u, a2, f2))
                cs, cs2 = corners(a), corners(a2)
                k, j = cs.index(f), cs2.index(f2)
                start = cs[(k + 1) % 3]
                rev = perm[start] == cs2[(j + 2) % 3]
                gl.append(((4 * t + a, k), (4 * u + a2, j), rev))
        return build_surface(4 * self.tet_count, gl)

    def cusp_types(self) -> list[int]:
        """Euler characteristic of each vertex-link component.

        Works without orientations: link corners ``(t, a, b)`` (the end at
        vertex ``a`` of slot ``{a, b}``) are merged across every gluing.
        """
        parent = {(t, a, b): (t, a, b) for t in range(self.tet_count) for a in range(4) for b in range(4) if a != b}
        tri_parent = {(t, a): (t, a) for t in range(self.tet_count) for a in range(4)}
        for (t, f), (u, g, perm) in self.gluing.items():
            for a in range(4):
                if a == f:
                    continue
                x, y = _find(tri_parent, (t, a)), _find(tri_parent, (u, perm[a]))
                if x != y:
                    tri_parent[max(x, y)] = min(x, y)
                for b in range(4):
                    if b in (a, f):
                        continue
                    x, y = _find(parent, (t, a, b)), _find(parent, (u, perm[a], perm[b]))
                    if x != y:
                        parent[max(x, y)] = min(x, y)
        comps: dict = {}
        for key in tri_parent:
            comps.setdefault(_find(tri_parent, key), [0, set(), 0])[0] += 1
        for (t, a, b) in parent:
            comps[_find(tri_parent, (t, a))][1].add(_find(parent, (t, a, b)))
        for (t, f) in self.gluing:
            for a in range(4):
                if a != f:
                    comps[_find(tri_parent, (t, a))][2] += 1
        # every link edge was counted from both sides (boundary sides once)
        out = []
        for tris, verts, sides in comps.values():
            unglued = 3 * tris - sides
            edges = sides // 2 + unglued
            out.append(len(verts) - edges + tris)
        return out

    def describe(self) -> str:
        return f"IdealTriangulation3(tets={self.tet_count}, edges={self.edge_count}, valences={self.valences})"

    __repr__ = describe


def build_ideal_triangulation(tet_count: int, gluings: Iterable[Sequence], closed: bool = True) -> IdealTriangulation3:
    """Build from ``(t, f, u, g, perm)`` entries; the reverse gluing is implied.

    Both directions may be listed as long as they agree.
    """
    table: dict = {}
    for entry in gluings:
        t, f, u, g, perm = entry
        perm = tuple(int(x) for x in perm)
        if sorted(perm) != [0, 1, 2, 3]:
            raise InconsistentGluing(f"{perm} is not a permutation of 0..3")
        if not (0 <= t < tet_count and 0 <= u < tet_count and 0 <= f < 4 and 0 <= g < 4):
            raise InconsistentGluing(f"gluing {entry} refers to a missing tetrahedron or face")
        if perm[f] != g:
            raise InconsistentGluing(f"permutation {perm} does not send face {f} to face {g}")
        if (t, f) == (u, g):
            raise InconsistentGluing(f"face {f} of tetrahedron {t} glued to itself")
        for key, val in (((t, f), (u, g, perm)), ((u, g), (t, f, _inverse(perm)))):
            if key in table and table[key] != val:
                raise InconsistentGluing(f"face {key} glued twice")
            table[key] = val
    return IdealTriangulation3(tet_count, table, closed=closed)


# -- angle structures ---------------------------------------------------------------


@dataclass
class AngleStructure3:
    manifold: IdealTriangulation3
    angles: dict  # (t, pair) -> Fraction

    def check(self, target=2, strict: bool = False) -> bool:
        M = self.manifold
        for t in range(M.tet_count):
            if sum((self.angles[(t, p)] for p in range(3)), ZERO) != 1:
                return False
        for e, slots in enumerate(M.edge_slots):
            if sum((self.angles[(t, SLOT_PAIR[s])] for t, s in slots), ZERO) != as_fraction(target):
                return False
        return all(a > 0 if strict else a >= 0 for a in self.angles.values())


@dataclass
class DualCertificate3:
    v_tet: dict  # t -> value
    v_edge: dict  # e -> value
    objective: Fraction
    residuals: dict = field(default_factory=dict)  # (t, pair) -> v_S + v_e1 + v_e2

    def is_feasible(self) -> bool:
        return all(r <= 0 for r in self.residuals.values())


def _residuals(M: IdealTriangulation3, v_tet, v_edge) -> dict:
    out = {}
    for t in range(M.tet_count):
        for p, (s1, s2) in enumerate(PAIRS):
            out[(t, p)] = v_tet[t] + v_edge[M.slot_edge[(t, s1)]] + v_edge[M.slot_edge[(t, s2)]]
    return out


@dataclass
class HyperbolicLPResult:
    status: str  # "structure", "weak" or "none"
    structure: AngleStructure3 | None = None
    certificate: DualCertificate3 | None = None
    epsilon: Fraction | None = None


def _lp(M: IdealTriangulation3, target, with_eps: bool) -> tuple[RationalLP, list]:
    n = 3 * M.tet_count + (1 if with_eps else 0)
    eps = 3 * M.tet_count
    A, a, labels = [], [], []
    for t in range(M.tet_count):
        row = [ZERO] * n
        for p in range(3):
            row[3 * t + p] = ONE
        if with_eps:
            row[eps] = Fraction(3)
        A.append(row)
        a.append(ONE)
        labels.append(("tet", t))
    for e, slots in enumerate(M.edge_slots):
        row = [ZERO] * n
        for t, s in slots:
            row[3 * t + SLOT_PAIR[s]] += ONE
        if with_eps:
            row[eps] = Fraction(len(slots))
        A.append(row)
        a.append(as_fraction(target))
        labels.append(("edge", e))
    c = [ZERO] * n
    if with_eps:
        c[eps] = -ONE
    return RationalLP.build(A, a, c), labels


def _certificate(M, labels, y, target) -> DualCertificate3:
    vt = {i: val for (k, i), val in zip(labels, y) if k == "tet"}
    ve = {i: val for (k, i), val in zip(labels, y) if k == "edge"}
    obj = sum(vt.values(), ZERO) + as_fraction(target) * sum(ve.values(), ZERO)
    return DualCertificate3(vt, ve, obj, _residuals(M, vt, ve))


def linear_hyperbolic_lp(M: IdealTriangulation3, strict: bool = True, target=2) -> HyperbolicLPResult:
    """Search for a (weak) linear hyperbolic structure.

    Strict mode maximizes the smallest angle; a positive optimum gives a
    structure, a zero optimum falls back to a weak structure.  Infeasibility
    yields a Farkas certificate: ``v_S + v_e1 + v_e2 <= 0`` everywhere with
    positive objective ``sum v_S + target * sum v_e``.
    """
    if strict:
        lp, labels = _lp(M, target, True)
        out = solve(lp)
        if out.status == OPTIMAL:
            eps = out.x[3 * M.tet_count]
            angles = {(t, p): out.x[3 * t + p] + eps for t in range(M.tet_count) for p in range(3)}
            if eps > 0:
                return HyperbolicLPResult("structure", AngleStructure3(M, angles), epsilon=eps)
            res = HyperbolicLPResult("weak", AngleStructure3(M, angles), epsilon=ZERO)
            res.certificate = _certificate(M, labels, out.dual, target)
            return res
        return HyperbolicLPResult("none", certificate=_certificate(M, labels, out.farkas, target))
    lp, labels = _lp(M, target, False)
    out = solve(lp)
    if out.status == OPTIMAL:
        angles = {(t, p): out.x[3 * t + p] for t in range(M.tet_count) for p in range(3)}
        return HyperbolicLPResult("weak", AngleStructure3(M, angles))
    return HyperbolicLPResult("none", certificate=_certificate(M, labels, out.farkas, target))


# -- normal surfaces ------------------------------------------------------------------


@dataclass(frozen=True)
class NormalSurfaceVector:
    manifold: IdealTriangulation3
    triangles: tuple  # per tet, 4 counts (one per vertex)
    quads: tuple  # per tet, 3 counts (one per opposite pair)

    @classmethod
    def make(cls, M: IdealTriangulation3, triangles, quads) -> "NormalSurfaceVector":
        tri = tuple(tuple(int(x) for x in row) for row in triangles)
        qu = tuple(tuple(int(x) for x in row) for row in quads)
        if len(tri) != M.tet_count or len(qu) != M.tet_count:
            raise InvariantViolation("one row of counts per tetrahedron is required")
        if any(len(r) != 4 for r in tri) or any(len(r) != 3 for r in qu):
            raise InvariantViolation("need 4 triangle counts and 3 quad counts per tetrahedron")
        if any(x < 0 for r in tri + qu for x in r):
            raise InvariantViolation("normal coordinates must be nonnegative")
        return cls(M, tri, qu)

    @classmethod
    def vertex_linking(cls, M: IdealTriangulation3) -> "NormalSurfaceVector":
        return cls.make(M, [[1] * 4] * M.tet_count, [[0] * 3] * M.tet_count)

    @classmethod
    def zero(cls, M: IdealTriangulation3) -> "NormalSurfaceVector":
        return cls.make(M, [[0] * 4] * M.tet_count, [[0] * 3] * M.tet_count)

    def u(self, t: int) -> int:
        return sum(self.triangles[t]) + 2 * sum(self.quads[t])

    def slot_count(self, t: int, slot: tuple[int, int]) -> int:
        """Points where the surface meets edge slot ``slot`` of tetrahedron ``t``."""
        a, b = slot
        tri = self.triangles[t][a] + self.triangles[t][b]
        quad = sum(q for p, q in enumerate(self.quads[t]) if slot not in PAIRS[p])
        return tri + quad

    def intersection_numbers(self) -> dict[int, int]:
        """i_e per edge class; every slot of a class must report the same count."""
        M = self.manifold
        out = {}
        for e, slots in enumerate(M.edge_slots):
            counts = {self.slot_count(t, s) for t, s in slots}
            if len(counts) != 1:
                raise InvariantViolation(f"edge {e} is met {sorted(counts)} times from different tetrahedra")
            out[e] = counts.pop()
        return out

    def is_quad_free(self) -> bool:
        return not any(any(q) for q in self.quads)

    def is_embedded_compatible(self) -> bool:
        return all(sum(1 for q in row if q) <= 1 for row in self.quads)


def normal_chi(S: NormalSurfaceVector) -> Fraction:
    i = S.intersection_numbers()
    return Fraction(sum(i.values())) - Fraction(sum(S.u(t) for t in range(S.manifold.tet_count)), 2)


def certificate_from_normal_surface(S: NormalSurfaceVector, target=2) -> DualCertificate3:
    """``v_S = -u_S`` and ``v_e = i_e``; every constraint must hold."""
    M = S.manifold
    i = S.intersection_numbers()
    vt = {t: Fraction(-S.u(t)) for t in range(M.tet_count)}
    ve = {e: Fraction(i[e]) for e in range(M.edge_count)}
    res = _residuals(M, vt, ve)
    bad = [k for k, r in res.items() if r > 0]
    if bad:
        raise InvariantViolation(f"dual constraints violated at {bad}")
    obj = sum(vt.values(), ZERO) + as_fraction(target) * sum(ve.values(), ZERO)
    return DualCertificate3(vt, ve, obj, res)


def enumerate_normal_vectors(M: IdealTriangulation3, max_count: int = 1, embedded: bool = True):
    """Nonzero vectors with counts up to ``max_count`` and consistent edge counts."""
    rng = range(max_count + 1)
    per_tet = []
    for tri in itertools.product(rng, repeat=4):
        for qu in itertools.product(rng, repeat=3):
            if embedded and sum(1 for q in qu if q) > 1:
                continue
            per_tet.append((tri, qu))
    for combo in itertools.product(per_tet, repeat=M.tet_count):
        tris = [c[0] for c in combo]
        quads = [c[1] for c in combo]
        if not any(any(r) for r in tris) and not any(any(r) for r in quads):
            continue
        S = NormalSurfaceVector.make(M, tris, quads)
        try:
            S.intersection_numbers()
        except InvariantViolation:
            continue
        yield S


@dataclass
class SurfaceVerdict:
    surface: NormalSurfaceVector
    chi: Fraction
    obstructs_weak: bool
    obstructs_strict: bool
    boundary_parallel: bool  # heuristic: quad-free


@dataclass
class HextReport:
    verdicts: list
    lp_strict: HyperbolicLPResult
    lp_weak: HyperbolicLPResult
    consistent: bool

    @property
    def obstructed_weak(self) -> bool:
        return any(v.obstructs_weak for v in self.verdicts)

    @property
    def obstructed_strict(self) -> bool:
        return any(v.obstructs_strict for v in self.verdicts)


def hext_check(M: IdealTriangulation3, surfaces: Sequence[NormalSurfaceVector], target=2) -> HextReport:
    """Euler characteristic obstructions, cross-checked with the LP.

    A surface with positive Euler characteristic rules out weak structures;
    one with nonnegative Euler characteristic and some quad rules out strict
    ones.  "Boundary-parallel" is approximated by "quad-free".
    """
    verdicts = []
    for S in surfaces:
        chi = normal_chi(S)
        bp = S.is_quad_free()
        verdicts.append(SurfaceVerdict(S, chi, chi > 0, chi >= 0 and not bp, bp))
    strict = linear_hyperbolic_lp(M, strict=True, target=target)
    weak = linear_hyperbolic_lp(M, strict=False, target=target)
    ok = True
    if any(v.obstructs_weak for v in verdicts) and weak.status != "none":
        ok = False
    if any(v.obstructs_strict for v in verdicts) and strict.status == "structure":
        ok = False
    return HextReport(verdicts, strict, weak, ok)


# -- fixtures -------------------------------------------------------------------------


def two_tet_census() -> IdealTriangulation3:
    """An orientable two-tetrahedron triangulation with one torus cusp and
    two edges of valence 6."""
    return build_ideal_triangulation(2, TWO_TET_CENSUS)


def one_tet_valence_one() -> IdealTriangulation3:
    """One tetrahedron with an edge class of valence 1."""
    return build_ideal_triangulation(1, [(0, 2, 0, 3, (0, 1, 3, 2)), (0, 0, 0, 1, (1, 0, 3, 2))])


def search_two_tet(valences=(6, 6), orientable=True, cusps=(0,)):
    """Enumerate two-tetrahedron gluings with the given invariants."""
    faces = [(t, f) for t in range(2) for f in range(4)]

    def matchings(items):
        if not items:
            yield []
            return
        a = items[0]
        for k in range(1, len(items)):
            b = items[k]
            rest = items[1:k] + items[k + 1 :]
            for m in matchings(rest):
                yield [(a, b)] + m

    for m in matchings(faces):
        options = []
        for (t, f), (u, g) in m:
            perms = [p for p in itertools.permutations(range(4)) if p[f] == g]
            options.append([(t, f, u, g, p) for p in perms])
        for choice in itertools.product(*options):
            try:
                M = build_ideal_triangulation(2, choice)
            except InconsistentGluing:
                continue
            if tuple(sorted(M.valences)) != tuple(sorted(valences)):
                continue
            if orientable and not M.is_orientable():
                continue
            try:
                if sorted(M.cusp_types()) != sorted(cusps):
                    continue
            except NonOrientable:
                continue
            yield choice


# Frozen outputs of ``search_two_tet``.
TWO_TET_CENSUS = [
    (0, 0, 1, 0, (0, 1, 3, 2)),
    (0, 1, 1, 1, (2, 1, 0, 3)),
    (0, 2, 1, 2, (0, 3, 2, 1)),
    (0, 3, 1, 3, (1, 0, 2, 3)),
]

WEAK_ONLY = [
    (0, 0, 1, 0, (0, 1, 2, 3)),
    (0, 1, 1, 1, (0, 1, 2, 3)),
    (0, 2, 1, 2, (1, 3, 2, 0)),
    (0, 3, 1, 3, (1, 2, 0, 3)),
]


def weak_only() -> IdealTriangulation3:
    """Valences (2, 10): the valence-2 edge pins two angles to 1."""
    return build_ideal_triangulation(2, WEAK_ONLY)
