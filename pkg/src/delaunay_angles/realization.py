"""From face angles to planar geometry, and back.

Angles arrive in pi-units (exact or float) and are converted to radians here.
Conventions:

* side ``i`` of a face is opposite corner ``i`` and its length is
  proportional to the sine of that corner's angle;
* a developed face stores its three corners as complex numbers, in
  counterclockwise order;
* the root face's longest side runs from 0 to 1 on the real axis.
"""
from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .errors import DegenerateAngle, DegeneratePosition
from .feasibility import AngleAssignment, FaceAngleSolution, build_program_L
from .rational_lp import OPTIMAL, solve
from .surface import TriangulatedSurface, surface_from_triangles

ANGLE_FLOOR = 1e-9
TRIG_TOL = 1e-12
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class TriangleShape:
    angles: tuple[float, float, float]  # radians
    ratios: tuple[float, float, float]  # side i opposite corner i, longest = 1


def shape_of(angles_pi: Sequence, floor: float = ANGLE_FLOOR) -> TriangleShape:
    rad = tuple(float(a) * math.pi for a in angles_pi)
    if min(rad) < floor:
        raise DegenerateAngle(f"angle {min(rad)} rad is below the floor {floor}")
    s = [math.sin(a) for a in rad]
    m = max(s)
    return TriangleShape(rad, tuple(x / m for x in s))


def angles_to_shapes(sol: FaceAngleSolution, floor: float = ANGLE_FLOOR) -> dict[int, TriangleShape]:
    return {f: shape_of(sol.face_angles(f), floor) for f in sol.surface.faces}


# -- development --------------------------------------------------------------------


@dataclass
class EdgeMismatch:
    length: float  # |ratio of the two developed copies| - 1
    angle: float  # rotation taking one copy onto the other, in (-pi, pi]
    position: float  # largest distance between matching endpoints


@dataclass
class PlanarDevelopment:
    surface: TriangulatedSurface
    positions: dict  # face -> (z0, z1, z2)
    tree: list  # darts (f, i) through which a child face was laid out
    mismatches: dict = field(default_factory=dict)  # interior non-tree edge -> EdgeMismatch
    scales: dict = field(default_factory=dict)

    def corner(self, f: int, c: int) -> complex:
        return self.positions[f][c]

    def vertex_positions(self) -> dict[int, complex]:
        """Mean position of each vertex over its corners."""
        T = self.surface
        out = {}
        for v, cs in enumerate(T.vertex_corners):
            pts = [self.positions[f][c] for f, c in cs if f in self.positions]
            if pts:
                out[v] = sum(pts) / len(pts)
        return out

    def vertex_spread(self) -> float:
        """Largest distance between two developed copies of the same vertex."""
        T = self.surface
        worst = 0.0
        for cs in T.vertex_corners:
            pts = [self.positions[f][c] for f, c in cs if f in self.positions]
            for a in pts:
                for b in pts:
                    worst = max(worst, abs(a - b))
        return worst

    def max_mismatch(self) -> float:
        if not self.mismatches:
            return 0.0
        return max(max(abs(m.length), abs(m.angle), m.position) for m in self.mismatches.values())

    def is_positively_oriented(self) -> bool:
        for z0, z1, z2 in self.positions.values():
            if ((z1 - z0).conjugate() * (z2 - z0)).imag <= 0:
                return False
        return True


def _third_corner(P: complex, Q: complex, angle_at_P: float, length_PR: float) -> complex:
    """R with the triangle P, Q, R counterclockwise and the given angle at P."""
    d = (Q - P) / abs(Q - P)
    return P + d * cmath.exp(1j * angle_at_P) * length_PR


def develop(T: TriangulatedSurface, sol: FaceAngleSolution, root: int = 0) -> PlanarDevelopment:
    """Lay faces out in the plane breadth-first across the dual graph.

    Every interior edge not used by the spanning tree gets an
    :class:`EdgeMismatch` comparing the two developed copies of it.
    """
    shapes = angles_to_shapes(sol)
    positions: dict[int, tuple] = {}
    scales: dict[int, float] = {}
    tree = []
    sh = shapes[root]
    s = max(range(3), key=lambda i: sh.ratios[i])
    P, Q = 0j, 1 + 0j
    z = [0j] * 3
    z[(s + 1) % 3], z[(s + 2) % 3] = P, Q
    z[s] = _third_corner(P, Q, sh.angles[(s + 1) % 3], sh.ratios[(s + 2) % 3] / sh.ratios[s])
    positions[root] = tuple(z)
    scales[root] = 1.0 / sh.ratios[s]
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for i in range(3):
            p = T.partner((f, i))
            if p is None:
                continue
            g, j = p
            if g in positions:
                continue
            A = positions[f][(i + 1) % 3]
            B = positions[f][(i + 2) % 3]
            gs = shapes[g]
            scale = abs(A - B) / gs.ratios[j]
            w = [0j] * 3
            w[(j + 1) % 3], w[(j + 2) % 3] = B, A
            w[j] = _third_corner(B, A, gs.angles[(j + 1) % 3], scale * gs.ratios[(j + 2) % 3])
            positions[g] = tuple(w)
            scales[g] = scale
            tree.append((f, i))
            queue.append(g)
    tree_edges = {T.dart_edge[d] for d in tree}
    mism = {}
    for e in T.interior_edges:
        if e in tree_edges:
            continue
        (f, i), (g, j) = T.edges[e]
        if f not in positions or g not in positions:
            continue
        A_f, B_f = positions[f][(i + 1) % 3], positions[f][(i + 2) % 3]
        A_g, B_g = positions[g][(j + 2) % 3], positions[g][(j + 1) % 3]
        ratio = (B_f - A_f) / (B_g - A_g)
        mism[e] = EdgeMismatch(abs(ratio) - 1.0, cmath.phase(ratio), max(abs(A_f - A_g), abs(B_f - B_g)))
    return PlanarDevelopment(T, positions, tree, mism, scales)


def similarity_fit(source: Sequence[complex], target: Sequence[complex]) -> tuple[complex, complex, float]:
    """Best orientation-preserving similarity ``z -> a z + b`` and its relative error.

    The error is the RMS residual divided by the RMS spread of the target.
    """
    x = np.asarray(source, dtype=complex)
    y = np.asarray(target, dtype=complex)
    xc, yc = x - x.mean(), y - y.mean()
    a = np.vdot(xc, yc) / np.vdot(xc, xc)
    b = y.mean() - a * x.mean()
    resid = np.sqrt(np.mean(np.abs(a * x + b - y) ** 2))
    spread = np.sqrt(np.mean(np.abs(yc) ** 2))
    return complex(a), complex(b), float(resid / spread)


# -- holonomy ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HolonomyValue:
    dilatation: float  # H_d, log of the scale factor
    rotation: float  # H_r, total turning in radians (not reduced mod 2 pi)


def _check_cycle(T: TriangulatedSurface, cycle: Sequence[tuple[int, int]]):
    steps = []
    for k, (f, i) in enumerate(cycle):
        p = T.partner((f, i))
        if p is None:
            raise ValueError(f"dart {(f, i)} is on the boundary")
        nxt = cycle[(k + 1) % len(cycle)]
        if p[0] != nxt[0]:
            raise ValueError(f"dart {(f, i)} leads to face {p[0]}, not {nxt[0]}")
        steps.append(((f, i), p))
    return steps


def holonomy(T: TriangulatedSurface, sol: FaceAngleSolution, cycle: Sequence[tuple[int, int]]) -> HolonomyValue:
    """Holonomy of the similarity structure along a closed dual walk.

    ``cycle`` lists the darts crossed, each leaving a face; the partner of each
    dart must lie in the face of the next one (cyclically).  The dilatational
    part sums ``log(l_f(i) / l_g(j))`` over the crossings.  The rotational part
    adds, in each face, the corner angle between the entry and exit sides,
    positive when the walk turns left around it, so a counterclockwise loop
    around a vertex gives that vertex's cone angle.
    """
    shapes = angles_to_shapes(sol)
    steps = _check_cycle(T, cycle)
    hd = 0.0
    hr = 0.0
    n = len(steps)
    for k in range(n):
        (f, i), (g, j) = steps[k]
        hd += math.log(shapes[f].ratios[i] / shapes[g].ratios[j])
        out_slot = steps[(k + 1) % n][0][1]
        if out_slot == (j + 2) % 3:
            hr += shapes[g].angles[(j + 1) % 3]
        elif out_slot == (j + 1) % 3:
            hr -= shapes[g].angles[(j + 2) % 3]
    return HolonomyValue(hd, hr)


def composite_similarity(T: TriangulatedSurface, sol: FaceAngleSolution, cycle: Sequence[tuple[int, int]]) -> complex:
    """Linear part ``a`` of the similarity obtained by developing along ``cycle``.

    The first face is laid out, the walk is developed face by face and the
    final copy of the first face is compared with the original.
    """
    shapes = angles_to_shapes(sol)
    steps = _check_cycle(T, cycle)

    def layout(g, j, A, B):
        gs = shapes[g]
        scale = abs(A - B) / gs.ratios[j]
        w = [0j] * 3
        w[(j + 1) % 3], w[(j + 2) % 3] = B, A
        w[j] = _third_corner(B, A, gs.angles[(j + 1) % 3], scale * gs.ratios[(j + 2) % 3])
        return w

    f0, i0 = cycle[0]
    # lay out f0 with dart i0's far end fixed; any placement works
    sh = shapes[f0]
    z = [0j] * 3
    z[(i0 + 1) % 3], z[(i0 + 2) % 3] = 0j, sh.ratios[i0] + 0j
    z[i0] = _third_corner(0j, z[(i0 + 2) % 3], sh.angles[(i0 + 1) % 3], sh.ratios[(i0 + 2) % 3])
    start = list(z)
    cur = start
    for (f, i), (g, j) in steps:
        cur = layout(g, j, cur[(i + 1) % 3], cur[(i + 2) % 3])
    c = (i0 + 1) % 3
    d = (i0 + 2) % 3
    return (cur[d] - cur[c]) / (start[d] - start[c])


def dual_cycle_basis(T: TriangulatedSurface, root: int = 0) -> list[list[tuple[int, int]]]:
    """One dual cycle per interior edge outside a breadth-first spanning tree."""
    parent: dict[int, tuple | None] = {root: None}
    queue = deque([root])
    tree = set()
    while queue:
        f = queue.popleft()
        for i in range(3):
            p = T.partner((f, i))
            if p is None or p[0] in parent:
                continue
            parent[p[0]] = (f, i)
            tree.add(T.dart_edge[(f, i)])
            queue.append(p[0])

    def path_from_root(f):
        darts = []
        while parent[f] is not None:
            darts.append(parent[f])
            f = parent[f][0]
        return darts[::-1]

    cycles = []
    for e in T.interior_edges:
        if e in tree:
            continue
        (f, i), (g, j) = T.edges[e]
        down_f = path_from_root(f)
        down_g = path_from_root(g)
        # walk root -> f, cross e into g, walk g -> root
        up_g = []
        for d in reversed(down_g):
            up_g.append(T.partner(d))
        cycle = down_f + [(f, i)] + up_g
        # drop backtracking across the shared stem
        while len(cycle) >= 2 and T.partner(cycle[0]) == cycle[-1]:
            cycle = cycle[1:-1]
        cycles.append(cycle)
    return cycles


def vertex_loop(T: TriangulatedSurface, v: int) -> list[tuple[int, int]]:
    """Counterclockwise dual loop around an interior vertex."""
    f, c = T.vertex_corners[v][0]
    cycle = []
    start = (f, c)
    while True:
        # leave through the side from corner c to corner c + 2 (slot c + 1)
        d = (f, (c + 1) % 3)
        cycle.append(d)
        g, j = T.partner(d)
        # corner c of f (the far end of the dart) is glued to corner j + 1 of g
        f, c = g, (j + 1) % 3
        if (f, c) == start:
            return cycle


# -- Euclidean representative ------------------------------------------------------------


def _log2sin_grad(alpha_rad: np.ndarray) -> np.ndarray:
    return -np.log(2.0 * np.sin(alpha_rad))


def euclidean_solution(
    T: TriangulatedSurface,
    delta_float: Sequence[float] | None = None,
    start: FaceAngleSolution | None = None,
    extra_rows: Sequence[tuple[dict, float]] = (),
    tol: float = 1e-13,
    max_iter: int = 200,
) -> FaceAngleSolution:
    """Angles maximizing the sum of Lobachevsky functions on the angle space.

    The angle space is cut out by the face rows, the edge rows (with
    right-hand sides ``delta_float`` in pi-units) and any ``extra_rows`` given
    as ``({(f, c): coefficient}, rhs)``.  Its unique critical point has
    consistent edge lengths around every interior vertex, so the returned
    angles describe a Euclidean structure there.  Newton's method runs in
    null-space coordinates from ``start``, projected onto the float
    constraints.  Returned angles are floats in pi-units.
    """
    from scipy.linalg import null_space

    F = T.face_count
    n = 3 * F
    rows, rhs = [], []
    for f in T.faces:
        r = np.zeros(n)
        r[3 * f : 3 * f + 3] = 1.0
        rows.append(r)
        rhs.append(1.0)
    if delta_float is not None:
        for e, darts in enumerate(T.edges):
            r = np.zeros(n)
            for f, c in darts:
                r[3 * f + c] += 1.0
            rows.append(r)
            rhs.append(float(delta_float[e]))
    for coeffs, b in extra_rows:
        r = np.zeros(n)
        for (f, c), v in coeffs.items():
            r[3 * f + c] += v
        rows.append(r)
        rhs.append(float(b))
    A = np.array(rows)
    b = np.array(rhs)
    if start is None:
        x0 = np.full(n, 1.0 / 3.0)
    else:
        x0 = np.array([float(start.angles[(f, c)]) for f in T.faces for c in range(3)])
    x0 = x0 - np.linalg.pinv(A) @ (A @ x0 - b)
    if x0.min() <= 0:
        raise DegenerateAngle("projected starting point has a nonpositive angle")
    N = null_space(A)
    x = x0
    for _ in range(max_iter):
        if N.shape[1] == 0:
            break
        g = N.T @ _log2sin_grad(np.pi * x)
        if np.linalg.norm(g) < tol:
            break
        H = -(N.T * (np.pi / np.tan(np.pi * x))) @ N
        d = np.linalg.solve(H, -g)
        dx = N @ d
        # largest step keeping every angle inside (0, 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            lim_lo = np.where(dx < 0, -x / dx, np.inf)
            lim_hi = np.where(dx > 0, (1 - x) / dx, np.inf)
        tmax = float(min(lim_lo.min(), lim_hi.min()))
        t = min(1.0, 0.95 * tmax)

        def slope(s):
            return float(_log2sin_grad(np.pi * (x + s * dx)) @ dx)

        if slope(t) < 0:
            lo, hi = 0.0, t
            for _ in range(60):
                mid = (lo + hi) / 2
                if slope(mid) > 0:
                    lo = mid
                else:
                    hi = mid
            t = (lo + hi) / 2
        x = x + t * dx
    return FaceAngleSolution(T, {(f, c): float(x[3 * f + c]) for f in T.faces for c in range(3)})


def rationalize_deltas(T: TriangulatedSurface, values: Sequence[float], max_denominator: int = 2**16) -> AngleAssignment:
    """Rational approximations whose total is exactly the number of faces."""
    vals = [Fraction(v).limit_denominator(max_denominator) for v in values]
    fix = Fraction(T.face_count) - sum(vals)
    k = max(range(len(vals)), key=lambda e: vals[e])
    vals[k] += fix
    return AngleAssignment(T, vals)


# -- shears -------------------------------------------------------------------------------


def shear_coordinates(T: TriangulatedSurface, sol: FaceAngleSolution) -> dict[int, float]:
    """Log cross-ratio modulus across each interior edge.

    For the edge shared by ``t1 = (f, i)`` and ``t2 = (g, j)`` let ``A`` and
    ``B`` be its endpoints with ``A`` at corner ``i + 1`` of ``t1``, and ``C``,
    ``D`` the opposite corners.  Then
    ``r = log(|AC| |BD| / (|BC| |AD|))``, each ratio taken inside one face.
    Swapping the two faces swaps ``A`` and ``B`` as well, so ``r`` does not
    depend on which face is called ``t1``.
    """
    shapes = angles_to_shapes(sol)
    out = {}
    for e in T.interior_edges:
        (f, i), (g, j) = T.edges[e]
        sf, sg = shapes[f].ratios, shapes[g].ratios
        out[e] = math.log(sf[(i + 2) % 3] / sf[(i + 1) % 3]) + math.log(sg[(j + 2) % 3] / sg[(j + 1) % 3])
    return out


# -- Delaunay ------------------------------------------------------------------------------


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _incircle(a, b, c, d) -> float:
    """Positive when d is inside the circle through the counterclockwise a, b, c.

    Normalized by the circumradius so the tolerance is a relative distance.
    """
    ax, ay = a[0] - d[0], a[1] - d[1]
    bx, by = b[0] - d[0], b[1] - d[1]
    cx, cy = c[0] - d[0], c[1] - d[1]
    det = (
        (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay)
    )
    return det


def _circumcircle(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    return (ux, uy), math.hypot(ax - ux, ay - uy)


def _angle_at(p, q, r) -> float:
    """Angle at p of triangle p, q, r in radians."""
    v = complex(q[0] - p[0], q[1] - p[1])
    w = complex(r[0] - p[0], r[1] - p[1])
    return abs(cmath.phase(w / v))


@dataclass
class DelaunayResult:
    surface: TriangulatedSurface
    delta: AngleAssignment  # floats, pi-units
    boundary_angles: dict  # vertex -> float, pi-units
    triangles: list
    points: list

    def vertex_point(self, v: int):
        return self.points[self.surface.vertex_labels[v]]


def delaunay_of_points(points: Sequence[Sequence[float]], tol: float = GEOM_TOL) -> DelaunayResult:
    """Delaunay triangulation by the empty-circumcircle test over all triples.

    Raises :class:`DegeneratePosition` when a point lies within ``tol``
    (relative to the circumradius) of some candidate circumcircle, or when
    three hull points are nearly collinear.
    """
    pts = [(float(p[0]), float(p[1])) for p in points]
    n = len(pts)
    if n < 3:
        raise DegeneratePosition("need at least three points")
    scale = max(math.hypot(p[0] - q[0], p[1] - q[1]) for p, q in combinations(pts, 2))
    tris = []
    for i, j, k in combinations(range(n), 3):
        o = _orient(pts[i], pts[j], pts[k])
        if abs(o) <= tol * scale * scale:
            # collinear triple; harmless unless it would bound an empty circle
            continue
        tri = (i, j, k) if o > 0 else (i, k, j)
        centre, R = _circumcircle(*(pts[t] for t in tri))
        empty = True
        for m in range(n):
            if m in tri:
                continue
            dist = math.hypot(pts[m][0] - centre[0], pts[m][1] - centre[1])
            if abs(dist - R) <= tol * R:
                raise DegeneratePosition(f"point {m} is (nearly) on the circumcircle of {tri}")
            if dist < R:
                empty = False
                break
        if empty:
            tris.append(tri)
    if not tris:
        raise DegeneratePosition("all points are collinear")
    T = surface_from_triangles(tris)
    vals = []
    for darts in T.edges:
        total = 0.0
        for f, c in darts:
            a, b, cc = tris[f][c], tris[f][(c + 1) % 3], tris[f][(c + 2) % 3]
            total += _angle_at(pts[a], pts[b], pts[cc]) / math.pi
        vals.append(total)
    delta = AngleAssignment.floats(T, vals)
    lam = {}
    for v in range(T.vertex_count):
        if T.boundary_vertex[v]:
            s = 0.0
            for f, c in T.vertex_corners[v]:
                a, b, cc = tris[f][c], tris[f][(c + 1) % 3], tris[f][(c + 2) % 3]
                s += _angle_at(pts[a], pts[b], pts[cc]) / math.pi
            lam[v] = s
    # hull sanity: no boundary vertex may be a straight angle
    for v, x in lam.items():
        if abs(x - 1.0) <= tol:
            raise DegeneratePosition(f"hull vertex {T.vertex_labels[v]} is (nearly) collinear with its neighbours")
    return DelaunayResult(T, delta, lam, tris, pts)


def face_angles_of_points(T: TriangulatedSurface, tris, pts) -> FaceAngleSolution:
    angles = {}
    for f, tri in enumerate(tris):
        for c in range(3):
            a, b, cc = tri[c], tri[(c + 1) % 3], tri[(c + 2) % 3]
            angles[(f, c)] = _angle_at(pts[a], pts[b], pts[cc]) / math.pi
    return FaceAngleSolution(T, angles)


@dataclass
class DelaunayReport:
    passed: bool
    violating_edges: list

    def __bool__(self) -> bool:
        return self.passed


def verify_delaunay(T: TriangulatedSurface, data, tol: float = GEOM_TOL) -> DelaunayReport:
    """Interior edges whose dihedral angle exceeds pi.

    ``data`` is a :class:`FaceAngleSolution` or an :class:`AngleAssignment`.
    Exact rational values are compared exactly against 1 (pi-units); float
    values may exceed pi by at most ``tol`` radians.
    """
    if isinstance(data, FaceAngleSolution):
        values = [data.dihedral(e) for e in range(T.edge_count)]
    else:
        values = list(data)
    bad = []
    for e in T.interior_edges:
        v = values[e]
        if isinstance(v, (Fraction, int)):
            if v > 1:
                bad.append(e)
        elif float(v) * math.pi > math.pi + tol:
            bad.append(e)
    return DelaunayReport(not bad, bad)


# -- round trip ----------------------------------------------------------------------------


@dataclass
class RoundTrip:
    delaunay: DelaunayResult
    lp_solution: FaceAngleSolution
    euclidean: FaceAngleSolution
    development: PlanarDevelopment
    relative_error: float


def round_trip(points: Sequence[Sequence[float]]) -> RoundTrip:
    """Points -> Delaunay angles -> exact LP -> Euclidean angles -> development.

    The development is compared with the original points by the best
    orientation-preserving similarity.
    """
    dr = delaunay_of_points(points)
    T = dr.surface
    exact = rationalize_deltas(T, dr.delta.values)
    prog = build_program_L(T, exact)
    out = solve(prog.lp)
    if out.status != OPTIMAL or out.x[prog.eps_var] <= 0:
        raise DegenerateAngle("rationalized Delaunay angles are not realizable")
    eps = out.x[prog.eps_var]
    lp_sol = FaceAngleSolution(T, {k: out.x[j] + eps for k, j in prog.corner_var.items()})
    euc = euclidean_solution(T, dr.delta.values, start=lp_sol)
    dev = develop(T, euc)
    vp = dev.vertex_positions()
    src = [vp[v] for v in range(T.vertex_count)]
    tgt = [complex(*dr.vertex_point(v)) for v in range(T.vertex_count)]
    _, _, err = similarity_fit(src, tgt)
    return RoundTrip(dr, lp_sol, euc, dev, err)
