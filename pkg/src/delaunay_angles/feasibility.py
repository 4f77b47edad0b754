"""Deciding whether prescribed dihedral angles come from angles of triangles.

All angles are measured in units of pi, so a Euclidean triangle has angle
sum 1.  Given a triangulated surface ``T`` and a value ``Delta(e)`` per edge,
the question is whether there are positive face angles with every face
summing to 1 and every edge seeing its prescribed dihedral angle (the sum of
the two opposite corner angles on an interior edge, the single opposite angle
on a boundary edge).

Several equivalent deciders live here:

* the exact linear program with maximized minimum angle (:func:`decide_lp`),
* the excess inequalities over every face set
  (:func:`check_conditions_bruteforce`),
* the same inequalities over simple face sets only
  (:func:`check_conditions_simple`),
* the curvature inequalities over closed subcomplexes
  (:func:`check_curvature_conditions`).

Infeasible answers carry a violating face set that can be checked by hand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DisconnectedSurface,
    MissingAngle,
    NoBoundary,
    NotADisk,
    OracleLimitExceeded,
)
from .rational_lp import (
    INFEASIBLE,
    OPTIMAL,
    GenericLP,
    RationalLP,
    as_fraction,
    solve,
    solve_generic,
)
from .surface import (
    ClosedSubcomplex,
    FaceSet,
    TriangulatedSurface,
    _component,
    connected_subsets,
    enumerate_minimal_noncoterminous_cutsets,
    enumerate_simple_subcomplexes,
    face_set_edges,
    relative_boundary_edges,
)

ZERO = Fraction(0)
ONE = Fraction(1)
DEFAULT_ORACLE_LIMIT = 20


# -- data types -------------------------------------------------------------------


class AngleAssignment:
    """Dihedral angles ``Delta(e)`` per edge, in pi-units."""

    def __init__(self, surface: TriangulatedSurface, values, exact: bool = True):
        self.surface = surface
        self.exact = exact
        if isinstance(values, Mapping):
            missing = [e for e in range(surface.edge_count) if e not in values]
            if missing:
                raise MissingAngle(f"no dihedral angle for edges {missing}")
            vals = [values[e] for e in range(surface.edge_count)]
        else:
            vals = list(values)
            if len(vals) != surface.edge_count:
                raise MissingAngle(f"expected {surface.edge_count} dihedral angles, got {len(vals)}")
        self.values: tuple[Fraction, ...] = tuple(as_fraction(v) for v in vals) if exact else tuple(float(v) for v in vals)

    @classmethod
    def floats(cls, surface: TriangulatedSurface, values) -> "AngleAssignment":
        """Floating-point angles (pi-units) for measured data; not for the exact deciders."""
        return cls(surface, values, exact=False)

    @classmethod
    def from_face_angles(cls, surface: TriangulatedSurface, angles: Mapping) -> "AngleAssignment":
        """Dihedral angles seen by a given assignment of corner angles."""
        vals = []
        for darts in surface.edges:
            vals.append(sum((as_fraction(angles[d]) for d in darts), ZERO))
        return cls(surface, vals)

    def __getitem__(self, e: int) -> Fraction:
        return self.values[e]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, AngleAssignment) and other.surface is self.surface and other.values == self.values

    def __repr__(self) -> str:
        return f"AngleAssignment({[str(v) for v in self.values]})"

    @property
    def is_delaunay(self) -> bool:
        T = self.surface
        return all(self.values[e] <= 1 for e in T.interior_edges)

    @property
    def domain(self) -> str:
        return "delaunay" if self.is_delaunay else "general"

    def exterior(self, e: int) -> Fraction:
        """delta'(e) = 1 - Delta(e)."""
        return ONE - self.values[e]

    def cone_angle(self, v: int) -> Fraction:
        """C_v: sum of exterior angles over the edge ends at ``v``."""
        return sum((ONE - self.values[e] for e in self.surface.vertex_edge_ends[v]), ZERO)

    def curvature(self, v: int) -> Fraction:
        return 2 - self.cone_angle(v)

    def total(self) -> Fraction:
        return sum(self.values, ZERO)

    def total_curvature(self, sub: ClosedSubcomplex) -> Fraction:
        """K(F): sum of vertex curvatures over the subcomplex."""
        return sum((self.curvature(v) for v in sub.vertices), ZERO)


@dataclass
class FaceAngleSolution:
    """Corner angles per ``(face, corner)``; corner ``i`` faces edge slot ``i``."""

    surface: TriangulatedSurface
    angles: dict

    @property
    def epsilon(self) -> Fraction:
        return min(self.angles.values()) if self.angles else ZERO

    def face_angles(self, f: int) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.angles[(f, c)] for c in range(3))

    def corner_sum(self, v: int) -> Fraction:
        return sum((self.angles[c] for c in self.surface.vertex_corners[v]), ZERO)

    def dihedral(self, e: int) -> Fraction:
        return sum((self.angles[d] for d in self.surface.edges[e]), ZERO)

    def check(self, delta: AngleAssignment, strict: bool = True) -> bool:
        """Exact verification of the face, edge and sign constraints.

        With ``strict=False`` zero angles are accepted.
        """
        T = self.surface
        if any(a <= 0 if strict else a < 0 for a in self.angles.values()):
            return False
        if any(sum(self.face_angles(f), ZERO) != 1 for f in T.faces):
            return False
        return all(self.dihedral(e) == delta[e] for e in range(T.edge_count))


@dataclass(frozen=True)
class Violation:
    """Why an assignment fails.

    ``kind`` is one of ``"nonpositive"`` (an edge with Delta <= 0, stored in
    ``edge``), ``"total"`` (the whole surface has nonzero excess) or ``"subset"``
    (a proper face set with nonpositive excess).  For the relaxed boundary mode
    ``"total"`` means nonpositive total excess, and ``"inner"`` a face set whose
    fully interior edges ask for at least ``|F|`` (see :func:`inner_slack`).
    """

    kind: str
    faces: frozenset = frozenset()
    edge: int | None = None
    excess: Fraction | None = None


@dataclass
class FeasibilityReport:
    feasible: bool
    method: str
    solution: FaceAngleSolution | None = None
    violation: Violation | None = None
    dual: tuple | None = None
    dual_objective: Fraction | None = None
    lp_epsilon: Fraction | None = None
    psi: Fraction | None = None
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "Feasible" if self.feasible else "Infeasible"

    @property
    def epsilon_bound(self) -> Fraction | None:
        """psi / |E(T)|, the guaranteed lower bound on the smallest angle."""
        if self.psi is None or self.solution is None:
            return None
        return self.psi / self.solution.surface.edge_count

    def __bool__(self) -> bool:
        return self.feasible


# -- excess -----------------------------------------------------------------------


def excess(faces, delta: AngleAssignment) -> Fraction:
    """Sum of Delta over the edges of the face set minus its number of faces."""
    T = delta.surface
    fs = faces.faces if isinstance(faces, FaceSet) else frozenset(faces)
    return sum((delta[e] for e in face_set_edges(T, fs)), ZERO) - len(fs)


def inner_slack(faces, delta: AngleAssignment) -> Fraction:
    """|F| minus the Delta of interior edges whose darts all lie in F.

    Relaxed boundary mode needs this positive for every nonempty face set:
    those edges take their whole dihedral angle from corners of F, and at
    least one corner of F is left over.  In the exact mode it is the excess
    of the complement and adds nothing new.
    """
    T = delta.surface
    fs = faces.faces if isinstance(faces, FaceSet) else frozenset(faces)
    inside = (
        e for e in face_set_edges(T, fs) if len(T.edges[e]) == 2 and all(f in fs for f, _ in T.edges[e])
    )
    return len(fs) - sum((delta[e] for e in inside), ZERO)


def _require_connected(T: TriangulatedSurface) -> None:
    if not T.is_connected():
        raise DisconnectedSurface("feasibility is decided one connected surface at a time")


def _first_nonpositive(delta: AngleAssignment) -> Violation | None:
    for e, d in enumerate(delta):
        if d <= 0:
            return Violation("nonpositive", edge=e, excess=d)
    return None


def _total_violation(delta: AngleAssignment, relaxed: bool) -> Violation | None:
    T = delta.surface
    total = delta.total() - T.face_count
    if (total <= 0) if relaxed else (total != 0):
        return Violation("total", frozenset(T.faces), excess=total)
    return None


def _scan(T, delta, candidates: Iterable[frozenset], relaxed: bool, method: str) -> FeasibilityReport:
    v = _first_nonpositive(delta) or _total_violation(delta, relaxed)
    if v is not None:
        return FeasibilityReport(False, method, violation=v)
    worst: tuple[Fraction, frozenset] | None = None
    inner: tuple[Fraction, frozenset] | None = None
    for fs in candidates:
        if relaxed and fs:
            sl = inner_slack(fs, delta)
            if sl <= 0 and (inner is None or sl < inner[0]):
                inner = (sl, fs)
        if not fs or len(fs) == T.face_count:
            continue
        ex = excess(fs, delta)
        if worst is None or ex < worst[0] or (ex == worst[0] and sorted(fs) < sorted(worst[1])):
            worst = (ex, fs)
    if worst is not None and worst[0] <= 0:
        return FeasibilityReport(False, method, violation=Violation("subset", worst[1], excess=worst[0]))
    if inner is not None:
        return FeasibilityReport(False, method, violation=Violation("inner", inner[1], excess=inner[0]))
    rep = FeasibilityReport(True, method, psi=worst[0] if worst else None)
    if worst is not None:
        rep.extra["worst"] = worst[1]
    return rep


def check_conditions_bruteforce(
    T: TriangulatedSurface, delta: AngleAssignment, limit: int = DEFAULT_ORACLE_LIMIT, relaxed: bool = False
) -> FeasibilityReport:
    """Test the excess inequalities on every face set (exponential oracle).

    The report's ``extra["worst"]`` holds the minimal-excess proper face set
    and ``psi`` its excess.
    """
    if T.face_count > limit:
        raise OracleLimitExceeded(f"{T.face_count} faces exceeds the oracle limit {limit}")
    _require_connected(T)
    n = T.face_count
    top = 1 << n if relaxed else (1 << n) - 1
    subsets = (frozenset(f for f in range(n) if m >> f & 1) for m in range(1, top))
    return _scan(T, delta, subsets, relaxed, "bruteforce")


def check_conditions_simple(T: TriangulatedSurface, delta: AngleAssignment, relaxed: bool = False) -> FeasibilityReport:
    """Test the excess inequalities on simple face sets only.

    With the equality case in force the minimum excess over proper face sets
    is always attained at a simple one.  In relaxed mode the total excess is
    positive and that reduction breaks down, so every dual-connected face set
    is examined instead.
    """
    _require_connected(T)
    if relaxed:
        cands = connected_subsets(T.dual_adjacency)
    else:
        cands = (fs.faces for fs in enumerate_simple_subcomplexes(T))
    return _scan(T, delta, cands, relaxed, "simple")


def minimum_proper_excess(T: TriangulatedSurface, delta: AngleAssignment) -> tuple[Fraction, frozenset] | None:
    """The smallest excess over proper nonempty face sets (via simple sets)."""
    best = None
    for fs in enumerate_simple_subcomplexes(T):
        ex = excess(fs.faces, delta)
        if best is None or ex < best[0]:
            best = (ex, fs.faces)
    return best


# -- curvature form ---------------------------------------------------------------


def check_kappa(sub: ClosedSubcomplex, delta: AngleAssignment) -> Fraction:
    """Slack of the curvature inequality for a closed subcomplex.

    Returns ``sum_{E'} n(e) delta'(e) - (2 chi - K)``.  The identity
    ``K = 2 chi + 2 (sum_{E(F)} Delta - |F(F)|) - sum_{E'} n(e) delta'(e)`` is
    checked on every call, so the slack always equals twice the excess of the
    subcomplex's edge set.
    """
    T = sub.surface
    chi = sub.euler_characteristic()
    K = delta.total_curvature(sub)
    frontier = sum((sub.endpoint_count(e) * delta.exterior(e) for e in sub.frontier_edges), ZERO)
    inner = sum((delta[e] for e in sub.edges), ZERO) - len(sub.faces)
    assert K == 2 * chi + 2 * inner - frontier, "curvature identity failed"
    assert sub.surface is T
    return frontier - (2 * chi - K)


def _closed_subcomplexes(T: TriangulatedSurface):
    n = T.face_count
    for m in range(1, 1 << n):
        yield ClosedSubcomplex.closure(T, faces=[f for f in range(n) if m >> f & 1])
    for e in range(T.edge_count):
        yield ClosedSubcomplex.closure(T, edges=[e])


def check_curvature_conditions(
    T: TriangulatedSurface, delta: AngleAssignment, limit: int = DEFAULT_ORACLE_LIMIT, relaxed: bool = False
) -> FeasibilityReport:
    """Curvature inequalities over closed subcomplexes.

    Every closure of a nonempty face set is examined, together with the
    closure of each single edge.  Adding edges without faces to a subcomplex
    only increases the slack when all angles are positive, so these cover the
    minimum.
    """
    if T.face_count > limit:
        raise OracleLimitExceeded(f"{T.face_count} faces exceeds the oracle limit {limit}")
    _require_connected(T)
    v = _first_nonpositive(delta)
    if v is not None:
        return FeasibilityReport(False, "curvature", violation=v)
    worst = None
    inner = None
    for sub in _closed_subcomplexes(T):
        slack = check_kappa(sub, delta)
        if relaxed and sub.faces:
            sl = inner_slack(sub.faces, delta)
            if sl <= 0 and (inner is None or sl < inner[0]):
                inner = (sl, sub.faces)
        if sub.is_whole():
            bad = slack <= 0 if relaxed else slack != 0
            if bad:
                return FeasibilityReport(False, "curvature", violation=Violation("total", sub.faces, excess=slack / 2))
            continue
        if worst is None or slack < worst[0]:
            worst = (slack, sub)
    if worst is not None and worst[0] <= 0:
        return FeasibilityReport(False, "curvature", violation=Violation("subset", worst[1].faces, excess=worst[0] / 2))
    if inner is not None:
        return FeasibilityReport(False, "curvature", violation=Violation("inner", inner[1], excess=inner[0]))
    return FeasibilityReport(True, "curvature", psi=worst[0] / 2 if worst else None)


# -- linear programs --------------------------------------------------------------


@dataclass
class AngleProgram:
    """A standard-form program over corner variables plus epsilon.

    ``corner_var[(f, c)]`` is the column of ``beta`` at that corner; the angle
    is ``beta + epsilon``.  ``row_labels`` names each equality row, e.g.
    ``("face", f)`` or ``("edge", e)``.
    """

    lp: RationalLP
    corner_var: dict
    eps_var: int
    row_labels: list
    extra_vars: dict = field(default_factory=dict)


def _corner_columns(T: TriangulatedSurface) -> dict:
    return {(f, c): 3 * f + c for f in T.faces for c in range(3)}


def build_program_L(T: TriangulatedSurface, delta: AngleAssignment, with_epsilon: bool = True) -> AngleProgram:
    """The angle program with each angle written as ``beta + epsilon``.

    Rows: one per face (``sum beta + 3 eps = 1``) and one per edge
    (``sum of opposite beta + m(e) eps = Delta(e)`` with ``m(e)`` the number
    of darts of the edge).  Objective: minimize ``-eps``.  With
    ``with_epsilon=False`` the epsilon column is dropped, leaving the plain
    nonnegative-angle program.
    """
    cv = _corner_columns(T)
    n = 3 * T.face_count + (1 if with_epsilon else 0)
    eps = 3 * T.face_count
    A, a, labels = [], [], []
    for f in T.faces:
        row = [ZERO] * n
        for c in range(3):
            row[cv[(f, c)]] = ONE
        if with_epsilon:
            row[eps] = Fraction(3)
        A.append(row)
        a.append(ONE)
        labels.append(("face", f))
    for e, darts in enumerate(T.edges):
        row = [ZERO] * n
        for d in darts:
            row[cv[d]] += ONE
        if with_epsilon:
            row[eps] = Fraction(len(darts))
        A.append(row)
        a.append(delta[e])
        labels.append(("edge", e))
    c = [ZERO] * n
    if with_epsilon:
        c[eps] = -ONE
    return AngleProgram(RationalLP.build(A, a, c), cv, eps if with_epsilon else -1, labels)


def _split_dual(T, prog: AngleProgram, y) -> tuple[dict, dict]:
    u, v = {}, {}
    for (kind, idx), val in zip(prog.row_labels, y):
        if kind == "face":
            u[idx] = val
        elif kind == "edge":
            v[idx] = val
    return u, v


def dual_objective(delta: AngleAssignment, u: Mapping, v: Mapping) -> Fraction:
    return sum(u.values(), ZERO) + sum((delta[e] * v[e] for e in v), ZERO)


def is_dual_feasible(T: TriangulatedSurface, u: Mapping, v: Mapping) -> bool:
    """u_t + v_e <= 0 whenever e is an edge of t."""
    return all(u[f] + v[T.dart_edge[(f, i)]] <= 0 for f in T.faces for i in range(3))


def violation_from_dual(T: TriangulatedSurface, delta: AngleAssignment, u: Mapping) -> Violation | None:
    """Recover a violated inequality from a dual point with nonnegative objective.

    Tries positivity, then the total, then every level set ``{t : u_t >= s}``
    of ``u`` and keeps the one of smallest excess.
    """
    v = _first_nonpositive(delta) or _total_violation(delta, relaxed=False)
    if v is not None:
        return v
    levels = sorted(set(u.values()))
    best = None
    for s in levels[1:]:
        fs = frozenset(t for t in T.faces if u[t] >= s)
        ex = excess(fs, delta)
        if best is None or ex < best.excess:
            best = Violation("subset", fs, excess=ex)
    if best is not None and best.excess <= 0:
        return best
    return None


def _solution_from_x(T, prog: AngleProgram, x) -> FaceAngleSolution:
    eps = x[prog.eps_var] if prog.eps_var >= 0 else ZERO
    return FaceAngleSolution(T, {k: x[j] + eps for k, j in prog.corner_var.items()})


def decide_lp(T: TriangulatedSurface, delta: AngleAssignment, psi_limit: int = 16) -> FeasibilityReport:
    """Decide by linear programming, maximizing the smallest angle.

    On success the solution maximizes the minimum angle.  On failure the dual
    point ``(u, v)`` has nonnegative objective and ``violation`` names a face
    set read off from it.  ``psi`` is filled in when the surface has at most
    ``psi_limit`` faces.
    """
    _require_connected(T)
    prog = build_program_L(T, delta)
    out = solve(prog.lp)
    if out.status == OPTIMAL and out.x[prog.eps_var] > 0:
        sol = _solution_from_x(T, prog, out.x)
        rep = FeasibilityReport(True, "lp", solution=sol, lp_epsilon=out.x[prog.eps_var])
        u, v = _split_dual(T, prog, out.dual)
        rep.dual = (u, v)
        rep.dual_objective = dual_objective(delta, u, v)
        if T.face_count <= psi_limit:
            m = minimum_proper_excess(T, delta)
            rep.psi = m[0] if m else None
        return rep
    y = out.dual if out.status == OPTIMAL else out.farkas
    u, v = _split_dual(T, prog, y)
    rep = FeasibilityReport(False, "lp", dual=(u, v), dual_objective=dual_objective(delta, u, v))
    rep.lp_epsilon = ZERO if out.status == OPTIMAL else None
    rep.violation = violation_from_dual(T, delta, u)
    if rep.violation is None:
        # the level-set argument always succeeds on exact duals; keep a safety net
        rep.violation = check_conditions_simple(T, delta).violation
    return rep


def decide_relaxed_boundary(T: TriangulatedSurface, delta: AngleAssignment) -> FeasibilityReport:
    """Angles matching Delta inside, strictly smaller than Delta on the boundary.

    Boundary rows become ``beta + x' + 2 eps = Delta(e)``, so the boundary slack
    ``x_e = x' + eps`` is positive whenever ``eps`` is.  Feasible exactly when
    every nonempty face set, the whole surface included, has positive excess
    and positive :func:`inner_slack`.
    """
    if T.is_closed:
        raise NoBoundary("relaxed boundary mode needs a surface with boundary")
    _require_connected(T)
    cv = _corner_columns(T)
    bd = T.boundary_edges
    slack_col = {e: 3 * T.face_count + k for k, e in enumerate(bd)}
    eps = 3 * T.face_count + len(bd)
    n = eps + 1
    A, a, labels = [], [], []
    for f in T.faces:
        row = [ZERO] * n
        for c in range(3):
            row[cv[(f, c)]] = ONE
        row[eps] = Fraction(3)
        A.append(row)
        a.append(ONE)
        labels.append(("face", f))
    for e, darts in enumerate(T.edges):
        row = [ZERO] * n
        for d in darts:
            row[cv[d]] += ONE
        row[eps] = Fraction(2)
        if e in slack_col:
            row[slack_col[e]] = ONE
        A.append(row)
        a.append(delta[e])
        labels.append(("edge", e))
    c = [ZERO] * n
    c[eps] = -ONE
    prog = AngleProgram(RationalLP.build(A, a, c), cv, eps, labels, {"slack": slack_col})
    out = solve(prog.lp)
    if out.status == OPTIMAL and out.x[eps] > 0:
        sol = _solution_from_x(T, prog, out.x)
        rep = FeasibilityReport(True, "relaxed", solution=sol, lp_epsilon=out.x[eps])
        rep.extra["slacks"] = {e: out.x[j] + out.x[eps] for e, j in slack_col.items()}
        return rep
    y = out.dual if out.status == OPTIMAL else out.farkas
    u, v = _split_dual(T, prog, y)
    rep = FeasibilityReport(False, "relaxed", dual=(u, v), dual_objective=dual_objective(delta, u, v))
    rep.violation = _first_nonpositive(delta) or _total_violation(delta, relaxed=True)
    if rep.violation is None:
        levels = sorted(set(u.values()))
        for s in levels:
            fs = frozenset(t for t in T.faces if u[t] >= s)
            ex = excess(fs, delta)
            if ex <= 0 and (rep.violation is None or ex < rep.violation.excess):
                rep.violation = Violation("subset", fs, excess=ex)
        for s in levels:
            fs = frozenset(t for t in T.faces if u[t] <= s)
            sl = inner_slack(fs, delta)
            if rep.violation is None and sl <= 0:
                rep.violation = Violation("inner", fs, excess=sl)
    if rep.violation is None:
        rep.violation = check_conditions_simple(T, delta, relaxed=True).violation
    return rep


def cone_angle_problem(
    T: TriangulatedSurface, corner_sums: Mapping[int, object], delaunay: bool = False
) -> FeasibilityReport:
    """Positive face angles with prescribed angle sums at chosen vertices.

    ``corner_sums[v]`` is the total of the corner angles at ``v`` in pi-units:
    the cone angle for an interior vertex and the boundary angle for a
    boundary vertex.  Vertices not listed are unconstrained.  With
    ``delaunay=True`` each interior edge's dihedral angle is capped at 1.
    The smallest angle is maximized.
    """
    _require_connected(T)
    nv = 3 * T.face_count
    g = GenericLP([ZERO] * (nv + 1), "max")
    g.objective[nv] = ONE
    for f in T.faces:
        row = [ZERO] * (nv + 1)
        for c in range(3):
            row[3 * f + c] = ONE
        row[nv] = Fraction(3)
        g.add(row, "=", 1)
    for v, theta in sorted(corner_sums.items()):
        row = [ZERO] * (nv + 1)
        for f, c in T.vertex_corners[v]:
            row[3 * f + c] += ONE
        row[nv] = Fraction(len(T.vertex_corners[v]))
        g.add(row, "=", as_fraction(theta))
    if delaunay:
        for e in T.interior_edges:
            row = [ZERO] * (nv + 1)
            for f, i in T.edges[e]:
                row[3 * f + i] += ONE
            row[nv] = Fraction(2)
            g.add(row, "<=", 1)
    out = solve_generic(g)
    if out.status == OPTIMAL and out.x[nv] > 0:
        eps = out.x[nv]
        sol = FaceAngleSolution(T, {(f, c): out.x[3 * f + c] + eps for f in T.faces for c in range(3)})
        return FeasibilityReport(True, "cone", solution=sol, lp_epsilon=eps)
    rep = FeasibilityReport(False, "cone", lp_epsilon=out.x[nv] if out.x else None)
    rep.dual = out.standard.dual if out.status == OPTIMAL else out.standard.farkas
    return rep


# -- disks ------------------------------------------------------------------------


@dataclass
class AndreevResult:
    passed: bool
    clause: str | None = None
    detail: object = None

    def __bool__(self) -> bool:
        return self.passed


def andreev_check(
    T: TriangulatedSurface, delta: AngleAssignment, boundary_angles: Mapping[int, object], tol: float = 0.0
) -> AndreevResult:
    """Check the vertex and cutset conditions for a Delaunay disk.

    Clauses, in order:

    ``range``          every Delta and every boundary angle is positive
    ``interior``       interior vertex: sum of (1 - Delta) over incident edges is 2
    ``boundary``       boundary vertex: that sum plus (1 - Lambda) is 2
    ``total``          boundary angles add up to (#boundary vertices - 2)
    ``closed_cutset``  cutsets dual to closed curves: sum of (1 - Delta) > 2
    ``open_cutset``    other cutsets, for each side's boundary vertices:
                       sum of (1 - Delta) plus sum of (1 - Lambda) > 2

    Exact data is compared exactly.  For measured floating-point data pass
    ``tol``; it loosens the three equalities only.
    """
    if not T.is_disk():
        raise NotADisk("the cutset conditions are stated for disks")
    conv = as_fraction if delta.exact else float
    missing = [v for v in range(T.vertex_count) if T.boundary_vertex[v] and v not in boundary_angles]
    if missing:
        raise MissingAngle(f"boundary vertices {missing} have no boundary angle")
    lam = {v: conv(boundary_angles[v]) for v in range(T.vertex_count) if T.boundary_vertex[v]}

    def differ(x, y) -> bool:
        return abs(x - y) > tol if tol else x != y

    for e, d in enumerate(delta):
        if d <= 0:
            return AndreevResult(False, "range", e)
    for v, x in lam.items():
        if x <= 0:
            return AndreevResult(False, "range", v)
    for v in range(T.vertex_count):
        s = delta.cone_angle(v)
        if T.boundary_vertex[v]:
            if differ(s + (1 - lam[v]), 2):
                return AndreevResult(False, "boundary", v)
        elif differ(s, 2):
            return AndreevResult(False, "interior", v)
    if differ(sum(lam.values(), ZERO), len(lam) - 2):
        return AndreevResult(False, "total", sum(lam.values(), ZERO))
    for cut in enumerate_minimal_noncoterminous_cutsets(T):
        s = sum((delta.exterior(e) for e in cut.edges), ZERO)
        if cut.closed_dual_curve:
            if s <= 2:
                return AndreevResult(False, "closed_cutset", cut)
            continue
        for side in cut.sides:
            extra = sum((1 - lam[v] for v in side if v in lam), ZERO)
            if s + extra <= 2:
                return AndreevResult(False, "open_cutset", cut)
    return AndreevResult(True)


def decide_disk_with_boundary_angles(
    T: TriangulatedSurface, delta: AngleAssignment, boundary_angles: Mapping[int, object]
) -> FeasibilityReport:
    """LP counterpart of :func:`andreev_check`: angle program plus vertex sums.

    Interior vertices get corner sum 2 and boundary vertices their prescribed
    boundary angle.
    """
    _require_connected(T)
    prog = build_program_L(T, delta)
    A = [list(r) for r in prog.lp.A]
    a = list(prog.lp.a)
    labels = list(prog.row_labels)
    n = len(prog.lp.c)
    for v in range(T.vertex_count):
        row = [ZERO] * n
        for corner in T.vertex_corners[v]:
            row[prog.corner_var[corner]] += ONE
        row[prog.eps_var] = Fraction(len(T.vertex_corners[v]))
        A.append(row)
        a.append(as_fraction(boundary_angles[v]) if T.boundary_vertex[v] else Fraction(2))
        labels.append(("vertex", v))
    prog2 = AngleProgram(RationalLP.build(A, a, prog.lp.c), prog.corner_var, prog.eps_var, labels)
    out = solve(prog2.lp)
    if out.status == OPTIMAL and out.x[prog.eps_var] > 0:
        return FeasibilityReport(True, "disk-lp", solution=_solution_from_x(T, prog2, out.x), lp_epsilon=out.x[prog.eps_var])
    return FeasibilityReport(False, "disk-lp")


# -- helpers used by tests and the command line -----------------------------------


def lemma_2_5_bounds(T: TriangulatedSurface, delta: AngleAssignment, faces: Iterable[int]) -> tuple[Fraction, Fraction]:
    """(excess, sum of Delta over relative boundary edges) for a face set."""
    fs = frozenset(faces)
    return excess(fs, delta), sum((delta[e] for e in relative_boundary_edges(T, fs)), ZERO)


def component_of(T: TriangulatedSurface, face: int) -> set[int]:
    return _component(T.dual_adjacency, face, None)
