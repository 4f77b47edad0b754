"""Stellations and positively curved Delaunay realizations of spheres.

The stellation ``s(T)`` replaces each triangle ``ABC`` by three triangles
around a new centre vertex.  Every edge of ``s(T)`` has at least one old
endpoint, which forces the cone angles at the old vertices to carry at least
half the total Gauss-Bonnet budget.  When ``T`` has six or more vertices
some old vertex then has cone angle at least ``2 pi`` and ``s(T)`` is not a
Delaunay triangulation of a positively curved sphere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotASphere
from .feasibility import AngleAssignment, FaceAngleSolution, FeasibilityReport
from .rational_lp import OPTIMAL, GenericLP, solve_generic
from .surface import TriangulatedSurface, build_surface

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class Stellation:
    surface: TriangulatedSurface
    base: TriangulatedSurface
    old_vertex: dict  # vertex of s(T) -> vertex of T
    new_vertex: dict  # vertex of s(T) -> face of T

    @property
    def old_vertices(self) -> list[int]:
        return sorted(self.old_vertex)

    @property
    def new_vertices(self) -> list[int]:
        return sorted(self.new_vertex)

    def edge_old_endpoints(self, e: int) -> int:
        a, b = self.surface.edge_endpoints(e)
        return (a in self.old_vertex) + (b in self.old_vertex)


def stellate(T: TriangulatedSurface) -> Stellation:
    """Face ``3 f + k`` has corners (centre of f, corner k+1 of f, corner k+2 of f).

    Its slot 0 is the old edge in slot ``k`` of ``f`` and keeps that edge's
    gluing; slot 1 of ``3 f + k`` is glued to slot 2 of ``3 f + k + 1``.
    """
    gl = []
    for (f, i), (g, j) in T.gluings():
        gl.append(((3 * f + i, 0), (3 * g + j, 0)))
    for f in T.faces:
        for k in range(3):
            gl.append(((3 * f + k, 1), (3 * f + (k + 1) % 3, 2)))
    S = build_surface(3 * T.face_count, gl)
    old, new = {}, {}
    for f in T.faces:
        for k in range(3):
            new[S.corner_vertex[(3 * f + k, 0)]] = f
            old[S.corner_vertex[(3 * f + k, 1)]] = T.corner_vertex[(f, (k + 1) % 3)]
    return Stellation(S, T, old, new)


def _require_sphere(T: TriangulatedSurface) -> None:
    if not T.is_connected() or not T.is_sphere():
        raise NotASphere(f"expected a closed sphere, got {T.describe()}")


def positively_curved_realizability(T: TriangulatedSurface) -> FeasibilityReport:
    """Is ``T`` the Delaunay triangulation of a sphere with all cone angles below 2 pi?

    Maximizes ``eps`` subject to corner angles ``>= eps``, face sums 1,
    dihedral angle at most 1 on every edge and cone angle at most ``2 - eps``
    at every vertex.  Feasible exactly when the optimum is positive.
    """
    _require_sphere(T)
    nv = 3 * T.face_count
    g = GenericLP([ZERO] * (nv + 1), "max")
    g.objective[nv] = ONE

    def row():
        return [ZERO] * (nv + 1)

    # corner angle = x + eps with x >= 0
    for f in T.faces:
        r = row()
        for c in range(3):
            r[3 * f + c] = ONE
        r[nv] = Fraction(3)
        g.add(r, "=", 1)
    for e in T.interior_edges:
        r = row()
        for f, i in T.edges[e]:
            r[3 * f + i] += ONE
        r[nv] = Fraction(2)
        g.add(r, "<=", 1)
    for v in range(T.vertex_count):
        r = row()
        for f, c in T.vertex_corners[v]:
            r[3 * f + c] += ONE
        r[nv] = Fraction(len(T.vertex_corners[v]) + 1)
        g.add(r, "<=", 2)
    out = solve_generic(g)
    eps = out.x[nv] if out.status == OPTIMAL else None
    if eps is not None and eps > 0:
        sol = FaceAngleSolution(T, {(f, c): out.x[3 * f + c] + eps for f in T.faces for c in range(3)})
        return FeasibilityReport(True, "positive-curvature", solution=sol, lp_epsilon=eps)
    rep = FeasibilityReport(False, "positive-curvature", lp_epsilon=eps)
    if out.status == OPTIMAL:
        rep.dual = out.standard.dual
    return rep


@dataclass
class AveragingReport:
    """The inequality chain behind non-realizability, evaluated on concrete angles."""

    gauss_bonnet: bool
    old_dominates_new: bool
    average_old: Fraction
    bound: Fraction
    bound_holds: bool
    max_old: Fraction
    forces_flat_or_worse: bool
    steps: dict = field(default_factory=dict)

    @property
    def first_failure(self) -> str | None:
        for name, ok in self.steps.items():
            if not ok:
                return name
        return None


def averaging_bound_check(s: Stellation, delta: AngleAssignment) -> AveragingReport:
    """Evaluate each step for a Delaunay assignment ``delta`` on ``s(T)``.

    Steps, in order: the Gauss-Bonnet total ``sum C(v) = 2 (|V(s)| - 2)``,
    old cone angles outweighing new ones, the average over old vertices being
    at least ``3 - 6/|V(T)|``, and finally every old cone angle staying below
    2.  The last step is expected to fail when ``|V(T)| >= 6``.
    """
    S = s.surface
    cones = {v: delta.cone_angle(v) for v in range(S.vertex_count)}
    total = sum(cones.values(), ZERO)
    gb = total == 2 * (S.vertex_count - 2)
    old_sum = sum((cones[v] for v in s.old_vertex), ZERO)
    new_sum = sum((cones[v] for v in s.new_vertex), ZERO)
    n_old = len(s.old_vertex)
    average = old_sum / n_old
    bound = 3 - Fraction(6, s.base.vertex_count)
    max_old = max(cones[v] for v in s.old_vertex)
    steps = {
        "gauss_bonnet": gb,
        "old_dominates_new": old_sum >= new_sum,
        "average_bound": average >= bound,
        "positive_curvature": max_old < 2,
    }
    return AveragingReport(gb, steps["old_dominates_new"], average, bound, steps["average_bound"], max_old, bound >= 2, steps)
