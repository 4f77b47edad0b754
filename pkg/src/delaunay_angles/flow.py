"""The network-flow decision path.

The network has a source, one node per face, one node per edge and a sink.
Level-1 arcs run from the source to every face, level-2 arcs from a face to
the edge node of each of its three darts (a face glued to itself contributes
parallel arcs) and level-3 arcs from every edge node to the sink.  A flow
that saturates every level-1 and level-3 arc is exactly an assignment of
face angles: the flow on a level-2 arc is the angle opposite that dart.

Max flow is computed by Dinic's algorithm on capacities scaled to integers,
so everything stays exact.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import EpsilonOutOfRange, MalformedCut
from .feasibility import (
    AngleAssignment,
    FaceAngleSolution,
    FeasibilityReport,
    Violation,
    _first_nonpositive,
    _require_connected,
    check_conditions_simple,
    excess,
)
from .rational_lp import as_fraction
from .surface import TriangulatedSurface

ZERO = Fraction(0)
ONE = Fraction(1)

SOURCE = 0


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: Fraction
    level: int
    # (face, slot) for level-2 arcs, face for level 1, edge for level 3
    tag: object = None


@dataclass
class FlowNetwork:
    node_count: int
    arcs: list
    sink: int
    surface: TriangulatedSurface | None = None
    epsilon: Fraction = ZERO
    delta: AngleAssignment | None = None

    @property
    def source(self) -> int:
        return SOURCE

    def face_node(self, f: int) -> int:
        return 1 + f

    def edge_node(self, e: int) -> int:
        return 1 + self.surface.face_count + e

    def level_capacity(self, level: int, e: int | None = None) -> Fraction:
        """Capacity of a level-1/2/3 arc as built (level 3 depends on the edge)."""
        eps = self.epsilon
        if level == 1:
            return 1 - 3 * eps
        if level == 2:
            return 1 - eps
        return self.delta[e] - len(self.surface.edges[e]) * eps


def _build(T: TriangulatedSurface, delta: AngleAssignment, eps: Fraction) -> FlowNetwork:
    F, E = T.face_count, T.edge_count
    sink = 1 + F + E
    arcs: list[Arc] = []
    for f in range(F):
        arcs.append(Arc(SOURCE, 1 + f, 1 - 3 * eps, 1, f))
    for f in range(F):
        for i in range(3):
            arcs.append(Arc(1 + f, 1 + F + T.dart_edge[(f, i)], 1 - eps, 2, (f, i)))
    for e in range(E):
        arcs.append(Arc(1 + F + e, sink, delta[e] - len(T.edges[e]) * eps, 3, e))
    return FlowNetwork(sink + 1, arcs, sink, T, eps, delta)


def build_N1(T: TriangulatedSurface, delta: AngleAssignment) -> FlowNetwork:
    return _build(T, delta, ZERO)


def build_N2(T: TriangulatedSurface, delta: AngleAssignment, epsilon) -> FlowNetwork:
    """Network for angles bounded below by ``epsilon``.

    Level-3 capacities are ``Delta(e) - m(e) epsilon`` where ``m(e)`` is the
    number of darts of the edge (2 inside, 1 on the boundary), so that a
    saturating flow plus ``epsilon`` per corner reproduces ``Delta`` exactly.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps <= Fraction(1, 3):
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1/3], got {eps}")
    return _build(T, delta, eps)


@dataclass
class FlowOutcome:
    network: FlowNetwork
    value: Fraction
    flow: list
    source_side: frozenset

    @property
    def cut_arcs(self) -> list[int]:
        S = self.source_side
        return [k for k, a in enumerate(self.network.arcs) if a.tail in S and a.head not in S]

    @property
    def cut_capacity(self) -> Fraction:
        return sum((self.network.arcs[k].capacity for k in self.cut_arcs), ZERO)


def _lcm_denominator(values) -> int:
    L = 1
    for v in values:
        d = v.denominator
        if L % d:
            L = L * d // math.gcd(L, d)
    return L


def _dinic(n: int, tails: Sequence[int], heads: Sequence[int], caps: Sequence[int], s: int, t: int):
    """Integer max flow.  Returns (value, residual capacity per arc, reachable set)."""
    m = len(tails)
    to = [0] * (2 * m)
    cap = [0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for k in range(m):
        u, v = tails[k], heads[k]
        to[2 * k] = v
        cap[2 * k] = caps[k]
        to[2 * k + 1] = u
        adj[u].append(2 * k)
        adj[v].append(2 * k + 1)
    total = 0
    while True:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            lu = level[u] + 1
            for a in adj[u]:
                if cap[a] > 0 and level[to[a]] < 0:
                    level[to[a]] = lu
                    q.append(to[a])
        if level[t] < 0:
            break
        it = [0] * n
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(cap[a] for a in path)
                total += f
                back = None
                for k, a in enumerate(path):
                    cap[a] -= f
                    cap[a ^ 1] += f
                    if back is None and cap[a] == 0:
                        back = k
                del path[back:]
                u = to[path[-1]] if path else s
                continue
            au = adj[u]
            i = it[u]
            lu = level[u] + 1
            while i < len(au):
                a = au[i]
                if cap[a] > 0 and level[to[a]] == lu:
                    break
                i += 1
            it[u] = i
            if i < len(au):
                a = au[i]
                path.append(a)
                u = to[a]
            else:
                if u == s:
                    break
                level[u] = -1
                a = path.pop()
                u = to[a ^ 1]
                it[u] += 1
    reach = {s}
    q = deque([s])
    while q:
        u = q.popleft()
        for a in adj[u]:
            if cap[a] > 0 and to[a] not in reach:
                reach.add(to[a])
                q.append(to[a])
    return total, cap, reach


def max_flow(net: FlowNetwork) -> FlowOutcome:
    """Exact maximum flow with the source-side residual-reachability cut."""
    if any(a.capacity < 0 for a in net.arcs):
        raise EpsilonOutOfRange("negative arc capacity; epsilon is too large for this network")
    L = _lcm_denominator(a.capacity for a in net.arcs)
    caps = [int(a.capacity * L) for a in net.arcs]
    value, residual, reach = _dinic(
        net.node_count, [a.tail for a in net.arcs], [a.head for a in net.arcs], caps, SOURCE, net.sink
    )
    flow = [Fraction(caps[k] - residual[2 * k], L) for k in range(len(net.arcs))]
    return FlowOutcome(net, Fraction(value, L), flow, frozenset(reach))


@dataclass
class CutDecomposition:
    F0: frozenset
    F2: frozenset
    F3: frozenset
    capacity: Fraction
    edges_F3: frozenset = field(default_factory=frozenset)


def cut_capacity_decomposition(outcome: FlowOutcome) -> CutDecomposition:
    """Split the faces by the canonical minimum cut.

    ``F3`` holds the faces on the source side whose edge nodes all lie on the
    source side, ``F2`` the source-side faces with no edge node there, and
    ``F0`` all remaining faces.  The identity
    ``c = cap1 |F0| + 3 cap2 |F2| + sum over E(F3) of cap3`` is checked
    against the flow value.
    """
    net = outcome.network
    T = net.surface
    if T is None:
        raise MalformedCut("decomposition needs a network built from a surface")
    S = outcome.source_side
    F0, F2, F3 = set(), set(), set()
    for f in T.faces:
        if net.face_node(f) not in S:
            F0.add(f)
            continue
        inside = [net.edge_node(T.dart_edge[(f, i)]) in S for i in range(3)]
        if all(inside):
            F3.add(f)
        elif not any(inside):
            F2.add(f)
        else:
            F0.add(f)
    E3 = frozenset(T.dart_edge[(f, i)] for f in F3 for i in range(3))
    cap = (
        net.level_capacity(1) * len(F0)
        + 3 * net.level_capacity(2) * len(F2)
        + sum((net.level_capacity(3, e) for e in E3), ZERO)
    )
    if cap != outcome.value:
        raise MalformedCut(f"cut capacity {cap} differs from flow value {outcome.value}")
    return CutDecomposition(frozenset(F0), frozenset(F2), frozenset(F3), cap, E3)


def _solution_from_flow(T, outcome: FlowOutcome, eps: Fraction) -> FaceAngleSolution:
    angles = {}
    for k, a in enumerate(outcome.network.arcs):
        if a.level == 2:
            angles[a.tag] = outcome.flow[k] + eps
    return FaceAngleSolution(T, angles)


def _saturates(T, outcome: FlowOutcome, eps: Fraction) -> bool:
    return outcome.value == T.face_count * (1 - 3 * eps)


def _cut_line(outcome: FlowOutcome) -> tuple[Fraction, Fraction]:
    """The residual cut's capacity as ``A - B eps`` in the network's parameter."""
    net = outcome.network
    T = net.surface
    A = B = ZERO
    for k in outcome.cut_arcs:
        a = net.arcs[k]
        if a.level == 1:
            A, B = A + 1, B + 3
        elif a.level == 2:
            A, B = A + 1, B + 1
        else:
            A, B = A + net.delta[a.tag], B + len(T.edges[a.tag])
    return A, B


def _violation_from_cut(T, delta, outcome: FlowOutcome, strict: bool) -> Violation | None:
    net = outcome.network
    S = outcome.source_side
    reach = frozenset(f for f in T.faces if net.face_node(f) in S)
    full = frozenset(f for f in reach if all(net.edge_node(T.dart_edge[(f, i)]) in S for i in range(3)))
    best = None
    for fs in (full, reach):
        if not fs or len(fs) == T.face_count:
            continue
        ex = excess(fs, delta)
        if best is None or ex < best.excess:
            best = Violation("subset", fs, excess=ex)
    if best is not None and (best.excess <= 0 if strict else best.excess < 0):
        return best
    return None


def lcm_epsilon(delta: AngleAssignment) -> Fraction:
    """1 / (lcm of the denominators of Delta), capped at 1/3."""
    return min(Fraction(1, _lcm_denominator(delta)), Fraction(1, 3))


def decide_flow(T: TriangulatedSurface, delta: AngleAssignment, strict: bool = False, epsilon="auto") -> FeasibilityReport:
    """Decide feasibility by max flow.

    Non-strict mode asks for nonnegative angles: feasible exactly when the
    total of Delta equals the number of faces and the flow in the level-1
    network saturates every source arc.  The returned angles may vanish.

    Strict mode asks for positive angles.  With ``epsilon="auto"`` the exact
    largest possible smallest angle is found by Newton steps on the
    parametric minimum cut: each infeasible cut, capacity ``A - B eps``,
    gives the next guess ``(A - F) / (B - 3F)``.  A fixed rational
    ``epsilon`` or ``"lcm"`` instead tests that single lower bound.
    """
    _require_connected(T)
    method = "flow-strict" if strict else "flow"
    bad = _first_nonpositive(delta)
    if bad is not None:
        return FeasibilityReport(False, method, violation=bad)
    F = T.face_count
    total = delta.total() - F
    if total != 0:
        return FeasibilityReport(False, method, violation=Violation("total", frozenset(T.faces), excess=total))

    out = max_flow(build_N1(T, delta))
    if not _saturates(T, out, ZERO):
        rep = FeasibilityReport(False, method)
        rep.extra["flow"] = out
        rep.extra["cut"] = cut_capacity_decomposition(out)
        rep.violation = Violation("subset", rep.extra["cut"].F3, excess=excess(rep.extra["cut"].F3, delta))
        return rep
    if not strict:
        rep = FeasibilityReport(True, method, solution=_solution_from_flow(T, out, ZERO))
        rep.extra["flow"] = out
        return rep

    if epsilon == "auto":
        eps = min([Fraction(1, 3)] + [delta[e] / len(T.edges[e]) for e in range(T.edge_count)])
        steps = 0
        while eps > 0:
            out = max_flow(build_N2(T, delta, eps))
            steps += 1
            if _saturates(T, out, eps):
                rep = FeasibilityReport(True, method, solution=_solution_from_flow(T, out, eps), lp_epsilon=eps)
                rep.extra.update(flow=out, newton_steps=steps)
                return rep
            A, B = _cut_line(out)
            nxt = (A - F) / (B - 3 * F)
            if not nxt < eps:
                raise MalformedCut("parametric cut did not decrease epsilon")
            eps = nxt
        # eps reached zero: the last cut is tight at eps = 0
        rep = FeasibilityReport(False, method, lp_epsilon=ZERO)
        rep.extra.update(flow=out, newton_steps=steps)
        rep.violation = _violation_from_cut(T, delta, out, strict=True) or check_conditions_simple(T, delta).violation
        return rep

    eps = lcm_epsilon(delta) if epsilon == "lcm" else as_fraction(epsilon)
    net = build_N2(T, delta, eps)
    if any(a.capacity < 0 for a in net.arcs):
        rep = FeasibilityReport(False, method)
        rep.extra["reason"] = "a level-3 capacity is negative at this epsilon"
        return rep
    out = max_flow(net)
    if _saturates(T, out, eps):
        rep = FeasibilityReport(True, method, solution=_solution_from_flow(T, out, eps), lp_epsilon=eps)
        rep.extra["flow"] = out
        return rep
    rep = FeasibilityReport(False, method)
    rep.extra["flow"] = out
    rep.extra["reason"] = f"no solution with every angle at least {eps}"
    rep.violation = _violation_from_cut(T, delta, out, strict=True)
    return rep
