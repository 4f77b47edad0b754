import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delaunay_angles.catalog import random_gluing, sample_deltas, square, tetrahedron, torus_two_faces
from delaunay_angles.errors import DisconnectedSurface, EpsilonOutOfRange
from delaunay_angles.feasibility import AngleAssignment, decide_lp, excess, minimum_proper_excess
from delaunay_angles.flow import (
    build_N1,
    build_N2,
    cut_capacity_decomposition,
    decide_flow,
    lcm_epsilon,
    max_flow,
)
from delaunay_angles.surface import build_surface


def square_delta(values=None):
    T = square()
    diag = T.interior_edges[0]
    if values is None:
        values = [Fr(1) if e == diag else Fr(1, 4) for e in range(T.edge_count)]
    return T, AngleAssignment(T, values)


def bad_square():
    T = square()
    diag = T.interior_edges[0]
    f0 = {T.dart_edge[(0, i)] for i in range(3)}
    vals = [Fr(1, 4) if e == diag else (Fr(5, 8) if e in f0 else Fr(1, 4)) for e in range(T.edge_count)]
    return T, AngleAssignment(T, vals)


def test_network_sizes():
    T, d = square_delta()
    net = build_N1(T, d)
    assert net.node_count == 2 + T.face_count + T.edge_count
    levels = [a.level for a in net.arcs]
    assert levels.count(1) == T.face_count
    assert levels.count(2) == 3 * T.face_count
    assert levels.count(3) == T.edge_count


def test_n2_capacities():
    T, d = square_delta()
    eps = Fr(1, 8)
    net = build_N2(T, d, eps)
    diag = T.interior_edges[0]
    assert net.level_capacity(1) == 1 - 3 * eps
    assert net.level_capacity(2) == 1 - eps
    assert net.level_capacity(3, diag) == 1 - 2 * eps
    assert net.level_capacity(3, T.boundary_edges[0]) == Fr(1, 4) - eps


@pytest.mark.parametrize("eps", [Fr(0), Fr(-1, 10), Fr(1, 2)])
def test_n2_rejects_epsilon(eps):
    T, d = square_delta()
    with pytest.raises(EpsilonOutOfRange):
        build_N2(T, d, eps)


def test_square_flow_saturates():
    T, d = square_delta()
    out = max_flow(build_N1(T, d))
    assert out.value == T.face_count
    rep = decide_flow(T, d, strict=True)
    assert rep.feasible and rep.lp_epsilon == Fr(1, 4)
    assert rep.solution.check(d)


def test_min_cut_names_the_bad_face():
    T, d = bad_square()
    rep = decide_flow(T, d)
    assert not rep.feasible
    cut = rep.extra["cut"]
    assert cut.F3 == frozenset([1])
    assert cut.capacity == rep.extra["flow"].value < T.face_count
    assert excess(cut.F3, d) < 0


def test_cut_decomposition_matches_flow_value():
    T, d = square_delta()
    out = max_flow(build_N2(T, d, Fr(1, 8)))
    dec = cut_capacity_decomposition(out)
    assert dec.capacity == out.value
    assert dec.F0 | dec.F2 | dec.F3 == frozenset(T.faces)


def test_wrong_total():
    T, d = square_delta([Fr(1, 8)] * 5)
    rep = decide_flow(T, d)
    assert not rep.feasible and rep.violation.kind == "total"


def test_disconnected_surface():
    T = build_surface(2, [])
    with pytest.raises(DisconnectedSurface):
        decide_flow(T, AngleAssignment(T, [Fr(1, 3)] * 6))


def test_fixed_epsilon_modes():
    T, d = square_delta()
    assert lcm_epsilon(d) == Fr(1, 4)
    assert decide_flow(T, d, strict=True, epsilon="lcm").feasible
    assert decide_flow(T, d, strict=True, epsilon=Fr(1, 4)).feasible
    too_big = decide_flow(T, d, strict=True, epsilon=Fr(1, 3))
    assert not too_big.feasible


def test_non_strict_allows_zero_angles():
    T = torus_two_faces()
    d = AngleAssignment(T, [Fr(1), Fr(1), Fr(0)])
    assert not decide_flow(T, d).feasible  # Delta must be positive
    d = AngleAssignment(T, [Fr(1), Fr(1, 2), Fr(1, 2)])
    rep = decide_flow(T, d, strict=False)
    assert rep.feasible and rep.solution.check(d, strict=False)
    assert not rep.solution.check(d)


def test_tetrahedron_uniform():
    T = tetrahedron()
    d = AngleAssignment(T, [Fr(2, 3)] * T.edge_count)
    rep = decide_flow(T, d, strict=True)
    assert rep.feasible and rep.lp_epsilon == Fr(1, 3)
    assert all(a == Fr(1, 3) for a in rep.solution.angles.values())


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_newton_epsilon_matches_lp(n, seed):
    rng = random.Random(seed)
    T = random_gluing(n, rng)
    if not T.is_connected():
        return
    for d in sample_deltas(T, 5, rng):
        flow = decide_flow(T, d, strict=True)
        lp = decide_lp(T, d)
        assert flow.feasible == lp.feasible
        if lp.feasible:
            assert flow.lp_epsilon == lp.lp_epsilon
            assert flow.solution.check(d)
            assert min(flow.solution.angles.values()) == flow.lp_epsilon
        loose = decide_flow(T, d, strict=False)
        assert loose.feasible >= flow.feasible


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_corrected_psi_bound(n, seed):
    """The optimum is at least min(psi / |E|, min over edges of Delta(e) / m(e))."""
    rng = random.Random(seed)
    T = random_gluing(n, rng)
    if not T.is_connected():
        return
    for d in sample_deltas(T, 5, rng):
        rep = decide_flow(T, d, strict=True)
        if not rep.feasible:
            continue
        psi = minimum_proper_excess(T, d)[0]
        cap = min(d[e] / len(T.edges[e]) for e in range(T.edge_count))
        assert rep.lp_epsilon >= min(psi / T.edge_count, cap)


def test_psi_bound_counterexample():
    """Two faces glued into a torus: psi / |E| = 1/3 yet the best smallest angle is 1/16."""
    T = torus_two_faces()
    vals = [Fr(1, 8), Fr(15, 16), Fr(15, 16)]
    d = AngleAssignment(T, vals)
    rep = decide_flow(T, d, strict=True)
    psi = minimum_proper_excess(T, d)[0]
    assert psi / T.edge_count == Fr(1, 3)
    assert rep.lp_epsilon == Fr(1, 16) == decide_lp(T, d).lp_epsilon
