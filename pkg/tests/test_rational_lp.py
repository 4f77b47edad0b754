import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from delaunay_angles.errors import DimensionMismatch
from delaunay_angles.rational_lp import (
    GenericLP,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    RationalLP,
    dualize,
    is_primal_feasible,
    solve,
    solve_generic,
    to_standard_form,
    verify_farkas,
    verify_optimal,
    verify_ray,
)


def _gauss_solve(M, b):
    """Solve a square rational system; None when singular."""
    n = len(M)
    aug = [list(M[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncol = len(rows[0]) if rows else 0
    for col in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def brute_force_vertices(lp):
    """All basic feasible solutions of A x = a, x >= 0."""
    m, n = lp.shape
    # keep an independent subset of rows
    rows, rhs = [], []
    for i in range(m):
        cand = rows + [list(lp.A[i]) + [lp.a[i]]]
        if _rank(cand) > len(rows):
            rows.append(list(lp.A[i]) + [lp.a[i]])
            rhs.append(lp.a[i])
    # a row inconsistent with the others shows up as a full-rank augmented system
    A = [r[:-1] for r in rows]
    if A and _rank(A) < len(A):
        return []
    k = len(A)
    verts = []
    for cols in itertools.combinations(range(n), k):
        M = [[A[i][j] for j in cols] for i in range(k)]
        sol = _gauss_solve(M, rhs) if k else []
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(cols, sol):
            x[j] = v
        if is_primal_feasible(lp, x):
            verts.append(tuple(x))
    return verts


def test_trivial_optimal():
    lp = RationalLP.build([[1, 1]], [1], [0, 0])
    out = solve(lp)
    assert out.status == OPTIMAL
    assert out.value == 0
    assert is_primal_feasible(lp, out.x)
    assert verify_optimal(lp, out)


def test_trivial_infeasible_farkas():
    lp = RationalLP.build([[1]], [-1], [0])
    out = solve(lp)
    assert out.status == INFEASIBLE
    assert out.farkas == (Fraction(-1),)
    assert verify_farkas(lp, out.farkas)


def test_trivial_unbounded_ray():
    lp = RationalLP.build([[1, -1]], [0], [-1, 0])
    out = solve(lp)
    assert out.status == UNBOUNDED
    assert out.ray == (1, 1)
    assert verify_ray(lp, out.ray)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        RationalLP.build([[1, 1]], [1, 2], [0, 0])
    with pytest.raises(DimensionMismatch):
        RationalLP.build([[1, 1], [1]], [1, 2], [0, 0])


def test_dual_of_simple_program():
    lp = RationalLP.build([[1, 1]], [1], [0, 0])
    d = dualize(lp)
    # maximize y subject to y <= 0 twice
    assert d.is_feasible([Fraction(0)])
    assert not d.is_feasible([Fraction(1)])
    out = solve_generic(d.canonical())
    assert out.status == OPTIMAL and out.value == 0


def test_zero_constraint_dual():
    lp = RationalLP.build([], [], [1, 2])
    d = dualize(lp)
    assert d.A == () and d.objective([]) == 0
    out = solve(lp)
    assert out.status == OPTIMAL and out.value == 0 and out.dual == ()


def test_double_dual_recovers_primal_value():
    lp = RationalLP.build([[1, 2, 1], [0, 1, -1]], [4, 1], [1, 1, 3])
    p = solve(lp)
    assert p.status == OPTIMAL
    std, vm = to_standard_form(dualize(lp).canonical())
    dd = dualize(std)
    # the dual of the canonical dual maximizes -c.x over the primal region
    out = solve_generic(dd.canonical())
    assert out.value == -p.value


def test_generic_free_max():
    g = GenericLP([1], "max", free={0})
    g.add([1], "<=", 3)
    out = solve_generic(g)
    assert out.value == 3 and out.x == [3]


def test_generic_infeasible_preserved():
    g = GenericLP([0], "min")
    g.add([1], ">=", 2)
    g.add([1], "<=", 1)
    out = solve_generic(g)
    assert out.status == INFEASIBLE
    assert verify_farkas(out.program, out.standard.farkas)


def test_equality_program_gets_no_slacks():
    # angles of a single triangle summing to one: three equalities would be
    # the edge rows, here only the face row
    g = GenericLP([0, 0, 0], "min")
    g.add([1, 1, 1], "=", 1)
    lp, vm = to_standard_form(g)
    assert lp.shape == (1, 3)
    assert vm.slack_columns == (None,)


def test_redundant_rows():
    lp = RationalLP.build([[1, 1, 0], [2, 2, 0], [0, 1, 1]], [1, 2, 1], [1, 0, 1])
    out = solve(lp)
    assert out.status == OPTIMAL
    assert verify_optimal(lp, out)


def test_determinism():
    lp = RationalLP.build([[1, 2, 1, 0], [0, 1, -1, 1]], [4, 1], [1, -1, 3, 0])
    assert solve(lp) == solve(lp)


def _random_lp(rng):
    n = rng.randint(1, 6)
    m = rng.randint(0, 4)
    A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    a = [rng.randint(-3, 3) for _ in range(m)]
    c = [rng.randint(-3, 3) for _ in range(n)]
    return RationalLP.build(A, a, c)


def _check_against_oracle(lp):
    out = solve(lp)
    verts = brute_force_vertices(lp)
    if out.status == INFEASIBLE:
        assert verts == []
        assert verify_farkas(lp, out.farkas)
    elif out.status == UNBOUNDED:
        assert verts
        assert verify_ray(lp, out.ray)
    else:
        assert verts
        best = min(sum((ci * xi for ci, xi in zip(lp.c, v)), Fraction(0)) for v in verts)
        assert out.value == best
        assert verify_optimal(lp, out)
        # strong duality with the dual program solved independently
        dual = solve_generic(dualize(lp).canonical())
        assert dual.status == OPTIMAL and dual.value == out.value


def test_random_programs_match_vertex_enumeration():
    rng = random.Random(20240611)
    for _ in range(400):
        _check_against_oracle(_random_lp(rng))


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**31))
def test_property_vertex_enumeration(seed):
    _check_against_oracle(_random_lp(random.Random(seed)))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**31))
def test_weak_duality(seed):
    rng = random.Random(seed)
    lp = _random_lp(rng)
    out = solve(lp)
    if out.status != OPTIMAL:
        return
    d = dualize(lp)
    for v in brute_force_vertices(lp):
        primal = sum((ci * xi for ci, xi in zip(lp.c, v)), Fraction(0))
        assert d.objective(out.dual) <= primal
