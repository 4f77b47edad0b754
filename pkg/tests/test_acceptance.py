"""The ten acceptance criteria.

Each test records a one-line verdict that the terminal summary prints as
``criterion N: PASS (...)`` or ``criterion N: FAIL (...)``.  Running this file
directly with ``python3 tests/test_acceptance.py`` prints the same lines.
"""
from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from delaunay_angles import cli
from delaunay_angles.catalog import (
    criterion_catalog,
    genus0_catalog,
    random_flow_deltas,
    random_sphere_with_faces,
    sample_deltas,
    square,
    tetrahedron,
)
from delaunay_angles.combgeo import averaging_bound_check, positively_curved_realizability, stellate
from delaunay_angles.errors import DegeneratePosition
from delaunay_angles.feasibility import (
    AngleAssignment,
    andreev_check,
    check_conditions_bruteforce,
    check_conditions_simple,
    check_curvature_conditions,
    decide_lp,
    minimum_proper_excess,
)
from delaunay_angles.flow import decide_flow
from delaunay_angles.realization import develop, round_trip, similarity_fit
from delaunay_angles.three_manifold import (
    AngleStructure3,
    NormalSurfaceVector,
    certificate_from_normal_surface,
    two_tet_census,
)

try:
    from conftest import record
except ImportError:  # running as a script from elsewhere
    sys.path.insert(0, str(Path(__file__).parent))
    from conftest import record

DATA = Path(__file__).resolve().parent.parent / "data"
SAMPLES = 50


def _catalog():
    return criterion_catalog(exhaustive_up_to=4, random_per_size=10, max_faces=8, seed=7)


@pytest.fixture(scope="module")
def oracle_runs():
    """Every decider on every (surface, Delta) pair of criterion 1."""
    start = time.perf_counter()
    runs = []
    rng = random.Random(2024)
    for name, T in _catalog():
        for delta in sample_deltas(T, SAMPLES, rng):
            runs.append(
                {
                    "name": name,
                    "T": T,
                    "delta": delta,
                    "brute": check_conditions_bruteforce(T, delta),
                    "simple": check_conditions_simple(T, delta),
                    "curv": check_curvature_conditions(T, delta),
                    "lp": decide_lp(T, delta),
                    "flow": decide_flow(T, delta, strict=True),
                }
            )
    return runs, time.perf_counter() - start


def test_criterion_1_oracle_equivalence(oracle_runs):
    runs, elapsed = oracle_runs
    surfaces = {r["name"] for r in runs}
    kinds = {_kind(r["T"]) for r in runs}
    bad = [
        r["name"]
        for r in runs
        if len({r["brute"].feasible, r["simple"].feasible, r["curv"].feasible, r["lp"].feasible}) != 1
    ]
    max_den = max(Fraction(v).denominator for r in runs for v in r["delta"].values)
    denominators_ok = max_den <= 8
    ok = not bad and elapsed <= 600 and denominators_ok and {"disk", "sphere", "torus", "annulus"} <= kinds
    record(
        1,
        ok,
        f"{len(runs)} cases on {len(surfaces)} surfaces ({', '.join(sorted(kinds))}), "
        f"{len(bad)} disagreements, max denominator {max_den}, {elapsed:.0f}s",
    )
    assert not bad, bad[:10]
    assert denominators_ok
    assert {"disk", "sphere", "torus", "annulus"} <= kinds
    assert elapsed <= 600


def _kind(T):
    if T.is_disk():
        return "disk"
    if T.is_sphere():
        return "sphere"
    if T.is_closed and T.genus == 1:
        return "torus"
    if T.boundary_components == 2 and T.euler_characteristic() == 0:
        return "annulus"
    return "other"


def test_criterion_2_flow_lp_agreement(oracle_runs):
    runs, _ = oracle_runs
    verdict_bad = [r["name"] for r in runs if r["flow"].feasible != r["lp"].feasible]
    sol_bad = [
        r["name"]
        for r in runs
        if r["lp"].feasible
        and not (r["flow"].solution.check(r["delta"]) and r["lp"].solution.check(r["delta"]))
    ]
    record(2, not verdict_bad and not sol_bad, f"{len(runs)} cases, {len(verdict_bad)} verdict and {len(sol_bad)} solution failures")
    assert not verdict_bad
    assert not sol_bad


def test_criterion_3_square():
    T = square()
    # the diagonal is the only interior edge
    diag = T.interior_edges[0]
    delta = AngleAssignment(T, [Fraction(1) if e == diag else Fraction(1, 4) for e in range(T.edge_count)])
    rep = decide_lp(T, delta)
    sol = rep.solution
    boundary_corners = [sol.angles[(f, i)] for e in T.boundary_edges for (f, i) in T.edges[e]]
    right_corners = [sol.angles[(f, i)] for (f, i) in T.edges[diag]]
    dev = develop(T, sol)
    vp = dev.vertex_positions()
    # vertices 0,1,2,3 go around the square
    target = [0j, 1 + 0j, 1 + 1j, 1j]
    _, _, err = similarity_fit([vp[v] for v in range(4)], target)
    ok = (
        rep.feasible
        and all(a == Fraction(1, 4) for a in boundary_corners)
        and all(a == Fraction(1, 2) for a in right_corners)
        and err <= 1e-9
    )
    record(3, ok, f"corners facing boundary edges all 1/4, right angles 1/2, square fit error {err:.1e}")
    assert rep.feasible
    assert all(a == Fraction(1, 4) for a in boundary_corners)
    assert all(a == Fraction(1, 2) for a in right_corners)
    assert err <= 1e-9


def _random_points(rng, n):
    return [(rng.random(), rng.random()) for _ in range(n)]


def test_criterion_4_round_trip():
    rng = random.Random(99)
    start = time.perf_counter()
    worst, failures, done = 0.0, [], 0
    while done < 100:
        pts = _random_points(rng, rng.randint(4, 12))
        try:
            rt = round_trip(pts)
        except DegeneratePosition:
            continue
        dr = rt.delaunay
        res = andreev_check(dr.surface, dr.delta, dr.boundary_angles, tol=1e-6)
        worst = max(worst, rt.relative_error)
        if not res.passed or rt.relative_error > 1e-6:
            failures.append((len(pts), res.clause, rt.relative_error))
        done += 1
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed <= 120
    record(4, ok, f"{done} point sets, worst similarity error {worst:.1e}, {elapsed:.1f}s")
    assert not failures, failures[:5]
    assert elapsed <= 120


def test_criterion_5_gauss_bonnet(oracle_runs):
    runs, _ = oracle_runs
    checked, bad = 0, []
    for r in runs:
        if not r["lp"].feasible:
            continue
        T, delta = r["T"], r["delta"]
        checked += 1
        if delta.total() != T.face_count:
            bad.append(r["name"])
        if T.is_closed:
            kappa = sum((delta.curvature(v) for v in range(T.vertex_count)), Fraction(0))
            if kappa != 2 * T.euler_characteristic():
                bad.append(r["name"])
    record(5, not bad, f"{checked} feasible instances, {len(bad)} failures")
    assert checked > 0
    assert not bad


def test_criterion_6_psi_bound(oracle_runs):
    runs, _ = oracle_runs
    checked, bad, corrected_bad = 0, [], 0
    for r in runs:
        if not r["flow"].feasible:
            continue
        T, delta = r["T"], r["delta"]
        found = minimum_proper_excess(T, delta)
        if found is None:  # a single face has no proper face sets
            continue
        psi = found[0]
        checked += 1
        smallest = min(r["flow"].solution.angles.values())
        if smallest < psi / T.edge_count:
            bad.append(r["name"])
        # reported for context only; the criterion is the bound as stated
        cap = min(delta[e] / len(T.edges[e]) for e in range(T.edge_count))
        if smallest < min(psi / T.edge_count, cap):
            corrected_bad += 1
    record(
        6,
        not bad,
        f"{checked} feasible instances with proper face sets, {len(bad)} below psi/|E|; "
        f"{corrected_bad} below min(psi/|E|, min Delta(e)/m(e))",
    )
    assert checked > 0
    assert not bad


def test_criterion_7_two_tet(capsys):
    code = cli.main(["m3-check", str(DATA / "twotet.tri3"), "--emit", "json"])
    report = cli.load_report(capsys.readouterr().out)
    M = two_tet_census()
    third = AngleStructure3(M, {(t, p): Fraction(1, 3) for t in range(M.tet_count) for p in range(3)})
    link = NormalSurfaceVector.vertex_linking(M)
    cert = certificate_from_normal_surface(link)
    ok = (
        code == 0
        and report["status"] == "structure"
        and sorted(report["valences"]) == [6, 6]
        and all(v == Fraction(1, 3) for v in report["angles"].values())
        and third.check(strict=True)
        and all(r == 0 for r in cert.residuals.values())
        and cert.objective == 0
    )
    record(7, ok, "strict structure, all angles 1/3, vertex-link certificate tight with objective 0")
    assert code == 0
    assert report["status"] == "structure"
    assert all(v == Fraction(1, 3) for v in report["angles"].values())
    assert third.check(strict=True)
    assert all(r == 0 for r in cert.residuals.values())
    assert cert.objective == 0


def test_criterion_8_stellation():
    start = time.perf_counter()
    results = {}
    for name, T in genus0_catalog():
        assert 8 <= T.face_count <= 16
        results[name] = positively_curved_realizability(stellate(T).surface).feasible
    s = stellate(tetrahedron())
    tet = positively_curved_realizability(s.surface)
    explained = False
    if not tet.feasible:
        uniform = AngleAssignment(s.surface, [Fraction(2, 3)] * s.surface.edge_count)
        explained = averaging_bound_check(s, uniform).forces_flat_or_worse
    elapsed = time.perf_counter() - start
    feasible_bad = [n for n, f in results.items() if f]
    ok = not feasible_bad and (tet.feasible or explained) and elapsed <= 300
    record(
        8,
        ok,
        f"{len(results)} stellated spheres infeasible, tetrahedron stellation {tet.verdict} (eps {tet.lp_epsilon}), {elapsed:.0f}s",
    )
    assert not feasible_bad
    assert tet.feasible or explained
    assert elapsed <= 300


def test_criterion_9_performance():
    T = random_sphere_with_faces(10_000, seed=1)
    delta = random_flow_deltas(T, random.Random(5))
    assert max(Fraction(v).denominator for v in delta.values) <= 8
    start = time.perf_counter()
    rep = decide_flow(T, delta, strict=False)
    elapsed = time.perf_counter() - start
    ok = rep.feasible and elapsed <= 10 and rep.solution.face_angles(0) is not None
    record(9, ok, f"10000-face sphere, non-strict flow {rep.verdict} in {elapsed:.2f}s")
    assert rep.feasible
    assert elapsed <= 10


def test_criterion_10_scope():
    """Nothing large-scale to reproduce: the property suites above are the surface."""
    here = sys.modules[__name__]
    covered = [n for n in range(1, 10) if any(k.startswith(f"test_criterion_{n}_") for k in dir(here))]
    ok = covered == list(range(1, 10))
    record(10, ok, "no empirical tables to reproduce; criteria 1 to 9 form the acceptance surface")
    assert ok


if __name__ == "__main__":
    import conftest

    rc = pytest.main([__file__, "-q"])
    for n in sorted(conftest.ACCEPTANCE):
        passed, detail = conftest.ACCEPTANCE[n]
        print(f"criterion {n}: {'PASS' if passed else 'FAIL'} ({detail})")
    sys.exit(rc)
