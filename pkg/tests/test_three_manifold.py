from fractions import Fraction as Fr

import pytest

from delaunay_angles.errors import InconsistentGluing, InvariantViolation, UnGluedFace
from delaunay_angles.three_manifold import (
    PAIRS,
    SLOTS,
    AngleStructure3,
    NormalSurfaceVector,
    build_ideal_triangulation,
    certificate_from_normal_surface,
    enumerate_normal_vectors,
    hext_check,
    linear_hyperbolic_lp,
    normal_chi,
    one_tet_valence_one,
    two_tet_census,
    weak_only,
)

FIXTURES = [two_tet_census, one_tet_valence_one, weak_only]


@pytest.mark.parametrize("make", FIXTURES)
def test_valences_add_up(make):
    M = make()
    assert sum(M.valences) == 6 * M.tet_count
    assert len(M.slot_edge) == 6 * M.tet_count


def test_census_invariants():
    M = two_tet_census()
    assert sorted(M.valences) == [6, 6]
    assert M.is_orientable()
    assert M.cusp_types() == [0]
    link = M.vertex_link()
    assert link.is_closed and link.euler_characteristic() == 0


def test_census_structure():
    M = two_tet_census()
    res = linear_hyperbolic_lp(M)
    assert res.status == "structure" and res.epsilon == Fr(1, 3)
    assert res.structure.check(strict=True)
    third = AngleStructure3(M, {(t, p): Fr(1, 3) for t in range(2) for p in range(3)})
    assert third.check(strict=True)
    wrong = AngleStructure3(M, {(t, p): Fr(1, 2) for t in range(2) for p in range(3)})
    assert not wrong.check()


def test_one_tet_has_no_structure():
    M = one_tet_valence_one()
    assert 1 in M.valences
    assert not M.is_orientable()
    for strict in (True, False):
        res = linear_hyperbolic_lp(M, strict=strict)
        assert res.status == "none"
        cert = res.certificate
        assert cert.is_feasible() and cert.objective > 0


def test_weak_only():
    M = weak_only()
    assert sorted(M.valences) == [2, 10]
    assert M.cusp_types() == [0]
    strict = linear_hyperbolic_lp(M)
    assert strict.status == "weak" and strict.epsilon == 0
    assert strict.structure.check() and not strict.structure.check(strict=True)
    # the certificate of optimality has objective 0
    assert strict.certificate.objective == 0
    assert linear_hyperbolic_lp(M, strict=False).status == "weak"


def test_unglued_face():
    with pytest.raises(UnGluedFace):
        build_ideal_triangulation(1, [(0, 0, 0, 1, (1, 0, 2, 3))])
    M = build_ideal_triangulation(1, [(0, 0, 0, 1, (1, 0, 2, 3))], closed=False)
    assert sum(M.valences) == 6


@pytest.mark.parametrize(
    "entry",
    [
        (0, 0, 1, 0, (0, 1, 2, 2)),  # not a permutation
        (0, 0, 1, 1, (0, 1, 2, 3)),  # face 0 not sent to face 1
        (0, 0, 0, 0, (0, 1, 2, 3)),  # glued to itself
        (0, 0, 5, 0, (0, 1, 2, 3)),  # no such tetrahedron
    ],
)
def test_inconsistent_gluing(entry):
    with pytest.raises(InconsistentGluing):
        build_ideal_triangulation(2, [entry], closed=False)


def test_face_glued_twice():
    with pytest.raises(InconsistentGluing):
        build_ideal_triangulation(
            2, [(0, 0, 1, 0, (0, 1, 2, 3)), (0, 0, 1, 1, (1, 0, 2, 3))], closed=False
        )


def test_zero_vector():
    M = two_tet_census()
    Z = NormalSurfaceVector.zero(M)
    assert normal_chi(Z) == 0
    assert all(i == 0 for i in Z.intersection_numbers().values())


@pytest.mark.parametrize("make", [two_tet_census, weak_only])
def test_vertex_link_certificate(make):
    M = make()
    L = NormalSurfaceVector.vertex_linking(M)
    assert L.is_quad_free()
    assert normal_chi(L) == 0
    cert = certificate_from_normal_surface(L)
    assert all(r == 0 for r in cert.residuals.values())
    assert cert.objective == 2 * normal_chi(L) == 0


def test_slot_counts_bounded_by_u():
    M = two_tet_census()
    for S in enumerate_normal_vectors(M, max_count=1):
        for t in range(M.tet_count):
            for s1, s2 in PAIRS:
                assert S.slot_count(t, s1) + S.slot_count(t, s2) <= S.u(t)
        cert = certificate_from_normal_surface(S)
        assert cert.objective == 2 * normal_chi(S)


def test_inconsistent_quad_vector():
    M = two_tet_census()
    S = NormalSurfaceVector.make(M, [[0] * 4, [0] * 4], [[1, 0, 0], [0, 0, 0]])
    with pytest.raises(InvariantViolation):
        S.intersection_numbers()
    with pytest.raises(InvariantViolation):
        certificate_from_normal_surface(S)


def test_census_small_normal_vectors_are_quad_free():
    M = two_tet_census()
    found = list(enumerate_normal_vectors(M, max_count=2))
    assert found and all(S.is_quad_free() for S in found)


def test_one_tet_quad_surface():
    M = one_tet_valence_one()
    S = NormalSurfaceVector.make(M, [[0] * 4], [[1, 0, 0]])
    assert not S.is_quad_free()
    assert normal_chi(S) == 0
    assert certificate_from_normal_surface(S).objective == 0


def test_make_validates_shape():
    M = two_tet_census()
    with pytest.raises(InvariantViolation):
        NormalSurfaceVector.make(M, [[0] * 4], [[0] * 3])
    with pytest.raises(InvariantViolation):
        NormalSurfaceVector.make(M, [[0] * 4, [-1, 0, 0, 0]], [[0] * 3, [0] * 3])
    assert len(SLOTS) == 6


def test_hext_consistency():
    for make in FIXTURES:
        M = make()
        surfaces = list(enumerate_normal_vectors(M, max_count=1))
        rep = hext_check(M, surfaces)
        assert rep.consistent
    M = one_tet_valence_one()
    rep = hext_check(M, [NormalSurfaceVector.vertex_linking(M)])
    assert rep.obstructed_weak and rep.lp_weak.status == "none"


def test_hext_empty_list():
    rep = hext_check(two_tet_census(), [])
    assert rep.verdicts == [] and rep.consistent
    assert not rep.obstructed_weak and not rep.obstructed_strict
    assert rep.lp_strict.status == "structure"
