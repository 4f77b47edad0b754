import random
from fractions import Fraction as Fr

import pytest

from delaunay_angles.catalog import (
    all_gluing_counts,
    canonical_code,
    criterion_catalog,
    enumerate_gluings,
    genus0_catalog,
    named_instances,
    random_face_angles,
    random_gluing,
    random_sphere_with_faces,
    sample_deltas,
    surface_from_code,
    surface_type,
)


def test_gluing_counts():
    assert all_gluing_counts(3) == {1: 2, 2: 7, 3: 12}


def test_codes_are_isomorphism_invariant():
    rng = random.Random(5)
    for _ in range(20):
        T = random_gluing(4, rng)
        partner = {d: T.partner(d) for d in T.darts if T.partner(d) is not None}
        code = canonical_code(T.face_count, partner)
        # relabel faces and rotate each one
        perm = list(range(4))
        rng.shuffle(perm)
        rot = [rng.randrange(3) for _ in range(4)]
        relabel = {(f, i): (perm[f], (i + rot[f]) % 3) for f in range(4) for i in range(3)}
        moved = {relabel[a]: relabel[b] for a, b in partner.items()}
        assert canonical_code(4, moved) == code
        again = surface_from_code(code)
        back = {d: again.partner(d) for d in again.darts if again.partner(d) is not None}
        assert canonical_code(4, back) == code
        assert (again.edge_count, again.vertex_count, again.boundary_components) == (
            T.edge_count,
            T.vertex_count,
            T.boundary_components,
        )


def test_disconnected_gluing_has_no_code():
    assert canonical_code(2, {}) is None


def test_small_gluings_cover_the_basic_types():
    types = {surface_type(T) for n in (1, 2) for T in enumerate_gluings(n)}
    assert {"disk", "sphere", "torus", "annulus"} <= types


def test_named_instances_are_connected():
    for name, T in named_instances().items():
        assert T.is_connected(), name


def test_criterion_catalog_sizes():
    cat = criterion_catalog(exhaustive_up_to=2, random_per_size=2, max_faces=4, seed=1)
    names = [n for n, _ in cat]
    assert len(names) == len(set(names))
    assert max(T.face_count for _, T in cat) >= 4


def test_random_face_angles_sum_to_one():
    T = random_gluing(5, random.Random(2))
    ang = random_face_angles(T, random.Random(3), q=7)
    for f in T.faces:
        assert sum(ang[(f, c)] for c in range(3)) == 1
        assert all(ang[(f, c)] > 0 for c in range(3))


def test_sample_deltas_denominators():
    rng = random.Random(8)
    for n in range(1, 7):
        T = random_gluing(n, rng)
        for d in sample_deltas(T, 25, rng):
            assert all(Fr(v).denominator <= 8 for v in d)


def test_genus0_catalog():
    cat = genus0_catalog()
    assert len(cat) == 10
    for name, T in cat:
        assert T.is_sphere(), name
        assert 8 <= T.face_count <= 16


def test_random_sphere_face_count():
    T = random_sphere_with_faces(40, seed=2)
    assert T.face_count == 40 and T.is_sphere()
    with pytest.raises(ValueError):
        random_sphere_with_faces(41)
