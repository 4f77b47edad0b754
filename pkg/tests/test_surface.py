import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delaunay_angles.catalog import (
    annulus,
    bipyramid,
    pillowcase,
    random_gluing,
    single_triangle,
    square,
    tetrahedron,
    torus_grid,
    torus_two_faces,
    wheel,
)
from delaunay_angles.errors import DanglingDart, DuplicateGluing, NonOrientable, NotSimplicial
from delaunay_angles.surface import (
    ClosedSubcomplex,
    FaceSet,
    build_surface,
    connected_subsets,
    enumerate_minimal_cutsets,
    enumerate_minimal_noncoterminous_cutsets,
    enumerate_simple_subcomplexes,
    is_cutset,
    poincare_dual,
    proper_face_subsets,
    surface_from_triangles,
)


def test_square_counts():
    T = square()
    assert (T.face_count, T.edge_count, T.vertex_count) == (2, 5, 4)
    assert T.euler_characteristic() == 1
    assert T.is_disk()
    assert len(T.interior_edges) == 1
    assert all(T.boundary_vertex)


def test_single_triangle_is_a_disk():
    T = single_triangle()
    assert T.is_disk()
    assert T.boundary_components == 1
    assert T.edge_count == 3


@pytest.mark.parametrize(
    "make, chi, closed, genus",
    [
        (pillowcase, 2, True, 0),
        (tetrahedron, 2, True, 0),
        (lambda: bipyramid(5), 2, True, 0),
        (torus_two_faces, 0, True, 1),
        (lambda: torus_grid(2, 3), 0, True, 1),
    ],
)
def test_closed_surfaces(make, chi, closed, genus):
    T = make()
    assert T.euler_characteristic() == chi
    assert T.is_closed is closed
    assert T.genus == genus
    assert T.is_connected()


def test_annulus_has_two_boundary_circles():
    T = annulus(4)
    assert T.euler_characteristic() == 0
    assert T.boundary_components == 2


def test_wheel_center_is_interior():
    T = wheel(6)
    interior = [v for v in range(T.vertex_count) if not T.boundary_vertex[v]]
    assert len(interior) == 1
    assert T.degree(interior[0]) == 6


def test_pillowcase_is_not_simplicial():
    assert not pillowcase().is_simplicial()
    assert tetrahedron().is_simplicial()


def test_dangling_and_duplicate_darts():
    with pytest.raises(DanglingDart):
        build_surface(1, [((0, 0), (0, 3))])
    with pytest.raises(DuplicateGluing):
        build_surface(2, [((0, 0), (1, 0)), ((0, 0), (1, 1))])
    with pytest.raises(DuplicateGluing):
        build_surface(1, [((0, 1), (0, 1))])


def test_orientation_preserving_gluing_is_reoriented():
    # same gluing as the square, but face 1 given with the opposite orientation
    T = build_surface(2, [((0, 1), (1, 1), False)])
    assert T.flipped_faces
    assert T.is_disk()


def test_mobius_band_is_rejected():
    # a strip of two triangles whose ends are glued with a twist
    with pytest.raises(NonOrientable):
        build_surface(2, [((0, 0), (1, 0)), ((0, 1), (1, 1), False)])


def test_surface_from_triangles_rejects_repeated_directed_edge():
    with pytest.raises(NonOrientable):
        surface_from_triangles([(0, 1, 2), (0, 1, 3)])


def test_partner_is_an_involution():
    T = torus_grid(2, 2)
    for d in T.darts:
        p = T.partner(d)
        assert p is not None and T.partner(p) == d


def test_face_set_edges_and_relative_boundary():
    T = square()
    fs = FaceSet.of(T, [0])
    assert len(fs.edges) == 3
    assert fs.relative_boundary_edges == frozenset(T.interior_edges)
    assert fs.is_simple()
    assert not FaceSet.of(T, [0, 1]).is_simple()
    with pytest.raises(ValueError):
        FaceSet.of(T, [5])


def test_closure_adds_edges_and_vertices():
    T = square()
    sub = ClosedSubcomplex.closure(T, faces=[0])
    assert len(sub.edges) == 3 and len(sub.vertices) == 3
    assert sub.euler_characteristic() == 1
    single = ClosedSubcomplex.closure(T, edges=[T.interior_edges[0]])
    assert single.faces == frozenset() and len(single.vertices) == 2
    with pytest.raises(ValueError):
        ClosedSubcomplex(T, frozenset([0]), frozenset(), frozenset())


def test_connected_subsets_of_a_path():
    adj = [[1], [0, 2], [1]]
    subsets = list(connected_subsets(adj))
    assert len(subsets) == len(set(subsets)) == 6


def test_simple_subcomplexes_of_tetrahedron():
    T = tetrahedron()
    # 4 singletons, 6 pairs and 4 triples; every one has a connected complement
    simple = {fs.faces for fs in enumerate_simple_subcomplexes(T)}
    brute = {s for s in proper_face_subsets(T) if FaceSet(T, s).is_simple()}
    assert simple == brute
    assert len(simple) == 14


def test_cutsets_of_the_square():
    T = square()
    cuts = list(enumerate_minimal_cutsets(T))
    assert cuts
    for c in cuts:
        assert is_cutset(T, c.edges)
        for e in c.edges:
            assert not is_cutset(T, c.edges - {e})


def test_noncoterminous_cutsets_strict_mode():
    with pytest.raises(NotSimplicial):
        list(enumerate_minimal_noncoterminous_cutsets(pillowcase(), strict=True))
    assert all(not c.coterminous for c in enumerate_minimal_noncoterminous_cutsets(bipyramid(4)))


def test_dual_graph_has_one_edge_per_interior_edge():
    T = tetrahedron()
    D = poincare_dual(T)
    assert len(D.edges) == 6
    assert all(len(a) == 3 for a in D.adjacency())


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=9), st.integers(min_value=0, max_value=10**6))
def test_euler_formula_for_random_gluings(n, seed):
    T = random_gluing(n, random.Random(seed))
    comps = T.boundary_components
    if T.is_connected():
        assert T.euler_characteristic() == 2 - 2 * T.genus - comps
    assert sum(T.degree(v) for v in range(T.vertex_count)) == 2 * T.edge_count
    assert sum(len(d) for d in T.edges) == 3 * T.face_count
