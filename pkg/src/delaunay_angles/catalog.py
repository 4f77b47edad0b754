"""Test and demo fixtures: small surfaces, random surfaces and angle samplers."""
from __future__ import annotations

import functools
import random
from fractions import Fraction
from typing import Iterator

from .feasibility import AngleAssignment
from .surface import TriangulatedSurface, build_surface, surface_from_triangles

ONE = Fraction(1)


# -- exhaustive small gluings --------------------------------------------------------


def _partial_matchings(items: list) -> Iterator[list[tuple]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in _partial_matchings(rest):
        yield tail
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1 :]
        for tail in _partial_matchings(remaining):
            yield [(first, other)] + tail


def canonical_code(face_count: int, partner: dict) -> tuple | None:
    """Isomorphism-invariant code of a connected gluing (None if disconnected).

    Every (face, rotation) pair is tried as a root; faces are numbered in
    breadth-first order and each newly reached face is rotated so that the
    dart it was reached through becomes slot 0.
    """
    best = None
    for root in range(face_count):
        for rot in range(3):
            new_index = {root: 0}
            rotation = {root: rot}
            order = [root]
            code = []
            k = 0
            while k < len(order):
                f = order[k]
                for s in range(3):
                    old = (f, (s + rotation[f]) % 3)
                    p = partner.get(old)
                    if p is None:
                        code.append(-1)
                        continue
                    g, j = p
                    if g not in new_index:
                        new_index[g] = len(order)
                        rotation[g] = j
                        order.append(g)
                    code.append(3 * new_index[g] + (j - rotation[g]) % 3)
                k += 1
            if len(order) != face_count:
                return None
            code = tuple(code)
            if best is None or code < best:
                best = code
    return best


def surface_from_code(code: tuple) -> TriangulatedSurface:
    n = len(code) // 3
    gl = []
    for d, p in enumerate(code):
        if p >= 0 and d < p:
            gl.append(((d // 3, d % 3), (p // 3, p % 3)))
    return build_surface(n, gl)


@functools.lru_cache(maxsize=None)
def _gluing_codes(face_count: int) -> tuple:
    darts = [(f, i) for f in range(face_count) for i in range(3)]
    seen = {}
    for matching in _partial_matchings(darts):
        partner = {}
        for a, b in matching:
            partner[a] = b
            partner[b] = a
        code = canonical_code(face_count, partner)
        if code is not None and code not in seen:
            seen[code] = None
    return tuple(seen)


def enumerate_gluings(face_count: int) -> list[TriangulatedSurface]:
    """All connected oriented gluings of ``face_count`` triangles up to isomorphism."""
    return [surface_from_code(c) for c in _gluing_codes(face_count)]


def random_gluing(face_count: int, rng: random.Random, glue_prob: float = 0.8) -> TriangulatedSurface:
    """A random connected gluing: a random dual spanning tree plus extra pairs."""
    darts = [(f, i) for f in range(face_count) for i in range(3)]
    rng.shuffle(darts)
    free = set(darts)
    partner: dict = {}

    def glue(a, b):
        partner[a] = b
        partner[b] = a
        free.discard(a)
        free.discard(b)

    order = list(range(face_count))
    rng.shuffle(order)
    for k in range(1, face_count):
        g = order[k]
        f = order[rng.randrange(k)]
        fa = [d for d in free if d[0] == f]
        ga = [d for d in free if d[0] == g]
        if not fa:
            f = next(x for x in order[:k] if any(d[0] == x for d in free))
            fa = [d for d in free if d[0] == f]
        glue(rng.choice(sorted(fa)), rng.choice(sorted(ga)))
    rest = sorted(free)
    rng.shuffle(rest)
    while len(rest) >= 2:
        a, b = rest.pop(), rest.pop()
        if rng.random() < glue_prob:
            glue(a, b)
    return build_surface(face_count, [(a, b) for a, b in partner.items() if a < b])


def surface_type(T: TriangulatedSurface) -> str:
    chi, b = T.euler_characteristic(), T.boundary_components
    names = {(1, 1): "disk", (2, 0): "sphere", (0, 0): "torus", (0, 2): "annulus"}
    return names.get((chi, b), f"chi={chi},b={b}")


# -- named instances -------------------------------------------------------------------


def single_triangle() -> TriangulatedSurface:
    return build_surface(1, [])


def square() -> TriangulatedSurface:
    """Two triangles sharing a diagonal; vertices 0..3 counterclockwise."""
    return surface_from_triangles([(0, 1, 2), (0, 2, 3)])


def fan(k: int) -> TriangulatedSurface:
    """k triangles around a boundary vertex 0."""
    return surface_from_triangles([(0, i, i + 1) for i in range(1, k + 1)])


def wheel(k: int = 6) -> TriangulatedSurface:
    """k triangles around an interior vertex 0."""
    return surface_from_triangles([(0, i, i % k + 1) for i in range(1, k + 1)])


def pillowcase() -> TriangulatedSurface:
    """Two triangles glued along all three edges: a sphere."""
    return surface_from_triangles([(0, 1, 2), (0, 2, 1)])


def tetrahedron() -> TriangulatedSurface:
    return surface_from_triangles([(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)])


def octahedron() -> TriangulatedSurface:
    return bipyramid(4)


def bipyramid(k: int) -> TriangulatedSurface:
    """Equator 0..k-1, apexes k (top) and k+1 (bottom); 2k faces."""
    top, bot = k, k + 1
    tris = []
    for i in range(k):
        j = (i + 1) % k
        tris.append((i, j, top))
        tris.append((j, i, bot))
    return surface_from_triangles(tris)


def torus_two_faces() -> TriangulatedSurface:
    return build_surface(2, [((0, 1), (1, 2)), ((0, 2), (1, 0)), ((0, 0), (1, 1))])


def torus_grid(m: int = 2, n: int = 2) -> TriangulatedSurface:
    """An m x n square grid on the torus, each square cut by a diagonal.

    On small grids vertex labels repeat along edges, so darts are glued by
    the translation class of the grid segment they cover.
    """
    faces = []
    for i in range(m):
        for j in range(n):
            a, b, c, d = (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)
            faces.append((a, b, c))
            faces.append((a, c, d))

    def norm(p):
        return (p[0] % m, p[1] % n)

    owner = {}
    gl = []
    for f, tri in enumerate(faces):
        for s in range(3):
            x, y = tri[(s + 1) % 3], tri[(s + 2) % 3]
            key = (norm(x), (y[0] - x[0], y[1] - x[1]))
            rkey = (norm(y), (x[0] - y[0], x[1] - y[1]))
            if rkey in owner:
                gl.append((owner.pop(rkey), (f, s)))
            else:
                owner[key] = (f, s)
    return build_surface(len(faces), gl)


def annulus(k: int = 3) -> TriangulatedSurface:
    """A strip of 2k triangles closed into a ring."""
    tris = []
    for i in range(k):
        j = (i + 1) % k
        tris.append((i, j, k + j))
        tris.append((i, k + j, k + i))
    return surface_from_triangles(tris)


def named_instances() -> dict[str, TriangulatedSurface]:
    return {
        "triangle": single_triangle(),
        "square": square(),
        "fan3": fan(3),
        "fan4": fan(4),
        "wheel5": wheel(5),
        "wheel6": wheel(6),
        "pillowcase": pillowcase(),
        "tetrahedron": tetrahedron(),
        "bipyramid3": bipyramid(3),
        "octahedron": octahedron(),
        "torus2": torus_two_faces(),
        "torus8": torus_grid(2, 2),
        "annulus6": annulus(3),
        "annulus8": annulus(4),
    }


def criterion_catalog(exhaustive_up_to: int = 3, random_per_size: int = 6, max_faces: int = 8, seed: int = 7):
    """(name, surface) pairs: every small gluing, named shapes and random gluings."""
    out = []
    for n in range(1, exhaustive_up_to + 1):
        for k, T in enumerate(enumerate_gluings(n)):
            out.append((f"glue{n}-{k}", T))
    for name, T in named_instances().items():
        if T.face_count > exhaustive_up_to:
            out.append((name, T))
    rng = random.Random(seed)
    for n in range(exhaustive_up_to + 1, max_faces + 1):
        for k in range(random_per_size):
            out.append((f"rand{n}-{k}", random_gluing(n, rng)))
    return out


# -- angle samplers ---------------------------------------------------------------------


def _composition(q: int, rng: random.Random, allow_zero: bool) -> tuple[int, int, int]:
    lo = 0 if allow_zero else 1
    while True:
        a = rng.randint(lo, q - 2 * lo)
        b = rng.randint(lo, q - a - lo)
        c = q - a - b
        if c >= lo:
            parts = [a, b, c]
            rng.shuffle(parts)
            return tuple(parts)


def random_face_angles(T: TriangulatedSurface, rng: random.Random, q: int | None = None, allow_zero: bool = False):
    """Corner angles that are multiples of 1/q, summing to 1 on every face."""
    q = q or rng.randint(3, 8)
    angles = {}
    for f in T.faces:
        parts = _composition(q, rng, allow_zero)
        for c in range(3):
            angles[(f, c)] = Fraction(parts[c], q)
    return angles


def sample_deltas(T: TriangulatedSurface, count: int, rng: random.Random) -> list[AngleAssignment]:
    """A mix of realizable, borderline and perturbed dihedral angles.

    Denominators never exceed 8.
    """
    out = []
    for k in range(count):
        mode = k % 5
        q = rng.choice([4, 6, 8]) if mode != 0 else rng.randint(3, 8)
        if mode in (0, 1):
            ang = random_face_angles(T, rng, q)
            out.append(AngleAssignment.from_face_angles(T, ang))
        elif mode == 2:
            ang = random_face_angles(T, rng, q, allow_zero=True)
            vals = list(AngleAssignment.from_face_angles(T, ang))
            vals = [v if v > 0 else Fraction(1, q) for v in vals] if rng.random() < 0.3 else vals
            out.append(AngleAssignment(T, vals))
        elif mode == 3:
            ang = random_face_angles(T, rng, q)
            vals = list(AngleAssignment.from_face_angles(T, ang))
            if len(vals) > 1:
                i, j = rng.sample(range(len(vals)), 2)
                step = Fraction(rng.choice([1, 2]), q)
                vals[i] += step
                vals[j] -= step
            out.append(AngleAssignment(T, vals))
        else:
            vals = [Fraction(rng.randint(1, 2 * q - 1), q) for _ in range(T.edge_count)]
            if rng.random() < 0.7:
                # rescale toward the right total, keeping small denominators
                total = sum(vals)
                fix = Fraction(T.face_count) - total
                e = rng.randrange(T.edge_count)
                vals[e] += fix
            out.append(AngleAssignment(T, vals))
    return out


# -- larger spheres -----------------------------------------------------------------------


def convex_hull_sphere(n_points: int, rng: random.Random) -> TriangulatedSurface:
    """Triangulated sphere from the convex hull of random points on a sphere."""
    import numpy as np
    from scipy.spatial import ConvexHull

    gen = np.random.default_rng(rng.randrange(2**32))
    pts = gen.normal(size=(n_points, 3))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    hull = ConvexHull(pts)
    centre = pts.mean(axis=0)
    tris = []
    for simplex in hull.simplices:
        a, b, c = (pts[i] for i in simplex)
        normal = np.cross(b - a, c - a)
        if np.dot(normal, a - centre) < 0:
            simplex = (simplex[0], simplex[2], simplex[1])
        tris.append(tuple(int(i) for i in simplex))
    return surface_from_triangles(tris)


def genus0_catalog(seed: int = 3) -> list[tuple[str, TriangulatedSurface]]:
    """Closed spheres with 8 to 16 faces."""
    out = [(f"bipyramid{k}", bipyramid(k)) for k in range(4, 9)]
    rng = random.Random(seed)
    for n in range(6, 11):
        out.append((f"hull{n}", convex_hull_sphere(n, rng)))
    return out


def random_sphere_with_faces(face_count: int, seed: int = 0) -> TriangulatedSurface:
    """A random sphere triangulation with exactly ``face_count`` faces (even)."""
    if face_count % 2:
        raise ValueError("a closed triangulated sphere has an even number of faces")
    return convex_hull_sphere(face_count // 2 + 2, random.Random(seed))


def random_flow_deltas(T: TriangulatedSurface, rng: random.Random) -> AngleAssignment:
    """Realizable dihedral angles with denominators at most 8."""
    return AngleAssignment.from_face_angles(T, random_face_angles(T, rng, q=8))


def all_gluing_counts(max_faces: int) -> dict[int, int]:
    return {n: len(enumerate_gluings(n)) for n in range(1, max_faces + 1)}


