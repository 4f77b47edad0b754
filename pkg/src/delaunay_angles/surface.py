"""Oriented semi-simplicial triangulated surfaces.

A surface is a list of faces, each with three corner slots ``0, 1, 2`` in
counterclockwise order, and a partial pairing of darts.  A dart is a pair
``(face, slot)``; edge slot ``i`` is opposite corner ``i`` and runs from corner
``i + 1`` to corner ``i + 2`` (indices mod 3).  Two glued darts are identified
with reversed orientation, so corner ``i + 1`` of the first dart meets corner
``j + 2`` of the second.  Unglued darts are boundary edges.

Everything here is purely combinatorial: edge and vertex classes, the
Poincare dual, face sets, closed subcomplexes, cutsets and Euler
characteristics.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    DanglingDart,
    DuplicateGluing,
    NonOrientable,
    NotSimplicial,
)

Dart = tuple[int, int]
Corner = tuple[int, int]


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


class TriangulatedSurface:
    """Dart-based oriented semi-simplicial 2-complex, possibly with boundary.

    Instances are treated as immutable.  Use :func:`build_surface` or
    :func:`surface_from_triangles` to construct one.

    Derived data (all indices are small integers):

    * ``edges[k]``: tuple of the darts making up edge ``k`` (two for an
      interior edge, one for a boundary edge)
    * ``dart_edge[(f, i)]``: edge index of a dart
    * ``corner_vertex[(f, c)]``: vertex index of a corner
    * ``vertex_corners[v]``: corners at vertex ``v``
    * ``boundary_vertex[v]``: whether ``v`` lies on the boundary
    """

    def __init__(self, face_count: int, partner: dict[Dart, Dart], vertex_labels=None):
        self.face_count = face_count
        self._partner = dict(partner)
        self.flipped_faces: frozenset[int] = frozenset()

        edges: list[tuple[Dart, ...]] = []
        dart_edge: dict[Dart, int] = {}
        for f in range(face_count):
            for i in range(3):
                d = (f, i)
                if d in dart_edge:
                    continue
                p = self._partner.get(d)
                darts = (d,) if p is None else (d, p)
                for x in darts:
                    dart_edge[x] = len(edges)
                edges.append(darts)
        self.edges: tuple[tuple[Dart, ...], ...] = tuple(edges)
        self.dart_edge = dart_edge

        parent = {(f, c): (f, c) for f in range(face_count) for c in range(3)}
        for (f, i), (g, j) in self._partner.items():
            for a, b in (((f, (i + 1) % 3), (g, (j + 2) % 3)), ((f, (i + 2) % 3), (g, (j + 1) % 3))):
                ra, rb = _find(parent, a), _find(parent, b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        roots: dict[Corner, int] = {}
        corner_vertex: dict[Corner, int] = {}
        vertex_corners: list[list[Corner]] = []
        for f in range(face_count):
            for c in range(3):
                r = _find(parent, (f, c))
                if r not in roots:
                    roots[r] = len(vertex_corners)
                    vertex_corners.append([])
                v = roots[r]
                corner_vertex[(f, c)] = v
                vertex_corners[v].append((f, c))
        self.corner_vertex = corner_vertex
        self.vertex_corners = tuple(tuple(cs) for cs in vertex_corners)
        boundary = [False] * len(vertex_corners)
        for f in range(face_count):
            for i in range(3):
                if (f, i) not in self._partner:
                    boundary[corner_vertex[(f, (i + 1) % 3)]] = True
                    boundary[corner_vertex[(f, (i + 2) % 3)]] = True
        self.boundary_vertex = tuple(boundary)
        if vertex_labels is None:
            self.vertex_labels = tuple(range(len(vertex_corners)))
        else:
            self.vertex_labels = tuple(vertex_labels[f][c] for f, c in (vc[0] for vc in self.vertex_corners))

    # -- basic counts -------------------------------------------------------
    @property
    def faces(self) -> range:
        return range(self.face_count)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_corners)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def darts(self) -> Iterator[Dart]:
        for f in range(self.face_count):
            for i in range(3):
                yield (f, i)

    def partner(self, dart: Dart) -> Dart | None:
        return self._partner.get(dart)

    def gluings(self) -> list[tuple[Dart, Dart]]:
        return [e for e in self.edges if len(e) == 2]  # type: ignore[misc]

    def is_boundary_edge(self, e: int) -> bool:
        return len(self.edges[e]) == 1

    @cached_property
    def interior_edges(self) -> tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.edges) if len(e) == 2)

    @cached_property
    def boundary_edges(self) -> tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.edges) if len(e) == 1)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges

    def face_edges(self, f: int) -> tuple[int, int, int]:
        """Edge indices of the three slots of face ``f``."""
        de = self.dart_edge
        return (de[(f, 0)], de[(f, 1)], de[(f, 2)])

    def face_vertices(self, f: int) -> tuple[int, int, int]:
        cv = self.corner_vertex
        return (cv[(f, 0)], cv[(f, 1)], cv[(f, 2)])

    def dart_endpoints(self, dart: Dart) -> tuple[int, int]:
        f, i = dart
        return (self.corner_vertex[(f, (i + 1) % 3)], self.corner_vertex[(f, (i + 2) % 3)])

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        return self.dart_endpoints(self.edges[e][0])

    @cached_property
    def vertex_edge_ends(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the edges incident to it, listed once per edge end.

        A loop edge at ``v`` appears twice.  ``len`` gives the degree of the
        vertex in the 1-skeleton.
        """
        ends: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e in range(self.edge_count):
            a, b = self.edge_endpoints(e)
            ends[a].append(e)
            ends[b].append(e)
        return tuple(tuple(x) for x in ends)

    def degree(self, v: int) -> int:
        return len(self.vertex_edge_ends[v])

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    @cached_property
    def dual_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbouring faces across interior edges (self-gluings omitted)."""
        adj: list[set[int]] = [set() for _ in range(self.face_count)]
        for e in self.interior_edges:
            (f, _), (g, _) = self.edges[e]
            if f != g:
                adj[f].add(g)
                adj[g].add(f)
        return tuple(tuple(sorted(a)) for a in adj)

    def is_connected(self) -> bool:
        if self.face_count == 0:
            return True
        return len(_component(self.dual_adjacency, 0, None)) == self.face_count

    @cached_property
    def boundary_components(self) -> int:
        """Number of boundary circles."""
        nxt: dict[Dart, Dart] = {}
        for f, i in self.darts:
            if (f, i) in self._partner:
                continue
            # Walk from the end corner of this boundary dart around its vertex
            # until the next unglued dart is found.
            g, k = f, (i + 2) % 3
            while True:
                d = (g, (k + 2) % 3)
                p = self._partner.get(d)
                if p is None:
                    nxt[(f, i)] = d
                    break
                g, j = p
                k = (j + 2) % 3
        seen: set[Dart] = set()
        count = 0
        for d in nxt:
            if d in seen:
                continue
            count += 1
            while d not in seen:
                seen.add(d)
                d = nxt[d]
        return count

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic() - self.boundary_components) // 2

    def is_disk(self) -> bool:
        return self.is_connected() and self.euler_characteristic() == 1 and self.boundary_components == 1

    def is_sphere(self) -> bool:
        return self.is_connected() and self.is_closed and self.euler_characteristic() == 2

    def is_simplicial(self) -> bool:
        """True when no cell is attached to itself and cells meet in single cells."""
        seen_edges = set()
        for e in range(self.edge_count):
            a, b = self.edge_endpoints(e)
            if a == b:
                return False
            key = (min(a, b), max(a, b))
            if key in seen_edges:
                return False
            seen_edges.add(key)
        seen_faces = set()
        for f in self.faces:
            vs = self.face_vertices(f)
            if len(set(vs)) < 3:
                return False
            key = frozenset(vs)
            if key in seen_faces:
                return False
            seen_faces.add(key)
        return True

    def describe(self) -> str:
        lines = [f"faces {self.face_count} edges {self.edge_count} vertices {self.vertex_count} chi {self.euler_characteristic()}"]
        for v, corners in enumerate(self.vertex_corners):
            kind = "boundary" if self.boundary_vertex[v] else "interior"
            cs = " ".join(f"{f}:{c}" for f, c in corners)
            lines.append(f"vertex {v} {kind} corners {cs}")
        for e, darts in enumerate(self.edges):
            ds = " ".join(f"{f}:{i}" for f, i in darts)
            a, b = self.edge_endpoints(e)
            kind = "boundary" if len(darts) == 1 else "interior"
            lines.append(f"edge {e} {kind} darts {ds} ends {a} {b}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return (
            f"TriangulatedSurface(F={self.face_count}, E={self.edge_count}, "
            f"V={self.vertex_count}, chi={self.euler_characteristic()})"
        )


def _component(adj, start, allowed) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen and (allowed is None or y in allowed):
                seen.add(y)
                queue.append(y)
    return seen


def _is_connected_subset(adj, subset) -> bool:
    if not subset:
        return False
    start = next(iter(subset))
    return len(_component(adj, start, subset)) == len(subset)


def build_surface(face_count: int, gluings: Iterable[Sequence]) -> TriangulatedSurface:
    """Build a surface from ``face_count`` faces and a list of dart pairs.

    Each gluing is ``((f, i), (g, j))`` and identifies the two darts with
    reversed orientation.  An optional third element ``reverse=False`` asks for
    an orientation-preserving identification instead; the faces are then
    reoriented (corner slots 1 and 2 swapped, recorded in ``flipped_faces``)
    when a consistent orientation exists, and :class:`NonOrientable` is raised
    otherwise.
    """
    if face_count < 0:
        raise ValueError("face_count must be non-negative")
    raw: list[tuple[Dart, Dart, bool]] = []
    used: set[Dart] = set()
    for g in gluings:
        if len(g) == 2:
            a, b = g
            rev = True
        else:
            a, b, rev = g
        a = (int(a[0]), int(a[1]))
        b = (int(b[0]), int(b[1]))
        for d in (a, b):
            if not (0 <= d[0] < face_count and 0 <= d[1] < 3):
                raise DanglingDart(f"dart {d} out of range")
        if a == b:
            raise DuplicateGluing(f"dart {a} glued to itself")
        for d in (a, b):
            if d in used:
                raise DuplicateGluing(f"dart {d} glued twice")
            used.add(d)
        raw.append((a, b, bool(rev)))

    flip = [False] * face_count
    if any(not rev for _, _, rev in raw):
        flip = _orient(face_count, raw)

    def relabel(d: Dart) -> Dart:
        f, i = d
        return (f, (0, 2, 1)[i]) if flip[f] else d

    partner: dict[Dart, Dart] = {}
    for a, b, _ in raw:
        a2, b2 = relabel(a), relabel(b)
        partner[a2] = b2
        partner[b2] = a2
    surface = TriangulatedSurface(face_count, partner)
    surface.flipped_faces = frozenset(f for f in range(face_count) if flip[f])
    return surface


def _orient(face_count, raw) -> list[bool]:
    adj: list[list[tuple[int, bool]]] = [[] for _ in range(face_count)]
    for (f, _), (g, _), rev in raw:
        # a reversing gluing wants equal orientations on both sides
        adj[f].append((g, not rev))
        adj[g].append((f, not rev))
    flip: list[bool | None] = [None] * face_count
    for s in range(face_count):
        if flip[s] is not None:
            continue
        flip[s] = False
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, differ in adj[x]:
                want = flip[x] ^ differ
                if flip[y] is None:
                    flip[y] = want
                    queue.append(y)
                elif flip[y] != want:
                    raise NonOrientable("gluings admit no consistent orientation")
    return [bool(x) for x in flip]


def surface_from_triangles(triangles: Sequence[Sequence]) -> TriangulatedSurface:
    """Build a surface from vertex-labelled triangles given counterclockwise.

    Directed edge ``u -> v`` of one triangle is glued to ``v -> u`` of another.
    Each directed edge may be used once; otherwise the input is not an
    oriented surface and :class:`NonOrientable` is raised.
    """
    owner: dict[tuple, Dart] = {}
    for f, tri in enumerate(triangles):
        if len(tri) != 3:
            raise ValueError(f"face {f} is not a triangle")
        for i in range(3):
            key = (tri[(i + 1) % 3], tri[(i + 2) % 3])
            if key in owner:
                raise NonOrientable(f"directed edge {key} used twice")
            owner[key] = (f, i)
    partner: dict[Dart, Dart] = {}
    for (u, v), d in owner.items():
        p = owner.get((v, u))
        if p is not None:
            partner[d] = p
    return TriangulatedSurface(len(triangles), partner, vertex_labels=[list(t) for t in triangles])


def euler_characteristic(x) -> int:
    """``V - E + F`` of a surface or closed subcomplex."""
    return x.euler_characteristic()


# -- Poincare dual -------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Dual 1-skeleton: one vertex per face, one edge per interior edge."""

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]  # (face, face, primal edge index)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for f, g, _ in self.edges:
            adj[f].append(g)
            if f != g:
                adj[g].append(f)
        return adj


def poincare_dual(T: TriangulatedSurface) -> DualGraph:
    edges = []
    for e in T.interior_edges:
        (f, _), (g, _) = T.edges[e]
        edges.append((f, g, e))
    return DualGraph(T.face_count, tuple(edges))


# -- face sets and closed subcomplexes ------------------------------------------


@dataclass(frozen=True)
class FaceSet:
    surface: TriangulatedSurface
    faces: frozenset[int]

    @classmethod
    def of(cls, T: TriangulatedSurface, faces: Iterable[int]) -> "FaceSet":
        fs = frozenset(faces)
        if any(not 0 <= f < T.face_count for f in fs):
            raise ValueError("face index out of range")
        return cls(T, fs)

    @cached_property
    def edges(self) -> frozenset[int]:
        """E(F): edges incident to at least one member face."""
        return face_set_edges(self.surface, self.faces)

    @cached_property
    def relative_boundary_edges(self) -> frozenset[int]:
        return relative_boundary_edges(self.surface, self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def complement(self) -> "FaceSet":
        return FaceSet(self.surface, frozenset(self.surface.faces) - self.faces)

    def is_simple(self) -> bool:
        adj = self.surface.dual_adjacency
        comp = frozenset(self.surface.faces) - self.faces
        return bool(comp) and _is_connected_subset(adj, self.faces) and _is_connected_subset(adj, comp)


def face_set_edges(T: TriangulatedSurface, faces: Iterable[int]) -> frozenset[int]:
    de = T.dart_edge
    return frozenset(de[(f, i)] for f in faces for i in range(3))


def relative_boundary_edges(T: TriangulatedSurface, faces: Iterable[int]) -> frozenset[int]:
    """Interior edges of T with a member face on exactly one side."""
    fs = set(faces)
    out = set()
    for e in face_set_edges(T, fs):
        darts = T.edges[e]
        if len(darts) == 2:
            inside = sum(1 for f, _ in darts if f in fs)
            if inside == 1:
                out.add(e)
    return frozenset(out)


@dataclass(frozen=True)
class ClosedSubcomplex:
    """A closed subcomplex: faces, edges and vertices closed under taking faces."""

    surface: TriangulatedSurface
    faces: frozenset[int]
    edges: frozenset[int]
    vertices: frozenset[int]

    @classmethod
    def closure(cls, T: TriangulatedSurface, faces=(), edges=(), vertices=()) -> "ClosedSubcomplex":
        fs = frozenset(faces)
        es = set(edges) | face_set_edges(T, fs)
        vs = set(vertices)
        for e in es:
            vs.update(T.edge_endpoints(e))
        return cls(T, fs, frozenset(es), frozenset(vs))

    def __post_init__(self):
        T = self.surface
        if not face_set_edges(T, self.faces) <= self.edges:
            raise ValueError("subcomplex is not closed: missing face edges")
        for e in self.edges:
            a, b = T.edge_endpoints(e)
            if a not in self.vertices or b not in self.vertices:
                raise ValueError("subcomplex is not closed: missing edge endpoints")

    def is_empty(self) -> bool:
        return not self.vertices

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def endpoint_count(self, e: int) -> int:
        """n_F(e): number of endpoints of ``e`` lying in the subcomplex."""
        a, b = self.surface.edge_endpoints(e)
        return (a in self.vertices) + (b in self.vertices)

    @cached_property
    def frontier_edges(self) -> frozenset[int]:
        """E'(F): edges not in the subcomplex with at least one endpoint in it."""
        T = self.surface
        out = set()
        for v in self.vertices:
            for e in T.vertex_edge_ends[v]:
                if e not in self.edges:
                    out.add(e)
        return frozenset(out)

    def is_whole(self) -> bool:
        return len(self.faces) == self.surface.face_count and len(self.vertices) == self.surface.vertex_count


# -- enumeration ------------------------------------------------------------------


def connected_subsets(adj: Sequence[Sequence[int]]) -> Iterator[frozenset[int]]:
    """Every nonempty connected vertex subset of a graph, each exactly once."""
    n = len(adj)
    for v in range(n):
        ext = {u for u in adj[v] if u > v}
        yield from _grow(adj, v, frozenset((v,)), ext, set())


def _grow(adj, root, sub, ext, excl):
    yield sub
    ext = set(ext)
    excl = set(excl)
    while ext:
        w = min(ext)
        ext.discard(w)
        new = {u for u in adj[w] if u > root and u not in sub and u not in excl and u not in ext and u != w}
        yield from _grow(adj, root, sub | {w}, ext | new, excl)
        excl.add(w)


def enumerate_simple_subcomplexes(T: TriangulatedSurface) -> Iterator[FaceSet]:
    """Face sets F with F and its complement both nonempty and dual-connected."""
    adj = T.dual_adjacency
    everything = frozenset(T.faces)
    for sub in connected_subsets(adj):
        comp = everything - sub
        if comp and _is_connected_subset(adj, comp):
            yield FaceSet(T, sub)


@dataclass(frozen=True)
class Cutset:
    edges: frozenset[int]
    minimal: bool
    coterminous: bool
    closed_dual_curve: bool
    sides: tuple[frozenset[int], frozenset[int]]


def _skeleton_adjacency(T: TriangulatedSurface, removed=frozenset()) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(T.vertex_count)]
    for e in range(T.edge_count):
        if e in removed:
            continue
        a, b = T.edge_endpoints(e)
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def is_cutset(T: TriangulatedSurface, edges: Iterable[int]) -> bool:
    adj = _skeleton_adjacency(T, frozenset(edges))
    return T.vertex_count > 0 and len(_component(adj, 0, None)) < T.vertex_count


def is_coterminous(T: TriangulatedSurface, edges: Iterable[int]) -> bool:
    common: set[int] | None = None
    for e in edges:
        ends = set(T.edge_endpoints(e))
        common = ends if common is None else common & ends
    return bool(common)


def enumerate_minimal_cutsets(T: TriangulatedSurface) -> Iterator[Cutset]:
    """All minimal edge cutsets (bonds) of the 1-skeleton.

    A minimal cutset is exactly the set of edges between the two sides of a
    vertex bipartition whose sides both induce connected subgraphs.
    """
    adj = [sorted(a) for a in _skeleton_adjacency(T)]
    n = T.vertex_count
    everything = frozenset(range(n))
    for side in connected_subsets(adj):
        if 0 not in side:
            continue
        other = everything - side
        if not other or not _is_connected_subset(adj, other):
            continue
        cut = frozenset(
            e for e in range(T.edge_count) if (T.edge_endpoints(e)[0] in side) != (T.edge_endpoints(e)[1] in side)
        )
        bv = {v for v in range(n) if T.boundary_vertex[v]}
        closed_curve = not (side & bv) or not (other & bv)
        yield Cutset(cut, True, is_coterminous(T, cut), closed_curve, (side, other))


def enumerate_minimal_noncoterminous_cutsets(T: TriangulatedSurface, strict: bool = False) -> Iterator[Cutset]:
    """Minimal cutsets whose edges do not all share one vertex.

    With ``strict=True`` a semi-simplicial input raises :class:`NotSimplicial`;
    otherwise bonds of the 1-skeleton multigraph are used as-is.
    """
    if strict and not T.is_simplicial():
        raise NotSimplicial("cutset enumeration requested in strict mode on a semi-simplicial complex")
    for c in enumerate_minimal_cutsets(T):
        if not c.coterminous:
            yield c


def all_face_subsets(T: TriangulatedSurface) -> Iterator[frozenset[int]]:
    """Every subset of faces, including the empty and full sets."""
    n = T.face_count
    for mask in range(1 << n):
        yield frozenset(f for f in range(n) if mask >> f & 1)


def proper_face_subsets(T: TriangulatedSurface) -> Iterator[frozenset[int]]:
    n = T.face_count
    for mask in range(1, (1 << n) - 1):
        yield frozenset(f for f in range(n) if mask >> f & 1)


def edge_subsets(T: TriangulatedSurface, max_size: int) -> Iterator[frozenset[int]]:
    for k in range(1, max_size + 1):
        for c in combinations(range(T.edge_count), k):
            yield frozenset(c)
