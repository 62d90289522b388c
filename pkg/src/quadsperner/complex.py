"""Abstract cubical complexes: piles of cubes, carved piles and glued quads.

A top cell of a d-dimensional complex is a tuple of 2^d vertex ids indexed by
the little-endian corners of C^d.  Faces are derived from the top cells and
stored once, keyed by their vertex set.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

MAX_DIM = 8


class ComplexError(ValueError):
    """Raised when input does not describe a valid cubical pseudomanifold."""


@dataclass(frozen=True)
class Cell:
    """A k-cell with vertex slots indexed by the corners of C^k.

    ``parent`` is the top cell the slot order was read from, ``anchor`` the
    parent slot of this cell's corner 0 and ``axes`` the parent axes the cell
    spans (in increasing order).
    """

    dim: int
    slots: tuple[int, ...]
    parent: int | None = None
    anchor: int = 0
    axes: tuple[int, ...] = ()

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.slots)


@dataclass(frozen=True)
class BoundaryFacet:
    """A (d-1)-cell with a single adjacent top cell.

    ``cell`` carries the slot order induced by the parent; ``sign`` is the
    induced boundary orientation (outward normal first) or None when the
    complex has no orientation.
    """

    cell: Cell
    parent: int
    axis: int
    value: int
    sign: int | None


@dataclass(frozen=True)
class BoundaryComponent:
    facets: tuple[BoundaryFacet, ...]
    cycle: tuple[int, ...] | None = None
    oriented: bool = False


def _spread(t: int, axes: Sequence[int]) -> int:
    out = 0
    for m, axis in enumerate(axes):
        if (t >> m) & 1:
            out |= 1 << axis
    return out


def face_slots(top: Sequence[int], d: int, axes: Sequence[int], anchor: int) -> tuple[int, ...]:
    """Slots of the face of ``top`` spanned by ``axes`` with fixed bits ``anchor``."""
    return tuple(top[anchor | _spread(t, axes)] for t in range(1 << len(axes)))


def induced_sign(axis: int, value: int) -> int:
    """Orientation the facet ``x_axis = value`` inherits from the standard cube.

    Outward normal first: the facet with normal +e_i (0-based i) gets
    (-1)^i, the opposite facet the negation.
    """
    sign = -1 if axis & 1 else 1
    return sign if value else -sign


def relative_orientation(src: Sequence[int], dst: Sequence[int]) -> int:
    """Sign of the cube symmetry carrying slot order ``dst`` onto ``src``.

    Both must list the same vertices as slot orders of one k-cube.
    """
    k = len(src).bit_length() - 1
    pos = {v: i for i, v in enumerate(dst)}
    flips = pos[src[0]]
    perm = []
    for j in range(k):
        q = pos[src[1 << j]] ^ flips
        if q == 0 or q & (q - 1):
            raise ComplexError(f"slot orders {tuple(src)} and {tuple(dst)} are not the same cube")
        perm.append(q.bit_length() - 1)
    sign = -1 if bin(flips).count("1") & 1 else 1
    seen = [False] * k
    for start in range(k):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class CubicalComplex:
    """Validated cubical complex of dimension ``dim``; treat as immutable.

    Parameters mirror the JSON document: ``n_vertices`` vertices with dense
    ids, ``top_cells`` as slot tuples, optional ``orientation`` signs, optional
    integer ``coords`` for rendering and optional ``pile`` extents when the
    complex is a pile of cubes.
    """

    def __init__(
        self,
        dim: int,
        n_vertices: int,
        top_cells: Iterable[Sequence[int]],
        orientation: Sequence[int] | None = None,
        coords: Sequence[Sequence[int]] | None = None,
        pile: Sequence[int] | None = None,
        max_dim: int = MAX_DIM,
    ):
        if not 1 <= dim <= max_dim:
            raise ComplexError(f"dimension {dim} outside 1..{max_dim}")
        self.dim = dim
        self.n_vertices = int(n_vertices)
        self.top_cells = tuple(tuple(int(v) for v in cell) for cell in top_cells)
        self.orientation = None if orientation is None else tuple(int(s) for s in orientation)
        self.coords = None if coords is None else tuple(tuple(int(c) for c in p) for p in coords)
        self.pile = None if pile is None else tuple(int(n) for n in pile)
        self._validate_cells()
        self._derive_faces()
        self._check_intersections()
        if self.orientation is not None:
            self._check_orientation()
        self._collect_boundary()
        if self.dim == 2:
            self._check_vertex_links()

    # -- construction ------------------------------------------------------

    def _validate_cells(self):
        size = 1 << self.dim
        if not self.top_cells:
            raise ComplexError("complex has no top cells")
        used = set()
        for idx, cell in enumerate(self.top_cells):
            if len(cell) != size:
                raise ComplexError(f"top cell {idx} has {len(cell)} slots, expected {size}")
            if len(set(cell)) != size:
                raise ComplexError(f"top cell {idx} repeats a vertex: {cell}")
            for v in cell:
                if not 0 <= v < self.n_vertices:
                    raise ComplexError(f"top cell {idx} uses vertex {v} outside 0..{self.n_vertices - 1}")
            used.update(cell)
        dangling = sorted(set(range(self.n_vertices)) - used)
        if dangling:
            raise ComplexError(f"dangling vertices not in any top cell: {dangling}")
        if self.orientation is not None:
            if len(self.orientation) != len(self.top_cells):
                raise ComplexError("orientation length differs from number of top cells")
            if any(s not in (1, -1) for s in self.orientation):
                raise ComplexError("orientation signs must be +1 or -1")
        if self.coords is not None and len(self.coords) != self.n_vertices:
            raise ComplexError("coords length differs from vertex count")

    def _derive_faces(self):
        d = self.dim
        self._faces: dict[frozenset, Cell] = {}
        self._by_dim: list[list[Cell]] = [[] for _ in range(d + 1)]
        self.incidence: dict[frozenset, list[tuple[int, int, int]]] = defaultdict(list)
        self._cell_faces: list[set[frozenset]] = []
        for idx, top in enumerate(self.top_cells):
            own = set()
            for k in range(d + 1):
                for axes in combinations(range(d), k):
                    fixed = [a for a in range(d) if a not in axes]
                    for values in product((0, 1), repeat=len(fixed)):
                        anchor = _spread_fixed(fixed, values)
                        slots = face_slots(top, d, axes, anchor)
                        key = frozenset(slots)
                        own.add(key)
                        if key not in self._faces:
                            cell = Cell(k, slots, idx, anchor, axes)
                            self._faces[key] = cell
                            self._by_dim[k].append(cell)
                        if k == d - 1:
                            axis = fixed[0]
                            self.incidence[key].append((idx, axis, values[0]))
            self._cell_faces.append(own)
        tops = [frozenset(t) for t in self.top_cells]
        if len(set(tops)) != len(tops):
            raise ComplexError("two top cells share the same vertex set")
        for key, adj in self.incidence.items():
            if len(adj) > 2:
                cells = sorted(a[0] for a in adj)
                raise ComplexError(
                    f"({d - 1})-cell {sorted(key)} is shared by {len(adj)} top cells {cells}"
                )
        self.incidence = dict(self.incidence)

    def _check_intersections(self):
        by_vertex = defaultdict(list)
        for idx, top in enumerate(self.top_cells):
            for v in top:
                by_vertex[v].append(idx)
        seen = set()
        for cells in by_vertex.values():
            for a, b in combinations(cells, 2):
                if (a, b) in seen:
                    continue
                seen.add((a, b))
                shared = frozenset(self.top_cells[a]) & frozenset(self.top_cells[b])
                if shared not in self._cell_faces[a] or shared not in self._cell_faces[b]:
                    raise ComplexError(
                        f"top cells {a} and {b} meet in {sorted(shared)}, which is not a common face"
                    )

    def _facet_slots(self, idx: int, axis: int, value: int) -> tuple[int, ...]:
        axes = tuple(a for a in range(self.dim) if a != axis)
        return face_slots(self.top_cells[idx], self.dim, axes, value << axis)

    def _check_orientation(self):
        for key, adj in self.incidence.items():
            if len(adj) != 2:
                continue
            (a, ia, va), (b, ib, vb) = adj
            rel = relative_orientation(self._facet_slots(a, ia, va), self._facet_slots(b, ib, vb))
            lhs = self.orientation[a] * induced_sign(ia, va)
            rhs = self.orientation[b] * induced_sign(ib, vb) * rel
            if lhs != -rhs:
                raise ComplexError(
                    f"top cells {a} and {b} induce the same orientation on shared face {sorted(key)}"
                )

    def _collect_boundary(self):
        facets = []
        for key, adj in self.incidence.items():
            if len(adj) != 1:
                continue
            idx, axis, value = adj[0]
            axes = tuple(a for a in range(self.dim) if a != axis)
            cell = Cell(self.dim - 1, self._facet_slots(idx, axis, value), idx, value << axis, axes)
            sign = None
            if self.orientation is not None:
                sign = self.orientation[idx] * induced_sign(axis, value)
            facets.append(BoundaryFacet(cell, idx, axis, value, sign))
        self.boundary_facets: tuple[BoundaryFacet, ...] = tuple(facets)

    def _check_vertex_links(self):
        degree = defaultdict(int)
        for facet in self.boundary_facets:
            for v in facet.cell.slots:
                degree[v] += 1
        pinched = sorted(v for v, n in degree.items() if n != 2)
        if pinched:
            raise ComplexError(f"non-manifold pinch at boundary vertices {pinched}")

    # -- queries -----------------------------------------------------------

    @property
    def orientable(self) -> bool:
        return self.orientation is not None

    def cells(self, dim: int) -> list[Cell]:
        return list(self._by_dim[dim])

    def all_cells(self) -> list[Cell]:
        return [c for cells in self._by_dim for c in cells]

    def cell(self, vertices: Iterable[int]) -> Cell:
        key = frozenset(vertices)
        try:
            return self._faces[key]
        except KeyError:
            raise KeyError(f"no cell with vertex set {sorted(key)}") from None

    def has_cell(self, vertices: Iterable[int]) -> bool:
        return frozenset(vertices) in self._faces

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(cells) for cells in self._by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.boundary_facets for v in f.cell.slots)

    def is_boundary_cell(self, cell: Cell) -> bool:
        """True when ``cell`` is a face of some boundary (d-1)-cell."""
        verts = cell.vertices
        return any(verts <= f.cell.vertices for f in self.boundary_facets)

    def vertex_at(self, point: Sequence[int]) -> int:
        if self.coords is None:
            raise ComplexError("complex carries no coordinates")
        if not hasattr(self, "_coord_index"):
            self._coord_index = {p: i for i, p in enumerate(self.coords)}
        return self._coord_index[tuple(point)]

    def corner_tags(self) -> dict[int, int]:
        """For a pile: vertex id -> integer alias of the C^d corner it sits at."""
        if self.pile is None or self.coords is None:
            raise ComplexError("complex is not a pile")
        tags = {}
        for v, p in enumerate(self.coords):
            if all(x in (0, n) for x, n in zip(p, self.pile)):
                tags[v] = sum(1 << i for i, (x, n) in enumerate(zip(p, self.pile)) if x == n)
        return tags

    def boundary(self) -> list[BoundaryComponent]:
        return boundary(self)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        doc = {
            "dim": self.dim,
            "vertices": self.n_vertices,
            "top_cells": [list(c) for c in self.top_cells],
            "orientation": None if self.orientation is None else list(self.orientation),
        }
        if self.coords is not None:
            doc["coords"] = [list(p) for p in self.coords]
        if self.pile is not None:
            doc["pile"] = list(self.pile)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "CubicalComplex":
        try:
            return cls(
                dim=doc["dim"],
                n_vertices=doc["vertices"],
                top_cells=doc["top_cells"],
                orientation=doc.get("orientation"),
                coords=doc.get("coords"),
                pile=doc.get("pile"),
            )
        except (KeyError, TypeError) as exc:
            raise ComplexError(f"malformed complex document: {exc!r}") from None

    def __eq__(self, other):
        if not isinstance(other, CubicalComplex):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.dim, self.n_vertices, self.top_cells, self.orientation))

    def __repr__(self):
        return f"CubicalComplex(dim={self.dim}, f_vector={self.f_vector()}, orientable={self.orientable})"


def _spread_fixed(fixed: Sequence[int], values: Sequence[int]) -> int:
    return sum(v << a for a, v in zip(fixed, values))


def build_pile(dims: Sequence[int], max_dim: int = MAX_DIM) -> CubicalComplex:
    """The pile of unit cubes filling the box [0, n_1] x ... x [0, n_d]."""
    dims = tuple(int(n) for n in dims)
    d = len(dims)
    if not 1 <= d <= max_dim:
        raise ComplexError(f"pile dimension {d} outside 1..{max_dim}")
    if any(n < 1 for n in dims):
        raise ComplexError(f"pile extents must be positive, got {dims}")
    strides = [1] * d
    for i in range(1, d):
        strides[i] = strides[i - 1] * (dims[i - 1] + 1)
    n_vertices = strides[-1] * (dims[-1] + 1)
    coords = [None] * n_vertices
    for point in product(*(range(n + 1) for n in reversed(dims))):
        point = point[::-1]
        coords[sum(x * s for x, s in zip(point, strides))] = point
    tops = []
    for base in product(*(range(n) for n in reversed(dims))):
        base = base[::-1]
        origin = sum(x * s for x, s in zip(base, strides))
        tops.append(tuple(origin + sum(strides[i] for i in range(d) if (w >> i) & 1)
                          for w in range(1 << d)))
    return CubicalComplex(d, n_vertices, tops, [1] * len(tops), coords, dims, max_dim=max_dim)


def carve(complex_: CubicalComplex, removed: Iterable[int], drop_orphans: bool = False) -> CubicalComplex:
    """Subcomplex on the top cells not listed in ``removed``.

    With ``drop_orphans`` vertices left outside every remaining top cell are
    discarded and the rest renumbered in increasing order; otherwise such
    vertices are an error.
    """
    removed = set(int(i) for i in removed)
    bad = sorted(i for i in removed if not 0 <= i < len(complex_.top_cells))
    if bad:
        raise ComplexError(f"top cell indices out of range: {bad}")
    if not removed:
        return complex_
    keep = [i for i in range(len(complex_.top_cells)) if i not in removed]
    if not keep:
        raise ComplexError("carving removes every top cell; result is empty")
    tops = [complex_.top_cells[i] for i in keep]
    orientation = None if complex_.orientation is None else [complex_.orientation[i] for i in keep]
    coords = complex_.coords
    n_vertices = complex_.n_vertices
    used = sorted({v for t in tops for v in t})
    if len(used) != n_vertices:
        if not drop_orphans:
            orphans = sorted(set(range(n_vertices)) - set(used))
            raise ComplexError(f"carving leaves dangling vertices {orphans}")
        remap = {old: new for new, old in enumerate(used)}
        tops = [tuple(remap[v] for v in t) for t in tops]
        if coords is not None:
            coords = [coords[old] for old in used]
        n_vertices = len(used)
    return CubicalComplex(complex_.dim, n_vertices, tops, orientation, coords, None)


def orient(dim: int, top_cells: Sequence[Sequence[int]]) -> list[int] | None:
    """Propagate a consistent orientation across shared facets, or None."""
    d = dim
    incidence = defaultdict(list)
    for idx, top in enumerate(top_cells):
        for axis in range(d):
            axes = tuple(a for a in range(d) if a != axis)
            for value in (0, 1):
                slots = face_slots(top, d, axes, value << axis)
                incidence[frozenset(slots)].append((idx, axis, value, slots))
    neighbours = defaultdict(list)
    for adj in incidence.values():
        if len(adj) == 2:
            (a, ia, va, sa), (b, ib, vb, sb) = adj
            rel = relative_orientation(sa, sb)
            factor = -induced_sign(ia, va) * induced_sign(ib, vb) * rel
            neighbours[a].append((b, factor))
            neighbours[b].append((a, factor))
    signs = [0] * len(top_cells)
    for start in range(len(top_cells)):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b, factor in neighbours[a]:
                want = signs[a] * factor
                if signs[b] == 0:
                    signs[b] = want
                    queue.append(b)
                elif signs[b] != want:
                    return None
    return signs


def build_2complex(quads: Sequence[Sequence[int]], coords=None) -> CubicalComplex:
    """2-complex from quads listed in slot order (corner 00, 10, 11, 01).

    An orientation is propagated when one exists; otherwise the complex is
    returned without one.
    """
    tops = []
    for idx, quad in enumerate(quads):
        if len(quad) != 4:
            raise ComplexError(f"quad {idx} has {len(quad)} vertices")
        if len(set(quad)) != 4:
            raise ComplexError(f"quad {idx} repeats a vertex: {tuple(quad)}")
        v00, v10, v11, v01 = quad
        tops.append((v00, v10, v01, v11))
    edges = defaultdict(list)
    for idx, (a, b, c, dd) in enumerate(quads):
        for e in ((a, b), (b, c), (c, dd), (dd, a)):
            edges[frozenset(e)].append(idx)
    for e, users in edges.items():
        if len(users) > 2:
            raise ComplexError(f"edge {sorted(e)} is shared by {len(users)} quads {users}")
    n_vertices = max(v for q in quads for v in q) + 1
    return CubicalComplex(2, n_vertices, tops, orient(2, tops), coords)


def boundary(complex_: CubicalComplex) -> list[BoundaryComponent]:
    """Connected boundary components, with vertex cycles when d = 2.

    Oriented 2-complexes get cycles in the induced direction (counterclockwise
    around the outer contour of a pile); unoriented ones get some cyclic order.
    """
    facets = complex_.boundary_facets
    if not facets:
        return []
    d = complex_.dim
    parent = list(range(len(facets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ridge_owner = {}
    for i, f in enumerate(facets):
        if d == 1:
            continue
        top = f.cell.slots
        for axis in range(d - 1):
            axes = tuple(a for a in range(d - 1) if a != axis)
            for value in (0, 1):
                key = frozenset(face_slots(top, d - 1, axes, value << axis))
                j = ridge_owner.setdefault(key, i)
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = defaultdict(list)
    for i in range(len(facets)):
        groups[find(i)].append(i)
    comps = []
    for members in sorted(groups.values(), key=min):
        comp = tuple(facets[i] for i in members)
        cycle = _cycle(comp, complex_.orientable) if d == 2 else None
        comps.append(BoundaryComponent(comp, cycle, complex_.orientable))
    return comps


def _cycle(comp: Sequence[BoundaryFacet], oriented: bool) -> tuple[int, ...]:
    if oriented:
        succ = {}
        for f in comp:
            a, b = f.cell.slots
            if f.sign < 0:
                a, b = b, a
            if a in succ:
                raise ComplexError(f"boundary vertex {a} has two outgoing boundary edges")
            succ[a] = b
        start = min(succ)
        cycle = [start]
        v = succ[start]
        while v != start:
            cycle.append(v)
            v = succ[v]
        if len(cycle) != len(comp):
            raise ComplexError("boundary component is not a single cycle")
        return tuple(cycle)
    adj = defaultdict(list)
    for f in comp:
        a, b = f.cell.slots
        adj[a].append(b)
        adj[b].append(a)
    start = min(adj)
    cycle = [start]
    prev, v = start, min(adj[start])
    while v != start:
        cycle.append(v)
        a, b = adj[v]
        prev, v = v, (b if a == prev else a)
    return tuple(cycle)
