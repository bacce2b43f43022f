"""Simple undirected graphs on vertices 0..n-1, constructions, and graph6 I/O.

Adjacency is stored as one bitmask per vertex: bit ``j`` of ``rows[i]`` is set
iff ``{i, j}`` is an edge.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import Graph6Error, InvalidArgument

MAX_VERTICES = 32


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise InvalidArgument(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.rows) != self.n:
            raise InvalidArgument("one adjacency row per vertex required")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise InvalidArgument(f"row {i} references a vertex >= n")
            if row >> i & 1:
                raise InvalidArgument(f"loop at vertex {i}")
            for j in _bits(row):
                if not self.rows[j] >> i & 1:
                    raise InvalidArgument(f"asymmetric adjacency at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise InvalidArgument(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidArgument(f"edge ({i}, {j}) out of range for n={n}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, matrix) -> Graph:
        n = len(matrix)
        rows = []
        for i in range(n):
            if len(matrix[i]) != n:
                raise InvalidArgument("adjacency matrix must be square")
            rows.append(sum(1 << j for j in range(n) if matrix[i][j]))
        return cls(n, tuple(rows))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i < j]

    def adjacency(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def relabel(self, order: list[int]) -> Graph:
        """Graph whose vertex ``k`` is this graph's vertex ``order[k]``."""
        pos = {v: k for k, v in enumerate(order)}
        return Graph.from_edges(self.n, [(pos[i], pos[j]) for i, j in self.edges()])

    def __str__(self):
        return f"Graph(n={self.n}, graph6={to_graph6(self)!r})"


@dataclass(frozen=True)
class VertexSet:
    """A subset of V(X) stored as a bitmask; its indicator is the vector z."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise InvalidArgument(f"subset mask {self.mask:#x} not within 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> VertexSet:
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise InvalidArgument(f"vertex {v} out of range for n={n}")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def all(cls, n: int) -> VertexSet:
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> list[int]:
        return list(_bits(self.mask))

    def indicator(self) -> list[int]:
        return [self.mask >> i & 1 for i in range(self.n)]

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, v):
        return bool(self.mask >> v & 1)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_subset(X: Graph, S: VertexSet):
    if S.n != X.n:
        raise InvalidArgument(f"subset is over {S.n} vertices but graph has {X.n}")


# -- constructions -----------------------------------------------------------


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidArgument("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidArgument("cycle needs at least three vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def cone(X: Graph, S: VertexSet) -> Graph:
    """Add a vertex adjacent to exactly S. The new vertex is 0; old ``i`` becomes ``i + 1``."""
    _check_subset(X, S)
    edges = [(i + 1, j + 1) for i, j in X.edges()]
    edges += [(0, v + 1) for v in S.members]
    return Graph.from_edges(X.n + 1, edges)


def delete_vertex(X: Graph, v: int) -> Graph:
    if X.n < 2:
        raise InvalidArgument("cannot delete the only vertex")
    if not 0 <= v < X.n:
        raise InvalidArgument(f"vertex {v} out of range for n={X.n}")
    shift = lambda u: u - (u > v)  # noqa: E731
    edges = [(shift(i), shift(j)) for i, j in X.edges() if v not in (i, j)]
    return Graph.from_edges(X.n - 1, edges)


def attach_path(X: Graph, S: VertexSet, m: int) -> Graph:
    """Disjoint union with a path on ``m`` new vertices (n..n+m-1), whose
    highest-index end is joined to every vertex of S."""
    _check_subset(X, S)
    if m < 1:
        raise InvalidArgument("attached path needs at least one vertex")
    n = X.n
    edges = X.edges()
    edges += [(n + k, n + k + 1) for k in range(m - 1)]
    edges += [(v, n + m - 1) for v in S.members]
    return Graph.from_edges(n + m, edges)


# -- basic invariants --------------------------------------------------------


def degrees(X: Graph) -> tuple[int, ...]:
    return tuple(sorted(X.degree(v) for v in range(X.n)))


def is_regular(X: Graph) -> bool:
    return len(set(degrees(X))) == 1


def is_connected(X: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= X.rows[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << X.n) - 1


# -- graph6 ------------------------------------------------------------------


def to_graph6(X: Graph) -> str:
    bits = [X.rows[i] >> j & 1 for j in range(1, X.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(X.n + 63)]
    for k in range(0, len(bits), 6):
        group = 0
        for b in bits[k : k + 6]:
            group = group << 1 | b
        out.append(chr(group + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    data = text[:-1] if text.endswith("\n") else text
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside the printable range 63..126", k)
    n = ord(data[0]) - 63
    if n == 63:
        raise Graph6Error("extended length form (n > 62) is not supported", 0)
    if n == 0:
        raise Graph6Error("graph with zero vertices is not representable", 0)
    if n > MAX_VERTICES:
        raise Graph6Error(f"n={n} exceeds the supported maximum {MAX_VERTICES}", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) < 1 + nbytes:
        raise Graph6Error(f"expected {nbytes} edge bytes for n={n}, got {len(data) - 1}", len(data))
    if len(data) > 1 + nbytes:
        raise Graph6Error("trailing garbage after graph6 body", 1 + nbytes)
    bits = []
    for ch in data[1:]:
        group = ord(ch) - 63
        bits.extend(group >> (5 - s) & 1 for s in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", len(data) - 1)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
