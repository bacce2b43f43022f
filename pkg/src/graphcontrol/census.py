"""Isomorph-free enumeration of connected graphs and controllability census.

Canonical form: the adjacency bit string in graph6 order (x01, x02, x12, x03,
...) read as a binary number, minimised over all vertex orderings. Because
column j of that string only involves the first j + 1 vertices of the
ordering, the minimum is found position by position, keeping only the
partial orderings whose prefix is still minimal.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .controllability import automorphisms_fixing, controllable, walk_matrix
from .errors import InvalidArgument, UnsupportedSize
from .graph import Graph, VertexSet, attach_path, cone, degrees, is_connected, is_regular, to_graph6

log = logging.getLogger(__name__)

MAX_CENSUS_N = 8


def canonical_form(X: Graph) -> tuple[int, list[int]]:
    """Return (minimal bit string as int, a vertex ordering attaining it)."""
    n, rows = X.n, X.rows
    if n == 1:
        return 0, [0]
    # state: (ordering so far, placed mask, per-vertex adjacency code to the ordering)
    states = []
    for v in range(n):
        codes = [rows[v] >> u & 1 for u in range(n)]
        states.append(((v,), 1 << v, codes))
    value = 0
    for j in range(1, n):
        best = None
        mins = []
        for order, placed, codes in states:
            m = min(codes[w] for w in range(n) if not placed >> w & 1)
            mins.append(m)
            if best is None or m < best:
                best = m
        value = value << j | best
        nxt = []
        last = j == n - 1
        for (order, placed, codes), m in zip(states, mins):
            if m != best:
                continue
            for w in range(n):
                if placed >> w & 1 or codes[w] != best:
                    continue
                if last:
                    nxt.append((order + (w,), 0, codes))
                    break  # only one unplaced vertex remains
                rw = rows[w]
                nxt.append((order + (w,), placed | 1 << w, [c << 1 | (rw >> u & 1) for u, c in enumerate(codes)]))
        states = nxt
    return value, list(states[0][0])


def canonical_graph(X: Graph) -> Graph:
    _, order = canonical_form(X)
    return X.relabel(order)


def _check_n(n: int, allow_large: bool):
    if n < 1:
        raise InvalidArgument("n must be positive")
    if n > MAX_CENSUS_N and not allow_large:
        raise UnsupportedSize(f"enumeration above n={MAX_CENSUS_N} is disabled (pass allow_large to override)")


def _children(parent: Graph) -> dict[int, Graph]:
    """Canonical children of one parent: add vertex k joined to each nonempty subset."""
    k = parent.n
    out: dict[int, Graph] = {}
    base_rows = list(parent.rows)
    for mask in range(1, 1 << k):
        rows = base_rows[:]
        for v in range(k):
            if mask >> v & 1:
                rows[v] |= 1 << k
        rows.append(mask)
        child = Graph(k + 1, tuple(rows))
        code, order = canonical_form(child)
        if code not in out:
            out[code] = child.relabel(order)
    return out


def _children_batch(parents: list[Graph]) -> dict[int, Graph]:
    merged: dict[int, Graph] = {}
    for p in parents:
        for code, g in _children(p).items():
            merged.setdefault(code, g)
    return merged


def enumerate_connected(n: int, allow_large: bool = False, jobs: int = 1) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs on n vertices.

    Every connected graph has a vertex whose removal leaves it connected, so
    growing connected graphs by one vertex over all nonempty attachment sets
    reaches every class. Output is ordered by canonical code.
    """
    _check_n(n, allow_large)
    level = {0: Graph(1, (0,))}
    for k in range(1, n):
        parents = [level[c] for c in sorted(level)]
        if jobs > 1 and len(parents) > jobs:
            chunks = [parents[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_children_batch, chunks))
            level = {}
            for part in results:
                for code, g in part.items():
                    level.setdefault(code, g)
        else:
            level = _children_batch(parents)
        log.debug("n=%d: %d connected graphs", k + 1, len(level))
    for code in sorted(level):
        yield level[code]


@dataclass
class CensusResult:
    n: int
    mode: str
    connected_total: int
    controllable_count: int
    degree_sequence_multiset: dict[tuple[int, ...], int]
    elapsed: float
    controllable_graphs: list[Graph] = field(default_factory=list)
    regular_rank_one: int = 0
    regular_total: int = 0
    # graphs whose automorphism group is trivial but are not controllable,
    # i.e. evidence that a trivial group alone does not force controllability
    trivial_aut_uncontrollable: int = 0
    # every-singleton mode only: graph6 -> controllable vertices
    singleton_vertices: dict[str, list[int]] | None = None

    @property
    def ratio(self) -> float:
        return self.controllable_count / self.connected_total if self.connected_total else 0.0

    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "mode": self.mode,
            "connected": self.connected_total,
            "controllable": self.controllable_count,
            "degree_sequences": {
                ",".join(map(str, seq)): count for seq, count in sorted(self.degree_sequence_multiset.items())
            },
            "controllable_ratio": self.ratio,
            "regular_graphs": self.regular_total,
            "regular_rank_one": self.regular_rank_one,
            "trivial_automorphism_uncontrollable": self.trivial_aut_uncontrollable,
            "elapsed_seconds": round(self.elapsed, 3),
        }
        if self.n == 1:
            doc["note"] = "n=1 is degenerate (walk matrix (1)) and is excluded from the controllable count"
        if self.singleton_vertices is not None:
            pairs = sum(len(v) for v in self.singleton_vertices.values())
            doc["beyond_paper"] = {
                "note": "per-vertex controllability statistics extend the all-ones census and have no reference values",
                "controllable_pairs": pairs,
                "graphs_with_controllable_vertex": sum(1 for v in self.singleton_vertices.values() if v),
                "vertices": dict(sorted(self.singleton_vertices.items())),
            }
        return doc


def census(
    n: int,
    subset_mode: str = "all-ones",
    graphs: Iterable[Graph] | None = None,
    allow_large: bool = False,
    jobs: int = 1,
) -> CensusResult:
    """Count controllable connected graphs on n vertices.

    ``graphs`` replaces the built-in generator (e.g. graphs read from a graph6
    file); they must all have n vertices, and disconnected ones are skipped.
    """
    if subset_mode not in ("all-ones", "every-singleton"):
        raise InvalidArgument(f"unknown subset mode {subset_mode!r}")
    start = time.perf_counter()
    if graphs is None:
        graphs = enumerate_connected(n, allow_large=allow_large, jobs=jobs)
    total = 0
    found: list[Graph] = []
    seqs: Counter = Counter()
    regular = regular_rank_one = trivial_uncontrollable = 0
    singles: dict[str, list[int]] | None = {} if subset_mode == "every-singleton" else None
    for X in graphs:
        if X.n != n:
            raise InvalidArgument(f"graph {to_graph6(X)} has {X.n} vertices, expected {n}")
        if not is_connected(X):
            log.warning("skipping disconnected graph %s", to_graph6(X))
            continue
        total += 1
        W = walk_matrix(X, VertexSet.all(n))
        # the single vertex has walk matrix (1); it is a degenerate case, not counted
        if W.invertible and n >= 2:
            found.append(X)
            seqs[degrees(X)] += 1
        elif n <= 10 and automorphisms_fixing(X, VertexSet(n, 0)) == 1:
            trivial_uncontrollable += 1
        if is_regular(X):
            regular += 1
            regular_rank_one += W.rank == 1
        if singles is not None:
            singles[to_graph6(X)] = [v for v in range(n) if controllable(X, VertexSet.of(n, [v]))]
    return CensusResult(
        n=n,
        mode=subset_mode,
        connected_total=total,
        controllable_count=len(found),
        degree_sequence_multiset=dict(seqs),
        elapsed=time.perf_counter() - start,
        controllable_graphs=found,
        regular_rank_one=regular_rank_one,
        regular_total=regular,
        trivial_aut_uncontrollable=trivial_uncontrollable,
        singleton_vertices=singles,
    )


@dataclass
class FamilyLevel:
    graph: Graph
    subset: VertexSet
    controllable: bool
    determinant: int


@dataclass
class FamilyReport:
    construction: str
    levels: list[FamilyLevel]

    @property
    def first_failure(self) -> int | None:
        return next((i for i, lvl in enumerate(self.levels) if not lvl.controllable), None)

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "first_failure": self.first_failure,
            "levels": [
                {
                    "graph6": to_graph6(lvl.graph),
                    "subset": lvl.subset.members,
                    "controllable": lvl.controllable,
                    "det": str(lvl.determinant),
                }
                for lvl in self.levels
            ],
        }


def family_check(base: Graph, S: VertexSet, construction: str = "cone", depth: int = 1, m: int = 1) -> FamilyReport:
    """Iterate a construction from a controllable pair and test every level.

    ``cone``: the next pair is (cone of X at S, {new vertex 0}).
    ``attach_path``: Y = attach_path(X, S, m) is tested with the all-ones
    vector, and the next pair is (Y, V(Y)).
    """
    if depth > 8:
        raise UnsupportedSize("family depth is limited to 8")
    if construction not in ("cone", "attach_path"):
        raise InvalidArgument(f"unknown construction {construction!r}")
    if not controllable(base, S):
        raise InvalidArgument("family_check requires a controllable base pair")
    levels = []
    X, T = base, S
    for _ in range(depth):
        if construction == "cone":
            X = cone(X, T)
            T = VertexSet.of(X.n, [0])
        else:
            X = attach_path(X, T, m)
            T = VertexSet.all(X.n)
        W = walk_matrix(X, T)
        levels.append(FamilyLevel(X, T, W.invertible, W.determinant))
    label = "cone" if construction == "cone" else f"attach_path({m})"
    return FamilyReport(label, levels)
