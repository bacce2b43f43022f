"""Controllability of (graph, vertex subset) pairs.

A pair (X, S) is controllable when the walk matrix (z | Az | ... | A^(n-1) z),
with z the indicator of S, is invertible. For a single vertex v this is
equivalent to coprimality of the characteristic polynomials of X and X minus v;
both routes are computed and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exact
from .errors import InvalidArgument, UnsupportedSize
from .graph import Graph, VertexSet, cone, delete_vertex, to_graph6

AUTOMORPHISM_LIMIT = 10


@dataclass(frozen=True)
class WalkMatrix:
    graph: Graph
    subset: VertexSet
    matrix: exact.IntMatrix  # row i, column j holds (A^j z)_i
    determinant: int
    rank: int

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.matrix]

    @property
    def invertible(self) -> bool:
        return self.determinant != 0


@dataclass(frozen=True)
class ControllabilityReport:
    graph: Graph
    subset: VertexSet
    controllable: bool
    det_certificate: int
    rank: int
    spectral_rank: int | None = None
    gcd_degree: int | None = None
    fixing_automorphism_count: int | None = None

    def to_json(self) -> dict:
        return {
            "graph6": to_graph6(self.graph),
            "subset": self.subset.members,
            "controllable": self.controllable,
            "det": str(self.det_certificate),
            "rank": self.rank,
            "gcd_degree": self.gcd_degree,
            "fixing_automorphisms": self.fixing_automorphism_count,
        }


def _check(X: Graph, S: VertexSet):
    if S.n != X.n:
        raise InvalidArgument(f"subset is over {S.n} vertices but graph has {X.n}")


def walk_matrix(X: Graph, S: VertexSet) -> WalkMatrix:
    _check(X, S)
    columns = exact.mat_apply_power(X.adjacency(), S.indicator(), X.n)
    matrix = exact.transpose(columns)
    return WalkMatrix(X, S, matrix, exact.det_bareiss(matrix), exact.rank(matrix))


def spectral_criterion(X: Graph, v: int) -> tuple[int, bool]:
    """Degree of gcd(phi(X, t), phi(X minus v, t)) and whether it is 0."""
    if X.n < 2:
        raise InvalidArgument("spectral criterion needs at least two vertices")
    phi = exact.char_poly(X.adjacency())
    phi_del = exact.char_poly(delete_vertex(X, v).adjacency())
    d = exact.poly_gcd(phi, phi_del).degree
    return d, d == 0


def is_controllable(X: Graph, S: VertexSet) -> ControllabilityReport:
    W = walk_matrix(X, S)
    gcd_degree = spectral_rank = None
    if len(S) == 1 and X.n >= 2:
        (v,) = S.members
        gcd_degree, coprime = spectral_criterion(X, v)
        spectral_rank = X.n - gcd_degree
        if coprime != W.invertible or spectral_rank != W.rank:
            raise AssertionError(
                f"walk-matrix and spectral criteria disagree on {to_graph6(X)} vertex {v}: "
                f"det={W.determinant}, rank={W.rank}, gcd degree={gcd_degree}"
            )
    autos = automorphisms_fixing(X, S) if X.n <= AUTOMORPHISM_LIMIT else None
    return ControllabilityReport(
        graph=X,
        subset=S,
        controllable=W.invertible,
        det_certificate=W.determinant,
        rank=W.rank,
        spectral_rank=spectral_rank,
        gcd_degree=gcd_degree,
        fixing_automorphism_count=autos,
    )


def controllable(X: Graph, S: VertexSet) -> bool:
    """Determinant test only, without the extra report fields."""
    return walk_matrix(X, S).invertible


def cone_identity_holds(X: Graph, v: int) -> bool:
    """phi(cone, t) == t * phi(X, t) - phi(X minus v, t), exactly."""
    coned = cone(X, VertexSet.of(X.n, [v]))
    phi_cone = exact.char_poly(coned.adjacency())
    phi = exact.char_poly(X.adjacency())
    # deleting the only vertex leaves the empty graph, whose char-poly is 1
    phi_del = exact.char_poly(delete_vertex(X, v).adjacency()) if X.n > 1 else exact.IntPoly((1,))
    return phi_cone == phi.shift(1) - phi_del


def cone_theorem_check(X: Graph, v: int) -> bool:
    """True iff (X, {v}) controllable implies (cone of X at v, {0}) controllable.

    The characteristic polynomial identity for the cone is verified first and
    a failure there raises, since it would invalidate the whole argument.
    """
    if not cone_identity_holds(X, v):
        raise AssertionError(f"cone char-poly identity fails for {to_graph6(X)} at vertex {v}")
    if not controllable(X, VertexSet.of(X.n, [v])):
        return True
    coned = cone(X, VertexSet.of(X.n, [v]))
    return controllable(coned, VertexSet.of(coned.n, [0]))


def automorphisms_fixing(X: Graph, S: VertexSet) -> int:
    """Number of automorphisms P of X with Pz = z, by backtracking over S_n."""
    _check(X, S)
    n = X.n
    if n > AUTOMORPHISM_LIMIT:
        raise UnsupportedSize(f"brute-force automorphism search is limited to n <= {AUTOMORPHISM_LIMIT}")
    deg = [X.degree(v) for v in range(n)]
    # a vertex may only map to one with equal degree and equal membership in S
    candidates = [
        [w for w in range(n) if deg[w] == deg[v] and (w in S) == (v in S)] for v in range(n)
    ]
    image = [-1] * n
    used = [False] * n
    count = 0

    def extend(v: int):
        nonlocal count
        if v == n:
            count += 1
            return
        for w in candidates[v]:
            if used[w]:
                continue
            if all(X.has_edge(u, v) == X.has_edge(image[u], w) for u in range(v)):
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    return count


@dataclass(frozen=True)
class WalkMomentSequence:
    moments: tuple[int, ...]


def walk_moments(X: Graph, S: VertexSet) -> WalkMomentSequence:
    """c_r = z^T A^r z for r = 0 .. 2n-2."""
    _check(X, S)
    z = S.indicator()
    powers = exact.mat_apply_power(X.adjacency(), z, 2 * X.n - 1)
    return WalkMomentSequence(tuple(sum(a * b for a, b in zip(z, p)) for p in powers))
