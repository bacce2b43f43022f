"""Dimension of the real Lie algebra generated by a set of square matrices.

The closure is grown breadth-first: every new basis element is commuted with
all earlier ones and the commutator's residual against the current span
decides whether it is new. Complex matrices are treated as a real vector
space through the embedding R + iI -> [[R, -I], [I, R]], which turns the
commutator into a real matrix commutator and keeps exact mode integer-only.

Two arithmetic modes:

* ``exact``: generators scaled to integers, span kept as a primitive integer
  echelon basis. Authoritative, practical up to n = 6.
* ``float``: orthonormal basis under the trace inner product, with modified
  Gram-Schmidt applied twice. Residuals below ``tol`` are dropped, above
  ``10 * tol`` are kept, anything in between raises :class:`AmbiguousRank`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .errors import AmbiguousRank, InvalidArgument, UnsupportedSize
from .graph import Graph, VertexSet

FLOAT_TOL = 1e-9


@dataclass
class LieBasis:
    n: int
    is_complex: bool
    mode: str
    basis: list = field(default_factory=list)  # coordinate vectors

    @property
    def ambient_dim(self) -> int:
        return 2 * self.n * self.n if self.is_complex else self.n * self.n

    @property
    def dimension(self) -> int:
        return len(self.basis)

    # coordinates <-> matrices

    def coords(self, M):
        M = np.asarray(M) if self.mode == "float" else M
        if self.mode == "float":
            if self.is_complex:
                return np.concatenate([M.real.ravel(), M.imag.ravel()]).astype(float)
            return np.asarray(M, dtype=float).ravel()
        n = self.n
        if self.is_complex:
            # M is the 2n x 2n real embedding
            return [M[i][j] for i in range(n) for j in range(n)] + [M[n + i][j] for i in range(n) for j in range(n)]
        return [M[i][j] for i in range(n) for j in range(n)]

    def matrix(self, v):
        n = self.n
        if self.mode == "float":
            if self.is_complex:
                return v[: n * n].reshape(n, n) + 1j * v[n * n :].reshape(n, n)
            return v.reshape(n, n)
        re = [v[i * n : (i + 1) * n] for i in range(n)]
        if not self.is_complex:
            return [list(r) for r in re]
        im = [v[n * n + i * n : n * n + (i + 1) * n] for i in range(n)]
        top = [list(re[i]) + [-x for x in im[i]] for i in range(n)]
        bottom = [list(im[i]) + list(re[i]) for i in range(n)]
        return top + bottom

    def residual(self, v):
        if self.mode == "float":
            r = np.array(v, dtype=float)
            for _ in range(2):
                for q in self.basis:
                    r -= (q @ r) * q
            return r
        r = list(v)
        for p, b in self.basis:
            if r[p]:
                bp, rp = b[p], r[p]
                r = [bp * x - rp * y for x, y in zip(r, b)]
        return r

    def add(self, r):
        if self.mode == "float":
            self.basis.append(r / np.linalg.norm(r))
            return
        p = next(i for i, x in enumerate(r) if x)
        g = 0
        for x in r:
            g = gcd(g, x)
        if r[p] < 0:
            g = -g
        self.basis.append((p, [x // g for x in r]))

    def element(self, k: int):
        return self.basis[k] if self.mode == "float" else self.basis[k][1]

    def contains(self, M, tol: float = 1e-8) -> bool:
        """Membership test for a matrix given in the module's representation."""
        r = self.residual(self.coords(M))
        if self.mode == "float":
            scale = max(1.0, float(np.linalg.norm(self.coords(M))))
            return float(np.linalg.norm(r)) <= tol * scale
        return not any(r)


@dataclass
class ClosureReport:
    dimension: int
    saturated: bool
    commutator_products_evaluated: int
    basis: LieBasis


def _exact_generator(M, is_complex: bool) -> list[list[int]]:
    """Integer matrix (real embedding if complex) spanning the same real line as M."""
    rows = [[complex(x) for x in row] for row in np.asarray(M, dtype=complex)] if is_complex else None
    if is_complex:
        fr = [[(Fraction(x.real), Fraction(x.imag)) for x in row] for row in rows]
        scale = 1
        for row in fr:
            for a, b in row:
                scale = lcm(scale, a.denominator, b.denominator)
        n = len(fr)
        re = [[int(a * scale) for a, _ in row] for row in fr]
        im = [[int(b * scale) for _, b in row] for row in fr]
        return [re[i] + [-x for x in im[i]] for i in range(n)] + [im[i] + re[i] for i in range(n)]
    fr = [[Fraction(x) for x in row] for row in M]
    scale = 1
    for row in fr:
        for a in row:
            scale = lcm(scale, a.denominator)
    return [[int(a * scale) for a in row] for row in fr]


def _int_commutator(X, Y):
    n = len(X)
    Yt = list(zip(*Y))
    Xt = list(zip(*X))
    return [
        [sum(a * b for a, b in zip(X[i], Yt[j])) - sum(a * b for a, b in zip(Y[i], Xt[j])) for j in range(n)]
        for i in range(n)
    ]


def lie_closure_dimension(generators, mode: str = "exact", tol: float = FLOAT_TOL) -> ClosureReport:
    """Dimension of the smallest real subspace containing ``generators`` and
    closed under M, N -> MN - NM."""
    if not generators:
        raise InvalidArgument("at least one generator is required")
    if mode not in ("exact", "float"):
        raise InvalidArgument(f"unknown mode {mode!r}")
    arrays = [np.asarray(g) for g in generators]
    n = arrays[0].shape[0]
    for g in arrays:
        if g.ndim != 2 or g.shape != (n, n):
            raise InvalidArgument("generators must be square matrices of one common size")
    is_complex = any(np.iscomplexobj(g) for g in arrays)
    span = LieBasis(n, is_complex, mode)

    if mode == "exact":
        gens = [_exact_generator(g, is_complex) for g in generators]
        commutator = _int_commutator
    else:
        gens = [g.astype(complex) if is_complex else g.astype(float) for g in arrays]

        def commutator(X, Y):
            return X @ Y - Y @ X

    def offer(M, scale: float) -> bool:
        r = span.residual(span.coords(M))
        if mode == "exact":
            if not any(r):
                return False
        else:
            size = float(np.linalg.norm(r))
            if size <= tol * scale:
                return False
            if size <= 10 * tol * scale:
                raise AmbiguousRank(
                    f"residual {size:.3e} lies in the ambiguous band [{tol * scale:.1e}, {10 * tol * scale:.1e}]; "
                    "rerun in exact mode"
                )
        span.add(r)
        return True

    gen_scale = max(float(np.linalg.norm(g)) for g in gens) if mode == "float" else 1.0
    for g in gens:
        if span.dimension == span.ambient_dim:
            break
        if gen_scale > 0:
            offer(g, gen_scale)

    evaluated = 0
    i = 0
    while i < span.dimension and span.dimension < span.ambient_dim:
        Mi = span.matrix(span.element(i))
        for j in range(i):
            if span.dimension == span.ambient_dim:
                break
            evaluated += 1
            # float basis elements are unit vectors, so commutators have scale ~1
            offer(commutator(Mi, span.matrix(span.element(j))), 1.0)
        i += 1
    return ClosureReport(span.dimension, True, evaluated, span)


def verify_lemma1(X: Graph, S: VertexSet, mode: str = "exact") -> tuple[int, int, bool]:
    """Closure dimensions of {A, zz^T} (real) and {iA, i zz^T} (complex).

    Returns (real_dim, skew_dim, holds) where ``holds`` is the implication
    "controllable => both dimensions equal n^2".
    """
    from .controllability import controllable

    limit = 6 if mode == "exact" else 8
    if X.n > limit:
        raise UnsupportedSize(f"{mode} Lie closure is limited to n <= {limit}")
    A = np.array(X.adjacency(), dtype=int)
    z = np.array(S.indicator(), dtype=int)
    L = np.outer(z, z)
    real_dim = lie_closure_dimension([A, L], mode).dimension
    skew_dim = lie_closure_dimension([1j * A, 1j * L], mode).dimension
    n2 = X.n * X.n
    holds = not controllable(X, S) or (real_dim == n2 and skew_dim == n2)
    return real_dim, skew_dim, holds
