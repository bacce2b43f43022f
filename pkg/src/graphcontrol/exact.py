"""Exact integer matrices and polynomials.

Matrices are plain lists of rows of Python ints, so entries never overflow.
Polynomials are :class:`IntPoly` values with ascending coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidArgument

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def t(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return IntPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPoly:
        """Multiply by t**k."""
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else self

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def exact_div(self, d: int) -> IntPoly:
        if any(c % d for c in self.coeffs):
            raise ArithmeticError(f"coefficients not divisible by {d}")
        return IntPoly(tuple(c // d for c in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("t" if k == 1 else f"t^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _require_square(M: IntMatrix) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise InvalidArgument("matrix must be square")
    return n


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: IntMatrix, x: list[int]) -> list[int]:
    if any(len(row) != len(x) for row in A):
        raise InvalidArgument(f"dimension mismatch: {len(A[0]) if A else 0} columns vs vector of {len(x)}")
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(M: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*M)]


def det_bareiss(M: IntMatrix) -> int:
    """Exact determinant by fraction-free elimination; every division is exact."""
    n = _require_square(M)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, aik = a[i], a[i][k]
            row_k = a[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - aik * row_k[j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss division must be exact"
                row_i[j] = q
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(M: IntMatrix) -> int:
    """Rank over the rationals by fraction-free elimination with row pivoting."""
    a = [list(map(int, row)) for row in M]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        for i in range(r + 1, rows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c, cols):
                row_i[j] = (row_i[j] * pivot - aic * row_r[j]) // prev
        prev = pivot
        r += 1
    return r


def char_poly(M: IntMatrix) -> IntPoly:
    """det(tI - M) by Faddeev-LeVerrier; each division by k is checked exact."""
    n = _require_square(M)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    N = [[0] * n for _ in range(n)]  # running M_k, starts at zero
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        N = matmul(M, N)
        for i in range(n):
            N[i][i] += c_prev
        trace = sum(sum(M[i][j] * N[j][i] for j in range(n)) for i in range(n))
        if trace % k:
            raise ArithmeticError(f"Faddeev-LeVerrier: trace {trace} not divisible by {k}")
        coeffs[n - k] = -trace // k
    return IntPoly(tuple(coeffs))


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """lc(b)**(deg a - deg b + 1) * a  mod  b, computed without fractions."""
    if b.is_zero():
        raise InvalidArgument("division by the zero polynomial")
    r = list(a.coeffs)
    db, lb = b.degree, b.lead
    steps = a.degree - db + 1
    if steps <= 0:
        return a
    for _ in range(steps):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        top = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b.coeffs):
            r[i + shift] -= top * c
        r.pop()  # leading term cancelled
    return IntPoly(tuple(r))


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd over Q with positive leading coefficient (subresultant PRS)."""
    if p.is_zero() and q.is_zero():
        raise InvalidArgument("gcd of two zero polynomials is undefined")
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    g, h = 1, 1
    while True:
        delta = a.degree - b.degree
        r = pseudo_remainder(a, b)
        if r.is_zero():
            return b.primitive()
        if r.degree == 0:
            return IntPoly((1,))
        a = b
        b = r.exact_div(g * h**delta)
        g = a.lead
        # h <- g**delta / h**(delta - 1), exact by the subresultant theorem
        if delta > 0:
            num, den = g**delta, h ** (delta - 1)
            assert num % den == 0
            h = num // den


def mat_apply_power(A: IntMatrix, z: list[int], k: int) -> list[list[int]]:
    """[z, Az, A^2 z, ..., A^(k-1) z] by repeated matrix-vector products."""
    n = _require_square(A)
    if len(z) != n:
        raise InvalidArgument(f"vector length {len(z)} does not match matrix size {n}")
    out = []
    v = list(map(int, z))
    for _ in range(k):
        out.append(v)
        v = matvec(A, v)
    return out
