"""Exact rational matrices and univariate polynomials.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. Nothing in here touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_TOKEN = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(token) -> Fraction:
    """Parse a ``"p/q"`` or ``"p"`` token (ints are accepted as-is)."""
    if isinstance(token, bool):
        raise ValueError(f"not a rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if not isinstance(token, str):
        raise ValueError(f"not a rational token: {token!r}")
    m = _RATIONAL_TOKEN.match(token.strip())
    if m is None:
        raise ValueError(f"malformed rational token: {token!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {token!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(x: Fraction) -> str:
    # Fraction.__str__ is already canonical: "p/q", or "p" when q == 1.
    return str(Fraction(x))


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Dense matrix with row-major Fraction entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        entries = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = Fraction(v)
        return cls(n, n, tuple(entries))

    @classmethod
    def column(cls, values: Sequence) -> Matrix:
        return cls(len(values), 1, tuple(values))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def _check_same_shape(self, other: Matrix):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> Matrix:
        c = Fraction(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            for j in range(p):
                out.append(sum((arow[t] * b[t * p + j] for t in range(m)), Fraction(0)))
        return Matrix(n, p, tuple(out))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def max_abs(self) -> Fraction:
        return max((abs(e) for e in self.entries), default=Fraction(0))

    def min_entry(self) -> Fraction:
        return min(self.entries)

    def column_sums(self) -> list[Fraction]:
        return [sum(self.col(j), Fraction(0)) for j in range(self.cols)]

    def submatrix(self, rows: range, cols: range) -> Matrix:
        return Matrix.from_rows([[self[i, j] for j in cols] for i in rows])


def mat_pow(m: Matrix, n: int) -> Matrix:
    """Exact ``m**n`` by repeated squaring; ``n == 0`` gives the identity."""
    if not m.is_square:
        raise ValueError(f"mat_pow needs a square matrix, got {m.rows}x{m.cols}")
    if n < 0:
        raise ValueError("negative exponent")
    result = Matrix.identity(m.rows)
    base = m
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def det(m: Matrix) -> Fraction:
    """Determinant by Bareiss elimination on the integer matrix left after
    clearing each row's denominators (every division is exact)."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = []
    scale = 1
    for i in range(n):
        row = m.row(i)
        den = reduce(lcm, (e.denominator for e in row), 1)
        scale *= den
        a.append([e.numerator * (den // e.denominator) for e in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial over Q, coefficients in ascending degree.

    The zero polynomial has an empty coefficient tuple.
    """

    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> Polynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def lc(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else Fraction(0)

    def __call__(self, x):
        if isinstance(x, Matrix):
            return self.eval_matrix(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        """Horner evaluation with a square matrix argument."""
        ident = Matrix.identity(m.rows)
        acc = Matrix.zeros(m.rows)
        for c in reversed(self.coefficients):
            acc = acc @ m + ident.scale(c)
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(tuple(c * a for a in self.coefficients))
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        result = Polynomial((1,))
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.lc in (1, -1) and self._is_integral() and other._is_integral():
            return self._divmod_integral(other)
        rem = list(self.coefficients)
        dq = other.degree
        inv_lc = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv_lc
            if c == 0:
                continue
            quot[i - dq] = c
            for t, b in enumerate(other.coefficients):
                rem[i - dq + t] -= c * b
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dq]))

    def _is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def _divmod_integral(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        # integer-only long division by a divisor with leading coefficient +-1
        rem = [c.numerator for c in self.coefficients]
        div = [c.numerator for c in other.coefficients]
        dq = len(div) - 1
        lead = div[-1]
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * lead
            if c == 0:
                continue
            quot[i - dq] = c
            for t, b in enumerate(div):
                rem[i - dq + t] -= c * b
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dq]))

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def exact_div(self, other: Polynomial) -> Polynomial:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def divides(self, other: Polynomial) -> bool:
        return (other % self).is_zero()

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def primitive(self) -> Polynomial:
        """Integer-coefficient associate with content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coefficients), 1)
        ints = [int(c * den) for c in self.coefficients]
        content = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            content = -content
        return Polynomial(tuple(Fraction(c // content) for c in ints))

    def shift_down(self, s: int) -> Polynomial:
        """Divide by ``x**s``; the low ``s`` coefficients must vanish."""
        if any(c != 0 for c in self.coefficients[:s]):
            raise ValueError(f"not divisible by x^{s}")
        return Polynomial(self.coefficients[s:])

    def low_order_zeros(self) -> int:
        """Multiplicity of the root 0."""
        for i, c in enumerate(self.coefficients):
            if c != 0:
                return i
        raise ValueError("zero polynomial")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd via the primitive polynomial remainder sequence over Z."""
    if p.is_zero() and q.is_zero():
        return Polynomial()
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, _pseudo_rem(a, b).primitive()
    return a.monic()


def _pseudo_rem(a: Polynomial, b: Polynomial) -> Polynomial:
    # lc(b)^(deg a - deg b + 1) * a mod b, which keeps integer inputs integral.
    delta = a.degree - b.degree + 1
    return (a * (b.lc ** max(delta, 0))) % b


def char_poly(m: Matrix) -> Polynomial:
    """det(xI - m) by the Faddeev-LeVerrier trace recursion."""
    if not m.is_square:
        raise ValueError(f"char_poly needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = Matrix.identity(n)
    aux = Matrix.zeros(n)
    for k in range(1, n + 1):
        aux = m @ aux + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ aux).trace() / k
    return Polynomial(tuple(coeffs))


def sylvester_matrix(p: Polynomial, q: Polynomial) -> Matrix:
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for t, c in enumerate(reversed(p.coefficients)):
            row[i + t] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for t, c in enumerate(reversed(q.coefficients)):
            row[i + t] = c
        rows.append(row)
    return Matrix(size, size, tuple(e for r in rows for e in r))


def resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """Res(p, q) = lc(p)^deg(q) * prod over roots a of p of q(a).

    Computed as the Sylvester determinant. A zero argument gives 0 (the other
    one must be nonzero).
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    if p.degree == 0 and q.degree == 0:
        return Fraction(1)
    return det(sylvester_matrix(p, q))


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> Polynomial:
    """The m-th cyclotomic polynomial, from x^m - 1 = prod over d | m of Phi_d."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    p = Polynomial((-1,) + (0,) * (m - 1) + (1,))
    for d in range(1, m):
        if m % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic p / gcd(p, p'): same roots as p, each simple."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return Polynomial((1,))
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def totient(m: int) -> int:
    result, n, f = m, m, 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            result -= result // f
        f += 1
    if n > 1:
        result -= result // n
    return result


def interpolate(xs: Sequence, ys: Sequence) -> Polynomial:
    """The unique polynomial of degree < len(xs) through the given points (Newton form)."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    p = Polynomial((coef[-1],)) if n else Polynomial()
    for i in range(n - 2, -1, -1):
        p = p * Polynomial((-xs[i], 1)) + Polynomial((coef[i],))
    return p
