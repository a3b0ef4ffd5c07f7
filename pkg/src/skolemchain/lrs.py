"""Linear recurrence sequences over Q.

An order-k sequence obeys ``u[n+k] = a[k-1]*u[n+k-1] + ... + a[0]*u[n]`` with
``a[0] != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kernel import Matrix, Polynomial, char_poly, format_rational, mat_pow, parse_rational


@dataclass(frozen=True)
class Lrs:
    coefficients: tuple
    initial: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        init = tuple(Fraction(u) for u in self.initial)
        if not coeffs:
            raise ValueError("an LRS needs order >= 1")
        if len(coeffs) != len(init):
            raise ValueError(
                f"order mismatch: {len(coeffs)} coefficients, {len(init)} initial terms"
            )
        if coeffs[0] == 0:
            raise ValueError("a_0 must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "initial", init)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def is_identically_zero(self) -> bool:
        # k consecutive terms determine the whole sequence
        return all(u == 0 for u in self.initial)

    def characteristic_polynomial(self) -> Polynomial:
        """x^k - a_{k-1} x^{k-1} - ... - a_0."""
        return Polynomial(tuple(-a for a in self.coefficients) + (1,))

    def scaled(self, c) -> Lrs:
        c = Fraction(c)
        return Lrs(self.coefficients, tuple(c * u for u in self.initial))


def companion_matrix(l: Lrs) -> Matrix:
    k = l.order
    rows = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k - 1):
        rows[i][i + 1] = Fraction(1)
    rows[k - 1] = list(l.coefficients)
    return Matrix.from_rows(rows)


def iter_terms(l: Lrs):
    """Yield u_0, u_1, ... forever."""
    window = list(l.initial)
    coeffs = l.coefficients
    while True:
        yield window[0]
        nxt = sum((a * u for a, u in zip(coeffs, window)), Fraction(0))
        window = window[1:] + [nxt]


def eval_range(l: Lrs, n_max: int) -> list[Fraction]:
    """u_0 .. u_{n_max} by direct iteration of the recurrence."""
    if n_max < 0:
        return []
    out = []
    for n, u in enumerate(iter_terms(l)):
        out.append(u)
        if n == n_max:
            return out


def term(l: Lrs, n: int) -> Fraction:
    """u_n as the first entry of A^n u (companion-matrix route)."""
    u = Matrix.column(l.initial)
    return (mat_pow(companion_matrix(l), n) @ u)[0, 0]


def shift(l: Lrs, t: int) -> Lrs:
    if t < 0:
        raise ValueError("negative shift")
    if t == 0:
        return l
    return Lrs(l.coefficients, eval_range(l, t + l.order - 1)[t:])


def stride_subsequence(l: Lrs, stride: int, offset: int) -> Lrs:
    """The sequence n -> u_{n*stride + offset}, as an LRS of order <= k.

    Its recurrence comes from the characteristic polynomial of A^stride.
    """
    if stride < 1:
        raise ValueError(f"stride must be positive, got {stride}")
    if not 0 <= offset < stride:
        raise ValueError(f"offset must satisfy 0 <= c < L, got c={offset}, L={stride}")
    p = char_poly(mat_pow(companion_matrix(l), stride))
    if p.is_constant():
        raise ValueError("stride recurrence degenerated to a constant polynomial")
    # A is invertible (a_0 != 0) so A^L is too, and x never divides p. The
    # stripping below is defensive: it would keep a_0 != 0 at the price of the
    # result starting `lead` strides later.
    lead = p.low_order_zeros()
    p = p.shift_down(lead)
    if p.is_constant():
        raise ValueError("stride recurrence has no nonzero coefficient")
    order = p.degree
    terms = eval_range(l, (lead + order - 1) * stride + offset)
    init = tuple(terms[(lead + n) * stride + offset] for n in range(order))
    return Lrs(tuple(-c for c in p.coefficients[:order]), init)


def parse_lrs(data: dict) -> Lrs:
    """Build an Lrs from the ``{"order", "coefficients", "initial"}`` mapping."""
    if not isinstance(data, dict):
        raise ValueError("LRS input must be a mapping")
    missing = [key for key in ("order", "coefficients", "initial") if key not in data]
    if missing:
        raise ValueError(f"LRS input is missing key(s): {', '.join(missing)}")
    order = data["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise ValueError(f"'order' must be a positive integer, got {order!r}")
    coeffs = [parse_rational(c) for c in data["coefficients"]]
    init = [parse_rational(u) for u in data["initial"]]
    if len(coeffs) != order or len(init) != order:
        raise ValueError(
            f"'order' is {order} but got {len(coeffs)} coefficients and {len(init)} initial terms"
        )
    return Lrs(tuple(coeffs), tuple(init))


def lrs_to_dict(l: Lrs) -> dict:
    return {
        "order": l.order,
        "coefficients": [format_rational(a) for a in l.coefficients],
        "initial": [format_rational(u) for u in l.initial],
    }

