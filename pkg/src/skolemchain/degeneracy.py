"""Degeneracy detection and the Skolem-Mahler-Lech stride decomposition.

A sequence is degenerate when two distinct characteristic roots have a root of
unity as their ratio. Striding by a common multiple of those root-of-unity
orders merges each offending pair, so every stride component is
non-degenerate, and a non-degenerate sequence is either identically zero or has
finitely many zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .kernel import (
    Polynomial,
    char_poly,
    cyclotomic,
    format_rational,
    interpolate,
    resultant,
    squarefree_part,
    totient,
)
from .lrs import Lrs, companion_matrix, eval_range, iter_terms, stride_subsequence

DEFAULT_WINDOW_CAP = 10_000


class WindowNotFound(ValueError):
    """No run of k consecutive nonzero terms below the search cap."""

    def __init__(self, cap: int, order: int):
        self.cap = cap
        self.order = order
        super().__init__(
            f"no window of {order} consecutive nonzero terms starting at t <= {cap} "
            f"(scanned u_0 .. u_{cap + order - 1}); raise the window cap"
        )


@dataclass(frozen=True)
class SmlComponent:
    offset: int
    stride: int
    component: Lrs
    identically_zero: bool
    nondegenerate: bool


def ratio_polynomial(p: Polynomial) -> Polynomial:
    """Polynomial whose roots are all quotients a/b over root pairs of ``p``.

    This is Res_y(p(y), p(x*y)) as a polynomial in x, including the d trivial
    quotients equal to 1. Rather than running a resultant over Q[x] we
    evaluate it at x = 1 .. d^2+1 and interpolate; at nonzero x the degree of
    p(x*y) in y stays d, so each evaluation is an ordinary rational resultant.
    """
    if p.is_zero():
        raise ValueError("ratio polynomial of the zero polynomial")
    p = p.primitive()
    d = p.degree
    points = range(1, d * d + 2)
    values = []
    for x0 in points:
        scaled = Polynomial(tuple(c * x0**i for i, c in enumerate(p.coefficients)))
        values.append(resultant(p, scaled))
    return interpolate(points, values)


def _order_candidates(bound: int):
    # phi(m) >= sqrt(m/2), so phi(m) <= bound forces m <= 2*bound^2
    for m in range(2, 2 * bound * bound + 1):
        if totient(m) <= bound:
            yield m


def degeneracy_orders(l: Lrs) -> set[int]:
    """All m >= 2 such that some ratio of distinct roots is a primitive m-th root of unity."""
    sf = squarefree_part(char_poly(companion_matrix(l)))
    d = sf.degree
    if d < 2:
        return set()
    q = ratio_polynomial(sf)
    q = q.exact_div(Polynomial((-1, 1)) ** d).primitive()
    orders = set()
    # each ratio lives in a field of degree <= d^2 over Q
    for m in _order_candidates(d * d):
        phi = cyclotomic(m)
        if phi.degree > q.degree:
            continue
        # Phi_m is irreducible over Q: a nonconstant gcd means Phi_m | q
        if phi.divides(q):
            orders.add(m)
    return orders


def is_nondegenerate(l: Lrs) -> bool:
    return not degeneracy_orders(l)


def sml_decompose(l: Lrs) -> list[SmlComponent]:
    orders = degeneracy_orders(l)
    stride = lcm(*orders) if orders else 1
    components = []
    for c in range(stride):
        comp = stride_subsequence(l, stride, c)
        nondeg = not degeneracy_orders(comp)
        if not nondeg:
            raise RuntimeError(
                f"component c={c} of stride {stride} is still degenerate; this is a bug"
            )
        components.append(
            SmlComponent(
                offset=c,
                stride=stride,
                component=comp,
                identically_zero=comp.is_identically_zero(),
                nondegenerate=nondeg,
            )
        )
    return components


def find_nonzero_window(l: Lrs, cap: int = DEFAULT_WINDOW_CAP) -> int:
    """Least t <= cap with u_t .. u_{t+k-1} all nonzero."""
    k = l.order
    run = 0
    for n, u in enumerate(_terms(l, cap + k - 1)):
        run = run + 1 if u != 0 else 0
        if run == k:
            return n - k + 1
    raise WindowNotFound(cap, k)


def find_positive_window(l: Lrs, cap: int = DEFAULT_WINDOW_CAP) -> int:
    """Least t <= cap with u_t .. u_{t+k-1} all strictly positive."""
    k = l.order
    run = 0
    for n, u in enumerate(_terms(l, cap + k - 1)):
        run = run + 1 if u > 0 else 0
        if run == k:
            return n - k + 1
    raise WindowNotFound(cap, k)


def _terms(l: Lrs, n_max: int):
    for n, u in enumerate(iter_terms(l)):
        if n > n_max:
            return
        yield u


def decomposition_report(components: list[SmlComponent], n_terms: int = 10) -> list[dict]:
    return [
        {
            "offset": comp.offset,
            "stride": comp.stride,
            "order": comp.component.order,
            "first_terms": [
                format_rational(u) for u in eval_range(comp.component, n_terms - 1)
            ],
            "identically_zero": comp.identically_zero,
            "nondegenerate": comp.nondegenerate,
        }
        for comp in components
    ]
