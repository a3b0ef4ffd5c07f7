"""LRS of order k  ->  ergodic Markov chain of order k+1.

The chain is ``M = S + D`` where ``S = s 1^T`` has the uniform stationary
distribution ``s`` in every column and ``D`` is a small disturbance with
``DS = SD = O``. Powers then separate, ``M^n = S + D^n``, and ``D`` is built so
that ``(D^n)[i, j] = eta * u_n / rho^n`` for the chosen state pair. Comparing
``(M^n)[i, j]`` with ``r = s_i`` is therefore comparing ``u_n`` with zero.

State indices in this module's public data are 1-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .kernel import Matrix
from .lrs import Lrs, companion_matrix


class Query(enum.Enum):
    EQUAL = "Equal"
    LESS = "Less"
    INFINITELY_OFTEN_LESS = "InfinitelyOftenLess"

    def holds(self, value: Fraction, threshold: Fraction) -> bool:
        if self is Query.EQUAL:
            return value == threshold
        return value < threshold

    @classmethod
    def parse(cls, text: str) -> Query:
        aliases = {
            "equal": cls.EQUAL,
            "skolem": cls.EQUAL,
            "less": cls.LESS,
            "positivity": cls.LESS,
            "infinitelyoftenless": cls.INFINITELY_OFTEN_LESS,
            "infinitely-often-less": cls.INFINITELY_OFTEN_LESS,
            "ultimate-positivity": cls.INFINITELY_OFTEN_LESS,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(
                f"unknown query kind {text!r}; expected one of Equal, Less, InfinitelyOftenLess"
            ) from None


class PreconditionError(ValueError):
    """Input violates a named precondition of the construction."""

    def __init__(self, condition: str, detail: str):
        self.condition = condition
        super().__init__(f"precondition '{condition}' violated: {detail}")


@dataclass(frozen=True)
class MarkovInstance:
    """``(M^n)[target, source]`` compared against ``threshold``."""

    matrix: Matrix
    source: int
    target: int
    threshold: Fraction
    query: Query

    @property
    def dimension(self) -> int:
        return self.matrix.rows

    def entry(self, power: Matrix) -> Fraction:
        return power[self.target - 1, self.source - 1]


@dataclass(frozen=True)
class ReductionCertificate:
    lrs: Lrs
    stationary: tuple
    S: Matrix
    anchor_index: int
    anchor: tuple
    eta: Fraction
    F: Matrix
    B: Matrix
    C: Matrix
    gamma: Fraction
    sigma: Fraction
    rho: Fraction
    D: Matrix


def stationary_matrix(size: int) -> tuple[tuple, Matrix]:
    s = (Fraction(1, size),) * size
    return s, Matrix(size, size, s * size)


def choose_anchor(l: Lrs) -> tuple[int, Fraction, tuple]:
    """Pick the column j of I - S whose first entry has the sign of u_0.

    Returns ``(j, eta, anchor)`` with ``j`` 1-based, ``eta > 0`` and ``anchor``
    the first k entries of column j of ``I - S``.
    """
    zeros = [n for n, u in enumerate(l.initial) if u == 0]
    if zeros:
        raise PreconditionError(
            "nonzero-initial-terms",
            f"u_{zeros[0]} = 0; shift the sequence to a window of nonzero terms first",
        )
    k = l.order
    s = Fraction(1, k + 1)
    u0 = l.initial[0]
    if u0 > 0:
        j, eta = 1, (1 - s) / u0
    else:
        j, eta = 2, -s / u0
    anchor = tuple((1 if row == j - 1 else 0) - s for row in range(k))
    return j, eta, anchor


def build_certificate(l: Lrs) -> ReductionCertificate:
    k = l.order
    j, eta, mu = choose_anchor(l)
    s, S = stationary_matrix(k + 1)
    u = l.initial

    f = [Fraction(1)] + [eta * u[t] / mu[t] for t in range(1, k)]
    F = Matrix.diag(f)
    F_inv = Matrix.diag([1 / x for x in f])
    B = F_inv @ companion_matrix(l) @ F

    # C = [[B, 0], [-1^T B, 0]]: columns sum to zero
    rows = [list(B.row(r)) + [Fraction(0)] for r in range(k)]
    rows.append([-x for x in B.column_sums()] + [Fraction(0)])
    C = Matrix.from_rows(rows)

    disturbance = C - C @ S
    gamma = disturbance.max_abs()
    if gamma == 0:
        raise RuntimeError("C - CS vanished; a_0 != 0 rules this out, so this is a bug")
    sigma = S.min_entry()
    rho = 2 * gamma / sigma
    D = disturbance.scale(1 / rho)
    return ReductionCertificate(
        lrs=l,
        stationary=s,
        S=S,
        anchor_index=j,
        anchor=mu,
        eta=eta,
        F=F,
        B=B,
        C=C,
        gamma=gamma,
        sigma=sigma,
        rho=rho,
        D=D,
    )


def build_instance(l: Lrs, query: Query = Query.EQUAL) -> tuple[MarkovInstance, ReductionCertificate]:
    """Reduce ``l`` to a Markov reachability instance of dimension ``order + 1``.

    For ``n >= 1``, ``(M^n)[1, j] - r == eta * u_n / rho^n``, so Equal asks for a
    zero of ``u``, Less for a negative term, and InfinitelyOftenLess for
    infinitely many negative terms. The two Less variants need positive
    initial terms; otherwise the original question is answered already and
    there is nothing to reduce.
    """
    if query is not Query.EQUAL:
        bad = [n for n, u in enumerate(l.initial) if u <= 0]
        if bad:
            n = bad[0]
            raise PreconditionError(
                "positive-initial-terms",
                f"u_{n} = {l.initial[n]} is not positive, so the positivity question "
                f"is settled by the initial terms themselves",
            )
    cert = build_certificate(l)
    M = cert.S + cert.D
    target = 1
    instance = MarkovInstance(
        matrix=M,
        source=cert.anchor_index,
        target=target,
        threshold=cert.stationary[target - 1],
        query=query,
    )
    return instance, cert
