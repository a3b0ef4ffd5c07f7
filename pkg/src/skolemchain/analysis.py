"""Exact verification of reduction certificates and Markov-side analyses.

Everything here recomputes matrix powers by successive multiplication, a
separate code path from the repeated squaring in :func:`kernel.mat_pow`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .degeneracy import sml_decompose
from .kernel import Matrix, Polynomial, char_poly, format_rational
from .lrs import Lrs, companion_matrix, eval_range
from .reduction import MarkovInstance, Query, ReductionCertificate

DEFAULT_HORIZON = 30

SCAN_DISCLAIMER = (
    "bounded scan only: the absence of a witness up to the horizon decides nothing "
    "about larger n"
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    horizon: int = DEFAULT_HORIZON

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "overall": "pass" if self.overall else "fail",
            "checks": {
                c.name: {"result": "pass" if c.passed else "fail", "detail": c.detail}
                for c in self.checks
            },
        }

    def render(self) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [
            f"{'PASS' if c.passed else 'FAIL'}  {c.name.ljust(width)}  {c.detail}".rstrip()
            for c in self.checks
        ]
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'} (horizon {self.horizon})")
        return "\n".join(lines)


@dataclass(frozen=True)
class ErgodicityReport:
    ergodic: bool
    witness: Optional[int] = None
    reason: str = ""
    pattern: Optional[tuple] = None


@dataclass(frozen=True)
class ScanResult:
    query: Query
    horizon: int
    hits: tuple

    @property
    def witness(self) -> Optional[int]:
        return self.hits[0] if self.hits else None

    def render(self) -> str:
        if self.query is Query.INFINITELY_OFTEN_LESS:
            found = f"hits at n = {list(self.hits)}" if self.hits else "no hits"
        elif self.hits:
            found = f"witness n = {self.hits[0]}"
        else:
            found = "no witness"
        return f"{self.query.value}: {found} for n <= {self.horizon} ({SCAN_DISCLAIMER})"


def check_stochastic(m: Matrix):
    """Raise ValueError unless ``m`` is square, nonnegative and column-stochastic."""
    if not m.is_square:
        raise ValueError(f"expected a square matrix, got {m.rows}x{m.cols}")
    if any(e < 0 for e in m.entries):
        raise ValueError("matrix has a negative entry")
    sums = m.column_sums()
    bad = [j for j, c in enumerate(sums) if c != 1]
    if bad:
        raise ValueError(f"column {bad[0] + 1} sums to {format_rational(sums[bad[0]])}, not 1")


def _check_index(m: Matrix, name: str, idx: int):
    if not 1 <= idx <= m.rows:
        raise ValueError(f"{name} index {idx} out of range 1..{m.rows}")


def iterated_powers(m: Matrix, n_max: int):
    """Yield (n, m^n) for n = 1 .. n_max by successive multiplication."""
    p = m
    for n in range(1, n_max + 1):
        yield n, p
        if n < n_max:
            p = p @ m


# --------------------------------------------------------------------------
# Certificate verification
# --------------------------------------------------------------------------


def verify_certificate(
    l: Lrs,
    inst: MarkovInstance,
    cert: ReductionCertificate,
    horizon: int = DEFAULT_HORIZON,
) -> VerificationReport:
    k = l.order
    size = k + 1
    for name, mat in (("M", inst.matrix), ("S", cert.S), ("C", cert.C), ("D", cert.D)):
        if (mat.rows, mat.cols) != (size, size):
            raise ValueError(f"{name} is {mat.rows}x{mat.cols}, expected {size}x{size}")
    for name, mat in (("F", cert.F), ("B", cert.B)):
        if (mat.rows, mat.cols) != (k, k):
            raise ValueError(f"{name} is {mat.rows}x{mat.cols}, expected {k}x{k}")
    if len(cert.stationary) != size or len(cert.anchor) != k:
        raise ValueError("stationary or anchor vector has the wrong length")
    if not (1 <= inst.source <= size and 1 <= inst.target <= size):
        raise ValueError("instance indices out of range")

    report = VerificationReport(horizon=horizon)

    def run(name: str, fn: Callable[[], tuple]):
        try:
            ok, detail = fn()
        except (ArithmeticError, ValueError) as exc:
            ok, detail = False, f"error: {exc}"
        report.checks.append(Check(name, bool(ok), detail))

    M, S, C, D, F, B = inst.matrix, cert.S, cert.C, cert.D, cert.F, cert.B
    s = cert.stationary
    i, j = inst.target, inst.source
    r = inst.threshold
    A = companion_matrix(l)
    ones = Matrix(1, size, (Fraction(1),) * size)

    run("stationary-uniform", lambda: (
        all(x == Fraction(1, size) for x in s) and S == Matrix(size, size, tuple(s) * size),
        f"s_l = 1/{size}",
    ))
    run("column-sums", lambda: (
        ones @ M == ones,
        "1^T M = 1^T",
    ))
    run("strict-positivity", lambda: (
        M.min_entry() > 0,
        f"min entry {format_rational(M.min_entry())}",
    ))
    run("decomposition", lambda: (M == S + D, "M = S + D"))
    run("threshold", lambda: (
        r == S[i - 1, j - 1],
        f"r = {format_rational(r)}, s_ij = {format_rational(S[i - 1, j - 1])}",
    ))

    def anchor_check():
        u0 = l.initial[0]
        column = tuple((1 if row == j - 1 else 0) - s[row] for row in range(k))
        ok = (
            cert.anchor_index == j
            and tuple(cert.anchor) == column
            and cert.eta > 0
            and cert.eta * u0 / cert.anchor[0] == 1
            and (j == 1) == (u0 > 0)
        )
        return ok, f"j = {j}, eta = {format_rational(cert.eta)}"

    run("anchor", anchor_check)

    def scaling_check():
        diag_only = all(F[a, b] == 0 for a in range(k) for b in range(k) if a != b)
        invertible = all(F[a, a] != 0 for a in range(k))
        image = F @ Matrix.column(cert.anchor)
        target = Matrix.column(l.initial).scale(cert.eta)
        return (
            diag_only and invertible and F[0, 0] == 1 and image == target,
            "F diagonal, f_11 = 1, F y_j = eta u",
        )

    run("scaling-matrix", scaling_check)
    run("similarity", lambda: (F @ B == A @ F, "F B = A F, i.e. B = F^-1 A F"))

    def block_check():
        top = C.submatrix(range(k), range(k))
        last_col = [C[a, k] for a in range(size)]
        bottom = [C[k, b] for b in range(k)]
        ok = (
            top == B
            and all(x == 0 for x in last_col)
            and bottom == [-x for x in B.column_sums()]
            and all(x == 0 for x in C.column_sums())
        )
        return ok, "C = [[B, 0], [-1^T B, 0]], 1^T C = 0^T"

    run("block-form", block_check)

    def constants_check():
        gamma = (C - C @ S).max_abs()
        sigma = S.min_entry()
        ok = cert.gamma == gamma and cert.sigma == sigma and cert.rho == 2 * gamma / sigma
        return ok, (
            f"gamma = {format_rational(cert.gamma)}, sigma = {format_rational(cert.sigma)}, "
            f"rho = {format_rational(cert.rho)}"
        )

    run("constants", constants_check)
    run("disturbance", lambda: (D == (C - C @ S).scale(1 / cert.rho), "D = (C - CS)/rho"))

    def annihilation_check():
        zero = Matrix.zeros(size)
        return (D @ S == zero and S @ D == zero and S @ C == zero), "DS = SD = SC = O"

    run("annihilation", annihilation_check)
    run("stationarity", lambda: (
        M @ Matrix.column(s) == Matrix.column(s),
        "M s = s",
    ))

    ident = Matrix.identity(size)
    terms = eval_range(l, horizon)
    separation = identity_powers = blocks = correspondence = None
    shown = []
    Dn, Cn, Bn = ident, ident, Matrix.identity(k)
    for n, Mn in iterated_powers(M, horizon):
        Dn, Cn, Bn = Dn @ D, Cn @ C, Bn @ B
        if separation is None and Mn != S + Dn:
            separation = n
        if identity_powers is None and Dn.scale(cert.rho**n) != Cn @ (ident - S):
            identity_powers = n
        if blocks is None:
            expected = [list(Bn.row(a)) + [Fraction(0)] for a in range(k)]
            expected.append([-x for x in Bn.column_sums()] + [Fraction(0)])
            if Cn != Matrix.from_rows(expected):
                blocks = n
        value = inst.entry(Mn)
        if len(shown) < 5:
            shown.append(f"n={n}: {format_rational(value)}")
        if correspondence is None and value - r != cert.eta * terms[n] / cert.rho**n:
            correspondence = n

    def outcome(first_bad, text):
        if first_bad is None:
            return True, f"{text} for 1 <= n <= {horizon}"
        return False, f"{text} fails at n = {first_bad}"

    run("power-separation", lambda: outcome(separation, "M^n = S + D^n"))
    run("disturbance-powers", lambda: outcome(identity_powers, "rho^n D^n = C^n (I - S)"))
    run("block-powers", lambda: outcome(blocks, "C^n = [[B^n, 0], [-1^T B^n, 0]]"))

    def correspondence_check():
        ok, detail = outcome(correspondence, "m_ij^(n) - r = eta u_n / rho^n")
        return ok, f"{detail}; m_{i}{j}^(n): " + ", ".join(shown)

    run("correspondence", correspondence_check)

    def edge_check():
        # n = 0: M^0 = I, so m_ij^(0) is 0 or 1
        at_zero = Fraction(1 if i == j else 0)
        ok = r not in (0, 1)
        if inst.query is Query.LESS:
            ok = ok and not at_zero < r
        return ok, f"m_ij^(0) = {at_zero}, r = {format_rational(r)}"

    run("n0-edge", edge_check)
    return report


# --------------------------------------------------------------------------
# Ergodicity
# --------------------------------------------------------------------------


def check_ergodicity(m: Matrix, budget: Optional[int] = None) -> ErgodicityReport:
    """Least N with m^N entrywise positive.

    Only the zero pattern matters for a nonnegative matrix, so powers are taken
    over booleans. The default budget is Wielandt's bound (n-1)^2 + 1, beyond
    which no primitive matrix can still have a zero.
    """
    check_stochastic(m)
    n = m.rows
    if budget is None:
        budget = (n - 1) ** 2 + 1
    base = [[m[a, b] > 0 for b in range(n)] for a in range(n)]
    pattern = base
    for N in range(1, budget + 1):
        if all(all(row) for row in pattern):
            return ErgodicityReport(True, N)
        if N < budget:
            pattern = [
                [any(pattern[a][t] and base[t][b] for t in range(n)) for b in range(n)]
                for a in range(n)
            ]
    zeros = tuple(
        (a + 1, b + 1) for a in range(n) for b in range(n) if not pattern[a][b]
    )
    return ErgodicityReport(
        False,
        None,
        f"m^N still has zero entries at N = {budget}",
        zeros,
    )


# --------------------------------------------------------------------------
# Markov -> LRS
# --------------------------------------------------------------------------


def reverse_reduce(m: Matrix, i: int, j: int, r) -> tuple[Lrs, int]:
    """An LRS whose n-th term is ``(m^(n+shift))[i, j] - r``.

    Cayley-Hamilton makes the entries of m^n satisfy char_poly(m); the extra
    factor (x - 1) absorbs the constant r. Powers of x in that product (a
    singular m) are stripped and compensated by the returned shift.
    """
    check_stochastic(m)
    _check_index(m, "target", i)
    _check_index(m, "source", j)
    r = Fraction(r)
    p = char_poly(m) * Polynomial((-1, 1))
    shift = p.low_order_zeros()
    p = p.shift_down(shift)
    order = p.degree
    values = []
    power = Matrix.identity(m.rows)
    for n in range(shift + order):
        if n >= shift:
            values.append(power[i - 1, j - 1] - r)
        power = power @ m
    coeffs = tuple(-c for c in p.monic().coefficients[:order])
    return Lrs(coeffs, tuple(values)), shift


def decide_infinite_equality(m: Matrix, i: int, j: int, r) -> bool:
    """Whether ``(m^n)[i, j] == r`` for infinitely many n.

    A non-degenerate component is either identically zero or vanishes only
    finitely often, so the answer is whether some stride component of the
    reverse-reduced sequence is identically zero.
    """
    l, _ = reverse_reduce(m, i, j, r)
    return any(c.identically_zero for c in sml_decompose(l))


def query_scan(inst: MarkovInstance, horizon: int = 100) -> ScanResult:
    """Every n <= horizon (from n = 0) where the instance's comparison holds.

    For Equal and Less only the first hit is of interest and the scan stops
    there; for InfinitelyOftenLess all hits are listed as a diagnostic.
    """
    hits = []
    power = Matrix.identity(inst.dimension)
    for n in range(horizon + 1):
        if inst.query.holds(inst.entry(power), inst.threshold):
            hits.append(n)
            if inst.query is not Query.INFINITELY_OFTEN_LESS:
                break
        power = power @ inst.matrix
    return ScanResult(inst.query, horizon, tuple(hits))


def decay_profile(m: Matrix, limit: Matrix, n: int) -> tuple[Fraction, Fraction]:
    """max |m^n - limit| and max |m^(2n) - limit|."""
    pn = None
    for t, p in iterated_powers(m, 2 * n):
        if t == n:
            pn = p
    return (pn - limit).max_abs(), (p - limit).max_abs()
