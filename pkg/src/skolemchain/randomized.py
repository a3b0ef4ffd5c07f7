"""Seeded generators of random sequences and chains, and the selftest suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .analysis import check_ergodicity, reverse_reduce, verify_certificate
from .degeneracy import degeneracy_orders, sml_decompose
from .kernel import Matrix, char_poly, cyclotomic, mat_pow, Polynomial
from .lrs import Lrs, companion_matrix, eval_range, stride_subsequence
from .reduction import build_instance


def random_rational(rng: random.Random, bound: int = 10, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x != 0 or not nonzero:
            return x


def random_lrs(rng: random.Random, order: int, bound: int = 10, initial: str = "nonzero") -> Lrs:
    """``initial`` is one of "any", "nonzero", "positive"."""
    coeffs = [random_rational(rng, bound, nonzero=True)]
    coeffs += [random_rational(rng, bound) for _ in range(order - 1)]
    if initial == "positive":
        init = [Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(order)]
    else:
        init = [random_rational(rng, bound, nonzero=initial == "nonzero") for _ in range(order)]
    return Lrs(tuple(coeffs), tuple(init))


def random_nondegenerate_lrs(rng: random.Random, order: int, bound: int = 10,
                             initial: str = "nonzero") -> Lrs:
    while True:
        l = random_lrs(rng, order, bound, initial)
        if not degeneracy_orders(l):
            return l


def random_stochastic(rng: random.Random, dim: int, bound: int = 10, zero_prob: float = 0.3) -> Matrix:
    cols = []
    for _ in range(dim):
        while True:
            weights = [0 if rng.random() < zero_prob else rng.randint(1, bound) for _ in range(dim)]
            if sum(weights):
                break
        total = sum(weights)
        cols.append([Fraction(w, total) for w in weights])
    return Matrix.from_rows([[cols[b][a] for b in range(dim)] for a in range(dim)])


def random_matrix(rng: random.Random, dim: int, bound: int = 10) -> Matrix:
    return Matrix(dim, dim, tuple(random_rational(rng, bound) for _ in range(dim * dim)))


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0

    def record(self, ok: bool):
        self.total += 1
        self.passed += bool(ok)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: {self.passed}/{self.total}"


def run_selftest(seed: int = 0, count: int = 20) -> list[SuiteResult]:
    rng = random.Random(seed)
    suites = []

    s = SuiteResult("mat_pow exponent additivity")
    for _ in range(count):
        m = random_matrix(rng, rng.randint(1, 4), bound=3)
        a, b = rng.randint(0, 6), rng.randint(0, 6)
        s.record(mat_pow(m, a + b) == mat_pow(m, a) @ mat_pow(m, b))
    suites.append(s)

    s = SuiteResult("Cayley-Hamilton")
    for _ in range(count):
        m = random_matrix(rng, rng.randint(1, 5), bound=5)
        s.record(char_poly(m)(m).is_zero())
    suites.append(s)

    s = SuiteResult("cyclotomic product x^m - 1")
    for m in range(1, count + 1):
        prod = Polynomial((1,))
        for d in range(1, m + 1):
            if m % d == 0:
                prod = prod * cyclotomic(d)
        s.record(prod == Polynomial((-1,) + (0,) * (m - 1) + (1,)))
    suites.append(s)

    s = SuiteResult("companion matrix vs recurrence")
    for _ in range(count):
        l = random_lrs(rng, rng.randint(1, 5), initial="any")
        terms = eval_range(l, 15)
        A = companion_matrix(l)
        u = Matrix.column(l.initial)
        s.record(all((mat_pow(A, n) @ u)[0, 0] == terms[n] for n in range(16)))
    suites.append(s)

    s = SuiteResult("stride subsequence agreement")
    for _ in range(count):
        l = random_lrs(rng, rng.randint(1, 4), initial="any")
        stride = rng.randint(1, 3)
        c = rng.randrange(stride)
        sub = stride_subsequence(l, stride, c)
        s.record(eval_range(sub, 10) == eval_range(l, 10 * stride + c)[c::stride])
    suites.append(s)

    s = SuiteResult("decomposition components non-degenerate")
    for _ in range(count):
        l = random_lrs(rng, rng.randint(1, 4), bound=3, initial="any")
        comps = sml_decompose(l)
        terms = eval_range(l, 20 * comps[0].stride)
        s.record(all(
            not degeneracy_orders(c.component)
            and eval_range(c.component, 20) == terms[c.offset::c.stride][:21]
            for c in comps
        ))
    suites.append(s)

    s = SuiteResult("reduction certificate verifies")
    for _ in range(count):
        l = random_nondegenerate_lrs(rng, rng.randint(1, 4))
        inst, cert = build_instance(l)
        ok = verify_certificate(l, inst, cert, 30).overall
        ok = ok and check_ergodicity(inst.matrix).witness == 1
        s.record(ok and inst.dimension == l.order + 1)
    suites.append(s)

    s = SuiteResult("reverse reduction reproduces entries")
    for _ in range(count):
        dim = rng.randint(1, 4)
        m = random_stochastic(rng, dim)
        i, j = rng.randint(1, dim), rng.randint(1, dim)
        r = Fraction(rng.randint(0, 10), rng.randint(1, 10))
        l, shift = reverse_reduce(m, i, j, r)
        terms = eval_range(l, 25)
        power = mat_pow(m, shift)
        ok = True
        for n in range(26):
            ok = ok and terms[n] == power[i - 1, j - 1] - r
            power = power @ m
        s.record(ok)
    suites.append(s)

    return suites
