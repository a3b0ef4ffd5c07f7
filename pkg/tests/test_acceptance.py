"""Exit criteria for the package. Every check is exact; the tolerance is zero.

Run with ``pytest tests/test_acceptance.py -s`` to see one line per criterion
as it finishes; the lines are also repeated in the terminal summary.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from skolemchain.analysis import (
    check_ergodicity,
    decide_infinite_equality,
    query_scan,
    reverse_reduce,
)
from skolemchain.cli import main
from skolemchain.degeneracy import degeneracy_orders, sml_decompose
from skolemchain.kernel import Matrix
from skolemchain.lrs import Lrs, eval_range
from skolemchain.randomized import random_lrs, random_nondegenerate_lrs, random_stochastic
from skolemchain.reduction import Query, build_instance

SEED = 20240601
BATCH = 100
HORIZON = 30
F = Fraction


@pytest.fixture(scope="module")
def batch():
    """100 non-degenerate sequences of orders 1..6, numerators and denominators <= 10."""
    rng = random.Random(SEED)
    out = []
    for idx in range(BATCH):
        l = random_nondegenerate_lrs(rng, 1 + idx % 6, bound=10, initial="nonzero")
        inst, cert = build_instance(l, Query.EQUAL)
        out.append((l, inst, cert))
    return out


def test_criterion_1_order(batch, acceptance):
    bad = [l for l, inst, _ in batch if (inst.matrix.rows, inst.matrix.cols) != (l.order + 1,) * 2]
    orders = sorted({l.order for l, _, _ in batch})
    acceptance(1, "instance dimension is exactly (k+1)x(k+1)", not bad and len(batch) == BATCH,
               f"{BATCH - len(bad)}/{BATCH} instances, orders {orders}")


def test_criterion_2_ergodic_witness_one(batch, acceptance):
    ok = 0
    for _, inst, _ in batch:
        rep = check_ergodicity(inst.matrix)
        ok += inst.matrix.min_entry() > 0 and rep.ergodic and rep.witness == 1
    acceptance(2, "M strictly positive and ergodicity witness N = 1", ok == BATCH,
               f"{ok}/{BATCH}")


def test_criterion_3_correspondence(batch, acceptance):
    start = time.perf_counter()
    failures = 0
    for l, inst, cert in batch:
        terms = eval_range(l, HORIZON)
        power = Matrix.identity(inst.dimension)
        for n in range(1, HORIZON + 1):
            power = power @ inst.matrix
            if inst.entry(power) - inst.threshold != cert.eta * terms[n] / cert.rho**n:
                failures += 1
    elapsed = time.perf_counter() - start
    acceptance(3, "m_ij^(n) - r = eta u_n / rho^n for 1 <= n <= 30",
               failures == 0 and elapsed < 30,
               f"{BATCH * HORIZON - failures}/{BATCH * HORIZON} exact equalities in {elapsed:.1f}s")


def test_criterion_4_proof_identities(batch, acceptance):
    failures = []
    for idx, (l, inst, cert) in enumerate(batch):
        size = inst.dimension
        zero = Matrix.zeros(size)
        ident = Matrix.identity(size)
        S, C, D = cert.S, cert.C, cert.D
        if not (D @ S == zero and S @ D == zero):
            failures.append((idx, "DS = SD = O"))
        Mn, Dn, Cn = ident, ident, ident
        for n in range(1, HORIZON + 1):
            Mn, Dn, Cn = Mn @ inst.matrix, Dn @ D, Cn @ C
            if Dn.scale(cert.rho**n) != Cn - Cn @ S:
                failures.append((idx, f"rho^n D^n, n={n}"))
                break
            if Mn != S + Dn:
                failures.append((idx, f"M^n = S + D^n, n={n}"))
                break
    acceptance(4, "DS = SD = O, rho^n D^n = C^n - C^n S, M^n = S + D^n for n <= 30",
               not failures, f"{BATCH - len({i for i, _ in failures})}/{BATCH} instances")


def test_criterion_5_query_equivalence(acceptance):
    cases = [
        ("u_n = n - 2", Lrs((-1, 2), (-2, -1)), Query.EQUAL),
        ("order-1 decay", Lrs((F(1, 2),), (1,)), Query.LESS),
        ("Fibonacci", Lrs((1, 1), (1, 1)), Query.EQUAL),
    ]
    details, ok = [], True
    for name, l, query in cases:
        inst, _ = build_instance(l, query)
        terms = eval_range(l, 100)
        expected_hits = [n for n, u in enumerate(terms)
                         if (u == 0 if query is Query.EQUAL else u < 0)]
        power, markov_hits = Matrix.identity(inst.dimension), []
        for n in range(101):
            if query.holds(inst.entry(power), inst.threshold):
                markov_hits.append(n)
            power = power @ inst.matrix
        scan = query_scan(inst, 100)
        ok = ok and markov_hits == expected_hits
        ok = ok and scan.witness == (expected_hits[0] if expected_hits else None)
        details.append(f"{name}: witness {scan.witness}")
    linear, _ = build_instance(cases[0][1], Query.EQUAL)
    power = linear.matrix @ linear.matrix
    ok = ok and (linear.target, linear.source) == (1, 2)
    ok = ok and power[0, 1] == linear.threshold == F(1, 3)
    acceptance(5, "query_scan matches the LRS zero/sign pattern for n <= 100", ok,
               "; ".join(details))


def test_criterion_6_reverse_reduction(acceptance):
    rng = random.Random(SEED + 6)
    good = 0
    for idx in range(BATCH):
        dim = 1 + idx % 4
        m = random_stochastic(rng, dim)
        i, j = rng.randint(1, dim), rng.randint(1, dim)
        r = F(rng.randint(0, 10), rng.randint(1, 10))
        l, shift = reverse_reduce(m, i, j, r)
        terms = eval_range(l, 25)
        power = Matrix.identity(dim)
        for _ in range(shift):
            power = power @ m
        match = True
        for n in range(26):
            match = match and terms[n] == power[i - 1, j - 1] - r
            power = power @ m
        good += match
    acceptance(6, "reverse_reduce reproduces m_ij^(n) - r exactly for n <= 25", good == BATCH,
               f"{good}/{BATCH} random stochastic matrices")


CURATED = [
    # (matrix rows, i, j, r)
    ([[0, 1], [1, 0]], 1, 1, 0),
    ([[F(3, 4), F(1, 4)], [F(1, 4), F(3, 4)]], 1, 1, F(1, 2)),
    ([[1, 0], [0, 1]], 1, 1, 1),
    ([[0, 0, 1], [1, 0, 0], [0, 1, 0]], 1, 1, 0),
    ([[0, 0, 1], [1, 0, 0], [0, 1, 0]], 1, 1, F(1, 2)),
    ([[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]], 1, 2, F(1, 2)),
    ([[0, F(1, 2)], [1, F(1, 2)]], 1, 1, 0),
    ([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 1, 2, 1),
    ([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, F(1, 2), F(1, 2)], [0, 0, F(1, 2), F(1, 2)]], 3, 4, F(1, 2)),
    ([[F(5, 12), F(1, 6), F(5, 12)], [F(1, 4), F(7, 16), F(5, 16)], [F(1, 3), F(19, 48), F(13, 48)]],
     1, 1, F(1, 3)),
]


def brute_force_infinitely_often(m, i, j, r, n_max=200):
    power, hits = Matrix.identity(m.rows), []
    for n in range(n_max + 1):
        if power[i - 1, j - 1] == r:
            hits.append(n)
        power = power @ m
    # the curated chains either repeat a hit with period <= 3 or stop early
    return any(n > n_max // 2 for n in hits)


def test_criterion_7_infinite_equality(acceptance):
    agree, answers = 0, []
    for rows, i, j, r in CURATED:
        m = Matrix.from_rows(rows)
        decided = decide_infinite_equality(m, i, j, r)
        agree += decided == brute_force_infinitely_often(m, i, j, r)
        answers.append("T" if decided else "F")
    both = {"T", "F"} <= set(answers)
    acceptance(7, "decide_infinite_equality agrees with a 200-step scan",
               agree == len(CURATED) and both, f"{agree}/{len(CURATED)}, answers {''.join(answers)}")


def test_criterion_8_decomposition(acceptance):
    rng = random.Random(SEED + 8)
    good, degenerate = 0, 0
    for idx in range(BATCH):
        # small coefficients make roots of unity among the ratios common
        l = random_lrs(rng, 1 + idx % 4, bound=2, initial="any")
        degenerate += bool(degeneracy_orders(l))
        comps = sml_decompose(l)
        stride = comps[0].stride
        source = eval_range(l, 20 * stride + stride)
        good += all(
            not degeneracy_orders(c.component)
            and eval_range(c.component, 20) == source[c.offset::stride][:21]
            for c in comps
        )
    acceptance(8, "sml_decompose components non-degenerate and strided terms agree (n <= 20)",
               good == BATCH and degenerate > 0,
               f"{good}/{BATCH} sequences, {degenerate} of them degenerate")


def test_criterion_9_determinism(tmp_path, capsys, acceptance):
    inputs = {
        "fib": {"order": 2, "coefficients": ["1", "1"], "initial": ["1", "1"]},
        "rot": {"order": 2, "coefficients": ["-1", "0"], "initial": ["1", "2"]},
        "cube": {"order": 3, "coefficients": ["-1", "0", "0"], "initial": ["2", "-1", "3"]},
        "lin": {"order": 2, "coefficients": ["-1", "2"], "initial": ["-1", "0"]},
    }
    runs = []
    for run in ("a", "b"):
        files = {}
        for name, src in inputs.items():
            path = tmp_path / f"{name}.json"
            path.write_text(json.dumps(src))
            out = tmp_path / run / name
            for query in ("Equal", "Less"):
                assert main(["reduce", str(path), "--query", query, "--out", str(out / query)]) == 0
                for p in sorted((out / query).iterdir()):
                    files[f"{name}/{query}/{p.name}"] = p.read_bytes()
        capsys.readouterr()  # reduce echoes its output directory
        main(["selftest", "--seed", "9"])
        files["selftest"] = capsys.readouterr().out.encode()
        runs.append(files)
    same = runs[0] == runs[1]
    acceptance(9, "two pipeline runs produce byte-identical artifacts", same,
               f"{len(runs[0])} artifacts compared")
