from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skolemchain.analysis import (
    check_ergodicity,
    check_stochastic,
    decay_profile,
    decide_infinite_equality,
    query_scan,
    reverse_reduce,
    verify_certificate,
)
from skolemchain.kernel import Matrix, mat_pow
from skolemchain.lrs import Lrs, eval_range
from skolemchain.reduction import Query, build_instance

from conftest import sequences, stochastic_matrices

F = Fraction
HALF = Lrs((F(1, 2),), (1,))
FIB = Lrs((1, 1), (1, 1))
LINEAR = Lrs((-1, 2), (-2, -1))
MIX = Matrix.from_rows([[F(3, 4), F(1, 4)], [F(1, 4), F(3, 4)]])
SWAP = Matrix.from_rows([[0, 1], [1, 0]])


def brute_entries(m, i, j, r, n_max):
    out, power = [], Matrix.identity(m.rows)
    for _ in range(n_max + 1):
        out.append(power[i - 1, j - 1] - r)
        power = power @ m
    return out


def test_verify_order_one():
    inst, cert = build_instance(HALF, Query.LESS)
    report = verify_certificate(HALF, inst, cert, 10)
    assert report.overall
    corr = next(c for c in report.checks if c.name == "correspondence")
    assert "n=1: 3/4" in corr.detail and "n=3: 9/16" in corr.detail


def test_verify_detects_tampered_threshold():
    inst, cert = build_instance(HALF, Query.LESS)
    report = verify_certificate(HALF, replace(inst, threshold=F(1, 3)), cert, 10)
    assert not report.overall
    assert "correspondence" in [c.name for c in report.failed()]


def test_verify_fibonacci_horizon_20():
    inst, cert = build_instance(FIB)
    report = verify_certificate(FIB, inst, cert, 20)
    assert report.overall and report.horizon == 20
    assert set(report.to_dict()["checks"]) >= {
        "column-sums", "strict-positivity", "decomposition", "annihilation", "stationarity",
        "power-separation", "disturbance-powers", "block-powers", "correspondence", "n0-edge",
    }


def test_verify_detects_corrupted_disturbance():
    inst, cert = build_instance(FIB)
    bad = list(cert.D.entries)
    bad[0] += F(1, 1000)
    report = verify_certificate(FIB, inst, replace(cert, D=Matrix(3, 3, tuple(bad))), 5)
    assert {"decomposition", "disturbance"} <= {c.name for c in report.failed()}


def test_verify_n0_edge_flags_spurious_less_witness():
    inst, cert = build_instance(LINEAR, Query.EQUAL)  # j = 2, so m_12^(0) = 0 < r
    report = verify_certificate(LINEAR, replace(inst, query=Query.LESS), cert, 5)
    assert [c.name for c in report.failed()] == ["n0-edge"]


def test_verify_dimension_mismatch():
    inst, cert = build_instance(FIB)
    with pytest.raises(ValueError):
        verify_certificate(HALF, inst, cert, 5)


@pytest.mark.parametrize("m,ergodic,witness", [
    (MIX, True, 1),
    (Matrix.identity(2), False, None),
    (SWAP, False, None),
    (Matrix.from_rows([[0, F(1, 2)], [1, F(1, 2)]]), True, 2),
])
def test_check_ergodicity(m, ergodic, witness):
    rep = check_ergodicity(m)
    assert rep.ergodic == ergodic and rep.witness == witness
    if not ergodic:
        assert rep.pattern


def test_check_ergodicity_witness_is_least():
    # oracle: exact powering until every entry is positive
    m = Matrix.from_rows([[0, 0, F(1, 2)], [1, 0, 0], [0, 1, F(1, 2)]])
    n = next(n for n in range(1, 20) if mat_pow(m, n).min_entry() > 0)
    assert check_ergodicity(m).witness == n


def test_check_ergodicity_rejects_non_stochastic():
    with pytest.raises(ValueError):
        check_ergodicity(Matrix.from_rows([[1, 1], [1, 0]]))
    with pytest.raises(ValueError):
        check_stochastic(Matrix.from_rows([[F(3, 2), 0], [F(-1, 2), 1]]))


def test_reverse_mix():
    l, start = reverse_reduce(MIX, 1, 1, F(1, 2))
    assert start == 0 and l.order == 3
    # (x-1)(x^2 - 3/2 x + 1/2) = x^3 - 5/2 x^2 + 2x - 1/2
    assert l.coefficients == (F(1, 2), -2, F(5, 2))
    assert eval_range(l, 15) == [F(1, 2 ** (n + 1)) for n in range(16)]


def test_reverse_threshold_zero():
    l, start = reverse_reduce(MIX, 1, 2, 0)
    assert eval_range(l, 15) == brute_entries(MIX, 1, 2, 0, 15 + start)[start:]


def test_reverse_singular():
    m = Matrix.from_rows([[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]])
    l, start = reverse_reduce(m, 1, 2, F(1, 2))
    assert start >= 1 and l.coefficients[0] != 0
    assert eval_range(l, 10) == [0] * 11


def test_reverse_rejects_bad_input():
    with pytest.raises(ValueError):
        reverse_reduce(MIX, 3, 1, 0)
    with pytest.raises(ValueError):
        reverse_reduce(Matrix.from_rows([[1, 2], [3, 4]]), 1, 1, 0)


@settings(max_examples=60, deadline=None)
@given(stochastic_matrices(), st.data())
def test_reverse_reproduces_entries(m, data):
    i = data.draw(st.integers(1, m.rows))
    j = data.draw(st.integers(1, m.rows))
    r = data.draw(st.fractions(min_value=0, max_value=1, max_denominator=10))
    l, start = reverse_reduce(m, i, j, r)
    assert l.coefficients[0] != 0
    assert eval_range(l, 25) == brute_entries(m, i, j, r, 25 + start)[start:]


@pytest.mark.parametrize("m,i,j,r,expected", [
    (SWAP, 1, 1, 0, True),
    (MIX, 1, 1, F(1, 2), False),
    (Matrix.identity(2), 1, 1, 1, True),
])
def test_decide_infinite_equality(m, i, j, r, expected):
    assert decide_infinite_equality(m, i, j, r) is expected
    hits = [n for n, v in enumerate(brute_entries(m, i, j, r, 200)) if v == 0]
    assert any(n > 100 for n in hits) is expected


def test_query_scan_examples():
    assert query_scan(build_instance(LINEAR, Query.EQUAL)[0], 100).witness == 2
    assert query_scan(build_instance(HALF, Query.LESS)[0], 100).witness is None
    assert query_scan(build_instance(FIB, Query.EQUAL)[0], 100).witness is None


def test_query_scan_reports_all_hits_for_infinitely_often():
    alt = Lrs((F(-1, 2),), (1,))  # 1, -1/2, 1/4, ...: negative at odd n
    inst, _ = build_instance(alt, Query.INFINITELY_OFTEN_LESS)
    result = query_scan(inst, 20)
    assert result.hits == tuple(range(1, 21, 2))
    assert "decides nothing" in result.render()


@settings(max_examples=30, deadline=None)
@given(sequences(max_order=3, bound=5, initial="nonzero"))
def test_scan_round_trip(l):
    terms = eval_range(l, 60)
    inst, _ = build_instance(l, Query.EQUAL)
    zero_at = next((n for n, u in enumerate(terms) if u == 0), None)
    assert query_scan(inst, 60).witness == zero_at
    if all(u > 0 for u in l.initial):
        inst, _ = build_instance(l, Query.LESS)
        neg_at = next((n for n, u in enumerate(terms) if u < 0), None)
        assert query_scan(inst, 60).witness == neg_at
        inst, _ = build_instance(l, Query.INFINITELY_OFTEN_LESS)
        assert query_scan(inst, 60).hits == tuple(n for n, u in enumerate(terms) if u < 0)


@settings(max_examples=20, deadline=None)
@given(sequences(max_order=4, initial="nonzero"))
def test_built_instances_verify_and_decay(l):
    inst, cert = build_instance(l)
    assert verify_certificate(l, inst, cert, 30).overall
    assert check_ergodicity(inst.matrix).witness == 1
    at_n, at_2n = decay_profile(inst.matrix, cert.S, 10)
    assert at_2n < at_n
