from fractions import Fraction

import pytest
from hypothesis import strategies as st

from skolemchain.kernel import Matrix, Polynomial
from skolemchain.lrs import Lrs

ACCEPTANCE_LINES = []


def small_rationals(bound=10, nonzero=False):
    s = st.fractions(min_value=-bound, max_value=bound, max_denominator=bound)
    return s.filter(lambda x: x != 0) if nonzero else s


@st.composite
def square_matrices(draw, max_dim=4, bound=5):
    n = draw(st.integers(1, max_dim))
    entries = draw(st.lists(small_rationals(bound), min_size=n * n, max_size=n * n))
    return Matrix(n, n, tuple(entries))


@st.composite
def polynomials(draw, max_degree=4, bound=5, nonzero=True):
    deg = draw(st.integers(0 if nonzero else -1, max_degree))
    coeffs = draw(st.lists(small_rationals(bound), min_size=deg + 1, max_size=deg + 1))
    if coeffs and coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return Polynomial(tuple(coeffs))


@st.composite
def sequences(draw, max_order=4, bound=10, initial="any"):
    k = draw(st.integers(1, max_order))
    coeffs = [draw(small_rationals(bound, nonzero=True))]
    coeffs += draw(st.lists(small_rationals(bound), min_size=k - 1, max_size=k - 1))
    if initial == "positive":
        init = draw(st.lists(st.fractions(min_value=Fraction(1, bound), max_value=bound,
                                          max_denominator=bound), min_size=k, max_size=k))
    else:
        init = draw(st.lists(small_rationals(bound, nonzero=initial == "nonzero"),
                             min_size=k, max_size=k))
    return Lrs(tuple(coeffs), tuple(init))


@st.composite
def stochastic_matrices(draw, max_dim=4, bound=10):
    n = draw(st.integers(1, max_dim))
    cols = []
    for _ in range(n):
        w = draw(st.lists(st.integers(0, bound), min_size=n, max_size=n).filter(any))
        cols.append([Fraction(x, sum(w)) for x in w])
    return Matrix.from_rows([[cols[b][a] for b in range(n)] for a in range(n)])


@pytest.fixture
def acceptance():
    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
