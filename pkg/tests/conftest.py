import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kgraphs.graph import make_kgraph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def int_matrices(max_rows=5, max_cols=5, lo=-9, hi=9, square=False):
    @st.composite
    def build(draw):
        m = draw(st.integers(1, max_rows))
        n = m if square else draw(st.integers(1, max_cols))
        return [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(m)]
    return build()


@st.composite
def digraphs(draw, max_n=5, max_entry=2):
    """1-graphs with no zero rows."""
    n = draw(st.integers(1, max_n))
    rows = []
    for _ in range(n):
        row = [draw(st.integers(0, max_entry)) for _ in range(n)]
        if not any(row):
            row[draw(st.integers(0, n - 1))] = 1
        rows.append(row)
    return make_kgraph([rows])


@st.composite
def commuting_2graphs(draw, max_n=4):
    """Pairs of polynomials in one base matrix, so they commute."""
    from kgraphs.linalg.intmat import identity, matmul
    g = draw(digraphs(max_n=max_n))
    C = [list(r) for r in g.matrices[0]]
    n = len(C)
    powers = [identity(n), C, matmul(C, C)]
    mats = []
    for _ in range(2):
        coeffs = draw(st.lists(st.integers(0, 1), min_size=3, max_size=3).filter(any))
        A = [[sum(a * P[v][w] for a, P in zip(coeffs, powers)) for w in range(n)]
             for v in range(n)]
        if any(not any(r) for r in A):
            A = [[x + (v == w) for w, x in enumerate(r)] for v, r in enumerate(A)]
        mats.append(A)
    return make_kgraph(mats)


@pytest.fixture(scope="session")
def corpus():
    from kgraphs.oracle import random_corpus
    return random_corpus(500, seed=2024)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
