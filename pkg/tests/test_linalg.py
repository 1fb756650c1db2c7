from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from parityideals.linalg import Echelon, rank_mod_p, sparse_rank
from parityideals.poly import Field


def dense(rows, ncols):
    return sp.Matrix([[r.get(c, 0) for c in range(ncols)] for r in rows])


def test_rank_small():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: Fraction(1, 3)}]
    assert sparse_rank(rows) == 2
    assert sparse_rank([]) == 0
    assert sparse_rank([{}]) == 0


def test_rank_depends_on_characteristic():
    rows = [{0: 1, 1: 1}, {0: 1, 1: -1}]
    assert sparse_rank(rows) == 2
    assert sparse_rank(rows, Field(2)) == 1
    assert rank_mod_p(rows, 2) == 1


def test_echelon_add_reports_growth():
    E = Echelon()
    assert E.add({0: 1, 3: 2})
    assert not E.add({0: 3, 3: 6})
    assert E.add({3: 1})
    assert E.rank == 2
    assert not E.reduce({0: 5, 3: -1})


rows_strategy = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=6), max_size=7)


@settings(max_examples=60, deadline=None)
@given(rows_strategy)
def test_rank_matches_sympy(rows):
    assert sparse_rank(rows) == dense(rows, 6).rank()


@settings(max_examples=40, deadline=None)
@given(rows_strategy)
def test_mod_p_rank_bounded_by_rational_rank(rows):
    r = sparse_rank(rows)
    assert rank_mod_p(rows, 5) <= r
    assert rank_mod_p(rows) == r  # entries are tiny, so 2^31 - 1 cannot divide a minor
