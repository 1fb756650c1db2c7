from math import comb

import pytest

from parityideals.betti import (
    BettiTable,
    DeskScaleExceeded,
    FIXTURE_SHA256,
    QuotientRing,
    _entries_digest,
    alternating_sum,
    betti_number,
    graded_betti,
    hilbert_rank_oracle,
    load_k7_fixture,
    monomials_of_degree,
)
from parityideals.formulas import closed_form_numerator, extremal_betti, predicted_invariants
from parityideals.graphs import complete_parity_ideal, m_ideal, prime_P
from parityideals.groebner import Ideal, initial_ideal
from parityideals.hilbert import hilbert_function, hilbert_numerator
from parityideals.poly import Field, RingSpec

from oracles import series_coefficients


def test_monomials_of_degree_count():
    for N in (1, 3, 6):
        for d in range(5):
            assert len(monomials_of_degree(N, d)) == comb(N + d - 1, d)


def test_quotient_ring_dims():
    I = complete_parity_ideal(3)
    Q = QuotientRing(I)
    H = hilbert_function(hilbert_numerator(I), 6)
    assert [Q.dim(d) for d in range(7)] == H


def test_betti_K3_is_koszul():
    # three quadrics in a complete intersection: Koszul complex on them
    B = graded_betti(complete_parity_ideal(3), row_max=4)
    assert B.entries == {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1}
    p = predicted_invariants(3)
    assert (B.reg, B.pd, B.depth) == (p.reg, p.pd, p.depth) == (3, 3, 3)


def test_betti_maximal_ideal():
    # R/(x1, y1, x2, y2) is resolved by the Koszul complex on four linear forms
    B = graded_betti(m_ideal(2, [1, 2]), row_max=2)
    assert B.entries == {(i, i): comb(4, i) for i in range(5)}


def test_betti_P12_hypersurface_section():
    B = graded_betti(prime_P(3, 1, 2), row_max=3)
    # (x3, y3) and one quadric: Koszul on degrees 1, 1, 2
    assert B.entries == {(0, 0): 1, (1, 1): 2, (1, 2): 1, (2, 2): 1, (2, 3): 2, (3, 4): 1}


def test_betti_number_single():
    I = complete_parity_ideal(4)
    assert betti_number(I, 1, 2) == 6
    assert betti_number(I, 0, 0) == 1
    assert betti_number(I, 1, 3) == 0


def test_betti_K4_table():
    I = complete_parity_ideal(4)
    B = graded_betti(I, row_max=4)
    assert alternating_sum(B) == closed_form_numerator(4)
    assert B[(5, 8)] == extremal_betti(4) == 3
    p = predicted_invariants(4)
    assert (B.reg, B.pd, B.depth) == (p.reg, p.pd, p.depth)
    # initial ideal: same Hilbert series, Betti numbers can only go up
    Bi = graded_betti(initial_ideal(I), row_max=4)
    assert alternating_sum(Bi) == closed_form_numerator(4)
    assert all(Bi[k] >= v for k, v in B.entries.items())


def test_alternating_sum_n3():
    B = graded_betti(complete_parity_ideal(3), row_max=3)
    assert alternating_sum(B) == closed_form_numerator(3)


def test_modp_matches_exact():
    I = complete_parity_ideal(3)
    exact = graded_betti(I, row_max=3)
    modp = graded_betti(I, row_max=3, method="modp")
    assert exact.entries == modp.entries
    assert modp.crosschecked


def test_finite_field_coefficients():
    F = Field(101)
    B = graded_betti(complete_parity_ideal(3, F), row_max=3)
    assert B.entries == {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1}


def test_cap_exceeded():
    with pytest.raises(DeskScaleExceeded, match="desk-scale exceeded"):
        graded_betti(complete_parity_ideal(4), row_max=3, cap=50)
    with pytest.raises(DeskScaleExceeded):
        hilbert_rank_oracle(complete_parity_ideal(3), 6, cap=50)


def test_argument_errors():
    I = complete_parity_ideal(3)
    with pytest.raises(ValueError):
        graded_betti(I)
    with pytest.raises(ValueError):
        graded_betti(I, i_max=7, row_max=2)
    with pytest.raises(ValueError):
        graded_betti(I, row_max=2, method="magic")
    R = RingSpec(2)
    with pytest.raises(ValueError):
        graded_betti(Ideal(R, [R.parse("x1 - y1^2")]), row_max=2)


def test_rank_oracle_values():
    H = hilbert_rank_oracle(complete_parity_ideal(3), 6)
    # (1 + t)^3 / (1 - t)^3
    assert H == [1, 6, 18, 38, 66, 102, 146]
    assert H == series_coefficients((1, 0, -3, 0, 3, 0, -1), 6, 6)
    R = RingSpec(2)
    assert hilbert_rank_oracle(Ideal(R, []), 3) == [comb(d + 3, 3) for d in range(4)]


def test_table_json_roundtrip_and_format():
    B = graded_betti(complete_parity_ideal(3), row_max=4)
    again = BettiTable.from_json(B.to_json())
    assert again.entries == B.entries and again.arity == 6
    lines = B.format().splitlines()
    assert lines[1].split() == ["total:", "1", "3", "3", "1"]
    assert lines[2].split() == ["0:", "1", ".", ".", "."]
    assert lines[-1].split() == ["3:", ".", ".", ".", "1"]


def test_fixture_k7():
    B = load_k7_fixture()
    assert B.arity == 14 and B.n == 7
    assert B[(1, 2)] == 21
    assert B[(11, 14)] == 15 == extremal_betti(7)
    assert B.pd == 11 and B.reg == 3
    assert alternating_sum(B) == closed_form_numerator(7)
    N = alternating_sum(B)
    assert N.coefficient(2) == -21 and N.coefficient(14) == -15


def test_fixture_digest_is_pinned():
    B = load_k7_fixture()
    rows = [[i, j, v] for (i, j), v in B.entries.items()]
    assert _entries_digest(rows) == FIXTURE_SHA256
    rows[0][2] += 1
    assert _entries_digest(rows) != FIXTURE_SHA256
