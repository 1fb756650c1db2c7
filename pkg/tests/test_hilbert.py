import pytest

from parityideals.betti import hilbert_rank_oracle
from parityideals.formulas import closed_form_numerator
from parityideals.graphs import (
    Graph,
    chain_ideal,
    complete_parity_ideal,
    lemma_A_ideal,
    m_ideal,
    p_minus,
    p_plus,
    prime_P,
    saturation_generators,
)
from parityideals.groebner import Ideal, initial_ideal
from parityideals.hilbert import (
    HilbertNumerator,
    hilbert_function,
    hilbert_numerator,
    krull_dim,
    monomial_hilbert_numerator,
    monomial_numerator,
)
from parityideals.poly import RingSpec, TermOrder

from oracles import numerator_from_hilbert_function, series_coefficients


def test_monomial_numerator_small():
    assert monomial_numerator([(2,)], 1).coefficients == (1, 0, -1)
    assert monomial_numerator([(1, 0), (0, 1)], 2).coefficients == (1, -2, 1)
    assert monomial_numerator([], 3).coefficients == (1,)


def test_monomial_numerator_of_in_IK3():
    I = complete_parity_ideal(3)
    M = initial_ideal(I)
    N = monomial_hilbert_numerator(M)
    # oracle: rank-based Hilbert function of in(I) and interpolation against (1-t)^6
    H = hilbert_rank_oracle(M, 9)
    assert N.coefficients == numerator_from_hilbert_function(H, 6) == (1, 0, -3, 0, 3, 0, -1)


def test_monomial_numerator_rejects_binomials():
    with pytest.raises(ValueError, match="non-monomial"):
        monomial_hilbert_numerator(complete_parity_ideal(3))


def test_hilbert_numerator_examples():
    for n in (3, 4, 5):
        for k in range(1, n):
            N = hilbert_numerator(prime_P(n, k, n))
            want = HilbertNumerator(series_free_expand_1pt(n), 2 * n)
            assert N == want
    assert hilbert_numerator(complete_parity_ideal(3)).coefficients == (1, 0, -3, 0, 3, 0, -1)
    assert hilbert_numerator(Ideal(RingSpec(3), [])).coefficients == (1,)


def series_free_expand_1pt(n):
    """(1 + t)(1 - t)^(2n-3) by repeated multiplication."""
    c = [1, 1]
    for _ in range(2 * n - 3):
        c = [a - b for a, b in zip(c + [0], [0] + c)]
    return tuple(c)


def test_hilbert_numerator_rejects_inhomogeneous_and_aux():
    R = RingSpec(2)
    with pytest.raises(ValueError, match="inhomogeneous"):
        hilbert_numerator(Ideal(R, [R.parse("x1^2 - y1")]))
    E = RingSpec(2, ("t",))
    with pytest.raises(ValueError, match="auxiliary"):
        hilbert_numerator(Ideal(E, [E.parse("x1")]))


def test_hilbert_function_examples():
    m = m_ideal(3, [1, 2, 3])
    assert hilbert_function(hilbert_numerator(m), 4) == [1, 0, 0, 0, 0]
    H = hilbert_function(hilbert_numerator(complete_parity_ideal(3)), 6)
    # H(2) = C(7, 5) - 3 = 21 - 3
    assert H[:3] == [1, 6, 18]
    assert H == series_coefficients((1, 0, -3, 0, 3, 0, -1), 6, 6)
    P12 = hilbert_numerator(prime_P(3, 1, 2))
    assert hilbert_function(P12, 3) == [1, 4, 9, 16]
    assert hilbert_function(P12, 10) == [(d + 1) ** 2 for d in range(11)]


def test_krull_dim_examples():
    assert krull_dim(hilbert_numerator(complete_parity_ideal(3))) == 3
    assert krull_dim(hilbert_numerator(Ideal(RingSpec(3), []))) == 6
    assert krull_dim(hilbert_numerator(m_ideal(3, [1, 2, 3]))) == 0
    assert krull_dim(hilbert_numerator(p_plus(4))) == 4


def corpus(n):
    out = [complete_parity_ideal(n), saturation_generators(Graph.complete(n)), p_plus(n),
           p_minus(n), lemma_A_ideal(n)]
    out += [prime_P(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [chain_ideal(n, k) for k in range(n)]
    return out


ORDER_CORPUS = corpus(3) + corpus(4)


def test_order_corpus_size():
    assert len(ORDER_CORPUS) >= 20


@pytest.mark.parametrize("I", ORDER_CORPUS, ids=lambda I: f"{I.name}-n{I.ring.n}")
def test_numerator_order_invariance(I):
    lex = hilbert_numerator(I, TermOrder.lex(I.ring))
    drl = hilbert_numerator(I, TermOrder.degrevlex(I.ring))
    assert lex == drl


@pytest.mark.parametrize("n", [3, 4])
def test_oracle_agreement(n):
    for I in (complete_parity_ideal(n), prime_P(n, 1, 2), p_minus(n), chain_ideal(n, 1)):
        H = hilbert_function(hilbert_numerator(I), 2 * n)
        assert H == hilbert_rank_oracle(I, 2 * n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_closed_form_matches_groebner(n):
    assert hilbert_numerator(complete_parity_ideal(n)) == closed_form_numerator(n)


def test_format():
    assert str(HilbertNumerator((1, 0, -3, 0, 3, 0, -1), 6)) == "1 - 3*t^2 + 3*t^4 - t^6"
    assert str(HilbertNumerator((0, 2, -1), 2)) == "2*t - t^2"
