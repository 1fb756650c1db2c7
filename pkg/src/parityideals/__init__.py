"""Parity binomial edge ideals, permanental ideals and their Hilbert series."""

__version__ = "0.1.0"

from .poly import QQ, Field, ParseError, Polynomial, RingMap, RingSpec, TermOrder, apply_ring_map, parse_polynomial
from .groebner import GroebnerBasis, Ideal, ideal_membership, initial_ideal, normal_form, reduced_groebner_basis, s_polynomial
from .ideals import colon, contains, eliminate, ideal_equal, ideal_sum, image_ideal, intersect, saturate
from .hilbert import HilbertNumerator, hilbert_function, hilbert_numerator, krull_dim, monomial_hilbert_numerator
from .graphs import (Graph, chain_ideal, component_primes, determinantal_ideal, parity_ideal, parse_graph,
                     permanental_ideal, saturation_generators)
from .formulas import closed_form_numerator, extremal_betti, lemma_numerators, predicted_invariants
from .betti import BettiTable, alternating_sum, graded_betti, hilbert_rank_oracle
