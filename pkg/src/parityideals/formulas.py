"""Closed-form predictions for the parity binomial edge ideal of K_n."""

from __future__ import annotations

from dataclasses import dataclass

from .hilbert import (
    HilbertNumerator,
    one_minus_t_pow,
    tpoly_add,
    tpoly_mul,
    tpoly_shift,
)

N_CAP = 64
LEMMA_TAGS = ("lem01", "lem02", "lemA")


def _check_n(n: int, cap: int = N_CAP):
    if n < 3:
        raise ValueError(f"formulas require n >= 3, got n={n}")
    if n > cap:
        raise ValueError(f"n={n} exceeds the configured cap {cap}")


def closed_form_coefficients(n: int) -> tuple:
    """2(1-t)^n + [-1 + 3t + (n^2+n-6)/2 t^2 + (n^2-3n+2)/2 t^3] (1-t)^(2n-3)."""
    bracket = (-1, 3, (n * n + n - 6) // 2, (n * n - 3 * n + 2) // 2)
    return tpoly_add(tpoly_mul((2,), one_minus_t_pow(n)),
                     tpoly_mul(bracket, one_minus_t_pow(2 * n - 3)))


def closed_form_numerator(n: int, cap: int = N_CAP) -> HilbertNumerator:
    _check_n(n, cap)
    return HilbertNumerator(closed_form_coefficients(n), 2 * n)


def base_numerator_K2() -> HilbertNumerator:
    """k[x1,x2,y1,y2] / (x1 x2 - y1 y2): a single quadric."""
    return HilbertNumerator((1, 0, -1), 4)


def lemma_numerators(n: int, which: str, cap: int = N_CAP) -> HilbertNumerator:
    """Numerators of R/P_kn ("lem01"), R/(I_{n-2} : (x_n + y_n)) ("lem02")
    and R/(x_n + y_n, I_{n-2}) ("lemA")."""
    _check_n(n, cap)
    if which == "lem01":
        c = tpoly_mul((1, 1), one_minus_t_pow(2 * n - 3))
    elif which == "lem02":
        c = tpoly_add(one_minus_t_pow(n), tpoly_shift(tpoly_mul((2,), one_minus_t_pow(2 * n - 3)), 1))
    elif which == "lemA":
        prev = closed_form_coefficients(n - 1) if n >= 4 else base_numerator_K2().coefficients
        c = tpoly_add(tpoly_shift(one_minus_t_pow(n), 1), tpoly_mul(one_minus_t_pow(2), prev))
    else:
        raise ValueError(f"unknown lemma tag {which!r}; expected one of {LEMMA_TAGS}")
    return HilbertNumerator(c, 2 * n)


def exact_sequence_assembly(n: int, cap: int = N_CAP) -> HilbertNumerator:
    """(n-2) t^2 (1+t)(1-t)^(2n-3) + 2t(1-t)^n + 2t^2(1-t)^(2n-3) + (1-t)^2 P_{n-1}."""
    if n < 4:
        raise ValueError("the recursive assembly needs n >= 4")
    _check_n(n, cap)
    chain = tpoly_shift(tpoly_mul((n - 2, n - 2), one_minus_t_pow(2 * n - 3)), 2)
    colon_part = tpoly_add(tpoly_shift(tpoly_mul((2,), one_minus_t_pow(n)), 1),
                           tpoly_shift(tpoly_mul((2,), one_minus_t_pow(2 * n - 3)), 2))
    rest = tpoly_mul(one_minus_t_pow(2), closed_form_coefficients(n - 1))
    return HilbertNumerator(tpoly_add(tpoly_add(chain, colon_part), rest), 2 * n)


def extremal_betti(n: int) -> int:
    """beta_{2n-3, 2n} = (n^2 - 3n + 2) / 2."""
    _check_n(n, 10 ** 9)
    return (n * n - 3 * n + 2) // 2


@dataclass(frozen=True)
class InvariantPrediction:
    n: int
    dim: int
    depth: int
    reg: int
    pd: int
    extremal_betti: int

    def __post_init__(self):
        assert self.depth + self.pd == 2 * self.n, "Auslander-Buchsbaum"
        assert self.pd + self.reg == 2 * self.n


def predicted_invariants(n: int) -> InvariantPrediction:
    _check_n(n)
    return InvariantPrediction(n=n, dim=n, depth=3, reg=3, pd=2 * n - 3,
                               extremal_betti=extremal_betti(n))
