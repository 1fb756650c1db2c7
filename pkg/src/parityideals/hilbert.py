"""Hilbert-Poincare numerators, Hilbert functions and Krull dimension.

The numerator of R/I is computed on an initial ideal with the pivot
recursion  N(M) = N(M + (x)) + t * N(M : x).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .groebner import Ideal, initial_ideal
from .poly import TermOrder, mono_divides


# --------------------------------------------------------------------------
# integer polynomials in t, as coefficient tuples (index = power of t)
# --------------------------------------------------------------------------

def _trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def tpoly_add(a, b) -> tuple:
    n = max(len(a), len(b))
    return _trim((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n))


def tpoly_neg(a) -> tuple:
    return tuple(-v for v in a)


def tpoly_sub(a, b) -> tuple:
    return tpoly_add(a, tpoly_neg(b))


def tpoly_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _trim(out)


def tpoly_shift(a, k: int) -> tuple:
    """Multiply by t^k."""
    return _trim((0,) * k + tuple(a)) if a else ()


def one_minus_t_pow(k: int) -> tuple:
    """(1 - t)^k."""
    return tuple((-1) ** i * comb(k, i) for i in range(k + 1))


def tpoly_format(c, var: str = "t") -> str:
    parts = []
    for k, v in enumerate(c):
        if not v:
            continue
        mag = abs(v)
        if k == 0:
            body = str(mag)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if mag == 1 else f"{mag}*{mon}"
        if not parts:
            parts.append(("-" if v < 0 else "") + body)
        else:
            parts.append(("- " if v < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HilbertNumerator:
    """Numerator N(t) of the Hilbert-Poincare series N(t) / (1 - t)^arity."""

    coefficients: tuple
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(int(v) for v in self.coefficients))

    def __call__(self, t):
        return sum(c * t ** k for k, c in enumerate(self.coefficients))

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self):
        return tpoly_format(self.coefficients)

    def root_multiplicity_at_one(self) -> int:
        c = self.coefficients
        if not c:
            raise ValueError("zero numerator")
        mult = 0
        while sum(c) == 0:
            # synthetic division by (1 - t): q_k = sum_{i<=k} c_i, negated leading
            q = []
            acc = 0
            for v in c[:-1]:
                acc += v
                q.append(acc)
            c = _trim(q)
            mult += 1
        return mult


# --------------------------------------------------------------------------
# monomial ideals
# --------------------------------------------------------------------------

def _minimalize(mons) -> frozenset:
    mons = sorted(set(mons), key=sum)
    keep: list = []
    for m in mons:
        if not any(mono_divides(k, m) for k in keep):
            keep.append(m)
    return frozenset(keep)


def _pairwise_coprime(mons) -> bool:
    used = 0
    for m in mons:
        mask = 0
        for k, e in enumerate(m):
            if e:
                mask |= 1 << k
        if mask & used:
            return False
        used |= mask
    return True


def _numerator(mons: frozenset, memo: dict) -> tuple:
    hit = memo.get(mons)
    if hit is not None:
        return hit
    if not mons:
        result = (1,)
    elif _pairwise_coprime(mons):
        result = (1,)
        for m in mons:
            result = tpoly_mul(result, tpoly_sub((1,), tpoly_shift((1,), sum(m))))
    else:
        counts = Counter(k for m in mons if sum(m) > 1 for k, e in enumerate(m) if e)
        var = max(counts, key=lambda k: (counts[k], -k))
        nv = len(next(iter(mons)))
        xv = tuple(1 if k == var else 0 for k in range(nv))
        plus = _minimalize([m for m in mons if not m[var]] + [xv])
        quot = _minimalize([tuple(e - 1 if k == var and e else e for k, e in enumerate(m))
                            for m in mons])
        result = tpoly_add(_numerator(plus, memo), tpoly_shift(_numerator(quot, memo), 1))
    memo[mons] = result
    return result


def monomial_numerator(monomials: Sequence[tuple], nvars: int) -> HilbertNumerator:
    """Numerator for k[nvars variables] / (monomials), standard grading."""
    for m in monomials:
        if len(m) != nvars:
            raise ValueError("monomial length does not match the variable count")
    return HilbertNumerator(_numerator(_minimalize(tuple(m) for m in monomials), {}), nvars)


def _graded_check(I: Ideal):
    if I.ring.aux:
        raise ValueError("Hilbert series are only defined over the graded base ring "
                         f"(found auxiliary variables {I.ring.aux})")


def monomial_hilbert_numerator(M: Ideal) -> HilbertNumerator:
    _graded_check(M)
    mons = []
    for g in M.generators:
        if not g.is_monomial():
            raise ValueError(f"non-monomial generator {g}")
        mons.append(next(iter(g.terms)))
    return monomial_numerator(mons, M.ring.nvars)


def hilbert_numerator(I: Ideal, order: TermOrder | None = None) -> HilbertNumerator:
    """Numerator of HP_{R/I}, computed on in(I) for ``order`` (default degrevlex)."""
    _graded_check(I)
    for g in I.generators:
        if not g.is_homogeneous():
            raise ValueError(f"inhomogeneous generator {g}")
    if not I.generators:
        return HilbertNumerator((1,), I.ring.nvars)
    return monomial_hilbert_numerator(initial_ideal(I, order))


def hilbert_function(N: HilbertNumerator, d_max: int) -> list:
    """H(0..d_max) from the expansion of N(t) / (1 - t)^arity."""
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    k = N.arity
    out = []
    for d in range(d_max + 1):
        if k == 0:
            out.append(N.coefficient(d))
            continue
        out.append(sum(c * comb(d - i + k - 1, k - 1)
                       for i, c in enumerate(N.coefficients) if i <= d))
    return out


def krull_dim(N: HilbertNumerator) -> int:
    return N.arity - N.root_multiplicity_at_one()
