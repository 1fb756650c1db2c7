"""Independent reference computations used to freeze expected values."""

from math import comb

import sympy as sp


def sympy_ring(n):
    xs = sp.symbols(f"x1:{n + 1}")
    ys = sp.symbols(f"y1:{n + 1}")
    return xs, ys


def to_sympy(p):
    """Polynomial -> sympy expression via its printed form."""
    names = {v: sp.Symbol(v) for v in p.ring.variables}
    return sp.sympify(str(p).replace("^", "**"), locals=names)


def textbook_degrevlex_greater(a, b):
    """a > b in degrevlex: higher degree wins; else the last nonzero entry of a - b is negative."""
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    diff = [u - v for u, v in zip(a, b)]
    for d in reversed(diff):
        if d:
            return d < 0
    return False


def series_coefficients(num_coeffs, arity, d_max):
    t = sp.Symbol("t")
    num = sum(c * t ** k for k, c in enumerate(num_coeffs))
    ser = sp.series(num / (1 - t) ** arity, t, 0, d_max + 1).removeO()
    return [int(ser.coeff(t, d)) for d in range(d_max + 1)]


def numerator_from_hilbert_function(H, arity):
    """Truncated (1-t)^arity * sum H(d) t^d; exact when H covers the numerator degree."""
    out = [0] * len(H)
    for d in range(len(H)):
        out[d] = sum((-1) ** i * comb(arity, i) * H[d - i] for i in range(min(arity, d) + 1))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def expand_coeffs(expr):
    t = sp.Symbol("t")
    p = sp.Poly(sp.expand(expr), t)
    return tuple(int(c) for c in reversed(p.all_coeffs()))
