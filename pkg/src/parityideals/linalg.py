"""Sparse exact rank by row echelon elimination.

Rows are dicts ``{column: coefficient}``.  Over Q the elimination is
fraction-free: rows are scaled to primitive integer vectors and combined by
cross-multiplication.  Over F_p everything is reduced mod p.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .poly import Field, QQ

# 2^31 - 1; fixed so that reports are reproducible
DEFAULT_PRIME = 2147483647


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (1,):
        row = {k: v // g for k, v in row.items()}
    return row


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for k, v in row.items():
        v = Fraction(v) * den
        if v:
            out[k] = int(v)
    return out


class Echelon:
    """Incremental row echelon form; ``add`` returns True if the rank grew."""

    def __init__(self, field: Field = QQ):
        self.field = field
        self.p = field.characteristic
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        pivots = self.pivots
        p = self.p
        if p:
            row = {k: v % p for k, v in row.items() if v % p}
            while row:
                c = min(row)
                piv = pivots.get(c)
                if piv is None:
                    return row
                a = row[c]
                for k, v in piv.items():
                    w = (row.get(k, 0) - a * v) % p
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
            return row
        row = _integer_row(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                return _primitive(row)
            a = row[c]
            b = piv[c]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {k: v * fa for k, v in row.items()}
            for k, v in piv.items():
                w = new.get(k, 0) - fb * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        if self.p:
            inv = pow(row[c], -1, self.p)
            row = {k: v * inv % self.p for k, v in row.items()}
        self.pivots[c] = row
        return True


def sparse_rank(rows: Iterable[dict], field: Field = QQ) -> int:
    ech = Echelon(field)
    for r in rows:
        if r:
            ech.add(r)
    return ech.rank


def rank_mod_p(rows: Iterable[dict], p: int = DEFAULT_PRIME) -> int:
    return sparse_rank(rows, Field(p))
