"""Buchberger's algorithm, normal forms and reduced Groebner bases.

The inner loops work on plain ``{monomial: coefficient}`` dicts; the public
functions accept and return :class:`~parityideals.poly.Polynomial`.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import (
    Monomial,
    Polynomial,
    RingSpec,
    TermOrder,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

STRATEGIES = ("normal", "first")


def _mask(m: Monomial) -> int:
    r = 0
    for k, e in enumerate(m):
        if e:
            r |= 1 << k
    return r


class _Reducer:
    """Divisor lookup and normal form against a growing list of monic polynomials."""

    def __init__(self, ring: RingSpec, order: TermOrder):
        self.ring = ring
        self.key = order.key
        self.p = ring.field.characteristic
        self.field = ring.field
        self.entries: list = []  # (lm, mask, tail items) for active elements
        self._nk: dict = {}

    def negkey(self, m):
        nk = self._nk.get(m)
        if nk is None:
            nk = tuple([-x for x in self.key(m)])
            self._nk[m] = nk
        return nk

    def set_basis(self, polys: Iterable[tuple]):
        """``polys``: iterable of (lm, dict) with monic leading coefficient."""
        self.entries = [(lm, _mask(lm), [(m, c) for m, c in f.items() if m != lm])
                        for lm, f in polys]

    def divisor(self, m: Monomial):
        mm = _mask(m)
        for lm, gm, tail in self.entries:
            if gm & ~mm == 0 and mono_divides(lm, m):
                return lm, tail
        return None

    def reduce(self, f: dict, tail: bool = True) -> dict:
        if not f or not self.entries:
            return dict(f)
        p = dict(f)
        prime = self.p
        negkey = self.negkey
        heap = [(negkey(m), m) for m in p]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            hit = self.divisor(m)
            if hit is None:
                rem[m] = c
                if not tail:
                    rem.update(p)
                    return rem
                continue
            lm, gtail = hit
            q = tuple([a - b for a, b in zip(m, lm)])
            for mg, cg in gtail:
                nm = tuple([a + b for a, b in zip(mg, q)])
                v = p.get(nm)
                if v is None:
                    w = -c * cg
                    if prime:
                        w %= prime
                    p[nm] = w
                    heapq.heappush(heap, (negkey(nm), nm))
                else:
                    w = v - c * cg
                    if prime:
                        w %= prime
                    if w:
                        p[nm] = w
                    else:
                        del p[nm]
        return rem

    def leading(self, f: dict) -> Monomial:
        return max(f, key=self.key)

    def monic(self, f: dict):
        lm = self.leading(f)
        c = f[lm]
        if c == 1:
            return lm, f
        inv = self.field.inv(c)
        if self.p:
            return lm, {m: v * inv % self.p for m, v in f.items()}
        return lm, {m: v * inv for m, v in f.items()}


def _spoly_dict(f: dict, lmf, g: dict, lmg, field) -> dict:
    """S-polynomial of two monic dicts."""
    L = mono_lcm(lmf, lmg)
    qf = mono_div(L, lmf)
    qg = mono_div(L, lmg)
    prime = field.characteristic
    out = {}
    for m, c in f.items():
        if m != lmf:
            out[mono_mul(m, qf)] = c
    for m, c in g.items():
        if m == lmg:
            continue
        nm = mono_mul(m, qg)
        v = out.get(nm, 0) - c
        if prime:
            v %= prime
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


@dataclass
class BuchbergerStats:
    pairs_considered: int = 0
    pairs_reduced_to_zero: int = 0
    basis_size_max: int = 0


def buchberger(ring: RingSpec, gens: Sequence[dict], order: TermOrder,
               strategy: str = "normal", stats: BuchbergerStats | None = None) -> list:
    """Return a minimal Groebner basis as a list of monic (lm, dict) pairs.

    Pair handling follows the Gebauer-Moeller update (Buchberger's coprime and
    chain criteria).  ``strategy`` selects the next pair: ``normal`` takes the
    smallest lcm by (degree, order), ``first`` the oldest pair.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown selection strategy {strategy!r}")
    stats = stats if stats is not None else BuchbergerStats()
    red = _Reducer(ring, order)
    key = order.key
    polys: list = []  # all (lm, dict) ever added
    active: list = []  # indices into polys
    pairs: dict = {}  # (i, j) -> lcm
    counter = [0]
    order_of_pair: dict = {}

    def refresh():
        red.set_basis(polys[i] for i in active)

    def update(h_idx: int):
        lmh = polys[h_idx][0]
        C = [(g, mono_lcm(lmh, polys[g][0])) for g in active]
        D = []
        while C:
            g1, L1 = C.pop()
            if mono_coprime(lmh, polys[g1][0]):
                D.append((g1, L1))
                continue
            if any(mono_divides(L2, L1) for _, L2 in C) or any(mono_divides(L2, L1) for _, L2 in D):
                continue
            D.append((g1, L1))
        E = [(g, L) for g, L in D if not mono_coprime(lmh, polys[g][0])]
        for (i, j), L in list(pairs.items()):
            if (mono_divides(lmh, L)
                    and mono_lcm(polys[i][0], lmh) != L
                    and mono_lcm(polys[j][0], lmh) != L):
                del pairs[(i, j)]
        for g, L in E:
            pairs[(g, h_idx)] = L
            order_of_pair[(g, h_idx)] = counter[0]
            counter[0] += 1
        active[:] = [g for g in active if not mono_divides(lmh, polys[g][0])] + [h_idx]
        refresh()

    def add(f: dict):
        f = red.reduce(f)
        if not f:
            return False
        polys.append(red.monic(f))
        update(len(polys) - 1)
        stats.basis_size_max = max(stats.basis_size_max, len(active))
        return True

    for g in gens:
        if g:
            add(dict(g))

    while pairs:
        if strategy == "normal":
            pick = min(pairs, key=lambda ij: (sum(pairs[ij]), key(pairs[ij]), order_of_pair[ij]))
        else:
            pick = min(pairs, key=order_of_pair.__getitem__)
        del pairs[pick]
        i, j = pick
        stats.pairs_considered += 1
        s = _spoly_dict(polys[i][1], polys[i][0], polys[j][1], polys[j][0], ring.field)
        if not add(s):
            stats.pairs_reduced_to_zero += 1
    return [polys[i] for i in active]


def interreduce(ring: RingSpec, basis: list, order: TermOrder) -> list:
    """Reduced Groebner basis from a minimal one; sorted by descending leading monomial."""
    key = order.key
    basis = sorted(basis, key=lambda e: key(e[0]), reverse=True)
    out = []
    red = _Reducer(ring, order)
    for k, (lm, f) in enumerate(basis):
        red.set_basis(basis[:k] + basis[k + 1:])
        tail = {m: c for m, c in f.items() if m != lm}
        tail = red.reduce(tail)
        tail[lm] = f[lm]
        out.append((lm, tail))
    return out


# --------------------------------------------------------------------------
# public polynomial-level API
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    order: TermOrder
    elements: tuple
    reduced: bool = True

    @property
    def ring(self) -> RingSpec:
        return self.elements[0].ring if self.elements else None

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.elements, self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in lm) for lm in self.leading_monomials())

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _same_ring(polys: Iterable[Polynomial]) -> RingSpec | None:
    ring = None
    for p in polys:
        if ring is None:
            ring = p.ring
        elif p.ring != ring:
            raise ValueError(f"ring mismatch: {ring} vs {p.ring}")
    return ring


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """lcm-weighted combination cancelling the leading terms of f and g."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    ring = _same_ring([f, g])
    red = _Reducer(ring, order)
    lf, df = red.monic(dict(f.terms))
    lg, dg = red.monic(dict(g.terms))
    return Polynomial(ring, _spoly_dict(df, lf, dg, lg, ring.field), _clean=True)


def normal_form(p: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``G`` (division algorithm)."""
    G = [g for g in G if not g.is_zero()]
    if not G:
        return p
    ring = _same_ring([p, *G])
    red = _Reducer(ring, order)
    red.set_basis(red.monic(dict(g.terms)) for g in G)
    return Polynomial(ring, red.reduce(dict(p.terms)), _clean=True)


def groebner_basis(polys: Sequence[Polynomial], order: TermOrder, strategy: str = "normal",
                   stats: BuchbergerStats | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return GroebnerBasis(order, ())
    ring = _same_ring(polys)
    basis = buchberger(ring, [dict(p.terms) for p in polys], order, strategy, stats)
    basis = interreduce(ring, basis, order)
    return GroebnerBasis(order, tuple(Polynomial(ring, f, _clean=True) for _, f in basis))


def is_groebner(G: Sequence[Polynomial], order: TermOrder) -> bool:
    """Buchberger certificate: every S-polynomial reduces to zero (no criteria used)."""
    G = [g for g in G if not g.is_zero()]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not normal_form(s_polynomial(G[a], G[b], order), G, order).is_zero():
                return False
    return True


def is_reduced(G: Sequence[Polynomial], order: TermOrder) -> bool:
    lms = [g.leading_monomial(order) for g in G]
    for k, g in enumerate(G):
        c, _ = g.leading_term(order)
        if c != 1:
            return False
        for m in g.terms:
            for j, lm in enumerate(lms):
                if j != k and mono_divides(lm, m):
                    return False
    return True


class Ideal:
    """Generators in a fixed ring plus a per-order cache of reduced bases."""

    def __init__(self, ring: RingSpec, generators: Iterable[Polynomial] = (), name: str = ""):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring}")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: RingSpec, texts: Iterable[str], name: str = "") -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts], name)

    def canonical_order(self) -> TermOrder:
        return TermOrder.degrevlex(self.ring)

    def groebner_basis(self, order: TermOrder | None = None) -> GroebnerBasis:
        order = order or self.canonical_order()
        gb = self._cache.get(order)
        if gb is None:
            gb = groebner_basis(self.generators, order)
            with self._lock:
                gb = self._cache.setdefault(order, gb)
        return gb

    def contains(self, p: Polynomial) -> bool:
        return ideal_membership(p, self)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return Ideal(self.ring, self.generators + other.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"Ideal({label}<{', '.join(map(str, self.generators))}>)"


def reduced_groebner_basis(I: Ideal, order: TermOrder | None = None) -> GroebnerBasis:
    return I.groebner_basis(order)


def initial_ideal(I: Ideal, order: TermOrder | None = None) -> Ideal:
    """Monomial ideal of leading monomials of the reduced basis."""
    gb = I.groebner_basis(order)
    ring = I.ring
    one = ring.field(1)
    return Ideal(ring, [Polynomial(ring, {m: one}, _clean=True) for m in gb.leading_monomials()],
                 name=f"in({I.name})" if I.name else "")


def ideal_membership(p: Polynomial, I: Ideal) -> bool:
    if p.ring != I.ring:
        raise ValueError(f"ring mismatch: {p.ring} vs {I.ring}")
    if not I.generators:
        return p.is_zero()
    return I.groebner_basis().contains(p)
