"""Ideal arithmetic: sums, intersections, colons, saturation, elimination.

Everything is reduced to elimination of an auxiliary variable with a block
order.  Equality and containment are decided through reduced Groebner bases
in the ring's canonical degrevlex order.
"""

from __future__ import annotations

from typing import Iterable

from .groebner import Ideal, groebner_basis
from .poly import Polynomial, RingMap, RingSpec, TermOrder, apply_ring_map


def _check_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ValueError(f"ring mismatch: {I.ring} vs {J.ring}")


def _fresh_aux(ring: RingSpec, preferred: str) -> str:
    for name in (preferred, "t", "s"):
        if name not in ring.aux:
            return name
    raise ValueError("no auxiliary variable name left")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_ring(I, J)
    return Ideal(I.ring, I.generators + J.generators)


def eliminate(I: Ideal, vars_: Iterable[str]) -> Ideal:
    """I intersected with the subring without ``vars_`` (auxiliary names only)."""
    ring = I.ring
    vars_ = list(vars_)
    for v in vars_:
        if v not in ring.index:
            raise ValueError(f"no variable {v!r} in {ring}")
        if v not in ring.aux:
            raise ValueError(f"cannot eliminate graded variable {v!r}; only auxiliaries")
    if not vars_:
        return I
    target = RingSpec(ring.n, tuple(a for a in ring.aux if a not in vars_), ring.field)
    elim = [ring.index[v] for v in vars_]
    order = TermOrder.block(ring, elim)
    gb = groebner_basis(I.generators, order)
    kept = [g for g in gb.elements if not any(g.terms and m[k] for m in g.terms for k in elim)]
    return Ideal(target, [g.contract(target) for g in kept])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as the t-free part of t*I + (1-t)*J."""
    _check_ring(I, J)
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    t = _fresh_aux(ring, "t")
    ext = ring.with_aux(t)
    tv = ext.var(t)
    gens = [tv * g.embed(ext) for g in I.generators]
    gens += [(1 - tv) * g.embed(ext) for g in J.generators]
    return eliminate(Ideal(ext, gens), [t])


def intersect_all(ideals: Iterable[Ideal]) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("empty intersection")
    acc = ideals[0]
    for K in ideals[1:]:
        acc = intersect(acc, K)
    return acc


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, as generators of I ∩ (f) divided exactly by f."""
    if f.is_zero():
        raise ZeroDivisionError("colon by the zero polynomial")
    if f.ring != I.ring:
        raise ValueError("ring mismatch")
    if f.total_degree() == 0:
        return I
    K = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [g.divide_exact(f) for g in K.generators])


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^inf, by adjoining s*f - 1 and eliminating s."""
    if f.is_zero():
        raise ZeroDivisionError("saturation by the zero polynomial")
    if f.ring != I.ring:
        raise ValueError("ring mismatch")
    if f.total_degree() == 0:
        return I
    ring = I.ring
    s = _fresh_aux(ring, "s")
    ext = ring.with_aux(s)
    gens = [g.embed(ext) for g in I.generators] + [ext.var(s) * f.embed(ext) - 1]
    return eliminate(Ideal(ext, gens), [s])


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _check_ring(I, J)
    return I.groebner_basis().elements == J.groebner_basis().elements


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff J ⊆ I."""
    _check_ring(I, J)
    if not I.generators:
        return not J.generators
    gb = I.groebner_basis()
    return all(gb.contains(g) for g in J.generators)


def containment_witness(I: Ideal, J: Ideal):
    """First generator of J outside I, or None."""
    _check_ring(I, J)
    gb = I.groebner_basis()
    for g in J.generators:
        if not I.generators or not gb.contains(g):
            return g
    return None


def image_ideal(m: RingMap, I: Ideal) -> Ideal:
    """Ideal generated by the images of I's generators under an invertible linear map."""
    if I.ring != m.source:
        raise ValueError("map source does not match the ideal's ring")
    if m.target.field.characteristic == 2:
        raise ValueError("coordinate change degenerate in characteristic 2")
    if not m.is_invertible_linear():
        raise ValueError("ring map is not an invertible linear change of coordinates")
    return Ideal(m.target, [apply_ring_map(m, g) for g in I.generators])
