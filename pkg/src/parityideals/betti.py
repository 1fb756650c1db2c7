"""Graded Betti numbers from Koszul homology, and a rank-based Hilbert oracle.

beta_{i,j}(R/I) = dim H_i(K(x_1..x_N) ⊗ R/I)_j.  The degree-j strand of the
i-th Koszul module is  ∧^i k^N ⊗ (R/I)_{j-i}; a basis of (R/I)_d is given by
the standard monomials of a Groebner basis.  Ranks are exact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from itertools import combinations, combinations_with_replacement
from math import comb

from .groebner import Ideal, _Reducer
from .hilbert import HilbertNumerator, tpoly_format
from .linalg import DEFAULT_PRIME, Echelon
from .poly import Field, TermOrder, mono_divides

DEFAULT_CAP = 2_000_000


class DeskScaleExceeded(RuntimeError):
    """A strand or oracle matrix is larger than the configured cap."""


@dataclass
class BettiTable:
    """Sparse map (i, j) -> beta_{i,j}; zero entries are not stored."""

    entries: dict
    arity: int
    n: int | None = None
    complete_up_to: tuple | None = None  # (i_max, j_max or None, row_max or None)

    def __post_init__(self):
        self.entries = {(int(i), int(j)): int(v) for (i, j), v in self.entries.items() if v}

    def __getitem__(self, ij) -> int:
        return self.entries.get(tuple(ij), 0)

    @property
    def reg(self) -> int:
        return max(j - i for i, j in self.entries)

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def depth(self) -> int:
        return self.arity - self.pd

    def totals(self) -> dict:
        out: dict = {}
        for (i, _), v in self.entries.items():
            out[i] = out.get(i, 0) + v
        return out

    def format(self) -> str:
        """Rows j - i, columns i, as in Macaulay2's betti display."""
        if not self.entries:
            return "(empty)"
        cols = range(self.pd + 1)
        rows = range(min(j - i for i, j in self.entries), self.reg + 1)
        tot = self.totals()
        cells = [[""] + [str(i) for i in cols], ["total:"] + [str(tot.get(i, 0)) for i in cols]]
        for r in rows:
            cells.append([f"{r}:"] + [str(self.entries.get((i, i + r), ".")) for i in cols])
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def to_json(self) -> dict:
        return {"arity": self.arity, "n": self.n,
                "entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls({(i, j): v for i, j, v in data["entries"]}, data["arity"], data.get("n"))


def alternating_sum(B: BettiTable) -> HilbertNumerator:
    """sum (-1)^i beta_{i,j} t^j."""
    top = max((j for _, j in B.entries), default=0)
    c = [0] * (top + 1)
    for (i, j), v in B.entries.items():
        c[j] += (-1) ** i * v
    return HilbertNumerator(c, B.arity)


# --------------------------------------------------------------------------
# the n = 7 fixture
# --------------------------------------------------------------------------

FIXTURE_SHA256 = "0d6a33f661d05bb0423c233af09ec0b44eba6a69ac87e19b770438b9f83269a1"


def _entries_digest(entries) -> str:
    blob = json.dumps(sorted([list(e) for e in entries]), separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def load_k7_fixture() -> BettiTable:
    """Betti table of R/I_{K_7} as published; checksum verified on load."""
    raw = json.loads(resources.files("parityideals.data").joinpath("betti_K7.json").read_text())
    digest = _entries_digest(raw["entries"])
    if digest != FIXTURE_SHA256:
        raise ValueError(f"fixture checksum mismatch: {digest}")
    table = BettiTable.from_json(raw)
    if [table.totals().get(i, 0) for i in range(len(raw["totals"]))] != raw["totals"]:
        raise ValueError("fixture column totals do not match its entries")
    return table


# --------------------------------------------------------------------------
# standard monomials and multiplication by variables
# --------------------------------------------------------------------------

def monomials_of_degree(nvars: int, d: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return out


class QuotientRing:
    """Graded pieces of R/I in the standard-monomial basis of a degrevlex GB."""

    def __init__(self, I: Ideal):
        if I.ring.aux:
            raise ValueError("auxiliary variables are not allowed here")
        if not I.is_homogeneous():
            raise ValueError("ideal must be homogeneous")
        self.ideal = I
        self.ring = I.ring
        self.N = I.ring.nvars
        self.order = TermOrder.degrevlex(I.ring)
        self.gb = I.groebner_basis(self.order)
        self.lms = self.gb.leading_monomials()
        self._red = _Reducer(self.ring, self.order)
        self._red.set_basis((g.leading_monomial(self.order), dict(g.terms)) for g in self.gb)
        self._basis: dict = {}
        self._index: dict = {}
        self._mult: dict = {}

    def basis(self, d: int) -> list:
        if d not in self._basis:
            if d < 0:
                b = []
            else:
                b = [m for m in monomials_of_degree(self.N, d)
                     if not any(mono_divides(lm, m) for lm in self.lms)]
            self._basis[d] = b
            self._index[d] = {m: k for k, m in enumerate(b)}
        return self._basis[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def times_var(self, m: tuple, v: int) -> dict:
        """x_v * m in the basis of degree deg(m) + 1, as {index: coefficient}."""
        hit = self._mult.get((m, v))
        if hit is None:
            nm = list(m)
            nm[v] += 1
            nm = tuple(nm)
            d = sum(nm)
            self.basis(d)
            idx = self._index[d]
            if nm in idx:
                hit = {idx[nm]: 1}
            else:
                nf = self._red.reduce({nm: 1})
                hit = {idx[k]: c for k, c in nf.items()}
            self._mult[(m, v)] = hit
        return hit


# --------------------------------------------------------------------------
# Koszul strands
# --------------------------------------------------------------------------

@dataclass
class _StrandEngine:
    Q: QuotientRing
    cap: int
    method: str  # "exact" or "modp"
    field: Field
    prime: int = DEFAULT_PRIME
    ranks: dict = dc_field(default_factory=dict)
    crosschecked: list = dc_field(default_factory=list)

    def dim(self, i: int, j: int) -> int:
        if i < 0 or i > self.Q.N or j - i < 0:
            return 0
        return comb(self.Q.N, i) * self.Q.dim(j - i)

    def rows(self, i: int, j: int) -> list:
        """Images of the basis of C_{i,j} in C_{i-1,j}."""
        Q = self.Q
        d = j - i
        src = Q.basis(d)
        Q.basis(d + 1)
        tgt_dim = Q.dim(d + 1)
        wedge_tgt = {S: k for k, S in enumerate(combinations(range(Q.N), i - 1))}
        rows = []
        nnz = 0
        for S in combinations(range(Q.N), i):
            for m in src:
                row: dict = {}
                for pos, v in enumerate(S):
                    sign = -1 if pos % 2 else 1
                    base = wedge_tgt[S[:pos] + S[pos + 1:]] * tgt_dim
                    for col, c in Q.times_var(m, v).items():
                        key = base + col
                        w = row.get(key, 0) + sign * c
                        if w:
                            row[key] = w
                        else:
                            row.pop(key, None)
                nnz += len(row)
                if nnz > self.cap:
                    raise DeskScaleExceeded(
                        f"desk-scale exceeded: Koszul strand (i={i}, j={j}) needs more than "
                        f"{self.cap} matrix entries")
                rows.append(row)
        return rows

    def _rank(self, rows: list, field: Field) -> int:
        ech = Echelon(field)
        if field.characteristic:
            conv = field
            for r in rows:
                if r:
                    ech.add({k: conv(v) for k, v in r.items()})
        else:
            for r in rows:
                if r:
                    ech.add(r)
        return ech.rank

    def rank(self, i: int, j: int) -> int:
        """Rank of d_i: C_{i,j} -> C_{i-1,j}."""
        if (i, j) in self.ranks:
            return self.ranks[(i, j)]
        if i <= 0 or self.dim(i, j) == 0 or self.dim(i - 1, j) == 0:
            r = 0
        else:
            rows = self.rows(i, j)
            if self.method == "modp" and self.field.characteristic == 0:
                r = self._rank(rows, Field(self.prime))
                if not self.crosschecked:
                    exact = self._rank(rows, self.field)
                    self.crosschecked.append((i, j, r, exact))
                    if exact != r:
                        raise ArithmeticError(
                            f"mod-p rank {r} disagrees with exact rank {exact} on strand ({i},{j})")
            else:
                r = self._rank(rows, self.field)
            assert 0 <= r <= min(self.dim(i, j), self.dim(i - 1, j))
        self.ranks[(i, j)] = r
        return r

    def betti(self, i: int, j: int) -> int:
        dim = self.dim(i, j)
        if dim == 0:
            return 0
        rk_out = self.rank(i, j)
        kernel = dim - rk_out
        # rank-nullity bookkeeping for the strand
        assert kernel + rk_out == dim
        b = kernel - self.rank(i + 1, j)
        assert b >= 0, f"negative homology at ({i},{j})"
        return b


def _engine(I: Ideal, cap: int, method: str) -> _StrandEngine:
    if method not in ("exact", "modp"):
        raise ValueError(f"unknown rank method {method!r}")
    return _StrandEngine(QuotientRing(I), cap, method, I.ring.field)


def betti_number(I: Ideal, i: int, j: int, cap: int = DEFAULT_CAP, method: str = "exact") -> int:
    """A single beta_{i,j}(R/I)."""
    return _engine(I, cap, method).betti(i, j)


def graded_betti(I: Ideal, i_max: int | None = None, j_max: int | None = None,
                 row_max: int | None = None, cap: int = DEFAULT_CAP,
                 method: str = "exact") -> BettiTable:
    """beta_{i,j}(R/I) for i <= i_max, j <= j_max and j - i <= row_max.

    At least one of ``j_max`` / ``row_max`` must be given.  Raises
    :class:`DeskScaleExceeded` instead of truncating.
    """
    N = I.ring.nvars
    i_max = N if i_max is None else i_max
    if i_max > N:
        raise ValueError(f"i_max={i_max} exceeds the number of variables {N}")
    if j_max is None and row_max is None:
        raise ValueError("give j_max or row_max")
    eng = _engine(I, cap, method)
    entries = {}
    for i in range(i_max + 1):
        hi = row_max if row_max is not None else j_max - i
        if j_max is not None:
            hi = min(hi, j_max - i)
        for r in range(0, hi + 1):
            b = eng.betti(i, i + r)
            if b:
                entries[(i, i + r)] = b
    table = BettiTable(entries, N, I.ring.n, (i_max, j_max, row_max))
    table.crosschecked = list(eng.crosschecked)
    return table


# --------------------------------------------------------------------------
# Hilbert function oracle
# --------------------------------------------------------------------------

def hilbert_rank_oracle(I: Ideal, d_max: int, cap: int = DEFAULT_CAP) -> list:
    """H(d) = #monomials of degree d - rank span{u * g : g in GB, deg(u g) = d}."""
    if I.ring.aux:
        raise ValueError("auxiliary variables are not allowed here")
    if not I.is_homogeneous():
        raise ValueError("ideal must be homogeneous")
    N = I.ring.nvars
    order = TermOrder.degrevlex(I.ring)
    gb = I.groebner_basis(order).elements if I.generators else ()
    key = order.key
    out = []
    for d in range(d_max + 1):
        mons = sorted(monomials_of_degree(N, d), key=key, reverse=True)
        col = {m: k for k, m in enumerate(mons)}
        ech = Echelon(I.ring.field)
        nnz = 0
        for g in gb:
            dg = g.degree()
            if dg > d:
                continue
            for u in monomials_of_degree(N, d - dg):
                row = {col[tuple(a + b for a, b in zip(m, u))]: c for m, c in g.terms.items()}
                nnz += len(row)
                if nnz > cap:
                    raise DeskScaleExceeded(
                        f"desk-scale exceeded: oracle in degree {d} needs more than {cap} entries")
                ech.add(row)
        out.append(len(mons) - ech.rank)
    return out


def format_numerator(N: HilbertNumerator) -> str:
    return tpoly_format(N.coefficients)
