"""Graphs on [n] and the ideal families attached to them."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import networkx as nx

from .groebner import Ideal
from .poly import QQ, Field, Polynomial, RingSpec


class GraphParseError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n; edges stored as sorted pairs."""

    n: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {{{i},{j}}} out of range for n={self.n}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise ValueError(f"duplicate edge {{{e[0]},{e[1]}}}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(combinations(range(1, n + 1), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i % n + 1) for i in range(1, n + 1)))

    @cached_property
    def _nx(self):
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def is_bipartite(self) -> bool:
        return nx.is_bipartite(self._nx)

    @cached_property
    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self._nx)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2


def parse_graph(text: str) -> Graph:
    """First line ``n``; then one edge ``i j`` per line.  ``#`` starts a comment.

    A ``/`` may be used in place of a newline.
    """
    lines = []
    for lineno, raw in enumerate(re.split(r"[\n/]", text), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise GraphParseError("empty graph description")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise GraphParseError(f"line {lineno}: expected vertex count, got {first!r}") from None
    if n < 1:
        raise GraphParseError(f"line {lineno}: vertex count must be positive")
    edges = []
    seen = set()
    for lineno, body in lines[1:]:
        parts = body.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected 'i j', got {body!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer vertex in {body!r}") from None
        if i == j:
            raise GraphParseError(f"line {lineno}: loop at vertex {i}")
        for v in (i, j):
            if not 1 <= v <= n:
                raise GraphParseError(f"line {lineno}: vertex {v} out of range 1..{n}")
        e = (min(i, j), max(i, j))
        if e in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        edges.append(e)
    return Graph(n, tuple(edges))


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def x(R: RingSpec, i: int) -> Polynomial:
    return R.var(f"x{i}")


def y(R: RingSpec, i: int) -> Polynomial:
    return R.var(f"y{i}")


def f_minor(R: RingSpec, i: int, j: int) -> Polynomial:
    """2x2 minor x_i y_j - x_j y_i."""
    return x(R, i) * y(R, j) - x(R, j) * y(R, i)


def g_parity(R: RingSpec, i: int, j: int) -> Polynomial:
    """Parity binomial x_i x_j - y_i y_j."""
    return x(R, i) * x(R, j) - y(R, i) * y(R, j)


def permanent(R: RingSpec, i: int, j: int) -> Polynomial:
    """2x2 permanent x_i y_j + x_j y_i."""
    return x(R, i) * y(R, j) + x(R, j) * y(R, i)


def _ring(n: int, field: Field) -> RingSpec:
    return RingSpec(n, (), field)


def parity_ideal(G: Graph, field: Field = QQ) -> Ideal:
    R = _ring(G.n, field)
    return Ideal(R, [g_parity(R, i, j) for i, j in G.edges], name="I_G")


def determinantal_ideal(G: Graph, field: Field = QQ) -> Ideal:
    R = _ring(G.n, field)
    return Ideal(R, [f_minor(R, i, j) for i, j in G.edges], name="det_G")


def permanental_ideal(G: Graph, field: Field = QQ) -> Ideal:
    if field.characteristic == 2:
        warnings.warn("permanental = determinantal in characteristic 2", stacklevel=2)
    R = _ring(G.n, field)
    return Ideal(R, [permanent(R, i, j) for i, j in G.edges], name="perm_G")


def saturation_generators(G: Graph, field: Field = QQ) -> Ideal:
    """Generators of I_G : (prod x_i y_i)^inf for a connected non-bipartite graph."""
    if not G.is_connected:
        raise ValueError("saturation generators require a connected graph")
    if G.is_bipartite:
        raise ValueError("saturation generators require a non-bipartite graph")
    R = _ring(G.n, field)
    gens = [x(R, i) ** 2 - y(R, i) ** 2 for i in range(1, G.n + 1)]
    for i, j in combinations(range(1, G.n + 1), 2):
        gens.append(f_minor(R, i, j))
        gens.append(g_parity(R, i, j))
    return Ideal(R, gens, name="J_G")


# --------------------------------------------------------------------------
# component primes and the chain I_k for K_n
# --------------------------------------------------------------------------

def m_ideal(n: int, subset, field: Field = QQ) -> Ideal:
    R = _ring(n, field)
    subset = sorted(set(subset))
    for i in subset:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
    return Ideal(R, [v for i in subset for v in (x(R, i), y(R, i))], name=f"m_{subset}")


def prime_P(n: int, i: int, j: int, field: Field = QQ) -> Ideal:
    """P_ij = (g_ij) + m_{[n] minus {i,j}}."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    R = _ring(n, field)
    rest = [k for k in range(1, n + 1) if k not in (i, j)]
    gens = [g_parity(R, i, j)] + [v for k in rest for v in (x(R, k), y(R, k))]
    return Ideal(R, gens, name=f"P_{i}{j}")


def p_plus(n: int, field: Field = QQ) -> Ideal:
    R = _ring(n, field)
    return Ideal(R, [x(R, i) + y(R, i) for i in range(1, n + 1)], name="p+")


def p_minus(n: int, field: Field = QQ) -> Ideal:
    R = _ring(n, field)
    return Ideal(R, [x(R, i) - y(R, i) for i in range(1, n + 1)], name="p-")


def component_primes(n: int, which: str, *args, field: Field = QQ) -> Ideal:
    """Dispatch on ``which`` in {'P', 'p+', 'p-', 'm'}."""
    if which == "P":
        return prime_P(n, *args, field=field)
    if which == "p+":
        return p_plus(n, field)
    if which == "p-":
        return p_minus(n, field)
    if which == "m":
        return m_ideal(n, args[0] if len(args) == 1 and not isinstance(args[0], int) else args,
                       field)
    raise ValueError(f"unknown component {which!r}")


def complete_parity_ideal(n: int, field: Field = QQ) -> Ideal:
    I = parity_ideal(Graph.complete(n), field)
    I.name = f"I_K{n}"
    return I


def chain_ideal(n: int, k: int, field: Field = QQ) -> Ideal:
    """I_k = I_{K_n} + (f_1n, ..., f_kn) for 0 <= k <= n-1."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"chain index k={k} out of range 0..{n - 1}")
    I = complete_parity_ideal(n, field)
    R = I.ring
    return Ideal(R, list(I.generators) + [f_minor(R, t, n) for t in range(1, k + 1)],
                 name=f"I_{k}")


def lemma_A_ideal(n: int, field: Field = QQ) -> Ideal:
    """(x_n + y_n) + I_{n-2}."""
    I = chain_ideal(n, n - 2, field)
    R = I.ring
    return Ideal(R, [x(R, n) + y(R, n)] + list(I.generators), name="J")


def embedded_complete_parity_ideal(n: int, m: int, field: Field = QQ) -> Ideal:
    """I_{K_m} extended to the ring on n >= m vertices."""
    R = _ring(n, field)
    return Ideal(R, [g_parity(R, i, j) for i, j in combinations(range(1, m + 1), 2)],
                 name=f"I_K{m}")
