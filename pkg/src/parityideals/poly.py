"""Exact multivariate polynomials over Q or a prime field.

Rings have variables ``x1..xn, y1..yn`` followed by zero or more auxiliary
variables (``t``, ``s``) that are used only for elimination and carry no
grading.  Monomials are dense exponent tuples; polynomials are immutable maps
from monomials to nonzero field elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

Monomial = tuple  # tuple[int, ...], one exponent per ring variable

AUX_NAMES = ("t", "s")


class ParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based offset."""

    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


# --------------------------------------------------------------------------
# fields
# --------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``characteristic == 0``) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or prime, got {p}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``q``/``QQ`` or ``fp:<p>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("fp:"):
            try:
                return cls(int(t[3:]))
            except ValueError:
                pass
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<p>'")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def tag(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    def __call__(self, value) -> object:
        """Coerce an int or Fraction into the field."""
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} is not defined in GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def mul(self, a, b):
        if self.characteristic:
            return a * b % self.characteristic
        return a * b

    def neg(self, a):
        if self.characteristic:
            return -a % self.characteristic
        return -a

    def inv(self, a):
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def to_str(self, c) -> str:
        """Signed representative for printing; prime fields use the symmetric range."""
        p = self.characteristic
        if p:
            c = int(c)
            return str(c - p if c > p // 2 else c)
        return str(c)

    def is_negative(self, c) -> bool:
        p = self.characteristic
        if p:
            return int(c) > p // 2
        return c < 0


QQ = Field(0)


# --------------------------------------------------------------------------
# rings
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """k[x1..xn, y1..yn, aux...]; auxiliary variables are ungraded."""

    n: int
    aux: tuple = ()
    field: Field = QQ

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if len(set(self.aux)) != len(self.aux):
            raise ValueError("duplicate auxiliary variable")
        for a in self.aux:
            if a not in AUX_NAMES:
                raise ValueError(f"auxiliary variable must be one of {AUX_NAMES}")

    @cached_property
    def variables(self) -> tuple:
        return (tuple(f"x{i}" for i in range(1, self.n + 1))
                + tuple(f"y{i}" for i in range(1, self.n + 1)) + self.aux)

    @cached_property
    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.variables)}

    @property
    def nvars(self) -> int:
        return 2 * self.n + len(self.aux)

    @property
    def ngraded(self) -> int:
        return 2 * self.n

    def is_aux(self, var: int) -> bool:
        return var >= 2 * self.n

    def x(self, i: int) -> int:
        """Variable index of x_i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"x{i} not in ring with n={self.n}")
        return i - 1

    def y(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"y{i} not in ring with n={self.n}")
        return self.n + i - 1

    def with_aux(self, name: str) -> "RingSpec":
        return RingSpec(self.n, self.aux + (name,), self.field)

    def base(self) -> "RingSpec":
        return RingSpec(self.n, (), self.field)

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def var_monomial(self, var: int) -> Monomial:
        e = [0] * self.nvars
        e[var] = 1
        return tuple(e)

    def degree(self, mon: Monomial) -> int:
        """Standard grading: auxiliary variables have degree 0."""
        return sum(mon[: 2 * self.n])

    # constructors -------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.one_monomial(): self.field(c)})

    def var(self, name: str) -> "Polynomial":
        try:
            k = self.index[name]
        except KeyError:
            raise ValueError(f"no variable {name!r} in {self}") from None
        return Polynomial(self, {self.var_monomial(k): self.field(1)})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


# --------------------------------------------------------------------------
# term orders
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TermOrder:
    """A monomial order given by a sort key: larger key means larger monomial.

    ``kind`` is ``lex``, ``degrevlex`` or ``block``.  ``priority`` lists the
    variable indices from most to least significant.  A block order compares
    the ``elim`` variables first (degrevlex within the block) and breaks ties
    with ``inner`` on the remaining variables.
    """

    kind: str
    nvars: int
    priority: tuple
    elim: tuple = ()
    inner: "TermOrder | None" = None

    @classmethod
    def lex(cls, ring: RingSpec, priority: Iterable[int] | None = None) -> "TermOrder":
        pr = tuple(range(ring.nvars)) if priority is None else tuple(priority)
        return cls("lex", ring.nvars, pr)

    @classmethod
    def degrevlex(cls, ring: RingSpec, priority: Iterable[int] | None = None) -> "TermOrder":
        pr = tuple(range(ring.nvars)) if priority is None else tuple(priority)
        return cls("degrevlex", ring.nvars, pr)

    @classmethod
    def block(cls, ring: RingSpec, elim: Iterable[int], inner: str = "degrevlex") -> "TermOrder":
        elim = tuple(elim)
        rest = tuple(v for v in range(ring.nvars) if v not in elim)
        inner_order = cls(inner, ring.nvars, rest)
        return cls("block", ring.nvars, elim + rest, elim, inner_order)

    @classmethod
    def named(cls, ring: RingSpec, name: str) -> "TermOrder":
        if name == "lex":
            return cls.lex(ring)
        if name == "degrevlex":
            return cls.degrevlex(ring)
        raise ValueError(f"unknown order {name!r}")

    def __post_init__(self):
        if sorted(self.priority) != list(range(self.nvars)) and self.kind != "block":
            if len(set(self.priority)) != len(self.priority):
                raise ValueError("priority must not repeat variables")
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    @cached_property
    def key(self):
        """Function mapping a monomial to a flat int tuple, monotone in the order."""
        pr = self.priority
        natural = pr == tuple(range(self.nvars))
        if self.kind == "lex":
            if natural:
                return lambda m: m
            return lambda m: tuple([m[i] for i in pr])
        if self.kind == "degrevlex":
            rev = pr[::-1]
            return lambda m: (sum([m[i] for i in pr]),) + tuple([-m[i] for i in rev])
        elim = self.elim
        erev = elim[::-1]
        inner = self.inner.key
        return lambda m: ((sum([m[i] for i in elim]),) + tuple([-m[i] for i in erev])
                          + inner(m))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def eliminates(self, vars_: Iterable[int]) -> bool:
        """True if every monomial containing one of ``vars_`` beats all that avoid them."""
        vs = set(vars_)
        if self.kind == "block":
            return vs <= set(self.elim)
        if self.kind == "lex":
            k = len(vs)
            return set(self.priority[:k]) == vs
        return False


# --------------------------------------------------------------------------
# monomial helpers
# --------------------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

class Polynomial:
    """Immutable polynomial; ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping | None = None, *, _clean: bool = False):
        self.ring = ring
        if _clean:
            self._terms = terms
        else:
            field = ring.field
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != ring.nvars:
                    raise ValueError(f"monomial {m} has wrong length for {ring}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = field(c)
                if c:
                    clean[m] = field.add(clean.get(m, field(0)), c)
                    if not clean[m]:
                        del clean[m]
            self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict:
        return self._terms

    def sorted_terms(self, order: TermOrder | None = None) -> list:
        """(coefficient, monomial) pairs, descending in ``order`` (default degrevlex)."""
        order = order or TermOrder.degrevlex(self.ring)
        key = order.key
        return [(self._terms[m], m) for m in sorted(self._terms, key=key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        field = self.ring.field
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = field.add(out.get(m, 0), c) if m in out else c
            if v:
                out[m] = v
            else:
                del out[m]
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        field = self.ring.field
        mul, add = field.mul, field.add
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                v = mul(ca, cb)
                if m in out:
                    v = add(out[m], v)
                    if v:
                        out[m] = v
                    else:
                        del out[m]
                elif v:
                    out[m] = v
        return Polynomial(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(v, c) for m, v in self._terms.items()},
                          _clean=True)

    def mul_monomial(self, mon: Monomial, c=1) -> "Polynomial":
        field = self.ring.field
        c = field(c)
        return Polynomial(self.ring, {mono_mul(m, mon): field.mul(v, c)
                                      for m, v in self._terms.items()}, _clean=True)

    def leading_term(self, order: TermOrder):
        """(coefficient, monomial) of the order-maximal term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=order.key)
        return self._terms[m], m

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return self.leading_term(order)[1]

    def monic(self, order: TermOrder) -> "Polynomial":
        c, _ = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    def is_homogeneous(self) -> bool:
        """Homogeneous in the standard grading (auxiliary variables ignored)."""
        degs = {self.ring.degree(m) for m in self._terms}
        return len(degs) <= 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(self.ring.degree(m) for m in self._terms)

    def total_degree(self) -> int:
        """Degree counting auxiliary variables too."""
        return max((sum(m) for m in self._terms), default=-1)

    def support(self) -> set:
        return {k for m in self._terms for k, e in enumerate(m) if e}

    def divide_exact(self, divisor: "Polynomial", order: TermOrder | None = None) -> "Polynomial":
        """Exact quotient; raises ArithmeticError if ``divisor`` does not divide self."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = order or TermOrder.degrevlex(self.ring)
        field = self.ring.field
        lc, lm = divisor.leading_term(order)
        inv = field.inv(lc)
        rem = self
        q: dict = {}
        while rem:
            c, m = rem.leading_term(order)
            if not mono_divides(lm, m):
                raise ArithmeticError("polynomial is not divisible")
            qm = mono_div(m, lm)
            qc = field.mul(c, inv)
            q[qm] = qc
            rem = rem - divisor.mul_monomial(qm, qc)
        return Polynomial(self.ring, q, _clean=True)

    def embed(self, target: RingSpec) -> "Polynomial":
        """Map into a ring with the same x/y block and extra auxiliaries (zero exponent)."""
        if target == self.ring:
            return self
        src = self.ring
        if target.n != src.n or target.field != src.field:
            raise ValueError(f"cannot embed {src} into {target}")
        pos = [target.index[v] for v in src.variables]
        out = {}
        for m, c in self._terms.items():
            e = [0] * target.nvars
            for k, p in enumerate(pos):
                e[p] = m[k]
            out[tuple(e)] = c
        return Polynomial(target, out, _clean=True)

    def contract(self, target: RingSpec) -> "Polynomial":
        """Inverse of :meth:`embed`; variables missing from ``target`` must not occur."""
        if target == self.ring:
            return self
        src = self.ring
        pos = [src.index[v] for v in target.variables]
        keep = set(pos)
        out = {}
        for m, c in self._terms.items():
            if any(e for k, e in enumerate(m) if k not in keep):
                raise ValueError("polynomial involves variables outside the target ring")
            out[tuple(m[p] for p in pos)] = c
        return Polynomial(target, out, _clean=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def monomial_polynomial(ring: RingSpec, mon: Monomial, c=1) -> Polynomial:
    return Polynomial(ring, {tuple(mon): ring.field(c)}, _clean=False)


# --------------------------------------------------------------------------
# printing and parsing
# --------------------------------------------------------------------------

def format_monomial(ring: RingSpec, mon: Monomial) -> str:
    parts = []
    for v, e in zip(ring.variables, mon):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: TermOrder | None = None) -> str:
    if p.is_zero():
        return "0"
    field = p.ring.field
    out = []
    for k, (c, m) in enumerate(p.sorted_terms(order)):
        neg = field.is_negative(c)
        s = field.to_str(c).lstrip("-")
        mon = format_monomial(p.ring, m)
        if mon:
            body = mon if s == "1" else f"{s}*{mon}"
        else:
            body = s
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z]\w*)|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        if kind is None:
            break
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", start)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    return toks


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse ``text`` such as ``"x1*x2 - 3/2*y1^2 + 1"`` into ``ring``."""
    field = ring.field
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial", 0)
    out: dict = {}
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None, len(text))

    expect_term = True
    while i < len(toks):
        sign = 1
        kind, val, pos = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not expect_term:
            raise ParseError(f"expected '+' or '-', got {val!r}", pos)
        expect_term = False
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        factors = 0
        while True:
            kind, val, pos = peek()
            if kind == "num":
                num = Fraction(val)
                if num.denominator == 0:
                    raise ParseError("zero denominator", pos)
                coeff *= num
                i += 1
            elif kind == "var":
                if val not in ring.index:
                    raise ParseError(f"unknown variable {val!r}", pos)
                i += 1
                e = 1
                k2, v2, p2 = peek()
                if k2 == "op" and v2 == "^":
                    i += 1
                    k3, v3, p3 = peek()
                    if k3 != "num" or "/" in v3:
                        raise ParseError("exponent must be a nonnegative integer", p3)
                    e = int(v3)
                    i += 1
                exps[ring.index[val]] += e
            else:
                raise ParseError("expected a coefficient or variable", pos)
            factors += 1
            kind, val, pos = peek()
            if kind == "op" and val == "*":
                i += 1
                continue
            if kind in ("num", "var"):
                raise ParseError("missing '*' between factors", pos)
            break
        if factors == 0:
            raise ParseError("empty term", pos)
        try:
            c = field(coeff)
        except ZeroDivisionError:
            raise ParseError(f"coefficient {coeff} is not in {field}", pos) from None
        m = tuple(exps)
        out[m] = field.add(out.get(m, field(0)), c)
        if not out[m]:
            del out[m]
    return Polynomial(ring, out, _clean=True)


# --------------------------------------------------------------------------
# ring maps
# --------------------------------------------------------------------------

class RingMap:
    """Substitution homomorphism; ``images[k]`` is the image of source variable k."""

    def __init__(self, source: RingSpec, target: RingSpec, images: Iterable[Polynomial]):
        images = tuple(images)
        if len(images) != source.nvars:
            raise ValueError(f"need {source.nvars} images, got {len(images)}")
        for im in images:
            if im.ring != target:
                raise ValueError("image outside the target ring")
        if source.field != target.field:
            raise ValueError("source and target fields differ")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, ring: RingSpec) -> "RingMap":
        return cls(ring, ring, ring.gens())

    @classmethod
    def coordinate_change(cls, ring: RingSpec) -> "RingMap":
        """x_i -> x_i - y_i and y_i -> x_i + y_i; auxiliaries fixed."""
        imgs = []
        for i in range(1, ring.n + 1):
            imgs.append(ring.var(f"x{i}") - ring.var(f"y{i}"))
        for i in range(1, ring.n + 1):
            imgs.append(ring.var(f"x{i}") + ring.var(f"y{i}"))
        imgs.extend(ring.var(a) for a in ring.aux)
        return cls(ring, ring, imgs)

    def is_linear(self) -> bool:
        return all(all(self.target.degree(m) == 1 and sum(m) == 1 for m in im.terms)
                   for im in self.images)

    def is_invertible_linear(self) -> bool:
        """Images are linearly independent linear forms over the field."""
        if not self.is_linear():
            return False
        rows = []
        for im in self.images:
            rows.append({m.index(1): c for m, c in im.terms.items()})
        from .linalg import sparse_rank
        return sparse_rank(rows, self.target.field) == len(self.images)

    @property
    def degenerate(self) -> bool:
        return self.is_linear() and not self.is_invertible_linear()

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_ring_map(self, p)


def apply_ring_map(m: RingMap, p: Polynomial) -> Polynomial:
    if p.ring != m.source:
        raise ValueError(f"map source {m.source} does not match {p.ring}")
    tgt = m.target
    result = tgt.zero()
    powers: dict = {}
    for mon, c in p.terms.items():
        term = tgt.const(c)
        for k, e in enumerate(mon):
            if e:
                key = (k, e)
                if key not in powers:
                    powers[key] = m.images[k] ** e
                term = term * powers[key]
        result = result + term
    return result
