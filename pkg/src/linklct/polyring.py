"""Exact sparse multivariate polynomials over Q with block-structured rings.

A :class:`RingDescriptor` names the variables and groups them into tagged
blocks (``xblock`` for matrix entries, ``tblock`` for link indeterminates,
``aux`` for elimination helpers).  A :class:`Polynomial` is an immutable map
from exponent tuples to nonzero :class:`fractions.Fraction` coefficients.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence, Union

Rational = Fraction
Monomial = tuple  # tuple[int, ...], one exponent per ring variable

XBLOCK = "xblock"
TBLOCK = "tblock"
AUX = "aux"

Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    pass


class PolynomialParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message, text="", pos=0, line=None):
        self.text = text
        self.pos = pos
        self.line = line
        self.token = _token_at(text, pos)
        where = f"line {line}, column {pos + 1}" if line is not None else f"column {pos + 1}"
        super().__init__(f"{message} at {where} near {self.token!r}")


def _token_at(text, pos):
    if pos >= len(text):
        return "<end>"
    m = re.match(r"[A-Za-z_][A-Za-z0-9_]*|\d+(?:/\d+)?|\S", text[pos:])
    return m.group(0) if m else text[pos]


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order description, independent of any particular ring.

    ``kind`` is one of ``grevlex``, ``lex``, ``elim`` (block elimination with
    ``inner`` used inside both blocks) or ``weight`` (``weights`` refined by
    ``tie``).  Variables earlier in the ring are larger.
    """

    kind: str = "grevlex"
    elim: tuple = ()
    inner: str = "grevlex"
    weights: tuple = ()
    tie: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim", "weight"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weight" and any(Fraction(w) < 0 for w in self.weights):
            raise ValueError("weight orders need nonnegative weights")

    def key_function(self, ring: RingDescriptor) -> Callable[[Monomial], tuple]:
        """Return a map monomial -> tuple; larger tuple means larger monomial."""
        n = len(ring.variables)
        if self.kind == "grevlex":
            return _grevlex_key(list(range(n)))
        if self.kind == "lex":
            return tuple
        if self.kind == "elim":
            missing = [v for v in self.elim if v not in ring]
            if missing:
                raise RingMismatchError(f"unknown variables {missing}")
            elim_idx = [i for i, v in enumerate(ring.variables) if v in self.elim]
            rest_idx = [i for i, v in enumerate(ring.variables) if v not in self.elim]
            if self.inner == "lex":
                return lambda e: tuple(e[i] for i in elim_idx) + tuple(e[i] for i in rest_idx)
            k1 = _grevlex_key(elim_idx)
            k2 = _grevlex_key(rest_idx)
            return lambda e: k1(e) + k2(e)
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != n:
            raise RingMismatchError("weight vector length differs from ring size")
        tie = MonomialOrder(self.tie).key_function(ring)
        return lambda e: (sum(w * a for w, a in zip(weights, e)),) + tie(e)

    def __str__(self):
        if self.kind == "elim":
            return f"elim({','.join(self.elim)};{self.inner})"
        if self.kind == "weight":
            return f"weight({','.join(str(w) for w in self.weights)};{self.tie})"
        return self.kind


def _grevlex_key(idx):
    rev = idx[::-1]

    def key(e):
        return (sum(e[i] for i in idx),) + tuple(-e[i] for i in rev)

    return key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(block: Iterable[str], inner: str = "grevlex") -> MonomialOrder:
    return MonomialOrder("elim", elim=tuple(block), inner=inner)


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class RingDescriptor:
    """Ordered, block-partitioned variable set.

    ``blocks`` is a tuple of ``(tag, names)`` pairs; the ring's variable order
    is the concatenation of the blocks in declaration order.
    """

    blocks: tuple
    default_order: MonomialOrder = GREVLEX
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        blocks = tuple((tag, tuple(names)) for tag, names in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        names = [v for _, vs in blocks for v in vs]
        if len(set(names)) != len(names):
            dup = sorted({v for v in names if names.count(v) > 1})
            raise ValueError(f"duplicate variable names: {dup}")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(names)})

    @classmethod
    def simple(cls, names: Sequence[str], tag: str = XBLOCK) -> RingDescriptor:
        return cls(((tag, tuple(names)),))

    @property
    def variables(self) -> tuple:
        return tuple(v for _, vs in self.blocks for v in vs)

    @property
    def nvars(self) -> int:
        return len(self._index)

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return self.nvars

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingMismatchError(f"unknown variable {name!r}") from None

    def block(self, tag: str) -> tuple:
        """All variables carrying ``tag`` (possibly from several blocks)."""
        return tuple(v for t, vs in self.blocks for v in vs if t == tag)

    def tag_of(self, name: str) -> str:
        for t, vs in self.blocks:
            if name in vs:
                return t
        raise RingMismatchError(f"unknown variable {name!r}")

    def extend(self, tag: str, names: Sequence[str]) -> RingDescriptor:
        """Adjoin a new block at the end; existing variables keep their order."""
        return RingDescriptor(self.blocks + ((tag, tuple(names)),), self.default_order)

    def restrict(self, drop: Iterable[str]) -> RingDescriptor:
        drop = set(drop)
        blocks = tuple((t, tuple(v for v in vs if v not in drop)) for t, vs in self.blocks)
        return RingDescriptor(tuple(b for b in blocks if b[1]), self.default_order)

    def fresh_name(self, stem: str) -> str:
        if stem not in self:
            return stem
        for k in itertools.count(1):
            if f"{stem}{k}" not in self:
                return f"{stem}{k}"

    # constructors --------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: Scalar) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def __repr__(self):
        inner = "; ".join(f"{t}: {' '.join(vs)}" for t, vs in self.blocks)
        return f"RingDescriptor({inner})"


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping[Monomial, Scalar] = None):
        n = ring.nvars
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            mono = tuple(mono)
            if len(mono) != n or any(a < 0 for a in mono):
                raise ValueError(f"bad exponent vector {mono} for ring of {n} variables")
            clean[mono] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables_used(self) -> set:
        names = self.ring.variables
        return {names[i] for m in self.terms for i, a in enumerate(m) if a}

    def block_degree_min(self, names: Iterable[str]) -> int:
        """Minimum over terms of the total degree in ``names``; -1 for zero."""
        idx = [self.ring.index(v) for v in names]
        if not self.terms:
            return -1
        return min(sum(m[i] for i in idx) for m in self.terms)

    def xdegree_min(self) -> int:
        return self.block_degree_min(self.ring.block(XBLOCK))

    def sorted_terms(self, order: MonomialOrder = None) -> list:
        key = (order or self.ring.default_order).key_function(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead(self, order: MonomialOrder = None):
        """(monomial, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = (order or self.ring.default_order).key_function(self.ring)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    # normalisation --------------------------------------------------------

    def monic(self, order: MonomialOrder = None) -> Polynomial:
        if not self.terms:
            return self
        _, lc = self.lead(order)
        return self.scale(1 / lc)

    def primitive(self, order: MonomialOrder = None) -> Polynomial:
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = gcd(*nums)
        _, lc = self.lead(order)
        if lc < 0:
            g = -g
        return self.scale(Fraction(den, g))

    def scale(self, c: Scalar) -> Polynomial:
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: a * c for m, a in self.terms.items()})

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def mul_monomial(self, mono: Sequence[int], coeff: Scalar = 1) -> Polynomial:
        coeff = Fraction(coeff)
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self.terms.items()} if coeff else {},
        )

    def exact_divide(self, divisor: Polynomial, order: MonomialOrder = None) -> Polynomial:
        """Quotient ``self / divisor``; raises ArithmeticError if it is not exact."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = order or self.ring.default_order
        key = order.key_function(self.ring)
        lm, lc = divisor.lead(order)
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=key)
            c = rem[m]
            q = tuple(a - b for a, b in zip(m, lm))
            if any(a < 0 for a in q):
                raise ArithmeticError("division leaves a nonzero remainder")
            qc = c / lc
            quot[q] = qc
            for dm, dc in divisor.terms.items():
                mm = tuple(a + b for a, b in zip(dm, q))
                s = rem.get(mm, 0) - qc * dc
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(self.ring, quot)

    # ring changes -----------------------------------------------------------

    def to_ring(self, target: RingDescriptor) -> Polynomial:
        """Embed into ``target`` by variable name; used variables must exist there."""
        if target == self.ring:
            return self
        src = self.ring.variables
        idx = []
        for i, v in enumerate(src):
            if v in target:
                idx.append((i, target.index(v)))
        used = {i for m in self.terms for i, a in enumerate(m) if a}
        mapped = {i for i, _ in idx}
        if used - mapped:
            missing = sorted(src[i] for i in used - mapped)
            raise RingMismatchError(f"variables {missing} do not exist in target ring")
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, j in idx:
                e[j] = m[i]
            out[tuple(e)] = c
        return Polynomial._raw(target, out)

    def substitute(self, assignment: Mapping[str, object], target: RingDescriptor = None) -> Polynomial:
        """Ring homomorphism sending each assigned variable to its image.

        Unassigned variables map to the variable of the same name in
        ``target`` (default: this ring).  Images may be polynomials in
        ``target`` or rational scalars.
        """
        target = target or self.ring
        for v in assignment:
            self.ring.index(v)
        images = []
        for v in self.ring.variables:
            if v in assignment:
                img = assignment[v]
                if isinstance(img, Polynomial):
                    if img.ring != target:
                        raise RingMismatchError(f"image of {v} is not in the target ring")
                else:
                    img = target.const(img)
            else:
                img = target.var(v) if v in target else None
            images.append(img)
        result = target.zero()
        powers = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(m):
                if not a:
                    continue
                if images[i] is None:
                    raise RingMismatchError(f"variable {self.ring.variables[i]} has no image")
                p = powers.get((i, a))
                if p is None:
                    p = powers[(i, a)] = images[i] ** a
                term = term * p
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        p = self.substitute(values)
        if not p.is_constant():
            raise ValueError("not every variable was assigned")
        return p.coefficient((0,) * self.ring.nvars)

    # display --------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(p: Polynomial, order: MonomialOrder = None) -> str:
    """Text in the same grammar accepted by :func:`parse_polynomial`."""
    if p.is_zero():
        return "0"
    names = p.ring.variables
    parts = []
    for m, c in p.sorted_terms(order):
        factors = [names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(m) if a]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# text grammar

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := atom ['^' NUM]
    # atom   := NUM | NAME | '(' expr ')'

    def __init__(self, text, ring, line=None):
        self.text = text
        self.ring = ring
        self.line = line
        self.tokens = _tokenize(text) if line is None else self._tok_with_line(text, line)
        self.i = 0

    def _tok_with_line(self, text, line):
        try:
            return _tokenize(text)
        except PolynomialParseError as e:
            raise PolynomialParseError("unexpected character", text, e.pos, line) from None

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        raise PolynomialParseError(msg, self.text, tok[2], self.line)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return p

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        nxt = self.peek()
        if nxt[0] in ("num", "name") or nxt[1] == "(":
            self.error("juxtaposition is not allowed; use '*'")
        return p

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "num" or "/" in tok[1]:
                self.error("exponent must be a natural number")
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.peek()
        kind, val, _ = tok
        if kind == "num":
            self.take()
            return self.ring.const(Fraction(val))
        if kind == "name":
            self.take()
            if val not in self.ring:
                self.error(f"unknown variable {val!r}", tok)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error("expected a number, variable or '('")


def parse_polynomial(text: str, ring: RingDescriptor, line: int = None) -> Polynomial:
    """Parse e.g. ``x1^2*x2 + 3/2*x3^3`` into a polynomial of ``ring``."""
    return _Parser(text, ring, line).parse()


# ---------------------------------------------------------------------------
# matrices


def generic_matrix(ring: RingDescriptor, names: Sequence[Sequence[str]]) -> list:
    return [[ring.var(v) for v in row] for row in names]


def matrix_names(stem: str, m: int, n: int) -> list:
    """``x11``-style names; an underscore separates indices past 9."""
    sep = "" if m < 10 and n < 10 else "_"
    return [[f"{stem}{i}{sep}{j}" for j in range(1, n + 1)] for i in range(1, m + 1)]


def determinant(mat: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row."""
    k = len(mat)
    if k == 0:
        raise ValueError("empty matrix")
    if k == 1:
        return mat[0][0]
    if k == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = None
    for j in range(k):
        entry = mat[0][j]
        if entry.is_zero():
            continue
        sub = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = entry * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else mat[0][0].ring.zero()


def matrix_minors(entries: Sequence[Sequence[Polynomial]], r: int) -> list:
    """All r x r minors, row subsets then column subsets in lexicographic order."""
    m = len(entries)
    n = len(entries[0]) if m else 0
    if not (1 <= r <= min(m, n)):
        raise ValueError(f"minor size {r} out of range for a {m}x{n} matrix")
    out = []
    for rows in itertools.combinations(range(m), r):
        for cols in itertools.combinations(range(n), r):
            out.append(determinant([[entries[i][j] for j in cols] for i in rows]))
    assert len(out) == comb(m, r) * comb(n, r)
    return out
