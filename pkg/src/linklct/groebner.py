"""Buchberger's algorithm and the ideal operations built on it.

The engine works on plain ``{exponent tuple: coefficient}`` dicts inside one
ring.  Pairs are selected by sugar degree (the normal strategy for homogeneous
input) and pruned with the Gebauer-Moeller installation of Buchberger's
product and chain criteria.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (
    AUX,
    MonomialOrder,
    Polynomial,
    RingDescriptor,
    RingMismatchError,
    elimination_order,
)

try:
    from gmpy2 import mpq as _coeff
except ImportError:  # pragma: no cover
    _coeff = Fraction

DEFAULT_MAX_STEPS = 500_000


class ResourceLimitError(RuntimeError):
    """A Groebner computation exceeded its configured step limit."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}


@dataclass
class GBStats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    criteria_skips: int = 0
    basis_size: int = 0
    max_steps: int = DEFAULT_MAX_STEPS

    def as_dict(self):
        return dict(self.__dict__)


# ---------------------------------------------------------------------------
# monomial helpers


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Basis:
    """Sorted-term polynomials sharing one order, with lead data cached."""

    def __init__(self, key):
        self.key = key
        self._neg = {}
        self.polys = []  # list of [(mono, coeff), ...], descending, monic
        self.lms = []
        self.sugar = []

    def negkey(self, m):
        k = self._neg.get(m)
        if k is None:
            k = self._neg[m] = tuple(-x for x in self.key(m))
        return k

    def sort_terms(self, d):
        return sorted(d.items(), key=lambda t: self.negkey(t[0]))

    def add(self, terms, sugar):
        self.polys.append(terms)
        self.lms.append(terms[0][0])
        self.sugar.append(sugar)
        return len(self.polys) - 1

    def reduce(self, f, active, full=True, steps=None):
        """Normal form of dict ``f`` modulo basis elements with indices in ``active``."""
        if not f:
            return {}
        negkey = self.negkey
        acc = dict(f)
        heap = [(negkey(m), m) for m in acc]
        heapq.heapify(heap)
        lms = self.lms
        polys = self.polys
        divisors = [(lms[i], polys[i]) for i in active]
        out = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = acc.pop(m, None)
            if c is None:
                continue
            for lm, g in divisors:
                if _divides(lm, m):
                    break
            else:
                out[m] = c
                if not full:
                    for m2, c2 in acc.items():
                        out[m2] = c2
                    return out
                continue
            q = tuple(a - b for a, b in zip(m, lm))
            for gm, gc in itertools.islice(g, 1, None):
                mm = tuple(a + b for a, b in zip(gm, q))
                old = acc.get(mm)
                if old is None:
                    acc[mm] = -c * gc
                    heapq.heappush(heap, (negkey(mm), mm))
                else:
                    s = old - c * gc
                    if s:
                        acc[mm] = s
                    else:
                        del acc[mm]
            if steps is not None:
                steps[0] += 1
        return out


def _to_dict(p: Polynomial):
    return {m: _coeff(c.numerator, c.denominator) for m, c in p.terms.items()}


def _from_terms(ring, terms):
    return Polynomial._raw(ring, {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in terms})


def _monic_terms(basis, d):
    terms = basis.sort_terms(d)
    lc = terms[0][1]
    if lc != 1:
        inv = 1 / lc
        terms = [(m, c * inv) for m, c in terms]
    return terms


def buchberger(polys: Sequence[Polynomial], order: MonomialOrder, max_steps: int = DEFAULT_MAX_STEPS):
    """Reduced Groebner basis of ``polys`` (all in one ring) plus statistics."""
    polys = [p for p in polys if not p.is_zero()]
    stats = GBStats(max_steps=max_steps)
    if not polys:
        return [], stats
    ring = polys[0].ring
    if any(p.ring != ring for p in polys):
        raise RingMismatchError("generators live in different rings")
    basis = _Basis(order.key_function(ring))
    steps = [0]

    # G: active indices; B: pending pairs (i, j) -> (sugar, order key of lcm, lcm)
    G = []
    B = {}

    def update(h):
        lm_h = basis.lms[h]
        C = [(g, _lcm(lm_h, basis.lms[g])) for g in G]
        D = []
        for idx, (g1, l1) in enumerate(C):
            if _coprime(lm_h, basis.lms[g1]):
                D.append((g1, l1))
                continue
            dominated = False
            for g2, l2 in itertools.chain(C[idx + 1 :], D):
                if g2 != g1 and _divides(l2, l1):
                    dominated = True
                    break
            if not dominated:
                D.append((g1, l1))
            else:
                stats.criteria_skips += 1
        E = []
        for g, l in D:
            if _coprime(lm_h, basis.lms[g]):
                stats.criteria_skips += 1
            else:
                E.append((g, l))
        for (i, j), (_, _, l) in list(B.items()):
            if (
                _divides(lm_h, l)
                and _lcm(basis.lms[i], lm_h) != l
                and _lcm(basis.lms[j], lm_h) != l
            ):
                del B[(i, j)]
                stats.criteria_skips += 1
        for g, l in E:
            s = max(
                basis.sugar[g] + sum(l) - sum(basis.lms[g]),
                basis.sugar[h] + sum(l) - sum(lm_h),
            )
            B[(g, h)] = (s, basis.key(l), l)
            stats.pairs_total += 1
        G[:] = [g for g in G if not _divides(lm_h, basis.lms[g])] + [h]

    for p in sorted(polys, key=lambda p: (p.degree(), len(p))):
        d = basis.reduce(_to_dict(p), G, steps=steps)
        if d:
            h = basis.add(_monic_terms(basis, d), p.degree())
            update(h)

    def check_steps():
        if steps[0] > max_steps:
            stats.basis_size = len(G)
            raise ResourceLimitError(
                f"Groebner basis computation exceeded {max_steps} reduction steps", stats.as_dict()
            )

    check_steps()
    while B:
        # smallest sugar, then smallest lcm; stable on indices for determinism
        pair = min(B, key=lambda k: (B[k][0], B[k][1], k))
        s_deg, _, l = B.pop(pair)
        i, j = pair
        spoly = {}
        for idx, sign in ((i, 1), (j, -1)):
            q = tuple(a - b for a, b in zip(l, basis.lms[idx]))
            for gm, gc in itertools.islice(basis.polys[idx], 1, None):
                mm = tuple(a + b for a, b in zip(gm, q))
                v = spoly.get(mm, 0) + sign * gc
                if v:
                    spoly[mm] = v
                else:
                    spoly.pop(mm, None)
        stats.pairs_reduced += 1
        h = basis.reduce(spoly, G, steps=steps)
        check_steps()
        if not h:
            stats.zero_reductions += 1
            continue
        idx = basis.add(_monic_terms(basis, h), s_deg)
        update(idx)

    # interreduce the minimal basis
    reduced = []
    for g in G:
        others = [k for k in G if k != g]
        d = basis.reduce(dict(basis.polys[g]), others)
        reduced.append(_monic_terms(basis, d))
    reduced.sort(key=lambda t: basis.negkey(t[0][0]), reverse=True)
    stats.basis_size = len(reduced)
    return [_from_terms(ring, t) for t in reduced], stats


def normal_form(p: Polynomial, gb: Sequence[Polynomial], order: MonomialOrder = None) -> Polynomial:
    """Remainder of ``p`` under multivariate division by ``gb``."""
    order = order or p.ring.default_order
    for g in gb:
        if g.ring != p.ring:
            raise RingMismatchError("divisor lives in a different ring")
    basis = _Basis(order.key_function(p.ring))
    for g in gb:
        if not g.is_zero():
            basis.add(_monic_terms(basis, _to_dict(g)), g.degree())
    r = basis.reduce(_to_dict(p), range(len(basis.polys)))
    return _from_terms(p.ring, r.items())


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = None) -> Polynomial:
    order = order or f.ring.default_order
    mf, cf = f.lead(order)
    mg, cg = g.lead(order)
    l = _lcm(mf, mg)
    return f.mul_monomial(tuple(a - b for a, b in zip(l, mf)), 1 / cf) - g.mul_monomial(
        tuple(a - b for a, b in zip(l, mg)), 1 / cg
    )


def is_groebner_basis(gb: Sequence[Polynomial], order: MonomialOrder = None) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gb = [g for g in gb if not g.is_zero()]
    if not gb:
        return True
    order = order or gb[0].ring.default_order
    for f, g in itertools.combinations(gb, 2):
        if not normal_form(s_polynomial(f, g, order), gb, order).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Finitely generated ideal with a per-order cache of reduced Groebner bases."""

    def __init__(self, ring: RingDescriptor, generators: Iterable[Polynomial] = ()):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatchError("generator is not in the ideal's ring")
            if g.is_zero():
                continue
            g = g.primitive(ring.default_order)
            if g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = {}
        self.stats = {}

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def __len__(self):
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder = None, max_steps: int = DEFAULT_MAX_STEPS) -> list:
        order = order or self.ring.default_order
        if order not in self._gb:
            gb, stats = buchberger(self.generators, order, max_steps)
            self._gb[order] = gb
            self.stats[order] = stats
        return self._gb[order]

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, p: Polynomial) -> bool:
        return ideal_membership(p, self)

    def __contains__(self, p):
        return self.contains(p)

    def issubset(self, other: Ideal) -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    __hash__ = None

    def to_ring(self, ring: RingDescriptor) -> Ideal:
        """Extension (or restriction, if generators allow) to ``ring``."""
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])

    def __add__(self, other):
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])


def reduced_gb(I: Ideal, order: MonomialOrder = None, max_steps: int = DEFAULT_MAX_STEPS) -> list:
    return I.groebner(order, max_steps)


def ideal_membership(p: Polynomial, I: Ideal) -> bool:
    if p.ring != I.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    if p.is_zero():
        return True
    return normal_form(p, I.groebner()).is_zero()


def eliminate(I: Ideal, block: Iterable[str], max_steps: int = DEFAULT_MAX_STEPS) -> Ideal:
    """I intersected with the subring free of ``block``, in the restricted ring."""
    block = tuple(block)
    for v in block:
        I.ring.index(v)
    if not block:
        return I
    target = I.ring.restrict(block)
    gb = I.groebner(elimination_order(block), max_steps)
    drop = {I.ring.index(v) for v in block}
    keep = [g for g in gb if not any(m[i] for m in g.terms for i in drop)]
    return Ideal(target, [g.to_ring(target) for g in keep])


def ideal_intersect(I: Ideal, J: Ideal, max_steps: int = DEFAULT_MAX_STEPS) -> Ideal:
    """I ∩ J as the elimination of u from u*I + (1-u)*J."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    u_name = ring.fresh_name("u")
    big = ring.extend(AUX, [u_name])
    u = big.var(u_name)
    gens = [u * g.to_ring(big) for g in I.generators]
    gens += [(1 - u) * g.to_ring(big) for g in J.generators]
    return eliminate(Ideal(big, gens), [u_name], max_steps)


def ideal_quotient(I: Ideal, J: Ideal, max_steps: int = DEFAULT_MAX_STEPS) -> Ideal:
    """I : J as the intersection over generators g of J of (I ∩ (g)) / g."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    if J.is_zero():
        raise ValueError("quotient by the zero ideal")
    ring = I.ring
    result = None
    for g in J.generators:
        if ideal_membership(g, I):
            continue  # I : g is the unit ideal
        K = ideal_intersect(I, Ideal(ring, [g]), max_steps)
        try:
            part = Ideal(ring, [k.exact_divide(g) for k in K.generators])
        except ArithmeticError as exc:  # pragma: no cover - would be an engine bug
            raise AssertionError("I ∩ (g) has a generator not divisible by g") from exc
        result = part if result is None else ideal_intersect(result, part, max_steps)
    return result if result is not None else Ideal.unit(ring)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("power must be a natural number")
    if n == 0:
        return Ideal.unit(I.ring)
    gens = list(I.generators)
    result = {I.ring.one()}
    for _ in range(n):
        result = {p * g for p in result for g in gens}
    return Ideal(I.ring, sorted(result, key=str))


def ideal_dimension(I: Ideal) -> int:
    """Krull dimension of ring/I from maximal independent sets of in(I); -1 if I = (1)."""
    n = I.ring.nvars
    if I.is_zero():
        return n
    gb = I.groebner()
    if any(g.is_constant() for g in gb):
        return -1
    masks = []
    for g in gb:
        lm, _ = g.lead()
        masks.append(sum(1 << i for i, a in enumerate(lm) if a))
    return max_independent_size(masks, n)


def max_independent_size(masks: Sequence[int], n: int) -> int:
    """Largest variable subset containing the support of no mask."""
    full = (1 << n) - 1
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            s = 0
            for i in combo:
                s |= 1 << i
            if all(mk & ~s & full for mk in masks):
                return size
    return 0
