"""Generic determinantal ideals, their standard resolution data, and generic links.

The blow-up bookkeeping follows the iterated resolution of a generic
determinantal variety by blowing up the strict transforms of V(I_1), ...,
V(I_r); stage ``i`` sees an ``m_i x n_i`` matrix of indeterminates whose
``r_i``-minors cut out the strict transform.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .groebner import (
    DEFAULT_MAX_STEPS,
    Ideal,
    ResourceLimitError,
    ideal_dimension,
    ideal_membership,
    ideal_power,
    ideal_quotient,
)
from .polyring import (
    TBLOCK,
    XBLOCK,
    Polynomial,
    RingDescriptor,
    generic_matrix,
    matrix_minors,
    matrix_names,
)

FULL = "full"
SPECIALIZED = "specialized"
DEFAULT_SEEDS = (0, 1, 2)
DEFAULT_BOUND = 1000
DEFAULT_BUDGET_VARS = 14
INFINITY = math.inf


class BudgetExceededError(ResourceLimitError):
    """The requested computation is larger than the configured variable budget."""


class CodimensionError(RuntimeError):
    """A specialized link never produced a complete intersection of the right codimension."""


@dataclass(frozen=True)
class MatrixSpec:
    """Shape ``m x n`` and minor size ``r``; stored with ``m >= n >= r``."""

    m: int
    n: int
    r: int

    def __post_init__(self):
        m, n, r = self.m, self.n, self.r
        if min(m, n, r) < 1:
            raise ValueError("m, n, r must be positive")
        if n > m:
            object.__setattr__(self, "m", n)
            object.__setattr__(self, "n", m)
        if self.r > self.n:
            raise ValueError(f"r = {r} exceeds min(m, n) = {self.n}")

    @property
    def c(self) -> int:
        return (self.m - self.r + 1) * (self.n - self.r + 1)

    @property
    def mu(self) -> int:
        return comb(self.m, self.r) * comb(self.n, self.r)

    def __str__(self):
        return f"({self.m},{self.n},{self.r})"


@dataclass(frozen=True)
class StageData:
    i: int
    m_i: int
    n_i: int
    r_i: int
    a_i: int
    k_i: int
    q_i: int

    @property
    def ratio(self) -> Fraction:
        """(k_i + 1) / a_i, the bound this divisor puts on the threshold."""
        return Fraction(self.k_i + 1, self.a_i)

    @property
    def predicted_link_order(self) -> int:
        return min(self.r_i, self.q_i)

    def as_dict(self):
        return {
            "i": self.i,
            "m_i": self.m_i,
            "n_i": self.n_i,
            "r_i": self.r_i,
            "a_i": self.a_i,
            "k_i": self.k_i,
            "q_i": self.q_i,
        }


def link_order_bound(m: int, n: int, r: int) -> int:
    """(n - r + 1)(m - r)(r - 1), the degree of the new generators of a generic link."""
    return (n - r + 1) * (m - r) * (r - 1)


def resolution_data(spec: MatrixSpec) -> list:
    m, n, r = spec.m, spec.n, spec.r
    stages = []
    for i in range(1, r + 1):
        mi, ni, ri = m - i + 1, n - i + 1, r - i + 1
        stages.append(
            StageData(
                i=i,
                m_i=mi,
                n_i=ni,
                r_i=ri,
                a_i=r - i + 1,
                k_i=(m - i + 1) * (n - i + 1) - 1,
                q_i=link_order_bound(mi, ni, ri),
            )
        )
    return stages


def predicted_link_order(spec: MatrixSpec, i: int) -> int:
    if not 1 <= i <= spec.r:
        raise ValueError(f"stage {i} out of range 1..{spec.r}")
    return resolution_data(spec)[i - 1].predicted_link_order


# ---------------------------------------------------------------------------
# determinantal ideals


def generic_matrix_ring(m: int, n: int, stem: str = "x"):
    names = matrix_names(stem, m, n)
    ring = RingDescriptor(((XBLOCK, tuple(v for row in names for v in row)),))
    return ring, generic_matrix(ring, names)


def minors_ideal(ring: RingDescriptor, entries, r: int) -> Ideal:
    """I_r of a matrix, with I_0 = (1) and I_r = 0 when r exceeds the size."""
    if r <= 0:
        return Ideal.unit(ring)
    if not entries or r > min(len(entries), len(entries[0])):
        return Ideal(ring)
    return Ideal(ring, matrix_minors(entries, r))


def determinantal_ideal(spec: MatrixSpec) -> Ideal:
    ring, M = generic_matrix_ring(spec.m, spec.n)
    return Ideal(ring, matrix_minors(M, spec.r))


# ---------------------------------------------------------------------------
# one chart of the blow-up


@dataclass(frozen=True)
class ChartState:
    ring: RingDescriptor
    strict_transform: Ideal
    matrix_entries: tuple
    r: int
    stage: int = 0
    exceptional_record: tuple = ()  # (stage, exceptional variable, extracted exponent)

    @property
    def shape(self):
        rows = len(self.matrix_entries)
        return rows, (len(self.matrix_entries[0]) if rows else 0)


def initial_chart_state(spec: MatrixSpec) -> ChartState:
    ring, M = generic_matrix_ring(spec.m, spec.n)
    return ChartState(ring, Ideal(ring, matrix_minors(M, spec.r)), tuple(map(tuple, M)), spec.r)


def _var_name(p: Polynomial) -> str:
    if not p.is_monomial():
        raise ValueError("matrix entry is not a variable")
    (mono, coeff), = p.terms.items()
    if coeff != 1 or sum(mono) != 1:
        raise ValueError("matrix entry is not a variable")
    return p.ring.variables[mono.index(1)]


def _chart_name(stem, i, j, stage, big):
    sep = "_" if big else ""
    suffix = "" if stage == 1 else f"_{stage}"
    return f"{stem}{i}{sep}{j}{suffix}"


def variable_power_dividing(p: Polynomial, name: str) -> int:
    """Largest k with name^k dividing p."""
    i = p.ring.index(name)
    return min(m[i] for m in p.terms)


def blowup_chart_step(state: ChartState, verify: bool = True) -> ChartState:
    """Blow up the ideal of the matrix entries and pass to the U_11 chart.

    Substitutes x_11 -> y_11 and x_ij -> y_11 * y_ij, rewrites y_ij as
    f_ij + y_i1 * y_1j for i, j >= 2, and divides every r-minor by y_11^r.
    The resulting matrix is the (m-1) x (n-1) matrix of the f_ij and the
    strict transform is its ideal of (r-1)-minors.
    """
    m, n = state.shape
    r = state.r
    if m < 1 or n < 1 or r < 1:
        raise ValueError("chart step needs a nonempty matrix and r >= 1")
    old = [[_var_name(p) for p in row] for row in state.matrix_entries]
    s = state.stage + 1
    big = m >= 10 or n >= 10
    border = [_chart_name("y", 1, j, s, big) for j in range(1, n + 1)]
    border += [_chart_name("y", i, 1, s, big) for i in range(2, m + 1)]
    inner = [[_chart_name("f", i, j, s, big) for j in range(2, n + 1)] for i in range(2, m + 1)]
    base = state.ring.restrict(v for row in old for v in row)
    ring = base.extend("chart", border)
    if inner and inner[0]:
        ring = ring.extend(XBLOCK, [v for row in inner for v in row])
    e_name = border[0]
    e = ring.var(e_name)

    def y(i, j):
        return ring.var(_chart_name("y", i, j, s, big))

    assignment = {}
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if i == 1 and j == 1:
                img = e
            elif i == 1 or j == 1:
                img = e * y(i, j)
            else:
                img = e * (ring.var(inner[i - 2][j - 2]) + y(i, 1) * y(1, j))
            assignment[old[i - 1][j - 1]] = img

    quotients = []
    for minor in matrix_minors(state.matrix_entries, r):
        image = minor.substitute(assignment, ring)
        k = variable_power_dividing(image, e_name)
        if k != r:
            raise AssertionError(f"transformed minor divisible by exactly {e_name}^{k}, expected ^{r}")
        shift = [0] * ring.nvars
        shift[ring.index(e_name)] = r
        quotients.append(image.exact_divide(ring.monomial(shift)))

    new_entries = tuple(tuple(ring.var(v) for v in row) for row in inner)
    strict = Ideal(ring, quotients)
    if verify:
        expected = minors_ideal(ring, new_entries, r - 1)
        if strict != expected:
            raise AssertionError("strict transform differs from the ideal of minors of M1'")
    return ChartState(
        ring=ring,
        strict_transform=strict,
        matrix_entries=new_entries,
        r=r - 1,
        stage=s,
        exceptional_record=state.exceptional_record + ((s, e_name, r),),
    )


# ---------------------------------------------------------------------------
# generic links


@dataclass
class LinkSetup:
    base: Ideal  # I_X in its own ring
    mu: int
    c: int
    mode: str
    tmatrix: tuple  # c x mu, polynomials (full) or Fractions (specialized)
    fs: tuple
    ambient: RingDescriptor
    base_ext: Ideal  # I_X S
    I_V: Ideal
    I_Y: Ideal
    seed: Optional[int] = None
    bound: Optional[int] = None
    attempts: int = 1

    @property
    def link(self) -> Ideal:
        return self.I_Y


def _t_stem(ring):
    for stem in ("t", "s", "w", "tt"):
        if not any(v.startswith(stem) and v[len(stem):][:1].isdigit() for v in ring.variables):
            return stem
    raise ValueError("no free stem for link variables")


def codimension(I: Ideal) -> int:
    return I.ring.nvars - ideal_dimension(I)


def generic_link(
    I: Ideal,
    mode: str = FULL,
    c: int = None,
    seed: int = 0,
    bound: int = DEFAULT_BOUND,
    retries: int = 5,
    generators: Sequence[Polynomial] = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> LinkSetup:
    """Link ``I`` via c general combinations of its generators.

    ``full`` adjoins a c x mu matrix of indeterminates (tblock); ``specialized``
    draws integer entries uniformly from [-bound, bound] with ``random.Random(seed)``
    and rejects draws whose combinations fail to have codimension c.
    """
    gens = list(generators) if generators is not None else list(I.generators)
    if not gens or any(g.is_zero() for g in gens):
        raise ValueError("generic link needs nonzero generators")
    if c is None:
        c = codimension(I)
    if c < 1:
        raise ValueError("cannot link the unit or zero ideal")
    mu = len(gens)
    if mode == FULL:
        stem = _t_stem(I.ring)
        names = matrix_names(stem, c, mu)
        ambient = I.ring.extend(TBLOCK, [v for row in names for v in row])
        T = tuple(tuple(ambient.var(v) for v in row) for row in names)
        ext = [g.to_ring(ambient) for g in gens]
        fs = tuple(sum((T[j][l] * ext[l] for l in range(mu)), ambient.zero()) for j in range(c))
        I_V = Ideal(ambient, fs)
        attempts = 1
        seed = bound = None
    elif mode == SPECIALIZED:
        ambient = I.ring
        rng = random.Random(seed)
        for attempts in range(1, retries + 1):
            T = tuple(
                tuple(Fraction(rng.randint(-bound, bound)) for _ in range(mu)) for _ in range(c)
            )
            fs = tuple(sum((T[j][l] * gens[l] for l in range(mu)), ambient.zero()) for j in range(c))
            if any(f.is_zero() for f in fs):
                continue
            I_V = Ideal(ambient, fs)
            if codimension(I_V) == c:
                break
        else:
            raise CodimensionError(f"no codimension-{c} specialization after {retries} draws (seed {seed})")
        ext = gens
    else:
        raise ValueError(f"unknown link mode {mode!r}")
    base_ext = Ideal(ambient, ext)
    I_Y = ideal_quotient(I_V, base_ext, max_steps)
    return LinkSetup(
        base=I,
        mu=mu,
        c=c,
        mode=mode,
        tmatrix=T,
        fs=fs,
        ambient=ambient,
        base_ext=base_ext,
        I_V=I_V,
        I_Y=I_Y,
        seed=seed,
        bound=bound,
        attempts=attempts,
    )


# ---------------------------------------------------------------------------
# orders


def ord_variable_block(J: Ideal, block: Iterable[str]):
    """Largest n with J inside (block)^n; ``math.inf`` for the zero ideal.

    A power of an ideal generated by variables consists exactly of the
    polynomials whose terms all have block-degree >= n, so the minimum
    block-degree over the generators decides containment.
    """
    block = tuple(block)
    if not block:
        raise ValueError("empty variable block")
    if J.is_zero():
        return INFINITY
    return min(g.block_degree_min(block) for g in J.generators)


@dataclass(frozen=True)
class PowerOrder:
    value: int
    exact: bool

    def __str__(self):
        return str(self.value) if self.exact else f">={self.value}"


def ord_ideal_power(J: Ideal, I: Ideal, cap: int) -> PowerOrder:
    """Largest n <= cap with J inside I^n, by membership in explicit powers."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if J.ring != I.ring:
        raise ValueError("ideals live in different rings")
    for n in range(1, cap + 1):
        P = ideal_power(I, n)
        if not all(ideal_membership(g, P) for g in J.generators):
            return PowerOrder(n - 1, True)
    return PowerOrder(cap, False)


@dataclass
class OrderReport:
    spec: MatrixSpec
    stage: int
    mode: str
    predicted: int
    computed: Optional[int]
    agree: bool
    status: str  # ok | inconclusive
    stage_spec: MatrixSpec = None
    nvars: int = 0
    per_seed: dict = field(default_factory=dict)
    link_generators: int = 0

    def as_dict(self):
        return {
            "spec": [self.spec.m, self.spec.n, self.spec.r],
            "stage": self.stage,
            "mode": self.mode,
            "stage_spec": [self.stage_spec.m, self.stage_spec.n, self.stage_spec.r],
            "nvars": self.nvars,
            "predicted": self.predicted,
            "computed": self.computed,
            "agree": self.agree,
            "status": self.status,
            "per_seed": {str(k): v for k, v in self.per_seed.items()},
            "link_generators": self.link_generators,
        }


def link_variable_count(spec: MatrixSpec, mode: str = FULL) -> int:
    if mode == FULL:
        return spec.m * spec.n + spec.c * spec.mu
    return spec.m * spec.n


def check_budget(spec: MatrixSpec, mode: str, budget_vars: int, override: bool = False):
    need = link_variable_count(spec, mode)
    if need > budget_vars and not override:
        raise BudgetExceededError(
            f"{mode} link of {spec} needs {need} variables, budget is {budget_vars}",
            {"variables": need, "budget_vars": budget_vars},
        )
    return need


def computed_link_order(
    spec: MatrixSpec,
    i: int,
    mode: str = FULL,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    bound: int = DEFAULT_BOUND,
    budget_vars: int = DEFAULT_BUDGET_VARS,
    override: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> OrderReport:
    """Order of the generic link along the stage-i divisor, by an actual colon computation.

    Works on a fresh m_i x n_i generic matrix; the order is the x-block order
    of the link of its r_i-minors.
    """
    stage = resolution_data(spec)[i - 1] if 1 <= i <= spec.r else None
    if stage is None:
        raise ValueError(f"stage {i} out of range 1..{spec.r}")
    predicted = stage.predicted_link_order
    sspec = MatrixSpec(stage.m_i, stage.n_i, stage.r_i)
    nvars = check_budget(sspec, mode, budget_vars, override)
    I = determinantal_ideal(sspec)
    xs = I.ring.block(XBLOCK)
    if mode == FULL:
        link = generic_link(I, FULL, c=sspec.c, max_steps=max_steps)
        computed = ord_variable_block(link.I_Y, xs)
        return OrderReport(spec, i, mode, predicted, computed, computed == predicted, "ok", sspec, nvars,
                           link_generators=len(link.I_Y.generators))
    if mode != SPECIALIZED:
        raise ValueError(f"unknown link mode {mode!r}")
    per_seed = {}
    ngens = 0
    for s in seeds:
        link = generic_link(I, SPECIALIZED, c=sspec.c, seed=s, bound=bound, max_steps=max_steps)
        per_seed[s] = ord_variable_block(link.I_Y, xs)
        ngens = len(link.I_Y.generators)
    values = set(per_seed.values())
    if len(values) != 1:
        return OrderReport(spec, i, mode, predicted, None, False, "inconclusive", sspec, nvars, per_seed)
    computed = values.pop()
    return OrderReport(spec, i, mode, predicted, computed, computed == predicted, "ok", sspec, nvars, per_seed,
                       link_generators=ngens)


@dataclass
class LinkDegreeReport:
    spec: MatrixSpec
    expected_degree: int
    observed_degree: Optional[int]
    new_generators: int
    identity_lhs: int
    identity_rhs: int

    @property
    def identity_holds(self) -> bool:
        return self.identity_lhs == self.identity_rhs

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.observed_degree == self.expected_degree

    def as_dict(self):
        return {
            "spec": [self.spec.m, self.spec.n, self.spec.r],
            "expected_degree": self.expected_degree,
            "observed_degree": self.observed_degree,
            "new_generators": self.new_generators,
            "identity": [self.identity_lhs, self.identity_rhs],
            "passed": self.passed,
        }


def generating_degree_identity(m: int, n: int, r: int):
    """Both sides of r*c - m*(n-r+1) = (n-r+1)(m-r)(r-1)."""
    c = (m - r + 1) * (n - r + 1)
    return r * c - m * (n - r + 1), link_order_bound(m, n, r)


def link_min_degree_check(
    spec: MatrixSpec,
    budget_vars: int = DEFAULT_BUDGET_VARS,
    override: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> LinkDegreeReport:
    """Minimum x-degree of the link generators outside I_V, against the predicted degree."""
    check_budget(spec, FULL, budget_vars, override)
    I = determinantal_ideal(spec)
    link = generic_link(I, FULL, c=spec.c, max_steps=max_steps)
    xs = link.ambient.block(XBLOCK)
    new = [g for g in link.I_Y.groebner() if not ideal_membership(g, link.I_V)]
    observed = min((g.block_degree_min(xs) for g in new), default=None)
    lhs, rhs = generating_degree_identity(spec.m, spec.n, spec.r)
    return LinkDegreeReport(spec, link_order_bound(spec.m, spec.n, spec.r), observed, len(new), lhs, rhs)


def double_link_check(I: Ideal, link: LinkSetup, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """I_V : I_Y == I_X S, i.e. the link is symmetric."""
    back = ideal_quotient(link.I_V, link.I_Y, max_steps)
    return back == link.base_ext


def order_invariance_check(
    I: Ideal,
    redundant: Polynomial,
    block: Iterable[str],
    c: int = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> bool:
    """Links from G and G + [redundant] have the same order along the block ideal."""
    if not ideal_membership(redundant, I):
        raise ValueError("redundant generator is not a member of the ideal")
    block = tuple(block)
    if c is None:
        c = codimension(I)
    gens = list(I.generators)
    a = generic_link(I, FULL, c=c, generators=gens, max_steps=max_steps)
    b = generic_link(I, FULL, c=c, generators=gens + [redundant], max_steps=max_steps)
    return ord_variable_block(a.I_Y, block) == ord_variable_block(b.I_Y, block)
