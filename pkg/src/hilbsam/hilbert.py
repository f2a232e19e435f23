"""Hilbert-Samuel sampling in quotient rings A = R/a, binomial-basis
coefficient extraction, reduction certificates, seeded minimal-reduction
sampling and the empirical first-coefficient map.

Sign convention: with d = dim A, the eventual polynomial is

    H(n) = l(A/Q^{n+1}) = sum_i (-1)^i e_i binom(n + d - i, d - i),

so e_0 is the multiplicity and the report stores (e_0, ..., e_d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    NonIntegerCoefficient,
    NoPolynomialTail,
    NotLocallyFinite,
    SamplingExhausted,
)
from .exactalg import ExactMatrix, QQ, solve_linear
from .groebner import (
    IdealHandle,
    autoreduce,
    ideal_equal,
    ideal_product,
    ideal_sum,
    local_colength_info,
    normal_form,
)
from .polyring import Polynomial, RingSpec
from .transform import ParameterChart, parameter_chart

SMALL_FIELD_BOUND = 1000  # warn below this: generic choices may misbehave


# ---------------------------------------------------------------------------
# seeded deterministic sampling

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix64), stable across platforms."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def coefficient(self) -> int:
        """Small integer draw in [-50, 50], identical for every field."""
        return self.next_u64() % 101 - 50


# ---------------------------------------------------------------------------
# specs

@dataclass
class QuotientRingSpec:
    """A = R/defining with user-declared Krull dimension d > 0.

    The declared dimension is validated a posteriori: coefficient
    extraction fails unless the (d+1)-st finite differences of the sampled
    Hilbert function vanish on the stabilization window.
    """

    ring: RingSpec
    defining: IdealHandle
    dim: int
    cutoffs: tuple[int, int] = (4, 64)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("declared dimension must be positive")
        for g in self.defining.generators:
            if g.constant_term():
                raise ValueError("defining ideal has a generator with a unit constant term")

    def plus(self, I: IdealHandle) -> IdealHandle:
        return ideal_sum(self.defining, I)

    def maximal_ideal(self) -> IdealHandle:
        return IdealHandle(self.ring, [self.ring.variable(i) for i in range(self.ring.nvars)])

    def colength(self, I: IdealHandle) -> int:
        """l_A(A/I) for an ideal given by lifts to R."""
        return local_colength_info(self.plus(I), self.cutoffs).value


@dataclass
class ParameterIdealSpec:
    """Parameter ideal given by d lifts to R; construct via parameter_ideal."""

    lifts: tuple[Polynomial, ...]

    def handle(self, ring: RingSpec) -> IdealHandle:
        return IdealHandle(ring, self.lifts)


def _as_polys(A: QuotientRingSpec, lifts) -> tuple[Polynomial, ...]:
    from .polyring import parse_poly

    out = []
    for f in lifts:
        out.append(parse_poly(A.ring, f) if isinstance(f, str) else f)
    return tuple(out)


def parameter_ideal(A: QuotientRingSpec, lifts) -> ParameterIdealSpec:
    """Checked constructor: defining + (lifts) must have finite colength."""
    polys = _as_polys(A, lifts)
    if len(polys) != A.dim:
        raise ValueError(f"expected {A.dim} lifts, got {len(polys)}")
    spec = ParameterIdealSpec(polys)
    A2, Q2, _ = _normalized(A, spec)
    local_colength_info(A2.plus(Q2.handle(A2.ring)), A2.cutoffs)  # raises NotLocallyFinite
    return spec


# ---------------------------------------------------------------------------
# coordinate normalization plumbing

def _normalized(
    A: QuotientRingSpec, Q: ParameterIdealSpec
) -> tuple[QuotientRingSpec, ParameterIdealSpec, ParameterChart | None]:
    """Rewrite (A, Q) through a parameter chart when one applies; results of
    colength/equality computations are invariant."""
    chart = parameter_chart(A.ring, Q.lifts)
    if chart is None:
        return A, Q, None
    defining2 = IdealHandle(A.ring, chart.transform_polys(A.defining.generators))
    A2 = QuotientRingSpec(A.ring, defining2, A.dim, A.cutoffs)
    Q2 = ParameterIdealSpec(tuple(chart.lift_polys()))
    return A2, Q2, chart


# ---------------------------------------------------------------------------
# Hilbert-Samuel sampling and coefficient extraction

def _power_colengths(A: QuotientRingSpec, I: IdealHandle, n_max: int) -> dict[int, int]:
    """l_A(A/I^{n+1}) for n = 0..n_max, reusing the previous power and
    passing the previous stabilization cutoff forward as a hint."""
    H: dict[int, int] = {}
    current = I
    hint = A.cutoffs[0]
    cap = A.cutoffs[1]
    for n in range(n_max + 1):
        info = local_colength_info(A.plus(current), (hint, cap))
        H[n] = info.value
        if info.window is not None:
            hint = max(info.window[0], A.cutoffs[0])
        if n < n_max:
            gens = [f * g for f in current.generators for g in I.generators]
            current = IdealHandle(A.ring, autoreduce(A.ring, gens))
    return H


def hs_function(A: QuotientRingSpec, Q: ParameterIdealSpec, n_max: int | None = None) -> dict[int, int]:
    """Sampled Hilbert-Samuel function n -> l_A(A/Q^{n+1}), n = 0..n_max."""
    if n_max is None:
        n_max = A.dim + 6
    if n_max < A.dim + 1:
        raise ValueError("n_max must be at least dim + 1")
    A2, Q2, _ = _normalized(A, Q)
    H = _power_colengths(A2, Q2.handle(A2.ring), n_max)
    if any(H[n] >= H[n + 1] for n in range(n_max)):
        raise AssertionError("Hilbert-Samuel function is not strictly increasing; engine bug")
    return H


@dataclass
class HilbertReport:
    """Sampled values with extracted coefficients (e_0, ..., e_d)."""

    samples: dict[int, int]
    coeffs: tuple[int, ...]
    window: tuple[int, int]
    polynomial_from: int
    warnings: list[str] = field(default_factory=list)

    @property
    def e0(self) -> int:
        return self.coeffs[0]

    @property
    def e1(self) -> int:
        return self.coeffs[1]


def hilbert_value(coeffs: tuple[int, ...], d: int, n: int) -> int:
    """Evaluate the binomial-basis polynomial at n."""
    return sum((-1) ** i * e * comb(n + d - i, d - i) for i, e in enumerate(coeffs))


def extract_coeffs(samples: dict[int, int], d: int) -> HilbertReport:
    """Fit the binomial basis to the polynomial tail of the samples.

    Finds the least n0 from which the (d+1)-st finite differences vanish,
    solves for the coefficients from the last d+1 samples, verifies the fit
    against every sample with n >= n0, and checks integrality.
    """
    ns = sorted(samples)
    if len(ns) < 2 * (d + 1):
        raise ValueError(f"need at least {2 * (d + 1)} consecutive samples")
    if ns != list(range(ns[0], ns[-1] + 1)):
        raise ValueError("samples must be consecutive")
    values = [samples[n] for n in ns]
    diffs = values
    for _ in range(d + 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    idx0 = len(diffs)
    while idx0 > 0 and diffs[idx0 - 1] == 0:
        idx0 -= 1
    if idx0 == len(diffs):
        raise NoPolynomialTail("no vanishing finite-difference window; request more samples")
    n0 = ns[0] + idx0
    hi = ns[-1]
    if hi - n0 < d:
        raise NoPolynomialTail("polynomial tail shorter than the fit window; request more samples")
    fit_ns = list(range(hi - d, hi + 1))
    matrix = ExactMatrix(
        QQ,
        [[Fraction((-1) ** i * comb(n + d - i, d - i)) for i in range(d + 1)] for n in fit_ns],
    )
    sol = solve_linear(matrix, [Fraction(samples[n]) for n in fit_ns])
    if any(c.denominator != 1 for c in sol):
        raise NonIntegerCoefficient(f"non-integer coefficients {sol}: bug or wrong dimension")
    coeffs = tuple(int(c) for c in sol)
    for n in range(n0, hi + 1):
        if hilbert_value(coeffs, d, n) != samples[n]:
            raise NoPolynomialTail("fitted polynomial misses a sample inside the window")
    if coeffs[0] < 1:
        raise ValueError(f"multiplicity {coeffs[0]} < 1: wrong declared dimension?")
    poly_from = n0
    while poly_from > ns[0] and hilbert_value(coeffs, d, poly_from - 1) == samples[poly_from - 1]:
        poly_from -= 1
    return HilbertReport(dict(samples), coeffs, (ns[0], hi), poly_from)


def hilbert_report(A: QuotientRingSpec, Q: ParameterIdealSpec, n_max: int | None = None) -> HilbertReport:
    """hs_function + extract_coeffs for a parameter ideal."""
    if n_max is None:
        n_max = A.dim + 6
    return extract_coeffs(hs_function(A, Q, n_max), A.dim)


def ideal_hilbert_report(A: QuotientRingSpec, I: IdealHandle, n_max: int | None = None) -> HilbertReport:
    """Hilbert coefficients of an arbitrary m-primary ideal of A."""
    if n_max is None:
        n_max = A.dim + 6
    return extract_coeffs(_power_colengths(A, I, n_max), A.dim)


# ---------------------------------------------------------------------------
# reductions

def is_reduction(
    A: QuotientRingSpec, Q: ParameterIdealSpec, I: IdealHandle, n_cap: int = 8
) -> int | None:
    """Least n <= n_cap with I^{n+1} = Q I^n in A (reduction certificate),
    or None.  Requires Q contained in I + defining."""
    A2, Q2, chart = _normalized(A, Q)
    I2 = IdealHandle(A.ring, chart.transform_polys(I.generators)) if chart else I
    Qh = Q2.handle(A2.ring)
    target = ideal_sum(A2.defining, I2)
    gb = target.groebner()
    if any(not normal_form(f, gb).is_zero() for f in Qh.generators):
        raise ValueError("Q is not contained in I (mod the defining ideal)")
    power = IdealHandle(A2.ring, [A2.ring.one()])  # I^0
    for n in range(n_cap + 1):
        next_power_gens = [f * g for f in power.generators for g in I2.generators]
        next_power = IdealHandle(A2.ring, autoreduce(A2.ring, next_power_gens))
        lhs = ideal_sum(A2.defining, next_power)
        rhs = ideal_sum(A2.defining, ideal_product(Qh, power))
        if ideal_equal(lhs, rhs):
            return n
        power = next_power
    return None


def sample_reductions(
    A: QuotientRingSpec,
    I: IdealHandle,
    count: int,
    seed: int,
    n_cap: int = 8,
) -> tuple[list[ParameterIdealSpec], list[str]]:
    """Seeded random minimal reductions of I: d-tuples of random linear
    combinations of I's generators, kept when the reduction certificate
    passes.  Deterministic for a fixed seed.  Returns (reductions, warnings)."""
    warnings: list[str] = []
    F = A.ring.field
    if F.kind == "prime" and F.characteristic < SMALL_FIELD_BOUND:
        warnings.append(
            f"field F_{F.characteristic} is small; generic reduction sampling may struggle"
        )
    gens = autoreduce(A.ring, list(I.generators))
    rng = SplitMix64(seed)
    found: list[ParameterIdealSpec] = []
    attempts = 0
    max_attempts = 10 * count
    while len(found) < count and attempts < max_attempts:
        attempts += 1
        lifts = []
        for _ in range(A.dim):
            acc = A.ring.zero()
            for g in gens:
                c = rng.coefficient()
                if c:
                    acc = acc + g.scale(F.of_int(c))
            lifts.append(acc)
        if any(f.is_zero() for f in lifts):
            continue
        try:
            Q = parameter_ideal(A, lifts)
        except (NotLocallyFinite, ValueError):
            continue
        if is_reduction(A, Q, I, n_cap) is None:
            continue
        found.append(Q)
    if len(found) < count:
        raise SamplingExhausted(
            f"found {len(found)}/{count} reductions in {attempts} attempts over {F}"
        )
    warnings.append(f"sampled {count} reductions in {attempts} attempts over {F}")
    return found, warnings


# ---------------------------------------------------------------------------
# the empirical first-coefficient map

@dataclass
class LambdaEntry:
    name: str
    lifts: tuple[str, ...]
    certificate: int
    coeffs: tuple[int, ...]


@dataclass
class LambdaReport:
    """Distinct observed e_1 values (an empirical subset, never claimed
    complete) plus the per-reduction entries."""

    values: list[int]
    entries: list[LambdaEntry]
    warnings: list[str] = field(default_factory=list)


def lambda_map(
    A: QuotientRingSpec,
    I: IdealHandle,
    count: int,
    seed: int,
    n_max: int | None = None,
    named: list[tuple[str, ParameterIdealSpec]] | None = None,
    threads: int = 1,
) -> LambdaReport:
    """e_1 over sampled (and named) minimal reductions of I."""
    entries: list[LambdaEntry] = []
    warnings: list[str] = []
    candidates: list[tuple[str, ParameterIdealSpec]] = []
    for name, q in named or []:
        cert = is_reduction(A, q, I)
        if cert is None:
            warnings.append(f"named ideal {name} is not a reduction of I; skipped")
            continue
        candidates.append((name, q))
    if count:
        sampled, w = sample_reductions(A, I, count, seed)
        warnings.extend(w)
        candidates.extend((f"sample{i}", q) for i, q in enumerate(sampled))
    reports = _map_candidates(A, [q for _, q in candidates], n_max, threads)
    for (name, q), rep in zip(candidates, reports):
        cert = is_reduction(A, q, I)
        entries.append(
            LambdaEntry(name, tuple(str(f) for f in q.lifts), cert, rep.coeffs)
        )
    values = sorted({e.coeffs[1] for e in entries})
    return LambdaReport(values, entries, warnings)


def _map_candidates(A, candidates, n_max, threads) -> list[HilbertReport]:
    if threads > 1 and len(candidates) > 1:
        payloads = [_pickle_payload(A, q, n_max) for q in candidates]
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_coeffs_worker, payloads))
    return [hilbert_report(A, q, n_max) for q in candidates]


def _pickle_payload(A: QuotientRingSpec, Q: ParameterIdealSpec, n_max):
    return (
        A.ring.variables,
        A.ring.field.kind,
        A.ring.field.characteristic,
        [dict(g.terms) for g in A.defining.generators],
        A.dim,
        A.cutoffs,
        [dict(f.terms) for f in Q.lifts],
        n_max,
    )


def _coeffs_worker(payload) -> HilbertReport:
    from .exactalg import FieldConfig

    variables, kind, char, def_terms, dim, cutoffs, lift_terms, n_max = payload
    ring = RingSpec(tuple(variables), FieldConfig(kind, char))
    defining = IdealHandle(ring, [Polynomial(ring, t) for t in def_terms])
    A = QuotientRingSpec(ring, defining, dim, tuple(cutoffs))
    Q = ParameterIdealSpec(tuple(Polynomial(ring, t) for t in lift_terms))
    return hilbert_report(A, Q, n_max)


# ---------------------------------------------------------------------------
# the k + J subring construction

def k_plus_j_hilbert(B: QuotientRingSpec, J: IdealHandle, n_max: int | None = None) -> HilbertReport:
    """Hilbert report of A = k + J inside B: the maximal ideal of A is J and

        l_A(A/m_A^{n+1}) = l_B(B/J^{n+1}) - (l_B(B/J) - 1)   for n >= 1,

    with l_A(A/m_A) = 1; coefficients come from the n >= 1 tail."""
    d = B.dim
    if n_max is None:
        n_max = d + 7
    if n_max < 2 * (d + 1) + 1:
        raise ValueError("n_max too small to fit the n >= 1 tail")
    lengths = _power_colengths(B, J, n_max)
    correction = lengths[0] - 1
    samples = {0: 1}
    for n in range(1, n_max + 1):
        samples[n] = lengths[n] - correction
    return extract_coeffs(samples, d)
