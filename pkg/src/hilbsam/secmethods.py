"""Kernel method for (e_1, e_2) in dimension two, zeroth-local-cohomology
slice lengths, d-sequence and superficiality checkers, unmixed components,
and Sally-module bookkeeping.

The kernel method: with C = A/c a finite algebra (C is the user-supplied
presentation of the first local cohomology of A) and a, b the parameter
images acting on C, the block matrix with the action of a on the diagonal
and the action of b on the subdiagonal has kernel T_n, and

    l(A/Q^{n+1}) = e_0 * binom(n+2, 2) + l(T_n)   for all n >= 0,

so fitting the binomial basis to e_0 * binom(n+2,2) + l(T_n) recovers
(e_1, e_2) without sampling ideal powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import comb

from .errors import BoundViolation
from .exactalg import ExactMatrix, rank
from .groebner import (
    GroebnerBasis,
    IdealHandle,
    colon,
    ideal_equal,
    ideal_product,
    ideal_sum,
    ideal_power,
    normal_form,
    sat_quotient_length,
    saturate,
    _global_zero_dim_colength,
    _ladder_colength_info,
    _standard_monomials,
)
from .hilbert import (
    HilbertReport,
    ParameterIdealSpec,
    QuotientRingSpec,
    extract_coeffs,
    hilbert_report,
    ideal_hilbert_report,
    is_reduction,
    _normalized,
)
from .polyring import DEGREVLEX, Monomial, Polynomial, RingSpec
from .transform import parameter_chart


# ---------------------------------------------------------------------------
# finite-dimensional algebras C = R/c with exact multiplication matrices

@dataclass
class ArtinAlgebra:
    """C = R/c with its standard-monomial basis and per-variable
    multiplication matrices (column j holds the image of basis element j)."""

    ring: RingSpec
    ideal: IdealHandle
    basis: list[Monomial]
    gb: GroebnerBasis
    mult: dict[int, ExactMatrix] = field(default_factory=dict)

    def __post_init__(self):
        self._index = {m: i for i, m in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: Polynomial) -> list:
        """Coordinates of the class of f in the standard monomial basis."""
        nf = normal_form(f, self.gb)
        vec = [self.ring.field.zero] * self.dim
        for m, c in nf.terms.items():
            vec[self._index[m]] = c
        return vec

    def action_matrix(self, f: Polynomial) -> ExactMatrix:
        """Exact matrix of multiplication by f on C."""
        cols = [self.coords(f * self.ring.monomial(b)) for b in self.basis]
        data = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return ExactMatrix(self.ring.field, data, self.dim)

    def mult_matrix(self, var: int) -> ExactMatrix:
        if var not in self.mult:
            self.mult[var] = self.action_matrix(self.ring.variable(var))
        return self.mult[var]


def artin_algebra(ring: RingSpec, c: IdealHandle) -> ArtinAlgebra:
    """Build C = R/c (locally at the origin) with exact multiplication data."""
    value = _global_zero_dim_colength(c)
    if value is not None:
        gb = c.groebner()
        lts = gb.leading_monomials
        bound = sum(min(lt[i] for lt in lts if sum(lt) == lt[i]) for i in range(ring.nvars))
        basis = _standard_monomials(lts, ring.nvars, bound + 1)
    else:
        info = _ladder_colength_info(c, (4, 64))  # raises NotLocallyFinite
        gb = c.truncated_groebner(info.window[1])
        basis = gb.standard_monomials()
    basis.sort(key=DEGREVLEX.key)
    return ArtinAlgebra(ring, c, basis, gb)


@dataclass
class ActionPair:
    """Actions of the two parameter images on C."""

    op_a: ExactMatrix
    op_b: ExactMatrix


def action_pair(C: ArtinAlgebra, a: Polynomial, b: Polynomial) -> ActionPair:
    return ActionPair(C.action_matrix(a), C.action_matrix(b))


# ---------------------------------------------------------------------------
# the kernel method

def tn_length(C: ArtinAlgebra, act: ActionPair, n: int) -> int:
    """Nullity of the (n+2)c x (n+1)c block matrix with op_a on the diagonal
    blocks and op_b on the subdiagonal blocks."""
    c = C.dim
    F = C.ring.field
    zero_row = [F.zero] * ((n + 1) * c)
    data = []
    for i in range(n + 2):
        for r in range(c):
            row = list(zero_row)
            if i <= n:  # diagonal block: op_a at block column i
                arow = act.op_a.data[r]
                row[i * c : (i + 1) * c] = arow
            if i >= 1:  # subdiagonal block: op_b at block column i-1
                brow = act.op_b.data[r]
                base = (i - 1) * c
                for k in range(c):
                    row[base + k] = F.add(row[base + k], brow[k])
            data.append(row)
    m = ExactMatrix(F, data, (n + 1) * c)
    return m.cols - rank(m)


def simultaneous_annihilator_length(C: ArtinAlgebra, act: ActionPair) -> int:
    """l((0) :_C Q): nullity of the stacked [op_a; op_b] matrix."""
    m = ExactMatrix(C.ring.field, act.op_a.data + act.op_b.data, C.dim)
    return m.cols - rank(m)


@dataclass
class KernelReport:
    e1: int
    e2: int
    samples: dict[int, int]
    annihilator_bound: int  # l((0) :_C Q)
    algebra_length: int  # l(C)


def e1_e2_via_kernel(
    C: ArtinAlgebra, act: ActionPair, e0: int, window: range = range(0, 7)
) -> KernelReport:
    """Fit e_0*binom(n+2,2) + l(T_n) on the window and return (e_1, e_2);
    checks the proven bracket -l(C) <= e_1 <= -l((0):_C Q)."""
    samples = {n: e0 * comb(n + 2, 2) + tn_length(C, act, n) for n in window}
    rep = extract_coeffs(samples, 2)
    if rep.coeffs[0] != e0:
        raise ValueError(f"fit changed the multiplicity: {rep.coeffs[0]} != {e0}")
    ann = simultaneous_annihilator_length(C, act)
    if not (-C.dim <= rep.coeffs[1] <= -ann):
        raise BoundViolation(
            f"e1 = {rep.coeffs[1]} outside [-l(C), -l((0):Q)] = [{-C.dim}, {-ann}]"
        )
    return KernelReport(rep.coeffs[1], rep.coeffs[2], samples, ann, C.dim)


def annihilator_length(C: ArtinAlgebra, f: Polynomial) -> int:
    """l((0) :_C f) = nullity of the action of f = l(C/fC)."""
    m = C.action_matrix(f)
    return m.cols - rank(m)


# ---------------------------------------------------------------------------
# slice method for e_1 (d = 2, superficial nonzerodivisor slice)

def e1_via_slice(A: QuotientRingSpec, Q: ParameterIdealSpec, a: Polynomial) -> int:
    """-l(H^0_m(A/(a))), valid for d = 2 when a is superficial for Q and a
    nonzerodivisor; the caller asserts (or pre-checks) superficiality."""
    if A.dim != 2:
        raise ValueError("slice method is for dimension 2")
    chart = parameter_chart(A.ring, Q.lifts)
    if chart is not None:
        defining = IdealHandle(A.ring, chart.transform_polys(A.defining.generators))
        a = chart.transform_poly(a)
    else:
        defining = A.defining
    J = ideal_sum(defining, IdealHandle(A.ring, [a]))
    return -sat_quotient_length(J, A.cutoffs)


# ---------------------------------------------------------------------------
# d-sequences, unmixed components, superficiality

def is_d_sequence(A: QuotientRingSpec, elems: list[Polynomial], all_orders: bool = False) -> bool:
    """Colon criterion ((e_1..e_{i-1}) : e_i e_j) = ((e_1..e_{i-1}) : e_j)
    for all i <= j, computed in R with the defining ideal added.  With
    all_orders, every permutation of the given sequence is checked."""
    chart = parameter_chart(A.ring, elems)
    if chart is not None:
        defining = IdealHandle(A.ring, chart.transform_polys(A.defining.generators))
        elems = [A.ring.variable(i) for i in chart.pivot_vars]
    else:
        defining = A.defining
    gb = defining.groebner()
    if any(normal_form(e, gb).is_zero() for e in elems):
        raise ValueError("sequence member vanishes in A")
    orders = permutations(elems) if all_orders else [tuple(elems)]
    for seq in orders:
        for i in range(1, len(seq) + 1):
            prefix = ideal_sum(defining, IdealHandle(A.ring, seq[: i - 1]))
            for j in range(i, len(seq) + 1):
                lhs = colon(prefix, seq[i - 1] * seq[j - 1])
                rhs = colon(prefix, seq[j - 1])
                if not ideal_equal(lhs, rhs):
                    return False
    return True


def unmixed_component(A: QuotientRingSpec, a: Polynomial, b: Polynomial) -> IdealHandle:
    """U(a) = union of (a) : b^n, as the saturation of defining + (a) by b."""
    base = ideal_sum(A.defining, IdealHandle(A.ring, [a]))
    out = saturate(base, IdealHandle(A.ring, [b]))
    gb = out.groebner()
    if not normal_form(a, gb).is_zero():
        raise AssertionError("U(a) does not contain (a); engine bug")
    return out


def is_superficial(
    A: QuotientRingSpec, Q: ParameterIdealSpec, a: Polynomial, window: range = range(2, 7)
) -> bool:
    """Windowed check of (Q^{n+1} : a) = Q^n + (0 : a) in A.  A False is
    definitive (a witness n exists); a True is heuristic evidence."""
    chart = parameter_chart(A.ring, Q.lifts)
    if chart is not None:
        defining = IdealHandle(A.ring, chart.transform_polys(A.defining.generators))
        lifts = [A.ring.variable(i) for i in chart.pivot_vars]
        a = chart.transform_poly(a)
    else:
        defining = A.defining
        lifts = list(Q.lifts)
    Qh = IdealHandle(A.ring, lifts)
    zero_colon = colon_by_poly_in_A(defining, a)
    for n in window:
        lhs = colon(ideal_sum(defining, ideal_power(Qh, n + 1)), a)
        rhs = ideal_sum(ideal_sum(defining, ideal_power(Qh, n)), zero_colon)
        if not ideal_equal(lhs, rhs):
            return False
    return True


def colon_by_poly_in_A(defining: IdealHandle, a: Polynomial) -> IdealHandle:
    """(0 :_A a) as an ideal of R containing the defining ideal."""
    return colon(defining, a)


# ---------------------------------------------------------------------------
# Sally modules

@dataclass
class SallyReport:
    degree_lengths: dict[int, int]  # n >= 1 -> l(I^{n+1} / Q^n I)
    rank: int | None = None


def sally_lengths(
    A: QuotientRingSpec, I: IdealHandle, Q: ParameterIdealSpec, n_max: int = 4,
    check: bool = True,
) -> dict[int, int]:
    """l(I^{n+1}/Q^n I) = l(A/Q^n I) - l(A/I^{n+1}) for n = 1..n_max.
    Q must be a reduction of I (verified unless check=False)."""
    if check and is_reduction(A, Q, I) is None:
        raise ValueError("Q is not a reduction of I")
    A2, Q2, chart = _normalized(A, Q)
    I2 = IdealHandle(A.ring, chart.transform_polys(I.generators)) if chart else I
    Qh = Q2.handle(A2.ring)
    out: dict[int, int] = {}
    for n in range(1, n_max + 1):
        qn_i = ideal_product(ideal_power(Qh, n), I2)
        i_n1 = ideal_power(I2, n + 1)
        out[n] = A2.colength(qn_i) - A2.colength(i_n1)
        if out[n] < 0:
            raise AssertionError("negative Sally length; engine bug")
    return out


@dataclass
class SallyRankReport:
    rank: int
    e0_i: int
    e1_i: int
    e1_q: int
    colength_i: int


def sally_rank(
    A: QuotientRingSpec, I: IdealHandle, Q: ParameterIdealSpec, n_max: int | None = None,
    check: bool = True,
) -> SallyRankReport:
    """Localized Sally-module length through the bookkeeping identity
    rank = e1_I - e0_I - e1_Q + l(A/I); reports the inputs alongside.
    Q must be a reduction of I (verified unless check=False)."""
    if check and is_reduction(A, Q, I) is None:
        raise ValueError("Q is not a reduction of I")
    rep_i = ideal_hilbert_report(A, I, n_max)
    rep_q = hilbert_report(A, Q, n_max)
    col_i = A.colength(I)
    rank_value = rep_i.coeffs[1] - rep_i.coeffs[0] - rep_q.coeffs[1] + col_i
    return SallyRankReport(rank_value, rep_i.coeffs[0], rep_i.coeffs[1], rep_q.coeffs[1], col_i)


# ---------------------------------------------------------------------------
# the k + J analysis (subring with maximal ideal J inside B)

@dataclass
class KPlusJEntry:
    name: str
    rank: int
    e1_derived: int


@dataclass
class KPlusJReport:
    coeffs: tuple[int, ...]  # (e_0, e_1, e_2) of A = k + J
    identity_value: int  # e1_m - e0_m + 1 = e1_Q + rank for every reduction Q
    entries: list[KPlusJEntry]
    report: HilbertReport


def k_plus_j_analysis(
    B: QuotientRingSpec,
    J: IdealHandle,
    named: list[tuple[str, ParameterIdealSpec]],
    n_max: int | None = None,
) -> KPlusJReport:
    """Hilbert coefficients of A = k + J plus, for each named reduction q of
    J, the localized Sally length (computed in B, where the Sally modules of
    J and of the maximal ideal of A agree) and the derived first coefficient
    e1 = (e1_m - e0_m + 1) - rank."""
    from .hilbert import k_plus_j_hilbert

    rep = k_plus_j_hilbert(B, J, n_max)
    identity = rep.coeffs[1] - rep.coeffs[0] + 1
    entries = []
    for name, q in named:
        if is_reduction(B, q, J) is None:
            raise ValueError(f"{name} is not a reduction of J")
        r = sally_rank(B, J, q, n_max)
        entries.append(KPlusJEntry(name, r.rank, identity - r.rank))
    return KPlusJReport(rep.coeffs, identity, entries, rep)