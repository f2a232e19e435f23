"""Exact coordinate normalization for parameter lifts.

When every lift of a parameter ideal carries an isolated linear variable
(one whose only occurrence across all lifts is a single degree-1 term of
that lift, possibly after recombining the lifts linearly), the triangular
substitution v -> v - h is a ring automorphism fixing the maximal ideal
that maps the lift to the coordinate v.  Powers of the transformed ideal
are then monomial, which makes Hilbert sampling, reduction certificates
and colon-based checks far cheaper.  Colengths and ideal equalities are
invariant under such automorphisms, so results are unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyring import Polynomial, RingSpec


@dataclass
class ParameterChart:
    """Normalized coordinates for a parameter system.

    pivot_vars[k] is the variable index the k-th (recombined) lift maps to;
    substitution sends old coordinates to their expressions in the new ones.
    """

    ring: RingSpec
    pivot_vars: tuple[int, ...]
    substitution: dict[int, Polynomial]

    def transform_poly(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.substitution)

    def transform_polys(self, polys) -> list[Polynomial]:
        return [self.transform_poly(f) for f in polys]

    def lift_polys(self) -> list[Polynomial]:
        """Images of the parameter ideal's generators: plain variables."""
        return [self.ring.variable(i) for i in self.pivot_vars]


def _linear_coefficient(f: Polynomial, var: int):
    exps = tuple(1 if i == var else 0 for i in range(f.ring.nvars))
    return f.terms.get(exps)


def _occurs_nonlinearly(f: Polynomial, var: int) -> bool:
    """True if var occurs in f outside the single degree-1 monomial."""
    for m in f.terms:
        if m[var] and (sum(m) != 1 or m[var] != 1):
            return True
    return False


def parameter_chart(ring: RingSpec, lifts) -> ParameterChart | None:
    """Build a chart for the lifts, or None when the shape does not apply."""
    lifts = list(lifts)
    d = len(lifts)
    F = ring.field
    # candidate pivots: variables occurring only linearly in every lift
    candidates = [
        v
        for v in range(ring.nvars)
        if not any(_occurs_nonlinearly(f, v) for f in lifts)
        and any(_linear_coefficient(f, v) is not None for f in lifts)
    ]
    if len(candidates) < d:
        return None
    # Gauss-Jordan on the candidate columns, applied to the full lifts;
    # recombining generators preserves the ideal.  Rightmost columns first
    # so later ring variables (the z,w-style ones) become the pivots.
    work = list(lifts)
    pivots: list[int] = []
    for k in range(d):
        pivot_var = None
        for v in reversed(candidates):
            if v in pivots:
                continue
            if _linear_coefficient(work[k], v) is not None:
                pivot_var = v
                break
        if pivot_var is None:
            return None
        c = _linear_coefficient(work[k], pivot_var)
        work[k] = work[k].scale(F.inv(c))
        for j in range(d):
            if j != k:
                cj = _linear_coefficient(work[j], pivot_var)
                if cj is not None:
                    work[j] = work[j] - work[k].scale(cj)
        pivots.append(pivot_var)
    # the substitution v_k -> v_k - h_k needs every h_k free of all pivots
    substitution = {}
    for k, v in enumerate(pivots):
        h = work[k] - ring.variable(v)
        if any(m[p] for m in h.terms for p in pivots):
            return None
        if h.constant_term():
            return None  # not a local automorphism
        substitution[v] = ring.variable(v) - h
    chart = ParameterChart(ring, tuple(pivots), substitution)
    for k, v in enumerate(pivots):  # exactness check
        if chart.transform_poly(work[k]) != ring.variable(v):
            raise AssertionError("chart substitution failed verification")
    return chart
