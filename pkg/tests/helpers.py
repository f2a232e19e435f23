"""Shared ring constructions for the test suite."""

from __future__ import annotations

from hilbsam.exactalg import GF32003, FieldConfig
from hilbsam.groebner import IdealHandle, ideal, ideal_power, ideal_sum, intersect
from hilbsam.hilbert import QuotientRingSpec
from hilbsam.polyring import RingSpec

XYZW = ("X", "Y", "Z", "W")


def ring4(field: FieldConfig = GF32003) -> RingSpec:
    return RingSpec(XYZW, field)


def two_planes(l: int, field: FieldConfig = GF32003) -> QuotientRingSpec:
    """A = R/[(X^l, Y^l) cap (Z, W)]."""
    R = ring4(field)
    defining = intersect(ideal(R, [f"X^{l}", f"Y^{l}"]), ideal(R, ["Z", "W"]))
    return QuotientRingSpec(R, defining, 2)


def fat_point(l: int, field: FieldConfig = GF32003) -> QuotientRingSpec:
    """A = R/[(X, Y)^l cap (Z, W)]."""
    R = ring4(field)
    defining = intersect(ideal_power(ideal(R, ["X", "Y"]), l), ideal(R, ["Z", "W"]))
    return QuotientRingSpec(R, defining, 2)


def staged(n: int, field: FieldConfig = GF32003) -> QuotientRingSpec:
    """A = R/[(X^n, Y) cap (Z, W)]."""
    R = ring4(field)
    defining = intersect(ideal(R, [f"X^{n}", "Y"]), ideal(R, ["Z", "W"]))
    return QuotientRingSpec(R, defining, 2)


def big_i(A: QuotientRingSpec, n: int) -> IdealHandle:
    """m^n + (Z, W) as an ideal of R."""
    R = A.ring
    return ideal_sum(ideal_power(ideal(R, list(XYZW)), n), ideal(R, ["Z", "W"]))


def regular2(field: FieldConfig = GF32003) -> QuotientRingSpec:
    R = RingSpec(("x", "y"), field)
    return QuotientRingSpec(R, IdealHandle(R, []), 2)
