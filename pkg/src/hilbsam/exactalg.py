"""Exact coefficient fields and exact dense linear algebra.

Two fields are supported: the rationals (stdlib Fraction) and prime fields
F_p with 2 < p < 2**31 (plain ints reduced mod p).  Raw coefficient values
are Fractions or ints; FieldElement is a thin wrapper used at the public
surface.  Everything is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, MixedFields

Coeff = Union[int, Fraction]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers 2**31)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Exact coefficient field: the rationals or a prime field F_p."""

    kind: str  # "rationals" | "prime"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif self.kind == "prime":
            p = self.characteristic
            if not (2 < p < 2**31):
                raise ValueError(f"prime field characteristic out of range: {p}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        else:
            raise ValueError(f"unknown field kind: {self.kind!r}")

    # -- raw coefficient arithmetic ------------------------------------
    @property
    def zero(self) -> Coeff:
        return 0 if self.kind == "prime" else Fraction(0)

    @property
    def one(self) -> Coeff:
        return 1 if self.kind == "prime" else Fraction(1)

    def of_int(self, n: int) -> Coeff:
        return n % self.characteristic if self.kind == "prime" else Fraction(n)

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        return (a + b) % self.characteristic if self.kind == "prime" else a + b

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        return (a - b) % self.characteristic if self.kind == "prime" else a - b

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        return (a * b) % self.characteristic if self.kind == "prime" else a * b

    def neg(self, a: Coeff) -> Coeff:
        return -a % self.characteristic if self.kind == "prime" else -a

    def inv(self, a: Coeff) -> Coeff:
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.kind == "prime":
            return pow(a, self.characteristic - 2, self.characteristic)
        return Fraction(1) / a

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.inv(b))

    def __str__(self):
        return "QQ" if self.kind == "rationals" else f"F{self.characteristic}"


QQ = FieldConfig("rationals")


def prime_field(p: int) -> FieldConfig:
    return FieldConfig("prime", p)


GF32003 = prime_field(32003)


@dataclass(frozen=True)
class FieldElement:
    """A field value in canonical form (reduced residue / lowest terms)."""

    field: FieldConfig
    value: Coeff

    def __post_init__(self):
        if self.field.kind == "prime":
            object.__setattr__(self, "value", self.value % self.field.characteristic)
        else:
            object.__setattr__(self, "value", Fraction(self.value))

    def _check(self, other: FieldElement) -> None:
        if self.field != other.field:
            raise MixedFields(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)


def field_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    """Spec surface for exact field arithmetic; op in {add,sub,mul,div,inv,neg}."""
    if op in ("inv", "neg"):
        return x.inverse() if op == "inv" else -x
    if y is None:
        raise ValueError(f"binary operation {op!r} needs two operands")
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}[op](y)


class ExactMatrix:
    """Dense matrix over an exact field; rows of raw coefficient values."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldConfig, data: list[list[Coeff]], cols: int | None = None):
        self.field = field
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
            if any(len(row) != self.cols for row in self.data):
                raise ValueError("ragged rows")
        else:
            self.cols = 0 if cols is None else cols

    @classmethod
    def zeros(cls, field: FieldConfig, rows: int, cols: int) -> ExactMatrix:
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: FieldConfig, n: int) -> ExactMatrix:
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    def __getitem__(self, idx: tuple[int, int]) -> Coeff:
        return self.data[idx[0]][idx[1]]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            self.field, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def matmul(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        out = ExactMatrix.zeros(F, self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if not a:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] = F.add(orow[j], F.mul(a, b))
        return out

    def mul_vector(self, vec: list[Coeff]) -> list[Coeff]:
        F = self.field
        out = []
        for i in range(self.rows):
            acc = F.zero
            row = self.data[i]
            for j, v in enumerate(vec):
                if v and row[j]:
                    acc = F.add(acc, F.mul(row[j], v))
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)


def _rref(m: ExactMatrix) -> tuple[list[list[Coeff]], list[int]]:
    """Reduced row echelon form (monic pivots, first nonzero entry in column
    order); returns (rows, pivot column indices).  Deterministic."""
    F = m.field
    rows = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = F.inv(rows[r][c])
        if inv != F.one:
            rows[r] = [F.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: ExactMatrix) -> int:
    """Exact rank; rank + nullity = cols."""
    return len(_rref(m)[1])


def nullspace(m: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {v : Mv = 0} as column vectors (reduced echelon
    representatives: one basis vector per free column, unit at the free
    position)."""
    F = m.field
    rows, pivots = _rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [F.zero] * m.cols
        vec[free] = F.one
        for r, pc in enumerate(pivots):
            coeff = rows[r][free]
            if coeff:
                vec[pc] = F.neg(coeff)
        basis.append(ExactMatrix(F, [[x] for x in vec], 1))
    return basis


def nullity(m: ExactMatrix) -> int:
    return m.cols - rank(m)


def solve_linear(m: ExactMatrix, rhs: list[Coeff]) -> list[Coeff]:
    """Unique solution of m x = rhs; raises on singular/inconsistent systems."""
    F = m.field
    aug = ExactMatrix(F, [row + [b] for row, b in zip(m.data, rhs)], m.cols + 1)
    rows, pivots = _rref(aug)
    if m.cols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != m.cols:
        raise ValueError("singular linear system")
    sol = [F.zero] * m.cols
    for r, c in enumerate(pivots):
        sol[c] = rows[r][m.cols]
    return sol
