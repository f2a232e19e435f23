from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbsam.errors import DivisionByZero, MixedFields
from hilbsam.exactalg import (
    ExactMatrix,
    FieldConfig,
    FieldElement,
    GF32003,
    QQ,
    field_arith,
    is_prime,
    nullity,
    nullspace,
    prime_field,
    rank,
    solve_linear,
)


def test_field_config_validation():
    with pytest.raises(ValueError):
        FieldConfig("prime", 32004)  # composite
    with pytest.raises(ValueError):
        FieldConfig("prime", 2)  # out of range
    with pytest.raises(ValueError):
        FieldConfig("prime", 2**31 + 11)
    assert prime_field(5).characteristic == 5


def test_is_prime_smalls():
    primes = [p for p in range(60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert is_prime(32003) and not is_prime(32001)


def test_field_arith_examples():
    f5 = prime_field(5)
    assert field_arith("inv", FieldElement(f5, 2)).value == 3  # 2*3 = 6 = 1 mod 5
    a = FieldElement(QQ, Fraction(1, 2))
    b = FieldElement(QQ, Fraction(1, 3))
    assert field_arith("add", a, b).value == Fraction(5, 6)
    # 16001 * 2 = 32002 = -1 mod 32003
    x = FieldElement(GF32003, 16001)
    assert field_arith("mul", x, FieldElement(GF32003, 2)).value == 32002


def test_field_errors():
    with pytest.raises(DivisionByZero):
        FieldElement(GF32003, 0).inverse()
    with pytest.raises(MixedFields):
        field_arith("add", FieldElement(GF32003, 1), FieldElement(QQ, 1))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(1, 50), st.integers(1, 50), st.integers(1, 50))
@settings(max_examples=60)
def test_rational_field_axioms(a, b, c, da, db, dc):
    x = FieldElement(QQ, Fraction(a, da))
    y = FieldElement(QQ, Fraction(b, db))
    z = FieldElement(QQ, Fraction(c, dc))
    assert ((x + y) + z).value == (x + (y + z)).value
    assert (x * y).value == (y * x).value
    assert (x * (y + z)).value == (x * y + x * z).value
    # canonical form: lowest terms, positive denominator
    assert (x + y).value.denominator > 0


def _mat(field, rows):
    return ExactMatrix(field, [[field.of_int(v) for v in row] for row in rows])


def test_rank_examples():
    assert rank(ExactMatrix.identity(QQ, 3)) == 3
    assert rank(ExactMatrix.zeros(QQ, 3, 4)) == 0
    assert rank(_mat(QQ, [[1, 2], [2, 4]])) == 1  # proportional rows


def test_nullspace_examples():
    assert len(nullspace(ExactMatrix.zeros(GF32003, 2, 3))) == 3
    assert nullspace(ExactMatrix.identity(GF32003, 4)) == []
    m = _mat(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    basis = nullspace(m)
    assert len(basis) == 3 - rank(m)
    for v in basis:
        col = [v.data[i][0] for i in range(v.rows)]
        assert all(x == 0 for x in m.mul_vector(col)), "M v must vanish exactly"


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=60)
def test_rank_transpose_and_rank_nullity(rows):
    m = _mat(GF32003, rows)
    assert rank(m) == rank(m.transpose())
    assert rank(m) + len(nullspace(m)) == m.cols
    assert nullity(m) == len(nullspace(m))


def test_solve_linear():
    m = _mat(QQ, [[2, 1], [1, 3]])
    sol = solve_linear(m, [QQ.of_int(5), QQ.of_int(10)])
    assert sol == [Fraction(1), Fraction(3)]
    with pytest.raises(ValueError):
        solve_linear(_mat(QQ, [[1, 1], [2, 2]]), [QQ.of_int(0), QQ.of_int(1)])
