from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from petersonring.exact import (
    ExactArithmeticError,
    RationalMatrix,
    as_rational,
    format_rational,
    kernel_basis,
    rank,
    rational_arithmetic,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(small, min_size=r * c, max_size=r * c).map(
                lambda xs: RationalMatrix(r, c, tuple(xs))
            )
        )
    )


def test_add_fractions():
    assert rational_arithmetic(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)


@given(rationals)
def test_multiplicative_identity(x):
    assert rational_arithmetic(x, 1, "mul") == x


def test_division_by_zero_is_reported():
    with pytest.raises(ExactArithmeticError):
        rational_arithmetic(1, 0, "div")


def test_canonical_form():
    x = rational_arithmetic(Fraction(2, 4), Fraction(-6, 8), "mul")
    assert (x.numerator, x.denominator) == (-3, 8)
    z = rational_arithmetic(Fraction(1, 3), Fraction(1, 3), "sub")
    assert (z.numerator, z.denominator) == (0, 1)


@pytest.mark.parametrize("x, text", [(Fraction(1, 2), "1/2"), (Fraction(4, 2), "2"), (Fraction(-3, 9), "-1/3"), (Fraction(0), "0")])
def test_serialization(x, text):
    assert format_rational(x) == text
    assert as_rational(text) == x


def test_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    add = lambda x, y: rational_arithmetic(x, y, "add")
    mul = lambda x, y: rational_arithmetic(x, y, "mul")
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    if b != 0:
        assert mul(rational_arithmetic(a, b, "div"), b) == a


def test_rank_examples():
    assert rank(RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(RationalMatrix.from_rows([[1, "-1/2"], ["-1/2", 1]])) == 2


def test_shape_is_checked():
    with pytest.raises(ValueError):
        RationalMatrix(2, 2, (Fraction(1),))


@settings(max_examples=60)
@given(matrices())
def test_rank_matches_transpose_and_sympy(m):
    r = rank(m)
    assert r == rank(m.transpose())
    oracle = sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for x in m.entries])
    assert r == oracle.rank()


@settings(max_examples=60)
@given(matrices())
def test_kernel_is_exact(m):
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for z in ker:
        assert any(z)
        assert all(v == 0 for v in m.mul_vector(z))
    # full column rank exactly when no nonzero rational solution exists
    assert (rank(m) == m.cols) == (not ker)
