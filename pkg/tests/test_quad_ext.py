"""
Tests for exact quadratic-field arithmetic.
"""

import random
from fractions import Fraction

import pytest

from sphere_lagrange.models.exceptions import (
    MixedFieldError,
    NotRealFieldError,
    QuadDivisionByZeroError,
    UnsupportedRadicandError,
)
from sphere_lagrange.models.quad_ext import SQRT2, SQRT3, SQRT6, QuadExt, sqrt_rational


def test_square_roots_square_to_their_radicands() -> None:
    """sqrt2, sqrt3 and sqrt6 of the real tower square to rationals."""
    assert SQRT2 * SQRT2 == 2
    assert SQRT3 * SQRT3 == 3
    assert SQRT6 * SQRT6 == 6
    assert (SQRT2 * SQRT2).rational() == Fraction(2)


def test_norm_and_inverse() -> None:
    """(1 + sqrt2)(1 - sqrt2) = -1, so 1/(1 + sqrt2) = sqrt2 - 1."""
    x = QuadExt(2, 1, 1)
    assert x.norm() == -1
    assert x.inverse() == SQRT2 - 1
    assert x * x.inverse() == 1


def test_fraction_coefficients_stay_exact() -> None:
    x = QuadExt(2, Fraction(1, 3), Fraction(-2, 7))
    assert x + x.conj() == Fraction(2, 3)
    assert (x - x).is_zero()


def test_exact_sign_of_real_elements() -> None:
    """3 - 2*sqrt2 is a small positive number."""
    assert QuadExt(2, 3, -2).sign() == 1
    assert QuadExt(2, -3, 2).sign() == -1
    assert QuadExt(2, 3, -2) < QuadExt(2, 1, 0) - QuadExt(2, 0, Fraction(1, 2))
    assert SQRT3 > SQRT2


def test_sign_is_undefined_in_imaginary_fields() -> None:
    with pytest.raises(NotRealFieldError):
        QuadExt(-1, 0, 1).sign()


def test_mixed_fields_are_rejected() -> None:
    """sqrt2 and sqrt-1 do not live in a common tower."""
    with pytest.raises(MixedFieldError):
        _ = SQRT2 + QuadExt(-1, 0, 1)
    with pytest.raises(MixedFieldError):
        _ = SQRT2 == QuadExt(-1, 0, 1)


def test_real_towers_meet_in_sqrt2_sqrt3() -> None:
    """sqrt3 built over Q equals sqrt3 built over Q(sqrt2), and they add."""
    bare = QuadExt(3, 0, 1)
    assert bare == SQRT3
    assert SQRT3 == bare
    assert bare + SQRT3 == 2 * SQRT3
    assert bare * SQRT2 == SQRT6
    assert hash(bare) == hash(SQRT3)
    with pytest.raises(MixedFieldError):
        _ = QuadExt(5, 0, 1) + SQRT3


def test_division_by_zero() -> None:
    with pytest.raises(QuadDivisionByZeroError):
        QuadExt(2, 0, 0).inverse()


def test_sqrt_rational() -> None:
    """Square roots of rationals land in Q(sqrt2)(sqrt3) when the squarefree part allows it."""
    assert sqrt_rational(Fraction(4, 9)) == Fraction(2, 3)
    assert sqrt_rational(Fraction(8, 9)) == SQRT2 * Fraction(2, 3)
    assert sqrt_rational(Fraction(2, 3)) * sqrt_rational(Fraction(2, 3)) == Fraction(2, 3)
    assert sqrt_rational(24) == 2 * SQRT6


@pytest.mark.parametrize("radicand", [5, Fraction(-1), Fraction(7, 2)])
def test_sqrt_rational_outside_the_tower(radicand: Fraction | int) -> None:
    with pytest.raises(UnsupportedRadicandError):
        sqrt_rational(radicand)


def test_decimal_rendering() -> None:
    assert SQRT2.decimal(10) == "1.414213562"


def _random_tower_element(rng: random.Random) -> QuadExt:
    def rational() -> Fraction:
        return Fraction(rng.randint(-50, 50), rng.randint(1, 30))

    return QuadExt(3, QuadExt(2, rational(), rational()), QuadExt(2, rational(), rational()))


def test_tower_arithmetic_is_exact() -> None:
    """(x + y) - y == x and (x * y) / y == x for random elements of Q(sqrt2)(sqrt3)."""
    rng = random.Random(2)
    for _ in range(300):
        x, y = _random_tower_element(rng), _random_tower_element(rng)
        assert (x + y) - y == x
        if y:
            assert (x * y) / y == x
        assert x * x.conj() == x.norm()
