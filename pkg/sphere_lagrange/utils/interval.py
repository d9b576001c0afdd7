"""
Helpers around mpmath's outward-rounded interval context.
"""

from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from fractions import Fraction
from typing import Any

import mpmath
from mpmath import iv

from sphere_lagrange.models.quad_ext import ScalarLike, evaluate

Interval = Any  # mpmath iv.mpf


@contextmanager
def precision(bits: int) -> Iterator[None]:
    """Run a block with the interval context at ``bits`` of working precision."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def enclose(x: ScalarLike) -> Interval:
    """Interval enclosure of an exact rational or real quadratic value."""
    return evaluate(x, iv)


def rational(x: Fraction | int) -> Interval:
    value = Fraction(x)
    return iv.mpf(value.numerator) / value.denominator


def lower(x: Interval) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[0])


def upper(x: Interval) -> mpmath.mpf:
    return mpmath.mp.make_mpf(x._mpi_[1])


def width(x: Interval) -> mpmath.mpf:
    return upper(x) - lower(x)


def certainly_less(x: Interval, y: Interval) -> bool:
    """True only when every point of x lies below every point of y."""
    return (x < y) is True


def hull_of_max(values: Iterable[Interval]) -> Interval:
    """Enclosure of the maximum of several enclosed reals."""
    items = list(values)
    low = max(lower(x) for x in items)
    high = max(upper(x) for x in items)
    return iv.mpf([low, high])


def contains(x: Interval, value: ScalarLike) -> bool:
    point = enclose(value)
    return bool(lower(x) <= lower(point) and upper(point) <= upper(x))


def interval_str(x: Interval, digits: int = 30) -> str:
    """``[low, high]`` with ``digits`` significant digits per endpoint."""
    return f"[{mpmath.nstr(lower(x), digits)}, {mpmath.nstr(upper(x), digits)}]"
