"""
Markoff-type solution trees and the initial discrete parts of the six spectra.
"""

import csv
from collections import deque
from math import isqrt
from typing import TextIO

import sympy

from sphere_lagrange.models.exceptions import SpectrumUnavailableError
from sphere_lagrange.models.markoff import CLASSICAL_MARKOFF, SQRT2_MARKOFF, MarkoffEquation, MarkoffTriple
from sphere_lagrange.models.space_spec import SpaceCase
from sphere_lagrange.models.spectrum import Provenance, SpectrumValue, cited_constants
from sphere_lagrange.utils.logger import get_logger

logger = get_logger(__name__)

CSV_COLUMNS = ["value_sq", "value", "generator", "case", "provenance"]


def _normalized(triple: tuple[int, int, int], equation: MarkoffEquation) -> tuple[int, int, int]:
    x, y1, y2 = triple
    if equation is CLASSICAL_MARKOFF:
        return tuple(sorted(triple))  # type: ignore[return-value]
    return (x, min(y1, y2), max(y1, y2))


def markoff_tree(bound: int, equation: MarkoffEquation = SQRT2_MARKOFF) -> list[MarkoffTriple]:
    """
    All positive solutions with every component <= bound.

    Breadth-first search from the root through the Vieta flips. Descent lowers the largest
    component, so every solution within the bound is reachable without leaving the bound.

    Args:
        bound: Component bound (at least 1)
        equation: Markoff-type equation

    Returns:
        Normalized triples in ascending order
    """
    root = equation.root
    seen = {root}
    queue = deque([root])
    while queue:
        triple = queue.popleft()
        for neighbour in equation.neighbours(triple):
            if min(neighbour) >= 1 and max(neighbour) <= bound and neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    triples = sorted({_normalized(t, equation) for t in seen if max(t) <= bound})
    logger.debug("%s: %d solutions with components <= %d", equation.name, len(triples), bound)
    return [MarkoffTriple(*t, equation_name=equation.name) for t in triples]


def brute_force_markoff(bound: int, equation: MarkoffEquation = SQRT2_MARKOFF) -> list[MarkoffTriple]:
    """
    Exhaustive oracle: solve for the last component of every (x, y1) pair.

    c*y2^2 - k*x*y1*y2 + (a*x^2 + b*y1^2) = 0 has integer roots only for a square discriminant.
    """
    a, b, c, k = equation.a, equation.b, equation.c, equation.k
    found = set()
    for x in range(1, bound + 1):
        for y1 in range(1, bound + 1):
            disc = (k * x * y1) ** 2 - 4 * c * (a * x * x + b * y1 * y1)
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for numerator in (k * x * y1 - root, k * x * y1 + root):
                if numerator > 0 and numerator % (2 * c) == 0 and numerator // (2 * c) <= bound:
                    found.add(_normalized((x, y1, numerator // (2 * c)), equation))
    return [MarkoffTriple(*t, equation_name=equation.name) for t in sorted(found)]


def markoff_values(bound: int) -> tuple[list[int], list[int]]:
    """Distinct x-values and y-values of the solutions of 2x^2 + y1^2 + y2^2 = 4xy1y2 within the bound."""
    triples = markoff_tree(bound)
    xs = sorted({t.x for t in triples})
    ys = sorted({y for t in triples for y in (t.y1, t.y2)})
    return xs, ys


# ----------------------------------------------------------------------
# Spectra
# ----------------------------------------------------------------------


def _sqrt2_family(case: SpaceCase, bound: int, scale: sympy.Expr, provenance: Provenance) -> list[SpectrumValue]:
    xs, ys = markoff_values(bound)
    values = [SpectrumValue(case, sympy.sqrt(4 - sympy.Rational(1, x * x)) * scale, f"x={x}", provenance) for x in xs]
    values += [SpectrumValue(case, sympy.sqrt(4 - sympy.Rational(2, y * y)) * scale, f"y={y}", provenance) for y in ys]
    return values


def spectrum_family(case: SpaceCase, bound: int) -> list[SpectrumValue]:
    """
    Values generated from Markoff-type solutions with components <= bound, ascending.

    S1_I and S2_I use 2x^2 + y1^2 + y2^2 = 4xy1y2 directly; S1_II rescales the S1_I family
    by 1/sqrt2 and S1_III rescales the classical Markoff values sqrt(9 - 4/m^2) by 1/sqrt2.

    Raises:
        SpectrumUnavailableError: for cases with only cited constants
    """
    if case is SpaceCase.S1_I:
        values = _sqrt2_family(case, bound, sympy.Integer(1), Provenance.GENERATED)
    elif case is SpaceCase.S1_II:
        values = _sqrt2_family(case, bound, 1 / sympy.sqrt(2), Provenance.DERIVED)
    elif case is SpaceCase.S1_III:
        ms = sorted({m for t in markoff_tree(bound, CLASSICAL_MARKOFF) for m in t.as_tuple()})
        values = [
            SpectrumValue(case, sympy.sqrt(9 - sympy.Rational(4, m * m)) / sympy.sqrt(2), f"m={m}", Provenance.DERIVED)
            for m in ms
        ]
    elif case is SpaceCase.S2_I:
        xs, _ = markoff_values(bound)
        values = [
            SpectrumValue(case, sympy.sqrt(2 - sympy.Rational(1, 2 * x * x)), f"x={x}", Provenance.GENERATED)
            for x in xs
        ]
        values.append(
            SpectrumValue(case, sympy.sqrt(sympy.Rational(3, 10) * sympy.sqrt(41)), "sporadic", Provenance.GENERATED)
        )
    else:
        raise SpectrumUnavailableError(str(case))
    return sorted(values, key=lambda v: (v.sort_key(), v.generator))


def discrete_spectrum(case: SpaceCase, bound: int) -> list[SpectrumValue]:
    """
    Initial discrete part of a case's spectrum up to the generator bound.

    Cases without a generated family return their cited minimum and limit point.
    """
    try:
        return spectrum_family(case, bound)
    except SpectrumUnavailableError:
        logger.info("%s: only cited constants available", case)
        return cited_constants(case)


def write_spectrum_csv(values: list[SpectrumValue], stream: TextIO, digits: int = 30) -> None:
    """Write spectrum values as CSV with a header row."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for value in values:
        writer.writerow(value.csv_row(digits))
