"""Discrete differentiation of integer functions.

A step that changes the coordinate under study makes its element
"characteristic".  The difference of the cross coordinates of two
characteristic elements whose study coordinates are D apart is the
characteristic difference of class D; collected over all coordinates these
form a difference field, and the fields over all classes describe how the
two step kinds are interleaved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .core import (
    Axis,
    GenerationTrace,
    IntegerFunction,
    IntegerPair,
    I_PLUS,
    J_MINUS,
    J_PLUS,
    PreconditionError,
)


class CharacteristicIndex(NamedTuple):
    """Step index whose step changed the given axis."""

    k: int
    axis: Axis


def characteristic_indices(f: IntegerFunction, axis: Axis) -> list[CharacteristicIndex]:
    """All step indices k >= 1 whose step moved the given axis, in order."""
    return [CharacteristicIndex(k, axis)
            for k, step in enumerate(f.steps, start=1) if step.axis is axis]


def _characteristic_points(f: IntegerFunction, axis: Axis) -> list[tuple[int, int]]:
    """(study coordinate, cross coordinate) at each characteristic element.

    The study axis must only take + steps; otherwise a characteristic
    coordinate could repeat and the field would be ill-defined.  The cross
    axis is unconstrained, which is what allows differentiating derivatives
    whose cross coordinate goes back down.
    """
    points = []
    for k, step in enumerate(f.steps, start=1):
        if step.axis is not axis:
            continue
        if step.sign < 0:
            raise PreconditionError(
                f"{axis.value} coordinate decreases at step {k}; difference fields "
                f"need a non-decreasing {axis.value} coordinate")
        element = f.elements[k]
        if axis is Axis.I:
            points.append((element.i, element.j))
        else:
            points.append((element.j, element.i))
    return points


@dataclass(frozen=True)
class DifferenceField:
    """Characteristic differences of one class, ordered by coordinate."""

    axis: Axis
    diff_class: int
    entries: tuple[tuple[int, int], ...]

    def coordinates(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.entries)

    def values(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.entries)

    def scaled(self) -> tuple["ScaledDifference", ...]:
        return tuple(scale_difference(d) for _, d in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)


def difference_field(f: IntegerFunction, axis: Axis, diff_class: int) -> DifferenceField:
    """Differences of the cross coordinate over spans of ``diff_class``.

    For every characteristic coordinate c that has a characteristic partner
    at c + diff_class, emits (c, cross(c + diff_class) - cross(c)).
    Coordinates without a partner are omitted; a class at or beyond the
    coordinate span yields an empty field.
    """
    if not isinstance(diff_class, int) or diff_class < 1:
        raise PreconditionError("difference class must be a positive integer")
    points = _characteristic_points(f, axis)
    cross = {c: x for c, x in points}
    entries = tuple((c, cross[c + diff_class] - x)
                    for c, x in points if c + diff_class in cross)
    return DifferenceField(axis, diff_class, entries)


@dataclass(frozen=True)
class ScaledDifference:
    """The two-integer difference {d, d - 1} that survives scale refinement."""

    upper: int

    @property
    def lower(self) -> int:
        return self.upper - 1

    def as_set(self) -> frozenset[int]:
        return frozenset((self.upper, self.lower))

    def __contains__(self, value: int) -> bool:
        return value == self.upper or value == self.lower


def scale_difference(d: int) -> ScaledDifference:
    return ScaledDifference(d)


def class_derivative(f: IntegerFunction, axis: Axis, diff_class: int) -> IntegerFunction:
    """Canonical integer function realizing one difference field.

    The derivative passes through [c, d] for every field entry (c, d), taking
    one i step and then as many j steps as the value change requires between
    consecutive entries.  Any path hitting d or d - 1 at each coordinate
    would qualify; the upper representative is fixed for determinism.
    """
    field = difference_field(f, axis, diff_class)
    if not field.entries:
        raise PreconditionError(
            f"no characteristic pairs {field.diff_class} apart; empty field")
    (start_c, start_d), *rest = field.entries
    steps = []
    previous = start_d
    for _, d in rest:
        steps.append(I_PLUS)
        steps.extend([J_PLUS if d > previous else J_MINUS] * abs(d - previous))
        previous = d
    return IntegerFunction(IntegerPair(start_c, start_d), steps)


def full_derivative(f: IntegerFunction, axis: Axis) -> dict[int, DifferenceField]:
    """Difference fields for every class that has at least one entry."""
    points = _characteristic_points(f, axis)
    result: dict[int, DifferenceField] = {}
    if len(points) < 2:
        return result
    span = points[-1][0] - points[0][0]
    for diff_class in range(1, span + 1):
        field = difference_field(f, axis, diff_class)
        if field.entries:
            result[diff_class] = field
    return result


@dataclass(frozen=True)
class IntegerScale:
    """Real-world value of one integer step, as an exact rational."""

    unit: Fraction

    def __post_init__(self):
        if isinstance(self.unit, float):
            raise PreconditionError("scale unit must be exact; pass a Fraction, not a float")
        object.__setattr__(self, "unit", Fraction(self.unit))
        if self.unit <= 0:
            raise PreconditionError("scale unit must be positive")

    def refined(self, m: int) -> "IntegerScale":
        if m < 1:
            raise PreconditionError("refinement factor must be a positive integer")
        return IntegerScale(self.unit / m)

    def cell_of(self, x: Fraction, y: Fraction) -> IntegerPair:
        return IntegerPair(math.floor(x / self.unit), math.floor(y / self.unit))


def refinement_compatible(coarse: IntegerFunction, fine: IntegerFunction,
                          m: int) -> list[IntegerPair]:
    """Coarse elements with no fine witness under an m-fold refinement.

    A coarse element [i, j] is witnessed by a fine element [i', j'] with
    m*i <= i' < m*(i+1) and m*j <= j' < m*(j+1).  An empty list means the
    two functions belong together at scale ratio m.
    """
    if not isinstance(m, int) or m < 1:
        raise PreconditionError("refinement factor m must be a positive integer")
    covered = {(e.i // m, e.j // m) for e in fine.elements}
    return [e for e in coarse.elements if (e.i, e.j) not in covered]


def regulator_monotone_check(trace: GenerationTrace, axis_restricted: bool = False) -> bool:
    """Check the regulator sequences of a monotone-mode trace.

    With ``axis_restricted`` false, the RX values produced by i steps and the
    RY values produced by j steps must each be non-decreasing.

    With ``axis_restricted`` true, the combined per-step regulator sequence is
    restricted, per study axis, to the characteristic steps of that axis and
    the steps immediately preceding them; regulator values produced between
    two same-kind steps drop out.  The trace passes if some axis with at
    least one characteristic step sees a non-decreasing subsequence (the
    restriction exists to support one axis' characteristic study, and which
    axis that is depends on which step kind is sparser).
    """
    records = list(trace)
    if not axis_restricted:
        for axis in (Axis.I, Axis.J):
            series = [r.bank.value(axis.regulator) for r in records
                      if r.step.axis is axis]
            if any(a > b for a, b in zip(series, series[1:])):
                return False
        return True

    any_study = False
    for axis in (Axis.I, Axis.J):
        positions = [t for t, r in enumerate(records) if r.step.axis is axis]
        if not positions:
            continue
        any_study = True
        keep = set(positions) | {t - 1 for t in positions if t > 0}
        series = [records[t].bank.value(records[t].step.axis.regulator)
                  for t in sorted(keep)]
        if all(a <= b for a, b in zip(series, series[1:])):
            return True
    return not any_study
