"""Curve families, the discrete quarter-circle experiment, and digitization.

Each preset fills the register bank so that the generator traces one curve
family; the family is named by its type designation, the set of constant
non-zero work registers ({X, Y} lines, {XX, Y} parabolas, {XXY, Y} sine-like
curves, ...).  The quarter-wave run of the {XXY, Y} type brackets pi/2
between two exact rationals.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    Axis,
    GenerationMode,
    GenerationTrace,
    GeneratorConfig,
    IntegerFunction,
    IntegerPair,
    PreconditionError,
    RegisterBank,
    RegisterOverflowError,
    StepCount,
    StepKind,
    WhilePositive,
    _generate,
)
from .calculus import IntegerScale

#: The single-regulator quarter-wave run stays below 2**63 for seeds up to
#: about 1e17 (|R| <= 2*seed plus a square-root-sized term); larger seeds
#: would need wider registers, so they are rejected up front.
PI_SEED_LIMIT = 10**17


def _config(start, bank, stop, mode=GenerationMode.MONOTONE) -> GeneratorConfig:
    return GeneratorConfig(start=IntegerPair(*start), bank=bank, stop=stop, mode=mode)


def _require_nonzero(**params) -> None:
    zeros = sorted(name for name, value in params.items() if value == 0)
    if zeros:
        raise PreconditionError(
            f"type-designation register(s) must be non-zero: {', '.join(zeros)}")


def line_config(x: int, y: int, steps: int, start=(0, 0)) -> GeneratorConfig:
    """{X, Y} straight line: X is the j rate, Y the i rate."""
    _require_nonzero(X=x, Y=y)
    return _config(start, RegisterBank(X=x, Y=y), StepCount(steps))


def uniform_motion_config(i_total: int, j_total: int) -> GeneratorConfig:
    """{X, Y} line covering j_total distance units in i_total time units.

    Runs i_total + j_total steps from the origin, distributing the two step
    kinds as uniformly as possible.
    """
    if i_total < 1 or j_total < 1:
        raise PreconditionError("uniform motion needs positive step totals")
    return line_config(x=j_total, y=i_total, steps=i_total + j_total)


def parabola_config(xx: int, y: int, steps: int, x: int = 0, start=(0, 0)) -> GeneratorConfig:
    """{XX, Y} parabola; xx acts as a constant acceleration on the rate x."""
    _require_nonzero(XX=xx, Y=y)
    return _config(start, RegisterBank(X=x, Y=y, XX=xx), StepCount(steps))


def free_fall_config(acceleration: int, time_rate: int, steps: int,
                     initial_velocity: int = 0) -> GeneratorConfig:
    """{XX, Y} free fall: i counts time units, j the covered distance."""
    return parabola_config(xx=acceleration, y=time_rate, steps=steps, x=initial_velocity)

def exponential_config(xy: int, y: int, steps: int, x: int = 0, start=(0, 0)) -> GeneratorConfig:
    """{XY, Y} exponential/logarithm: each j step feeds XY into the i rate."""
    _require_nonzero(XY=xy, Y=y)
    return _config(start, RegisterBank(X=x, Y=y, XY=xy), StepCount(steps))


def conic_config(xx: int, yy: int, steps: int, x: int = 0, y: int = 0,
                 start=(0, 0)) -> GeneratorConfig:
    """{XX, YY} ellipse or hyperbola, by the signs of the two accelerations."""
    _require_nonzero(XX=xx, YY=yy)
    return _config(start, RegisterBank(X=x, Y=y, XX=xx, YY=yy), StepCount(steps))


def sine_config(xxy: int, y: int, steps: int, x: int = 0, xx: int = 0,
                start=(0, 0)) -> GeneratorConfig:
    """{XXY, Y} sine-like curve: j steps bend the acceleration XX by xxy."""
    _require_nonzero(XXY=xxy, Y=y)
    return _config(start, RegisterBank(X=x, Y=y, XX=xx, XXY=xxy), StepCount(steps))


def semicubic_config(xx: int, yyy: int, steps: int, x: int = 0, yy: int = 0,
                     y: int = 0, start=(0, 0)) -> GeneratorConfig:
    """{XX, YYY} semi-cubic parabola."""
    _require_nonzero(XX=xx, YYY=yyy)
    return _config(start, RegisterBank(X=x, Y=y, XX=xx, YY=yy, YYY=yyy), StepCount(steps))


def harmonic_config(resolution: int, cap: int | None = None) -> GeneratorConfig:
    """{XXY, Y} simple harmonic motion from rest, i.e. the quarter-wave setup.

    Both rates start at ``resolution`` (unit tangent), the acceleration bends
    negative from the first j step (XX and XXY start at -1), and the run
    watches the X register: the quarter period ends on the step where X
    stops being positive.
    """
    if resolution < 2:
        raise PreconditionError("resolution must be at least 2")
    if cap is None:
        # i + j grows like 2.6 * sqrt(resolution); leave generous headroom.
        cap = 4 * math.isqrt(resolution) + 16
    bank = RegisterBank(X=resolution, Y=resolution, XX=-1, XXY=-1)
    return _config((0, 0), bank, WhilePositive("X", cap))


def egg_figure_config(steps: int = 2000) -> GeneratorConfig:
    """{XX, YYY} closed egg curve (sign-harmonized composite run)."""
    bank = RegisterBank(X=500000, Y=10, XX=-10000, YY=10000, YYY=-125)
    return _config((25, 60), bank, StepCount(steps), GenerationMode.SIGN_HARMONIZED)


def sinusoid_figure_config(steps: int = 2000) -> GeneratorConfig:
    """{XXY, Y} full sinusoid arc (sign-harmonized composite run)."""
    bank = RegisterBank(RX=500, X=0, Y=600, XX=-200, XXY=-3)
    return _config((0, 140), bank, StepCount(steps), GenerationMode.SIGN_HARMONIZED)


PRESETS = {
    "line": line_config,
    "uniform": uniform_motion_config,
    "parabola": parabola_config,
    "freefall": free_fall_config,
    "exponential": exponential_config,
    "conic": conic_config,
    "sine": sine_config,
    "harmonic": harmonic_config,
    "semicubic": semicubic_config,
    "egg_figure": egg_figure_config,
    "sinusoid_figure": sinusoid_figure_config,
}


def preset_config(preset: str, **params) -> GeneratorConfig:
    """Build a generator config for a named curve preset."""
    try:
        builder = PRESETS[preset]
    except KeyError:
        raise PreconditionError(
            f"unknown preset {preset!r}; known: {', '.join(sorted(PRESETS))}") from None
    return builder(**params)


@dataclass(frozen=True)
class PiResult:
    """Outcome of a quarter-wave run: the corner pair and its pi/2 bracket."""

    i_quarter: int
    j_quarter: int
    lower: Fraction
    upper: Fraction
    step_count: int
    elapsed: float

    def __post_init__(self):
        if not (0 < self.lower < self.upper):
            raise PreconditionError("bounds must be positive with lower < upper")


def pi_bounds(x0: int) -> PiResult:
    """Bracket pi/2 by running the quarter wave at seed ``x0``.

    The {XXY, Y} machine runs with X = Y = x0, XX = XXY = -1 and a single
    combined regulator (the difference RX - RY, which is all the step choice
    ever looks at) until the X register stops being positive.  The element
    [i, j] reached on that step spans the quarter period, and the unit
    squares at the two ends give the exact rational bounds
    (i - 1)/(j + 1) < pi/2 < (i + 1)/j.
    """
    if not isinstance(x0, int) or x0 < 2:
        raise PreconditionError("x0 must be an integer >= 2")
    if x0 > PI_SEED_LIMIT:
        raise RegisterOverflowError(
            f"x0 = {x0} would push registers past 2**63; limit is {PI_SEED_LIMIT}")
    started = time.perf_counter()
    x = y = x0
    xx = -1
    xxy = -1
    r = 0
    i = j = 0
    while x > 0:
        if r > 0:
            xx += xxy
            r -= y
            j += 1
        else:
            x += xx
            r += x
            i += 1
    elapsed = time.perf_counter() - started
    return PiResult(
        i_quarter=i,
        j_quarter=j,
        lower=Fraction(i - 1, j + 1),
        upper=Fraction(i + 1, j),
        step_count=i + j,
        elapsed=elapsed,
    )


def format_bound(value: Fraction, round_up: bool, digits: int = 7) -> str:
    """Render a positive rational at ``digits`` significant digits, rounded
    outward (down for lower bounds, up for upper bounds), trailing zeros
    trimmed.  Rounding is exact rational arithmetic throughout.
    """
    if value <= 0:
        raise PreconditionError("bound formatting expects a positive value")
    exponent = 0
    v = value
    while v >= 10:
        v /= 10
        exponent += 1
    while v < 1:
        v *= 10
        exponent -= 1
    scaled = value * Fraction(10) ** (digits - 1 - exponent)
    mantissa = math.ceil(scaled) if round_up else math.floor(scaled)
    if mantissa >= 10**digits:  # rounding up crossed a power of ten
        mantissa //= 10
        exponent += 1
    return _decimal_string(mantissa, exponent - digits + 1)


def _decimal_string(mantissa: int, power: int) -> str:
    text = str(mantissa)
    if power >= 0:
        return text + "0" * power
    point = len(text) + power
    if point <= 0:
        text = "0." + "0" * (-point) + text
    else:
        text = text[:point] + "." + text[point:]
    return text.rstrip("0").rstrip(".")


@dataclass(frozen=True)
class RealSampleSeries:
    """Dense samples (x, y) of a curve segment, as exact rationals.

    Floats are rejected so that rounding noise cannot leak into the integer
    world; convert explicitly (e.g. Fraction(math.sin(t))) if a float value
    really is the intended sample.
    """

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        converted = []
        for x, y in self.points:
            if isinstance(x, float) or isinstance(y, float):
                raise PreconditionError(
                    "samples must be exact rationals; convert floats explicitly")
            converted.append((Fraction(x), Fraction(y)))
        for (x0, _), (x1, _) in zip(converted, converted[1:]):
            if x1 <= x0:
                raise PreconditionError("sample x values must be strictly increasing")
        object.__setattr__(self, "points", tuple(converted))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "RealSampleSeries":
        return cls(tuple((x, y) for x, y in pairs))

    def __len__(self) -> int:
        return len(self.points)


def digitize(samples: RealSampleSeries, scale: IntegerScale) -> IntegerFunction:
    """Discrete counterpart of a sampled curve at the given scale.

    Every sample lands in the unit cell (floor(x/u), floor(y/u)); consecutive
    duplicates collapse, edge-adjacent cells become single steps, and an
    exact corner crossing (diagonal cell change) is resolved by taking the i
    step first.  A jump of more than one cell in either coordinate means the
    samples are too sparse for this scale.
    """
    if not samples.points:
        raise PreconditionError("at least one sample is required")
    cells: list[IntegerPair] = []
    for x, y in samples.points:
        cell = scale.cell_of(x, y)
        if not cells or cells[-1] != cell:
            cells.append(cell)
    steps: list[StepKind] = []
    for previous, current in zip(cells, cells[1:]):
        di = current.i - previous.i
        dj = current.j - previous.j
        if abs(di) > 1 or abs(dj) > 1:
            raise PreconditionError(
                f"samples too sparse: cell jump ({di}, {dj}) between "
                f"{tuple(previous)} and {tuple(current)}")
        if di:
            steps.append(StepKind(Axis.I, di))
        if dj:
            steps.append(StepKind(Axis.J, dj))
    return IntegerFunction(cells[0], steps)


def composite_generate(config: GeneratorConfig) -> tuple[IntegerFunction, GenerationTrace]:
    """Run the sign-harmonized generator for composite (non-monotone) curves.

    Identical to the monotone generator except that an i step moves the
    coordinate by the sign of X while RX grows by |X| (symmetrically for j
    steps and Y).  With rates that stay positive this coincides with
    core.generate step for step.
    """
    if config.mode is not GenerationMode.SIGN_HARMONIZED:
        raise PreconditionError("composite_generate requires SIGN_HARMONIZED mode")
    if not isinstance(config.stop, StepCount):
        raise PreconditionError("composite runs must use a StepCount stop rule")
    return _generate(config, harmonized=True)
