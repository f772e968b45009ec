"""The register machine that generates integer functions.

An integer function (IF) is a finite 4-connected lattice path: a sequence of
integer pairs in which consecutive pairs differ by exactly 1 in exactly one
coordinate.  The generator drives such paths from a bank of 16 registers: two
regulators (RX, RY) whose comparison picks the next step axis, and 14 ranked
work registers that feed each other in a fixed cascade.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Union

#: Register values are kept inside +/- REGISTER_CAPACITY.  Arithmetic is exact
#: (Python ints); exceeding the capacity raises instead of wrapping.
REGISTER_CAPACITY = 2**63 - 1

WORK_REGISTERS = (
    "X", "Y",
    "XX", "XY", "YX", "YY",
    "XXX", "XXY", "XYX", "XYY", "YXX", "YXY", "YYX", "YYY",
)
REGULATORS = ("RX", "RY")
ALL_REGISTERS = REGULATORS + WORK_REGISTERS


class IntegerFunctionError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(IntegerFunctionError):
    """Malformed textual input (step strings, config or trace files)."""


class RegisterOverflowError(IntegerFunctionError):
    """A register operation left the +/- REGISTER_CAPACITY range."""


class CapExhaustedError(IntegerFunctionError):
    """A predicate stop rule hit its step cap before the predicate fired."""


class PreconditionError(IntegerFunctionError):
    """An operation was called with inputs outside its contract."""


class InternalConsistencyError(IntegerFunctionError):
    """The generator violated one of its own structural guarantees."""


class Axis(enum.Enum):
    I = "i"
    J = "j"

    @property
    def letter(self) -> str:
        """Work-register letter that fires on steps of this axis."""
        return "X" if self is Axis.I else "Y"

    @property
    def regulator(self) -> str:
        return "RX" if self is Axis.I else "RY"

    @property
    def other(self) -> "Axis":
        return Axis.J if self is Axis.I else Axis.I


class StepKind(NamedTuple):
    """One lattice move: an axis and a +/-1 direction."""

    axis: Axis
    sign: int

    @property
    def token(self) -> str:
        return self.axis.value + ("+" if self.sign > 0 else "-")

    @classmethod
    def from_token(cls, token: str) -> "StepKind":
        if len(token) == 2 and token[0] in "ij" and token[1] in "+-":
            return cls(Axis(token[0]), 1 if token[1] == "+" else -1)
        raise ParseError(f"invalid step token {token!r} (expected i+, i-, j+ or j-)")


I_PLUS = StepKind(Axis.I, 1)
I_MINUS = StepKind(Axis.I, -1)
J_PLUS = StepKind(Axis.J, 1)
J_MINUS = StepKind(Axis.J, -1)

# Direction suffixes accepted in step strings; a bare letter means +.
_SIGN_SUFFIXES = {"": 1, "+": 1, "⁺": 1, "-": -1, "−": -1, "⁻": -1}


def parse_steps(text: str) -> tuple[StepKind, ...]:
    """Parse a whitespace- or comma-separated step string like "i j i j i-"."""
    steps = []
    for token in text.replace(",", " ").split():
        axis_char, suffix = token[0], token[1:]
        if axis_char not in ("i", "j") or suffix not in _SIGN_SUFFIXES:
            raise ParseError(f"invalid step token {token!r}")
        steps.append(StepKind(Axis(axis_char), _SIGN_SUFFIXES[suffix]))
    return tuple(steps)


class IntegerPair(NamedTuple):
    i: int
    j: int


class IntegerFunction:
    """A finite lattice path: a start pair plus a sequence of unit steps.

    The element list is derived eagerly; consecutive elements are neighbours
    by construction, so any step sequence yields a valid integer function.
    """

    __slots__ = ("start", "steps", "elements")

    def __init__(self, start, steps=()):
        self.start = IntegerPair(*start)
        self.steps = tuple(steps)
        i, j = self.start
        elements = [self.start]
        for step in self.steps:
            if step.axis is Axis.I:
                i += step.sign
            else:
                j += step.sign
            elements.append(IntegerPair(i, j))
        self.elements = tuple(elements)

    @property
    def length(self) -> int:
        """Number of steps (one less than the number of elements)."""
        return len(self.steps)

    @property
    def end(self) -> IntegerPair:
        return self.elements[-1]

    def is_monotone(self) -> bool:
        return all(step.sign > 0 for step in self.steps)

    def transposed(self) -> "IntegerFunction":
        """Swap the roles of the two coordinates (i <-> j)."""
        return IntegerFunction(
            IntegerPair(self.start.j, self.start.i),
            tuple(StepKind(s.axis.other, s.sign) for s in self.steps),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerFunction):
            return NotImplemented
        return self.start == other.start and self.steps == other.steps

    def __hash__(self) -> int:
        return hash((self.start, self.steps))

    def __repr__(self) -> str:
        return (f"IntegerFunction(start={tuple(self.start)}, "
                f"length={self.length}, end={tuple(self.end)})")


def from_step_sequence(start, steps) -> IntegerFunction:
    """Build an integer function from a start pair and steps.

    ``steps`` may be StepKind instances or a step string such as
    "i j i j i i j" (see parse_steps).
    """
    if isinstance(steps, str):
        steps = parse_steps(steps)
    return IntegerFunction(start, steps)


def _checked(value: int, context: str) -> int:
    if value > REGISTER_CAPACITY or value < -REGISTER_CAPACITY:
        raise RegisterOverflowError(f"register overflow in {context}: {value}")
    return value


@dataclass(frozen=True)
class RegisterBank:
    """State of the 16 generator registers.

    The rank of a work register is the length of its identifier.  On a step
    with letter L (X for i steps, Y for j steps) every work register whose
    name ends in L is added into the register named by dropping that letter;
    the empty prefix maps to the step axis' regulator.
    """

    RX: int = 0
    RY: int = 0
    X: int = 0
    Y: int = 0
    XX: int = 0
    XY: int = 0
    YX: int = 0
    YY: int = 0
    XXX: int = 0
    XXY: int = 0
    XYX: int = 0
    XYY: int = 0
    YXX: int = 0
    YXY: int = 0
    YYX: int = 0
    YYY: int = 0

    def __post_init__(self):
        for name in ALL_REGISTERS:
            value = getattr(self, name)
            if not isinstance(value, int):
                raise PreconditionError(
                    f"register {name} must be an integer, got {type(value).__name__}")
            _checked(value, f"initial value of {name}")

    @classmethod
    def from_mapping(cls, mapping) -> "RegisterBank":
        unknown = sorted(set(mapping) - set(ALL_REGISTERS))
        if unknown:
            raise PreconditionError(f"unknown register name(s): {', '.join(unknown)}")
        return cls(**dict(mapping))

    def value(self, name: str) -> int:
        if name not in ALL_REGISTERS:
            raise PreconditionError(f"unknown register name: {name}")
        return getattr(self, name)

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in ALL_REGISTERS}


def register_rank(name: str) -> int:
    """Rank of a work register (1, 2 or 3); regulators have no rank."""
    if name not in WORK_REGISTERS:
        raise PreconditionError(f"{name} is not a work register")
    return len(name)


def _cascade_pairs(letter: str) -> tuple[tuple[str, str], ...]:
    # Highest rank first: within one step every updated value feeds the next
    # addition down the chain (XX += XXX runs before X += XX before RX += X).
    pairs = []
    for rank in (3, 2, 1):
        for name in WORK_REGISTERS:
            if len(name) == rank and name.endswith(letter):
                target = name[:-1] or ("RX" if letter == "X" else "RY")
                pairs.append((name, target))
    return tuple(pairs)


_CASCADES = {"X": _cascade_pairs("X"), "Y": _cascade_pairs("Y")}


def choose_step(bank: RegisterBank) -> Axis:
    """Pick the next step axis by comparing the regulators.

    A j step is taken only when RX - RY is strictly positive; ties fall to
    the i side.
    """
    return Axis.J if _checked(bank.RX - bank.RY, "RX - RY") > 0 else Axis.I


def apply_step(bank: RegisterBank, axis: Axis) -> RegisterBank:
    """Run the register cascade for one step of the given axis.

    Pure: returns a new bank, leaving the input untouched.
    """
    values = bank.as_dict()
    for source, target in _CASCADES[axis.letter]:
        values[target] = _checked(values[target] + values[source],
                                  f"{target} += {source}")
    return RegisterBank(**values)


def _apply_step_harmonized(bank: RegisterBank, axis: Axis) -> tuple[RegisterBank, int]:
    # Same cascade as apply_step, but the regulator gains the magnitude of the
    # rank-1 rate register and the caller moves the coordinate by its sign
    # (sign of 0 counts as +1).  With positive rates this reduces exactly to
    # apply_step, which is what makes monotone runs a special case.
    values = bank.as_dict()
    pairs = _CASCADES[axis.letter]
    for source, target in pairs[:-1]:
        values[target] = _checked(values[target] + values[source],
                                  f"{target} += {source}")
    rate_name, regulator = pairs[-1]
    rate = values[rate_name]
    sign = 1 if rate >= 0 else -1
    values[regulator] = _checked(values[regulator] + abs(rate),
                                 f"{regulator} += |{rate_name}|")
    return RegisterBank(**values), sign


@dataclass(frozen=True)
class StepCount:
    """Stop after exactly ``count`` steps."""

    count: int

    def __post_init__(self):
        if not isinstance(self.count, int) or self.count < 1:
            raise PreconditionError("step count must be a positive integer")


@dataclass(frozen=True)
class WhilePositive:
    """Stop after the step that leaves ``register`` non-positive.

    The predicate is checked after every step, so the terminating step is
    included in the run.  ``cap`` bounds the run even if the register never
    goes non-positive; hitting it raises CapExhaustedError.
    """

    register: str
    cap: int

    def __post_init__(self):
        if self.register not in ALL_REGISTERS:
            raise PreconditionError(f"unknown register name: {self.register}")
        if not isinstance(self.cap, int) or self.cap < 1:
            raise PreconditionError("cap must be a positive integer")


StopRule = Union[StepCount, WhilePositive]


class GenerationMode(enum.Enum):
    MONOTONE = "MONOTONE"
    SIGN_HARMONIZED = "SIGN_HARMONIZED"


@dataclass(frozen=True)
class GeneratorConfig:
    start: IntegerPair
    bank: RegisterBank
    stop: StopRule
    mode: GenerationMode = GenerationMode.MONOTONE

    def __post_init__(self):
        object.__setattr__(self, "start", IntegerPair(*self.start))
        if not isinstance(self.stop, (StepCount, WhilePositive)):
            raise PreconditionError("stop must be a StepCount or WhilePositive rule")


class TraceRecord(NamedTuple):
    """State after one executed step: its index, kind, position and bank."""

    k: int
    step: StepKind
    i: int
    j: int
    bank: RegisterBank


@dataclass(frozen=True)
class GenerationTrace:
    records: tuple[TraceRecord, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TraceRecord]:
        return iter(self.records)

    def __getitem__(self, index):
        return self.records[index]

    def regulator_series(self, axis: Axis) -> list[int]:
        """Values the axis' regulator took, one per step of that axis."""
        return [r.bank.value(axis.regulator) for r in self.records
                if r.step.axis is axis]

    def register_series(self, name: str) -> list[int]:
        return [r.bank.value(name) for r in self.records]


def implied_designation(bank: RegisterBank) -> frozenset[str]:
    """Work registers that are non-zero and provably constant for this bank.

    A register is structurally constant when every higher-rank register that
    could feed it starts at zero and is itself constant; rank-3 registers are
    always constant.  The non-zero constant registers form the IF's type
    designation (written {X, Y}, {XXY, Y}, ...).
    """
    def constant(name):
        if len(name) == 3:
            return True
        return all(bank.value(f) == 0 and constant(f) for f in (name + "X", name + "Y"))

    return frozenset(n for n in WORK_REGISTERS if bank.value(n) != 0 and constant(n))


def designation_violations(designation, initial_bank: RegisterBank,
                           trace: GenerationTrace) -> list[str]:
    """Names from ``designation`` whose value changed anywhere in the trace."""
    unknown = sorted(set(designation) - set(WORK_REGISTERS))
    if unknown:
        raise PreconditionError(f"designation contains non-work registers: {unknown}")
    expected = {name: initial_bank.value(name) for name in designation}
    changed = set()
    for record in trace.records:
        for name, want in expected.items():
            if record.bank.value(name) != want:
                changed.add(name)
    return sorted(changed)


def _generate(config: GeneratorConfig, harmonized: bool):
    bank = config.bank
    designation = implied_designation(bank)
    i, j = config.start
    if isinstance(config.stop, StepCount):
        limit, watched = config.stop.count, None
    else:
        limit, watched = config.stop.cap, config.stop.register
    steps = []
    records = []
    k = 0
    while True:
        if k >= limit:
            if watched is None:
                break
            raise CapExhaustedError(
                f"{watched} still positive after {limit} steps (cap exhausted)")
        k += 1
        axis = choose_step(bank)
        if harmonized:
            bank, sign = _apply_step_harmonized(bank, axis)
        else:
            bank = apply_step(bank, axis)
            sign = 1
        if axis is Axis.I:
            i += sign
        else:
            j += sign
        step = StepKind(axis, sign)
        steps.append(step)
        records.append(TraceRecord(k, step, i, j, bank))
        if watched is not None and bank.value(watched) <= 0:
            break
    trace = GenerationTrace(tuple(records))
    changed = designation_violations(designation, config.bank, trace)
    if changed:
        raise InternalConsistencyError(
            f"type-designation registers changed during generation: {changed}")
    return IntegerFunction(config.start, steps), trace


def generate(config: GeneratorConfig) -> tuple[IntegerFunction, GenerationTrace]:
    """Run the monotone generator until the stop rule fires.

    Each step picks an axis from the regulators, runs the cascade, then moves
    the chosen coordinate by +1.  Returns the integer function and the full
    per-step trace.  Registers in the bank's implied type designation are
    audited for constancy after the run.
    """
    if config.mode is not GenerationMode.MONOTONE:
        raise PreconditionError(
            "generate handles monotone mode only; use curves.composite_generate")
    return _generate(config, harmonized=False)
