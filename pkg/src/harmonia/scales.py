"""Scale constructions by proportional division of the octave.

Every constructor records a trace of the mean/ratio operations it
performed; :func:`replay` recomputes that trace from scratch and must
rebuild the same notes.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from harmonia.exactmath import ratio_text
from harmonia.means import arithmetic_mean, geometric_mean, harmonic_mean

F = Fraction

_EXP_TAG = re.compile(r"^2\^\((\d+)/(\d+)\)$")


@dataclass(frozen=True, order=False)
class Pitch:
    """A pitch value: exact ``ratio`` or a symbolic irrational ``tag``.

    Tags are ``sqrt2`` or ``2^(a/b)`` (reduced, 0 < a/b < 1, a/b != 1/2).
    Equality of irrational pitches is by tag.
    """

    ratio: Fraction | None = None
    tag: str | None = None

    def __post_init__(self):
        if (self.ratio is None) == (self.tag is None):
            raise ValueError("a Pitch is either a ratio or a tagged irrational")
        if self.ratio is not None:
            if not isinstance(self.ratio, Fraction):
                object.__setattr__(self, "ratio", Fraction(self.ratio))
            if self.ratio <= 0:
                raise ValueError(f"pitch ratio must be positive, got {self.ratio}")
        elif self.tag != "sqrt2" and not _EXP_TAG.match(self.tag):
            raise ValueError(f"unknown irrational tag {self.tag!r}")

    @classmethod
    def of(cls, x) -> "Pitch":
        if isinstance(x, Pitch):
            return x
        return cls(ratio=Fraction(x))

    @classmethod
    def power_of_two(cls, exponent: Fraction) -> "Pitch":
        """2**exponent, exact when the exponent is an integer."""
        exponent = Fraction(exponent)
        if exponent.denominator == 1:
            return cls(ratio=Fraction(2) ** exponent.numerator)
        whole = math.floor(exponent)
        if whole != 0:
            raise ValueError("only exponents in [0, 1] are representable as tags")
        if exponent == Fraction(1, 2):
            return cls(tag="sqrt2")
        return cls(tag=f"2^({exponent.numerator}/{exponent.denominator})")

    @property
    def is_rational(self) -> bool:
        return self.ratio is not None

    @property
    def exponent(self) -> Fraction | None:
        """log2 of the value when it is a rational power of two."""
        if self.tag == "sqrt2":
            return Fraction(1, 2)
        if self.tag is not None:
            m = _EXP_TAG.match(self.tag)
            return Fraction(int(m.group(1)), int(m.group(2)))
        r = self.ratio
        n, d = r.numerator, r.denominator
        if n & (n - 1) == 0 and d & (d - 1) == 0:
            return Fraction(n.bit_length() - d.bit_length())
        return None

    @property
    def value(self) -> float:
        if self.ratio is not None:
            return float(self.ratio)
        return 2.0 ** float(self.exponent)

    @property
    def cents(self) -> float:
        return to_cents(self)

    def text(self) -> str:
        return ratio_text(self.ratio) if self.ratio is not None else self.tag

    def to_json(self) -> dict:
        if self.ratio is not None:
            return {"num": self.ratio.numerator, "den": self.ratio.denominator}
        return {"irrational": self.tag}

    @classmethod
    def from_json(cls, obj: dict) -> "Pitch":
        if "irrational" in obj:
            return cls(tag=obj["irrational"])
        return cls(ratio=Fraction(obj["num"], obj["den"]))

    def __lt__(self, other: "Pitch") -> bool:
        if self.ratio is not None and other.ratio is not None:
            return self.ratio < other.ratio
        return self.value < other.value

    def __str__(self) -> str:
        return self.text()


SQRT2 = Pitch(tag="sqrt2")
UNISON = Pitch.of(1)
OCTAVE = Pitch.of(2)


def to_cents(p) -> float:
    p = Pitch.of(p)
    exp = p.exponent
    if exp is not None:
        return 1200.0 * float(exp)
    r = p.ratio
    return 1200.0 * (math.log2(r.numerator) - math.log2(r.denominator))


def octave_complement(p) -> Pitch:
    """2 / p for a pitch inside [1, 2]."""
    p = Pitch.of(p)
    if not 1.0 <= p.value <= 2.0:
        raise ValueError(f"{p} is outside the octave [1, 2]")
    if p.ratio is not None:
        return Pitch(ratio=2 / p.ratio)
    return Pitch.power_of_two(1 - p.exponent)


def octave_reduce(x: Fraction) -> Fraction:
    """Multiply or divide by 2 until ``1 <= x < 2`` (2 itself is kept)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(x)
    while x > 2:
        x /= 2
    while x < 1:
        x *= 2
    return x


# --- traces -----------------------------------------------------------------

_OPS = {
    "am": lambda a, b: arithmetic_mean(a, b),
    "hm": lambda a, b: harmonic_mean(a, b),
    "gm": lambda a, b: geometric_mean(a, b),
    "div": lambda a, b: a / b,
    "mul": lambda a, b: a * b,
    "reduce": lambda a: octave_reduce(a),
    "given": lambda a: a,
}


@dataclass(frozen=True)
class TraceStep:
    """One construction step; ``insert`` marks results that become notes."""

    op: str
    operands: tuple[Pitch, ...]
    result: Pitch
    insert: bool = True

    def to_json(self) -> dict:
        return {
            "op": self.op,
            "operands": [p.to_json() for p in self.operands],
            "result": self.result.to_json(),
            "insert": self.insert,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TraceStep":
        return cls(
            obj["op"],
            tuple(Pitch.from_json(o) for o in obj["operands"]),
            Pitch.from_json(obj["result"]),
            obj["insert"],
        )


def _evaluate(op: str, operands: tuple[Pitch, ...]) -> Pitch:
    if op == "gm":
        a, b = operands
        if a.is_rational and b.is_rational:
            g = geometric_mean(a.ratio, b.ratio)
            if isinstance(g, Fraction):
                return Pitch(ratio=g)
            # irrational square root of a power of two gets a tag
            exp = Pitch(ratio=a.ratio * b.ratio).exponent
            if exp is None:
                raise ValueError(f"cannot tag sqrt({a} * {b})")
            return Pitch.power_of_two(exp / 2)
        raise ValueError("geometric mean of irrational pitches is not traced")
    args = [o.ratio for o in operands]
    if any(a is None for a in args):
        raise ValueError(f"{op} needs rational operands")
    return Pitch(ratio=_OPS[op](*args))


class _Builder:
    def __init__(self):
        self.steps: list[TraceStep] = []

    def do(self, op: str, *operands, insert: bool = True) -> Fraction | Pitch:
        ops = tuple(Pitch.of(o) for o in operands)
        result = _evaluate(op, ops)
        self.steps.append(TraceStep(op, ops, result, insert))
        return result.ratio if result.is_rational else result


def replay(trace: Iterable[TraceStep]) -> tuple[Pitch, ...]:
    """Recompute every step and return the sorted inserted notes.

    Raises ``ValueError`` if a recorded result disagrees with the
    recomputation.
    """
    notes = set()
    for step in trace:
        got = _evaluate(step.op, step.operands)
        if got != step.result:
            raise ValueError(f"trace step {step.op}{step.operands} gave {got}, recorded {step.result}")
        if step.insert:
            notes.add(got)
    return tuple(sorted(notes))


@dataclass(frozen=True)
class Scale:
    label: str
    notes: tuple[Pitch, ...]
    construction_trace: tuple[TraceStep, ...] = field(default=(), compare=True)

    def __post_init__(self):
        notes = tuple(Pitch.of(n) for n in self.notes)
        object.__setattr__(self, "notes", notes)
        if notes[0] != UNISON or notes[-1] != OCTAVE:
            raise ValueError("a scale runs from 1/1 to 2/1")
        if any(not a < b for a, b in zip(notes, notes[1:])):
            raise ValueError("scale notes must be strictly increasing")

    @property
    def cents(self) -> list[float]:
        return [n.cents for n in self.notes]

    @property
    def ratios(self) -> list[Fraction]:
        return [n.ratio for n in self.notes if n.is_rational]

    def __contains__(self, x) -> bool:
        return Pitch.of(x) in self.notes

    def __len__(self) -> int:
        return len(self.notes)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "notes": [n.to_json() for n in self.notes],
            "cents": self.cents,
            "trace": [s.to_json() for s in self.construction_trace],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, obj: dict) -> "Scale":
        return cls(
            obj["label"],
            tuple(Pitch.from_json(n) for n in obj["notes"]),
            tuple(TraceStep.from_json(s) for s in obj.get("trace", [])),
        )

    def csv_rows(self) -> list[tuple[int, str, float]]:
        return [(i, n.text(), n.cents) for i, n in enumerate(self.notes)]


def _finish(label: str, b: _Builder) -> Scale:
    trace = tuple(b.steps)
    return Scale(label, replay(trace), trace)


def _pythagorean_steps(b: _Builder):
    b.do("given", 1)
    b.do("given", 2)
    fifth = b.do("am", 1, 2)
    fourth = b.do("hm", 1, 2)
    b.do("div", fifth, fourth)
    return fifth, fourth


def pythagorean_core() -> Scale:
    b = _Builder()
    _pythagorean_steps(b)
    return _finish("pythagorean", b)


def _fifths(b: _Builder, fifth, fourth):
    """The three fifths spanned by the Pythagorean frame: [1, 3/2],
    [4/3, 2] and [3/2, 9/4] (a fifth stacked on the fifth)."""
    upper = b.do("mul", fifth, fifth, insert=False)
    return [(1, fifth), (fourth, 2), (fifth, upper)]


def zarlino_major() -> Scale:
    b = _Builder()
    fifth, fourth = _pythagorean_steps(b)
    for lo, hi in _fifths(b, fifth, fourth):
        b.do("am", lo, hi)
    return _finish("zarlino-major", b)


def zarlino_minor() -> Scale:
    b = _Builder()
    fifth, fourth = _pythagorean_steps(b)
    for lo, hi in _fifths(b, fifth, fourth):
        b.do("hm", lo, hi)
    return _finish("zarlino-minor", b)


def golden_scale_12() -> Scale:
    """Twelve pitch classes closed under x -> 2/x.

    Zarlino major and minor notes, plus the means 10/9 and 16/15 of the
    fifth [8/9, 4/3] lifted into the octave, plus the tritone sqrt(2) as
    the geometric mean of the octave.  The second degree is carried by
    10/9 (the complement of 9/5); 9/8 stays available as 5/4 : 10/9.
    """
    b = _Builder()
    b.do("given", 1)
    b.do("given", 2)
    fifth = b.do("am", 1, 2)
    fourth = b.do("hm", 1, 2)
    b.do("div", fifth, fourth, insert=False)
    for lo, hi in _fifths(b, fifth, fourth):
        b.do("am", lo, hi)
        b.do("hm", lo, hi)
    low_fifth = b.do("div", fourth, fifth, insert=False)
    b.do("am", low_fifth, fourth)
    b.do("hm", low_fifth, fourth)
    b.do("gm", 1, 2)
    return _finish("golden-12", b)


def equal_temperament(n: int) -> Scale:
    if n < 1:
        raise ValueError(f"equal temperament needs n >= 1, got {n}")
    notes = tuple(Pitch.power_of_two(Fraction(i, n)) for i in range(n + 1))
    return Scale(f"equal-{n}", notes)


SCALE_KINDS = {
    "pythagorean": pythagorean_core,
    "zarlino-major": zarlino_major,
    "zarlino-minor": zarlino_minor,
    "golden-12": golden_scale_12,
}


def build_scale(kind: str, n: int | None = None) -> Scale:
    if kind == "equal":
        if n is None:
            raise ValueError("equal temperament needs a note count")
        return equal_temperament(n)
    if kind.startswith("equal-"):
        return equal_temperament(int(kind.split("-", 1)[1]))
    try:
        return SCALE_KINDS[kind]()
    except KeyError:
        raise ValueError(f"unknown scale kind {kind!r}") from None


# --- just intervals ----------------------------------------------------------


@dataclass(frozen=True)
class JustInterval:
    name: str
    ratio: Fraction
    consonant: bool

    @property
    def cents(self) -> float:
        return to_cents(self.ratio)


JUST_INTERVALS: tuple[JustInterval, ...] = (
    JustInterval("unison", F(1, 1), True),
    JustInterval("octave", F(2, 1), True),
    JustInterval("major sixth", F(5, 3), True),
    JustInterval("minor sixth", F(8, 5), True),
    JustInterval("fifth", F(3, 2), True),
    JustInterval("fourth", F(4, 3), True),
    JustInterval("major third", F(5, 4), True),
    JustInterval("minor third", F(6, 5), True),
    JustInterval("major tone", F(9, 8), False),
    JustInterval("minor tone", F(10, 9), False),
    JustInterval("major semitone", F(16, 15), False),
    JustInterval("minor semitone", F(25, 24), False),
    JustInterval("syntonic comma", F(81, 80), False),
)

CONSONANT = tuple(i for i in JUST_INTERVALS if i.consonant)
DISSONANT = tuple(i for i in JUST_INTERVALS if not i.consonant)


def interval_by_name(name: str) -> JustInterval:
    for iv in JUST_INTERVALS:
        if iv.name == name:
            return iv
    raise KeyError(name)


def intervals_between(scale: Scale) -> set[Fraction]:
    """All ratios hi/lo between pairs of rational notes (lo <= hi)."""
    rs = scale.ratios
    return {hi / lo for i, lo in enumerate(rs) for hi in rs[i:]}


def circle_of_fifths_solutions(n_max: int = 64, m_max: int = 64) -> list[tuple[int, int]]:
    """Pairs (n, m) in [1, n_max] x [1, m_max] with (3/2)^n == 2^m exactly."""
    fifth = Fraction(3, 2)
    powers = {Fraction(2) ** m: m for m in range(1, m_max + 1)}
    hits = []
    stack = Fraction(1)
    for n in range(1, n_max + 1):
        stack *= fifth
        if stack in powers:
            hits.append((n, powers[stack]))
    return hits


def pythagorean_comma(n: int = 12, m: int = 7) -> Fraction:
    """(3/2)^n / 2^m; 531441/524288 for twelve fifths against seven octaves."""
    return Fraction(3, 2) ** n / Fraction(2) ** m
