"""
Arcs and finite unions of open arcs on the circle R/Z (circumference 1).

Open sets are stored as sorted, merged open intervals inside [0, 1); an arc
crossing 0 is split in two. Endpoints are measure zero and never carry
information: two ArcSets that differ only at finitely many points are equal.
"""
import bisect
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import config
from core.errors import MalformedInputError
from utils.numbers import Number, mod1, parse_number

logger = logging.getLogger(__name__)

Interval = Tuple[Number, Number]


def _le(x: Number, y: Number) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x <= y
    return float(x) <= float(y) + config.SNAP_TOLERANCE


def _lt(x: Number, y: Number) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x < y
    return float(x) < float(y) - config.SNAP_TOLERANCE


def _snap_one(x: Number) -> Number:
    if not isinstance(x, Fraction) and abs(float(x) - 1.0) < config.SNAP_TOLERANCE:
        return 1.0
    return x


@dataclass(frozen=True)
class Arc:
    """The open arc (start, start + length) mod 1."""
    start: Number
    length: Number

    def __post_init__(self):
        start = self.start if isinstance(self.start, (Fraction, float)) else parse_number(self.start)
        length = self.length if isinstance(self.length, (Fraction, float)) else parse_number(self.length)
        if not (_lt(0, length) and _le(length, 1)):
            raise MalformedInputError("arc", f"length must lie in (0, 1], got {length}")
        object.__setattr__(self, "start", mod1(start))
        object.__setattr__(self, "length", length)

    @classmethod
    def between(cls, start, end) -> "Arc":
        """Arc from start to end; end <= start wraps through 0."""
        start, end = parse_number(start), parse_number(end)
        length = end - start
        if not _lt(0, length):
            length += 1
        return cls(start, length)

    @property
    def end(self) -> Number:
        return mod1(self.start + self.length)

    def midpoint(self) -> Number:
        return mod1(self.start + self.length / 2)

    def rotate(self, shift: Number) -> "Arc":
        """The arc translated by +shift."""
        return Arc(mod1(self.start + shift), self.length)

    def intervals(self) -> List[Interval]:
        """Pieces inside [0, 1)."""
        stop = _snap_one(self.start + self.length)
        if _le(stop, 1):
            return [(self.start, stop)]
        return [(0 * self.start, stop - 1), (self.start, 1 + 0 * self.start)]

    def to_list(self) -> list:
        return [str(self.start) if isinstance(self.start, Fraction) else self.start,
                str(self.end) if isinstance(self.end, Fraction) else self.end]


def _normalise(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    """Sort, drop empty pieces and merge overlapping or touching intervals."""
    cleaned = sorted((a, _snap_one(b)) for a, b in intervals if _lt(a, b))
    merged: List[Interval] = []
    for a, b in cleaned:
        if merged and _le(a, merged[-1][1]):
            prev_a, prev_b = merged[-1]
            merged[-1] = (prev_a, b if _lt(prev_b, b) else prev_b)
        else:
            merged.append((a, b))
    return tuple(merged)


@dataclass(frozen=True)
class ArcSet:
    """A finite union of open arcs, as merged open intervals of [0, 1)."""
    intervals: Tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalise(self.intervals))

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls(())

    @classmethod
    def full(cls) -> "ArcSet":
        return cls(((Fraction(0), Fraction(1)),))

    @classmethod
    def from_arcs(cls, arcs: Sequence[Arc]) -> "ArcSet":
        pieces: List[Interval] = []
        for arc in arcs:
            pieces.extend(arc.intervals())
        return cls(tuple(pieces))

    def is_empty(self) -> bool:
        return not self.intervals

    def measure(self) -> Number:
        lengths = [b - a for a, b in self.intervals]
        if all(isinstance(x, Fraction) for x in lengths):
            return sum(lengths, Fraction(0))
        return math.fsum(float(x) for x in lengths)

    def rotate(self, shift: Number) -> "ArcSet":
        """The set translated by +shift mod 1."""
        pieces: List[Interval] = []
        for a, b in self.intervals:
            pieces.extend(Arc(a + shift, b - a).intervals())
        return ArcSet(tuple(pieces))

    def intersect(self, other: "ArcSet") -> "ArcSet":
        result: List[Interval] = []
        i = j = 0
        left, right = self.intervals, other.intervals
        while i < len(left) and j < len(right):
            a = left[i][0] if _le(right[j][0], left[i][0]) else right[j][0]
            b = left[i][1] if _le(left[i][1], right[j][1]) else right[j][1]
            if _lt(a, b):
                result.append((a, b))
            if _le(left[i][1], right[j][1]):
                i += 1
            else:
                j += 1
        return ArcSet(tuple(result))

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.intervals + other.intervals)

    def complement(self) -> "ArcSet":
        gaps: List[Interval] = []
        cursor: Number = Fraction(0)
        for a, b in self.intervals:
            if _lt(cursor, a):
                gaps.append((cursor, a))
            cursor = b
        if _lt(cursor, 1):
            gaps.append((cursor, Fraction(1) if isinstance(cursor, Fraction) else 1.0))
        return ArcSet(tuple(gaps))

    def contains(self, x: Number) -> bool:
        """Point membership (x strictly inside one of the intervals)."""
        x = mod1(x)
        starts = [float(a) for a, _ in self.intervals]
        idx = bisect.bisect_right(starts, float(x)) - 1
        if idx < 0:
            return False
        a, b = self.intervals[idx]
        return _lt(a, x) and _lt(x, b)

    def endpoints(self) -> List[Number]:
        points = []
        for a, b in self.intervals:
            points.append(mod1(a))
            points.append(mod1(b))
        return points

    def arcs(self) -> List[Arc]:
        """Maximal arcs, gluing the pieces that meet at 0."""
        ivs = list(self.intervals)
        if len(ivs) >= 2 and _le(ivs[0][0], 0) and not _lt(ivs[-1][1], 1):
            first, last = ivs.pop(0), ivs.pop()
            ivs.append((last[0], last[1] + (first[1] - first[0])))
        return [Arc(a, b - a) for a, b in ivs]

    def to_list(self) -> list:
        return [arc.to_list() for arc in self.arcs()]


def cut_points(points: Iterable[Number]) -> List[Number]:
    """Sorted distinct circle points in [0, 1), merging floats within tolerance."""
    ordered = sorted(mod1(p) for p in points)
    distinct: List[Number] = []
    for p in ordered:
        if distinct and not _lt(distinct[-1], p):
            continue
        distinct.append(p)
    return distinct


def elementary_arcs(points: Iterable[Number]) -> List[Arc]:
    """
    The open arcs between consecutive cut points (the rotation atom carrier).

    With no cut point the whole circle (minus 0) is a single atom.
    """
    cuts = cut_points(points)
    if not cuts:
        return [Arc(Fraction(0), Fraction(1))]
    if len(cuts) == 1:
        return [Arc(cuts[0], 1 + 0 * cuts[0])]
    arcs = [Arc(a, b - a) for a, b in zip(cuts, cuts[1:])]
    arcs.append(Arc(cuts[-1], 1 - cuts[-1] + cuts[0]))
    return arcs
