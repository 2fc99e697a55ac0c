"""
Full shifts over a finite alphabet with an i.i.d. product measure.

Generator i of Z^d acts either as the coordinate shift along axis i or as the
identity. Writing m(g) for g with the identity axes zeroed, the action on
configurations is (g x)_t = x_{t + m(g)}, so g^{-1} of a cylinder is the same
cylinder moved by +m(g).
"""
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

import config
from core.errors import CapacityError, MalformedInputError
from group.lattice import GroupElement, as_element
from systems.base import DynamicalSystem, SystemKind
from utils.numbers import Number, is_exact, parse_number

logger = logging.getLogger(__name__)

Configuration = Dict[GroupElement, int]


class AxisBehavior(str, Enum):
    """How a generator of Z^d acts on configurations."""
    SHIFT = "shift"
    IDENTITY = "identity"


@dataclass(frozen=True)
class CylinderPattern:
    """
    Letters fixed on a finite set of coordinates.

    The empty pattern fixes nothing and stands for the whole space.
    """
    cells: Tuple[Tuple[GroupElement, int], ...] = ()

    def __post_init__(self):
        cells = tuple(sorted((as_element(c), int(a)) for c, a in self.cells))
        coords = [c for c, _ in cells]
        if len(set(coords)) != len(coords):
            raise MalformedInputError("cylinder pattern", f"coordinate repeated in {coords}")
        if any(a < 0 for _, a in cells):
            raise MalformedInputError("cylinder pattern", "letters must be nonnegative")
        if len({c.d for c in coords}) > 1:
            raise MalformedInputError("cylinder pattern", "coordinates of mixed dimension")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def of(cls, mapping: Mapping) -> "CylinderPattern":
        return cls(tuple(mapping.items()))

    @classmethod
    def single(cls, coord, letter: int) -> "CylinderPattern":
        return cls(((as_element(coord), letter),))

    @property
    def domain(self) -> Tuple[GroupElement, ...]:
        return tuple(c for c, _ in self.cells)

    @property
    def letters(self) -> Tuple[int, ...]:
        return tuple(a for _, a in self.cells)

    def as_dict(self) -> Configuration:
        return dict(self.cells)

    def shift(self, m: GroupElement) -> "CylinderPattern":
        """Same letters on coordinates moved by +m."""
        return CylinderPattern(tuple((c + m, a) for c, a in self.cells))

    def compatible(self, other: "CylinderPattern") -> bool:
        mine = self.as_dict()
        return all(mine.get(c, a) == a for c, a in other.cells)

    def merge(self, other: "CylinderPattern") -> Optional["CylinderPattern"]:
        """Pattern of the intersection of both cylinders, None if disjoint."""
        if not self.compatible(other):
            return None
        merged = self.as_dict()
        merged.update(other.as_dict())
        return CylinderPattern.of(merged)

    def refines(self, other: "CylinderPattern") -> bool:
        """True when this cylinder is contained in the other."""
        mine = self.as_dict()
        return all(mine.get(c) == a for c, a in other.cells)

    def matches(self, configuration: Mapping[GroupElement, int]) -> bool:
        return all(configuration.get(c) == a for c, a in self.cells)

    def to_dict(self) -> Dict[str, Any]:
        return {"at": [c.to_list() for c in self.domain], "letters": list(self.letters)}

    def __repr__(self) -> str:
        body = ", ".join(f"{a}@{list(c.coords)}" for c, a in self.cells)
        return f"[{body}]"


def _absorb(patterns) -> Tuple[CylinderPattern, ...]:
    """Sorted distinct patterns with cylinders contained in another one removed."""
    unique = sorted(set(patterns), key=lambda p: (len(p.cells), p.cells))
    kept: List[CylinderPattern] = []
    for p in unique:
        if not any(p.refines(q) for q in kept):
            kept.append(p)
    return tuple(kept)


@dataclass(frozen=True)
class CylinderUnion:
    """A finite union of cylinders (a clopen subset of the full shift)."""
    patterns: Tuple[CylinderPattern, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "patterns", _absorb(self.patterns))

    @classmethod
    def of(cls, *patterns: CylinderPattern) -> "CylinderUnion":
        return cls(tuple(patterns))

    @property
    def is_full(self) -> bool:
        return any(not p.cells for p in self.patterns)

    def domain(self) -> Tuple[GroupElement, ...]:
        return tuple(sorted({c for p in self.patterns for c in p.domain}))

    def shift(self, m: GroupElement) -> "CylinderUnion":
        if m.is_identity():
            return self
        return CylinderUnion(tuple(p.shift(m) for p in self.patterns))

    def intersect(self, other: "CylinderUnion") -> "CylinderUnion":
        merged = []
        for p in self.patterns:
            for q in other.patterns:
                r = p.merge(q)
                if r is not None:
                    merged.append(r)
        return CylinderUnion(tuple(merged))

    def union(self, other: "CylinderUnion") -> "CylinderUnion":
        return CylinderUnion(self.patterns + other.patterns)

    def to_dict(self) -> Dict[str, Any]:
        return {"cylinders": [p.to_dict() for p in self.patterns]}


def check_enumeration_budget(alphabet_size: int, size: int) -> int:
    """Number of configurations on a domain of the given size, within budget."""
    states = alphabet_size ** size
    if states > config.ENUMERATION_BUDGET:
        raise CapacityError(
            f"alphabet^|D| for domain size |D| = {size}", states, config.ENUMERATION_BUDGET
        )
    return states


def configuration_blocks(alphabet_size: int, size: int) -> Iterator[np.ndarray]:
    """
    All configurations on a domain of the given size, in lexicographic order.

    Yields int arrays of shape (block, size); column j is the j-th coordinate
    of the (sorted) domain.
    """
    total = check_enumeration_budget(alphabet_size, size)
    powers = alphabet_size ** np.arange(size - 1, -1, -1, dtype=np.int64)
    block = config.ENUMERATION_BLOCK_SIZE
    for start in range(0, total, block):
        index = np.arange(start, min(start + block, total), dtype=np.int64)
        yield (index[:, None] // powers[None, :]) % alphabet_size


def letter_counts(block: np.ndarray, alphabet_size: int) -> np.ndarray:
    """Per-row occurrence count of each letter, shape (block, alphabet)."""
    return np.stack([(block == a).sum(axis=1) for a in range(alphabet_size)], axis=1)


def match_mask(
    A: CylinderUnion,
    block: np.ndarray,
    columns: Mapping[GroupElement, int]
) -> np.ndarray:
    """Rows of the block lying in A; every coordinate of A must have a column."""
    mask = np.zeros(block.shape[0], dtype=bool)
    for p in A.patterns:
        if not p.cells:
            return np.ones(block.shape[0], dtype=bool)
        hit = np.ones(block.shape[0], dtype=bool)
        for c, a in p.cells:
            hit &= block[:, columns[c]] == a
        mask |= hit
    return mask


@dataclass(frozen=True)
class SymbolicSystem(DynamicalSystem):
    """
    Full shift over {0, ..., alphabet_size - 1}^(Z^d) with product measure.

    Args:
        alphabet_size: Number of letters (>= 2)
        d: Dimension of the acting group
        letter_weights: Probability of each letter (default uniform)
        axes: Behaviour of each generator (default: all shifts)
    """
    alphabet_size: int
    d: int
    letter_weights: Tuple[Number, ...] = ()
    axes: Tuple[AxisBehavior, ...] = ()

    kind = SystemKind.SYMBOLIC

    def __post_init__(self):
        if not isinstance(self.alphabet_size, int) or self.alphabet_size < 2:
            raise MalformedInputError("symbolic system", f"alphabet_size must be >= 2, got {self.alphabet_size!r}")
        if not isinstance(self.d, int) or self.d < 1:
            raise MalformedInputError("symbolic system", f"d must be >= 1, got {self.d!r}")

        weights = self.letter_weights or tuple(Fraction(1, self.alphabet_size) for _ in range(self.alphabet_size))
        weights = tuple(parse_number(w) for w in weights)
        if len(weights) != self.alphabet_size:
            raise MalformedInputError(
                "letter weights", f"expected {self.alphabet_size} weights, got {len(weights)}"
            )
        if any(w < 0 for w in weights):
            raise MalformedInputError("letter weights", f"weights must be nonnegative: {weights}")
        if is_exact(*weights):
            if sum(weights) != 1:
                raise MalformedInputError("letter weights", f"weights sum to {sum(weights)}, not 1")
        elif abs(math.fsum(float(w) for w in weights) - 1.0) > config.WEIGHT_SUM_TOLERANCE:
            raise MalformedInputError("letter weights", f"weights sum to {math.fsum(map(float, weights))}, not 1")

        axes = self.axes or tuple(AxisBehavior.SHIFT for _ in range(self.d))
        axes = tuple(AxisBehavior(a) for a in axes)
        if len(axes) != self.d:
            raise MalformedInputError("axis behaviours", f"expected {self.d} entries, got {len(axes)}")

        object.__setattr__(self, "letter_weights", weights)
        object.__setattr__(self, "axes", axes)

    @property
    def exact(self) -> bool:
        return is_exact(*self.letter_weights)

    @property
    def uniform(self) -> bool:
        return len(set(self.letter_weights)) == 1

    def shift_part(self, g: GroupElement) -> GroupElement:
        """m(g): g with the identity axes zeroed."""
        if g.d != self.d:
            raise MalformedInputError("group element", f"{g} does not act on a Z^{self.d} system")
        return GroupElement(tuple(
            c if behaviour == AxisBehavior.SHIFT else 0 for c, behaviour in zip(g.coords, self.axes)
        ))

    # ------------------------------------------------------------------
    # Action
    # ------------------------------------------------------------------

    def act_on_configuration(self, g: GroupElement, x: Mapping[GroupElement, int]) -> Configuration:
        """(g x)_t = x_{t + m(g)}, defined wherever x is."""
        m = self.shift_part(g)
        return {t - m: a for t, a in x.items()}

    def act_on_pattern(self, g: GroupElement, pat: CylinderPattern) -> CylinderPattern:
        """Pattern whose cylinder is g^{-1}(cylinder of pat)."""
        return pat.shift(self.shift_part(g))

    # ------------------------------------------------------------------
    # Measure
    # ------------------------------------------------------------------

    def check_pattern(self, pat: CylinderPattern):
        for c, a in pat.cells:
            if a >= self.alphabet_size:
                raise MalformedInputError(
                    "cylinder pattern", f"letter {a} at {c} outside alphabet of size {self.alphabet_size}"
                )
            if c.d != self.d:
                raise MalformedInputError("cylinder pattern", f"coordinate {c} is not in Z^{self.d}")

    def cylinder_measure(self, pat: CylinderPattern) -> Number:
        """Product of the letter weights over the fixed coordinates."""
        self.check_pattern(pat)
        mass = Fraction(1) if self.exact else 1.0
        for a in pat.letters:
            mass *= self.letter_weights[a]
        return mass

    def mass_of_counts(self, counts: Mapping[Tuple[int, ...], int]) -> Number:
        """
        Total mass of configurations grouped by letter-count vector.

        Args:
            counts: letter-count vector -> number of configurations with it
        """
        if self.exact:
            total = Fraction(0)
            for vector, mult in counts.items():
                term = Fraction(mult)
                for w, c in zip(self.letter_weights, vector):
                    term *= w ** c
                total += term
            return total
        return math.fsum(
            mult * math.prod(float(w) ** c for w, c in zip(self.letter_weights, vector))
            for vector, mult in counts.items()
        )

    def zero(self) -> Number:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Number:
        return Fraction(1) if self.exact else 1.0

    # ------------------------------------------------------------------
    # Open-set algebra
    # ------------------------------------------------------------------

    def full_set(self) -> CylinderUnion:
        return CylinderUnion((CylinderPattern(),))

    def empty_set(self) -> CylinderUnion:
        return CylinderUnion(())

    def translate_set(self, g: GroupElement, A: CylinderUnion) -> CylinderUnion:
        return A.shift(self.shift_part(g))

    def intersect(self, A: CylinderUnion, B: CylinderUnion) -> CylinderUnion:
        return A.intersect(B)

    def union(self, A: CylinderUnion, B: CylinderUnion) -> CylinderUnion:
        return A.union(B)

    def is_empty(self, A: CylinderUnion) -> bool:
        return not A.patterns

    def complement(self, A: CylinderUnion) -> CylinderUnion:
        """X ∖ A, by De Morgan over the first-disagreement decomposition of each cylinder."""
        result = self.full_set()
        for p in A.patterns:
            result = result.intersect(self._pattern_complement(p))
            if not result.patterns:
                break
        return result

    def _pattern_complement(self, p: CylinderPattern) -> CylinderUnion:
        # x leaves [p] at the first fixed coordinate where it disagrees
        pieces = []
        for i, (c, a) in enumerate(p.cells):
            prefix = p.cells[:i]
            for b in range(self.alphabet_size):
                if b != a:
                    pieces.append(CylinderPattern(prefix + ((c, b),)))
        return CylinderUnion(tuple(pieces))

    def measure(self, A: CylinderUnion) -> Number:
        """μ(A) exactly, enumerating the union domain when cylinders overlap."""
        for p in A.patterns:
            self.check_pattern(p)
        if not A.patterns:
            return self.zero()
        if A.is_full:
            return self.one()
        disjoint = all(
            not p.compatible(q) for p, q in itertools.combinations(A.patterns, 2)
        )
        if disjoint:
            masses = [self.cylinder_measure(p) for p in A.patterns]
            return sum(masses, self.zero()) if self.exact else math.fsum(masses)

        domain = A.domain()
        columns = {c: j for j, c in enumerate(domain)}
        counts: Dict[Tuple[int, ...], int] = {}
        for block in configuration_blocks(self.alphabet_size, len(domain)):
            hits = block[match_mask(A, block, columns)]
            if hits.shape[0] == 0:
                continue
            vectors, mult = np.unique(letter_counts(hits, self.alphabet_size), axis=0, return_counts=True)
            for vector, k in zip(map(tuple, vectors.tolist()), mult.tolist()):
                counts[vector] = counts.get(vector, 0) + k
        return self.mass_of_counts(counts)

    def is_cover(self, sets: Sequence[CylinderUnion]) -> bool:
        """Every configuration on the joint domain lies in some set."""
        union = self.union_all(sets)
        if union.is_full:
            return True
        if not union.patterns:
            return False
        domain = union.domain()
        columns = {c: j for j, c in enumerate(domain)}
        return all(
            match_mask(union, block, columns).all()
            for block in configuration_blocks(self.alphabet_size, len(domain))
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "alphabet_size": self.alphabet_size,
            "weights": [str(w) if isinstance(w, Fraction) else w for w in self.letter_weights],
            "axes": [a.value for a in self.axes],
        }


def cylinder_measure(sys: SymbolicSystem, pat: CylinderPattern) -> Number:
    """μ of the cylinder of pat."""
    return sys.cylinder_measure(pat)


def act_on_pattern(sys: SymbolicSystem, g: GroupElement, pat: CylinderPattern) -> CylinderPattern:
    """Pattern of g^{-1}(cylinder of pat)."""
    return sys.act_on_pattern(g, pat)


def act_on_configuration(sys: SymbolicSystem, g: GroupElement, x: Mapping[GroupElement, int]) -> Configuration:
    """g x on a finite configuration."""
    return sys.act_on_configuration(g, x)


def cylinder_set(*cells: Tuple[Sequence[int], int]) -> CylinderUnion:
    """Convenience: the single cylinder fixing the given (coord, letter) cells."""
    return CylinderUnion.of(CylinderPattern(tuple((as_element(c), a) for c, a in cells)))
