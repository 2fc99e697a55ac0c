"""
Finite partitions and exact joins of their translates.

A symbolic partition labels each word on a finite window; an arc partition
labels the arcs between circle breakpoints. The join of translates is
computed on the atom carrier (configurations on the union domain, or
elementary arcs) with exact masses whenever the system is exact.
"""
import bisect
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

import config
from core.errors import MalformedInputError
from group.lattice import GroupElement, as_element
from systems.base import DynamicalSystem
from systems.circle import cut_points, elementary_arcs
from systems.rotation import RotationSystem
from systems.symbolic import SymbolicSystem, configuration_blocks, letter_counts
from utils.numbers import Number, mod1, parse_number

logger = logging.getLogger(__name__)

LabelVector = Tuple[int, ...]


@dataclass(frozen=True)
class SymbolicPartition:
    """
    Partition of the full shift by the word seen on a finite window.

    table[i] is the label of the i-th word on the window in lexicographic
    (mixed-radix, first window coordinate most significant) order.
    """
    alphabet_size: int
    window: Tuple[GroupElement, ...]
    table: Tuple[int, ...]

    def __post_init__(self):
        window = tuple(as_element(w) for w in self.window)
        if len(set(window)) != len(window):
            raise MalformedInputError("partition window", f"repeated coordinate in {window}")
        table = tuple(int(x) for x in self.table)
        expected = self.alphabet_size ** len(window)
        if len(table) != expected:
            raise MalformedInputError(
                "partition table", f"window of size {len(window)} needs {expected} labels, got {len(table)}"
            )
        if any(x < 0 for x in table):
            raise MalformedInputError("partition table", "labels must be nonnegative")
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "table", table)

    @classmethod
    def generating(cls, sys: SymbolicSystem) -> "SymbolicPartition":
        """Partition by the letter at the origin."""
        return cls(sys.alphabet_size, (GroupElement.zero(sys.d),), tuple(range(sys.alphabet_size)))

    @classmethod
    def trivial(cls, sys: SymbolicSystem) -> "SymbolicPartition":
        return cls(sys.alphabet_size, (), (0,))

    @classmethod
    def block(cls, sys: SymbolicSystem, window: Sequence) -> "SymbolicPartition":
        """All words on the window are distinct cells."""
        window = tuple(as_element(w, sys.d) for w in window)
        return cls(sys.alphabet_size, window, tuple(range(sys.alphabet_size ** len(window))))

    @classmethod
    def from_table(cls, sys: SymbolicSystem, window: Sequence, table: Sequence[int]) -> "SymbolicPartition":
        window = tuple(as_element(w, sys.d) for w in window)
        return cls(sys.alphabet_size, window, tuple(table))

    @property
    def n_cells(self) -> int:
        return len(set(self.table))

    def coarsen(self, label_map: Mapping[int, int]) -> "SymbolicPartition":
        """Merge cells by relabelling; the result is refined by self."""
        return SymbolicPartition(self.alphabet_size, self.window, tuple(label_map[x] for x in self.table))

    def to_dict(self) -> Dict[str, Any]:
        return {"window": [w.to_list() for w in self.window], "table": list(self.table)}


@dataclass(frozen=True)
class ArcPartition:
    """
    Partition of the circle by breakpoints b_0 < ... < b_{k-1} in [0, 1).

    labels[i] is the label of the arc (b_i, b_{i+1}), the last arc wrapping
    to b_0. A single breakpoint gives the trivial partition.
    """
    breakpoints: Tuple[Number, ...]
    labels: Tuple[int, ...]

    def __post_init__(self):
        points = tuple(parse_number(b) if not isinstance(b, (Fraction, float)) else b for b in self.breakpoints)
        points = tuple(mod1(b) for b in points)
        if not points:
            raise MalformedInputError("arc partition", "needs at least one breakpoint")
        if list(points) != cut_points(points):
            raise MalformedInputError("arc partition", f"breakpoints must be distinct and increasing: {points}")
        if len(self.labels) != len(points):
            raise MalformedInputError(
                "arc partition", f"{len(points)} breakpoints need {len(points)} labels, got {len(self.labels)}"
            )
        object.__setattr__(self, "breakpoints", points)
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))

    @classmethod
    def from_breakpoints(cls, points: Sequence, labels: Optional[Sequence[int]] = None) -> "ArcPartition":
        points = [parse_number(p) if not isinstance(p, (Fraction, float)) else p for p in points]
        if labels is None:
            labels = range(len(points))
        return cls(tuple(points), tuple(labels))

    @classmethod
    def trivial(cls) -> "ArcPartition":
        return cls((Fraction(0),), (0,))

    @property
    def n_cells(self) -> int:
        return len(set(self.labels))

    def label_at(self, x: Number) -> int:
        """Label of the cell containing x (x should avoid the breakpoints)."""
        x = mod1(x)
        idx = bisect.bisect_right(self.breakpoints, x) - 1
        return self.labels[idx]  # idx == -1 wraps to the last arc

    def coarsen(self, label_map: Mapping[int, int]) -> "ArcPartition":
        return ArcPartition(self.breakpoints, tuple(label_map[x] for x in self.labels))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "breakpoints": [str(b) if isinstance(b, Fraction) else b for b in self.breakpoints],
            "labels": list(self.labels),
        }


Partition = Union[SymbolicPartition, ArcPartition]


@dataclass(frozen=True)
class CellDistribution:
    """Atoms of a join: distinct label vectors with positive masses summing to 1."""
    cells: Tuple[Tuple[LabelVector, Number], ...]

    def __post_init__(self):
        cells = tuple(sorted(self.cells))
        labels = [label for label, _ in cells]
        if len(set(labels)) != len(labels):
            raise MalformedInputError("cell distribution", "label vectors must be distinct")
        if any(mass <= 0 for _, mass in cells):
            raise MalformedInputError("cell distribution", "cell masses must be positive")
        total = math.fsum(float(mass) for _, mass in cells)
        if abs(total - 1.0) > config.DISTRIBUTION_TOLERANCE:
            raise MalformedInputError("cell distribution", f"masses sum to {total}, not 1")
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.cells)

    def masses(self) -> Dict[LabelVector, Number]:
        return dict(self.cells)

    def weights(self) -> np.ndarray:
        return np.array([float(mass) for _, mass in self.cells], dtype=float)


def _total(masses: Sequence[Number]) -> Number:
    if all(isinstance(m, Fraction) for m in masses):
        return sum(masses, Fraction(0))
    return math.fsum(float(m) for m in masses)


def _symbolic_join(
    sys: SymbolicSystem,
    translates: Sequence[Tuple[GroupElement, SymbolicPartition]]
) -> CellDistribution:
    placed = []
    coords = set()
    for g, partition in translates:
        if partition.alphabet_size != sys.alphabet_size:
            raise MalformedInputError("partition", "alphabet size differs from the system's")
        m = sys.shift_part(g)
        moved = [w + m for w in partition.window]
        coords.update(moved)
        placed.append((moved, partition))

    domain = sorted(coords)
    columns = {c: j for j, c in enumerate(domain)}
    lookups = []
    for moved, partition in placed:
        powers = sys.alphabet_size ** np.arange(len(moved) - 1, -1, -1, dtype=np.int64)
        lookups.append(([columns[c] for c in moved], powers, np.asarray(partition.table, dtype=np.int64)))

    # key: label vector, plus letter counts when the weights are not uniform
    counts: Counter = Counter()
    width = len(translates)
    for block in configuration_blocks(sys.alphabet_size, len(domain)):
        labels = np.empty((block.shape[0], width), dtype=np.int64)
        for i, (cols, powers, table) in enumerate(lookups):
            index = block[:, cols] @ powers if cols else np.zeros(block.shape[0], dtype=np.int64)
            labels[:, i] = table[index]
        keys = labels if sys.uniform else np.concatenate([labels, letter_counts(block, sys.alphabet_size)], axis=1)
        rows, mult = np.unique(keys, axis=0, return_counts=True)
        for row, k in zip(rows.tolist(), mult.tolist()):
            counts[tuple(row)] += k

    if sys.uniform:
        unit = sys.letter_weights[0] ** len(domain)
        masses = {label: k * unit for label, k in counts.items()}
    else:
        grouped: Dict[LabelVector, Dict[Tuple[int, ...], int]] = defaultdict(dict)
        for key, k in counts.items():
            grouped[key[:width]][key[width:]] = k
        masses = {label: sys.mass_of_counts(by_count) for label, by_count in grouped.items()}

    logger.debug(f"Symbolic join of {width} translates: |D| = {len(domain)}, {len(masses)} cells")
    return CellDistribution(tuple((label, mass) for label, mass in masses.items() if mass > 0))


def _rotation_join(
    sys: RotationSystem,
    translates: Sequence[Tuple[GroupElement, ArcPartition]]
) -> CellDistribution:
    shifts = [(sys.theta(g), partition) for g, partition in translates]
    points = [b - theta for theta, partition in shifts for b in partition.breakpoints]
    grouped: Dict[LabelVector, List[Number]] = defaultdict(list)
    for arc in elementary_arcs(points):
        x = arc.midpoint()
        label = tuple(partition.label_at(x + theta) for theta, partition in shifts)
        grouped[label].append(arc.length)
    logger.debug(f"Rotation join of {len(translates)} translates: {len(grouped)} cells")
    return CellDistribution(tuple((label, _total(lengths)) for label, lengths in grouped.items()))


def join_partitions(
    sys: DynamicalSystem,
    translates: Sequence[Tuple[GroupElement, Partition]]
) -> CellDistribution:
    """
    Atoms of ⋁ g^{-1}β over (g, β) pairs, with one label per pair.

    Raises:
        MalformedInputError: Empty translate list or partition/system mismatch
        CapacityError: Symbolic union domain over the enumeration budget
    """
    if not translates:
        raise MalformedInputError("join", "at least one translate is required")
    if isinstance(sys, SymbolicSystem):
        if not all(isinstance(p, SymbolicPartition) for _, p in translates):
            raise MalformedInputError("join", "symbolic systems need symbolic partitions")
        return _symbolic_join(sys, translates)
    if isinstance(sys, RotationSystem):
        if not all(isinstance(p, ArcPartition) for _, p in translates):
            raise MalformedInputError("join", "rotation systems need arc partitions")
        return _rotation_join(sys, translates)
    raise MalformedInputError("join", f"unsupported system {type(sys).__name__}")


def join_cells(sys: DynamicalSystem, alpha: Partition, gens: Sequence[GroupElement]) -> CellDistribution:
    """Atoms of ⋁_{g ∈ gens} g^{-1}α with their exact masses."""
    return join_partitions(sys, [(g, alpha) for g in gens])


def partition_from_dict(sys: DynamicalSystem, data: Dict[str, Any]) -> Partition:
    """
    Partition descriptor for the given system.

        {"kind": "generating"} | {"kind": "trivial"} | {"kind": "block", "window": [[0], [1]]}
        {"kind": "table", "window": [...], "table": [...]}
        {"kind": "arcs", "breakpoints": ["0", "1/2"], "labels": [0, 1]}
    """
    kind = data.get("kind", "generating")
    if isinstance(sys, SymbolicSystem):
        if kind == "generating":
            return SymbolicPartition.generating(sys)
        if kind == "trivial":
            return SymbolicPartition.trivial(sys)
        if kind == "block":
            return SymbolicPartition.block(sys, data["window"])
        if kind == "table":
            return SymbolicPartition.from_table(sys, data["window"], data["table"])
        valid = "generating, trivial, block, table"
    else:
        if kind == "arcs":
            return ArcPartition.from_breakpoints(data["breakpoints"], data.get("labels"))
        if kind == "trivial":
            return ArcPartition.trivial()
        valid = "arcs, trivial"
    raise MalformedInputError("partition descriptor", f"unknown kind {kind!r}; valid kinds: {valid}")
