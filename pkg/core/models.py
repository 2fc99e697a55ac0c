"""
Data models for sequence entropy runs.

This module defines the result structures shared by the entropy, cover and
search packages and serialised by the exporters. Group elements are stored
as GroupElement values and emitted as coordinate lists.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import config
from utils.numbers import rounded


def _coords(elements: Sequence) -> List[List[int]]:
    return [g.to_list() for g in elements]


class EntropyUnit(str, Enum):
    """Output unit for entropies (computations are always in nats)."""
    NATS = "nats"
    BITS = "bits"

    def convert(self, value: float) -> float:
        if self == EntropyUnit.BITS:
            return value / math.log(2)
        return value


class ProfileKind(str, Enum):
    MEASURE = "measure"
    TOPOLOGICAL = "topological"


class SolverMode(str, Enum):
    """Minimal subcover solvers."""
    EXACT = "exact"
    GREEDY = "greedy"


class SearchMode(str, Enum):
    """Constructive searches dispatched by `search`."""
    INDEPENDENCE = "independence"
    IP_INDEPENDENCE = "ip-independence"
    ENTROPY_SEQUENCE = "entropy-sequence"
    CORRELATION = "correlation"
    SE_PAIR = "se-pair"
    DENSITY_WITNESS = "density-witness"
    CEILING = "ceiling"
    STRONG_MIXING = "strong-mixing"


@dataclass
class ProfileRow:
    """One finite-scale row: n, |S ∩ F_n| and the joined entropy."""
    n: int
    count: int
    joint: float
    normalized: float
    n_join: Optional[int] = None     # minimal subcover size (topological rows)
    solver: Optional[str] = None

    def __post_init__(self):
        if self.count <= 0:
            raise ValueError(f"Profile rows need a nonempty S ∩ F_n, got count {self.count}")

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "n": self.n,
            "count": self.count,
            "joint": rounded(self.joint),
            "normalized": rounded(self.normalized),
        }
        if self.n_join is not None:
            result["n_join"] = self.n_join
            result["solver"] = self.solver
        return result


@dataclass
class EntropyProfile:
    """
    Finite-scale approximants of a sequence entropy.

    tail_max (max of normalized over the last half of rows) is the reported
    stand-in for the limsup.
    """
    kind: ProfileKind
    rows: List[ProfileRow] = field(default_factory=list)
    truncated: bool = False
    truncation_reason: Optional[str] = None
    unit: EntropyUnit = EntropyUnit.NATS

    def tail_start(self, upto: Optional[int] = None) -> int:
        """Index of the first row in the tail window of rows[:upto]."""
        length = len(self.rows) if upto is None else upto
        return int(length * (1 - config.TAIL_WINDOW_FRACTION))

    def tail_max_at(self, index: int) -> float:
        """Tail maximum of the profile truncated after row `index`."""
        start = self.tail_start(index + 1)
        return max(row.normalized for row in self.rows[start:index + 1])

    @property
    def tail_max(self) -> Optional[float]:
        if not self.rows:
            return None
        return self.tail_max_at(len(self.rows) - 1)

    @property
    def final(self) -> Optional[ProfileRow]:
        return self.rows[-1] if self.rows else None

    def normalized_values(self) -> List[float]:
        return [row.normalized for row in self.rows]

    def in_unit(self, unit: EntropyUnit) -> "EntropyProfile":
        """Copy with entropies expressed in `unit` (rows are stored in nats)."""
        unit = EntropyUnit(unit)
        rows = [
            ProfileRow(
                n=row.n, count=row.count,
                joint=unit.convert(row.joint), normalized=unit.convert(row.normalized),
                n_join=row.n_join, solver=row.solver,
            )
            for row in self.rows
        ]
        return EntropyProfile(self.kind, rows, self.truncated, self.truncation_reason, unit)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "unit": self.unit.value,
            "rows": [row.to_dict() for row in self.rows],
            "tail_max": rounded(self.tail_max) if self.rows else None,
            "tail_window_start": self.rows[self.tail_start()].n if self.rows else None,
            "truncated": self.truncated,
            "truncation_reason": self.truncation_reason,
        }


@dataclass
class IndependenceWitness:
    """A greedily built independence sequence for the sets W_1..W_l."""
    S: List[Any]                # GroupElements in selection order
    depth: int                  # l = number of sets
    target: int                 # requested length k
    verified: bool              # every label combination meets on the prefix S
    pool_size: int
    pool_indices: List[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.verified and len(self.S) >= self.target

    @property
    def length(self) -> int:
        return len(self.S)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S": _coords(self.S),
            "length": self.length,
            "depth": self.depth,
            "target": self.target,
            "verified": self.verified,
            "complete": self.complete,
            "pool_size": self.pool_size,
            "pool_indices": self.pool_indices,
            "evidence": "finite-scale",
        }


@dataclass
class IPIndependenceReport:
    """Witnesses rebuilt inside FP(p_1..p_m) for m = 1..levels."""
    generators: List[Any]
    levels: List[IndependenceWitness]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": _coords(self.generators),
            "levels": [
                {"m": m, **witness.to_dict()} for m, witness in enumerate(self.levels, start=1)
            ],
        }


@dataclass
class EntropySequence:
    """Greedy conditional-entropy-maximising sequence and its per-step gains."""
    S: List[Any]
    gains: List[float]
    window: int
    partition_entropy: float

    @property
    def running_average(self) -> List[float]:
        totals, acc = [], 0.0
        for i, gain in enumerate(self.gains, start=1):
            acc += gain
            totals.append(acc / i)
        return totals

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S": _coords(self.S),
            "gains": [rounded(g) for g in self.gains],
            "running_average": [rounded(v) for v in self.running_average],
            "partition_entropy": rounded(self.partition_entropy),
            "candidate_window": self.window,
        }


@dataclass
class CorrelationRow:
    n: int
    average: float

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "average": rounded(self.average)}


@dataclass
class DensityWitness:
    """Exceptional set of large correlation deviations and the density-one complement."""
    eps: float
    n: int
    exceptional: List[Any]
    subset: Dict[str, Any]              # descriptor of the density-one-complement generator
    complement_density: float           # |F_n ∖ exceptional| / |F_n|

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eps": self.eps,
            "n": self.n,
            "exceptional": _coords(self.exceptional),
            "exceptional_count": len(self.exceptional),
            "subset": self.subset,
            "complement_density": rounded(self.complement_density),
        }


@dataclass
class SELevel:
    """One refinement level of a sequence entropy pair certificate."""
    level: int
    balls: List[Dict[str, Any]]         # the two removed sets (closed balls / arcs)
    diameters: List[float]
    positive: bool
    witness_length: int = 0
    profile_min: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "balls": self.balls,
            "diameters": [rounded(x) for x in self.diameters],
            "positive": self.positive,
            "witness_length": self.witness_length,
            "profile_min": rounded(self.profile_min) if self.profile_min is not None else None,
        }


@dataclass
class SEPairCandidate:
    """Localised candidate pair with its nested certificate (finite-scale evidence)."""
    status: str                          # "candidate" | "inconclusive"
    precondition_met: bool
    certificate: List[SELevel]
    pair: Optional[List[Any]] = None     # two configurations (dicts) or two circle points
    failed_level: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "precondition_met": self.precondition_met,
            "failed_level": self.failed_level,
            "pair": self.pair,
            "certificate": [level.to_dict() for level in self.certificate],
            "evidence": "finite-scale",
        }


@dataclass
class CeilingRow:
    """Non-weak-mixing ceiling check at one n."""
    n: int
    count: int
    n_join: int
    disjoint: bool         # N(U1,U1) ∩ N(U1,U2) = ∅ on F_n

    @property
    def bound(self) -> int:
        return self.count + 1

    @property
    def holds(self) -> bool:
        return self.n_join <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n, "count": self.count, "n_join": self.n_join,
            "bound": self.bound, "disjoint": self.disjoint, "holds": self.holds,
        }


@dataclass
class StrongMixingRow:
    """Elements of F_n missed by N(U, V)."""
    n: int
    misses: List[Any]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "misses": _coords(self.misses), "miss_count": len(self.misses)}


@dataclass
class ReproductionRow:
    """One reproduced value against its closed form."""
    quantity: str
    n: int
    count: int
    value: float
    expected: float

    @property
    def deviation(self) -> float:
        return abs(self.value - self.expected)

    @property
    def ok(self) -> bool:
        return self.deviation <= config.REPRODUCTION_TOLERANCE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quantity": self.quantity, "n": self.n, "count": self.count,
            "value": rounded(self.value), "expected": rounded(self.expected),
            "deviation": rounded(self.deviation), "ok": self.ok,
        }


@dataclass
class ReproductionReport:
    rows: List[ReproductionRow]
    unit: EntropyUnit
    truncated: bool = False
    truncation_reason: Optional[str] = None

    @property
    def failures(self) -> List[ReproductionRow]:
        return [row for row in self.rows if not row.ok]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "unit": self.unit.value,
            "rows": [row.to_dict() for row in self.rows],
            "failures": len(self.failures),
            "truncated": self.truncated,
            "truncation_reason": self.truncation_reason,
        }
