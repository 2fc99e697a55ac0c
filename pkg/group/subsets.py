"""
Infinite subsets S of the nonnegative orthant of Z^d.

Every generator enumerates its elements in the canonical order (first hit in
F_1, F_2, ..., then lexicographic), so S ∩ F_n is always a prefix of
S ∩ F_{n+1} and all downstream computations are deterministic.
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import config
from core.errors import CapacityError, MalformedInputError
from group.lattice import (
    FiniteGroupSet, FolnerSequence, GroupElement, as_element, canonical_key, canonical_order
)

logger = logging.getLogger(__name__)


class SubsetKind(str, Enum):
    """Supported subset generator kinds."""
    EXPLICIT = "explicit-list"
    ARITHMETIC = "arithmetic"
    AXIS_RAY = "axis-ray"
    IP_SET = "ip-initial-segment"
    DENSITY_ONE_COMPLEMENT = "density-one-complement"
    FULL = "full"
    POLYNOMIAL = "polynomial"


def ip_initial_segment(p: Sequence[GroupElement], k: int) -> FiniteGroupSet:
    """
    Finite sums FP({p_1, ..., p_k}) over nonempty index subsets, deduplicated.

    Args:
        p: Generators p_1, p_2, ...
        k: Number of leading generators used, 1 <= k <= len(p)

    Returns:
        Canonically ordered set of at most 2^k - 1 elements
    """
    p = [as_element(x) for x in p]
    if not isinstance(k, int) or k < 1 or k > len(p):
        raise MalformedInputError("IP initial segment", f"need 1 <= k <= {len(p)}, got {k!r}")
    if k > config.MAX_IP_GENERATORS:
        raise CapacityError("IP generators k", k, config.MAX_IP_GENERATORS)

    sums = set()
    for generator in p[:k]:
        sums |= {generator} | {s + generator for s in sums}
    return canonical_order(sums)


@dataclass(frozen=True)
class SubsetGenerator:
    """
    An infinite (or explicitly finite) subset S of the orthant.

    Use the classmethod constructors; parameters not used by a kind stay empty.
    """
    kind: SubsetKind
    d: int
    elements: Tuple[GroupElement, ...] = ()     # explicit list / IP generators / excluded set
    base: Optional[GroupElement] = None          # arithmetic
    step: Optional[GroupElement] = None          # arithmetic
    coefficients: Tuple[int, ...] = ()           # polynomial c0 + c1 k + c2 k^2 ...
    ip_length: int = 0                           # IP initial segment k
    params: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.kind, SubsetKind):
            object.__setattr__(self, "kind", SubsetKind(self.kind))
        if not isinstance(self.d, int) or self.d < 1:
            raise MalformedInputError("subset generator", f"dimension must be >= 1, got {self.d!r}")
        for g in self.elements:
            if g.d != self.d:
                raise MalformedInputError("subset generator", f"element {g} is not in Z^{self.d}")
        if self.kind in (SubsetKind.ARITHMETIC, SubsetKind.AXIS_RAY, SubsetKind.POLYNOMIAL):
            self._validate_progression()
        if self.kind in (SubsetKind.EXPLICIT, SubsetKind.IP_SET, SubsetKind.DENSITY_ONE_COMPLEMENT):
            outside = [g for g in self.elements if not g.in_orthant()]
            if outside:
                raise MalformedInputError(
                    "subset generator", f"elements must lie in the nonnegative orthant: {outside[:3]}"
                )

    def _validate_progression(self):
        if self.base is None or self.step is None:
            raise MalformedInputError("subset generator", f"{self.kind.value} needs base and step")
        if self.base.d != self.d or self.step.d != self.d:
            raise MalformedInputError("subset generator", "base/step dimension mismatch")
        if not self.base.in_orthant() or not self.step.in_orthant() or self.step.is_identity():
            raise MalformedInputError(
                "subset generator", "base and step must be nonnegative and step nonzero"
            )
        if self.kind == SubsetKind.POLYNOMIAL:
            if any(c < 0 for c in self.coefficients) or not any(c > 0 for c in self.coefficients[1:]):
                raise MalformedInputError(
                    "subset generator",
                    "polynomial coefficients must be nonnegative with a positive non-constant term",
                )

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def explicit(cls, elements: Sequence) -> "SubsetGenerator":
        items = [as_element(e) for e in elements]
        if not items:
            raise MalformedInputError("subset generator", "explicit list is empty")
        return cls(SubsetKind.EXPLICIT, items[0].d, elements=canonical_order(items))

    @classmethod
    def arithmetic(cls, base, step) -> "SubsetGenerator":
        base, step = as_element(base), as_element(step)
        return cls(SubsetKind.ARITHMETIC, base.d, base=base, step=step)

    @classmethod
    def axis_ray(cls, d: int, axis: int, start: int = 0) -> "SubsetGenerator":
        if not 0 <= axis < d:
            raise MalformedInputError("subset generator", f"axis {axis} out of range for d={d}")
        unit = GroupElement.unit(d, axis)
        return cls(SubsetKind.AXIS_RAY, d, base=unit.scale(start), step=unit,
                   params={"axis": axis, "start": start})

    @classmethod
    def polynomial(cls, direction, coefficients: Sequence[int]) -> "SubsetGenerator":
        direction = as_element(direction)
        coefficients = tuple(int(c) for c in coefficients)
        base = direction.scale(coefficients[0] if coefficients else 0)
        return cls(SubsetKind.POLYNOMIAL, direction.d, base=base, step=direction,
                   coefficients=coefficients)

    @classmethod
    def squares(cls, d: int = 1, axis: int = 0) -> "SubsetGenerator":
        return cls.polynomial(GroupElement.unit(d, axis), (0, 0, 1))

    @classmethod
    def ip_set(cls, generators: Sequence, k: Optional[int] = None) -> "SubsetGenerator":
        gens = [as_element(g) for g in generators]
        if not gens:
            raise MalformedInputError("subset generator", "IP set needs at least one generator")
        k = len(gens) if k is None else k
        members = ip_initial_segment(gens, k)
        return cls(SubsetKind.IP_SET, gens[0].d, elements=members, ip_length=k,
                   params={"generators": [g.to_list() for g in gens]})

    @classmethod
    def density_one_complement(cls, d: int, excluded: Sequence = ()) -> "SubsetGenerator":
        items = canonical_order(as_element(e, d) for e in excluded)
        return cls(SubsetKind.DENSITY_ONE_COMPLEMENT, d, elements=items)

    @classmethod
    def full(cls, d: int) -> "SubsetGenerator":
        return cls(SubsetKind.FULL, d)

    # ------------------------------------------------------------------
    # Enumeration
    # ------------------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind in (SubsetKind.EXPLICIT, SubsetKind.IP_SET)

    def iter_canonical(self) -> Iterator[GroupElement]:
        """Yield the elements of S in canonical order (endless for infinite kinds)."""
        if self.kind in (SubsetKind.EXPLICIT, SubsetKind.IP_SET):
            yield from self.elements
        elif self.kind in (SubsetKind.ARITHMETIC, SubsetKind.AXIS_RAY):
            # coordinates are nondecreasing in k, so the progression is already canonical
            for k in itertools.count():
                yield self.base + self.step.scale(k)
        elif self.kind == SubsetKind.POLYNOMIAL:
            for k in itertools.count():
                value = sum(c * k ** i for i, c in enumerate(self.coefficients))
                yield self.step.scale(value)
        else:
            excluded = set(self.elements)
            for shell in itertools.count():
                for coords in itertools.product(range(shell + 1), repeat=self.d):
                    if max(coords) != shell:
                        continue
                    g = GroupElement(coords)
                    if g not in excluded:
                        yield g

    def members(self, n: int) -> FiniteGroupSet:
        """S ∩ F_n in canonical order."""
        if n < 1:
            raise MalformedInputError("Følner index", f"n must be >= 1, got {n!r}")
        return tuple(itertools.takewhile(lambda g: g.shell() < n, self.iter_canonical()))

    def count(self, n: int) -> int:
        return len(self.members(n))

    def take(self, m: int) -> FiniteGroupSet:
        """First m elements of S (fewer if S is an exhausted finite list)."""
        return tuple(itertools.islice(self.iter_canonical(), m))

    def to_dict(self) -> Dict[str, Any]:
        """Config-style descriptor (inverse of subset_from_dict)."""
        data: Dict[str, Any] = {"kind": self.kind.value, "d": self.d}
        if self.kind == SubsetKind.EXPLICIT:
            data["elements"] = [g.to_list() for g in self.elements]
        elif self.kind == SubsetKind.ARITHMETIC:
            data["base"] = self.base.to_list()
            data["step"] = self.step.to_list()
        elif self.kind == SubsetKind.AXIS_RAY:
            data["axis"] = self.params["axis"]
            data["start"] = self.params["start"]
        elif self.kind == SubsetKind.POLYNOMIAL:
            data["direction"] = self.step.to_list()
            data["coefficients"] = list(self.coefficients)
        elif self.kind == SubsetKind.IP_SET:
            data["generators"] = self.params["generators"]
            data["k"] = self.ip_length
        elif self.kind == SubsetKind.DENSITY_ONE_COMPLEMENT:
            data["excluded"] = [g.to_list() for g in self.elements]
        return data


def subset_from_dict(data: Dict[str, Any], d: Optional[int] = None) -> SubsetGenerator:
    """
    Build a SubsetGenerator from a config descriptor.

    Raises:
        MalformedInputError: On unknown kinds or bad parameters
    """
    try:
        kind = SubsetKind(data.get("kind"))
    except ValueError:
        valid = ", ".join(k.value for k in SubsetKind)
        raise MalformedInputError("subset generator", f"unknown kind {data.get('kind')!r}; valid kinds: {valid}")
    d = data.get("d", d)

    if kind == SubsetKind.EXPLICIT:
        return SubsetGenerator.explicit(data["elements"])
    if kind == SubsetKind.ARITHMETIC:
        return SubsetGenerator.arithmetic(data["base"], data["step"])
    if kind == SubsetKind.AXIS_RAY:
        return SubsetGenerator.axis_ray(int(d), int(data.get("axis", 0)), int(data.get("start", 0)))
    if kind == SubsetKind.POLYNOMIAL:
        return SubsetGenerator.polynomial(data["direction"], data["coefficients"])
    if kind == SubsetKind.IP_SET:
        return SubsetGenerator.ip_set(data["generators"], data.get("k"))
    if kind == SubsetKind.DENSITY_ONE_COMPLEMENT:
        return SubsetGenerator.density_one_complement(int(d), data.get("excluded", []))
    return SubsetGenerator.full(int(d))


@dataclass
class DensityRow:
    """One row of the density table."""
    n: int
    count: int
    size: int
    ratio: float

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "count": self.count, "size": self.size, "ratio": self.ratio}


@dataclass
class DensityReport:
    """Finite-scale lower/upper density of S along F."""
    lower: float
    upper: float
    per_n: List[DensityRow]
    window_start: int  # first n of the tail window used for lower/upper

    def ratio(self, n: int) -> float:
        return self.per_n[n - 1].ratio

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "window_start": self.window_start,
            "per_n": [row.to_dict() for row in self.per_n],
        }


def density(S: SubsetGenerator, F: FolnerSequence, n_max: int) -> DensityReport:
    """
    Ratios |S ∩ F_n| / |F_n| for n = 1..n_max with tail-window extremes.

    lower/upper are the min/max over the last config.TAIL_WINDOW_FRACTION of
    rows; limsup and liminf themselves are not finitely computable.
    """
    if not isinstance(n_max, int) or n_max < 1:
        raise MalformedInputError("density range", f"n_max must be >= 1, got {n_max!r}")
    if S.d != F.d:
        raise MalformedInputError("density input", f"subset lives in Z^{S.d} but boxes in Z^{F.d}")

    # one pass: histogram of shells, cumulated into |S ∩ F_n|
    per_shell = [0] * n_max
    for g in S.iter_canonical():
        if g.shell() >= n_max:
            break
        per_shell[g.shell()] += 1

    rows: List[DensityRow] = []
    count = 0
    for n in range(1, n_max + 1):
        count += per_shell[n - 1]
        size = F.size(n)
        rows.append(DensityRow(n=n, count=count, size=size, ratio=count / size))

    start = int(len(rows) * (1 - config.TAIL_WINDOW_FRACTION))
    window = rows[start:]
    report = DensityReport(
        lower=min(r.ratio for r in window),
        upper=max(r.ratio for r in window),
        per_n=rows,
        window_start=window[0].n,
    )
    logger.info(f"Density of {S.kind.value} over n <= {n_max}: [{report.lower:.6g}, {report.upper:.6g}]")
    return report
