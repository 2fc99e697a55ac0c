"""
Lattice elements of Z^d and the Følner box sequence F_n = [0, n-1]^d.

The group operation is component-wise addition; all values are immutable
and safe to share across worker threads.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import config
from core.errors import CapacityError, MalformedInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element g of Z^d."""
    coords: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) == 0:
            raise MalformedInputError("group element", "dimension must be at least 1")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in self.coords):
            raise MalformedInputError("group element", f"coordinates must be integers, got {self.coords}")

    @classmethod
    def of(cls, *coords: int) -> "GroupElement":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, d: int) -> "GroupElement":
        return cls((0,) * d)

    @classmethod
    def unit(cls, d: int, axis: int) -> "GroupElement":
        coords = [0] * d
        coords[axis] = 1
        return cls(tuple(coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_dim(other)
        return GroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check_dim(other)
        return GroupElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.coords))

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(tuple(k * a for a in self.coords))

    def norm(self) -> int:
        """Sup norm max |g_i|."""
        return max(abs(a) for a in self.coords)

    def is_identity(self) -> bool:
        return all(a == 0 for a in self.coords)

    def in_box(self, n: int) -> bool:
        """Membership in F_n = [0, n-1]^d."""
        return all(0 <= a < n for a in self.coords)

    def in_orthant(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def shell(self) -> int:
        """Smallest m with g in F_{m+1} (orthant elements only)."""
        return max(self.coords)

    def to_list(self) -> list:
        return list(self.coords)

    def _check_dim(self, other: "GroupElement"):
        if other.d != self.d:
            raise MalformedInputError(
                "group element", f"dimension mismatch: {self.d} vs {other.d}"
            )

    def __repr__(self) -> str:
        if self.d == 1:
            return f"g({self.coords[0]})"
        return f"g{self.coords}"


# Ordered finite sets of group elements (F_n, S ∩ F_n, pools)
FiniteGroupSet = Tuple[GroupElement, ...]


def canonical_key(g: GroupElement) -> Tuple[int, Tuple[int, ...]]:
    """First-hit shell in F_1, F_2, ..., then lexicographic."""
    return (g.shell(), g.coords)


def canonical_order(elements: Iterable[GroupElement]) -> FiniteGroupSet:
    """Deduplicate and sort into the canonical enumeration order."""
    return tuple(sorted(set(elements), key=canonical_key))


def as_element(value, d: int = None) -> GroupElement:
    """Coerce an int / sequence / GroupElement into a GroupElement."""
    if isinstance(value, GroupElement):
        element = value
    elif isinstance(value, int) and not isinstance(value, bool):
        element = GroupElement((value,))
    elif isinstance(value, Sequence):
        element = GroupElement(tuple(int(v) for v in value))
    else:
        raise MalformedInputError("group element", f"cannot interpret {value!r}")
    if d is not None and element.d != d:
        raise MalformedInputError("group element", f"expected dimension {d}, got {element.d}")
    return element


class FolnerKind(str, Enum):
    """Følner sequence shapes."""
    BOXES = "boxes"


@dataclass(frozen=True)
class FolnerSequence:
    """Boxes F_n = [0, n-1]^d, nested and containing the identity from n = 1."""
    d: int
    kind: FolnerKind = FolnerKind.BOXES

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise MalformedInputError("Følner sequence", f"dimension must be a positive integer, got {self.d!r}")
        if not isinstance(self.kind, FolnerKind):
            object.__setattr__(self, "kind", FolnerKind(self.kind))

    def size(self, n: int) -> int:
        return n ** self.d

    def contains(self, g: GroupElement, n: int) -> bool:
        return g.in_box(n)

    def set(self, n: int) -> FiniteGroupSet:
        return folner_set(self, n)

    def to_dict(self) -> dict:
        return {"d": self.d, "kind": self.kind.value}


def folner_set(F: FolnerSequence, n: int) -> FiniteGroupSet:
    """
    All lattice points of [0, n-1]^d in lexicographic order.

    Args:
        F: Følner sequence (boxes)
        n: Box index, n >= 1

    Returns:
        Tuple of n^d GroupElements

    Raises:
        MalformedInputError: If n < 1
        CapacityError: If n^d exceeds config.MAX_FOLNER_SET_SIZE
    """
    if not isinstance(n, int) or n < 1:
        raise MalformedInputError("Følner index", f"n must be >= 1, got {n!r}")
    size = F.size(n)
    if size > config.MAX_FOLNER_SET_SIZE:
        raise CapacityError("|F_n|", size, config.MAX_FOLNER_SET_SIZE)
    return _box(F.d, n)


@lru_cache(maxsize=128)
def _box(d: int, n: int) -> FiniteGroupSet:
    return tuple(GroupElement(c) for c in itertools.product(range(n), repeat=d))
