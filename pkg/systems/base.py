"""
Base class for measure-preserving Z^d systems (X, G, μ).

Concrete systems supply their open-set algebra (cylinder unions or arc sets);
covers, hitting times, correlations and searches are written once against
this interface.
"""
import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Sequence

from group.lattice import GroupElement
from utils.numbers import Number

logger = logging.getLogger(__name__)


class SystemKind(str, Enum):
    """Supported system families."""
    SYMBOLIC = "symbolic"
    ROTATION = "rotation"


class DynamicalSystem(ABC):
    """
    A Z^d action with an invariant probability measure.

    Open sets are opaque values produced by the system itself; every method
    is pure, so systems can be shared by worker threads.
    """

    kind: SystemKind
    d: int

    @abstractmethod
    def full_set(self):
        """The whole space X."""
        pass

    @abstractmethod
    def empty_set(self):
        pass

    @abstractmethod
    def translate_set(self, g: GroupElement, A):
        """g^{-1}A = {x : g x ∈ A}."""
        pass

    @abstractmethod
    def intersect(self, A, B):
        pass

    @abstractmethod
    def union(self, A, B):
        pass

    @abstractmethod
    def complement(self, A):
        pass

    @abstractmethod
    def is_empty(self, A) -> bool:
        pass

    @abstractmethod
    def measure(self, A) -> Number:
        """μ(A), exact when the system parameters are exact."""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Config-style descriptor of the system."""
        pass

    def union_all(self, sets: Sequence):
        result = self.empty_set()
        for A in sets:
            result = self.union(result, A)
        return result

    def is_cover(self, sets: Sequence) -> bool:
        """True when the sets cover X (up to the measure-zero boundary of arcs)."""
        return self.is_empty(self.complement(self.union_all(sets)))

    def pairwise_disjoint(self, sets: Sequence) -> bool:
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if not self.is_empty(self.intersect(sets[i], sets[j])):
                    return False
        return True

    def meets(self, A, g: GroupElement, B) -> bool:
        """A ∩ g^{-1}B ≠ ∅."""
        return not self.is_empty(self.intersect(A, self.translate_set(g, B)))
