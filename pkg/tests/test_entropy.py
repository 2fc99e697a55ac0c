"""
Tests for partitions, exact joins, Shannon / conditional entropy and the
measure-theoretic sequence entropy profile.
"""
import math
import random
import sys
import warnings
from fractions import Fraction
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import MalformedInputError
from core.models import ProfileKind
from entropy.measure import (
    conditional_entropy, distribution_entropy, joint_entropy, partition_entropy, seq_entropy_profile,
    shannon_entropy,
)
from entropy.partitions import ArcPartition, SymbolicPartition, join_cells, join_partitions, partition_from_dict
from group.lattice import FolnerSequence, GroupElement
from group.subsets import SubsetGenerator
from systems.rotation import RotationSystem
from tests.fixtures import GOLDEN_ANGLE, arc_count_bound, bernoulli, example61_system, golden_rotation, rational_rotation

LOG2 = math.log(2)


def g(*coords):
    return GroupElement(coords)


def half_arcs() -> ArcPartition:
    return ArcPartition.from_breakpoints([Fraction(0), Fraction(1, 2)])


class TestShannonEntropy:
    """Σ -w log w in nats."""

    def test_deterministic(self):
        assert shannon_entropy([1.0]) == 0.0

    def test_uniform_pair(self):
        assert shannon_entropy([0.5, 0.5]) == pytest.approx(LOG2, abs=1e-12)

    def test_biased_pair(self):
        assert shannon_entropy([0.2, 0.8]) == pytest.approx(0.500402, abs=1e-6)

    def test_zero_weights_ignored(self):
        assert shannon_entropy([0.5, 0.0, 0.5]) == pytest.approx(LOG2, abs=1e-12)

    def test_zero_weights_raise_no_warning(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert shannon_entropy([0.0, 1.0, 0.0]) == 0.0
            assert shannon_entropy([Fraction(0), Fraction(1, 2), Fraction(1, 2)]) == pytest.approx(LOG2, abs=1e-12)

    def test_exact_weights(self):
        assert shannon_entropy([Fraction(1, 4)] * 4) == pytest.approx(2 * LOG2, abs=1e-12)

    def test_negative_weight(self):
        with pytest.raises(MalformedInputError):
            shannon_entropy([1.5, -0.5])

    def test_weights_not_summing_to_one(self):
        with pytest.raises(MalformedInputError):
            shannon_entropy([0.5, 0.4])

    def test_bounded_by_log_length(self):
        rng = random.Random(7)
        for _ in range(200):
            raw = [rng.random() for _ in range(rng.randint(1, 8))]
            total = sum(raw)
            weights = [x / total for x in raw]
            assert 0.0 <= shannon_entropy(weights) <= math.log(len(weights)) + 1e-12


class TestJoinCells:
    """Atoms of joins of translated partitions with exact masses."""

    def test_single_translate(self):
        sys_ = bernoulli()
        cells = join_cells(sys_, SymbolicPartition.generating(sys_), [g(0)])
        assert cells.masses() == {(0,): Fraction(1, 2), (1,): Fraction(1, 2)}

    def test_three_translates(self):
        sys_ = bernoulli()
        cells = join_cells(sys_, SymbolicPartition.generating(sys_), [g(0), g(1), g(2)])
        assert len(cells) == 8
        assert set(cells.masses().values()) == {Fraction(1, 8)}

    def test_identity_axis_collapses_rows(self):
        sys_ = example61_system()
        box = [g(0, 0), g(0, 1), g(1, 0), g(1, 1)]
        cells = join_cells(sys_, SymbolicPartition.generating(sys_), box)
        assert len(cells) == 4
        assert set(cells.masses().values()) == {Fraction(1, 4)}

    def test_biased_masses_are_exact(self):
        sys_ = bernoulli(Fraction(1, 5))
        cells = join_cells(sys_, SymbolicPartition.generating(sys_), [g(0), g(3)])
        assert cells.masses()[(0, 1)] == Fraction(4, 25)
        assert sum(cells.masses().values()) == 1

    def test_block_partition_overlapping_translates(self):
        sys_ = bernoulli()
        alpha = SymbolicPartition.block(sys_, [[0], [1]])
        cells = join_cells(sys_, alpha, [g(0), g(1)])
        # words on {0, 1, 2}
        assert len(cells) == 8

    def test_rotation_quarter_turn(self):
        sys_ = rational_rotation("1/4")
        cells = join_cells(sys_, half_arcs(), [g(0), g(1)])
        assert len(cells) == 4
        assert set(cells.masses().values()) == {Fraction(1, 4)}

    def test_rotation_periodic_translates_repeat(self):
        sys_ = rational_rotation("1/2")
        cells = join_cells(sys_, half_arcs(), [g(0), g(1), g(2)])
        assert len(cells) == 2

    def test_empty_translates(self):
        with pytest.raises(MalformedInputError):
            join_partitions(bernoulli(), [])

    def test_partition_system_mismatch(self):
        with pytest.raises(MalformedInputError):
            join_cells(bernoulli(), half_arcs(), [g(0)])


class TestPartitions:
    """Partition constructors and validation."""

    def test_table_length_checked(self):
        with pytest.raises(MalformedInputError):
            SymbolicPartition.from_table(bernoulli(), [[0], [1]], [0, 1, 1])

    def test_coarsen_lowers_entropy(self):
        sys_ = bernoulli()
        alpha = SymbolicPartition.block(sys_, [[0], [1]])
        coarse = alpha.coarsen({0: 0, 1: 0, 2: 1, 3: 1})
        assert coarse.n_cells == 2
        assert partition_entropy(sys_, coarse) == pytest.approx(LOG2, abs=1e-12)
        assert partition_entropy(sys_, alpha) == pytest.approx(2 * LOG2, abs=1e-12)

    def test_trivial(self):
        assert partition_entropy(bernoulli(), SymbolicPartition.trivial(bernoulli())) == 0.0
        assert partition_entropy(golden_rotation(), ArcPartition.trivial()) == 0.0

    def test_arc_partition_labels(self):
        alpha = ArcPartition.from_breakpoints(["0", "1/4", "1/2"], [0, 1, 0])
        assert alpha.n_cells == 2
        assert alpha.label_at(Fraction(1, 8)) == 0
        assert alpha.label_at(Fraction(3, 8)) == 1
        assert alpha.label_at(Fraction(7, 8)) == 0

    def test_arc_breakpoints_must_increase(self):
        with pytest.raises(MalformedInputError):
            ArcPartition(breakpoints=(Fraction(1, 2), Fraction(1, 4)), labels=(0, 1))

    def test_descriptor(self):
        alpha = partition_from_dict(rational_rotation("1/3"), {"kind": "arcs", "breakpoints": ["0", "1/2"]})
        assert alpha == half_arcs()
        with pytest.raises(MalformedInputError, match="valid kinds"):
            partition_from_dict(bernoulli(), {"kind": "arcs"})


class TestConditionalEntropy:
    """H(α | β) = H(α ∨ β) - H(β)."""

    def test_self_conditioning(self):
        sys_ = bernoulli(Fraction(1, 5))
        alpha = SymbolicPartition.generating(sys_)
        assert conditional_entropy(sys_, alpha, alpha) == pytest.approx(0.0, abs=1e-12)

    def test_trivial_condition(self):
        sys_ = bernoulli(Fraction(1, 5))
        alpha = SymbolicPartition.generating(sys_)
        beta = SymbolicPartition.trivial(sys_)
        assert conditional_entropy(sys_, alpha, beta) == pytest.approx(partition_entropy(sys_, alpha), abs=1e-12)

    def test_independent_coordinates(self):
        sys_ = bernoulli()
        alpha = SymbolicPartition.generating(sys_)
        beta = SymbolicPartition.block(sys_, [[1]])
        assert conditional_entropy(sys_, alpha, beta) == pytest.approx(LOG2, abs=1e-12)


def _random_symbolic_partition(rng: random.Random, sys_) -> SymbolicPartition:
    window = rng.sample(range(4), rng.randint(0, 3))
    cells = rng.randint(1, 3)
    table = [rng.randrange(cells) for _ in range(2 ** len(window))]
    return SymbolicPartition.from_table(sys_, [[w] for w in window], table)


def _random_arc_partition(rng: random.Random) -> ArcPartition:
    points = sorted(rng.sample(range(12), rng.randint(1, 4)))
    labels = [rng.randrange(3) for _ in points]
    return ArcPartition.from_breakpoints([Fraction(p, 12) for p in points], labels)


class TestEntropyIdentities:
    """Randomised chain rule and refinement monotonicity (seeded)."""

    CASES = 1000

    def _check(self, sys_, alpha, beta):
        e = GroupElement.zero(sys_.d)
        h_alpha = partition_entropy(sys_, alpha)
        h_beta = partition_entropy(sys_, beta)
        h_join = distribution_entropy(join_partitions(sys_, [(e, alpha), (e, beta)]))
        h_cond = conditional_entropy(sys_, alpha, beta)

        # chain rule
        assert h_join == pytest.approx(h_beta + h_cond, abs=1e-9)
        # refinement monotonicity: the join refines both partitions
        assert h_join >= h_alpha - 1e-9
        assert h_join >= h_beta - 1e-9
        # conditioning never increases entropy
        assert h_cond <= h_alpha + 1e-9
        # subadditivity
        assert h_join <= h_alpha + h_beta + 1e-9

    def test_symbolic_cases(self):
        rng = random.Random(20240601)
        for _ in range(self.CASES // 2):
            p = Fraction(rng.randint(1, 9), 10)
            sys_ = bernoulli(p)
            self._check(sys_, _random_symbolic_partition(rng, sys_), _random_symbolic_partition(rng, sys_))

    def test_rotation_cases(self):
        rng = random.Random(1729)
        for _ in range(self.CASES // 2):
            sys_ = RotationSystem(d=1, angles=(Fraction(rng.randrange(12), 12),))
            self._check(sys_, _random_arc_partition(rng), _random_arc_partition(rng))

    def test_coarsening_is_monotone(self):
        rng = random.Random(99)
        sys_ = bernoulli(Fraction(3, 10))
        for _ in range(100):
            alpha = _random_symbolic_partition(rng, sys_)
            labels = sorted(set(alpha.table))
            merged = alpha.coarsen({x: rng.randrange(2) for x in labels})
            assert partition_entropy(sys_, merged) <= partition_entropy(sys_, alpha) + 1e-9


class TestMeasureProfile:
    """Finite-scale measure-theoretic sequence entropy."""

    def test_example61_along_the_shift_axis(self):
        sys_ = example61_system()
        profile = seq_entropy_profile(
            sys_, SymbolicPartition.generating(sys_), SubsetGenerator.axis_ray(2, axis=1),
            FolnerSequence(2), range(1, 9),
        )
        assert profile.kind == ProfileKind.MEASURE
        assert [row.count for row in profile.rows] == list(range(1, 9))
        for row in profile.rows:
            assert row.normalized == pytest.approx(LOG2, abs=1e-9)

    def test_example61_along_boxes(self):
        sys_ = example61_system()
        profile = seq_entropy_profile(
            sys_, SymbolicPartition.generating(sys_), SubsetGenerator.full(2), FolnerSequence(2), range(1, 5),
        )
        for row in profile.rows:
            assert row.count == row.n ** 2
            assert row.normalized == pytest.approx(LOG2 / row.n, abs=1e-9)

    @pytest.mark.parametrize("p", [Fraction(1, 2), Fraction(1, 5), 0.2])
    def test_bernoulli_attains_partition_entropy(self, p):
        sys_ = bernoulli(p)
        alpha = SymbolicPartition.generating(sys_)
        S = SubsetGenerator.explicit([0, 3, 5, 6, 9, 12, 20, 21])
        profile = seq_entropy_profile(sys_, alpha, S, FolnerSequence(1), range(1, 23))
        h_alpha = partition_entropy(sys_, alpha)
        assert profile.final.count == 8
        for row in profile.rows:
            assert row.normalized == pytest.approx(h_alpha, abs=1e-9)

    def test_empty_rows_skipped(self):
        sys_ = bernoulli()
        S = SubsetGenerator.explicit([4, 6])
        profile = seq_entropy_profile(sys_, SymbolicPartition.generating(sys_), S, FolnerSequence(1), range(1, 8))
        assert [row.n for row in profile.rows] == [5, 6, 7]

    def test_normalized_within_partition_entropy(self):
        sys_ = bernoulli(Fraction(1, 5))
        alpha = SymbolicPartition.block(sys_, [[0], [1]])
        profile = seq_entropy_profile(sys_, alpha, SubsetGenerator.squares(), FolnerSequence(1), range(1, 20))
        h_alpha = partition_entropy(sys_, alpha)
        for row in profile.rows:
            assert 0.0 <= row.normalized <= h_alpha + 1e-9

    @pytest.mark.parametrize("angle", [GOLDEN_ANGLE, math.sqrt(2) - 1])
    def test_rotation_rows_within_arc_count_bound(self, angle):
        sys_ = RotationSystem(d=1, angles=(angle,))
        profile = seq_entropy_profile(sys_, half_arcs(), SubsetGenerator.full(1), FolnerSequence(1), range(1, 21))
        for row in profile.rows:
            assert row.normalized <= arc_count_bound(row.count) + 1e-12

    def test_null_rotation_decays(self):
        sys_ = golden_rotation()
        profile = seq_entropy_profile(sys_, half_arcs(), SubsetGenerator.full(1), FolnerSequence(1), range(1, 51))
        assert profile.final.n == 50
        assert profile.final.normalized <= math.log(100) / 50
        tail = [row.normalized for row in profile.rows if row.n >= 10]
        assert all(later <= earlier + 1e-12 for earlier, later in zip(tail, tail[1:]))

    def test_null_rotation_along_squares(self):
        sys_ = golden_rotation()
        profile = seq_entropy_profile(sys_, half_arcs(), SubsetGenerator.squares(), FolnerSequence(1), range(1, 51))
        assert profile.final.count == 8
        for row in profile.rows:
            assert row.normalized <= arc_count_bound(row.count) + 1e-12

    def test_null_rotation_along_fifty_squares(self):
        sys_ = golden_rotation()
        n_range = [k * k + 1 for k in range(50)]
        profile = seq_entropy_profile(sys_, half_arcs(), SubsetGenerator.squares(), FolnerSequence(1), n_range)
        assert [row.count for row in profile.rows] == list(range(1, 51))
        assert profile.final.normalized <= math.log(100) / 50
        tail = [row.normalized for row in profile.rows if row.count >= 10]
        assert all(later <= earlier + 1e-12 for earlier, later in zip(tail, tail[1:]))

    def test_truncation_keeps_earlier_rows(self, monkeypatch):
        import config
        monkeypatch.setattr(config, "ENUMERATION_BUDGET", 2 ** 5)
        sys_ = bernoulli()
        profile = seq_entropy_profile(
            sys_, SymbolicPartition.generating(sys_), SubsetGenerator.full(1), FolnerSequence(1), range(1, 9),
        )
        assert profile.truncated
        assert [row.n for row in profile.rows] == [1, 2, 3, 4, 5]
        assert "Capacity exceeded" in profile.truncation_reason

    def test_jobs_do_not_change_rows(self):
        sys_ = bernoulli(Fraction(1, 5))
        alpha = SymbolicPartition.generating(sys_)
        args = (sys_, alpha, SubsetGenerator.squares(), FolnerSequence(1), range(1, 30))
        assert seq_entropy_profile(*args, jobs=1).to_dict() == seq_entropy_profile(*args, jobs=4).to_dict()

    def test_dimension_mismatch(self):
        with pytest.raises(MalformedInputError):
            seq_entropy_profile(
                bernoulli(), SymbolicPartition.generating(bernoulli()), SubsetGenerator.full(2),
                FolnerSequence(2), [1],
            )

    def test_joint_entropy_of_distinct_shifts(self):
        sys_ = bernoulli()
        assert joint_entropy(sys_, SymbolicPartition.generating(sys_), [g(0), g(4), g(9)]) == pytest.approx(
            3 * LOG2, abs=1e-12
        )
