"""
Tests for covers: the atom carrier, exact and greedy minimal subcovers,
topological sequence entropy profiles, hitting times and the mixing checks.
"""
import itertools
import math
import random
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import CapacityError, ConfigError, MalformedInputError, SolverBudgetError
from core.models import ProfileKind, SolverMode
from covers.cover import (
    AtomIncidence, Cover, complement_cover, cover_atoms, cover_flags, cover_from_dict, origin_cylinder_cover,
    validate_cover,
)
from covers.set_cover import greedy_cover, min_subcover
from covers.topological import (
    hitting_times, join_size, non_weak_mixing_ceiling, strong_mixing_evidence, top_seq_entropy_profile,
)
from group.lattice import FolnerSequence, GroupElement
from group.subsets import SubsetGenerator
from systems.rotation import RotationSystem
from systems.symbolic import SymbolicSystem
from tests.fixtures import GOLDEN_ANGLE, arcs, bernoulli, cyl, example61_system, rational_rotation

LOG2 = math.log(2)


def g(*coords):
    return GroupElement(coords)


def brute_force_cover_size(inc: AtomIncidence) -> int:
    for size in range(1, inc.n_elements + 1):
        for combo in itertools.combinations(inc.elements, size):
            union = 0
            for mask in combo:
                union |= mask
            if union == inc.universe:
                return size
    raise AssertionError("instance is not a cover")


def random_instance(rng: random.Random, max_elements: int = 12) -> AtomIncidence:
    n_atoms = rng.randint(1, 10)
    n_elements = rng.randint(1, max_elements)
    sets = [{a for a in range(n_atoms) if rng.random() < 0.35} for _ in range(n_elements)]
    for atom in range(n_atoms):
        if not any(atom in s for s in sets):
            sets[rng.randrange(n_elements)].add(atom)
    return AtomIncidence.from_sets(n_atoms, sets)


def random_circular_instance(rng: random.Random) -> AtomIncidence:
    """Elements made of one to three runs of atoms numbered around a circle."""
    n_atoms = rng.randint(2, 12)
    sets = []
    for _ in range(rng.randint(1, 10)):
        members = set()
        for _ in range(rng.choice((1, 1, 2, 3))):
            start, length = rng.randrange(n_atoms), rng.randint(1, n_atoms - 1)
            members.update((start + k) % n_atoms for k in range(length))
        sets.append(members)
    for atom in range(n_atoms):
        if not any(atom in s for s in sets):
            sets.append({atom})
    inc = AtomIncidence.from_sets(n_atoms, sets)
    inc.circular = True
    return inc


@pytest.fixture
def standard_cover():
    """{X ∖ [0 at 0], X ∖ [1 at 0]} on the binary full shift."""
    return complement_cover(bernoulli(), [cyl(0, 0), cyl(0, 1)])


@pytest.fixture
def overlapping_arc_cover():
    return Cover((arcs(("0", "51/100")), arcs(("1/2", "1/100"))))


class TestCoverAtoms:
    """Atom carrier of translated covers."""

    def test_trivial_cover(self):
        sys_ = bernoulli()
        inc = cover_atoms(sys_, [(g(k), Cover((sys_.full_set(),))) for k in range(3)])
        assert inc.n_atoms == 1
        assert inc.elements == [1]
        assert min_subcover(inc) == 1

    def test_standard_cover_two_translates(self, standard_cover):
        inc = cover_atoms(bernoulli(), [(g(0), standard_cover), (g(1), standard_cover)])
        assert inc.n_atoms == 4
        assert inc.n_elements == 4
        assert all(mask.bit_count() == 1 for mask in inc.elements)

        # element 1 of standard_cover is X ∖ [1 at 0] = [0 at 0]: the all-zero word
        zeros = inc.elements[inc.element_labels.index((1, 1))]
        assert zeros & inc.translate_masks[(0, 1)]
        assert zeros & inc.translate_masks[(1, 1)]
        assert not zeros & inc.translate_masks.get((0, 0), 0)
        assert not zeros & inc.translate_masks.get((1, 0), 0)

    def test_uncovered_translate_rejected(self):
        sys_ = bernoulli()
        with pytest.raises(MalformedInputError):
            cover_atoms(sys_, [(g(0), Cover((cyl(0, 0),)))])

    def test_rotation_atoms(self, overlapping_arc_cover):
        inc = cover_atoms(rational_rotation("1/4"), [(g(0), overlapping_arc_cover)])
        assert inc.is_cover()
        assert min_subcover(inc) == 2

    def test_join_incidence_budget(self, monkeypatch, overlapping_arc_cover):
        import config
        monkeypatch.setattr(config, "JOIN_ELEMENT_BUDGET", 3)
        with pytest.raises(CapacityError):
            cover_atoms(rational_rotation("1/5"), [(g(k), overlapping_arc_cover) for k in range(4)])


class TestCoverFlags:
    """Standard / admissible / non-trivial."""

    def test_origin_cylinders(self):
        flags = cover_flags(bernoulli(), origin_cylinder_cover(bernoulli()))
        assert flags.standard and flags.admissible and flags.non_trivial

    def test_three_letter_cover_is_not_standard(self):
        sys_ = SymbolicSystem(alphabet_size=3, d=1)
        flags = cover_flags(sys_, origin_cylinder_cover(sys_))
        assert not flags.standard
        assert flags.admissible

    def test_cover_with_whole_space(self):
        sys_ = bernoulli()
        flags = cover_flags(sys_, Cover((cyl(0, 0), sys_.full_set())))
        assert not flags.non_trivial
        assert not flags.admissible

    def test_overlapping_arcs(self, overlapping_arc_cover):
        flags = cover_flags(rational_rotation("1/3"), overlapping_arc_cover)
        assert flags.to_dict() == {"standard": True, "admissible": True, "non_trivial": True}

    def test_validate_cover(self):
        with pytest.raises(MalformedInputError):
            validate_cover(bernoulli(), Cover((cyl(0, 0), cyl(1, 1))))

    def test_cover_descriptors(self):
        sys_ = bernoulli()
        cover = cover_from_dict(sys_, {"kind": "complements", "sets": [
            {"cylinders": [{"at": [[0]], "letters": [0]}]},
            {"cylinders": [{"at": [[0]], "letters": [1]}]},
        ]})
        assert cover.is_standard
        assert cover_from_dict(sys_, {"kind": "origin-cylinders"}) == origin_cylinder_cover(sys_)
        with pytest.raises(ConfigError):
            cover_from_dict(sys_, {"kind": "balls"})
        with pytest.raises(ConfigError):
            cover_from_dict(rational_rotation("1/3"), {"kind": "origin-cylinders"})


class TestMinSubcover:
    """Exact branch and bound against exhaustive search."""

    def test_single_element(self):
        assert min_subcover(AtomIncidence.from_sets(3, [{0, 1, 2}, {0}])) == 1

    def test_singletons(self):
        assert min_subcover(AtomIncidence.from_sets(5, [{i} for i in range(5)])) == 5

    def test_greedy_trap(self):
        inc = AtomIncidence.from_sets(6, [{0, 1, 2}, {3, 4, 5}, {0, 1, 3, 4}])
        assert min_subcover(inc, SolverMode.EXACT) == 2
        assert min_subcover(inc, SolverMode.GREEDY) == 3

    def test_odd_cycle_needs_branching(self):
        inc = AtomIncidence.from_sets(7, [{i, (i + 1) % 7} for i in range(7)])
        assert min_subcover(inc) == 4

    def test_core_budget(self, monkeypatch):
        import config
        monkeypatch.setattr(config, "EXACT_COVER_MAX_ELEMENTS", 2)
        inc = AtomIncidence.from_sets(7, [{i, (i + 1) % 7} for i in range(7)])
        with pytest.raises(SolverBudgetError, match="greedy"):
            min_subcover(inc)
        assert min_subcover(inc, SolverMode.GREEDY) == 4

    def test_not_a_cover(self):
        with pytest.raises(MalformedInputError):
            min_subcover(AtomIncidence.from_sets(3, [{0}, {1}]))

    def test_atom_out_of_range(self):
        with pytest.raises(MalformedInputError):
            AtomIncidence.from_sets(2, [{0, 2}])

    def test_random_eight_element_instances(self):
        rng = random.Random(8)
        for _ in range(50):
            inc = random_instance(rng, max_elements=8)
            assert min_subcover(inc) == brute_force_cover_size(inc)

    def test_random_instances_match_oracle(self):
        rng = random.Random(500)
        for _ in range(500):
            inc = random_instance(rng)
            exact = min_subcover(inc, SolverMode.EXACT)
            greedy = min_subcover(inc, SolverMode.GREEDY)
            assert exact == brute_force_cover_size(inc)
            assert exact <= greedy <= inc.n_elements

    def test_greedy_cover_indices(self):
        assert greedy_cover(0b111, [0b001, 0b110, 0b011]) == [1, 0]

    def test_circular_instances_match_oracle(self):
        rng = random.Random(2024)
        for _ in range(400):
            inc = random_circular_instance(rng)
            assert min_subcover(inc) == brute_force_cover_size(inc)

    def test_circular_arcs_skip_the_branching_budget(self, monkeypatch):
        import config
        monkeypatch.setattr(config, "EXACT_COVER_MAX_ELEMENTS", 2)
        inc = AtomIncidence.from_sets(7, [{i, (i + 1) % 7} for i in range(7)])
        inc.circular = True
        assert min_subcover(inc) == 4

    def test_circular_split_element_is_used(self):
        # {0, 3} is the only element made of two runs and is needed for the optimum
        inc = AtomIncidence.from_sets(6, [{0, 3}, {1, 2}, {4, 5}, {1}, {2}])
        inc.circular = True
        assert min_subcover(inc) == 3

    def test_rotation_atoms_follow_the_circle(self, overlapping_arc_cover):
        inc = cover_atoms(rational_rotation("1/4"), [(g(0), overlapping_arc_cover)])
        assert inc.circular
        assert not cover_atoms(bernoulli(), [(g(0), origin_cylinder_cover(bernoulli()))]).circular


class TestTopologicalProfile:
    """log N of joined covers along S ∩ F_n."""

    def test_example61_along_the_shift_axis(self):
        sys_ = example61_system()
        profile = top_seq_entropy_profile(
            sys_, origin_cylinder_cover(sys_), SubsetGenerator.axis_ray(2, axis=1), FolnerSequence(2), range(1, 9),
        )
        assert profile.kind == ProfileKind.TOPOLOGICAL
        for row in profile.rows:
            assert row.n_join == 2 ** row.n
            assert row.solver == "exact"
            assert row.normalized == pytest.approx(LOG2, abs=1e-9)

    def test_example61_along_boxes(self):
        sys_ = example61_system()
        profile = top_seq_entropy_profile(
            sys_, origin_cylinder_cover(sys_), SubsetGenerator.full(2), FolnerSequence(2), range(1, 5),
        )
        for row in profile.rows:
            assert row.normalized == pytest.approx(LOG2 / row.n, abs=1e-9)

    def test_rotation_cover_grows_linearly(self, overlapping_arc_cover):
        sys_ = RotationSystem(d=1, angles=(1 - GOLDEN_ANGLE,))
        profile = top_seq_entropy_profile(
            sys_, overlapping_arc_cover, SubsetGenerator.full(1), FolnerSequence(1), range(1, 13),
        )
        assert not profile.truncated
        for row in profile.rows:
            assert row.n_join <= 2 * row.count
            assert row.normalized <= math.log(2 * row.count) / row.count + 1e-12

    def test_wide_arc_rotation_profile_runs_to_forty(self):
        # any arc shorter than the 1/10 overlaps lies in one join element, so N <= 11
        sys_ = RotationSystem(d=1, angles=(1 - GOLDEN_ANGLE,))
        cover = Cover((arcs(("0", "3/5")), arcs(("1/2", "1/10"))))
        n_range = list(range(1, 13)) + [20, 30, 40]
        profile = top_seq_entropy_profile(sys_, cover, SubsetGenerator.full(1), FolnerSequence(1), n_range)
        assert not profile.truncated
        assert [row.n for row in profile.rows] == n_range
        for row in profile.rows:
            assert row.n_join <= min(2 ** row.count, 11)
        for row in profile.rows[5:]:
            assert row.normalized <= math.log(2 * row.count) / row.count + 1e-12
        assert profile.final.normalized <= math.log(11) / 40 + 1e-12

    def test_normalized_bounded_by_log_cover_size(self, standard_cover):
        sys_ = bernoulli()
        profile = top_seq_entropy_profile(
            sys_, standard_cover, SubsetGenerator.squares(), FolnerSequence(1), range(1, 20),
        )
        for row in profile.rows:
            assert row.normalized <= LOG2 + 1e-12

    def test_greedy_solver_recorded(self):
        sys_ = bernoulli()
        profile = top_seq_entropy_profile(
            sys_, origin_cylinder_cover(sys_), SubsetGenerator.full(1), FolnerSequence(1), range(1, 4),
            solver=SolverMode.GREEDY,
        )
        assert [row.solver for row in profile.rows] == ["greedy"] * 3
        assert [row.n_join for row in profile.rows] == [2, 4, 8]

    def test_truncated_by_enumeration_budget(self, monkeypatch):
        import config
        monkeypatch.setattr(config, "ENUMERATION_BUDGET", 2 ** 4)
        sys_ = example61_system()
        profile = top_seq_entropy_profile(
            sys_, origin_cylinder_cover(sys_), SubsetGenerator.axis_ray(2, axis=1), FolnerSequence(2), range(1, 9),
        )
        assert profile.truncated
        assert [row.n for row in profile.rows] == [1, 2, 3, 4]

    def test_submultiplicativity(self, standard_cover, overlapping_arc_cover):
        cases = [
            (bernoulli(), standard_cover),
            (rational_rotation("1/5"), overlapping_arc_cover),
        ]
        for sys_, cover in cases:
            first = join_size(sys_, cover, [g(0), g(2)])
            second = join_size(sys_, cover, [g(3)])
            assert join_size(sys_, cover, [g(0), g(2), g(3)]) <= first * second


class TestHittingTimes:
    """N(U, V) ∩ F_n."""

    def test_whole_space(self):
        sys_ = bernoulli()
        X = sys_.full_set()
        assert hitting_times(sys_, X, X, 5) == tuple(g(k) for k in range(5))

    def test_full_shift_cylinders(self):
        assert hitting_times(bernoulli(), cyl(0, 0), cyl(0, 1), 10) == tuple(g(k) for k in range(1, 10))

    def test_quarter_rotation(self):
        sys_ = rational_rotation("1/4")
        U, V = arcs(("0", "1/10")), arcs(("1/2", "3/5"))
        assert hitting_times(sys_, U, V, 8) == (g(2), g(6))

    def test_strong_mixing_misses_stay_finite(self):
        rows = strong_mixing_evidence(bernoulli(), cyl(0, 0), cyl(0, 1), [4, 8, 16])
        assert [row.misses for row in rows] == [[g(0)]] * 3

    def test_rotation_misses_grow(self):
        sys_ = rational_rotation("1/4")
        rows = strong_mixing_evidence(sys_, arcs(("0", "1/10")), arcs(("1/2", "3/5")), [8, 16])
        assert len(rows[0].misses) == 6
        assert len(rows[1].misses) == 12


class TestNonWeakMixingCeiling:
    """N(join) ≤ |S ∩ F_n| + 1 where returns and crossings are disjoint."""

    def test_half_rotation_fixture(self):
        sys_ = rational_rotation("1/2")
        U1, U2 = arcs(("0", "1/10")), arcs(("1/2", "3/5"))
        rows = non_weak_mixing_ceiling(
            sys_, U1, U2, U1, U2, SubsetGenerator.full(1), FolnerSequence(1), range(1, 9)
        )
        assert len(rows) == 8
        for row in rows:
            assert row.disjoint
            assert row.holds
            assert row.n_join <= row.count + 1

    def test_mixing_system_is_not_disjoint(self):
        sys_ = bernoulli()
        rows = non_weak_mixing_ceiling(
            sys_, cyl(0, 0), cyl(0, 1), cyl(0, 0), cyl(0, 1),
            SubsetGenerator.full(1), FolnerSequence(1), range(2, 5),
        )
        assert not any(row.disjoint for row in rows)

    def test_overlapping_sets_rejected(self):
        sys_ = rational_rotation("1/2")
        with pytest.raises(MalformedInputError):
            non_weak_mixing_ceiling(
                sys_, arcs(("0", "1/10")), arcs(("1/2", "3/5")), arcs(("0", "1/2")), arcs(("1/4", "3/4")),
                SubsetGenerator.full(1), FolnerSequence(1), [1],
            )

    def test_row_dict(self):
        sys_ = rational_rotation("1/2")
        U1, U2 = arcs(("0", "1/10")), arcs(("1/2", "3/5"))
        row = non_weak_mixing_ceiling(sys_, U1, U2, U1, U2, SubsetGenerator.full(1), FolnerSequence(1), [3])[0]
        assert row.to_dict()["bound"] == 4
