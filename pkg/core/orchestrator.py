"""
Orchestrator for sequence entropy runs.

Turns a RunConfig into profiles, density tables, search reports and the
packaged two-dimensional full shift reproduction. The CLI only parses
arguments, calls one method here and hands the result to an exporter.
"""
import logging
import math
from contextlib import contextmanager
from typing import Any, Callable, Dict, List, Optional

import config
from core.errors import CapacityError, ConfigError, SequenceEntropyError
from core.models import (
    EntropyProfile, EntropySequence, EntropyUnit, ReproductionReport, ReproductionRow, SearchMode, SolverMode
)
from core.run_config import RunConfig
from covers.cover import origin_cylinder_cover
from covers.topological import non_weak_mixing_ceiling, strong_mixing_evidence, top_seq_entropy_profile
from entropy.measure import seq_entropy_profile
from entropy.partitions import SymbolicPartition
from group.lattice import FolnerSequence
from group.subsets import DensityReport, SubsetGenerator, density, subset_from_dict
from search.entropy_sequence import greedy_entropy_sequence
from search.independence import greedy_independence, ip_restricted_independence, witness_cover_profile
from search.mixing import correlation_profile, density_one_witness
from search.se_pairs import se_pair_localize
from systems.registry import system_from_dict

logger = logging.getLogger(__name__)

_REQUIRED = object()

# Z^2 acting on {0,1}^Z: the first generator acts trivially, the second shifts
EXAMPLE61_SYSTEM = {
    "kind": "symbolic",
    "alphabet_size": 2,
    "weights": ["1/2", "1/2"],
    "axes": ["identity", "shift"],
}


def _param(
    params: Dict[str, Any], name: str, default: Any = _REQUIRED, cast: Optional[Callable[[Any], Any]] = None
) -> Any:
    if name not in params:
        if default is _REQUIRED:
            raise ConfigError(f"search params need {name!r}")
        return default
    value = params[name]
    if cast is None:
        return value
    try:
        return cast(value)
    except (TypeError, ValueError):
        raise ConfigError(f"search param {name!r} must be a {cast.__name__}, got {value!r}")


class Orchestrator:
    """
    Dispatches commands on a parsed RunConfig.

    Args:
        jobs: Row-level worker threads (config.DEFAULT_JOBS when None)
        unit: Output unit overriding the config's own
        budget: Enumeration budget overriding the config's own
    """

    def __init__(
        self,
        jobs: Optional[int] = None,
        unit: Optional[EntropyUnit] = None,
        budget: Optional[int] = None
    ):
        self.jobs = jobs
        self.unit = EntropyUnit(unit) if unit else None
        self.budget = budget
        self._search_handlers: Dict[SearchMode, Callable[[RunConfig, Dict[str, Any]], Dict[str, Any]]] = {
            SearchMode.INDEPENDENCE: self._search_independence,
            SearchMode.IP_INDEPENDENCE: self._search_ip_independence,
            SearchMode.ENTROPY_SEQUENCE: self._search_entropy_sequence,
            SearchMode.CORRELATION: self._search_correlation,
            SearchMode.SE_PAIR: self._search_se_pair,
            SearchMode.DENSITY_WITNESS: self._search_density_witness,
            SearchMode.CEILING: self._search_ceiling,
            SearchMode.STRONG_MIXING: self._search_strong_mixing,
        }

    def _unit(self, cfg: Optional[RunConfig] = None) -> EntropyUnit:
        if self.unit:
            return self.unit
        return cfg.unit if cfg else EntropyUnit(config.DEFAULT_UNIT)

    @contextmanager
    def _budget(self, cfg: Optional[RunConfig] = None):
        """Enumeration budget of this run, restored afterwards."""
        budget = self.budget or (cfg.budget if cfg else None)
        previous = config.ENUMERATION_BUDGET
        if budget:
            config.ENUMERATION_BUDGET = budget
        try:
            yield
        finally:
            config.ENUMERATION_BUDGET = previous

    # ------------------------------------------------------------------
    # Profiles and densities
    # ------------------------------------------------------------------

    def entropy_measure(self, cfg: RunConfig) -> EntropyProfile:
        cfg.require("partition", "subset", "n_range")
        with self._budget(cfg):
            profile = seq_entropy_profile(cfg.system, cfg.partition, cfg.subset, cfg.folner, cfg.n_range, self.jobs)
        return profile.in_unit(self._unit(cfg))

    def entropy_top(self, cfg: RunConfig) -> EntropyProfile:
        cfg.require("cover", "subset", "n_range")
        with self._budget(cfg):
            profile = top_seq_entropy_profile(
                cfg.system, cfg.cover, cfg.subset, cfg.folner, cfg.n_range, cfg.solver, self.jobs
            )
        return profile.in_unit(self._unit(cfg))

    def density(self, cfg: RunConfig) -> DensityReport:
        cfg.require("subset", "n_range")
        return density(cfg.subset, cfg.folner, cfg.n_range[-1])

    # ------------------------------------------------------------------
    # Searches
    # ------------------------------------------------------------------

    def search(self, cfg: RunConfig) -> Dict[str, Any]:
        """Run the configured search and wrap its result in a report object."""
        cfg.require("search")
        mode = cfg.search.mode
        logger.info(f"Running search mode {mode.value}")
        with self._budget(cfg):
            try:
                result = self._search_handlers[mode](cfg, cfg.search.params)
            except SequenceEntropyError:
                raise
            except (TypeError, ValueError) as e:
                raise ConfigError(f"malformed {mode.value} search params: {e}") from e
        return {
            "mode": mode.value,
            "system": cfg.system.to_dict(),
            "unit": self._unit(cfg).value,
            "result": result,
        }

    def _pool(self, cfg: RunConfig, params: Dict[str, Any]) -> SubsetGenerator:
        if "pool" in params:
            return subset_from_dict(params["pool"], cfg.d)
        return cfg.subset or SubsetGenerator.full(cfg.d)

    def _sets(self, cfg: RunConfig, params: Dict[str, Any], name: str) -> List[Any]:
        return [cfg.open_set(item) for item in _param(params, name)]

    def _n_range(self, cfg: RunConfig, params: Dict[str, Any]) -> List[int]:
        if "n_range" in params:
            return list(params["n_range"])
        cfg.require("n_range")
        return cfg.n_range

    def _search_independence(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        W = self._sets(cfg, params, "sets")
        witness = greedy_independence(
            cfg.system, W, _param(params, "k", cast=int), self._pool(cfg, params), params.get("pool_size")
        )
        result = witness.to_dict()
        result["cover_profile"] = None
        if witness.length:
            try:
                profile = witness_cover_profile(cfg.system, witness, W)
                result["cover_profile"] = profile.in_unit(self._unit(cfg)).to_dict()
            except CapacityError as e:
                logger.warning(f"Cover profile along the witness skipped: {str(e).splitlines()[0]}")
        return result

    def _search_ip_independence(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        report = ip_restricted_independence(
            cfg.system,
            self._sets(cfg, params, "sets"),
            _param(params, "k", cast=int),
            _param(params, "generators"),
            params.get("levels"),
        )
        return report.to_dict()

    def _search_entropy_sequence(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        cfg.require("partition")
        sequence = greedy_entropy_sequence(
            cfg.system, cfg.partition, _param(params, "k", cast=int), self._pool(cfg, params),
            window=params.get("window"), pool_size=params.get("pool_size"), jobs=self.jobs,
        )
        unit = self._unit(cfg)
        converted = EntropySequence(
            S=sequence.S,
            gains=[unit.convert(g) for g in sequence.gains],
            window=sequence.window,
            partition_entropy=unit.convert(sequence.partition_entropy),
        )
        return converted.to_dict()

    def _search_correlation(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        A, B = cfg.open_set(_param(params, "A")), cfg.open_set(_param(params, "B"))
        rows = correlation_profile(cfg.system, A, B, self._n_range(cfg, params))
        return {"rows": [row.to_dict() for row in rows]}

    def _search_density_witness(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        A, B = cfg.open_set(_param(params, "A")), cfg.open_set(_param(params, "B"))
        witness = density_one_witness(
            cfg.system, A, B, _param(params, "eps", cast=float), _param(params, "n", cast=int)
        )
        return witness.to_dict()

    def _search_se_pair(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        cfg.require("cover")
        pool = subset_from_dict(params["pool"], cfg.d) if "pool" in params else None
        candidate = se_pair_localize(
            cfg.system, cfg.cover, _param(params, "depth", cast=int), pool=pool,
            evidence_length=params.get("evidence_length"), threshold=params.get("threshold"),
        )
        return candidate.to_dict()

    def _search_ceiling(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        cfg.require("subset")
        U1, U2, V1, V2 = (cfg.open_set(_param(params, name)) for name in ("U1", "U2", "V1", "V2"))
        rows = non_weak_mixing_ceiling(
            cfg.system, U1, U2, V1, V2, cfg.subset, cfg.folner, self._n_range(cfg, params), cfg.solver
        )
        return {"rows": [row.to_dict() for row in rows], "holds": all(r.holds for r in rows if r.disjoint)}

    def _search_strong_mixing(self, cfg: RunConfig, params: Dict[str, Any]) -> Dict[str, Any]:
        U, V = cfg.open_set(_param(params, "U")), cfg.open_set(_param(params, "V"))
        rows = strong_mixing_evidence(cfg.system, U, V, self._n_range(cfg, params))
        return {"rows": [row.to_dict() for row in rows]}

    # ------------------------------------------------------------------
    # Reproduction
    # ------------------------------------------------------------------

    def reproduce_example61(self) -> ReproductionReport:
        """
        Four profiles of the Z^2 action on the full 2-shift against their closed forms.

        Along the boxes only n of the n^2 elements move configurations, so
        both entropies are (log 2)/n; along S = {(0, k)} they are log 2.
        """
        unit = self._unit()
        sys = system_from_dict(EXAMPLE61_SYSTEM)
        alpha = SymbolicPartition.generating(sys)
        cover = origin_cylinder_cover(sys)
        F = FolnerSequence(2)
        ray = SubsetGenerator.axis_ray(2, axis=1)
        boxes = SubsetGenerator.full(2)

        def topological(S, n_max):
            return top_seq_entropy_profile(sys, cover, S, F, range(1, n_max + 1), SolverMode.EXACT, self.jobs)

        def measure(S, n_max):
            return seq_entropy_profile(sys, alpha, S, F, range(1, n_max + 1), self.jobs)

        quantities = [
            ("topological-boxes", topological, boxes, 4, lambda n: math.log(2) / n),
            ("topological-ray", topological, ray, 8, lambda n: math.log(2)),
            ("measure-boxes", measure, boxes, 4, lambda n: math.log(2) / n),
            ("measure-ray", measure, ray, 8, lambda n: math.log(2)),
        ]

        report = ReproductionReport(rows=[], unit=unit)
        with self._budget():
            for name, compute, S, n_max, expected in quantities:
                profile = compute(S, n_max)
                for row in profile.rows:
                    report.rows.append(ReproductionRow(
                        quantity=name, n=row.n, count=row.count,
                        value=unit.convert(row.normalized), expected=unit.convert(expected(row.n)),
                    ))
                if profile.truncated:
                    report.truncated = True
                    report.truncation_reason = f"{name}: {profile.truncation_reason}"
                    break
        logger.info(f"Reproduction: {len(report.rows)} rows, {len(report.failures)} deviating")
        return report
