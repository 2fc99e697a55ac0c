"""
Test suite for seqentropy.

Test Structure:
--------------
- test_group.py        : Lattice, Følner boxes, subset generators, densities, IP segments
- test_systems.py      : Symbolic shifts, circle arcs, rotations, config registry
- test_entropy.py      : Partitions, joins, Shannon/conditional entropy, measure profiles
- test_covers.py       : Cover atoms, exact/greedy subcovers, topological profiles, mixing checks
- test_search.py       : Independence, entropy sequences, correlations, SE pair localisation
- test_run_config.py   : Run config parsing and validation
- test_orchestrator.py : Command dispatch and the example61 reproduction
- test_exports.py      : CSV / JSON exporters
- test_cli.py          : CLI exit codes and output
- fixtures/            : Shared systems, sets and config builders

Running Tests:
-------------
    python -m pytest tests/ -v
    python -m pytest tests/test_entropy.py -v
"""

from tests.fixtures import (
    arcs,
    bernoulli,
    cyl,
    example61_system,
    golden_rotation,
    rational_rotation,
)

__all__ = [
    'arcs',
    'bernoulli',
    'cyl',
    'example61_system',
    'golden_rotation',
    'rational_rotation',
]
