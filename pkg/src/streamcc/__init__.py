"""Semi-streaming correlation clustering with capped rank queues.

A single-pass clusterer that keeps only the k best-ranked positive
neighbours per vertex, plus exact and statistical oracles for verifying its
guarantees at desk scale.
"""

from .core import (
    CappedRankQueue,
    Clustering,
    InvalidInstanceError,
    MEMBER,
    OracleCapacityError,
    ParameterError,
    Permutation,
    PIVOT,
    PositiveGraph,
    SINGLETON,
    StreamFormatError,
)
from .cost import (
    CostReport,
    approximation_ratio,
    disagreement_cost,
    estimate_expected_cost,
    exact_expected_cost,
    monte_carlo_diagnostics,
)
from .gen import InstanceSpec, emit_stream, generate
from .reference import (
    Diagnostics,
    brute_force_opt,
    classic_pivot,
    reveal_pivot,
    submartingale_probe,
)
from .streaming import NEGATIVE, POSITIVE, RunStats, StreamState, cluster_stream, stream_init

__all__ = [
    "CappedRankQueue",
    "Clustering",
    "CostReport",
    "Diagnostics",
    "InstanceSpec",
    "InvalidInstanceError",
    "MEMBER",
    "NEGATIVE",
    "OracleCapacityError",
    "POSITIVE",
    "PIVOT",
    "ParameterError",
    "Permutation",
    "PositiveGraph",
    "RunStats",
    "SINGLETON",
    "StreamFormatError",
    "StreamState",
    "approximation_ratio",
    "brute_force_opt",
    "classic_pivot",
    "cluster_stream",
    "disagreement_cost",
    "emit_stream",
    "estimate_expected_cost",
    "exact_expected_cost",
    "generate",
    "monte_carlo_diagnostics",
    "reveal_pivot",
    "stream_init",
    "submartingale_probe",
]

__version__ = "0.1.0"
