"""Disagreement-cost evaluation and Monte Carlo cost estimation.

The objective is the complete-graph disagreement count: cut positive edges
plus co-clustered negative pairs. Negative edges are implicit, so evaluation
needs only the positive edge set and cluster sizes.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import InvalidInstanceError, ParameterError, Permutation, SINGLETON
from .reference import _adjacency_lists, _reveal, classic_pivot

CAPPED = "capped"
CLASSIC = "classic"

EXACT_ENUM_CAP = 8  # n! enumeration cap for exact expectations


@dataclass
class CostReport:
    cut_positive: int
    joined_negative: int

    @property
    def total(self):
        return self.cut_positive + self.joined_negative

    def as_dict(self):
        return {
            "cut_positive": self.cut_positive,
            "joined_negative": self.joined_negative,
            "total": self.total,
        }


def disagreement_cost(clustering, g):
    """Exact disagreement count of a clustering against a positive graph.

    O(m + n): per cluster, joined negatives are size*(size-1)/2 minus the
    positive edges inside; cut positives are the remaining positive edges.
    """
    if clustering.n != g.n:
        raise InvalidInstanceError(
            f"clustering covers {clustering.n} vertices, graph has {g.n}"
        )
    assignment = clustering.assignment
    sizes = {}
    for c in assignment:
        sizes[c] = sizes.get(c, 0) + 1
    internal = 0
    for u in range(g.n):
        cu = assignment[u]
        for v in g.adj[u]:
            if u < v and cu == assignment[v]:
                internal += 1
    cut_positive = g.m - internal
    joined_negative = sum(s * (s - 1) // 2 for s in sizes.values()) - internal
    return CostReport(cut_positive, joined_negative)


@dataclass
class EstimateReport:
    mean: float
    std_error: float
    singleton_rate: float
    trials: int


def _run_cost(g, algorithm, k, pi, adj=None, deg=None):
    if algorithm == CLASSIC:
        clustering = classic_pivot(g, pi)
        return disagreement_cost(clustering, g).total, False
    if adj is None:
        adj = _adjacency_lists(g)
        deg = [len(a) for a in adj]
    _, role, p_plus, p_minus, S, _, _ = _reveal(adj, deg, pi.order, pi.rank, k)
    return p_plus + p_minus + sum(S), 2 in role


def estimate_expected_cost(g, algorithm, trials, seed, k=None):
    """Sample mean disagreement cost of an algorithm under random rankings.

    ``algorithm`` is "capped" (requires k) or "classic". Trial i uses the
    ranking derived from seed + i, so a parallel split over trials would
    reproduce the same statistics.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    if algorithm == CAPPED:
        if k is None or k < 2:
            raise ParameterError("capped algorithm requires k >= 2")
    elif algorithm != CLASSIC:
        raise ParameterError(f"unknown algorithm {algorithm!r}")
    adj = _adjacency_lists(g)
    deg = [len(a) for a in adj]
    total = 0
    total_sq = 0
    with_singleton = 0
    for i in range(trials):
        pi = Permutation.from_seed(g.n, seed + i)
        cost, has_singleton = _run_cost(g, algorithm, k, pi, adj, deg)
        total += cost
        total_sq += cost * cost
        with_singleton += has_singleton
    mean = total / trials
    var = max(total_sq / trials - mean * mean, 0.0)
    return EstimateReport(mean, math.sqrt(var / trials), with_singleton / trials, trials)


def exact_expected_cost(g, algorithm, k=None):
    """Exact expected cost by full enumeration of all n! rankings.

    Returns a Fraction. Capped at small n; intended as an oracle for the
    Monte Carlo estimators.
    """
    n = g.n
    if n > EXACT_ENUM_CAP:
        raise ParameterError(f"exact enumeration capped at n={EXACT_ENUM_CAP}, got {n}")
    total = 0
    count = 0
    for order in itertools.permutations(range(n)):
        pi = Permutation(order)
        cost, _ = _run_cost(g, algorithm, k, pi)
        total += cost
        count += 1
    return Fraction(total, count)


@dataclass
class RatioReport:
    mean_cost: float
    std_error: float
    opt: int
    exact: bool  # OPT = 0 and the algorithm also achieves 0 on every trial
    ratio: float | None
    ratio_3se: float | None  # upper end of the 3-sigma confidence interval


def approximation_ratio(g, k, trials, seed):
    """Monte Carlo mean cost of the capped algorithm divided by OPT.

    OPT comes from the brute-force oracle, so the graph must be within its
    size cap. OPT = 0 instances are flagged exact instead of producing a
    ratio; the mean cost is asserted to be zero in that case.
    """
    from .reference import brute_force_opt

    _, opt = brute_force_opt(g)
    report = estimate_expected_cost(g, CAPPED, trials, seed, k=k)
    if opt == 0:
        if report.mean != 0:
            raise InvalidInstanceError(
                f"OPT=0 but the algorithm paid {report.mean} on average"
            )
        return RatioReport(report.mean, report.std_error, 0, True, None, None)
    return RatioReport(
        report.mean,
        report.std_error,
        opt,
        False,
        report.mean / opt,
        (report.mean + 3 * report.std_error) / opt,
    )


@dataclass
class DiagnosticsSummary:
    """Aggregated sequential-reveal diagnostics over many random rankings."""

    trials: int
    cost_mean: float
    cost_se: float
    pivot_cost_mean: float  # P+ + P-
    pivot_cost_se: float
    s_mean: np.ndarray  # per-vertex mean of S(v)
    x_mean: np.ndarray  # per-vertex mean of X_final(v)
    # mean and SE of the margin S(v) - X_final(v)/k, used for the singleton bound
    margin_mean: np.ndarray
    margin_se: np.ndarray
    singleton_rate: float
    identity_violations: int


def monte_carlo_diagnostics(g, k, trials, seed, check_identity=True):
    """One Monte Carlo sweep collecting every diagnostic at once.

    Uses a single PCG64 stream (deterministic per seed) to draw all trial
    rankings in a batch. When ``check_identity`` is set, the cost identity
    (total cost = P+ + P- + sum S) is verified against an independent direct
    evaluation on every run.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    n = g.n
    adj = _adjacency_lists(g)
    deg = [len(a) for a in adj]
    m = g.m
    edges = g.edges()
    rng = np.random.default_rng(seed)
    perms = rng.permuted(np.tile(np.arange(n), (trials, 1)), axis=1).tolist()

    cost_sum = cost_sq = 0
    pivot_sum = pivot_sq = 0
    s_sum = np.zeros(n)
    x_sum = np.zeros(n)
    margin_sum = np.zeros(n)
    margin_sq = np.zeros(n)
    singleton_runs = 0
    violations = 0
    rank = [0] * n
    inv_k = 1.0 / k
    for order in perms:
        for t, v in enumerate(order):
            rank[v] = t + 1
        assignment, role, p_plus, p_minus, S, X, _ = _reveal(adj, deg, order, rank, k)
        pivot_cost = p_plus + p_minus
        s_total = sum(S)
        cost = pivot_cost + s_total
        if check_identity:
            internal = 0
            for u, v in edges:
                if assignment[u] == assignment[v]:
                    internal += 1
            sizes = {}
            for c in assignment:
                sizes[c] = sizes.get(c, 0) + 1
            direct = (m - internal) + sum(s * (s - 1) // 2 for s in sizes.values()) - internal
            if direct != cost:
                violations += 1
        cost_sum += cost
        cost_sq += cost * cost
        pivot_sum += pivot_cost
        pivot_sq += pivot_cost * pivot_cost
        s_arr = np.asarray(S, dtype=np.float64)
        x_arr = np.asarray(X, dtype=np.float64)
        margin = s_arr - inv_k * x_arr
        s_sum += s_arr
        x_sum += x_arr
        margin_sum += margin
        margin_sq += margin * margin
        if s_total or 2 in role:
            singleton_runs += 1

    def _se(total, total_sq):
        mean = total / trials
        var = max(total_sq / trials - mean * mean, 0.0)
        return mean, math.sqrt(var / trials)

    cost_mean, cost_se = _se(cost_sum, cost_sq)
    pivot_mean, pivot_se = _se(pivot_sum, pivot_sq)
    margin_mean = margin_sum / trials
    margin_var = np.maximum(margin_sq / trials - margin_mean**2, 0.0)
    return DiagnosticsSummary(
        trials=trials,
        cost_mean=cost_mean,
        cost_se=cost_se,
        pivot_cost_mean=pivot_mean,
        pivot_cost_se=pivot_se,
        s_mean=s_sum / trials,
        x_mean=x_sum / trials,
        margin_mean=margin_mean,
        margin_se=np.sqrt(margin_var / trials),
        singleton_rate=singleton_runs / trials,
        identity_violations=violations,
    )
