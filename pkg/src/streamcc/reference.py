"""Reference oracles: sequential-reveal clusterer with counters and
diagnostics, the classic Pivot algorithm, a brute-force optimal clusterer,
and a Monte Carlo probe for the potential-function submartingale.

These operate on a fully materialized PositiveGraph and exist to test the
streaming path; they are pure functions of their inputs.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    Clustering,
    MEMBER,
    OracleCapacityError,
    ParameterError,
    PIVOT,
    SINGLETON,
)

BRUTE_FORCE_CAP = 12  # Bell(12) ~ 4.2M partitions

# Compact role codes used by the hot loop; converted to strings at the edge.
_R_PIVOT, _R_MEMBER, _R_SINGLETON = 0, 1, 2
_ROLE_STR = (PIVOT, MEMBER, SINGLETON)


@dataclass
class Diagnostics:
    """Per-run trace of the sequential-reveal clusterer.

    ``p_plus``/``p_minus`` count positive/negative disagreements settled at
    pivot steps. ``S[v]`` counts positive edges cut at the moment v entered a
    singleton cluster. ``X_final[v]`` is the cut-incident-edge tally at the
    end of the run; for singletons it is frozen at creation and includes the
    self-neighbour convention (a vertex counts as its own neighbour), so
    X_final[v] + S[v] equals the self-inclusive positive degree.
    ``phi_trace`` (opt-in) holds the potential value per vertex after each
    step: phi_trace[t][v] for t = 0..n.
    """

    p_plus: int
    p_minus: int
    S: list
    X_final: list
    phi_trace: list | None = None

    @property
    def pivot_cost(self):
        return self.p_plus + self.p_minus

    @property
    def total_cost(self):
        return self.p_plus + self.p_minus + sum(self.S)


def _adjacency_lists(g):
    return [tuple(a) for a in g.adj]


def _reveal(adj, deg, order, rank, k, want_phi=False):
    """Core sequential-reveal loop shared by the oracle and the Monte Carlo
    harnesses.

    Processes vertices in rank order. An unclustered vertex pivots and
    absorbs its unclustered neighbours; a clustered one bumps the counter of
    every unclustered neighbour, and any counter hitting k creates a
    singleton. Returns (assignment, role_codes, p_plus, p_minus, S, X, phi)
    where phi is None unless requested.
    """
    n = len(order)
    unclustered = bytearray([1]) * n
    K = [0] * n
    x = [0] * n  # cut positive edges incident on v, while v is unclustered
    S = [0] * n
    X = [0] * n
    assignment = [0] * n
    role = bytearray(n)
    p_plus = 0
    p_minus = 0
    phi = None
    frozen_phi = None
    if want_phi:
        frozen_phi = [0] * n  # value once v is clustered; 0 is also phi_1
        phi = [[0] * n]
    in_cluster = bytearray(n)
    for w in order:
        if unclustered[w]:
            members = [v for v in adj[w] if unclustered[v]]
            members.append(w)
            for v in members:
                unclustered[v] = 0
                in_cluster[v] = 1
            internal_twice = 0
            for v in members:
                internal = 0
                cut = 0
                for u in adj[v]:
                    if in_cluster[u]:
                        internal += 1
                    elif unclustered[u]:
                        cut += 1
                        x[u] += 1
                internal_twice += internal
                p_plus += cut
                X[v] = deg[v] - internal
                assignment[v] = w
                role[v] = _R_MEMBER
            csize = len(members)
            p_minus += csize * (csize - 1) // 2 - internal_twice // 2
            role[w] = _R_PIVOT
            for v in members:
                in_cluster[v] = 0
            if want_phi:
                for v in members:
                    frozen_phi[v] = X[v] - K[v] * (deg[v] + 1 - X[v])
        else:
            newly = []
            for v in adj[w]:
                if unclustered[v]:
                    K[v] += 1
                    if K[v] == k:
                        newly.append(v)
            if newly:
                if len(newly) > 1:
                    newly.sort(key=rank.__getitem__)
                for v in newly:
                    unclustered[v] = 0
                    s = 0
                    for u in adj[v]:
                        if unclustered[u]:
                            s += 1
                            x[u] += 1
                    S[v] = s
                    # Self-neighbour convention: v joining its own singleton
                    # cluster freezes X with the self term counted.
                    X[v] = x[v] + 1
                    assignment[v] = v
                    role[v] = _R_SINGLETON
                    if want_phi:
                        frozen_phi[v] = X[v] - k * (deg[v] + 1 - X[v])
        if want_phi:
            row = [0] * n
            for v in range(n):
                if unclustered[v]:
                    row[v] = -K[v] * (deg[v] + 1 - x[v])
                else:
                    row[v] = frozen_phi[v]
            phi.append(row)
    return assignment, role, p_plus, p_minus, S, X, phi


def reveal_pivot(g, pi, k, trace_phi=False):
    """Sequential-reveal oracle: same clustering as the streaming algorithm
    under a shared ranking, plus full Diagnostics.

    Vertices are revealed in the order pi; step t handles pi.inverse(t).
    """
    if k <= 1:
        raise ParameterError(f"k must be >= 2, got {k}")
    if pi.n != g.n:
        raise ParameterError(f"permutation ranks {pi.n} vertices, graph has {g.n}")
    adj = _adjacency_lists(g)
    deg = [len(a) for a in adj]
    assignment, role, p_plus, p_minus, S, X, phi = _reveal(
        adj, deg, pi.order, pi.rank, k, want_phi=trace_phi
    )
    clustering = Clustering(assignment, [_ROLE_STR[r] for r in role])
    return clustering, Diagnostics(p_plus, p_minus, S, X, phi)


def classic_pivot(g, pi):
    """Classic Pivot: lowest-rank unclustered vertex absorbs all its
    unclustered positive neighbours. Never produces singleton roles."""
    if pi.n != g.n:
        raise ParameterError(f"permutation ranks {pi.n} vertices, graph has {g.n}")
    n = g.n
    adj = g.adj
    unclustered = bytearray([1]) * n
    assignment = [0] * n
    role = [MEMBER] * n
    for w in pi.order:
        if unclustered[w]:
            unclustered[w] = 0
            assignment[w] = w
            role[w] = PIVOT
            for v in adj[w]:
                if unclustered[v]:
                    unclustered[v] = 0
                    assignment[v] = w
    return Clustering(assignment, role)


def _partition_cost(labels, adj_matrix, n):
    cost = 0
    for i in range(n):
        row = adj_matrix[i]
        li = labels[i]
        for j in range(i + 1, n):
            if (li == labels[j]) != row[j]:
                cost += 1
    return cost


def brute_force_opt(g):
    """Optimal clustering by exhaustive set-partition enumeration.

    Partitions are visited in canonical restricted-growth-string order and
    ties break to the first minimum found. Roles are synthesized (lowest id
    in each cluster is marked pivot) purely to satisfy the Clustering shape.
    Hard-capped at n = 12.
    """
    n = g.n
    if n > BRUTE_FORCE_CAP:
        raise OracleCapacityError(f"brute force capped at n={BRUTE_FORCE_CAP}, got {n}")
    if n == 1:
        return Clustering([0], [PIVOT]), 0
    adj_matrix = [[v in g.adj[u] for v in range(n)] for u in range(n)]
    best_cost = None
    best = None
    labels = [0] * n
    while True:
        cost = _partition_cost(labels, adj_matrix, n)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best = labels.copy()
        # advance to the next restricted growth string
        i = n - 1
        while i > 0:
            prefix_max = max(labels[:i])
            if labels[i] <= prefix_max:
                labels[i] += 1
                for j in range(i + 1, n):
                    labels[j] = 0
                break
            i -= 1
        else:
            break
    assignment = [0] * n
    role = [MEMBER] * n
    rep = {}
    for v, lab in enumerate(best):
        if lab not in rep:
            rep[lab] = v
            role[v] = PIVOT
        assignment[v] = rep[lab]
    return Clustering(assignment, role), best_cost


def phi_increment_stats(g, k, trials, seed):
    """Monte Carlo estimate of per-step potential increments for every vertex.

    Runs the sequential-reveal clusterer over ``trials`` independent random
    rankings and returns (means, std_errors), both arrays of shape (n, n):
    entry [t-1][v] estimates the expected increment phi_{t+1}(v) - phi_t(v).
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    n = g.n
    adj = _adjacency_lists(g)
    deg = [len(a) for a in adj]
    sums = np.zeros((n, n))
    sumsq = np.zeros((n, n))
    rng = np.random.default_rng(seed)
    base = np.tile(np.arange(n), (trials, 1))
    perms = rng.permuted(base, axis=1).tolist()
    rank = [0] * n
    for order in perms:
        for t, v in enumerate(order):
            rank[v] = t + 1
        _, _, _, _, _, _, phi = _reveal(adj, deg, order, rank, k, want_phi=True)
        inc = np.diff(np.asarray(phi, dtype=np.int64), axis=0)
        sums += inc
        sumsq += inc * inc
    means = sums / trials
    var = np.maximum(sumsq / trials - means * means, 0.0)
    ses = np.sqrt(var / trials)
    return means, ses


def submartingale_probe(g, k, v, trials, seed):
    """Per-step mean potential increments for one vertex, with standard errors.

    The potential is a submartingale, so every mean increment should be
    nonnegative up to Monte Carlo noise.
    """
    means, ses = phi_increment_stats(g, k, trials, seed)
    return means[:, v], ses[:, v]
