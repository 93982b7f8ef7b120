"""Single-pass semi-streaming clusterer.

Three phases: initialization (one capped queue per vertex, seeded with the
vertex itself), streaming (per-edge queue updates), and the final
pivot-selection sweep in rank order. Total queue storage never exceeds k*n
entries; each edge costs O(log k).
"""

import time
from dataclasses import dataclass, field

from .core import (
    CappedRankQueue,
    Clustering,
    InvalidInstanceError,
    MEMBER,
    ParameterError,
    Permutation,
    PIVOT,
    SINGLETON,
    StreamFormatError,
)

POSITIVE = "+"
NEGATIVE = "-"


@dataclass
class RunStats:
    """Instrumentation for one streaming run; never affects the clustering."""

    n: int = 0
    k: int = 0
    seed: int | None = None
    halved: bool = False
    edges_seen: int = 0
    positive_applied: int = 0
    ignored_negative: int = 0
    ignored_self_loops: int = 0
    label_conflicts: int = 0
    peak_entries: int = 0
    phase_times: dict = field(default_factory=dict)


class StreamState:
    """Mutable state of one streaming run: ranking plus per-vertex queues.

    Single-writer during ingestion; independent runs share nothing.
    """

    def __init__(self, n, k, pi, halved=False, track_conflicts=False):
        if k <= 1:
            # The (3 + 6/(k-1)) guarantee is vacuous at k = 1; fail loudly.
            raise ParameterError(f"k must be >= 2, got {k}")
        if n < 1:
            raise InvalidInstanceError(f"n must be >= 1, got {n}")
        if pi.n != n:
            raise InvalidInstanceError(f"permutation ranks {pi.n} vertices, instance has {n}")
        self.n = n
        self.k = k
        self.pi = pi
        self.halved = halved
        rank = pi.rank
        self.queues = []
        for u in range(n):
            q = CappedRankQueue(k)
            q.insert(u, rank[u])
            self.queues.append(q)
        self.total_entries = n
        self.finalized = False
        self.stats = RunStats(n=n, k=k, halved=halved, peak_entries=n)
        # Optional conflict tracking remembers labelled pairs; it costs extra
        # memory beyond the k*n queue budget, so it is off by default.
        self._seen_labels = {} if track_conflicts else None

    def ingest_edge(self, u, v, label=POSITIVE):
        """Apply one stream edge. Negative edges and self-loops are ignored."""
        stats = self.stats
        stats.edges_seen += 1
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise StreamFormatError(f"vertex id out of range in edge ({u}, {v}), n={n}")
        if self._seen_labels is not None and u != v:
            key = (u, v) if u < v else (v, u)
            prev = self._seen_labels.get(key)
            if prev is not None and prev != label:
                stats.label_conflicts += 1
            self._seen_labels[key] = POSITIVE if prev == POSITIVE else label
        if label == NEGATIVE:
            stats.ignored_negative += 1
            return
        if u == v:
            stats.ignored_self_loops += 1
            return
        stats.positive_applied += 1
        rank = self.pi.rank
        ru, rv = rank[u], rank[v]
        if self.halved:
            # Store only better-ranked neighbours; the clustering is unchanged
            # because a pivot is never ranked below the vertex it absorbs.
            if ru < rv:
                self.total_entries += self.queues[v].insert(u, ru)
            else:
                self.total_entries += self.queues[u].insert(v, rv)
        else:
            self.total_entries += self.queues[v].insert(u, ru)
            self.total_entries += self.queues[u].insert(v, rv)
        if self.total_entries > stats.peak_entries:
            stats.peak_entries = self.total_entries
        assert self.total_entries <= self.k * n

    def finalize(self):
        """Pivot selection and clustering sweep in increasing rank order."""
        if self.finalized:
            raise ParameterError("finalize may be called only once")
        self.finalized = True
        return pivot_sweep(self.queues, self.pi)


def pivot_sweep(queues, pi):
    """Clustering sweep over per-vertex queues, in increasing rank order.

    Each vertex joins the best-ranked queue entry that is itself or an
    already-declared pivot; with no such entry it becomes a singleton.
    """
    n = pi.n
    pivot = bytearray(n)
    assignment = [0] * n
    role = [None] * n
    for u in pi.order:
        best = -1
        best_rank = n + 1
        for neg_rank, w in queues[u]._heap:
            if (w == u or pivot[w]) and -neg_rank < best_rank:
                best_rank = -neg_rank
                best = w
        if best < 0:
            assignment[u] = u
            role[u] = SINGLETON
        elif best == u:
            pivot[u] = 1
            assignment[u] = u
            role[u] = PIVOT
        else:
            assignment[u] = best
            role[u] = MEMBER
    return Clustering(assignment, role)


def stream_init(n, k, pi, halved=False):
    """Fresh StreamState with every queue initialized to {self}."""
    return StreamState(n, k, pi, halved=halved)


def cluster_stream(edge_source, n, k, seed=None, pi=None, halved=False,
                   track_conflicts=False):
    """Run the full pipeline over a single-pass edge source.

    ``edge_source`` yields (u, v) or (u, v, label) triples and is consumed
    exactly once. Either ``seed`` or an explicit ``pi`` selects the ranking.
    Returns (Clustering, RunStats).
    """
    if pi is None:
        if seed is None:
            raise ParameterError("either seed or pi is required")
        pi = Permutation.from_seed(n, seed)
    t0 = time.perf_counter()
    state = StreamState(n, k, pi, halved=halved, track_conflicts=track_conflicts)
    state.stats.seed = seed
    t1 = time.perf_counter()
    index = 0
    try:
        for edge in edge_source:
            index += 1
            if len(edge) == 2:
                state.ingest_edge(edge[0], edge[1])
            else:
                state.ingest_edge(edge[0], edge[1], edge[2])
    except StreamFormatError as exc:
        raise StreamFormatError(f"stream position {index}: {exc}") from exc
    t2 = time.perf_counter()
    clustering = state.finalize()
    t3 = time.perf_counter()
    state.stats.phase_times = {
        "init": t1 - t0,
        "stream": t2 - t1,
        "finalize": t3 - t2,
    }
    return clustering, state.stats
