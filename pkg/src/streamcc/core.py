"""Shared domain types: permutations, capped rank queues, clusterings, positive graphs.

Vertices are 0-based integers in [0, n). Ranks are 1-based: rank 1 is the
highest-ranked vertex. External file formats use 1-based vertex ids and are
converted at the I/O boundary.
"""

import heapq

import numpy as np


class InvalidInstanceError(ValueError):
    """A graph, permutation, or instance description is malformed."""


class ParameterError(ValueError):
    """A run parameter (e.g. the capacity k) is outside its valid range."""


class StreamFormatError(ValueError):
    """An edge stream contained an out-of-range id or an unparseable line."""


class OracleCapacityError(ValueError):
    """The exact oracle was asked for an instance above its hard size cap."""


# Vertex roles in a clustering.
PIVOT = "pivot"
MEMBER = "member"
SINGLETON = "singleton"

ROLES = (PIVOT, MEMBER, SINGLETON)


class Permutation:
    """A bijection from vertices onto ranks {1, ..., n}.

    ``order[t]`` is the vertex with rank t+1, so ``order[0]`` is the
    highest-ranked vertex. ``rank[v]`` is the 1-based rank of vertex v.
    """

    __slots__ = ("n", "order", "rank")

    def __init__(self, order):
        order = list(order)
        n = len(order)
        if n < 1:
            raise InvalidInstanceError("permutation needs at least one vertex")
        rank = [0] * n
        for t, v in enumerate(order):
            if not 0 <= v < n or rank[v] != 0:
                raise InvalidInstanceError("order is not a permutation of range(n)")
            rank[v] = t + 1
        self.n = n
        self.order = order
        self.rank = rank

    @classmethod
    def from_seed(cls, n, seed):
        """Deterministic uniformly random permutation of n vertices.

        Uses a Fisher-Yates shuffle driven by numpy's PCG64 generator, so the
        same (n, seed) pair yields a bit-identical permutation on every
        platform. This is what lets two independent runs share one ranking.
        """
        if n < 1:
            raise InvalidInstanceError(f"n must be >= 1, got {n}")
        rng = np.random.default_rng(seed)
        return cls(rng.permutation(n).tolist())

    def inverse(self, r):
        """Vertex holding rank r (1-based)."""
        return self.order[r - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.order == other.order

    def __repr__(self):
        return f"Permutation(order={self.order})"


class CappedRankQueue:
    """Holds at most ``capacity`` (vertex, rank) entries, keeping the best ranks.

    Insertion is O(log capacity). The kept set after any insertion sequence is
    exactly the ``capacity`` lowest-rank vertices ever inserted, independent of
    insertion order; inserting a vertex that is already present is a no-op.
    """

    __slots__ = ("capacity", "_heap", "_members")

    def __init__(self, capacity):
        if capacity < 1:
            raise ParameterError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._heap = []  # (-rank, vertex): max-heap on rank
        self._members = set()

    def insert(self, vertex, rank):
        """Insert a vertex; evict the worst-ranked entry if over capacity.

        Returns True if the queue grew by one entry, False otherwise (no-op
        or replacement). The size bound holds at every return point.
        """
        heap = self._heap
        members = self._members
        if vertex in members:
            return False
        if len(heap) < self.capacity:
            heapq.heappush(heap, (-rank, vertex))
            members.add(vertex)
            return True
        if -heap[0][0] > rank:
            _, evicted = heapq.heapreplace(heap, (-rank, vertex))
            members.discard(evicted)
            members.add(vertex)
        assert len(heap) <= self.capacity
        return False

    def __contains__(self, vertex):
        return vertex in self._members

    def __len__(self):
        return len(self._heap)

    def __iter__(self):
        """Yield (vertex, rank) pairs in unspecified order."""
        for neg_rank, vertex in self._heap:
            yield vertex, -neg_rank

    def items(self):
        return sorted(self, key=lambda e: e[1])

    def worst_rank(self):
        return -self._heap[0][0] if self._heap else None

    def __repr__(self):
        return f"CappedRankQueue(capacity={self.capacity}, entries={self.items()})"


class Clustering:
    """Assignment of every vertex to a cluster plus its role.

    Cluster ids are representative vertex ids: the pivot's id for pivot
    clusters, the vertex's own id for singleton clusters. Two clusterings are
    equal iff assignments and roles match exactly.
    """

    __slots__ = ("assignment", "role")

    def __init__(self, assignment, role):
        if len(assignment) != len(role):
            raise InvalidInstanceError("assignment and role must cover the same vertices")
        self.assignment = list(assignment)
        self.role = list(role)

    @property
    def n(self):
        return len(self.assignment)

    def clusters(self):
        """Map cluster id -> sorted list of member vertices."""
        out = {}
        for v, c in enumerate(self.assignment):
            out.setdefault(c, []).append(v)
        return out

    @property
    def num_clusters(self):
        return len(set(self.assignment))

    @property
    def num_singletons(self):
        return sum(1 for r in self.role if r == SINGLETON)

    def validate(self):
        """Check structural invariants; raises InvalidInstanceError on violation."""
        for v, r in enumerate(self.role):
            if r not in ROLES:
                raise InvalidInstanceError(f"vertex {v} has unknown role {r!r}")
        for cid, members in self.clusters().items():
            roles = [self.role[v] for v in members]
            if SINGLETON in roles:
                if len(members) != 1:
                    raise InvalidInstanceError(f"singleton cluster {cid} has size {len(members)}")
            else:
                if roles.count(PIVOT) != 1:
                    raise InvalidInstanceError(f"cluster {cid} has {roles.count(PIVOT)} pivots")
                pivot = members[roles.index(PIVOT)]
                if self.assignment[pivot] != cid:
                    raise InvalidInstanceError(f"cluster {cid} pivot id mismatch")
        return self

    def __eq__(self, other):
        return (
            isinstance(other, Clustering)
            and self.assignment == other.assignment
            and self.role == other.role
        )

    def __repr__(self):
        return f"Clustering(n={self.n}, clusters={self.num_clusters}, singletons={self.num_singletons})"


class PositiveGraph:
    """Full adjacency over positive edges; symmetric, no stored self-loops.

    Consumers that need the self-inclusive neighbourhood N(u) apply it
    themselves: N(u) = adjacency(u) | {u}.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n, edges=()):
        if n < 1:
            raise InvalidInstanceError(f"n must be >= 1, got {n}")
        self.n = n
        self.adj = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u, v):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidInstanceError(f"edge ({u}, {v}) out of range for n={self.n}")
        if u == v:
            return
        self.adj[u].add(v)
        self.adj[v].add(u)

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    @property
    def m(self):
        return sum(len(a) for a in self.adj) // 2

    def edges(self):
        """Positive edges as sorted (u, v) pairs with u < v."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def __eq__(self, other):
        return isinstance(other, PositiveGraph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"PositiveGraph(n={self.n}, m={self.m})"
