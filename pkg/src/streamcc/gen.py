"""Deterministic synthetic instances and edge streams for tests and benchmarks."""

import itertools
from dataclasses import dataclass

import numpy as np

from .core import InvalidInstanceError, PositiveGraph
from .streaming import NEGATIVE, POSITIVE

PLANTED = "planted"
RANDOM = "random"
CLIQUE = "clique"
PATH = "path"
STAR = "star"
EMPTY = "empty"

KINDS = (PLANTED, RANDOM, CLIQUE, PATH, STAR, EMPTY)

SORTED = "sorted"
REVERSED = "reversed"
SHUFFLED = "shuffled"
INTERLEAVED = "interleaved"

ORDERS = (SORTED, REVERSED, SHUFFLED, INTERLEAVED)


@dataclass
class InstanceSpec:
    """Recipe for one synthetic instance; generation is pure in (spec, seed)."""

    kind: str
    n: int = 0
    sizes: tuple = ()
    flip_prob: float = 0.0
    edge_prob: float = 0.0
    seed: int = 0

    def validate(self):
        if self.kind not in KINDS:
            raise InvalidInstanceError(f"unknown instance kind {self.kind!r}")
        if self.kind == PLANTED:
            if not self.sizes or any(s < 1 for s in self.sizes):
                raise InvalidInstanceError("planted partition needs cluster sizes >= 1")
            if not 0.0 <= self.flip_prob <= 1.0:
                raise InvalidInstanceError(f"flip_prob must be in [0,1], got {self.flip_prob}")
        else:
            if self.n < 1:
                raise InvalidInstanceError(f"n must be >= 1, got {self.n}")
            if self.kind == RANDOM and not 0.0 <= self.edge_prob <= 1.0:
                raise InvalidInstanceError(f"edge_prob must be in [0,1], got {self.edge_prob}")
        return self


def planted_partition(sizes, flip_prob, seed):
    """Disjoint positive cliques with every pair's label flipped w.p. flip_prob.

    Intra-cluster flips turn positive pairs negative and inter-cluster flips
    turn negative pairs positive, so the planted structure survives with
    known noise.
    """
    n = sum(sizes)
    membership = np.repeat(np.arange(len(sizes)), sizes)
    pairs = list(itertools.combinations(range(n), 2))
    same = np.array([membership[u] == membership[v] for u, v in pairs])
    flips = np.random.default_rng(seed).random(len(pairs)) < flip_prob
    positive = same ^ flips
    return PositiveGraph(n, (p for p, keep in zip(pairs, positive) if keep))


def random_positive(n, edge_prob, seed):
    """Each pair positive independently with probability edge_prob."""
    pairs = list(itertools.combinations(range(n), 2))
    keep = np.random.default_rng(seed).random(len(pairs)) < edge_prob
    return PositiveGraph(n, (p for p, k in zip(pairs, keep) if k))


def generate(spec):
    """Build the PositiveGraph described by an InstanceSpec."""
    spec.validate()
    if spec.kind == PLANTED:
        return planted_partition(spec.sizes, spec.flip_prob, spec.seed)
    if spec.kind == RANDOM:
        return random_positive(spec.n, spec.edge_prob, spec.seed)
    n = spec.n
    if spec.kind == CLIQUE:
        return PositiveGraph(n, itertools.combinations(range(n), 2))
    if spec.kind == PATH:
        return PositiveGraph(n, ((i, i + 1) for i in range(n - 1)))
    if spec.kind == STAR:
        return PositiveGraph(n, ((0, i) for i in range(1, n)))
    return PositiveGraph(n)  # EMPTY


def emit_stream(g, order=SORTED, seed=0, include_negatives=False):
    """Positive edges of g as a labeled stream, each edge exactly once.

    Orders: sorted (canonical u < v, lexicographic), reversed, shuffled
    (deterministic per seed), interleaved (alternating the lexicographically
    first and last remaining edges, which stresses queue eviction).
    ``include_negatives`` appends every non-edge pair with a negative label,
    exercising the ignore path.
    """
    edges = g.edges()
    if order == SORTED:
        ordered = edges
    elif order == REVERSED:
        ordered = edges[::-1]
    elif order == SHUFFLED:
        ordered = list(edges)
        np.random.default_rng(seed).shuffle(ordered)
        ordered = [tuple(e) for e in ordered]
    elif order == INTERLEAVED:
        ordered = []
        lo, hi = 0, len(edges) - 1
        while lo <= hi:
            ordered.append(edges[lo])
            if lo != hi:
                ordered.append(edges[hi])
            lo += 1
            hi -= 1
    else:
        raise InvalidInstanceError(f"unknown stream order {order!r}")
    stream = [(u, v, POSITIVE) for u, v in ordered]
    if include_negatives:
        edge_set = set(edges)
        stream += [
            (u, v, NEGATIVE)
            for u, v in itertools.combinations(range(g.n), 2)
            if (u, v) not in edge_set
        ]
    return stream
