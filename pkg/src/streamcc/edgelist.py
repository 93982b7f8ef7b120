"""Edge-list and clustering file formats.

Edge files: optional header line "n <count>", then one edge per line as
"u v", "u v +", or "u v -" with 1-based vertex ids. Lines starting with '#'
are comments. Clustering files are TSV: vertex, cluster id, role (1-based
ids in both columns).
"""

import hashlib

from .core import Clustering, InvalidInstanceError, PositiveGraph, ROLES, StreamFormatError
from .streaming import NEGATIVE, POSITIVE


def parse_edge_line(line, lineno):
    """Parse one edge line into a 0-based (u, v, label) triple, or None for
    blanks, comments, and the header."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    parts = stripped.split()
    if parts[0] == "n":
        return None
    if len(parts) not in (2, 3):
        raise StreamFormatError(f"line {lineno}: expected 'u v [+|-]', got {stripped!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise StreamFormatError(f"line {lineno}: non-integer vertex id in {stripped!r}") from None
    if u < 1 or v < 1:
        raise StreamFormatError(f"line {lineno}: vertex ids are 1-based, got {stripped!r}")
    label = POSITIVE
    if len(parts) == 3:
        if parts[2] not in (POSITIVE, NEGATIVE):
            raise StreamFormatError(f"line {lineno}: bad label {parts[2]!r}")
        label = parts[2]
    return u - 1, v - 1, label


def parse_header(line):
    """Return n if the line is a 'n <count>' header, else None."""
    parts = line.strip().split()
    if len(parts) == 2 and parts[0] == "n":
        try:
            n = int(parts[1])
        except ValueError:
            raise StreamFormatError(f"bad header {line.strip()!r}") from None
        if n < 1:
            raise StreamFormatError(f"header n must be >= 1, got {n}")
        return n
    return None


def iter_edges(fobj, start_lineno=1):
    """Lazily yield (u, v, label) triples from an open edge file; single pass."""
    for lineno, line in enumerate(fobj, start=start_lineno):
        edge = parse_edge_line(line, lineno)
        if edge is not None:
            yield edge


def scan_header_and_n(path):
    """First pass over an edge FILE: header n if present, else max id seen.

    Only valid for seekable files; true streams must carry a header or an
    explicit n.
    """
    declared = None
    max_id = 0
    saw_edges = False
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            header = parse_header(line)
            if header is not None:
                declared = header
                continue
            u, v, _ = parse_edge_line(line, lineno)
            max_id = max(max_id, u + 1, v + 1)
            saw_edges = True
    if declared is not None:
        return declared
    if not saw_edges:
        raise StreamFormatError(f"{path}: no header and no edges, cannot infer n")
    return max_id


def read_positive_graph(path, n=None):
    """Materialize the positive graph of an edge file (oracle/eval use only)."""
    if n is None:
        n = scan_header_and_n(path)
    g = PositiveGraph(n)
    with open(path) as f:
        for u, v, label in iter_edges(f):
            if u >= n or v >= n:
                raise StreamFormatError(f"{path}: vertex id {max(u, v) + 1} exceeds n={n}")
            if label == POSITIVE and u != v:
                g.add_edge(u, v)
    return g


def write_edge_list(fobj, n, stream):
    """Write a header plus 1-based edge lines; negatives keep their label."""
    fobj.write(f"n {n}\n")
    count = 0
    for edge in stream:
        u, v, label = edge if len(edge) == 3 else (*edge, POSITIVE)
        if label == NEGATIVE:
            fobj.write(f"{u + 1} {v + 1} -\n")
        else:
            fobj.write(f"{u + 1} {v + 1}\n")
        count += 1
    return count


def write_clustering_tsv(fobj, clustering):
    """One 'vertex<TAB>cluster<TAB>role' line per vertex, 1-based ids."""
    for v in range(clustering.n):
        fobj.write(f"{v + 1}\t{clustering.assignment[v] + 1}\t{clustering.role[v]}\n")


def read_clustering_tsv(path):
    assignment = {}
    role = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split("\t")
            if len(parts) != 3:
                raise StreamFormatError(f"{path}:{lineno}: expected 3 TSV fields")
            try:
                v, c = int(parts[0]) - 1, int(parts[1]) - 1
            except ValueError:
                raise StreamFormatError(f"{path}:{lineno}: non-integer id") from None
            if parts[2] not in ROLES:
                raise StreamFormatError(f"{path}:{lineno}: unknown role {parts[2]!r}")
            if v in assignment:
                raise StreamFormatError(f"{path}:{lineno}: duplicate vertex {v + 1}")
            assignment[v] = c
            role[v] = parts[2]
    n = len(assignment)
    if n == 0 or set(assignment) != set(range(n)):
        raise InvalidInstanceError(f"{path}: vertices do not cover 1..{n}")
    return Clustering([assignment[v] for v in range(n)], [role[v] for v in range(n)])


def edge_digest(g):
    """Short stable digest of a graph's canonical edge list, for repro lines."""
    h = hashlib.sha256()
    h.update(f"n={g.n};".encode())
    for u, v in g.edges():
        h.update(f"{u},{v};".encode())
    return h.hexdigest()[:16]
