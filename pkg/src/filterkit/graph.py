"""Contact networks: loading, validation, and adjacency queries.

Networks are undirected graphs stored as adjacency lists in CSR layout
(``indptr``/``indices``), which supports graphs of a million nodes and more
without adjacency matrices.  Node ids from input files are remapped to a
dense ``[0, L)`` range; the mapping is kept for traceability.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "ContactNetwork",
    "DynamicNetwork",
    "Partition",
    "EdgeListError",
    "load_edge_list",
    "load_manifest",
    "build_network",
    "random_network",
    "infectious_neighbor_count",
    "snapshot_at",
    "singleton_partition",
    "single_cluster_partition",
    "validate_partition",
]


class EdgeListError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""


@dataclass(frozen=True)
class ContactNetwork:
    """An undirected contact network in CSR adjacency layout.

    ``indices[indptr[k]:indptr[k+1]]`` are the neighbours of node ``k``.
    ``node_ids`` maps the dense index back to the original id.
    ``subpop_sizes`` holds the per-node subpopulation size M_k when the
    network is a subpopulation contact network.
    """

    n_nodes: int
    indptr: np.ndarray
    indices: np.ndarray
    node_ids: np.ndarray
    subpop_sizes: Optional[np.ndarray] = None
    dropped_self_loops: int = 0

    @property
    def n_edges(self) -> int:
        return self.indices.shape[0] // 2

    def neighbors(self, k: int) -> np.ndarray:
        if not 0 <= k < self.n_nodes:
            raise ValueError(f"node {k} out of range [0, {self.n_nodes})")
        return self.indices[self.indptr[k] : self.indptr[k + 1]]

    def degree(self, k: int) -> int:
        return int(self.indptr[k + 1] - self.indptr[k])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edge_sources(self) -> np.ndarray:
        """Source node of each directed adjacency entry (aligned with ``indices``)."""
        return np.repeat(np.arange(self.n_nodes), self.degrees())

    def with_subpop_sizes(self, sizes) -> "ContactNetwork":
        sizes = np.asarray(sizes, dtype=np.int64)
        if sizes.shape != (self.n_nodes,):
            raise ValueError(f"expected {self.n_nodes} subpopulation sizes")
        if np.any(sizes < 1):
            raise ValueError("subpopulation sizes must be >= 1")
        return ContactNetwork(
            self.n_nodes, self.indptr, self.indices, self.node_ids, sizes, self.dropped_self_loops
        )


def build_network(
    edges: Iterable[tuple[int, int]],
    node_ids: Optional[Sequence[int]] = None,
) -> ContactNetwork:
    """Build a network from (possibly duplicated, possibly self-loop) edge pairs.

    ``node_ids`` optionally fixes the vertex set; otherwise the vertex set is
    the set of ids appearing in the edges.
    """
    pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    self_loops = 0
    if pairs.size:
        loop_mask = pairs[:, 0] == pairs[:, 1]
        self_loops = int(loop_mask.sum())
        pairs = pairs[~loop_mask]
    if node_ids is None:
        ids = np.unique(pairs) if pairs.size else np.empty(0, dtype=np.int64)
    else:
        ids = np.unique(np.asarray(list(node_ids), dtype=np.int64))
        if pairs.size and not np.all(np.isin(pairs, ids)):
            raise ValueError("edge endpoints outside the declared vertex set")
    n = ids.shape[0]
    if pairs.size:
        a = np.searchsorted(ids, pairs[:, 0])
        b = np.searchsorted(ids, pairs[:, 1])
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        und = np.unique(lo * np.int64(n) + hi)
        lo = und // n
        hi = und % n
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.argsort(src, kind="stable")
        src = src[order]
        dst = dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        indices = dst.astype(np.int64)
    else:
        indptr = np.zeros(n + 1, dtype=np.int64)
        indices = np.empty(0, dtype=np.int64)
    return ContactNetwork(n, indptr, indices, ids, None, self_loops)


def load_edge_list(source: IO[bytes] | bytes | str | Path, node_ids=None) -> ContactNetwork:
    """Load a whitespace-separated integer edge list ('#' starts a comment line).

    Duplicate and reversed edges collapse to one undirected edge; self-loops
    are dropped (counted on the returned network).  Malformed lines raise
    :class:`EdgeListError` with the line number.
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            return load_edge_list(fh, node_ids=node_ids)
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    edges = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise EdgeListError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            u = int(tokens[0])
            v = int(tokens[1])
        except ValueError as exc:
            raise EdgeListError(f"line {lineno}: non-integer token in {line!r}") from exc
        if u < 0 or v < 0:
            raise EdgeListError(f"line {lineno}: negative node id in {line!r}")
        edges.append((u, v))
    return build_network(edges, node_ids=node_ids)


def random_network(n_nodes: int, n_edges: int, rng: np.random.Generator) -> ContactNetwork:
    """Sparse synthetic benchmark network with ~n_edges distinct edges.

    Used for scale tests where a real dataset of a given size is not
    available; not an epidemic model component.
    """
    src = rng.integers(0, n_nodes, size=int(n_edges * 1.15) + 8, dtype=np.int64)
    dst = rng.integers(0, n_nodes, size=src.shape[0], dtype=np.int64)
    keep = src != dst
    pairs = np.stack([src[keep], dst[keep]], axis=1)[:n_edges]
    return build_network(map(tuple, pairs.tolist()), node_ids=range(n_nodes))


@dataclass(frozen=True)
class DynamicNetwork:
    """A time-ordered sequence of network snapshots over a fixed vertex set."""

    snapshots: tuple

    def __post_init__(self):
        if not self.snapshots:
            raise ValueError("a dynamic network needs at least one snapshot")
        sizes = {net.n_nodes for net in self.snapshots}
        if len(sizes) != 1:
            raise ValueError(f"snapshots disagree on the number of nodes: {sorted(sizes)}")

    @property
    def n_nodes(self) -> int:
        return self.snapshots[0].n_nodes

    @property
    def n_snapshots(self) -> int:
        return len(self.snapshots)


def snapshot_at(dn: DynamicNetwork, n: int) -> ContactNetwork:
    """Snapshot for time step n, clamping to the last snapshot beyond the end."""
    if n < 0:
        raise ValueError(f"time step must be nonnegative, got {n}")
    return dn.snapshots[min(n, len(dn.snapshots) - 1)]


def load_manifest(path: str | Path) -> DynamicNetwork:
    """Load a dynamic network from a manifest: one snapshot path per line.

    Relative paths are resolved against the manifest's directory.  All
    snapshots are remapped onto the union vertex set.
    """
    path = Path(path)
    files = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            p = Path(line)
            files.append(p if p.is_absolute() else path.parent / p)
    if not files:
        raise EdgeListError(f"manifest {path} lists no snapshots")
    raw = [load_edge_list(f) for f in files]
    union_ids = np.unique(np.concatenate([net.node_ids for net in raw]))
    snaps = tuple(load_edge_list(f, node_ids=union_ids) for f in files)
    return DynamicNetwork(snaps)


@dataclass(frozen=True)
class Partition:
    """Disjoint clusters of node indices covering {0, ..., L-1}."""

    clusters: tuple
    n_nodes: int

    def __post_init__(self):
        clusters = tuple(np.asarray(c, dtype=np.int64) for c in self.clusters)
        object.__setattr__(self, "clusters", clusters)

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    def cluster_of(self) -> np.ndarray:
        """Cluster index of each node."""
        out = np.full(self.n_nodes, -1, dtype=np.int64)
        for l, c in enumerate(self.clusters):
            out[c] = l
        return out


def singleton_partition(n_nodes: int) -> Partition:
    """The finest partition: one cluster per node (fully factored)."""
    return Partition(tuple(np.array([k]) for k in range(n_nodes)), n_nodes)


def single_cluster_partition(n_nodes: int) -> Partition:
    """The coarsest partition: one cluster containing every node."""
    return Partition((np.arange(n_nodes),), n_nodes)


def validate_partition(p: Partition, n_nodes: int) -> list[str]:
    """Check partition invariants; returns a list of violation messages."""
    problems = []
    seen = np.zeros(n_nodes, dtype=np.int64)
    for l, cluster in enumerate(p.clusters):
        if cluster.size == 0:
            problems.append(f"cluster {l} is empty")
        out = cluster[(cluster < 0) | (cluster >= n_nodes)]
        if out.size:
            problems.append(f"cluster {l} has out-of-range nodes {out.tolist()}")
        inr = cluster[(cluster >= 0) & (cluster < n_nodes)]
        np.add.at(seen, inr, 1)
    overlap = np.flatnonzero(seen > 1)
    if overlap.size:
        problems.append(f"nodes in more than one cluster: {overlap.tolist()}")
    gap = np.flatnonzero(seen == 0)
    if gap.size:
        problems.append(f"nodes in no cluster: {gap.tolist()}")
    return problems


def infectious_neighbor_count(net: ContactNetwork, s: np.ndarray, k: int, infectious_label: int) -> int:
    """Number of neighbours of node k labelled infectious in global state s."""
    if not 0 <= k < net.n_nodes:
        raise ValueError(f"node {k} out of range [0, {net.n_nodes})")
    s = np.asarray(s)
    if s.shape[0] != net.n_nodes:
        raise ValueError(f"state length {s.shape[0]} != number of nodes {net.n_nodes}")
    return int((s[net.neighbors(k)] == infectious_label).sum())


def neighbor_sums(net: ContactNetwork, values: np.ndarray) -> np.ndarray:
    """For each node k, the sum of ``values`` over k's neighbours.

    ``values`` may have extra leading axes; the node axis is the last one.
    """
    values = np.asarray(values)
    gathered = values[..., net.indices]
    return _segment_reduce(np.add, gathered, net.indptr, fill=0.0)


def neighbor_products(net: ContactNetwork, values: np.ndarray) -> np.ndarray:
    """For each node k, the product of ``values`` over k's neighbours."""
    values = np.asarray(values)
    gathered = values[..., net.indices]
    return _segment_reduce(np.multiply, gathered, net.indptr, fill=1.0)


def _segment_reduce(ufunc, gathered: np.ndarray, indptr: np.ndarray, fill: float) -> np.ndarray:
    """Reduce CSR segments along the last axis; empty segments get ``fill``."""
    n = indptr.shape[0] - 1
    out_shape = gathered.shape[:-1] + (n,)
    if gathered.shape[-1] == 0:
        return np.full(out_shape, fill, dtype=float)
    starts = np.minimum(indptr[:-1], gathered.shape[-1] - 1)
    out = ufunc.reduceat(gathered, starts, axis=-1).astype(float, copy=False)
    empty = indptr[:-1] == indptr[1:]
    if np.any(empty):
        out[..., empty] = fill
    return out
