"""Sparse navigable graph constructions.

Both builders start from the same backbone: for every node i and every
1 < l <= m, an edge N_l(i) -> i. They then guarantee that every node
reaches each near-neighborhood {N_1(i), ..., N_m(i)} in one hop, either
with random long-range edges or with edges to a greedy set-cover hub set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import OutOfRange
from .graph import DirectedGraph
from .permute import PermutationTable


@dataclass
class BuildReport:
    method: str
    n: int
    m: int
    edge_count: int
    random_edges_per_node: int | None = None
    hubs: list = field(default_factory=list)
    saturated: bool = False

    @property
    def avg_degree(self) -> float:
        return self.edge_count / self.n

    def to_dict(self) -> dict:
        out = {"method": self.method, "n": self.n, "m": self.m}
        if self.method == "randomized":
            out["random_edges_per_node"] = self.random_edges_per_node
            out["saturated"] = self.saturated
        elif self.method == "setcover":
            out["hubs"] = list(self.hubs)
        out["edge_count"] = self.edge_count
        out["avg_degree"] = self.avg_degree
        return out


def auto_m_randomized(n: int) -> int:
    return min(n - 1, math.ceil(math.sqrt(3 * n * math.log(n))))


def auto_m_setcover(n: int) -> int:
    return min(n - 1, math.ceil(math.sqrt(n * math.log(n))))


def random_edge_count(n: int, m: int) -> int:
    """ceil(3 n ln n / m), the number of random out-edges per node."""
    return math.ceil(3 * n * math.log(n) / m)


def hub_bound(n: int, m: int) -> float:
    """Greedy cover size ceiling 1 + n ln n / m."""
    return 1 + n * math.log(n) / m


def _resolve_m(pt: PermutationTable, m, auto) -> int:
    n = pt.n
    if n < 2:
        raise OutOfRange("constructions need n >= 2")
    if m is None or m == "auto":
        return auto(n)
    m = int(m)
    if not 1 <= m <= n:
        raise OutOfRange(f"m={m} outside [1, {n}]")
    return m


def _backbone(pt: PermutationTable, m: int) -> np.ndarray:
    n = pt.n
    adj = np.zeros((n, n), dtype=bool)
    targets = np.arange(n)
    for ell in range(1, m):
        adj[pt.perm[:, ell], targets] = True
    return adj


def build_randomized(pt: PermutationTable, seed: int, m=None) -> tuple[DirectedGraph, BuildReport]:
    """Backbone plus ceil(3 n ln n / m) uniformly random out-edges per node.

    Node i samples its targets without replacement from all other nodes
    with a Philox stream keyed by (seed, i), so the result does not depend
    on the order nodes are processed in. When the sample would exceed n-1
    nodes, i is connected to every other node.
    """
    m = _resolve_m(pt, m, auto_m_randomized)
    n = pt.n
    adj = _backbone(pt, m)
    per_node = random_edge_count(n, m)
    saturated = per_node > n - 1
    if saturated:
        adj[:] = True
    else:
        for i in range(n):
            pool = np.delete(np.arange(n), i)
            bg = rng.philox(seed, rng.STREAM_RANDOM_EDGES | i)
            adj[i, rng.sample_without_replacement(bg, pool, per_node)] = True
    g = DirectedGraph.from_matrix(adj)
    return g, BuildReport("randomized", n, m, g.edge_count, random_edges_per_node=per_node, saturated=saturated)


def greedy_hubs(pt: PermutationTable, m: int) -> list:
    """Greedy set cover of the near-neighborhoods by single nodes.

    Each round picks the node contained in the most still-uncovered
    near-neighborhoods (smallest id on ties) and stops once every
    neighborhood holds a chosen node.
    """
    n = pt.n
    member = np.zeros((n, n), dtype=bool)  # member[i, k]: k in N_m(i)
    member[np.arange(n)[:, None], pt.perm[:, :m]] = True
    counts = member.sum(axis=0, dtype=np.int64)
    uncovered = np.ones(n, dtype=bool)
    hubs = []
    while uncovered.any():
        k = int(np.argmax(counts))
        hubs.append(k)
        newly = uncovered & member[:, k]
        counts -= member[newly].sum(axis=0, dtype=np.int64)
        uncovered &= ~newly
    return hubs


def build_setcover(pt: PermutationTable, m=None) -> tuple[DirectedGraph, BuildReport]:
    """Backbone plus an edge from every node to every greedy hub."""
    m = _resolve_m(pt, m, auto_m_setcover)
    n = pt.n
    adj = _backbone(pt, m)
    hubs = greedy_hubs(pt, m)
    if len(hubs) > hub_bound(n, m):
        raise AssertionError(f"{len(hubs)} hubs exceeds 1 + n ln n / m = {hub_bound(n, m):.3f}")
    adj[:, hubs] = True
    g = DirectedGraph.from_matrix(adj)
    return g, BuildReport("setcover", n, m, g.edge_count, hubs=hubs)


def build_knn_baseline(pt: PermutationTable, k: int) -> DirectedGraph:
    """Edges i -> N_l(i) for 2 <= l <= k + 1."""
    n = pt.n
    if not 1 <= k <= n - 1:
        raise OutOfRange(f"k={k} outside [1, {n - 1}]")
    src = np.repeat(np.arange(n), k)
    dst = pt.perm[:, 1 : k + 1].reshape(-1)
    return DirectedGraph.from_edges(n, np.column_stack([src, dst]))
