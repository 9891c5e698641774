"""Directed graphs over node ids and greedy search on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import OutOfRange, RouteCycle, SizeMismatch
from .model import DistanceOracle, PointSet
from .parallel import chunked, pmap


class DirectedGraph:
    """Immutable digraph on nodes ``0..n-1`` in CSR form.

    Out-neighbor lists are sorted ascending, without duplicates or
    self-loops; both are silently dropped on construction.
    """

    __slots__ = ("n", "indptr", "indices")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int32)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @classmethod
    def from_matrix(cls, adj: np.ndarray) -> "DirectedGraph":
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise SizeMismatch("adjacency matrix must be square")
        np.fill_diagonal(adj, False)
        n = adj.shape[0]
        rows, cols = np.nonzero(adj)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(n, indptr, cols)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "DirectedGraph":
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise OutOfRange(f"edge endpoint outside [0, {n})")
        e = e[e[:, 0] != e[:, 1]]
        e = np.unique(e, axis=0)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(e[:, 0], minlength=n), out=indptr[1:])
        return cls(n, indptr, e[:, 1])

    @classmethod
    def from_lists(cls, lists) -> "DirectedGraph":
        return cls.from_edges(len(lists), [(i, j) for i, nbrs in enumerate(lists) for j in nbrs])

    @classmethod
    def empty(cls, n: int) -> "DirectedGraph":
        return cls(n, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32))

    @classmethod
    def complete(cls, n: int) -> "DirectedGraph":
        return cls.from_matrix(np.ones((n, n), dtype=bool))

    def adj(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def edge_count(self) -> int:
        return int(self.indices.size)

    def edges(self) -> np.ndarray:
        """(E, 2) array of (source, target), lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.out_degrees())
        return np.column_stack([src, self.indices.astype(np.int64)])

    def to_matrix(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        e = self.edges()
        adj[e[:, 0], e[:, 1]] = True
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj(u)
        k = np.searchsorted(a, v)
        return bool(k < a.size and a[k] == v)

    def without_edges(self, edges) -> "DirectedGraph":
        drop = {(int(u), int(v)) for u, v in edges}
        keep = [tuple(e) for e in self.edges().tolist() if tuple(e) not in drop]
        return DirectedGraph.from_edges(self.n, keep)

    def with_edges(self, edges) -> "DirectedGraph":
        return DirectedGraph.from_edges(self.n, np.vstack([self.edges(), np.asarray(edges, dtype=np.int64).reshape(-1, 2)]))

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.indptr, other.indptr) and np.array_equal(self.indices, other.indices)

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, edges={self.edge_count})"


class DegreeStats(NamedTuple):
    edge_count: int
    avg_degree: float
    max_out_degree: int


def degree_stats(g: DirectedGraph) -> DegreeStats:
    deg = g.out_degrees()
    return DegreeStats(g.edge_count, g.edge_count / g.n, int(deg.max()) if g.n else 0)


@dataclass(frozen=True)
class RouteTrace:
    path: tuple
    reason: str  # "reached_no_improvement" | "empty_neighborhood"

    @property
    def moves(self) -> int:
        return len(self.path) - 1

    @property
    def terminal(self) -> int:
        return self.path[-1]

    def to_dict(self) -> dict:
        return {"path": list(self.path), "moves": self.moves, "terminal": self.terminal, "reason": self.reason}


def _check_graph(g: DirectedGraph, ps: PointSet):
    if g.n != ps.n:
        raise SizeMismatch(f"graph has {g.n} nodes, point set has {ps.n}")


def greedy_search(g: DirectedGraph, ps: PointSet, oracle: DistanceOracle, s: int, query) -> RouteTrace:
    """Greedy routing from ``s`` towards ``query``, one step per loop iteration.

    At node j the candidate h is the lowest-id minimizer of D(query, x_i)
    over out-neighbors i; we move when D(query, x_h) < D(query, x_j), or the
    distances tie and h < j.
    """
    _check_graph(g, ps)
    if not 0 <= s < g.n:
        raise OutOfRange(f"start node {s} outside [0, {g.n})")
    j = int(s)
    path = [j]
    d_j = float(oracle.to_point(query, [j])[0])
    while True:
        nbrs = g.adj(j)
        if nbrs.size == 0:
            return RouteTrace(tuple(path), "empty_neighborhood")
        dists = oracle.to_point(query, nbrs)
        k = int(np.argmin(dists))  # first minimum = lowest id, lists are sorted
        h, d_h = int(nbrs[k]), float(dists[k])
        if d_h < d_j or (d_h == d_j and h < j):
            j, d_j = h, d_h
            path.append(j)
            if len(path) > g.n:
                raise RouteCycle(f"greedy search visited more than n={g.n} nodes")
        else:
            return RouteTrace(tuple(path), "reached_no_improvement")


@dataclass(frozen=True)
class RoutingTable:
    """Outcome of greedy search for every ordered (start, target) pair.

    ``terminal[s, t]`` is where the route from s with query x_t stopped and
    ``moves[s, t]`` the number of node transitions.
    """

    terminal: np.ndarray
    moves: np.ndarray

    @property
    def success(self) -> np.ndarray:
        return self.terminal == np.arange(self.terminal.shape[1])[None, :]

    @property
    def max_moves(self) -> int:
        return int(self.moves.max()) if self.moves.size else 0

    @property
    def all_succeed(self) -> bool:
        return bool(self.success.all())

    def failures(self) -> np.ndarray:
        """(k, 2) array of failing (s, t), lexicographic."""
        return np.argwhere(~self.success)


def greedy_successor(g: DirectedGraph, dist_to_target: np.ndarray) -> np.ndarray:
    """One greedy step for every node at once, for a single query.

    ``dist_to_target[i]`` = D(query, x_i). Returns ``nxt`` with
    ``nxt[j]`` the node greedy search moves to from j, or j if it stops.
    """
    n = g.n
    deg = g.out_degrees()
    nxt = np.arange(n)
    has = deg > 0
    if not has.any():
        return nxt
    starts = g.indptr[:-1][has]
    nd = dist_to_target[g.indices]
    best = np.minimum.reduceat(nd, starts)
    tied = nd == np.repeat(best, deg[has])
    cand = np.where(tied, g.indices, n)
    h = np.minimum.reduceat(cand, starts)
    src = np.flatnonzero(has)
    d_src = dist_to_target[src]
    move = (best < d_src) | ((best == d_src) & (h < src))
    nxt[src[move]] = h[move]
    return nxt


def _route_target(g: DirectedGraph, dist_t: np.ndarray):
    nxt = greedy_successor(g, dist_t)
    pos = np.arange(g.n)
    moves = np.zeros(g.n, dtype=np.int32)
    for _ in range(g.n + 1):
        step = nxt[pos]
        moved = step != pos
        if not moved.any():
            return pos, moves
        moves += moved
        pos = step
    raise RouteCycle("greedy routing did not terminate within n steps")


def route_all_pairs(g: DirectedGraph, ps: PointSet, oracle: DistanceOracle, threads=None, dist=None) -> RoutingTable:
    """Greedy search for all n^2 ordered pairs (s, t) with query x_t.

    Vectorized over start nodes: for a fixed target, each node's greedy
    successor is computed once and all starts advance together. ``dist`` may
    pass a precomputed ``oracle.matrix()``.
    """
    _check_graph(g, ps)
    n = g.n
    if dist is None:
        dist = oracle.matrix()
    terminal = np.empty((n, n), dtype=np.int32)
    moves = np.empty((n, n), dtype=np.int32)

    def run(targets):
        for t in targets:
            terminal[:, t], moves[:, t] = _route_target(g, dist[t])

    pmap(run, chunked(range(n), 64), threads)
    return RoutingTable(terminal, moves)
