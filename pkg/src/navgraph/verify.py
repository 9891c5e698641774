"""Navigability checks: the permutation criterion, exhaustive routing, and the
within-neighborhood edge audit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import SizeMismatch
from .graph import DirectedGraph, route_all_pairs
from .model import DistanceOracle, PointSet
from .parallel import chunked, pmap
from .permute import PermutationTable


@dataclass
class VerifyReport:
    property_holds: bool | None = None
    exhaustive_ok: bool | None = None
    max_moves: int | None = None
    first_failure: tuple | None = None
    claim5_ok: bool | None = None

    def to_dict(self) -> dict:
        out = {}
        for key in ("property_holds", "exhaustive_ok", "max_moves", "first_failure", "claim5_ok"):
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val) if isinstance(val, tuple) else val
        return out

    @property
    def ok(self) -> bool:
        checks = [v for v in (self.property_holds, self.exhaustive_ok, self.claim5_ok) if v is not None]
        return all(checks)


def _min_neighbor_rank(g: DirectedGraph, rank_row: np.ndarray) -> np.ndarray:
    """For every node u, the smallest rank (w.r.t. one target) among u's out-neighbors; n if none."""
    deg = g.out_degrees()
    out = np.full(g.n, g.n, dtype=np.int64)
    has = deg > 0
    if has.any():
        out[has] = np.minimum.reduceat(rank_row[g.indices], g.indptr[:-1][has])
    return out


def property_failures(g: DirectedGraph, pt: PermutationTable, threads=None) -> list:
    """All (t, l) with l > 1 (1-based) such that N_l(t) has no edge to any N_k(t), k < l."""
    if g.n != pt.n:
        raise SizeMismatch(f"graph has {g.n} nodes, permutation table has {pt.n}")

    def scan(targets):
        bad = []
        for t in targets:
            rank_t = pt.rank[t]
            minr = _min_neighbor_rank(g, rank_t)
            fail = minr >= rank_t
            fail[t] = False
            for u in np.flatnonzero(fail):
                bad.append((int(t), int(rank_t[u]) + 1))
        return bad

    parts = pmap(scan, chunked(range(g.n), 64), threads)
    return sorted(f for part in parts for f in part)


def verify_property(g: DirectedGraph, pt: PermutationTable, threads=None) -> bool:
    """True iff every N_l(t), l > 1, has an out-edge to some N_k(t) with k < l."""
    return not property_failures(g, pt, threads)


def verify_exhaustive(g: DirectedGraph, ps: PointSet, oracle: DistanceOracle, threads=None, dist=None):
    """Route every ordered pair; returns (all_ok, max_moves, first_failure).

    ``first_failure`` is the lexicographically smallest failing (s, t)
    together with the node the route stopped at, or None.
    """
    table = route_all_pairs(g, ps, oracle, threads=threads, dist=dist)
    fails = table.failures()
    first = None
    if fails.size:
        s, t = (int(v) for v in fails[0])
        first = (s, t, int(table.terminal[s, t]))
    return first is None, table.max_moves, first


def internal_edge_counts(g: DirectedGraph, hoods) -> np.ndarray:
    """For each j, the number of edges (u, v), u != v, with both ends in O_j."""
    if g.n != hoods.n:
        raise SizeMismatch(f"graph has {g.n} nodes, neighborhoods cover {hoods.n}")
    h = hoods.to_sparse()
    a = sp.csr_matrix(
        (np.ones(g.edge_count, dtype=np.int64), g.indices, g.indptr), shape=(g.n, g.n)
    )
    return np.asarray((h @ a).multiply(h).sum(axis=1)).ravel().astype(np.int64)


def audit_claim5(g: DirectedGraph, hoods) -> bool:
    """Necessary condition for navigability: each O_j spans >= |O_j| - 1 internal edges."""
    return bool(np.all(internal_edge_counts(g, hoods) >= hoods.sizes() - 1))
