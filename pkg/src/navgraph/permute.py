"""Distance-based permutations N_1(i), ..., N_n(i) for every node."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DuplicatePoints, OutOfRange
from .model import DistanceOracle, PointSet, check_distinct

MAX_NODES = 2**31 - 1


@dataclass(frozen=True)
class PermutationTable:
    """``perm[i, k]`` is the (k+1)-th closest node to i; ``rank`` is its row-wise inverse.

    Rows are sorted by (D(x_i, x_j), j) with exact float comparison.
    """

    perm: np.ndarray
    rank: np.ndarray

    @property
    def n(self) -> int:
        return self.perm.shape[0]

    def row(self, i: int) -> np.ndarray:
        return self.perm[i]


def order_rows(dist: np.ndarray) -> PermutationTable:
    """Sort every row of a distance matrix by (distance, id)."""
    n = dist.shape[0]
    if n > MAX_NODES:
        raise OutOfRange(f"n={n} exceeds the 32-bit rank limit")
    # stable sort keeps ascending ids among equal distances
    perm = np.argsort(dist, axis=1, kind="stable").astype(np.int32)
    rank = np.empty_like(perm)
    np.put_along_axis(rank, perm.astype(np.intp), np.arange(n, dtype=np.int32)[None, :].repeat(n, axis=0), axis=1)
    perm.flags.writeable = False
    rank.flags.writeable = False
    return PermutationTable(perm, rank)


def build_permutations(ps: PointSet, oracle: DistanceOracle) -> PermutationTable:
    if not check_distinct(ps):
        raise DuplicatePoints("point set contains identical rows")
    pt = order_rows(oracle.matrix())
    if not np.array_equal(pt.perm[:, 0], np.arange(pt.n)):
        # unreachable with validated distances; kept as a guard
        raise AssertionError("N_1(i) != i for some node")
    return pt


def nearest_m(pt: PermutationTable, i: int, m: int) -> frozenset:
    """The near-neighborhood {N_1(i), ..., N_m(i)} (always contains i)."""
    if not 1 <= m <= pt.n:
        raise OutOfRange(f"m={m} outside [1, {pt.n}]")
    if not 0 <= i < pt.n:
        raise OutOfRange(f"node id {i} outside [0, {pt.n})")
    return frozenset(int(j) for j in pt.perm[i, :m])
