"""Point sets, distance oracles and point-set generators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import rng
from .errors import InvalidDistance, NonFiniteDistance, OutOfRange, WrongKind

KINDS = ("general", "sign")

# float32 accumulation of +-1 products is exact while |partial sum| < 2**24
_FLOAT32_EXACT_DIM = 1 << 24


@dataclass(frozen=True)
class PointSet:
    """``n`` points in dimension ``d`` stored as a read-only float64 matrix.

    ``kind="sign"`` promises every coordinate is exactly -1.0 or +1.0.
    """

    data: np.ndarray
    kind: str = "general"

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, order="C", copy=True)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError(f"point data must be a non-empty n x d matrix, got shape {data.shape}")
        if not np.isfinite(data).all():
            raise ValueError("point coordinates must be finite")
        if self.kind not in KINDS:
            raise ValueError(f"unknown point-set kind {self.kind!r}")
        if self.kind == "sign" and not np.all(np.abs(data) == 1.0):
            raise ValueError("sign point sets may only contain -1.0 and +1.0")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.data[i]


def check_distinct(ps: PointSet) -> bool:
    """True iff no two rows of ``ps`` are identical."""
    return np.unique(ps.data, axis=0).shape[0] == ps.n


def require_sign(ps: PointSet) -> None:
    if ps.kind != "sign":
        raise WrongKind(f"expected a sign point set, got kind={ps.kind!r}")


def inner_products(ps: PointSet) -> np.ndarray:
    """Exact integer Gram matrix of a sign point set (int64).

    The product runs through BLAS in float32 (or float64 for d >= 2**24);
    every partial sum is an integer below the mantissa limit, so the result
    is exact regardless of summation order or thread count.
    """
    require_sign(ps)
    dtype = np.float32 if ps.d < _FLOAT32_EXACT_DIM else np.float64
    x = ps.data.astype(dtype)
    return np.rint(x @ x.T).astype(np.int64)


def pack_signs(ps: PointSet) -> np.ndarray:
    """Bit-pack a sign point set: bit set where the coordinate is +1."""
    require_sign(ps)
    return np.packbits(ps.data > 0, axis=1, bitorder="little")


def inner_products_packed(ps: PointSet, rows=None) -> np.ndarray:
    """Gram matrix via XOR-popcount on packed bits: <x, y> = d - 2 * hamming(x, y).

    Independent of :func:`inner_products`; used to cross-check it.
    """
    packed = pack_signs(ps)
    rows = np.arange(ps.n) if rows is None else np.asarray(rows)
    out = np.empty((rows.size, ps.n), dtype=np.int64)
    for k, i in enumerate(rows):
        ham = np.bitwise_count(packed ^ packed[i]).sum(axis=1, dtype=np.int64)
        out[k] = ps.d - 2 * ham
    return out


def _euclidean(query: np.ndarray, points: np.ndarray) -> np.ndarray:
    return np.sqrt(((points - query) ** 2).sum(axis=1))


class DistanceOracle:
    """Distance function bound to a point set.

    ``fn(query, points)`` returns the distances D(query, p) for every row p
    of ``points``. Neither symmetry nor the triangle inequality is assumed.
    Identity violations (D(x, x) != 0, or a zero distance between distinct
    points) are detected whenever a full row is evaluated and raise
    :class:`InvalidDistance`.
    """

    def __init__(self, points: PointSet, fn: Callable[[np.ndarray, np.ndarray], np.ndarray], name: str = "custom"):
        self.points = points
        self.fn = fn
        self.name = name

    def to_point(self, query, ids=None) -> np.ndarray:
        """D(query, x_i) for ``i`` in ``ids`` (all nodes when omitted)."""
        query = np.asarray(query, dtype=np.float64)
        if query.shape != (self.points.d,):
            raise ValueError(f"query must have dimension {self.points.d}")
        rows = self.points.data if ids is None else self.points.data[np.asarray(ids, dtype=np.int64)]
        out = np.asarray(self.fn(query, rows), dtype=np.float64)
        _check_values(out)
        return out

    def __call__(self, i: int, j: int) -> float:
        """D(x_i, x_j)."""
        self._check_id(i)
        self._check_id(j)
        return float(self.to_point(self.points.data[i], [j])[0])

    def row(self, i: int) -> np.ndarray:
        """D(x_i, x_j) for all j, with identity checks."""
        self._check_id(i)
        out = self.to_point(self.points.data[i])
        self._check_row(i, out)
        return out

    def matrix(self) -> np.ndarray:
        """Full matrix ``M[i, j] = D(x_i, x_j)``."""
        return np.stack([self.row(i) for i in range(self.points.n)])

    def _check_id(self, i):
        if not 0 <= i < self.points.n:
            raise OutOfRange(f"node id {i} outside [0, {self.points.n})")

    def _check_row(self, i, row):
        if row[i] != 0.0:
            raise InvalidDistance(f"D(x_{i}, x_{i}) = {row[i]!r}, expected 0")
        zeros = np.flatnonzero(row == 0.0)
        for j in zeros:
            if j != i and not np.array_equal(self.points.data[i], self.points.data[j]):
                raise InvalidDistance(f"D(x_{i}, x_{j}) = 0 for distinct points")


def _check_values(out):
    if not np.isfinite(out).all():
        raise NonFiniteDistance("distance evaluation produced NaN or infinity")
    if (out < 0).any():
        raise InvalidDistance("distance evaluation produced a negative value")


class EuclideanOracle(DistanceOracle):
    """Exact Euclidean distance. Sign point sets get a Gram-matrix fast path
    for :meth:`matrix`; on +-1 data both paths produce sqrt of the same
    integer and therefore identical floats."""

    def __init__(self, points: PointSet):
        super().__init__(points, _euclidean, name="euclidean")

    def matrix(self) -> np.ndarray:
        if self.points.kind != "sign":
            return super().matrix()
        # ||x - y||^2 = 2d - 2<x, y> for +-1 vectors
        sq = (2 * self.points.d - 2 * inner_products(self.points)).astype(np.float64)
        np.fill_diagonal(sq, 0.0)
        out = np.sqrt(sq)
        for i in range(self.points.n):
            self._check_row(i, out[i])
        return out


def euclidean_oracle(ps: PointSet) -> EuclideanOracle:
    return EuclideanOracle(ps)


def gen_random_sign_points(n: int, d: int, seed: int) -> PointSet:
    """i.i.d. uniform +-1 coordinates; bit ``k`` of the Philox stream sets
    entry ``(k // d, k % d)`` to +1 when the bit is 1."""
    if n < 1 or d < 1:
        raise OutOfRange("need n >= 1 and d >= 1")
    bits = rng.random_bits(seed, rng.STREAM_SIGN_POINTS, n * d)
    data = bits.reshape(n, d).astype(np.float64) * 2.0 - 1.0
    return PointSet(data, kind="sign")


def gen_hub_instance(n: int) -> PointSet:
    """Standard basis vectors e_0..e_{n-2} plus the origin as node n-1."""
    if n < 2:
        raise OutOfRange("hub instance needs n >= 2")
    data = np.zeros((n, n - 1))
    data[np.arange(n - 1), np.arange(n - 1)] = 1.0
    return PointSet(data)
