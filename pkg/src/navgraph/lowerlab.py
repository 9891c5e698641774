"""Empirical lower-bound machinery on random sign-vector point sets.

Fixed-radius neighborhoods O_j = {i : <x_i, x_j> >= c_h * sqrt(d ln n)},
their sizes and pairwise overlaps, and the per-instance edge-count floor

    certified_lb = ceil( sum_j (|O_j| - 1) / max_{u != v} |O_u & O_v| )

that every navigable graph on the instance must meet. Natural log is used
throughout for the radius and for calibrating c_h.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import rng
from .errors import DegenerateHoods, OutOfRange, SizeMismatch, WrongInstance
from .graph import DirectedGraph, greedy_search
from .model import PointSet, euclidean_oracle, gen_hub_instance, inner_products, require_sign

log = logging.getLogger(__name__)

MAX_TAIL_TRIALS = 10**6


# --- neighborhoods -----------------------------------------------------------


@dataclass(frozen=True)
class NearNeighborhoodSet:
    """Per-node neighborhoods as packed bitsets.

    Row j of ``words`` holds O_j; bit i (little-endian within uint64 words)
    is set iff i is a member.
    """

    n: int
    threshold: float
    words: np.ndarray
    c_h: float | None = None

    @classmethod
    def from_dense(cls, member, threshold=float("nan"), c_h=None) -> "NearNeighborhoodSet":
        member = np.asarray(member, dtype=bool)
        n = member.shape[0]
        if member.shape != (n, n):
            raise SizeMismatch("membership matrix must be n x n")
        packed = np.packbits(member, axis=1, bitorder="little")
        pad = (-packed.shape[1]) % 8
        packed = np.pad(packed, ((0, 0), (0, pad)))
        words = np.ascontiguousarray(packed).view("<u8")
        words.flags.writeable = False
        return cls(n, float(threshold), words, c_h)

    @classmethod
    def from_sets(cls, sets, threshold=float("nan")) -> "NearNeighborhoodSet":
        n = len(sets)
        member = np.zeros((n, n), dtype=bool)
        for j, s in enumerate(sets):
            member[j, list(s)] = True
        return cls.from_dense(member, threshold)

    def to_dense(self) -> np.ndarray:
        bits = np.unpackbits(self.words.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.n].astype(bool)

    def to_sparse(self) -> sp.csr_matrix:
        return sp.csr_matrix(self.to_dense(), dtype=np.int64)

    def sizes(self) -> np.ndarray:
        return np.bitwise_count(self.words).sum(axis=1, dtype=np.int64)

    def members(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.to_dense()[j])

    def contains(self, j: int, i: int) -> bool:
        """i in O_j."""
        return bool((int(self.words[j, i // 64]) >> (i % 64)) & 1)

    def pair_overlap(self, i: int, j: int) -> int:
        """|O_i & O_j| by word-wise AND and popcount."""
        return int(np.bitwise_count(self.words[i] & self.words[j]).sum())


def radius(n: int, d: int, c_h: float) -> float:
    return c_h * math.sqrt(d * math.log(n))


def build_hoods(ps: PointSet, c_h: float, gram=None) -> NearNeighborhoodSet:
    """O_j = {i : <x_i, x_j> >= c_h sqrt(d ln n)}; inner products are exact integers."""
    require_sign(ps)
    if not 0 < c_h <= 1:
        raise OutOfRange(f"c_h={c_h} outside (0, 1]")
    if gram is None:
        gram = inner_products(ps)
    tau = radius(ps.n, ps.d, c_h)
    return NearNeighborhoodSet.from_dense(gram >= tau, tau, c_h)


def overlap_matrix(hoods: NearNeighborhoodSet) -> np.ndarray:
    """Dense ``W[u, v] = |O_u & O_v|`` via a sparse 0/1 product."""
    h = hoods.to_sparse()
    return (h @ h.T).toarray()


def overlap_stats(hoods: NearNeighborhoodSet, overlaps=None):
    """(max overlap over unordered pairs i != j, histogram).

    ``histogram[s]`` is the number of unordered pairs with overlap exactly s.
    """
    if hoods.n < 2:
        raise OutOfRange("overlap statistics need n >= 2")
    if overlaps is None:
        overlaps = overlap_matrix(hoods)
    upper = overlaps[np.triu_indices(hoods.n, k=1)]
    hist = np.bincount(upper)
    return int(upper.max()), hist


def co_membership(hoods: NearNeighborhoodSet, u: int, v: int) -> int:
    """|{j : u in O_j and v in O_j}|, counted over neighborhoods directly."""
    dense = hoods.to_dense()
    return int(np.count_nonzero(dense[:, u] & dense[:, v]))


# --- certified bound ----------------------------------------------------------


@dataclass
class LowerBoundReport:
    n: int
    d: int | None
    c_h: float | None
    threshold: float
    min_hood: int
    mean_hood: float
    max_hood: int
    max_overlap: int
    sum_required: int
    certified_lb: int
    max_pair_inner: float | None = None
    log_base: str = "e"

    @property
    def certified_avg_degree(self) -> float:
        return self.certified_lb / self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "c_h": self.c_h,
            "log_base": self.log_base,
            "threshold": self.threshold,
            "min_hood": self.min_hood,
            "mean_hood": self.mean_hood,
            "max_hood": self.max_hood,
            "max_overlap": self.max_overlap,
            "sum_required": self.sum_required,
            "certified_lb": self.certified_lb,
            "certified_avg_degree": self.certified_avg_degree,
            "max_pair_inner": self.max_pair_inner,
        }


def certified_lower_bound(hoods: NearNeighborhoodSet, overlaps=None, max_pair_inner=None, d=None) -> LowerBoundReport:
    """Edge-count floor valid for every navigable graph on the instance.

    Each O_j needs |O_j| - 1 edges inside O_j x O_j, and an edge (u, v)
    lies inside exactly |O_u & O_v| of those blocks.
    """
    sizes = hoods.sizes()
    max_overlap, _ = overlap_stats(hoods, overlaps)
    required = int(np.maximum(sizes - 1, 0).sum())
    if max_overlap == 0:
        if required > 0:
            raise DegenerateHoods("neighborhoods require edges but have zero pairwise overlap")
        lb = 0
    else:
        lb = -(-required // max_overlap)
    return LowerBoundReport(
        n=hoods.n,
        d=d,
        c_h=hoods.c_h,
        threshold=hoods.threshold,
        min_hood=int(sizes.min()),
        mean_hood=float(sizes.mean()),
        max_hood=int(sizes.max()),
        max_overlap=max_overlap,
        sum_required=required,
        certified_lb=lb,
        max_pair_inner=max_pair_inner,
    )


def edge_weight_sum(hoods: NearNeighborhoodSet, g: DirectedGraph, overlaps=None) -> int:
    """sum over edges (u, v) of |O_u & O_v|."""
    if g.n != hoods.n:
        raise SizeMismatch(f"graph has {g.n} nodes, neighborhoods cover {hoods.n}")
    if overlaps is None:
        overlaps = overlap_matrix(hoods)
    e = g.edges()
    return int(overlaps[e[:, 0], e[:, 1]].sum())


def cross_check_lb(hoods: NearNeighborhoodSet, g: DirectedGraph, verified_navigable: bool, overlaps=None) -> bool:
    """Both counting inequalities that any navigable graph must satisfy.

    False means the neighborhoods, the graph, or the navigability
    attestation is wrong.
    """
    if not verified_navigable:
        raise ValueError("cross_check_lb needs a graph verified navigable by the caller")
    if overlaps is None:
        overlaps = overlap_matrix(hoods)
    report = certified_lower_bound(hoods, overlaps)
    return g.edge_count >= report.certified_lb and edge_weight_sum(hoods, g, overlaps) >= report.sum_required


def max_inner_product(ps: PointSet, gram=None) -> float:
    require_sign(ps)
    if ps.n < 2:
        raise OutOfRange("need at least two points")
    if gram is None:
        gram = inner_products(ps)
    off = gram.copy()
    np.fill_diagonal(off, np.iinfo(np.int64).min)
    return float(off.max())


def lower_bound_lab(ps: PointSet, c_h=None):
    """Full pipeline on one instance: (hoods, report, overlap histogram)."""
    require_sign(ps)
    if c_h is None:
        c_h = calibrate_ch(ps.n)
    gram = inner_products(ps)
    hoods = build_hoods(ps, c_h, gram)
    overlaps = overlap_matrix(hoods)
    report = certified_lower_bound(hoods, overlaps, max_inner_product(ps, gram), d=ps.d)
    _, hist = overlap_stats(hoods, overlaps)
    return hoods, report, hist


# --- calibration and binomial tails -------------------------------------------


def calibrate_ch(n: int) -> float:
    """c with exp(-c^2 ln n) / sqrt(ln n) = 1 / sqrt(n), i.e.
    c = sqrt(1/2 - ln ln n / (2 ln n)), clamped to [1/3, 1]."""
    if n < 3:
        raise OutOfRange("calibration needs n >= 3")
    ln = math.log(n)
    c = math.sqrt(0.5 - math.log(ln) / (2 * ln))
    if not 1 / 3 <= c <= 1:
        clamped = min(max(c, 1 / 3), 1.0)
        log.warning("calibrated c_h=%.6f outside [1/3, 1]; clamped to %.6f", c, clamped)
        c = clamped
    return c


_LN_SQRT_2PI = 0.5 * math.log(2 * math.pi)
_S0, _S1, _S2, _S3, _S4 = 1 / 12, 1 / 360, 1 / 1260, 1 / 1680, 1 / 1188


def _stirlerr(k: np.ndarray) -> np.ndarray:
    """ln(k!) - [(k + 1/2) ln k - k + ln sqrt(2 pi)] for integers k >= 1."""
    k = np.asarray(k, dtype=np.float64)
    out = np.empty_like(k)
    small = k <= 15
    if small.any():
        ks = k[small]
        lf = np.array([math.log(math.factorial(int(v))) for v in ks])
        out[small] = lf - (ks + 0.5) * np.log(ks) + ks - _LN_SQRT_2PI
    big = ~small
    kb = k[big]
    nn = kb * kb
    series = np.select(
        [kb > 500, kb > 80, kb > 35],
        [
            (_S0 - _S1 / nn) / kb,
            (_S0 - (_S1 - _S2 / nn) / nn) / kb,
            (_S0 - (_S1 - (_S2 - _S3 / nn) / nn) / nn) / kb,
        ],
        (_S0 - (_S1 - (_S2 - (_S3 - _S4 / nn) / nn) / nn) / nn) / kb,
    )
    out[big] = series
    return out


def _bd0(x: np.ndarray, mean: float) -> np.ndarray:
    """x ln(x / mean) + mean - x, evaluated without cancellation near x = mean."""
    x = np.asarray(x, dtype=np.float64)
    out = x * np.log(x / mean) + mean - x
    near = np.abs(x - mean) < 0.1 * (x + mean)
    if near.any():
        xn = x[near]
        v = (xn - mean) / (xn + mean)
        s = (xn - mean) * v
        ej = 2 * xn * v
        v2 = v * v
        for j in range(1, 1000):
            ej = ej * v2
            s_next = s + ej / (2 * j + 1)
            if np.array_equal(s_next, s):
                break
            s = s_next
        out[near] = s
    return out


def _log_pmf_half(t: int, k: np.ndarray) -> np.ndarray:
    """ln P(B = k) for B ~ Binomial(t, 1/2), via the saddle-point form."""
    k = np.asarray(k, dtype=np.int64)
    out = np.full(k.shape, -t * math.log(2.0))
    inner = (k > 0) & (k < t)
    if inner.any():
        ki = k[inner].astype(np.float64)
        half = t / 2.0
        lc = _stirlerr(np.array([t]))[0] - _stirlerr(ki) - _stirlerr(t - ki) - _bd0(ki, half) - _bd0(t - ki, half)
        lf = 2 * _LN_SQRT_2PI + np.log(ki) + np.log1p(-ki / t)
        out[inner] = lc - 0.5 * lf
    return out


def binom_log_cdf(t: int, kmax: int) -> float:
    """ln P(B <= kmax) for B ~ Binomial(t, 1/2), by summing log-space terms."""
    if not 0 <= t <= MAX_TAIL_TRIALS:
        raise OutOfRange(f"t={t} outside [0, {MAX_TAIL_TRIALS}]")
    if kmax < 0:
        return -math.inf
    if kmax >= t:
        return 0.0
    terms = _log_pmf_half(t, np.arange(kmax + 1))
    top = terms.max()
    return float(top + math.log(math.fsum(np.exp(terms - top))))


def binom_tail_exact(t: int, x: float) -> float:
    """P(B - t/2 <= -x sqrt(t) / 2) for B ~ Binomial(t, 1/2).

    The cut-off ``floor(t/2 - x sqrt(t)/2)`` is evaluated in float64.
    """
    if not 0 <= t <= MAX_TAIL_TRIALS:
        raise OutOfRange(f"t={t} outside [0, {MAX_TAIL_TRIALS}]")
    kmax = math.floor(t / 2 - x * math.sqrt(t) / 2)
    return math.exp(binom_log_cdf(t, kmax))


def membership_probability(n: int, d: int, c_h: float) -> float:
    """Exact Pr(<x_i, x_j> >= c_h sqrt(d ln n)) for independent uniform sign vectors.

    <x_i, x_j> = 2B - d with B ~ Binomial(d, 1/2) the number of agreeing
    coordinates; by symmetry this is P(B <= floor((d - tau) / 2)).
    """
    tau = radius(n, d, c_h)
    return math.exp(binom_log_cdf(d, math.floor((d - tau) / 2)))


def membership_frequency(ps: PointSet, c_h: float, pairs: int, seed: int) -> float:
    """Fraction of ``pairs`` uniformly sampled ordered pairs i != j with i in O_j."""
    require_sign(ps)
    if ps.n < 2:
        raise OutOfRange("need at least two points")
    bg = rng.philox(seed, rng.STREAM_SAMPLING)
    i = rng.bounded_ints(bg, ps.n, pairs)
    j = rng.bounded_ints(bg, ps.n - 1, pairs)
    j += j >= i
    tau = radius(ps.n, ps.d, c_h)
    hits = 0
    step = max(1, (1 << 22) // ps.d)  # bound the gathered rows to ~32 MB
    for lo in range(0, pairs, step):
        a, b = i[lo : lo + step], j[lo : lo + step]
        hits += int(np.count_nonzero(np.einsum("ij,ij->i", ps.data[a], ps.data[b]) >= tau))
    return hits / pairs


# --- worst case for the maximum degree ----------------------------------------


def is_hub_instance(ps: PointSet) -> bool:
    return ps.n >= 2 and ps.d == ps.n - 1 and np.array_equal(ps.data, gen_hub_instance(ps.n).data)


def hub_necessity_failures(ps: PointSet) -> list:
    """Targets i for which routing from the hub still reaches x_i after the
    single edge hub -> i is deleted from the complete graph (expected: none)."""
    if not is_hub_instance(ps):
        raise WrongInstance("point set is not the basis-vectors-plus-origin instance")
    n = ps.n
    hub = n - 1
    oracle = euclidean_oracle(ps)
    full = np.ones((n, n), dtype=bool)
    reached = []
    for i in range(n - 1):
        adj = full.copy()
        adj[hub, i] = False
        trace = greedy_search(DirectedGraph.from_matrix(adj), ps, oracle, hub, ps.data[i])
        if trace.terminal == i:
            reached.append(i)
    return reached


def hub_degree_audit(ps: PointSet, g: DirectedGraph) -> bool:
    """Hub out-degree in ``g`` is n - 1, and each hub edge is individually necessary."""
    if not is_hub_instance(ps):
        raise WrongInstance("point set is not the basis-vectors-plus-origin instance")
    if g.n != ps.n:
        raise SizeMismatch(f"graph has {g.n} nodes, point set has {ps.n}")
    if g.out_degrees()[ps.n - 1] != ps.n - 1:
        return False
    return not hub_necessity_failures(ps)
