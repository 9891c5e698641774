"""Readers and writers for point, permutation, graph and report files.

.pts   text: ``n d`` then n rows of d floats (repr, round-trips exactly)
.pm1   text: ``n d`` then n rows of d ``+1``/``-1`` tokens
.fvecs binary: per vector an int32 d followed by d float32 (little-endian);
       float32 storage is lossy for general float64 data
.perm  text: ``n`` then row i = the n ids of N_1(i)..N_n(i)
.adj   text: ``n`` then row i = ``i k j_1 .. j_k`` with sorted out-neighbors
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .graph import DirectedGraph
from .model import PointSet
from .permute import PermutationTable


class FormatError(ValueError):
    pass


def _lines(path):
    with open(path) as fh:
        return [ln for ln in (raw.strip() for raw in fh) if ln]


def _header(line, count):
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"bad header {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise FormatError(f"bad header {line!r}") from exc


def write_pts(ps: PointSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{ps.n} {ps.d}\n")
        for row in ps.data:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_pts(path) -> PointSet:
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    n, d = _header(lines[0], 2)
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != n or any(len(r) != d for r in rows):
        raise FormatError(f"{path}: expected {n} rows of {d} values")
    try:
        data = np.array(rows, dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric coordinate") from exc
    kind = "sign" if np.all(np.abs(data) == 1.0) else "general"
    return PointSet(data, kind=kind)


def write_pm1(ps: PointSet, path) -> None:
    if ps.kind != "sign":
        raise FormatError(".pm1 holds sign vectors only")
    with open(path, "w") as fh:
        fh.write(f"{ps.n} {ps.d}\n")
        for row in ps.data:
            fh.write(" ".join("+1" if v > 0 else "-1" for v in row) + "\n")


def read_pm1(path) -> PointSet:
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    n, d = _header(lines[0], 2)
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != n or any(len(r) != d for r in rows):
        raise FormatError(f"{path}: expected {n} rows of {d} tokens")
    lookup = {"+1": 1.0, "-1": -1.0}
    try:
        data = np.array([[lookup[tok] for tok in r] for r in rows])
    except KeyError as exc:
        raise FormatError(f"{path}: token {exc.args[0]!r} is not +1/-1") from exc
    return PointSet(data, kind="sign")


def write_fvecs(ps: PointSet, path) -> None:
    body = np.empty((ps.n, ps.d + 1), dtype="<f4")
    body.view("<i4")[:, 0] = ps.d
    body[:, 1:] = ps.data
    body.tofile(path)


def read_fvecs(path) -> PointSet:
    raw = np.fromfile(path, dtype="<i4")
    if raw.size == 0:
        raise FormatError(f"{path}: empty file")
    d = int(raw[0])
    if d < 1 or raw.size % (d + 1):
        raise FormatError(f"{path}: size is not a whole number of {d}-vectors")
    rows = raw.reshape(-1, d + 1)
    if not np.all(rows[:, 0] == d):
        raise FormatError(f"{path}: vectors have differing dimensions")
    data = rows[:, 1:].copy().view("<f4").astype(np.float64)
    kind = "sign" if np.all(np.abs(data) == 1.0) else "general"
    return PointSet(data, kind=kind)


def read_points(path) -> PointSet:
    ext = Path(path).suffix.lower()
    if ext == ".pm1":
        return read_pm1(path)
    if ext == ".fvecs":
        return read_fvecs(path)
    return read_pts(path)


def write_points(ps: PointSet, path) -> None:
    ext = Path(path).suffix.lower()
    if ext == ".pm1":
        write_pm1(ps, path)
    elif ext == ".fvecs":
        write_fvecs(ps, path)
    else:
        write_pts(ps, path)


def write_perm(pt: PermutationTable, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{pt.n}\n")
        for row in pt.perm:
            fh.write(" ".join(map(str, row.tolist())) + "\n")


def read_perm(path) -> PermutationTable:
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    (n,) = _header(lines[0], 1)
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"{path}: expected {n} rows of {n} ids")
    try:
        perm = np.array(rows, dtype=np.int32).reshape(n, n)
    except ValueError as exc:
        raise FormatError(f"{path}: non-integer id") from exc
    if not np.all(np.sort(perm, axis=1) == np.arange(n)):
        raise FormatError(f"{path}: rows must be permutations of 0..{n - 1}")
    rank = np.empty_like(perm)
    np.put_along_axis(rank, perm.astype(np.intp), np.tile(np.arange(n, dtype=np.int32), (n, 1)), axis=1)
    return PermutationTable(perm, rank)


def dumps_adj(g: DirectedGraph) -> str:
    out = [f"{g.n}"]
    for i in range(g.n):
        nbrs = g.adj(i).tolist()
        out.append(" ".join(map(str, [i, len(nbrs), *nbrs])))
    return "\n".join(out) + "\n"


def write_adj(g: DirectedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_adj(g))


def read_adj(path) -> DirectedGraph:
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    (n,) = _header(lines[0], 1)
    if len(lines) - 1 != n:
        raise FormatError(f"{path}: expected {n} adjacency rows")
    lists = []
    for i, ln in enumerate(lines[1:]):
        try:
            vals = [int(v) for v in ln.split()]
        except ValueError as exc:
            raise FormatError(f"{path}: non-integer entry in row {i}") from exc
        if len(vals) < 2 or vals[0] != i or vals[1] != len(vals) - 2:
            raise FormatError(f"{path}: malformed row for node {i}")
        nbrs = vals[2:]
        if any(b <= a for a, b in zip(nbrs, nbrs[1:])) or i in nbrs or any(not 0 <= j < n for j in nbrs):
            raise FormatError(f"{path}: neighbors of node {i} must be sorted, unique, in range and not i")
        lists.append(nbrs)
    return DirectedGraph.from_lists(lists) if n else DirectedGraph.empty(0)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_json(obj))


def write_histogram_csv(hist, path) -> None:
    with open(path, "w") as fh:
        fh.write("overlap_size,pair_count\n")
        for size, count in enumerate(hist.tolist()):
            fh.write(f"{size},{count}\n")


def ensure_parent(path) -> None:
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
