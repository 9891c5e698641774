import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from navgraph import DirectedGraph, PointSet, build_permutations, euclidean_oracle, gen_random_sign_points
from navgraph import formats
from navgraph.formats import FormatError


def test_pts_round_trip_exact(tmp_path):
    data = np.array([[0.1, -1e-300, 3.0], [np.pi, 2.0**60, -0.0]])
    path = tmp_path / "a.pts"
    formats.write_points(PointSet(data), path)
    back = formats.read_points(path)
    assert back.kind == "general"
    assert np.array_equal(back.data, data)


def test_pm1_round_trip(tmp_path):
    ps = gen_random_sign_points(7, 5, 3)
    path = tmp_path / "a.pm1"
    formats.write_points(ps, path)
    assert path.read_text().splitlines()[0] == "7 5"
    back = formats.read_points(path)
    assert back.kind == "sign"
    assert np.array_equal(back.data, ps.data)


def test_pm1_rejects_general(tmp_path, fig1_points):
    with pytest.raises(FormatError):
        formats.write_points(fig1_points, tmp_path / "x.pm1")


def test_pts_detects_sign(tmp_path):
    ps = gen_random_sign_points(4, 3, 0)
    formats.write_points(ps, tmp_path / "s.pts")
    assert formats.read_points(tmp_path / "s.pts").kind == "sign"


def test_fvecs_lossy(tmp_path):
    data = np.array([[0.1, 2.0], [1.0, -3.5]])
    path = tmp_path / "a.fvecs"
    formats.write_points(PointSet(data), path)
    assert path.stat().st_size == 2 * (4 + 2 * 4)
    back = formats.read_points(path)
    assert np.array_equal(back.data, data.astype(np.float32).astype(np.float64))
    assert back.data[0, 0] != 0.1


def test_fvecs_layout(tmp_path):
    path = tmp_path / "a.fvecs"
    formats.write_points(PointSet(np.array([[1.0, 2.0]])), path)
    raw = path.read_bytes()
    assert raw[:4] == (2).to_bytes(4, "little")
    assert np.frombuffer(raw[4:], "<f4").tolist() == [1.0, 2.0]


@pytest.mark.parametrize(
    "name,text",
    [
        ("a.pts", ""),
        ("a.pts", "2 2\n1 2\n"),
        ("a.pts", "1 2\n1 x\n"),
        ("a.pts", "1\n1 2\n"),
        ("a.pm1", "1 2\n+1 0\n"),
        ("a.adj", "2\n0 1 1\n"),
        ("a.adj", "2\n0 1 1\n1 1 1\n"),
        ("a.adj", "2\n0 2 1 1\n1 0\n"),
        ("a.adj", "2\n0 1 5\n1 0\n"),
        ("a.adj", "2\n0 1 z\n1 0\n"),
        ("a.perm", "2\n0 1\n1 1\n"),
        ("a.perm", "2\n0 1\n"),
        ("a.perm", ""),
    ],
)
def test_bad_files(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    reader = {".pts": formats.read_points, ".pm1": formats.read_points, ".adj": formats.read_adj, ".perm": formats.read_perm}
    with pytest.raises(FormatError):
        reader[path.suffix](path)


def test_bad_fvecs(tmp_path):
    path = tmp_path / "a.fvecs"
    path.write_bytes(np.array([2, 0, 0, 3], dtype="<i4").tobytes())
    with pytest.raises(FormatError):
        formats.read_points(path)


def test_adj_text(fig1_graph):
    assert formats.dumps_adj(fig1_graph) == "5\n0 2 1 3\n1 1 0\n2 2 0 3\n3 2 2 4\n4 2 0 3\n"


@given(seed=st.integers(0, 2**32), n=st.integers(0, 30), density=st.floats(0, 1))
@settings(max_examples=50, deadline=None)
def test_adj_round_trip(tmp_path_factory, seed, n, density):
    r = np.random.default_rng(seed)
    g = DirectedGraph.from_matrix(r.random((n, n)) < density)
    path = tmp_path_factory.mktemp("adj") / "g.adj"
    formats.write_adj(g, path)
    assert formats.read_adj(path) == g


def test_perm_round_trip(tmp_path, fig1_points, fig1_oracle):
    pt = build_permutations(fig1_points, fig1_oracle)
    formats.write_perm(pt, tmp_path / "a.perm")
    back = formats.read_perm(tmp_path / "a.perm")
    assert np.array_equal(back.perm, pt.perm)
    assert np.array_equal(back.rank, pt.rank)


def test_histogram_csv(tmp_path):
    formats.write_histogram_csv(np.array([3, 0, 2]), tmp_path / "h.csv")
    assert (tmp_path / "h.csv").read_text() == "overlap_size,pair_count\n0,3\n1,0\n2,2\n"


def test_ensure_parent(tmp_path):
    target = tmp_path / "x" / "y" / "z.json"
    formats.ensure_parent(target)
    formats.write_json({"a": 1}, target)
    assert target.read_text() == '{\n  "a": 1\n}\n'
