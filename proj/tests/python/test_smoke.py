import pytest

import celestial_walk as cw

SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def two_triangles():
    return cw.Mesh(SQUARE, [[0, 1, 2], [0, 2, 3]])


def test_two_triangle_square():
    m = two_triangles()
    assert (m.num_vertices, m.num_halfedges, m.num_faces) == (4, 10, 3)
    assert m.outer_face == 2
    assert m.validate() == []
    assert m.faces()[:2] == [[0, 1, 2], [0, 2, 3]]


def test_every_walk_locates_the_upper_triangle():
    m = two_triangles()
    for walk in ["celestial", "celestial-memo", "abstract-first", "abstract-greedy", "visibility", "straight"]:
        r = cw.locate(m, (0.2, 0.8), start=0, walk=walk)
        assert r["kind"] == "Located"
        assert r["face"] == 1
        assert r["visited_faces"] == [0, 1]


def test_outside_and_errors():
    m = two_triangles()
    assert cw.locate(m, (3.0, 0.5))["kind"] == "Outside"
    with pytest.raises(ValueError):
        cw.locate(m, (0.5, 0.5), walk="teleport")
    with pytest.raises(ValueError):
        cw.Mesh(SQUARE, [[0, 3, 2, 1]])


def test_orient():
    assert cw.orient((0, 0), (2, 0), (1, 1)) == 1
    assert cw.orient((0, 0), (2, 0), (1, -3)) == -1
    assert cw.orient((0, 0), (1, 1), (2, 2)) == 0


def test_generators_and_batch():
    m = cw.random_flipped(300, 300, 4)
    assert m.validate() == []
    report = cw.run_batch(m, ["celestial", "straight"], queries=100, seed=2, threads=2)
    assert set(report) == {"celestial", "straight"}
    assert report["celestial"]["failures"] == 0
    assert report == cw.run_batch(m, ["celestial", "straight"], queries=100, seed=2, threads=1)
    assert cw.obtuse_fraction(cw.hex_grid(5, 5)) == 1.0
    assert cw.obtuse_fraction(cw.random_delaunay(200, 1)) <= 1.0 / 3.0
    closed = cw.close_convex_hull(cw.hex_grid(6, 6))
    assert closed.validate() == []


def test_scaling():
    rows, exponent = cw.scaling_experiment([100, 400, 1600], queries=50, seed=3)
    assert [n for n, _ in rows] == [100, 400, 1600]
    assert 0.2 < exponent < 0.8


def test_save_and_load(tmp_path):
    m = cw.chord_split_subdivision(20, 5)
    path = tmp_path / "mesh.json"
    m.save(str(path))
    back = cw.Mesh.load(str(path))
    assert back.faces() == m.faces()
    assert back.vertices() == m.vertices()
