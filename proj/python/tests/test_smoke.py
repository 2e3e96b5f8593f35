import numpy as np
import pytest

import asclust


def t1():
    return asclust.ProblemInstance(np.array([[0.0, 1.0, 5.0]]), [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])


def test_t1_fuses_at_large_lambda():
    r = asclust.solve(t1(), 10.0)
    assert r["certified"]
    assert r["rounds"] == 1
    np.testing.assert_allclose(r["x"], [[2.0, 2.0, 2.0]], atol=1e-12)


def test_two_point_closed_form():
    inst = asclust.ProblemInstance(np.array([[0.0, 4.0]]), [(0, 1, 1.0)])
    r = asclust.solve_full(inst, 1.0, tol=1e-10)
    np.testing.assert_allclose(r["x"], [[1.0, 3.0]], atol=1e-8)


def test_eas_matches_as():
    data, _ = asclust.gen_two_half_moons(60, 0.1, 4)
    inst = asclust.build_knn_graph(data, 5)
    a = asclust.solve(inst, 0.5, mode="as")
    e = asclust.solve(inst, 0.5, mode="eas")
    assert e["rounds"] <= a["rounds"]
    fa = asclust.primal_objective(inst, 0.5, a["x"])
    fe = asclust.primal_objective(inst, 0.5, e["x"])
    assert abs(fa - fe) <= 1e-5 * (1 + abs(fa))
    assert asclust.kkt_residual(inst, 0.5, e["x"], e["y"], e["z"]) <= 1e-6


def test_path_on_half_moons():
    data, arc = asclust.gen_two_half_moons(200, 0.1, 1)
    assert data.shape == (2, 200)
    inst = asclust.build_knn_graph(data, 10)
    path = asclust.solve_path(inst, [10.0, 5.0, 2.0])
    assert len(path) == 3
    assert all(r["certified"] for r in path)
    assert path[0]["num_clusters"] == 2
    assert asclust.label_agreement(path[0]["labels"], arc) >= 0.95
    assert len(asclust.default_lambda_grid()) == 46


def test_errors():
    with pytest.raises(ValueError):
        asclust.ProblemInstance(np.zeros((1, 2)), [(1, 0, 1.0)])
    with pytest.raises(ValueError):
        asclust.build_knn_graph(np.zeros((2, 3)), 3)
    with pytest.raises(ValueError):
        asclust.solve(t1(), 1.0, mode="ssnal")


def test_load_matrix(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("# header comment\n0,1,5\n")
    np.testing.assert_array_equal(asclust.load_matrix(str(p)), [[0.0, 1.0, 5.0]])
    p.write_text("1,2\n3,nan\n")
    with pytest.raises(ValueError, match="line 2"):
        asclust.load_matrix(str(p))
