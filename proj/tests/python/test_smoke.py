"""End-to-end smoke checks against hand-computed values on a small two-component curve."""

import pytest

import cohsys

T1 = {
    "components": [{"id": 1, "genus": 2}, {"id": 2, "genus": 2}],
    "edges": [[1, 2]],
    "ample_degrees": [1, 1],
}


def t1():
    return cohsys.Curve(T1)


def test_curve_report():
    c = t1()
    assert c.component_count == 2
    assert c.node_count == 1
    assert c.arithmetic_genus == 4
    assert c.chi_structure_sheaf == -3
    rep = c.report()
    assert [comp["weight"] for comp in rep["component_data"]] == ["1/2", "1/2"]


def test_invariants():
    rep = cohsys.invariants(
        t1(),
        {"multirank": [1, 1], "degrees": [2, 1], "gluings": [1], "locally_free": True},
    )
    assert rep["chi"] == 0
    assert rep["wdeg"] == "3"
    assert rep["wrank"] == "1"


def test_bn():
    assert cohsys.bn(t1(), 2, 10, 3) == 16
    assert cohsys.bn(t1(), 1, 10, 3) == 16


def test_alpha_g():
    rep = cohsys.alpha_g(t1(), 2, 10, 3)
    assert rep["alpha_g"] == "64/3"
    assert rep["k_alpha_g"] == "64"


def test_walls_frozen():
    system = {
        "multirank": [1, 1],
        "degrees": [1, 1],
        "gluings": [1],
        "locally_free": True,
        "k": 1,
    }
    rep = cohsys.walls(t1(), system)
    assert rep["candidate_count"] == 20
    assert [w["alpha"] for w in rep["walls"]] == ["0", "1"]
    assert rep["always_destabilizing"]["count"] == 2
    assert rep["everywhere_tied"]["count"] == 2
    assert rep["strongly_unstable"]["count"] == 4
    assert rep["k_alpha_g"] == "10"
    assert rep["stabilizes_beyond_k_alpha_g"] is True


def test_dual_span():
    rep = cohsys.dual_span(
        t1(), {"degrees": [5, 5], "k": 3, "generated": True, "R_zero": [True, True]}
    )
    assert rep["system"]["multirank"] == [2, 2]
    assert rep["chi"] == 4
    assert rep["wdeg"] == "10"
    assert rep["stability_threshold"] == "64"


def test_dims():
    rep = cohsys.dims(t1(), 2, [5, 5])
    assert rep["dim_x"] == 16
    assert rep["dim_product"] == 10
    assert rep["fiber_dim"] == 6
    assert rep["identity_product_fiber"]
    assert rep["identity_grassmann"]
    assert rep["identity_bn_symmetry"]


def test_validation_errors():
    with pytest.raises(cohsys.ValidationError):
        cohsys.Curve({"components": [], "edges": [], "ample_degrees": []})
    with pytest.raises(cohsys.ValidationError):
        cohsys.check(
            t1(),
            {"multirank": [1, 1], "degrees": [1, 1], "gluings": [1], "locally_free": True, "k": 1},
            "-1",
        )


def test_verify_suite():
    rep = cohsys.verify(seed=1, trials=5, suite="bn-identity")
    assert rep["ok"] is True
    assert rep["suites"][0]["name"] == "bn-identity"
    assert rep["suites"][0]["failures"] == 0
