import math

import pytest

import yamabe_products as yp


def test_dimensional_constants():
    d = yp.dim_data(4)
    assert d.a == pytest.approx(6.0)
    assert d.p == pytest.approx(4.0)
    c = yp.product_constants(3, 3)
    assert c["A"] == pytest.approx(2 * math.sqrt(5), rel=1e-11)
    assert c["B"] == pytest.approx(1.25, rel=1e-11)


def test_cp2_sandwich():
    lo, hi = yp.ah_sandwich(4, 12 * math.sqrt(2) * math.pi)
    assert lo == pytest.approx(24 * math.pi, rel=1e-12)
    assert hi == pytest.approx(4 * math.sqrt(42) * math.pi, rel=1e-12)


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        yp.dim_data(2)
    with pytest.raises(ValueError):
        yp.ah_sandwich(4, -1.0)


def test_ground_state_alpha():
    g = yp.shoot_ground_state(2, 2)
    assert abs(g["alpha"] - 0.41343) < 5e-4
    assert yp.shoot_ground_state(2, 1)["alpha"] == pytest.approx(yp.closed_form_alpha_n1(2), abs=1e-6)


def test_spectrum_second_eigenvalue():
    S2, S1 = yp.ModelManifold.round_sphere(2), yp.ModelManifold.round_sphere(1)
    entries = yp.conformal_laplacian_spectrum(S2, S1, 4.0, 3)
    assert entries[0][0] == pytest.approx(2.0)
    assert entries[1][0] == pytest.approx(4.0)
    assert entries[1][1] == 2


def test_weighted_eigenvalue_constant_weight():
    lam, normalized = yp.generalized_eigenvalue(2.0, 8.0, 4 * math.pi, [1.0] * 256, 6.0, 1)
    assert lam == pytest.approx(2.0, rel=1e-9)
    lam_c, normalized_c = yp.generalized_eigenvalue(2.0, 8.0, 4 * math.pi, [1.7] * 256, 6.0, 1)
    assert normalized_c == pytest.approx(normalized, rel=1e-9)


def test_circle_product_constants():
    pr = yp.circle_product_problem(yp.ModelManifold.round_sphere(2), 100.0)
    first = yp.first_N_yamabe(pr)
    second = yp.second_N_yamabe(pr)
    assert second["value"] >= 2 ** (2 / 3) * first["value"]
    assert second["witness"]["nodal_count"] % 2 == 0
    assert first["value"] <= yp.sphere_yamabe(3) * (1 + 1e-9)


def test_sandwich_sweep_converges():
    r = yp.sandwich_sweep(3)
    assert r["converged"]
    assert r["target"] == pytest.approx(2 ** (2 / 3) * yp.sphere_yamabe(3), rel=1e-11)


def test_tables_reproduce_product_bound():
    rows = {r["name"]: r for r in yp.bound_tables()}
    assert abs(rows["Y^2_{S^2}(S^2 x S^2)"]["lower"] - 84.01080) < 1e-3
