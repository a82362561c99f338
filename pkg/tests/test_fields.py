"""Field algebra plus the closed-form tangency residuals used as oracles
throughout the solver tests."""

import numpy as np
import pytest

from crlab import (
    M_NONMINIMAL,
    ModelSpec,
    ONE_NONMINIMAL,
    VectorFieldPoly,
    get_germ,
    linear_diag_field,
    monomial_field,
    surface_point,
    tangency_residual,
)

T_GRID = np.linspace(-0.3, 0.3, 9)
Z2_GRID = np.array([0.2, 0.35 * np.exp(0.7j), 0.5 * np.exp(2.1j), 0.55 * np.exp(-1.3j)])


def _max_residual(model, f):
    T, Z = np.meshgrid(T_GRID, Z2_GRID, indexing="ij")
    return np.max(np.abs(tangency_residual(model, f, T.ravel(), Z.ravel())))


def test_eval_and_algebra():
    f = VectorFieldPoly({(1, 0): 2.0, (0, 1): 1j}, {(0, 2): -1.0})
    h1, h2 = f.eval(0.5 + 0.5j, 0.25j)
    assert h1 == pytest.approx(2 * (0.5 + 0.5j) + 1j * 0.25j)
    assert h2 == pytest.approx(-((0.25j) ** 2))
    g = monomial_field(2, 0, 1, 3.0)
    s = f + g
    assert s.coeffs2[(0, 1)] == 3.0
    assert (2.0 * f).coeffs1[(1, 0)] == 4.0
    assert f.degree_bound == 2
    assert f.max_coefficient() == 2.0


def test_json_round_trip():
    f = VectorFieldPoly({(1, 0): 1 - 2j}, {(0, 3): 0.5j})
    g = VectorFieldPoly.from_json(f.to_json())
    assert g.coeffs1 == f.coeffs1
    assert g.coeffs2 == f.coeffs2


def test_negative_indices_rejected():
    with pytest.raises(ValueError):
        VectorFieldPoly({(-1, 0): 1.0}, {})


@pytest.mark.parametrize("gid", ["p1", "p2", "p3", "control", "counterexample"])
def test_z1_dz1_is_exactly_tangent_on_one_nonminimal(gid):
    model = ModelSpec(ONE_NONMINIMAL, get_germ(gid))
    assert _max_residual(model, monomial_field(1, 1, 0, 1.0)) == 0.0


def test_i_dz1_residual_equals_half_P():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    f = monomial_field(1, 0, 0, 1j)
    T, Z = np.meshgrid(T_GRID, Z2_GRID, indexing="ij")
    r = tangency_residual(model, f, T.ravel(), Z.ravel())
    expected = np.asarray(model.germ(Z.ravel()), dtype=float) / 2.0
    assert np.max(np.abs(r - expected)) < 1e-16


def test_i_z2_dz2_tangent_iff_rotational():
    f = monomial_field(2, 0, 1, 1j)
    rot = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    assert _max_residual(rot, f) < 1e-17
    broken = ModelSpec(ONE_NONMINIMAL, get_germ("p2"))
    assert _max_residual(broken, f) > 1e-3


def test_i_dz2_tangent_iff_tubular():
    f = monomial_field(2, 0, 0, 1j)
    tub = ModelSpec(ONE_NONMINIMAL, get_germ("p3"))
    assert _max_residual(tub, f) == 0.0
    assert _max_residual(ModelSpec(ONE_NONMINIMAL, get_germ("p1")), f) > 1e-3


def test_m2_model_z1_dz1_residual_closed_form():
    # On the m = 2 family the residual of z1 dz1 is -t^2 P(z2) / 2.
    model = ModelSpec(M_NONMINIMAL, get_germ("p1"), m=2)
    f = monomial_field(1, 1, 0, 1.0)
    T, Z = np.meshgrid(T_GRID, Z2_GRID, indexing="ij")
    r = tangency_residual(model, f, T.ravel(), Z.ravel())
    p = np.asarray(model.germ(Z.ravel()), dtype=float)
    expected = -T.ravel() ** 2 * p / 2.0
    assert np.max(np.abs(r - expected)) < 1e-14


def test_m2_model_z1sq_dz1_residual_closed_form():
    # Residual of z1^2 dz1 on the m = 2 family is t^5 P(z2)^3.
    model = ModelSpec(M_NONMINIMAL, get_germ("p1"), m=2)
    f = monomial_field(1, 2, 0, 1.0)
    T, Z = np.meshgrid(T_GRID, Z2_GRID, indexing="ij")
    r = tangency_residual(model, f, T.ravel(), Z.ravel())
    p = np.asarray(model.germ(Z.ravel()), dtype=float)
    expected = T.ravel() ** 5 * p**3
    assert np.max(np.abs(r - expected)) < 1e-14


def test_m2_model_i_z2_dz2_tangent_for_rotational_P():
    model = ModelSpec(M_NONMINIMAL, get_germ("p1"), m=2)
    assert _max_residual(model, monomial_field(2, 0, 1, 1j)) < 1e-17


def test_residual_is_real_linear_in_coefficients():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p2"))
    f = monomial_field(1, 0, 2, 1 + 1j)
    g = monomial_field(2, 1, 1, -2j)
    t, z2 = 0.2, 0.4 + 0.1j
    rf = tangency_residual(model, f, t, z2)
    rg = tangency_residual(model, g, t, z2)
    rsum = tangency_residual(model, f + g, t, z2)
    assert rsum == pytest.approx(rf + rg, abs=1e-16)
    assert tangency_residual(model, 3.0 * f, t, z2) == pytest.approx(3 * rf, abs=1e-16)


def test_residual_against_high_precision_oracle():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    f = VectorFieldPoly({(0, 0): 0.3 - 0.7j, (1, 0): 1.1j}, {(0, 1): 0.4 + 0.2j})
    t, z2 = 0.23, mp.mpc("0.31", "0.17")

    s = mp.sqrt(z2.real**2 + z2.imag**2)
    P = mp.e ** (-1 / s)
    Pw = P * mp.mpf("0.5") * s**-3 * mp.conj(z2)
    z1 = mp.mpc(0, t) - t * P
    g1 = mp.mpf("0.5") - mp.mpc(0, "0.5") * P
    g2 = t * Pw  # Im z1 = t
    h1 = mp.mpc("0.3", "-0.7") + mp.mpc(0, "1.1") * z1
    h2 = mp.mpc("0.4", "0.2") * z2
    oracle = mp.re(g1 * h1 + g2 * h2)

    got = tangency_residual(model, f, t, complex(z2))
    assert abs(float(oracle) - got) < 1e-15


def test_linear_diag_field_structure():
    f = linear_diag_field(1.0, 2.0)
    assert f.coeffs1 == {(1, 0): 1.0 + 0j}
    assert f.coeffs2 == {(0, 1): 2j}
