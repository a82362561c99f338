import json

import numpy as np
import pytest

from crlab import (
    ConfigurationError,
    M_NONMINIMAL,
    ModelSpec,
    ONE_NONMINIMAL,
    ParameterError,
    SampleGrid,
    assemble,
    default_grid,
    get_germ,
    monomial_field,
    nullspace,
    solve_model,
    validation_grid,
    validation_residual,
)
from crlab.autsolve import field_from_vector, vector_from_field


def test_grid_rejects_origin_in_z2():
    with pytest.raises(ParameterError):
        SampleGrid(t_values=(0.0, 0.1), z2_values=(0.0j, 0.3))


def test_default_and_validation_grids_are_disjoint():
    g, v = default_grid(), validation_grid()
    assert set(g.t_values).isdisjoint(set(v.t_values))
    assert set(g.z2_values).isdisjoint(set(v.z2_values))
    assert g.n >= 1500


def test_assemble_shapes_and_normalization():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    sys5 = assemble(model, N=5)
    # degrees 0..5 minus the constant monomial, re+im, two components
    assert sys5.n_unknowns == 2 * 2 * (21 - 1)
    assert sys5.matrix.shape == (default_grid().n, sys5.n_unknowns)
    row_max = np.max(np.abs(sys5.matrix), axis=1)
    assert np.allclose(row_max[row_max > 0], 1.0)


def test_assemble_requires_oversampling():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    tiny = SampleGrid(t_values=(0.0, 0.1), z2_values=(0.3, 0.4))
    with pytest.raises(ConfigurationError):
        assemble(model, N=5, grid=tiny)


def test_vector_field_round_trip_through_columns():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    system = assemble(model, N=3)
    f = monomial_field(1, 1, 0, 2.0 - 1.0j) + monomial_field(2, 0, 2, 0.5j)
    x = vector_from_field(f, system.columns)
    assert x is not None
    g = field_from_vector(x, system.columns)
    assert g.coeffs1 == f.coeffs1
    assert g.coeffs2 == f.coeffs2
    # a monomial beyond the jet order has no column
    assert vector_from_field(monomial_field(1, 9, 0, 1.0), system.columns) is None


def test_nullspace_finds_two_dimensional_algebra_for_p1():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    basis = nullspace(assemble(model, N=5))
    assert basis.dimension == 2
    assert basis.gap >= 1e3
    assert basis.status == "confident"
    assert all(r < 1e-12 for r in basis.validation_residuals)


def test_nontangent_direction_has_large_residual():
    # i z1 dz1 solves the homogeneous-looking equation only at P = 0;
    # the certificate must reject it.
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    r = validation_residual(model, monomial_field(1, 1, 0, 1j))
    assert r > 1e-3


def test_solve_model_labels_p1():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    basis, report = solve_model(model)
    assert basis.labels == ["z1 dz1", "i z2 dz2"]
    assert report["dimension"] == 2
    assert report["labels"] == basis.labels
    assert all(p < 1e-6 for p in report["projection_residuals"])


def test_solve_model_m_family():
    model = ModelSpec(M_NONMINIMAL, get_germ("p1"), m=2)
    basis, _ = solve_model(model)
    assert basis.labels == ["i z2 dz2"]
    assert basis.confident


def test_origin_constraint_cuts_translation():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p3"))
    free, _ = solve_model(model, vanish_at_origin=False)
    fixed, _ = solve_model(model, vanish_at_origin=True)
    assert free.dimension == 2 and "i dz2" in free.labels
    assert fixed.dimension == 1 and fixed.labels == ["z1 dz1"]


def test_report_is_json_serializable_and_deterministic():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p2"))
    _, r1 = solve_model(model)
    _, r2 = solve_model(model)
    s1 = json.dumps(r1, sort_keys=True)
    s2 = json.dumps(r2, sort_keys=True)
    assert s1 == s2


def test_tau_validation():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    system = assemble(model, N=2)
    with pytest.raises(ParameterError):
        nullspace(system, tau=0.0)
    with pytest.raises(ParameterError):
        assemble(model, N=0)
