"""Yamabe constants of Riemannian products: closed-form bounds, conformal
Laplacian spectra, Gagliardo-Nirenberg ground states and periodic solutions
of the Yamabe equation on circle factors."""

import json as _json

from . import _core
from ._core import (
    DimData,
    ModelManifold,
    OdeProblem,
    ah_sandwich,
    circle_product_problem,
    closed_form_alpha_n1,
    conformal_laplacian_eigenvalue,
    conformal_laplacian_spectrum,
    dim_data,
    generalized_eigenvalue,
    geometric_grid,
    sphere_volume,
    sphere_yamabe,
    y_rn_formula,
)

__all__ = [
    "DimData",
    "ModelManifold",
    "OdeProblem",
    "ah_sandwich",
    "circle_product_problem",
    "closed_form_alpha_n1",
    "conformal_laplacian_eigenvalue",
    "conformal_laplacian_spectrum",
    "dim_data",
    "first_N_yamabe",
    "generalized_eigenvalue",
    "geometric_grid",
    "invariant_lower_bound",
    "nodal_solutions",
    "bound_tables",
    "positive_solutions",
    "product_constants",
    "run_check_suite",
    "sandwich_sweep",
    "second_N_yamabe",
    "shoot_ground_state",
    "sphere_volume",
    "sphere_yamabe",
    "strict_upper_check",
    "y2n_limit_sweep",
    "y_rn_formula",
]


def product_constants(m, n):
    return _json.loads(_core._product_constants(m, n))


def invariant_lower_bound(case, m=0, n=0, yamabe_M=0.0, volume_M=0.0):
    return _json.loads(_core._invariant_lower_bound(case, m, n, yamabe_M, volume_M))


def shoot_ground_state(m, n, profile=False):
    return _json.loads(_core._shoot_ground_state(m, n, profile))


def positive_solutions(problem, j_max=8, profile=False, points=4096):
    return _json.loads(_core._positive_solutions(problem, j_max, profile, points))


def nodal_solutions(problem, j_max=8, profile=False, points=4096):
    return _json.loads(_core._nodal_solutions(problem, j_max, profile, points))


def first_N_yamabe(problem, j_max=8):
    return _json.loads(_core._first_N_yamabe(problem, j_max))


def second_N_yamabe(problem, j_max=8):
    return _json.loads(_core._second_N_yamabe(problem, j_max))


def sandwich_sweep(m, t_grid=None):
    return _json.loads(_core._sandwich_sweep(m, t_grid or geometric_grid(1.0, 1e4, 16)))


def y2n_limit_sweep(M, t_grid=None):
    return _json.loads(_core._y2n_limit_sweep(M, t_grid or geometric_grid(1.0, 1e4, 16)))


def strict_upper_check(m, t_grid=None):
    return _json.loads(_core._strict_upper_check(m, t_grid or geometric_grid(1.0, 1e4, 16)))


def bound_tables(use_printed_alpha=True):
    return _json.loads(_core._bound_tables(use_printed_alpha))


def run_check_suite(seed=20240607):
    return _json.loads(_core._run_check_suite(seed))
