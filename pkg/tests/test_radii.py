import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opradius.errors import InvalidTolerance
from opradius.radii import (
    level_crossings,
    min_modulus,
    numerical_radius,
    numerical_range_boundary,
    operator_norm,
    spectral_radius,
    support_values,
)

from conftest import D14, H2, J2, N3, Z2, random_matrix
from oracles import grid_numerical_radius, load_matrix

ORACLE = json.loads((Path(__file__).parent / "data" / "oracle_w.json").read_text())
seeds = st.integers(0, 2 ** 32 - 1)


@pytest.mark.parametrize(
    "T, expected",
    [(J2, 0.5), (H2, 3.0), (N3, 2.0), (D14, 4.0), (Z2, 0.0), (np.eye(3), 1.0), (np.array([[3 - 4j]]), 5.0)],
)
def test_numerical_radius_fixtures(T, expected):
    res = numerical_radius(T, 1e-10)
    assert abs(res.value - expected) <= 1e-9
    assert res.certified_tolerance <= 1e-10


def test_other_radii_fixtures():
    assert spectral_radius(J2).value == 0.0
    assert operator_norm(J2).value == pytest.approx(1.0, abs=1e-15)
    assert min_modulus(J2).value == pytest.approx(0.0, abs=1e-15)
    assert min_modulus(D14).value == pytest.approx(1.0, abs=1e-14)
    assert spectral_radius(N3).value == pytest.approx(2.0, abs=1e-14)


def test_min_modulus_of_wide_matrix_is_zero():
    assert min_modulus(np.ones((2, 3))).value == 0.0
    assert min_modulus(np.eye(3)[:, :2]).value == pytest.approx(1.0)


@pytest.mark.parametrize("tol", [0.0, -1e-3, float("nan"), float("inf")])
def test_invalid_tolerance(tol):
    with pytest.raises(InvalidTolerance):
        numerical_radius(H2, tol)


def test_tight_tolerance_on_round_range_terminates():
    # every angle is optimal for J2, so this exercises the level-set certificate
    res = numerical_radius(J2, 1e-12)
    assert abs(res.value - 0.5) <= 1e-12
    assert res.certified_tolerance <= 1e-12
    U = random_matrix(np.random.default_rng(5), 4, "unitary")
    res = numerical_radius(U @ np.kron(J2, np.eye(2)) @ U.conj().T, 1e-12)
    assert abs(res.value - 0.5) <= 1e-11


def test_maximizer_angle_attains_value():
    T = random_matrix(np.random.default_rng(11), 5)
    res = numerical_radius(T, 1e-10)
    assert support_values(T, np.array([res.maximizer_angle]))[0] == pytest.approx(res.value, abs=1e-14)


def test_level_crossings_of_hermitian():
    # g(theta) = 3 cos(theta) for the top branch of H2, so level 1.5 is crossed at +-pi/3
    theta = level_crossings(H2, 1.5)
    np.testing.assert_allclose(theta, [math.pi / 3, 5 * math.pi / 3], atol=1e-8)
    assert level_crossings(H2, 3.5).size == 0


def test_numerical_range_boundary_lies_on_circle_for_j2():
    pts = numerical_range_boundary(J2, 72)
    assert pts.shape == (72,)
    np.testing.assert_allclose(np.abs(pts), 0.5, atol=1e-12)
    with pytest.raises(ValueError):
        numerical_range_boundary(J2, 2)


def test_agrees_with_frozen_grid_oracle():
    for rec in ORACLE["records"]:
        T = load_matrix(rec)
        assert abs(numerical_radius(T, 1e-8).value - rec["w_grid"]) <= 1e-7


def test_grid_oracle_pruning_matches_full_grid():
    T = random_matrix(np.random.default_rng(99), 3)
    thetas = 2 * np.pi * np.arange(20000) / 20000
    full = max(np.linalg.eigvalsh(0.5 * (np.exp(1j * t) * T + np.exp(-1j * t) * T.conj().T))[-1] for t in thetas)
    assert grid_numerical_radius(T, 20000, 200) == full


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 8))
def test_sandwich_and_spectral_radius(seed, n):
    T = random_matrix(np.random.default_rng(seed), n)
    w = numerical_radius(T, 1e-10).value
    nrm = operator_norm(T).value
    assert nrm / 2 - 1e-9 * nrm <= w <= nrm * (1 + 1e-12)
    assert spectral_radius(T).value <= w + 1e-9 * max(1, nrm)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6), st.floats(-5, 5).filter(lambda c: abs(c) > 1e-3), st.floats(0, 2 * math.pi))
def test_homogeneity(seed, n, c, phase):
    T = random_matrix(np.random.default_rng(seed), n)
    z = c * np.exp(1j * phase)
    lhs = numerical_radius(z * T, 1e-10).value
    rhs = abs(z) * numerical_radius(T, 1e-10).value
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, rhs)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6))
def test_unitary_invariance_and_adjoint(seed, n):
    rng = np.random.default_rng(seed)
    T = random_matrix(rng, n)
    U = random_matrix(rng, n, "unitary")
    w = numerical_radius(T, 1e-10).value
    assert abs(numerical_radius(U @ T @ U.conj().T, 1e-10).value - w) <= 1e-9 * max(1, w)
    assert abs(numerical_radius(T.conj().T, 1e-10).value - w) <= 1e-9 * max(1, w)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6))
def test_normal_matrices_have_w_equal_r(seed, n):
    rng = np.random.default_rng(seed)
    U = random_matrix(rng, n, "unitary")
    lam = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    T = (U * lam) @ U.conj().T
    assert abs(numerical_radius(T, 1e-10).value - np.max(np.abs(lam))) <= 1e-9 * max(1, np.max(np.abs(lam)))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 6))
def test_value_is_a_lower_bound_within_certificate(seed, n):
    T = random_matrix(np.random.default_rng(seed), n)
    res = numerical_radius(T, 1e-8)
    dense = support_values(T, np.linspace(0, 2 * np.pi, 20001)).max()
    assert dense <= res.value + res.certified_tolerance + 1e-12
    assert res.value <= numerical_radius(T, 1e-12).value + 1e-12
