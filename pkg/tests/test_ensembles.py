import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opradius.ensembles import EnsembleSpec, generator, sample
from opradius.errors import InvalidSpec
from opradius.linalg import BlockMatrix, abs_operator

seeds = st.integers(0, 2 ** 64 - 1)


def test_draws_are_pure_functions_of_seed_and_index():
    spec = EnsembleSpec("ginibre", 2, seed=42, max_dim=6)
    a = [sample(spec, i) for i in range(5)]
    b = [sample(spec, i) for i in reversed(range(5))][::-1]
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)
    assert not np.array_equal(sample(spec, 0), sample(EnsembleSpec("ginibre", 2, seed=43, max_dim=6), 0))


def test_streams_are_disjoint():
    x = generator(1, 0, 0).standard_normal(4)
    y = generator(1, 0, 1).standard_normal(4)
    z = generator(1, 1, 0).standard_normal(4)
    assert not np.array_equal(x, y) and not np.array_equal(x, z)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "wishart", "dim": 2},
        {"kind": "ginibre", "dim": 0},
        {"kind": "ginibre", "dim": 2, "scale": -1.0},
        {"kind": "ginibre", "dim": 2, "seed": -1},
        {"kind": "ginibre", "dim": 4, "max_dim": 2},
        {"kind": "block", "dim": 2},
        {"kind": "block", "dim": 2, "grid": 2, "block_kind": "unitary"},
        {"kind": "block", "dim": 2, "grid": 2, "block_dims": (1,)},
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpec):
        EnsembleSpec(**kwargs)


def test_spec_round_trip():
    spec = EnsembleSpec("block", 3, 2.0, 5, grid=2, block_dims=(1, 3))
    assert EnsembleSpec.from_obj(spec.to_obj()) == spec
    with pytest.raises(InvalidSpec):
        EnsembleSpec.from_obj({"kind": "ginibre", "dim": 2, "colour": "red"})


def test_kind_shapes_and_structure():
    assert sample(EnsembleSpec("psd", 4, seed=1), 0).shape == (4, 4)
    assert np.linalg.eigvalsh(sample(EnsembleSpec("psd", 4, seed=1), 0))[0] >= -1e-12
    H = sample(EnsembleSpec("hermitian", 3, seed=1), 0)
    np.testing.assert_array_equal(H, H.conj().T)
    U = sample(EnsembleSpec("unitary", 5, seed=2), 3)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-13)
    N = sample(EnsembleSpec("normal", 4, seed=3), 0)
    np.testing.assert_allclose(N @ N.conj().T, N.conj().T @ N, atol=1e-12)
    v = sample(EnsembleSpec("unit_vector", 6, seed=4), 0)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    A = sample(EnsembleSpec("block", 4, seed=5, grid=3), 0)
    assert isinstance(A, BlockMatrix) and A.grid == (3, 3)
    assert max(A.row_dims) <= 4
    A = sample(EnsembleSpec("block", 4, seed=5, grid=2, block_dims=(2, 3)), 0)
    assert A.row_dims == (2, 3)


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(0, 10 ** 6), st.sampled_from(["commuting_pair", "commuting_pair_eigenbasis"]))
def test_commuting_pairs_satisfy_hypothesis(seed, index, kind):
    T, S = sample(EnsembleSpec(kind, 1, seed=seed, max_dim=8), index)
    np.testing.assert_array_equal(S, S.conj().T)
    aT = abs_operator(T)
    res = np.linalg.norm(aT @ S - S.conj().T @ aT, 2)
    assert res <= 1e-9 * max(1.0, np.linalg.norm(T, 2) * np.linalg.norm(S, 2))


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6), st.integers(0, 6))
def test_dimension_range_is_respected(seed, lo, extra):
    spec = EnsembleSpec("ginibre", lo, seed=seed, max_dim=lo + extra)
    n = sample(spec, 0).shape[0]
    assert lo <= n <= lo + extra
