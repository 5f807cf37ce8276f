import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opradius.errors import CommutationViolated, DomainError, ExponentTooSmall, NonpositiveExponent, NotPSD
from opradius.scalar import (
    FunctionPair,
    TermChain,
    check_commutation,
    kittaneh_fg_chain,
    kittaneh_fg_refined_chain,
    mccarty_chain,
    mccarty_concave_chain,
    mixed_schwarz_chain,
    mixed_schwarz_refined_chain,
    numerical_form_chain,
    power_refined_chain,
    schwarz_refined_chain,
)
from opradius.ensembles import EnsembleSpec, sample

from conftest import D14, E1, E2, H2, J2, U_VEC, random_matrix, random_unit

seeds = st.integers(0, 2 ** 32 - 1)
TOL = 1e-8


def test_term_chain_slacks():
    c = TermChain(("a", "b", "c"), (1.0, 2.0, 1.5), ("<=", ">=", ), "demo")
    assert c.slacks == (1.0, 0.5)
    assert c.worst_slack == 0.5
    bad = TermChain(("a", "b"), (3.0, 1.0), ("<=",), "demo")
    assert bad.worst_slack == -2.0 and not bad.satisfied(1e-8)
    assert TermChain(("a", "b"), (1.0, 1.0 + 1e-12), ("=",), "demo").satisfied(1e-10)
    with pytest.raises(ValueError):
        TermChain(("a",), (1.0, 2.0), ("<=",), "demo")


def test_mccarty_on_d14():
    np.testing.assert_allclose(mccarty_chain(D14, U_VEC, 2).values, (6.25, 6.25, 8.5), atol=1e-12)
    np.testing.assert_allclose(mccarty_chain(D14, U_VEC, 3).values, (15.625, 29.125, 32.5), atol=1e-12)
    c = mccarty_chain(D14, U_VEC, 1)
    np.testing.assert_allclose(c.values, (2.5, 1.0, 2.5), atol=1e-12)
    assert c.relations[0] == ">=" and c.source == "eq3.2"


def test_mccarty_errors():
    with pytest.raises(NonpositiveExponent):
        mccarty_chain(D14, U_VEC, 0)
    with pytest.raises(NotPSD):
        mccarty_chain(-D14, U_VEC, 2)
    with pytest.raises(DomainError):
        mccarty_chain(D14, np.array([1.0, 1.0]), 2)
    with pytest.raises(DomainError):
        mccarty_concave_chain(D14, U_VEC, 1.5)


def test_eigenvector_gives_equality():
    c = mccarty_chain(D14, E2, 3)
    np.testing.assert_allclose(c.values, (64, 64, 64))


def test_schwarz_refined_on_d14():
    np.testing.assert_allclose(schwarz_refined_chain(D14, E1, E2, 2).values, (0, 16, 16), atol=1e-12)
    with pytest.raises(ExponentTooSmall):
        schwarz_refined_chain(D14, E1, E2, 1.5)


def test_mixed_schwarz_on_j2_is_tight():
    c = mixed_schwarz_chain(J2, E2, E1, 0.5)
    np.testing.assert_allclose(c.values, (1, 1), atol=1e-14)
    # 0**0 = 1 convention at the ends of the alpha range
    np.testing.assert_allclose(mixed_schwarz_chain(J2, E2, E1, 0.0).values, (1, 1), atol=1e-14)
    with pytest.raises(DomainError):
        mixed_schwarz_chain(J2, E2, E1, 1.5)


def test_commutation_check():
    assert check_commutation(J2, np.eye(2)) == 0.0
    with pytest.raises(CommutationViolated) as info:
        check_commutation(J2, H2)
    assert info.value.residual > 0.5
    with pytest.raises(CommutationViolated):
        kittaneh_fg_chain(J2, H2, E1, E2, FunctionPair.power(0.5))


def test_custom_function_pair_is_validated():
    ok = FunctionPair.custom(lambda t: np.sqrt(t), lambda t: np.sqrt(t))
    c = kittaneh_fg_chain(J2, np.eye(2), E2, E1, ok)
    assert c.satisfied(TOL)
    bad = FunctionPair.custom(lambda t: t, lambda t: t)
    with pytest.raises(DomainError):
        kittaneh_fg_chain(2 * J2, np.eye(2), E2, E1, bad)
    with pytest.raises(DomainError):
        FunctionPair.power(-0.1)


def test_numerical_form_variants():
    x = U_VEC
    # for normal T, |T| = |T*| and the two readings coincide
    a = numerical_form_chain(H2, x, 2, "canonical").values
    b = numerical_form_chain(H2, x, 2, "as_printed").values
    np.testing.assert_allclose(a, b, atol=1e-12)
    with pytest.raises(DomainError):
        numerical_form_chain(H2, x, 2, "other")


def test_power_refined_variants_agree_on_diagonal():
    rng = np.random.default_rng(3)
    T, S = sample(EnsembleSpec("commuting_pair", 4, seed=9), 0)
    x = random_unit(rng, 4)
    a = power_refined_chain(T, S, x, x, 0.5, 2, "canonical").values
    b = power_refined_chain(T, S, x, x, 0.5, 2, "as_printed").values
    np.testing.assert_allclose(a, b)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6), st.sampled_from([2.0, 2.5, 3.0, 4.0]))
def test_mccarty_chain_holds(seed, n, p):
    rng = np.random.default_rng(seed)
    assert mccarty_chain(random_matrix(rng, n, "psd"), random_unit(rng, n), p).satisfied(TOL)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6), st.sampled_from([0.25, 0.5, 1.0, 1.5]))
def test_mccarty_small_p_holds(seed, n, p):
    rng = np.random.default_rng(seed)
    assert mccarty_chain(random_matrix(rng, n, "psd"), random_unit(rng, n), p).satisfied(TOL)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6))
def test_p2_identity(seed, n):
    rng = np.random.default_rng(seed)
    c = mccarty_chain(random_matrix(rng, n, "psd"), random_unit(rng, n), 2)
    assert abs(c.values[0] - c.values[1]) <= 1e-10 * max(1.0, c.values[2])


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6), st.sampled_from([0.5, 1.0]))
def test_mccarty_concave_holds(seed, n, p):
    rng = np.random.default_rng(seed)
    assert mccarty_concave_chain(random_matrix(rng, n, "psd"), random_unit(rng, n), p).satisfied(TOL)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 6), st.floats(0, 1))
def test_mixed_schwarz_holds(seed, n, alpha):
    rng = np.random.default_rng(seed)
    T = random_matrix(rng, n)
    assert mixed_schwarz_chain(T, random_unit(rng, n), random_unit(rng, n), alpha).satisfied(TOL)


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(1, 6), st.sampled_from([2.0, 3.0]))
def test_refined_schwarz_chains_hold(seed, n, p):
    rng = np.random.default_rng(seed)
    x, y = random_unit(rng, n), random_unit(rng, n)
    assert schwarz_refined_chain(random_matrix(rng, n, "psd"), x, y, p).satisfied(TOL)
    T = random_matrix(rng, n)
    assert mixed_schwarz_refined_chain(T, x, y, p).satisfied(TOL)
    assert numerical_form_chain(T, x, p, "canonical").satisfied(TOL)


@settings(max_examples=80, deadline=None)
@given(seeds, st.sampled_from(["commuting_pair", "commuting_pair_eigenbasis"]), st.sampled_from([0.25, 0.5, 0.75]))
def test_commuting_chains_hold(seed, kind, alpha):
    T, S = sample(EnsembleSpec(kind, 2, seed=seed, max_dim=6), 0)
    rng = np.random.default_rng(seed)
    n = T.shape[0]
    x, y = random_unit(rng, n), random_unit(rng, n)
    fp = FunctionPair.power(alpha)
    assert kittaneh_fg_chain(T, S, x, y, fp).satisfied(TOL)
    assert kittaneh_fg_refined_chain(T, S, x, y, fp, 2.5).satisfied(TOL)
    assert power_refined_chain(T, S, x, y, alpha, 3.0, "canonical").satisfied(TOL)
