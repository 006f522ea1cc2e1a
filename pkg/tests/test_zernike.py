import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import ALPHA_GRID, random_disc
from zernike_disc.errors import DegreeOverflowError, DomainError, PathError
from zernike_disc.kernels import k_ladder_pointwise, k_ladder_residual, normalized_basis_eval
from zernike_disc.polynomial import ONE, Z, ZBAR, BivariatePolynomial
from zernike_disc.zernike import (
    apply_lowering,
    apply_raising,
    build_zernike,
    check_recurrence,
    eval_zernike,
    normalization,
    path_agreement,
    relative_residual,
    wirtinger_derivative,
    zernike_column,
)

alphas = st.sampled_from(ALPHA_GRID) | st.floats(-0.95, 5.0)


def _close_tables(p, q, rel=1e-12):
    return relative_residual(p, q) <= rel


# construction

def test_build_examples():
    for a in ALPHA_GRID:
        assert build_zernike(0, 0, a) == ONE
        assert _close_tables(build_zernike(1, 0, a), Z, 1e-15)
    assert _close_tables(build_zernike(1, 1, 0), 2 * Z * ZBAR - ONE, 1e-15)


def test_degree_bound():
    assert build_zernike(60, 60, 0.5).degree == 120
    with pytest.raises(DegreeOverflowError):
        build_zernike(61, 60, 0.5)


@pytest.mark.parametrize("bad", [(-1, 0, 0.0), (0, 1, -1.0), (1.5, 0, 0.0), (0, 0, -3.0)])
def test_invalid_index(bad):
    with pytest.raises(DomainError):
        build_zernike(*bad)


@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_coefficients_match_rodrigues_form(alpha):
    for m in range(6):
        for n in range(6):
            exact = oracles.rodrigues_coefficients(m, n, alpha)
            table = build_zernike(m, n, alpha)
            assert set(table.coefficients) == set(exact)
            for key, value in exact.items():
                assert abs(table[key] - float(value)) <= 1e-12 * abs(float(value))


@pytest.mark.parametrize("alpha", [0, 1, 3])
def test_coefficients_match_exact_rationals(alpha):
    # the Rodrigues oracle is slow beyond small degree; the exact k-sum expansion covers m, n <= 20
    for m in range(0, 21, 2):
        for n in range(0, 21, 3):
            exact = oracles.k_sum_exact(m, n, alpha)
            table = build_zernike(m, n, alpha)
            assert set(table.coefficients) == set(exact)
            for key, value in exact.items():
                assert abs(table[key] - float(value)) <= 1e-12 * abs(float(value))
    assert oracles.k_sum_exact(4, 3, alpha) == oracles.rodrigues_coefficients(4, 3, alpha)


@given(st.integers(0, 15), st.integers(0, 15), alphas)
def test_monomial_support_and_degree(m, n, alpha):
    p = build_zernike(m, n, alpha)
    assert p.degree == m + n
    for a, b in p.coefficients:
        assert m - a == n - b and 0 <= m - a <= min(m, n)
        assert (a + b) % 2 == (m + n) % 2  # parity


@given(st.integers(0, 15), st.integers(0, 15), alphas)
def test_conjugation_symmetry(m, n, alpha):
    assert build_zernike(n, m, alpha) == build_zernike(m, n, alpha).conjugate()


@given(st.integers(0, 12), st.integers(0, 12), alphas)
def test_parity_pointwise(m, n, alpha):
    z = np.array([0.3 + 0.4j, -0.2 + 0.7j])
    assert np.allclose(eval_zernike(m, n, alpha, -z), (-1) ** (m + n) * eval_zernike(m, n, alpha, z), rtol=1e-12, atol=1e-14)


# evaluation

def test_eval_examples():
    for path in ("j_sum", "k_sum", "hypergeometric"):
        assert eval_zernike(1, 1, 0, 0.5, path=path) == pytest.approx(-0.5, abs=1e-15)
    z = 0.35 - 0.5j
    for m in range(8):
        for path in ("j_sum", "k_sum", "hypergeometric"):
            assert eval_zernike(m, 0, 0.7, z, path=path) == pytest.approx(z**m, rel=1e-14)
    assert eval_zernike(2, 2, 0, 0.0, path="j_sum") == build_zernike(2, 2, 0)[(0, 0)]


def test_eval_errors():
    with pytest.raises(DomainError):
        eval_zernike(1, 1, 0, 1.0)
    with pytest.raises(DomainError):
        eval_zernike(1, 1, 0, np.array([0.1, 0.6 + 0.8j]))
    with pytest.raises(PathError):
        eval_zernike(1, 1, 0, 5e-4, path="hypergeometric")
    with pytest.raises(PathError):
        eval_zernike(1, 1, 0, 0.5, path="rodrigues")


def test_eval_against_jacobi_oracle():
    rng = np.random.default_rng(3)
    z = random_disc(rng, 50, 0.0, 0.9)
    for a in ALPHA_GRID:
        for m in range(12):
            for n in range(12):
                ref = oracles.zernike_jacobi(m, n, a, z)
                got = eval_zernike(m, n, a, z, path="k_sum")
                scale = np.max(np.abs(ref)) + 1e-300
                assert np.max(np.abs(got - ref)) <= 1e-11 * max(scale, 1.0)


def test_path_agreement():
    """The three routes agree to rounding, measured against the absolute term
    sum (plain relative error is meaningless next to zeros of P)."""
    rng = np.random.default_rng(11)
    z = random_disc(rng, 200, 1e-3, 0.95)
    worst = max(
        path_agreement(m, n, a, z) for a in ALPHA_GRID for m in range(21) for n in range(21)
    )
    assert worst <= 1e-12


def test_zernike_column_matches_table():
    z = np.array([0.0, 0.2 + 0.5j, -0.7 + 0.1j])
    for a in (-0.5, 2.0):
        for n in (0, 3):
            col = zernike_column(15, n, a, z)
            for m in range(15):
                ref = eval_zernike(m, n, a, z, path="k_sum")
                assert np.allclose(col[m], ref, rtol=1e-12, atol=1e-14)


# Wirtinger calculus and ladders

def test_wirtinger_examples():
    assert wirtinger_derivative(BivariatePolynomial.monomial(2, 1), "z") == 2 * Z * ZBAR
    assert wirtinger_derivative(BivariatePolynomial.constant(4), "zbar").is_zero()
    assert _close_tables(wirtinger_derivative(build_zernike(1, 1, 0), "z"), 2 * ZBAR, 1e-15)
    with pytest.raises(ValueError):
        wirtinger_derivative(Z, "x")


def test_lowering_examples():
    for a in ALPHA_GRID:
        assert _close_tables(apply_lowering(1, 0, a, build_zernike(1, 0, a)), ONE, 1e-15)
        assert apply_lowering(0, 3, a, build_zernike(0, 3, a)).is_zero(1e-15)
    assert _close_tables(apply_lowering(2, 1, 0, build_zernike(2, 1, 0)), 2 * build_zernike(1, 1, 0))


def test_raising_examples():
    for a in ALPHA_GRID:
        assert _close_tables(apply_raising(0, 0, a, ONE), (1 + a) * Z, 1e-15)
    assert _close_tables(apply_raising(1, 0, 0, Z), 2 * Z * Z, 1e-15)
    # at (0, 1, 0) the factor m + 1 + alpha is 1: the result is P_{1,1}^0 itself
    assert _close_tables(apply_raising(0, 1, 0, build_zernike(0, 1, 0)), build_zernike(1, 1, 0), 1e-15)


def test_raising_needs_the_minus_sign():
    # with + (1 - z zbar) d/dzbar the identity already fails on zbar
    wrong = 1 * Z * ZBAR + (ONE - Z * ZBAR) * ONE
    assert not _close_tables(wrong, build_zernike(1, 1, 0), 1e-3)


@pytest.mark.parametrize("alpha", ALPHA_GRID)
def test_ladder_and_recurrence_sweep(alpha):
    for m in range(16):
        for n in range(16):
            p = build_zernike(m, n, alpha)
            low = apply_lowering(m, n, alpha, p)
            if m:
                assert relative_residual(low, m * build_zernike(m - 1, n, alpha)) <= 1e-12
            else:
                assert low.is_zero()
            up = apply_raising(m, n, alpha, p)
            assert relative_residual(up, (m + 1 + alpha) * build_zernike(m + 1, n, alpha)) <= 1e-12
            if n:
                assert check_recurrence(m, n, alpha) <= 1e-12


def test_recurrence_examples():
    for a in ALPHA_GRID:
        assert check_recurrence(0, 1, a) <= 1e-15
        # P_{1,1}^a = ((a+2) z zbar - 1)/(a+1)
        expected = ((a + 2) * Z * ZBAR - ONE) / (a + 1)
        assert _close_tables(build_zernike(1, 1, a), expected, 1e-15)
    for m in range(11):
        assert check_recurrence(m, 1, 0) <= 1e-12
    with pytest.raises(DomainError):
        check_recurrence(3, 0, 0.5)


def test_exact_coefficients_satisfy_recurrence():
    # exact rational check independent of floating point
    for alpha in (0, 2):
        for m in range(6):
            for n in range(1, 6):
                P = lambda i, j: BivariatePolynomial(oracles.k_sum_exact(i, j, alpha))
                lhs = (m + n + alpha + 1) * Z * P(m, n)
                rhs = (m + 1 + alpha) * P(m + 1, n) + n * P(m, n - 1)
                assert lhs == rhs


# pointwise ladders on normalized basis functions

def test_k_ladder_examples():
    lhs, rhs = k_ladder_pointwise(0, 2, 0.5, 0.3 + 0.1j, "-")
    assert lhs == 0 and rhs == 0
    lhs, rhs = k_ladder_pointwise(1, 0, 0.0, 0.3, "-")
    assert abs(lhs - rhs) <= 1e-12
    z = np.array([0.2 + 0.3j, -0.5j])
    lhs, rhs = k_ladder_pointwise(2, 1, 1.0, z, "commutator")
    assert np.allclose(rhs, 6.0 * normalized_basis_eval(2, 1, 1.0, z), rtol=1e-14)
    assert np.max(np.abs(lhs - rhs)) <= 1e-11 * max(1.0, np.max(np.abs(rhs)))
    with pytest.raises(DomainError):
        k_ladder_pointwise(1, 1, 0.0, 1.2, "+")
    with pytest.raises(ValueError):
        k_ladder_pointwise(1, 1, 0.0, 0.2, "sideways")


@pytest.mark.parametrize("alpha", ALPHA_GRID)
def test_k_ladder_sweep(alpha):
    rng = np.random.default_rng(5)
    z = random_disc(rng, 20, 0.0, 0.9)
    for m in range(12):
        for n in range(8):
            for direction in ("-", "+", "commutator"):
                assert k_ladder_residual(m, n, alpha, z, direction) <= 1e-11


def test_k_ladder_residual_detects_wrong_amplitude():
    # the scaled residual is not so lenient that an O(1) error slips through
    z = np.array([0.3 + 0.2j, -0.6j])
    lhs, rhs = k_ladder_pointwise(3, 2, 0.5, z, "-")
    assert np.allclose(lhs, rhs, rtol=1e-12)
    lhs_bad = 1.001 * lhs
    assert np.max(np.abs(lhs_bad - rhs)) > 1e3 * 1e-11 * np.max(np.abs(rhs))
    assert k_ladder_residual(3, 2, 0.5, z, "-") <= 1e-13


# normalization

def test_normalization_examples():
    assert normalization(0, 0, 0) == pytest.approx(math.pi, rel=1e-15)
    assert normalization(1, 1, 0) == pytest.approx(math.pi / 3, rel=1e-15)
    for a in ALPHA_GRID:
        assert normalization(0, 0, a) == pytest.approx(math.pi / (a + 1), rel=1e-14)


@pytest.mark.parametrize("m,n,alpha", [(0, 0, -0.5), (3, 1, 0.5), (2, 5, 2.0), (6, 6, -0.5), (7, 0, 1.3)])
def test_normalization_against_radial_quadrature(m, n, alpha):
    assert normalization(m, n, alpha) == pytest.approx(oracles.normalization_mp(m, n, alpha), rel=1e-12)


def test_normalization_against_gamma_oracle():
    for a in (-0.9, -0.5, 0.0, 0.5, 2.0, 7.25):
        for m in range(0, 40, 3):
            for n in range(0, 40, 4):
                assert normalization(m, n, a) == pytest.approx(oracles.normalization_gamma(m, n, a), rel=1e-13)
