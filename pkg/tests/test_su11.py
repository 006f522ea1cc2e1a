import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_disc
from zernike_disc.errors import DomainError
from zernike_disc.su11 import (
    check_eta,
    compare_with_zernike,
    su11_apply_k_minus,
    su11_basis_coefficient,
    su11_basis_partial_sums,
    su11_basis_polynomial,
    su11_diffop_check,
    su11_kernel,
    su11_ladder_matrices,
    su11_reconstruction_residual,
)

ETA_GRID = (0.75, 1.0, 2.0)


@pytest.fixture(params=ETA_GRID, ids=lambda e: f"eta={e}")
def eta(request):
    return request.param


def test_check_eta():
    assert check_eta(0.75) == 0.75
    for bad in (0.5, 0.25, -1.0, float("nan")):
        with pytest.raises(DomainError):
            check_eta(bad)


def test_basis_coefficient(eta):
    assert su11_basis_coefficient(0, eta) == pytest.approx(1.0, rel=1e-15)
    assert su11_basis_coefficient(1, eta) == pytest.approx(math.sqrt(2 * eta), rel=1e-14)
    for k in range(1, 30):
        ref = math.sqrt(math.gamma(2 * eta + k) / (math.gamma(2 * eta) * math.factorial(k)))
        assert su11_basis_coefficient(k, eta) == pytest.approx(ref, rel=1e-13)


def test_kernel_examples(eta):
    assert su11_kernel(0.0, 0.0, eta) == pytest.approx(1.0, abs=1e-15)
    rng = np.random.default_rng(5)
    z = random_disc(rng, 50, 0.0, 0.95)
    assert np.max(np.abs(su11_kernel(z, z, eta) - 1)) <= 1e-14
    with pytest.raises(DomainError):
        su11_kernel(1.0, 0.2, eta)
    with pytest.raises(DomainError):
        su11_kernel(0.1, 0.5, 0.5)


disc_points = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0.0, 0.97),
    st.floats(0, 2 * math.pi),
)


@given(disc_points, disc_points, st.sampled_from(ETA_GRID))
def test_kernel_bounded_and_hermitian(z, w, eta):
    k = su11_kernel(z, w, eta)
    assert abs(k) <= 1 + 1e-12
    assert abs(k - np.conj(su11_kernel(w, z, eta))) <= 1e-12


def test_kernel_matches_basis_series(eta):
    # the normalized kernel is sum_k phi_k(z) conj(phi_k(w)) with phi_k = (1 - |z|^2)^eta p_k
    z, w = 0.3 + 0.2j, -0.4 + 0.1j
    k = np.arange(200)
    coef = np.array([su11_basis_coefficient(j, eta) for j in k])
    series = (1 - abs(z) ** 2) ** eta * (1 - abs(w) ** 2) ** eta * np.sum(coef**2 * (z * np.conj(w)) ** k)
    assert su11_kernel(z, w, eta) == pytest.approx(series, abs=1e-14)


def test_ladder_matrices(eta):
    k_plus, k_minus, k_zero = su11_ladder_matrices(eta, 12)
    assert k_plus[1, 0] == pytest.approx(math.sqrt(2 * eta), rel=1e-15)
    assert np.allclose(np.diag(k_zero), eta + np.arange(12), rtol=1e-15)
    assert np.array_equal(k_minus, k_plus.T)
    comm = (k_plus @ k_minus - k_minus @ k_plus)[:-1, :-1]
    assert np.max(np.abs(comm - np.diag(-2 * (eta + np.arange(11))))) <= 1e-12
    with pytest.raises(ValueError):
        su11_ladder_matrices(eta, 1)


def test_diffop_examples(eta):
    assert su11_apply_k_minus(su11_basis_polynomial(0, eta)).is_zero()
    p1 = su11_apply_k_minus(su11_basis_polynomial(1, eta))
    assert p1[(0, 0)] == pytest.approx(math.sqrt(2 * eta), rel=1e-15)
    rng = np.random.default_rng(9)
    pts = random_disc(rng, 20, 0.0, 0.9)
    for k in range(16):
        rep = su11_diffop_check(k, eta, pts)
        assert rep["k_plus"] <= 1e-14 and rep["k_minus"] <= 1e-14
        assert rep["pointwise"] <= 1e-12 * su11_basis_coefficient(k + 1, eta) * (k + 1 + 2 * eta)


def test_reconstruction(eta):
    for k in range(16):
        assert su11_reconstruction_residual(k, eta) <= 1e-13


def _certified_cutoff(z, eta, tol):
    # after k >= 2 eta - 1 the term ratio (2 eta + k - 1) r^2 / k decreases,
    # so the tail is bounded by a geometric series with the current ratio
    r2 = abs(z) ** 2
    term, k = (1 - r2) ** (2 * eta), 0
    while True:
        k += 1
        ratio = (2 * eta + k - 1) / k * r2
        term *= ratio
        nxt = (2 * eta + k) / (k + 1) * r2
        if k >= 2 * eta - 1 and nxt < 1 and term / (1 - nxt) <= tol:
            return k + 1


def test_partial_sums(eta):
    rng = np.random.default_rng(13)
    for z in random_disc(rng, 40, 0.0, 0.7):
        M = _certified_cutoff(z, eta, 1e-12)
        sums = su11_basis_partial_sums(z, eta, M)
        assert np.all(np.diff(sums) >= 0)
        assert abs(sums[-1] - 1) <= 1e-10
    with pytest.raises(DomainError):
        su11_basis_partial_sums(1.0, eta, 5)


def test_compare_with_zernike(eta):
    for n, alpha in [(0, 0.0), (2, 0.5), (1, -0.5)]:
        rep = compare_with_zernike(n, alpha, eta, 16)
        assert rep["summary"].endswith("not related by parameter adjustment")
        assert rep["zernike_bounded_decaying"] and rep["su11_linear"]
        assert not rep["related_by_parameter_adjustment"]
        assert rep["su11_slope"] == pytest.approx(-2.0, abs=1e-12)
        assert rep["su11_diagonal"][0] == pytest.approx(-2 * eta, rel=1e-14)
        assert len(rep["zernike_diagonal"]) == len(rep["su11_diagonal"]) == 15
