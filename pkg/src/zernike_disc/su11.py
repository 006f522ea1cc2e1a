"""Reference SU(1,1) coherent-state machinery on the disc, for comparison.

Basis p_k(z) = sqrt((2 eta)_k / k!) z^k, ladder operators

    K_+ = z^2 d/dz + 2 eta z,   K_- = d/dz,   K_0 = z d/dz + eta,

with K_+ p_k = sqrt((k+1)(2eta+k)) p_{k+1}, K_- p_k = sqrt(k(2eta+k-1)) p_{k-1},
K_0 p_k = (eta + k) p_k and [K_+, K_-] = -2 K_0.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .polynomial import Z, BivariatePolynomial
from .quantization import commutator, ladder_matrices
from .special_functions import log_gamma
from .zernike import relative_residual

__all__ = [
    "check_eta",
    "su11_basis_coefficient",
    "su11_basis_polynomial",
    "su11_kernel",
    "su11_basis_partial_sums",
    "su11_ladder_matrices",
    "su11_apply_k_plus",
    "su11_apply_k_minus",
    "su11_diffop_check",
    "su11_reconstruction_residual",
    "compare_with_zernike",
]


def check_eta(eta):
    if not eta > 0.5:
        raise DomainError(f"eta must exceed 1/2, got {eta!r}")
    return float(eta)


def su11_basis_coefficient(k, eta):
    """sqrt((2 eta)_k / k!)."""
    eta = check_eta(eta)
    return math.exp(0.5 * (log_gamma(2 * eta + k) - log_gamma(2 * eta) - log_gamma(k + 1.0)))


def su11_basis_polynomial(k, eta):
    return BivariatePolynomial.monomial(k, 0, su11_basis_coefficient(k, eta))


def su11_kernel(z, w, eta):
    """(1 - |z|^2)^eta (1 - wbar z)^(-2 eta) (1 - |w|^2)^eta; broadcasts."""
    eta = check_eta(eta)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(z) >= 1) or np.any(np.abs(w) >= 1):
        raise DomainError("points must lie in the open unit disc")
    value = (
        (1 - np.abs(z) ** 2) ** eta
        * (1 - np.conj(w) * z) ** (-2 * eta)
        * (1 - np.abs(w) ** 2) ** eta
    )
    return value[()] if value.ndim == 0 else value


def su11_basis_partial_sums(z, eta, M):
    """Cumulative sums of |phi_k(z)|^2 = (2eta)_k/k! |z|^(2k) (1 - |z|^2)^(2 eta), k < M."""
    eta = check_eta(eta)
    r2 = abs(complex(z)) ** 2
    if r2 >= 1:
        raise DomainError("z must lie in the open unit disc")
    terms = np.empty(M)
    terms[0] = (1 - r2) ** (2 * eta)
    for k in range(1, M):
        terms[k] = terms[k - 1] * (2 * eta + k - 1) / k * r2
    return np.cumsum(terms)


def su11_ladder_matrices(eta, M):
    """(K_+, K_-, K_0) on the span of p_0 .. p_{M-1}, acting on column vectors."""
    eta = check_eta(eta)
    if M < 2:
        raise ValueError("M must be >= 2")
    k = np.arange(M - 1, dtype=float)
    up = np.sqrt((k + 1) * (2 * eta + k))
    k_plus = np.diag(up, k=-1)
    k_minus = np.diag(up, k=1)
    k_zero = np.diag(eta + np.arange(M, dtype=float))
    return k_plus, k_minus, k_zero


def su11_apply_k_plus(q, eta):
    """(z^2 d/dz + 2 eta z) q."""
    return Z * Z * q.d_z() + 2 * eta * Z * q


def su11_apply_k_minus(q):
    """d/dz q."""
    return q.d_z()


def su11_diffop_check(k, eta, points=None):
    """Coefficient residuals of the differential K_+/K_- against the matrix actions.

    Residuals are relative to the largest coefficient involved. With
    ``points`` the largest pointwise residual is returned as well.
    """
    eta = check_eta(eta)
    p = su11_basis_polynomial(k, eta)
    up_rhs = math.sqrt((k + 1) * (2 * eta + k)) * su11_basis_polynomial(k + 1, eta)
    down_rhs = (
        math.sqrt(k * (2 * eta + k - 1)) * su11_basis_polynomial(k - 1, eta)
        if k
        else BivariatePolynomial()
    )
    up = su11_apply_k_plus(p, eta)
    down = su11_apply_k_minus(p)
    out = {
        "k_plus": relative_residual(up, up_rhs),
        "k_minus": relative_residual(down, down_rhs),
    }
    if points is not None:
        z = np.asarray(points, dtype=complex)
        out["pointwise"] = float(
            max(np.max(np.abs(up(z) - up_rhs(z))), np.max(np.abs(down(z) - down_rhs(z))))
        )
    return out


def su11_reconstruction_residual(k, eta):
    """|sqrt(Gamma(2eta) / (Gamma(2eta+k) k!)) K_+^k p_0 - p_k| in coefficients, relative."""
    eta = check_eta(eta)
    q = BivariatePolynomial.constant(1.0)
    for _ in range(k):
        q = su11_apply_k_plus(q, eta)
    scale = math.exp(0.5 * (log_gamma(2 * eta) - log_gamma(2 * eta + k) - log_gamma(k + 1.0)))
    target = su11_basis_polynomial(k, eta)
    return float((scale * q).max_abs_diff(target) / abs(target[(k, 0)]))


def compare_with_zernike(n, alpha, eta, M):
    """Interior diagonals of [A_z, A_zbar] (Zernike quantization) and [K_+, K_-] (SU(1,1)).

    The Zernike diagonal is bounded and tends to zero; the SU(1,1) diagonal
    is -2(eta + k), unbounded and linear. No choice of (n, alpha, eta) maps
    one onto the other, which the report records.
    """
    eta = check_eta(eta)
    a_z, a_zb = ladder_matrices(n, alpha, M)
    zernike = np.diag(commutator(a_z, a_zb).interior()).real.copy()
    k_plus, k_minus, _ = su11_ladder_matrices(eta, M)
    su11 = np.diag((k_plus @ k_minus - k_minus @ k_plus)[:-1, :-1]).copy()

    steps = np.diff(su11)
    su11_linear = bool(np.allclose(steps, -2.0, rtol=0, atol=1e-12))
    half = len(zernike) // 2
    zernike_decaying = bool(
        np.max(np.abs(zernike)) <= 1.0 and abs(zernike[-1]) < np.max(np.abs(zernike[: max(half, 1)]))
    )
    # a parameter adjustment would need a constant ratio between the diagonals
    ratio = zernike / su11
    related = bool(np.allclose(ratio, ratio[0], rtol=1e-6, atol=0))
    return {
        "n": n,
        "alpha": float(alpha),
        "eta": eta,
        "M": M,
        "zernike_diagonal": zernike.tolist(),
        "su11_diagonal": su11.tolist(),
        "zernike_bounded_decaying": zernike_decaying,
        "su11_linear": su11_linear,
        "su11_slope": float(steps.mean()) if steps.size else float("nan"),
        "related_by_parameter_adjustment": related,
        "summary": (
            "bounded decaying Zernike diagonal vs linearly growing SU(1,1) diagonal; "
            + ("related" if related else "not related")
            + " by parameter adjustment"
        ),
    }
