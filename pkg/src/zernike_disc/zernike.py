"""2D-Zernike polynomials P_{m,n}^alpha(z, zbar) on the unit disc.

P_{m,n}^alpha has total degree m + n and is orthogonal on |z| < 1 against
(1 - |z|^2)^alpha dA. Three evaluation routes are provided (the j-sum in
monomials, the k-sum in powers of 1 - |z|^2, and the terminating 2F1 form)
together with an exact coefficient table and the ladder/recurrence
structure acting on it.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegreeOverflowError, DomainError, PathError
from .polynomial import ONE_MINUS_ZZBAR, Z, ZBAR, BivariatePolynomial
from .special_functions import hyp2f1_terminating, log_factorial

__all__ = [
    "MAX_DEGREE",
    "HYPERGEOMETRIC_MIN_RADIUS",
    "PATHS",
    "check_index",
    "zernike_coefficients",
    "build_zernike",
    "eval_zernike",
    "zernike_column",
    "term_scale",
    "path_agreement",
    "wirtinger_derivative",
    "apply_lowering",
    "apply_raising",
    "check_recurrence",
    "relative_residual",
    "normalization",
    "normalization_column",
]

MAX_DEGREE = 120
HYPERGEOMETRIC_MIN_RADIUS = 1e-3
PATHS = ("j_sum", "k_sum", "hypergeometric")


def check_index(m, n, alpha):
    if int(m) != m or m < 0 or int(n) != n or n < 0:
        raise DomainError(f"m, n must be non-negative integers, got ({m!r}, {n!r})")
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    return int(m), int(n), float(alpha)


def _check_disc(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("z must lie in the open unit disc")
    return z


def zernike_coefficients(m, n, alpha):
    """c_j, 0 <= j <= min(m, n), with P = sum_j c_j z^(m-j) zbar^(n-j).

    c_j = m! n! a! / ((m+a)! (n+a)!) (-1)^j (m+n+a-j)! / (j! (m-j)! (n-j)!)
    with x! = Gamma(x + 1), computed in log space.
    """
    m, n, alpha = check_index(m, n, alpha)
    # c_j is symmetric in (m, n); a fixed summation order keeps it bitwise so
    m, n = max(m, n), min(m, n)
    lf = log_factorial
    log_pre = lf(m) + lf(n) + lf(alpha) - lf(m + alpha) - lf(n + alpha)
    out = np.empty(min(m, n) + 1)
    for j in range(min(m, n) + 1):
        log_c = log_pre + lf(m + n + alpha - j) - lf(j) - lf(m - j) - lf(n - j)
        out[j] = (-1) ** j * math.exp(log_c)
    return out


def build_zernike(m, n, alpha, max_degree=MAX_DEGREE):
    """P_{m,n}^alpha as an exact monomial table."""
    m, n, alpha = check_index(m, n, alpha)
    if m + n > max_degree:
        raise DegreeOverflowError(
            f"degree m+n = {m + n} exceeds the supported bound {max_degree}"
        )
    coefs = zernike_coefficients(m, n, alpha)
    return BivariatePolynomial({(m - j, n - j): c for j, c in enumerate(coefs)})


def _eval_j_sum(m, n, alpha, z):
    zb = np.conj(z)
    coefs = zernike_coefficients(m, n, alpha)
    total = np.zeros_like(z)
    for j, c in enumerate(coefs):
        total = total + c * z ** (m - j) * zb ** (n - j)
    return total


def _eval_k_sum(m, n, alpha, z):
    zb = np.conj(z)
    s = 1.0 - (z * zb).real
    lf = log_factorial
    log_pre = lf(m) + lf(n) + lf(alpha)
    total = np.zeros_like(z)
    for k in range(min(m, n) + 1):
        c = (-1) ** k * math.exp(log_pre - lf(k) - lf(m - k) - lf(n - k) - lf(k + alpha))
        total = total + c * s**k * z ** (m - k) * zb ** (n - k)
    return total


def _eval_hypergeometric(m, n, alpha, z):
    if np.any(np.abs(z) < HYPERGEOMETRIC_MIN_RADIUS):
        raise PathError(
            f"hypergeometric path needs |z| >= {HYPERGEOMETRIC_MIN_RADIUS} "
            "(its argument 1 - 1/|z|^2 diverges at the origin)"
        )
    zb = np.conj(z)
    arg = 1.0 - 1.0 / (z * zb).real
    return z**m * zb**n * hyp2f1_terminating(-m, -n, alpha + 1.0, arg)


_EVALUATORS = {
    "j_sum": _eval_j_sum,
    "k_sum": _eval_k_sum,
    "hypergeometric": _eval_hypergeometric,
}


def eval_zernike(m, n, alpha, z, path="j_sum"):
    """Evaluate P_{m,n}^alpha at ``z`` (scalar or array) by the chosen route."""
    m, n, alpha = check_index(m, n, alpha)
    try:
        evaluator = _EVALUATORS[path]
    except KeyError:
        raise PathError(f"unknown path {path!r}; choose from {PATHS}") from None
    z = _check_disc(z)
    out = evaluator(m, n, alpha, z)
    return out[()] if out.ndim == 0 else out


def zernike_column(M, n, alpha, z):
    """P_{m,n}^alpha(z) for 0 <= m < M at fixed n; shape ``(M,) + z.shape``.

    Uses the k-sum form with coefficients generated by exact term ratios,

        d_{m,0} = 1,  d_{m,k+1} / d_{m,k} = -(m-k)(n-k) / ((k+1)(k+1+a)),

    which keeps about 12 significant digits even where the monomial j-sum
    cancels catastrophically (m, n ~ 20 near the boundary). Not restricted
    to the disc and not subject to the coefficient-table degree bound.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    _, n, alpha = check_index(0, n, alpha)
    z = np.asarray(z, dtype=complex)
    zb = np.conj(z)
    s = 1.0 - (z * zb).real
    # base[k] = (1 - z zbar)^k zbar^(n-k)
    base = np.empty((n + 1,) + z.shape, dtype=complex)
    zb_pow = np.empty((n + 1,) + z.shape, dtype=complex)
    zb_pow[0] = 1.0
    for k in range(n):
        zb_pow[k + 1] = zb_pow[k] * zb
    s_pow = np.ones(z.shape)
    for k in range(n + 1):
        base[k] = s_pow * zb_pow[n - k]
        s_pow = s_pow * s
    z_pow = np.empty((M,) + z.shape, dtype=complex)
    z_pow[0] = 1.0
    for j in range(1, M):
        z_pow[j] = z_pow[j - 1] * z

    out = np.empty((M,) + z.shape, dtype=complex)
    for m in range(M):
        d = 1.0
        total = base[0] * z_pow[m]
        for k in range(min(m, n)):
            d *= -(m - k) * (n - k) / ((k + 1.0) * (k + 1.0 + alpha))
            total = total + d * base[k + 1] * z_pow[m - k - 1]
        out[m] = total
    return out


def term_scale(m, n, alpha, z):
    """Larger of the absolute term sums of the j-sum and k-sum forms at ``z``.

    Rounding error of either route is a small multiple of eps times this
    scale, so it is the natural denominator when comparing routes.
    """
    m, n, alpha = check_index(m, n, alpha)
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    s = 1.0 - r**2
    lf = log_factorial
    c = np.abs(zernike_coefficients(m, n, alpha))
    j_scale = sum(cj * r ** (m + n - 2 * j) for j, cj in enumerate(c))
    log_pre = lf(m) + lf(n) + lf(alpha)
    k_scale = sum(
        math.exp(log_pre - lf(k) - lf(m - k) - lf(n - k) - lf(k + alpha)) * s**k * r ** (m + n - 2 * k)
        for k in range(min(m, n) + 1)
    )
    return np.maximum(j_scale, k_scale)


def path_agreement(m, n, alpha, z):
    """max over paths of |P_path - P_k_sum| / term_scale at ``z`` (scalar or array).

    The hypergeometric route is included only where |z| allows it.
    """
    m, n, alpha = check_index(m, n, alpha)
    z = np.atleast_1d(_check_disc(z))
    ref = _eval_k_sum(m, n, alpha, z)
    # all terms vanish together (e.g. z = 0 with m + n > 0)
    scale = np.maximum(term_scale(m, n, alpha, z), np.finfo(float).tiny)
    worst = float(np.max(np.abs(_eval_j_sum(m, n, alpha, z) - ref) / scale))
    usable = np.abs(z) >= HYPERGEOMETRIC_MIN_RADIUS
    if np.any(usable):
        hyp = _eval_hypergeometric(m, n, alpha, z[usable])
        worst = max(worst, float(np.max(np.abs(hyp - ref[usable]) / scale[usable])))
    return worst


def wirtinger_derivative(p, direction):
    """d/dz (``direction='z'``) or d/dzbar (``'zbar'``) of a coefficient table."""
    if direction == "z":
        return p.d_z()
    if direction in ("zbar", "z̄"):
        return p.d_zbar()
    raise ValueError(f"direction must be 'z' or 'zbar', got {direction!r}")


def apply_lowering(m, n, alpha, p):
    """(m zbar + (1 - z zbar) d/dz) p.

    On p = P_{m,n}^alpha the result is m P_{m-1,n}^alpha (zero when m = 0).
    """
    m, n, alpha = check_index(m, n, alpha)
    return m * ZBAR * p + ONE_MINUS_ZZBAR * p.d_z()


def apply_raising(m, n, alpha, p):
    """((m + 1 + alpha) z - (1 - z zbar) d/dzbar) p.

    On p = P_{m,n}^alpha the result is (m + 1 + alpha) P_{m+1,n}^alpha.
    The derivative term enters with a minus sign: with a plus sign the
    identity already fails at P_{0,1} = zbar.
    """
    m, n, alpha = check_index(m, n, alpha)
    return (m + 1 + alpha) * Z * p - ONE_MINUS_ZZBAR * p.d_zbar()


def relative_residual(lhs, rhs):
    """Largest coefficient difference, scaled by the largest coefficient of either side.

    Coefficients of P_{m,n}^alpha grow like binomials in m + n, so an
    absolute threshold would only reflect that growth.
    """
    scale = max(
        max((abs(c) for _, c in lhs), default=0.0),
        max((abs(c) for _, c in rhs), default=0.0),
    )
    diff = lhs.max_abs_diff(rhs)
    return float(diff / scale) if scale else float(diff)


def check_recurrence(m, n, alpha):
    """Relative coefficient residual of
    (m+n+a+1) z P_{m,n} = (m+1+a) P_{m+1,n} + n P_{m,n-1}."""
    m, n, alpha = check_index(m, n, alpha)
    if n < 1:
        raise DomainError("the recurrence involves P_{m,n-1}; n must be >= 1")
    lhs = (m + n + alpha + 1) * Z * build_zernike(m, n, alpha)
    rhs = (m + 1 + alpha) * build_zernike(m + 1, n, alpha) + n * build_zernike(m, n - 1, alpha)
    return relative_residual(lhs, rhs)


def normalization(m, n, alpha):
    """A_alpha(m, n) = int |P_{m,n}^alpha|^2 (1 - |z|^2)^alpha dA.

    Equal to pi m! n! a!^2 / ((m+n+a+1) (m+a)! (n+a)!).
    """
    m, n, alpha = check_index(m, n, alpha)
    lf = log_factorial
    log_a = (
        lf(m) + lf(n) + 2.0 * lf(alpha) - lf(m + alpha) - lf(n + alpha) - math.log(m + n + alpha + 1.0)
    )
    return math.pi * math.exp(log_a)


def normalization_column(M, n, alpha):
    """A_alpha(m, n) for 0 <= m < M, by the ratio
    A(m+1)/A(m) = (m+1)(m+n+a+1) / ((m+n+a+2)(m+a+1))."""
    out = np.empty(M)
    out[0] = normalization(0, n, alpha)
    for m in range(M - 1):
        out[m + 1] = out[m] * (m + 1) * (m + n + alpha + 1) / ((m + n + alpha + 2) * (m + alpha + 1))
    return out
