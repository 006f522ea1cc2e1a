"""Gamma-function machinery and terminating hypergeometric series.

Every series here is finite: at least one numerator parameter is a
non-positive integer. Terms are generated by forward recurrence on the term
ratio, so no Gamma-function cancellation is involved and nothing overflows
for the parameter ranges used by the rest of the package (indices up to a
few hundred).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import zetac

from .errors import DomainError, NonTerminatingSeriesError

__all__ = [
    "log_gamma",
    "log_factorial",
    "pochhammer",
    "is_nonpositive_integer",
    "hyp2f1_terminating",
    "gauss_2f1_terminating",
    "hyp2f1_coefficients",
    "appell_f1_terminating",
    "bilinear_2f1_residual",
    "bilinear_mixed_2f1_residual",
    "appell_reduction_residual",
    "kernel_appell_arguments",
    "chu_vandermonde_residual",
    "verify_hypergeometric_identities",
]

_EULER_GAMMA = 0.57721566490153286061

# (-1)^k (zeta(k) - 1) / k for k >= 2; lets log Gamma(2 + e) be summed
# without the log(1 + e) cancellation that plagues the plain zeta series.
_ZETA_TERMS = [(-1) ** k * float(zetac(k)) / k for k in range(2, 60)]

# B_{2k} / (2k (2k - 1)) for the Stirling tail.
_STIRLING = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
]
_HALF_LOG_2PI = 0.91893853320467274178


def _lgamma_two_plus(eps):
    # log Gamma(2 + eps), |eps| <= 0.5
    total = 0.0
    power = eps
    for coef in _ZETA_TERMS:
        power *= eps
        term = coef * power
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return eps * (1.0 - _EULER_GAMMA) + total


def _lgamma_stirling(x):
    inv = 1.0 / x
    inv2 = inv * inv
    tail = 0.0
    power = inv
    for coef in _STIRLING:
        tail += coef * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + tail


def log_gamma(x):
    """Natural logarithm of Gamma(x) for real x > 0.

    Accurate to about 1e-15 relative on (0, 200], including the zeros of
    log Gamma at x = 1 and x = 2 where library implementations lose
    relative accuracy.
    """
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    if x <= 1.5:
        return _lgamma_two_plus(x - 1.0) - math.log1p(x - 1.0)
    if x <= 2.5:
        return _lgamma_two_plus(x - 2.0)
    if x < 10.0:
        # shift down into (1.5, 2.5]; every piece is positive, no cancellation
        k = math.ceil(x - 2.5)
        prod = 1.0
        for j in range(1, k + 1):
            prod *= x - j
        return math.log(prod) + _lgamma_two_plus(x - k - 2.0)
    return _lgamma_stirling(x)


def log_factorial(x):
    """log(x!) with x! = Gamma(x + 1); x may be any real > -1."""
    return log_gamma(x + 1.0)


def is_nonpositive_integer(a):
    """True if ``a`` (real or complex) equals 0, -1, -2, ..."""
    a = complex(a)
    return a.imag == 0.0 and a.real <= 0.0 and float(a.real).is_integer()


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1).

    Integer ``a`` gives an exact integer result. A non-positive integer
    ``a`` with ``-a < k`` returns exactly 0.
    """
    if k < 0 or int(k) != k:
        raise DomainError(f"pochhammer order must be a non-negative integer, got {k!r}")
    k = int(k)
    if is_nonpositive_integer(a) and -complex(a).real < k:
        return 0 * a
    result = 1
    for j in range(k):
        result = result * (a + j)
    return result


def _terminating_length(*params):
    """Number of terms of a series whose numerator parameters include ``params``."""
    lengths = [int(-complex(p).real) + 1 for p in params if is_nonpositive_integer(p)]
    if not lengths:
        raise NonTerminatingSeriesError(
            f"no non-positive integer among numerator parameters {params!r}"
        )
    return min(lengths)


def hyp2f1_coefficients(a, b, c):
    """Coefficients of the terminating 2F1(a, b; c; x) as a polynomial in x.

    Returns a list whose k-th entry is (a)_k (b)_k / ((c)_k k!).
    """
    if not c > 0:
        raise DomainError(f"denominator parameter must be > 0, got {c!r}")
    length = _terminating_length(a, b)
    coefs = [1.0]
    for k in range(length - 1):
        coefs.append(coefs[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return coefs


def hyp2f1_terminating(a, b, c, x):
    """Gauss 2F1(a, b; c; x) when ``a`` or ``b`` is a non-positive integer.

    ``x`` may be a scalar or an array (complex allowed). The sum is formed
    term by term, ``t_{k+1} = t_k (a+k)(b+k) x / ((c+k)(k+1))``.
    """
    if not c > 0:
        raise DomainError(f"denominator parameter must be > 0, got {c!r}")
    length = _terminating_length(a, b)
    x = np.asarray(x)
    term = np.ones_like(x, dtype=np.result_type(x, float))
    total = term.copy()
    for k in range(length - 1):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * x
        total = total + term
    return total[()] if total.ndim == 0 else total


gauss_2f1_terminating = hyp2f1_terminating


def appell_f1_terminating(a, b1, b2, c, x, y):
    """Appell F1(a; b1, b2; c; x, y) for a non-positive integer ``a``.

    Double sum over p + q <= -a of
    (a)_{p+q} (b1)_p (b2)_q x^p y^q / ((c)_{p+q} p! q!).
    """
    if not is_nonpositive_integer(a):
        raise NonTerminatingSeriesError(f"F1 needs a non-positive integer a, got {a!r}")
    if not c > 0:
        raise DomainError(f"denominator parameter must be > 0, got {c!r}")
    order = int(-complex(a).real)
    x = np.asarray(x)
    y = np.asarray(y)
    dtype = np.result_type(x, y, float)
    shape = np.broadcast_shapes(x.shape, y.shape)

    # (a)_s / (c)_s
    outer = [1.0]
    for s in range(order):
        outer.append(outer[-1] * (a + s) / (c + s))
    xs = [np.ones(shape, dtype=dtype)]
    ys = [np.ones(shape, dtype=dtype)]
    for p in range(order):
        xs.append(xs[-1] * ((b1 + p) / (p + 1)) * x)
        ys.append(ys[-1] * ((b2 + p) / (p + 1)) * y)

    total = np.zeros(shape, dtype=dtype)
    for s in range(order + 1):
        if outer[s] == 0:
            continue
        inner = np.zeros(shape, dtype=dtype)
        for p in range(s + 1):
            inner = inner + xs[p] * ys[s - p]
        total = total + outer[s] * inner
    return total[()] if total.ndim == 0 else total


# ---------------------------------------------------------------------------
# Generating-function identity verifiers. Each returns |truncated LHS - closed RHS|.


def _rising_series_weights(lam, z, count):
    """(lam)_m z^m / m! for m < count."""
    w = np.empty(count, dtype=complex)
    w[0] = 1.0
    for m in range(1, count):
        w[m] = w[m - 1] * (lam + m - 1) * z / m
    return w


def bilinear_2f1_residual(alpha, beta, b, x, nu, u, M=400):
    """Bilinear generating function of two terminating 2F1 against (1+alpha)_m.

    Sum_m (1+alpha)_m x^m / m! 2F1(-m, beta; 1+alpha; nu) 2F1(-m, b; 1+alpha; u)
    = (1-x)^(beta+b-alpha-1) (1-x+nu x)^(-beta) (1-x+u x)^(-b)
      2F1(beta, b; 1+alpha; x nu u / ((1-x+nu x)(1-x+u x))).

    ``beta`` or ``b`` must be a non-positive integer so the right side is
    a finite sum. The left side is truncated after ``M`` terms.
    """
    weights = _rising_series_weights(1.0 + alpha, x, M)
    lhs = 0j
    for m in range(M):
        if weights[m] == 0:
            break
        lhs += (
            weights[m]
            * hyp2f1_terminating(-m, beta, 1.0 + alpha, nu)
            * hyp2f1_terminating(-m, b, 1.0 + alpha, u)
        )
    d_nu = 1.0 - x + nu * x
    d_u = 1.0 - x + u * x
    rhs = (
        (1.0 - x) ** (beta + b - alpha - 1.0)
        * d_nu ** (-beta)
        * d_u ** (-b)
        * hyp2f1_terminating(beta, b, 1.0 + alpha, x * nu * u / (d_nu * d_u))
    )
    return float(abs(lhs - rhs))


def bilinear_mixed_2f1_residual(lam, mu, nu, alpha, beta, x, y, z, M=400):
    """Bilinear generating function with distinct lower parameters.

    Sum_m (lam)_m z^m / m! 2F1(-m, mu; alpha+1; x) 2F1(-m, nu; beta+1; y)
    = (1-z)^(mu-lam) (1-z+x z)^(-mu) Sum_m (lam)_m (nu)_m / (m! (beta+1)_m)
      (y z / (z-1))^m F1(mu, -m, alpha-lam+1; alpha+1; x/(1-z+xz), xz/(1-z+xz)).

    ``mu`` must be a non-positive integer (finite F1). Both infinite sums are
    truncated after ``M`` terms.
    """
    weights = _rising_series_weights(lam, z, M)
    lhs = 0j
    for m in range(M):
        if weights[m] == 0:
            break
        lhs += (
            weights[m]
            * hyp2f1_terminating(-m, mu, alpha + 1.0, x)
            * hyp2f1_terminating(-m, nu, beta + 1.0, y)
        )
    d = 1.0 - z + x * z
    ratio = y * z / (z - 1.0)
    coef = 1.0 + 0j
    inner = 0j
    for m in range(M):
        if coef == 0:
            break
        inner += coef * appell_f1_terminating(
            mu, -m, alpha - lam + 1.0, alpha + 1.0, x / d, x * z / d
        )
        coef *= (lam + m) * (nu + m) / ((m + 1) * (beta + 1.0 + m)) * ratio
    rhs = (1.0 - z) ** (mu - lam) * d ** (-mu) * inner
    return float(abs(lhs - rhs))


def appell_reduction_residual(n, k, alpha, X, Y):
    """F1(-n, -k, -1; 1+alpha; X, Y) = 2F1(-n,-k;1+alpha;X)
    + n Y / (1+alpha) 2F1(-n+1, -k; 2+alpha; X).

    The residual is relative to max(1, |rhs|): at the kernel arguments |X|
    can reach tens, and the polynomials grow like |X|^min(n, k).
    """
    lhs = appell_f1_terminating(-n, -k, -1, 1.0 + alpha, X, Y)
    rhs = hyp2f1_terminating(-n, -k, 1.0 + alpha, X)
    if n > 0:
        rhs = rhs + n * Y / (1.0 + alpha) * hyp2f1_terminating(-n + 1, -k, 2.0 + alpha, X)
    return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1.0)))


def kernel_appell_arguments(z, w):
    """The two F1 arguments appearing in the closed-form kernel at (z, w)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    v = 1.0 - 1.0 / (z * np.conj(z))
    r = 1.0 - np.conj(w) / np.conj(z)
    return v / r, v * z * np.conj(w) / r


def chu_vandermonde_residual(k, alpha):
    """|2F1(-k, -1; 1+alpha; 1) - (2+alpha)_k / (1+alpha)_k|."""
    lhs = hyp2f1_terminating(-k, -1, 1.0 + alpha, 1.0)
    rhs = pochhammer(2.0 + alpha, k) / pochhammer(1.0 + alpha, k)
    return float(abs(lhs - rhs))


def verify_hypergeometric_identities(
    alpha,
    n=2,
    k=2,
    x=0.3 + 0.1j,
    nu=0.4 - 0.2j,
    u=-0.3 + 0.1j,
    z=0.45 + 0.2j,
    w=-0.25 + 0.35j,
    M=400,
):
    """Residuals of the hypergeometric identities at one parameter set.

    Keys: ``bilinear_power_series`` (both sides reduce to (1-x)^(-alpha-1)),
    ``bilinear`` (beta = b = -n), ``bilinear_mixed`` (the kernel's second-sum instance
    lam = alpha+2, mu = nu = -n, beta = alpha), ``bilinear_mixed_general`` (unrelated
    lower parameters), ``appell_reduction`` (at the kernel arguments for z, w) and
    ``chu_vandermonde``. Thresholds are left to the caller.
    """
    X, Y = kernel_appell_arguments(z, w)
    return {
        "bilinear_power_series": bilinear_2f1_residual(alpha, 0, 0, x, nu, u, M),
        "bilinear": bilinear_2f1_residual(alpha, -n, -n, x, nu, u, M),
        "bilinear_mixed": bilinear_mixed_2f1_residual(alpha + 2.0, -n, -n, alpha, alpha, nu, u, x, M),
        "bilinear_mixed_general": bilinear_mixed_2f1_residual(1.3, -n, 0.7, alpha, alpha + 0.7, nu, u, 0.2 * x / abs(x), M),
        "appell_reduction": appell_reduction_residual(n, k, alpha, X, Y),
        "chu_vandermonde": chu_vandermonde_residual(k, alpha),
    }
