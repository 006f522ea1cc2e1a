"""Normalized basis functions and the reproducing kernels E_n^alpha(z, wbar).

For fixed n and alpha the functions P_{m,n}^alpha / sqrt(A_alpha(m, n)),
m = 0, 1, ..., are orthonormal in L^2((1 - |z|^2)^alpha dA); their closed
span has reproducing kernel

    E_n^alpha(z, wbar) = sum_m P_{m,n}^alpha(z) conj(P_{m,n}^alpha(w)) / A_alpha(m, n).

Throughout, ``kernel(n, alpha, z, w)`` means exactly this sum (first slot
carries P, second slot carries conj(P)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError, DomainError
from .polynomial import ONE_MINUS_ZZBAR, Z, ZBAR, BivariatePolynomial
from .quadrature import _values_on_nodes
from .special_functions import appell_f1_terminating, hyp2f1_terminating, pochhammer
from .zernike import (
    build_zernike,
    check_index,
    normalization,
    normalization_column,
    zernike_column,
)

__all__ = [
    "normalization",
    "normalized_basis_eval",
    "basis_column",
    "KernelValue",
    "certified_cutoff",
    "pair_cutoff",
    "kernel_series",
    "kernel_series_values",
    "kernel_closed",
    "kernel_closed_values",
    "kernel_values",
    "kernel_diagonal",
    "kernel",
    "projection_apply",
    "k_minus_polynomial",
    "k_plus_polynomial",
    "k_ladder_pointwise",
    "k_ladder_residual",
    "CLOSED_MIN_RADIUS",
    "CLOSED_MIN_SEPARATION",
    "DEFAULT_SERIES_TERMS",
    "MAX_SERIES_TERMS",
]

# The closed form divides by zbar, w and 1 - wbar/zbar.
CLOSED_MIN_RADIUS = 1e-3
CLOSED_MIN_SEPARATION = 1e-4
DEFAULT_SERIES_TERMS = 400
MAX_SERIES_TERMS = 5000


def _check_disc(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("points must lie in the open unit disc")
    return z


def _scalar(a):
    return a[()] if isinstance(a, np.ndarray) and a.ndim == 0 else a


def _weight(z, alpha):
    return (1.0 - np.abs(z) ** 2) ** (alpha / 2.0)


def normalized_basis_eval(m, n, alpha, z):
    """A_alpha(m,n)^(-1/2) (1 - |z|^2)^(alpha/2) P_{m,n}^alpha(z)."""
    m, n, alpha = check_index(m, n, alpha)
    z = _check_disc(z)
    value = zernike_column(m + 1, n, alpha, z)[m] * _weight(z, alpha) / math.sqrt(
        normalization(m, n, alpha)
    )
    return _scalar(value)


def basis_column(M, n, alpha, z, weighted=True):
    """Normalized basis values for m < M, shape ``(M,) + z.shape``.

    ``weighted=False`` drops the (1 - |z|^2)^(alpha/2) factor, giving the
    functions that are orthonormal against the weighted measure.
    """
    z = np.asarray(z, dtype=complex)
    vals = zernike_column(M, n, alpha, z) / np.sqrt(normalization_column(M, n, alpha)).reshape(
        (M,) + (1,) * z.ndim
    )
    if weighted:
        vals = vals * _weight(z, alpha)
    return vals


@dataclass(frozen=True)
class KernelValue:
    """Kernel value with the route that produced it.

    ``path`` is one of ``'closed'``, ``'series'`` or ``'diagonal'``. ``tail``
    bounds the truncation error of a series value (None otherwise).
    """

    value: complex
    path: str
    n: int
    alpha: float
    z: complex
    w: complex
    terms: int | None = None
    tail: float | None = None

    def __complex__(self):
        return complex(self.value)


def kernel_diagonal(n, alpha, z):
    """E_n^alpha(z, zbar) = (2n + alpha + 1) / (pi (1 - |z|^2)^(alpha + 2))."""
    _, n, alpha = check_index(0, n, alpha)
    z = _check_disc(z)
    return _scalar((2 * n + alpha + 1.0) / (math.pi * (1.0 - np.abs(z) ** 2) ** (alpha + 2.0)))


def certified_cutoff(n, alpha, radius, rel_tol=1e-14, max_terms=MAX_SERIES_TERMS):
    """Smallest M with sum_{m >= M} |P_{m,n}(r)|^2 / A <= rel_tol * N_n(r).

    The total mass N_n(r) is the closed diagonal value, so the tail is
    measured exactly rather than estimated. |P_{m,n}| depends only on |z|.
    """
    r = float(radius)
    if r == 0.0:
        # P_{m,n}(0) vanishes unless m = n
        return n + 1
    total = kernel_diagonal(n, alpha, r)
    M = 64
    while True:
        M = min(M, max_terms)
        col = basis_column(M, n, alpha, np.array(r), weighted=False)
        partial = np.cumsum(np.abs(col) ** 2)
        ok = np.flatnonzero(total - partial <= rel_tol * total)
        if ok.size:
            return int(ok[0]) + 1
        if M == max_terms:
            raise CutoffError(
                f"series for n={n}, alpha={alpha} at |z|={r} needs more than {max_terms} terms"
            )
        M *= 2


def kernel_series_values(n, alpha, z, w, M=DEFAULT_SERIES_TERMS):
    """Partial sum over m < M of P_{m,n}(z) conj(P_{m,n}(w)) / A(m, n); broadcasts."""
    _, n, alpha = check_index(0, n, alpha)
    z, w = np.broadcast_arrays(np.asarray(z, dtype=complex), np.asarray(w, dtype=complex))
    pz = basis_column(M, n, alpha, z, weighted=False)
    pw = basis_column(M, n, alpha, w, weighted=False)
    return _scalar(np.sum(pz * np.conj(pw), axis=0))


def kernel_series(n, alpha, z, w, M=DEFAULT_SERIES_TERMS):
    """Truncated kernel series at one (z, w) pair.

    The attached tail bound is sqrt(tail(z) tail(w)) by Cauchy-Schwarz, with
    each diagonal tail measured against the closed diagonal value. It bounds
    the truncation only; rounding in the partial sum comes on top.
    """
    _, n, alpha = check_index(0, n, alpha)
    z = complex(z)
    w = complex(w)
    _check_disc(np.array([z, w]))
    pz = basis_column(M, n, alpha, np.array(z), weighted=False)
    pw = basis_column(M, n, alpha, np.array(w), weighted=False)
    value = complex(np.sum(pz * np.conj(pw)))
    tz = max(kernel_diagonal(n, alpha, z) - float(np.sum(np.abs(pz) ** 2)), 0.0)
    tw = max(kernel_diagonal(n, alpha, w) - float(np.sum(np.abs(pw) ** 2)), 0.0)
    return KernelValue(value, "series", n, alpha, z, w, terms=M, tail=math.sqrt(tz * tw))


def _closed_form(n, alpha, z, w):
    """Two-part closed form, kept term for term: n * pref * S1 + (alpha+1) * pref * S2."""
    zb = np.conj(z)
    wb = np.conj(w)
    x = z * wb
    r_z = 1.0 - wb / zb  # 1 - wbar/zbar
    r_w = 1.0 - z / w  # 1 - z/w
    u = 1.0 - 1.0 / (w * wb)
    v = 1.0 - 1.0 / (z * zb)
    pref = (zb * w) ** n * (pochhammer(alpha + 1.0, n) / (math.pi * math.factorial(n)))

    s1 = (
        r_z**n
        * r_w**n
        / (1.0 - x) ** (2 * n + 1 + alpha)
        * hyp2f1_terminating(-n, -n, 1.0 + alpha, x * u * v / (r_z * r_w))
    )

    ratio = x / (x - 1.0)
    inner = np.zeros(np.shape(x), dtype=complex)
    for k in range(n + 1):
        coef = pochhammer(-n, k) * pochhammer(alpha + 2.0, k) / (
            math.factorial(k) * pochhammer(alpha + 1.0, k)
        )
        f1 = appell_f1_terminating(-n, -k, -1, 1.0 + alpha, v / r_z, v * x / r_z)
        inner = inner + coef * u**k * ratio**k * f1
    s2 = (1.0 - x) ** (-n - alpha - 2.0) * r_z**n * inner

    return n * pref * s1 + (alpha + 1.0) * pref * s2


def _needs_series(z, w):
    return (
        (np.abs(z) < CLOSED_MIN_RADIUS)
        | (np.abs(w) < CLOSED_MIN_RADIUS)
        | (np.abs(z - w) < CLOSED_MIN_SEPARATION)
    )


def pair_cutoff(n, alpha, z, w, rel_tol=1e-14):
    """Series cutoff for off-diagonal values at the pairs (z, w).

    The terms P_m(z) conj(P_m(w)) / A_m decay like (|z| |w|)^m, the rate of
    the diagonal series at the geometric-mean radius sqrt(|z| |w|); the
    cutoff certified there is used for every pair. It is exact when either
    point is the origin (only m = n survives) and when z = w.
    """
    rho = float(np.max(np.sqrt(np.abs(np.asarray(z)) * np.abs(np.asarray(w)))))
    return certified_cutoff(n, alpha, rho, rel_tol=rel_tol)


def kernel_closed_values(n, alpha, z, w):
    """Closed-form kernel on broadcast arrays; near-singular entries use the series.

    Entries with |z| or |w| below ``CLOSED_MIN_RADIUS`` or |z - w| below
    ``CLOSED_MIN_SEPARATION`` are summed as a series instead, cut off by
    ``pair_cutoff``.
    """
    _, n, alpha = check_index(0, n, alpha)
    z, w = np.broadcast_arrays(_check_disc(z), _check_disc(w))
    fallback = _needs_series(z, w)
    out = np.empty(z.shape, dtype=complex)
    ok = ~fallback
    if np.any(ok):
        with np.errstate(divide="ignore", invalid="ignore"):
            out[ok] = _closed_form(n, alpha, z[ok], w[ok])
    if np.any(fallback):
        M = pair_cutoff(n, alpha, z[fallback], w[fallback])
        out[fallback] = kernel_series_values(n, alpha, z[fallback], w[fallback], M)
    return _scalar(out)


kernel_values = kernel_closed_values


def kernel_closed(n, alpha, z, w):
    """Closed-form kernel at one (z, w) pair, tagged with the path actually used."""
    _, n, alpha = check_index(0, n, alpha)
    z = complex(z)
    w = complex(w)
    _check_disc(np.array([z, w]))
    if _needs_series(np.array(z), np.array(w)):
        M = pair_cutoff(n, alpha, z, w)
        return kernel_series(n, alpha, z, w, M)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = complex(_closed_form(n, alpha, np.array(z), np.array(w)))
    return KernelValue(value, "closed", n, alpha, z, w)


def kernel(n, alpha, z, w):
    """E_n^alpha(z, wbar): diagonal formula when z == w, otherwise the closed form."""
    z = complex(z)
    w = complex(w)
    if z == w:
        _, n, alpha = check_index(0, n, alpha)
        return KernelValue(complex(kernel_diagonal(n, alpha, z)), "diagonal", n, alpha, z, w)
    return kernel_closed(n, alpha, z, w)


def projection_apply(n, alpha, f, z, rule):
    """[P_n f](z) = int E_n^alpha(z, wbar) f(w) dmu(w) by quadrature over w.

    ``f`` is a callable or node values on ``rule``; ``rule.alpha`` must equal
    ``alpha``. The integrand is not polynomial in w, so the result is exact
    only up to the geometric decay |z|^D of the kernel beyond the rule degree.
    """
    if not np.isclose(rule.alpha, alpha):
        raise ValueError(f"rule built for alpha={rule.alpha}, kernel uses alpha={alpha}")
    fv = _values_on_nodes(f, rule)
    z = np.atleast_1d(_check_disc(z))
    nodes = rule.nodes
    out = np.empty(z.shape, dtype=complex)
    for i, zi in enumerate(z.ravel()):
        e = kernel_closed_values(n, alpha, zi, nodes)
        out.ravel()[i] = np.sum(rule.weights * e * fv)
    return out


# ---------------------------------------------------------------------------
# Index-dependent ladder operators on weighted polynomials W Q, with
# W = (1 - z zbar)^(alpha/2). Each returns Q' such that K (W Q) = W Q'.


def _sqrt_ratio(num, den):
    q = num / den
    return math.sqrt(q) if q >= 0 else cmath.sqrt(q)


def k_minus_polynomial(m, n, alpha, q):
    """K_- at index m: sqrt((m+n+a)/(m+n+1+a)) ((m + a/2) zbar + (1 - z zbar) d/dz).

    The weight is differentiated analytically,
    (1 - z zbar) d/dz W = -(a/2) zbar W.
    """
    if q.is_zero():
        return BivariatePolynomial()
    c = _sqrt_ratio(m + n + alpha, m + n + 1 + alpha)
    body = (m + alpha / 2) * ZBAR * q + ONE_MINUS_ZZBAR * q.d_z() - (alpha / 2) * ZBAR * q
    return c * body


def k_plus_polynomial(m, n, alpha, q):
    """K_+ at index m: sqrt((m+n+2+a)/(m+n+1+a)) ((m + a/2) z - d/dzbar (1 - z zbar) .).

    d/dzbar ((1 - z zbar) W q) = W ((1 - z zbar) dq/dzbar - (1 + a/2) z q).
    """
    if q.is_zero():
        return BivariatePolynomial()
    c = _sqrt_ratio(m + n + 2 + alpha, m + n + 1 + alpha)
    derivative = ONE_MINUS_ZZBAR * q.d_zbar() - (1 + alpha / 2) * Z * q
    body = (m + alpha / 2) * Z * q - derivative
    return c * body


def _weighted_eval(q, alpha, z):
    return q(z) * _weight(z, alpha)


def _ladder_sides(m, n, alpha, direction):
    """Polynomial parts (Q_lhs, Q_rhs) of a ladder identity; both sides carry the weight W."""
    p = build_zernike(m, n, alpha) / math.sqrt(normalization(m, n, alpha))

    def basis(k):
        return build_zernike(k, n, alpha) / math.sqrt(normalization(k, n, alpha))

    if direction in ("-", "minus"):
        lhs = k_minus_polynomial(m, n, alpha, p)
        rhs = math.sqrt(m * (m + alpha)) * basis(m - 1) if m else BivariatePolynomial()
    elif direction in ("+", "plus"):
        lhs = k_plus_polynomial(m, n, alpha, p)
        rhs = math.sqrt((m + 1) * (m + 1 + alpha)) * basis(m + 1)
    elif direction == "commutator":
        up_then_down = k_minus_polynomial(m + 1, n, alpha, k_plus_polynomial(m, n, alpha, p))
        down_then_up = k_plus_polynomial(m - 1, n, alpha, k_minus_polynomial(m, n, alpha, p))
        lhs = up_then_down - down_then_up
        rhs = 2.0 * (m + (1.0 + alpha) / 2.0) * p
    else:
        raise ValueError(f"direction must be '+', '-' or 'commutator', got {direction!r}")
    return lhs, rhs


def k_ladder_pointwise(m, n, alpha, z, direction):
    """Both sides of a ladder identity on normalized basis functions at ``z``.

    ``direction``:
      ``'-'``: K_- p_{m,n} vs sqrt(m (m+a)) p_{m-1,n}
      ``'+'``: K_+ p_{m,n} vs sqrt((m+1)(m+1+a)) p_{m+1,n}
      ``'commutator'``: (K_- K_+ - K_+ K_-) p_{m,n} vs (2m + 1 + a) p_{m,n},
      where every operator uses the index of the function it acts on.
    Returns ``(lhs, rhs)``.
    """
    m, n, alpha = check_index(m, n, alpha)
    z = _check_disc(z)
    lhs, rhs = _ladder_sides(m, n, alpha, direction)
    return _scalar(np.asarray(_weighted_eval(lhs, alpha, z))), _scalar(np.asarray(_weighted_eval(rhs, alpha, z)))


def _term_sum(q, r):
    return sum(abs(c) * r ** (a + b) for (a, b), c in q)


def k_ladder_residual(m, n, alpha, z, direction):
    """max |lhs - rhs| at ``z``, relative to the absolute term sum of the evaluation.

    The denominator W(z) max(sum |q_ab| |z|^(a+b)) over both sides bounds
    what double rounding can reach, so the result is a multiple of eps when
    the identity holds, whatever the cancellation inside the polynomials.
    """
    m, n, alpha = check_index(m, n, alpha)
    z = np.atleast_1d(_check_disc(z))
    lhs, rhs = _ladder_sides(m, n, alpha, direction)
    diff = np.abs(_weighted_eval(lhs, alpha, z) - _weighted_eval(rhs, alpha, z))
    r = np.abs(z)
    scale = _weight(z, alpha).real * np.maximum(_term_sum(lhs, r), _term_sum(rhs, r))
    return float(np.max(diff / np.maximum(scale, np.finfo(float).tiny)))
