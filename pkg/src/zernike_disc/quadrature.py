"""Exact-degree quadrature on the unit disc against (1 - |z|^2)^alpha dA.

With t = r^2 the disc integral becomes

    int_0^{2 pi} int_0^1 f(sqrt(t) e^{i theta}) (1 - t)^alpha dt/2 dtheta,

so a Gauss-Jacobi rule in t (weight (1 - t)^alpha on [0, 1]) times an
equispaced rule in theta integrates every monomial z^a zbar^b with
a + b <= 2 (2 N_rad - 1) and |a - b| < N_ang exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import DomainError, QuadratureAccuracyWarning, QuadratureError
from .special_functions import log_gamma
from .zernike import check_index, normalization_column, zernike_column

__all__ = [
    "DiscQuadratureRule",
    "gauss_jacobi_rule",
    "disc_rule",
    "rule_for_degree",
    "integrate",
    "inner_product",
    "basis_values",
    "gram_matrix",
    "identity_deviation",
]


def _jacobi_recurrence(N, a, b):
    """Monic Jacobi recurrence on [-1, 1] for weight (1-x)^a (1+x)^b.

    Returns diagonal alpha_k (k < N), off-diagonal sqrt(beta_k) (1 <= k < N)
    and the zeroth moment.
    """
    k = np.arange(N, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(N)
    diag[0] = (b - a) / (a + b + 2.0)
    if N > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))
    off = np.empty(max(N - 1, 0))
    if N > 1:
        off[0] = 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) ** 2 * (a + b + 3.0))
        kk = k[2:]
        ss = s[2:]
        off[1:] = (
            4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss**2 * (ss + 1.0) * (ss - 1.0))
        )
    mu0 = 2.0 ** (a + b + 1.0) * math.exp(
        log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0)
    )
    return diag, np.sqrt(off), mu0


def gauss_jacobi_rule(N, alpha):
    """N-point Gauss rule on [0, 1] for the weight (1 - t)^alpha.

    Exact for polynomials in t of degree <= 2N - 1. Nodes are eigenvalues of
    the Jacobi matrix (Golub-Welsch); weights come from the first components
    of its eigenvectors. Returns ``(nodes, weights)`` with nodes ascending.
    """
    if N < 1 or int(N) != N:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    N = int(N)
    diag, off, mu0 = _jacobi_recurrence(N, float(alpha), 0.0)
    try:
        x, vecs = eigh_tridiagonal(diag, off)
    except LinAlgError as exc:
        raise QuadratureError(f"eigen-solve failed for N={N}, alpha={alpha}") from exc
    weights = mu0 * vecs[0] ** 2
    # [-1, 1] -> [0, 1]: (1 - x)^a dx = 2^(a+1) (1 - t)^a dt
    t = 0.5 * (1.0 + x)
    u = weights / 2.0 ** (alpha + 1.0)
    return t, u


@dataclass(frozen=True)
class DiscQuadratureRule:
    """Tensor rule for int f(z) (1 - |z|^2)^alpha dA over |z| < 1."""

    alpha: float
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    n_ang: int

    @property
    def n_rad(self):
        return len(self.radial_nodes)

    @property
    def exact_degree(self):
        """Largest total degree a + b integrated exactly (given |a - b| < n_ang)."""
        return 2 * (2 * self.n_rad - 1)

    @cached_property
    def nodes(self):
        theta = 2.0 * np.pi * np.arange(self.n_ang) / self.n_ang
        r = np.sqrt(self.radial_nodes)
        return (r[:, None] * np.exp(1j * theta)[None, :]).ravel()

    @cached_property
    def weights(self):
        w = self.radial_weights / 2.0 * (2.0 * np.pi / self.n_ang)
        return np.repeat(w, self.n_ang)

    @cached_property
    def area_weights(self):
        """Weights for plain dA: the measure weight divided out at each node."""
        return self.weights / np.repeat((1.0 - self.radial_nodes) ** self.alpha, self.n_ang)

    def is_exact_for(self, degree, angular_order=None):
        if angular_order is None:
            angular_order = degree
        return degree <= self.exact_degree and angular_order < self.n_ang

    def refined(self):
        """Rule with doubled radial and angular counts (saturation checks)."""
        return disc_rule(2 * self.n_rad, 2 * self.n_ang, self.alpha)


def disc_rule(n_rad, n_ang, alpha):
    """Tensor rule with ``n_rad`` Gauss-Jacobi radii and ``n_ang`` angles."""
    if n_ang < 2:
        raise DomainError("n_ang must be >= 2")
    t, u = gauss_jacobi_rule(n_rad, alpha)
    return DiscQuadratureRule(float(alpha), t, u, int(n_ang))


def rule_for_degree(degree, alpha, angular_order=None):
    """Smallest radial count exact for total ``degree``; angular count
    4 * degree + 4 unless a tighter ``angular_order`` bound is supplied."""
    degree = max(int(math.ceil(degree)), 0)
    n_rad = max(1, math.ceil((degree / 2 + 1) / 2))
    if angular_order is None:
        n_ang = 4 * degree + 4
    else:
        n_ang = int(angular_order) + 1
    return disc_rule(n_rad, max(n_ang, 2), alpha)


def _values_on_nodes(f, rule):
    if callable(f):
        try:
            values = np.asarray(f(rule.nodes))
        except Exception as exc:
            raise QuadratureError(f"integrand evaluation failed on the rule nodes: {exc}") from exc
    else:
        values = np.asarray(f)
    if values.shape != rule.nodes.shape:
        values = np.broadcast_to(values, rule.nodes.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = int(np.flatnonzero(bad)[0])
        raise QuadratureError(
            f"integrand is not finite at node {idx}, z = {rule.nodes[idx]!r}"
        )
    return values


def _measure_weights(rule, measure):
    if measure == "weighted":
        return rule.weights
    if measure == "area":
        return rule.area_weights
    raise ValueError(f"measure must be 'weighted' or 'area', got {measure!r}")


def integrate(f, rule, measure="weighted"):
    """int f dmu with dmu = (1 - |z|^2)^alpha dA (``measure='weighted'``) or dA.

    ``f`` is a callable on complex arrays or an array of node values.
    """
    values = _values_on_nodes(f, rule)
    return np.sum(_measure_weights(rule, measure) * values)


def inner_product(f, g, rule, measure="weighted"):
    """<f|g> = int conj(f) g dmu."""
    fv = _values_on_nodes(f, rule)
    gv = _values_on_nodes(g, rule)
    return np.sum(_measure_weights(rule, measure) * np.conj(fv) * gv)


def basis_values(indices, alpha, z):
    """P_{m,n}^alpha(z) / sqrt(A_alpha(m, n)) for each (m, n) in ``indices``.

    Orthonormal against the weighted measure; the weight itself is left to
    the quadrature rule. Shape ``(len(indices),) + z.shape``.
    """
    z = np.asarray(z, dtype=complex)
    indices = [tuple(check_index(m, n, alpha)[:2]) for m, n in indices]
    out = np.empty((len(indices),) + z.shape, dtype=complex)
    by_n = {}
    for i, (m, n) in enumerate(indices):
        by_n.setdefault(n, []).append((i, m))
    for n, items in by_n.items():
        M = max(m for _, m in items) + 1
        col = zernike_column(M, n, alpha, z)
        norm = np.sqrt(normalization_column(M, n, alpha))
        for i, m in items:
            out[i] = col[m] / norm[m]
    return out


def gram_matrix(indices, alpha, rule=None):
    """Gram matrix G[i, j] = <p_i | p_j> of the normalized basis functions.

    With ``rule=None`` an exact rule is chosen. A rule too small to be exact
    for every product triggers ``QuadratureAccuracyWarning``.
    """
    indices = list(indices)
    degree = 2 * max(m + n for m, n in indices)
    spread = max(m - n for m, n in indices) - min(m - n for m, n in indices)
    if rule is None:
        rule = rule_for_degree(degree, alpha, angular_order=spread)
    elif not rule.is_exact_for(degree, spread):
        warnings.warn(
            f"rule (exact degree {rule.exact_degree}, n_ang {rule.n_ang}) is not exact "
            f"for degree {degree} with angular spread {spread}",
            QuadratureAccuracyWarning,
            stacklevel=2,
        )
    if not np.isclose(rule.alpha, alpha):
        raise ValueError(f"rule built for alpha={rule.alpha}, basis uses alpha={alpha}")
    F = basis_values(indices, alpha, rule.nodes)
    return np.conj(F) @ (rule.weights * F).T


def identity_deviation(G):
    """max |G - I|."""
    G = np.asarray(G)
    return float(np.max(np.abs(G - np.eye(G.shape[0]))))
