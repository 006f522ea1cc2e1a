"""Coherent states |z, alpha, n> as truncated coefficient vectors.

In the orthonormal basis e_0, e_1, ... the state at z has coefficients

    c_m = N_n(z)^(-1/2) P_{m,n}^alpha(z) / sqrt(A_alpha(m, n)),

with N_n(z) = (2n + alpha + 1) / (pi (1 - |z|^2)^(alpha + 2)) the exact
diagonal kernel value. The cutoff is chosen so that the mass left out,
1 - sum |c_m|^2, is below a requested epsilon.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureAccuracyWarning
from .kernels import (
    MAX_SERIES_TERMS,
    basis_column,
    certified_cutoff,
    kernel_closed_values,
    kernel_diagonal,
)
from .quadrature import basis_values, rule_for_degree
from .zernike import check_index

__all__ = ["CoherentState", "cs_vector", "cs_overlap", "cs_overlap_series", "resolution_check"]


@dataclass(frozen=True)
class CoherentState:
    """Truncated coherent state; ``tail_mass`` is the norm squared left out."""

    z: complex
    n: int
    alpha: float
    coefficients: np.ndarray
    tail_mass: float

    @property
    def cutoff(self):
        return len(self.coefficients)

    def padded(self, M):
        """Coefficients zero-padded (or truncated) to length M."""
        out = np.zeros(M, dtype=complex)
        k = min(M, self.cutoff)
        out[:k] = self.coefficients[:k]
        return out


def cs_vector(z, n, alpha, epsilon=1e-12, max_cutoff=MAX_SERIES_TERMS, cutoff=None):
    """Coefficient vector of |z, alpha, n>.

    With ``cutoff=None`` the length is the smallest M whose left-out mass is
    at most ``epsilon``; raises ``CutoffError`` beyond ``max_cutoff``.
    """
    _, n, alpha = check_index(0, n, alpha)
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("z must lie in the open unit disc")
    if cutoff is None:
        cutoff = certified_cutoff(n, alpha, abs(z), rel_tol=epsilon, max_terms=max_cutoff)
    coefs = basis_column(int(cutoff), n, alpha, np.array(z), weighted=False)
    coefs = coefs / math.sqrt(kernel_diagonal(n, alpha, z))
    tail = max(1.0 - float(np.sum(np.abs(coefs) ** 2)), 0.0)
    return CoherentState(z, n, alpha, coefs, tail)


def cs_overlap(z, w, n, alpha):
    """<z|w> from the closed-form kernel.

    <z|w> = pi / (2n + alpha + 1) [(1 - |z|^2)(1 - |w|^2)]^((alpha+2)/2)
            * sum_m conj(P_m(z)) P_m(w) / A_m.
    Broadcasts over arrays.
    """
    _, n, alpha = check_index(0, n, alpha)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    pref = math.pi / (2 * n + alpha + 1.0)
    weight = ((1.0 - np.abs(z) ** 2) * (1.0 - np.abs(w) ** 2)) ** ((alpha + 2.0) / 2.0)
    value = pref * weight * kernel_closed_values(n, alpha, w, z)
    return value[()] if isinstance(value, np.ndarray) and value.ndim == 0 else value


def cs_overlap_series(z, w, n, alpha, epsilon=1e-14):
    """<z|w> as the coefficient-vector dot product sum conj(c_m(z)) c_m(w).

    Both vectors use the larger of the two certified cutoffs, so the dropped
    cross terms are bounded by epsilon (Cauchy-Schwarz on the two tails).
    """
    M = max(cs_vector(z, n, alpha, epsilon).cutoff, cs_vector(w, n, alpha, epsilon).cutoff)
    a = cs_vector(z, n, alpha, cutoff=M)
    b = cs_vector(w, n, alpha, cutoff=M)
    return complex(np.vdot(a.coefficients, b.coefficients))


def resolution_check(n, alpha, M, rule=None):
    """max |R - I| for R = int N_n(z) |z><z| dmu on the M x M truncation.

    Entry (m, l) is int P_m conj(P_l) dmu / sqrt(A_m A_l): the N_n factor
    cancels the state normalization, leaving the orthonormality integrals.
    """
    _, n, alpha = check_index(0, n, alpha)
    degree = 2 * (M - 1 + n)
    spread = 2 * (M - 1)
    if rule is None:
        rule = rule_for_degree(degree, alpha, angular_order=spread)
    elif not rule.is_exact_for(degree, spread):
        warnings.warn(
            f"rule (exact degree {rule.exact_degree}, n_ang {rule.n_ang}) is not exact "
            f"for the degree-{degree} resolution integrands",
            QuadratureAccuracyWarning,
            stacklevel=2,
        )
    if not np.isclose(rule.alpha, alpha):
        raise ValueError(f"rule built for alpha={rule.alpha}, states use alpha={alpha}")
    F = basis_values([(m, n) for m in range(M)], alpha, rule.nodes)
    R = F @ (rule.weights * np.conj(F)).T
    return float(np.max(np.abs(R - np.eye(M))))
