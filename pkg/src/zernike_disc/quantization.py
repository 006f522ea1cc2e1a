"""Coherent-state quantization f -> A_f on the truncated basis e_0 .. e_{M-1}.

Matrix elements are

    A_f[m, l] = int f P_{m,n}^alpha conj(P_{l,n}^alpha) dmu / sqrt(A_alpha(m,n) A_alpha(l,n)),

so A_z has the single superdiagonal C(m) and A_zbar the subdiagonal, with

    C(m) = sqrt((m+1)(m+alpha+1) / ((m+n+alpha+2)(m+n+alpha+1))).

Finite sections of shift operators are exact except at the boundary: any
product of ladder matrices is wrong in its last row and column, so
commutator and Hamiltonian checks use the interior block.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coherent_states import cs_vector
from .errors import MetadataMismatchError, QuadratureAccuracyWarning, TruncationWarning
from .kernels import (
    certified_cutoff,
    k_minus_polynomial,
    k_plus_polynomial,
    kernel_closed_values,
    normalized_basis_eval,
)
from .observable import as_observable
from .quadrature import basis_values, integrate, rule_for_degree
from .polynomial import ONE_MINUS_ZZBAR, ZBAR
from .zernike import build_zernike, check_index, normalization

__all__ = [
    "OperatorMatrix",
    "SATURATION_TOLERANCE",
    "NONPOLYNOMIAL_DEGREE",
    "ladder_coefficient",
    "ladder_matrices",
    "quantize_observable",
    "commutator",
    "commutator_diagonal",
    "position_momentum_hamiltonian",
    "hamiltonian_diagonal",
    "lower_symbol",
    "berezin_rule",
    "berezin_transform",
    "berezin_weighted_bergman",
    "berezin_standard_disc",
    "diffop_upper_symbol_check",
    "adjoint_matrix_elements",
]

SATURATION_TOLERANCE = 1e-9
# extra polynomial degree budgeted for a non-polynomial observable
NONPOLYNOMIAL_DEGREE = 24


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """M x M matrix on the basis e_0 .. e_{M-1} of fixed (n, alpha).

    ``boundary_exact`` is False for products of ladder matrices, whose last
    row and column carry truncation error.
    """

    entries: np.ndarray
    n: int
    alpha: float
    provenance: str
    boundary_exact: bool = True

    @property
    def M(self):
        return self.entries.shape[0]

    def interior(self):
        """Block free of truncation effects."""
        return self.entries if self.boundary_exact else self.entries[:-1, :-1]

    def hermitian_deviation(self):
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def _check(self, other):
        if not isinstance(other, OperatorMatrix):
            raise TypeError("expected an OperatorMatrix")
        if (self.n, self.M) != (other.n, other.M) or not math.isclose(self.alpha, other.alpha):
            raise MetadataMismatchError(
                f"bases differ: (n={self.n}, alpha={self.alpha}, M={self.M}) vs "
                f"(n={other.n}, alpha={other.alpha}, M={other.M})"
            )

    def _derived(self, entries, other=None, boundary_exact=None):
        prov = self.provenance
        exact = self.boundary_exact
        if other is not None:
            if other.provenance != prov:
                prov = "mixed"
            exact = exact and other.boundary_exact
        if boundary_exact is not None:
            exact = exact and boundary_exact
        return OperatorMatrix(entries, self.n, self.alpha, prov, exact)

    def __add__(self, other):
        self._check(other)
        return self._derived(self.entries + other.entries, other)

    def __sub__(self, other):
        self._check(other)
        return self._derived(self.entries - other.entries, other)

    def __mul__(self, scalar):
        return self._derived(self.entries * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._derived(self.entries / scalar)

    def __matmul__(self, other):
        self._check(other)
        return self._derived(self.entries @ other.entries, other, boundary_exact=False)

    def adjoint(self):
        return self._derived(self.entries.conj().T)


def ladder_coefficient(m, n, alpha):
    """C(m, n, alpha) = sqrt((m+1)(m+alpha+1) / ((m+n+alpha+2)(m+n+alpha+1)))."""
    m, n, alpha = check_index(m, n, alpha)
    return math.sqrt((m + 1) * (m + alpha + 1) / ((m + n + alpha + 2) * (m + n + alpha + 1)))


def _ladder_column(M, n, alpha):
    m = np.arange(M, dtype=float)
    return np.sqrt((m + 1) * (m + alpha + 1) / ((m + n + alpha + 2) * (m + n + alpha + 1)))


def ladder_matrices(n, alpha, M):
    """Closed-form (A_z, A_zbar) on the M x M truncation."""
    _, n, alpha = check_index(0, n, alpha)
    if M < 2:
        raise ValueError("M must be >= 2")
    a_z = np.diag(_ladder_column(M - 1, n, alpha), k=1).astype(complex)
    return (
        OperatorMatrix(a_z, n, alpha, "closed_form"),
        OperatorMatrix(a_z.T.copy(), n, alpha, "closed_form"),
    )


def _matrix_on_rule(fv, n, alpha, M, rule):
    F = basis_values([(m, n) for m in range(M)], alpha, rule.nodes)
    return F @ (rule.weights * fv * np.conj(F)).T


def quantize_observable(f, n, alpha, M, rule=None):
    """A_f by quadrature.

    ``f`` is an expression string, a parsed expression or a callable. For a
    polynomial expression the rule is chosen exact; otherwise a generous
    rule is used and then doubled, and ``QuadratureAccuracyWarning`` is
    issued if the entries move by more than ``SATURATION_TOLERANCE``.
    """
    _, n, alpha = check_index(0, n, alpha)
    f = as_observable(f)
    degree = getattr(f, "degree", None)
    polynomial = getattr(f, "is_polynomial", False) and degree is not None
    extra = degree if polynomial else NONPOLYNOMIAL_DEGREE
    total = 2 * (M - 1 + n) + extra
    spread = 2 * (M - 1) + extra
    if rule is None:
        rule = rule_for_degree(total, alpha, angular_order=spread)
    elif polynomial and not rule.is_exact_for(total, spread):
        warnings.warn(
            f"rule (exact degree {rule.exact_degree}) is not exact for this degree-{degree} "
            "observable",
            QuadratureAccuracyWarning,
            stacklevel=2,
        )
    entries = _matrix_on_rule(np.asarray(f(rule.nodes)), n, alpha, M, rule)
    if not polynomial:
        fine = rule.refined()
        check = _matrix_on_rule(np.asarray(f(fine.nodes)), n, alpha, M, fine)
        change = float(np.max(np.abs(check - entries)))
        if change > SATURATION_TOLERANCE:
            warnings.warn(
                f"quantization of a non-polynomial observable did not saturate "
                f"(change {change:.3g} under refinement)",
                QuadratureAccuracyWarning,
                stacklevel=2,
            )
        entries = check
    return OperatorMatrix(entries, n, alpha, "quadrature")


def commutator(A, B):
    """AB - BA (last row and column untrusted for ladder products)."""
    return A @ B - B @ A


def commutator_diagonal(n, alpha, M):
    """Exact diagonal of [A_z, A_zbar]: C^2(0), then C^2(m) - C^2(m-1)."""
    c2 = _ladder_column(M, n, alpha) ** 2
    out = c2.copy()
    out[1:] -= c2[:-1]
    return out


def position_momentum_hamiltonian(n, alpha, M):
    """Q = (A_z + A_zbar)/sqrt 2, P = (A_z - A_zbar)/(i sqrt 2), H = (A_z A_zbar + A_zbar A_z)/2."""
    a_z, a_zb = ladder_matrices(n, alpha, M)
    Q = (a_z + a_zb) / math.sqrt(2.0)
    P = (a_z - a_zb) / (1j * math.sqrt(2.0))
    H = (a_z @ a_zb + a_zb @ a_z) / 2.0
    return Q, P, H


def hamiltonian_diagonal(n, alpha, M):
    """(C^2(m-1) + C^2(m)) / 2 with C^2(-1) = 0."""
    c2 = _ladder_column(M, n, alpha) ** 2
    out = c2.copy()
    out[1:] += c2[:-1]
    return out / 2.0


def lower_symbol(A, z, n=None, alpha=None, epsilon=1e-12):
    """<z, alpha, n| A |z, alpha, n> with the state cut off at A's size.

    Warns with ``TruncationWarning`` when the left-out norm exceeds ``epsilon``.
    """
    n = A.n if n is None else n
    alpha = A.alpha if alpha is None else alpha
    if n != A.n or not math.isclose(alpha, A.alpha):
        raise MetadataMismatchError(
            f"state (n={n}, alpha={alpha}) does not match the matrix basis "
            f"(n={A.n}, alpha={A.alpha})"
        )
    state = cs_vector(z, n, alpha, cutoff=A.M)
    if state.tail_mass > epsilon:
        warnings.warn(
            f"coherent state at |z|={abs(complex(z)):.3g} leaves tail mass "
            f"{state.tail_mass:.3g} beyond M={A.M}",
            TruncationWarning,
            stacklevel=2,
        )
    c = state.coefficients
    return complex(np.vdot(c, A.entries @ c))


def berezin_rule(z, n, alpha, degree=0):
    """Rule for the kernel-squared integrand at ``z`` and a degree-``degree`` f.

    |E_n(w, zbar)|^2 is treated as a polynomial of the degree at which its
    defining series is certified to converge at |z|.
    """
    # the square of the kernel decays like the series itself; 25% margin on the cutoff
    M = math.ceil(1.25 * certified_cutoff(n, alpha, abs(complex(z)), rel_tol=1e-14))
    total = 2 * (M + n) + degree
    return rule_for_degree(total, alpha, angular_order=2 * M + degree)


def berezin_transform(f, z, n, alpha, rule=None, check=True):
    """B_n^alpha[f](z) = pi (1 - |z|^2)^(alpha+2) / (2n+alpha+1) int |E_n(w, zbar)|^2 f(w) dmu(w).

    With ``check=True`` the integral is repeated on a refined rule and a
    ``QuadratureAccuracyWarning`` is issued if it moves by more than
    ``SATURATION_TOLERANCE``.
    """
    _, n, alpha = check_index(0, n, alpha)
    f = as_observable(f)
    z = complex(z)
    if rule is None:
        degree = f.degree if getattr(f, "is_polynomial", False) else NONPOLYNOMIAL_DEGREE
        rule = berezin_rule(z, n, alpha, degree)
    pref = math.pi * (1.0 - abs(z) ** 2) ** (alpha + 2.0) / (2 * n + alpha + 1.0)

    def value(r):
        e = kernel_closed_values(n, alpha, r.nodes, z)
        return complex(pref * integrate(np.abs(e) ** 2 * np.asarray(f(r.nodes)), r))

    out = value(rule)
    if check:
        fine = value(rule.refined())
        if abs(fine - out) > SATURATION_TOLERANCE:
            warnings.warn(
                f"Berezin integral at z={z} did not saturate (change {abs(fine - out):.3g})",
                QuadratureAccuracyWarning,
                stacklevel=2,
            )
    return out


def berezin_weighted_bergman(f, z, alpha, rule=None):
    """n = 0 form: (alpha+1)/pi (1-|z|^2)^(alpha+2) int f(w) / |1 - zbar w|^(2(alpha+2)) dmu(w)."""
    f = as_observable(f)
    z = complex(z)
    if rule is None:
        degree = f.degree if getattr(f, "is_polynomial", False) else NONPOLYNOMIAL_DEGREE
        rule = berezin_rule(z, 0, alpha, degree)
    w = rule.nodes
    integrand = np.asarray(f(w)) / np.abs(1.0 - np.conj(z) * w) ** (2.0 * (alpha + 2.0))
    return complex((alpha + 1.0) / math.pi * (1.0 - abs(z) ** 2) ** (alpha + 2.0) * integrate(integrand, rule))


def berezin_standard_disc(f, z, rule=None):
    """Classical disc form (1 - |z|^2)^2 / pi int f(w) / |1 - zbar w|^4 dA(w)."""
    f = as_observable(f)
    z = complex(z)
    if rule is None:
        degree = f.degree if getattr(f, "is_polynomial", False) else NONPOLYNOMIAL_DEGREE
        rule = berezin_rule(z, 0, 0.0, degree)
    w = rule.nodes
    integrand = np.asarray(f(w)) / np.abs(1.0 - np.conj(z) * w) ** 4
    return complex((1.0 - abs(z) ** 2) ** 2 / math.pi * integrate(integrand, rule, measure="area"))


def diffop_upper_symbol_check(m, n, alpha, points):
    """Differential forms of A_z on the normalized basis function p_{m,n}.

    Returns a dict with
      ``d1_residual``: max |D p_m - C(m-1) p_{m-1}| over ``points``, where
        D = ((m + alpha/2) zbar + (1 - z zbar) d/dz) / (m + n + 1 + alpha)
        acts on the weighted function (weight derivative taken exactly);
      ``k_minus_residual``: same comparison for K_- / sqrt((m+n+a+1)(m+n+a));
      ``commutator_exact``: the eigenvalue C^2(m) - C^2(m-1) of [A_z, A_zbar];
      ``commutator_k0_form``: 2 K_0 / ((m+n+a+1) sqrt((m+n+a)(m+n+a+2))) with
        K_0 = m + (1 + a)/2, reported for comparison only.
    """
    m, n, alpha = check_index(m, n, alpha)
    z = np.asarray(points, dtype=complex)
    weight = (1.0 - np.abs(z) ** 2) ** (alpha / 2.0)
    p = build_zernike(m, n, alpha) / math.sqrt(normalization(m, n, alpha))
    # (1 - z zbar) d/dz (W p) = W ((1 - z zbar) dp/dz - (a/2) zbar p)
    body = (m + alpha / 2) * ZBAR * p + ONE_MINUS_ZZBAR * p.d_z() - (alpha / 2) * ZBAR * p
    lhs = weight * body(z) / (m + n + 1 + alpha)
    if m == 0:
        rhs = np.zeros_like(lhs)
    else:
        rhs = ladder_coefficient(m - 1, n, alpha) * normalized_basis_eval(m - 1, n, alpha, z)
    k_minus = weight * k_minus_polynomial(m, n, alpha, p)(z)
    scale = (m + n + alpha + 1) * (m + n + alpha)
    k_lhs = k_minus / math.sqrt(scale) if scale > 0 else np.zeros_like(lhs)

    c2 = _ladder_column(m + 1, n, alpha) ** 2
    exact = c2[m] - (c2[m - 1] if m else 0.0)
    denom = (m + n + alpha + 1) * math.sqrt(max((m + n + alpha) * (m + n + alpha + 2), 0.0))
    k0_form = 2.0 * (m + (1.0 + alpha) / 2.0) / denom if denom else math.inf
    return {
        "d1_residual": float(np.max(np.abs(lhs - rhs), initial=0.0)),
        "k_minus_residual": float(np.max(np.abs(k_lhs - rhs), initial=0.0)),
        "commutator_exact": float(exact),
        "commutator_k0_form": float(k0_form),
    }


def adjoint_matrix_elements(m, n, alpha, rule=None):
    """(<p_{m-1}, K_- p_m>, conj(<p_m, K_+ p_{m-1}>)) by quadrature; both should be sqrt(m(m+a)).

    The weights cancel into the measure, so the integrands are polynomials
    and an exact rule is used.
    """
    m, n, alpha = check_index(m, n, alpha)
    if m < 1:
        raise ValueError("m must be >= 1")
    lo = build_zernike(m - 1, n, alpha) / math.sqrt(normalization(m - 1, n, alpha))
    hi = build_zernike(m, n, alpha) / math.sqrt(normalization(m, n, alpha))
    down = k_minus_polynomial(m, n, alpha, hi)
    up = k_plus_polynomial(m - 1, n, alpha, lo)
    degree = 2 * (m + n) + 2
    if rule is None:
        rule = rule_for_degree(degree, alpha, angular_order=degree)
    w = rule.nodes
    first = integrate(np.conj(lo(w)) * down(w), rule)
    second = integrate(np.conj(hi(w)) * up(w), rule)
    return complex(first), complex(np.conj(second))
