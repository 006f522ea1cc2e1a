"""Exact bivariate polynomials in (z, zbar) stored as monomial coefficient tables."""

from __future__ import annotations

import numbers

import numpy as np

__all__ = ["BivariatePolynomial", "ONE", "Z", "ZBAR", "ONE_MINUS_ZZBAR"]


def _conj(c):
    return c.conjugate() if hasattr(c, "conjugate") else c


class BivariatePolynomial:
    """Finite sum of c[a, b] z^a zbar^b, with z and zbar treated as independent.

    Coefficients may be any numbers supporting +, * and ``conjugate`` (floats,
    complex, ``fractions.Fraction``). Instances are immutable; every operation
    returns a new polynomial. Exact zero coefficients are never stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients=None):
        table = {}
        for (a, b), c in dict(coefficients or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent ({a}, {b})")
            if c != 0:
                table[(int(a), int(b))] = c
        self._c = table

    @classmethod
    def monomial(cls, a, b, coefficient=1):
        return cls({(a, b): coefficient})

    @classmethod
    def constant(cls, value):
        return cls({(0, 0): value})

    @property
    def coefficients(self):
        """Copy of the {(a, b): c} table."""
        return dict(self._c)

    def __getitem__(self, key):
        return self._c.get(key, 0)

    def __iter__(self):
        return iter(sorted(self._c.items()))

    def __len__(self):
        return len(self._c)

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._c), default=-1)

    def is_zero(self, tol=0.0):
        return all(abs(c) <= tol for c in self._c.values())

    # -- arithmetic --------------------------------------------------------

    def _combine(self, other, sign):
        out = dict(self._c)
        for key, c in other._c.items():
            out[key] = out.get(key, 0) + sign * c
        return BivariatePolynomial(out)

    def __add__(self, other):
        if isinstance(other, numbers.Number):
            other = BivariatePolynomial.constant(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, numbers.Number):
            other = BivariatePolynomial.constant(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, BivariatePolynomial):
            out = {}
            for (a1, b1), c1 in self._c.items():
                for (a2, b2), c2 in other._c.items():
                    key = (a1 + a2, b1 + b2)
                    out[key] = out.get(key, 0) + c1 * c2
            return BivariatePolynomial(out)
        if isinstance(other, numbers.Number):
            return BivariatePolynomial({k: c * other for k, c in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, numbers.Number):
            return NotImplemented
        return BivariatePolynomial({k: c / other for k, c in self._c.items()})

    def __pow__(self, k):
        if int(k) != k or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = BivariatePolynomial.constant(1)
        base = self
        k = int(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = BivariatePolynomial.constant(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._c == other._c

    __hash__ = None

    # -- calculus and symmetry --------------------------------------------

    def d_z(self):
        """Wirtinger derivative d/dz: c z^a zbar^b -> c a z^(a-1) zbar^b."""
        return BivariatePolynomial({(a - 1, b): c * a for (a, b), c in self._c.items() if a})

    def d_zbar(self):
        """Wirtinger derivative d/dzbar: c z^a zbar^b -> c b z^a zbar^(b-1)."""
        return BivariatePolynomial({(a, b - 1): c * b for (a, b), c in self._c.items() if b})

    def conjugate(self):
        """The polynomial whose values are the complex conjugates of this one's."""
        return BivariatePolynomial({(b, a): _conj(c) for (a, b), c in self._c.items()})

    def reflect(self):
        """p(-z, -zbar)."""
        return BivariatePolynomial({(a, b): c * (-1) ** (a + b) for (a, b), c in self._c.items()})

    def max_abs_diff(self, other):
        """Largest coefficient-wise absolute difference."""
        keys = set(self._c) | set(other._c)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    # -- evaluation --------------------------------------------------------

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        total = np.zeros_like(z)
        for (a, b), c in self._c.items():
            total = total + complex(c) * z**a * zb**b
        return total[()] if total.ndim == 0 else total

    def __repr__(self):
        if not self._c:
            return "BivariatePolynomial(0)"
        terms = " + ".join(f"({c})*z^{a}*zbar^{b}" for (a, b), c in self)
        return f"BivariatePolynomial({terms})"


ONE = BivariatePolynomial.constant(1)
Z = BivariatePolynomial.monomial(1, 0)
ZBAR = BivariatePolynomial.monomial(0, 1)
ONE_MINUS_ZZBAR = BivariatePolynomial({(0, 0): 1, (1, 1): -1})
