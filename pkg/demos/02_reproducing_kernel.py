"""Reproducing kernels of the eigenspaces A_n^alpha.

Compares the closed-form kernel against its defining series, shows the
Bergman kernel appearing at n = 0, and uses the kernel as a projector.
"""

import math

import numpy as np

from zernike_disc import eval_zernike, kernel, kernel_closed, kernel_diagonal, kernel_series, projection_apply
from zernike_disc.quadrature import rule_for_degree

n, alpha = 2, 0.5
z, w = 0.4 + 0.1j, -0.2 + 0.5j

closed = kernel_closed(n, alpha, z, w)
series = kernel_series(n, alpha, z, w, M=300)
print(f"E_{n}(z, wbar) closed form : {closed.value:.15f}")
print(f"E_{n}(z, wbar) series (300): {series.value:.15f}  tail bound {series.tail:.1e}")

print("\nOn the diagonal the kernel is (2n + alpha + 1) / (pi (1 - |z|^2)^(alpha + 2)):")
for r in (0.0, 0.5, 0.9, 0.99):
    print(f"  |z| = {r:<5} E = {kernel_diagonal(n, alpha, r):.6e}  path={kernel(n, alpha, r, r).path}")

bergman = (alpha + 1) / (math.pi * (1 - z * np.conj(w)) ** (alpha + 2))
print(f"\nn = 0 gives the weighted Bergman kernel: |E_0 - K_alpha| = "
      f"{abs(kernel_closed(0, alpha, z, w).value - bergman):.1e}")

rule = rule_for_degree(60, alpha)
pts = np.array([0.2 + 0.1j, -0.3j])
print("\nProjection onto A_2 keeps P_{m,2} and removes P_{m,1}:")
for m, n2 in [(3, 2), (3, 1)]:
    f = eval_zernike(m, n2, alpha, pts)
    got = projection_apply(n, alpha, lambda u: eval_zernike(m, n2, alpha, u), pts, rule)
    print(f"  P_{m},{n2}: max |f| = {np.max(np.abs(f)):.3f}, "
          f"max |Pf - f| = {np.max(np.abs(got - f)):.1e}, max |Pf| = {np.max(np.abs(got)):.3f}")
