"""Coherent states and the quantization they induce.

Builds coherent states, quantizes z, zbar and |z|^2, and shows that the
canonical commutator is replaced by a bounded diagonal that decays in m.
"""

import numpy as np

from zernike_disc import (
    berezin_transform,
    commutator,
    cs_overlap,
    cs_vector,
    ladder_matrices,
    lower_symbol,
    position_momentum_hamiltonian,
    quantize_observable,
    resolution_check,
)

n, alpha = 0, 0.0
cs = cs_vector(0.6 + 0.2j, n, alpha)
print(f"Coherent state at 0.6+0.2i needs {cs.cutoff} coefficients; left-out mass {cs.tail_mass:.1e}")
print(f"Overlap <z|w> for z = 0.6+0.2i, w = 0.1-0.3i: {cs_overlap(0.6 + 0.2j, 0.1 - 0.3j, n, alpha):.6f}")
print(f"Resolution of the identity, 12 x 12 block: deviation {resolution_check(n, alpha, 12):.1e}")

M = 8
a_z, a_zb = ladder_matrices(n, alpha, M)
q_z = quantize_observable("z", n, alpha, M)
print(f"\nA_z by quadrature vs closed form: {np.max(np.abs(q_z.entries - a_z.entries)):.1e}")
print("A_z superdiagonal:", np.round(np.diag(a_z.entries, 1).real, 6))

C = commutator(a_z, a_zb)
print("\n[A_z, A_zbar] interior diagonal:", np.round(np.diag(C.interior()).real, 6))
print("1 / ((m + 1)(m + 2))          :", np.round(1 / ((np.arange(M - 1) + 1) * (np.arange(M - 1) + 2)), 6))

Q, P, H = position_momentum_hamiltonian(n, alpha, M)
print("H = (Q^2 + P^2)/2 diagonal     :", np.round(np.diag(H.interior()).real, 6))

f, z = "z^2*zbar^2 - 3*zbar", 0.3 - 0.2j
A = quantize_observable(f, n, alpha, 90)
print(f"\nBerezin transform of {f} at {z}: {berezin_transform(f, z, n, alpha):.12f}")
print(f"Lower symbol <z|A_f|z>           : {lower_symbol(A, z):.12f}")
