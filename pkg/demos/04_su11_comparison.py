"""Zernike quantization against the standard SU(1,1) coherent states.

The SU(1,1) ladder commutator is -2 K_0, whose diagonal grows linearly;
the Zernike one is bounded and decays. No choice of parameters maps one
onto the other.
"""

from zernike_disc import compare_with_zernike, su11_kernel

eta = 1.0
print(f"SU(1,1) kernel on the diagonal at 0.7i: {su11_kernel(0.7j, 0.7j, eta):.15f}")

report = compare_with_zernike(0, 0.0, eta, 10)
print("\n m   [A_z, A_zbar]_mm   [K+, K-]_mm")
for m, (a, b) in enumerate(zip(report["zernike_diagonal"], report["su11_diagonal"])):
    print(f"{m:2d}   {a:16.6f}   {b:11.3f}")
print("\n" + report["summary"])
