"""2D-Zernike polynomials, reproducing kernels, coherent states and
quantization on the unit disc."""

from .coherent_states import CoherentState, cs_overlap, cs_vector, resolution_check
from .kernels import (
    KernelValue,
    kernel,
    kernel_closed,
    kernel_diagonal,
    kernel_series,
    normalization,
    normalized_basis_eval,
    projection_apply,
)
from .observable import parse_observable
from .polynomial import BivariatePolynomial
from .quadrature import DiscQuadratureRule, disc_rule, gauss_jacobi_rule, gram_matrix, integrate, rule_for_degree
from .quantization import (
    OperatorMatrix,
    berezin_transform,
    commutator,
    ladder_coefficient,
    ladder_matrices,
    lower_symbol,
    position_momentum_hamiltonian,
    quantize_observable,
)
from .su11 import compare_with_zernike, su11_kernel, su11_ladder_matrices
from .zernike import build_zernike, eval_zernike

__version__ = "0.1.0"
