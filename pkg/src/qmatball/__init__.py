"""Exact computer algebra for the quantum matrix ball.

Normal ordering for the q-deformed matrix coordinate relations, the
distinguished element y, the graded Fock representation with its Gram
matrices and invariant-integral weights, the weighted-trace integrals,
and the q-analogue Bergman kernels with their reproducing projection.
"""

from .scalar import (
    PoleError,
    QRational,
    UPoly,
    qr_normalize,
    qr_eval,
    upoly_interpolate,
    set_working_dps,
    get_working_dps,
)
from .algebra import (
    Element,
    Monomial,
    get_algebra,
    normal_form,
    mul,
    star,
    qminor,
    build_y,
    bidegree_split,
    classical_eval,
    word_from_tokens,
)
from .fock import (
    FockBlock,
    fock_basis,
    fock_dim,
    theta_gen_block,
    theta_apply,
    gram,
    gamma_weight,
    NumericRep,
    gram_cholesky_mp,
    truncated_generator_matrix_norm,
)
from .integral import (
    ConvergenceError,
    IntegralParams,
    c_lambda,
    c_lambda_numeric,
    trace_y_closed,
    trace_y_series,
    nu_lambda,
)
from .kernels import (
    KernelElement,
    chi,
    kernel_mul,
    kernel_invert,
    K_finite,
    K_poly,
    K_lambda,
    commutator_check,
    bergman_apply,
    bergman_oracle,
)

__version__ = "0.1.0"
