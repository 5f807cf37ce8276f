"""Numerical radius computation and inequality verification for dense complex matrices."""
from .blocks import (
    PilotMatrix,
    PositivityReport,
    block_positivity_equiv,
    explicit_2x2_half,
    explicit_2x2_refined,
    pilot_bound,
    pilot_classical,
    pilot_fg,
    pilot_fg_refined,
    pilot_power_2x2,
)
from .bounds import (
    BoundEvaluation,
    bound_dragomir,
    bound_kittaneh_2003,
    bound_kittaneh_2005,
    bound_sandwich,
    bound_yamazaki,
    norm_halfpower_estimate,
    norm_sum_estimate,
    product_bound_fg,
    product_bound_fg_sum,
    product_bound_power,
    spectral_radius_product_bound,
)
from .ensembles import EnsembleSpec, sample
from .errors import *  # noqa: F401,F403
from .linalg import (
    BlockMatrix,
    HermitianEigen,
    PolarFactors,
    SVDFactors,
    abs_operator,
    adjoint,
    aluthge,
    block_embed,
    hermitian_eigen,
    polar_decompose,
    psd_apply,
    psd_power,
    svd,
)
from .radii import (
    RadiusResult,
    min_modulus,
    numerical_radius,
    numerical_range_boundary,
    operator_norm,
    spectral_radius,
)
from .scalar import (
    FunctionPair,
    TermChain,
    kittaneh_fg_chain,
    kittaneh_fg_refined_chain,
    mccarty_chain,
    mccarty_concave_chain,
    mixed_schwarz_chain,
    mixed_schwarz_refined_chain,
    numerical_form_chain,
    power_refined_chain,
    schwarz_refined_chain,
)
from .verifier import CheckSpec, VerificationReport, compare_tightness, replay, run_check

__version__ = "0.1.0"
