"""Gaussian vectors with the Markov property.

Closed-form covariance, precision and entropy of Markov Gaussian chains,
diagnostics for arbitrary covariance matrices, the matching Euclidean
picture (bases, flags, dual bases), and a numerical check that the Markov
completion of band data maximizes the log-determinant.
"""

from .linalg_core import (
    CholeskyFactor,
    NotPositiveDefinite,
    as_symmetric,
    cholesky,
    det,
    inverse,
    logdet,
    project,
    solve,
)
from .markov_model import (
    ChainSpec,
    GaussianModel,
    build_model,
    markov_covariance,
    markov_logdet,
    markov_precision,
)
from .diagnostics import MarkovDiagnosis, diagnose, regression_coefficient
from .conditioning import (
    ConditionalLaw,
    condition,
    conditional_independence_gap,
    markov_conditional_collapse,
)
from .geometry import (
    Basis,
    FlagPair,
    basis_from_gram,
    dual_closed_form,
    is_markov_basis,
    markov_basis,
)
from .entropy import (
    EntropyReport,
    cross_entropy_vs_gaussian,
    gaussian_entropy,
    markov_entropy,
)
from .entropy_opt import (
    CompletionProblem,
    Infeasible,
    OptimizationResult,
    OptimizerConfig,
    logdet_gradient,
    logdet_objective,
    maximize,
    verify_max_entropy,
)
from .sampler import (
    SampleBatch,
    SymmetricMixture,
    empirical_covariance,
    monte_carlo_cross_entropy,
    monte_carlo_entropy,
    sample_chain,
    sample_matched_nongaussian,
)

__version__ = "0.1.0"
