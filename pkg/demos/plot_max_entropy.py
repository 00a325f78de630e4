"""
Maximum entropy with a fixed band
=================================

Fix the variances and the adjacent correlations and let the remaining
correlations float. Among all positive definite completions, the Markov
one has the largest determinant, hence the largest Gaussian entropy.
Gradient ascent from random starts finds it every time.
"""

import numpy as np

from gaussmarkov import ChainSpec, CompletionProblem, markov_covariance, maximize, verify_max_entropy
from gaussmarkov.entropy_opt import random_feasible_values

spec = ChainSpec((1.0, 2.0, 0.5, 1.0, 1.5), (0.6, -0.4, 0.7, 0.5))
problem = CompletionProblem(spec)
print("free entries:", problem.free_entries)

rng = np.random.default_rng(3)
start = random_feasible_values(problem, rng)
result = maximize(problem, start=start)
print(f"start   {np.round(start, 4)}")
print(f"argmax  {np.round(result.argmax_values, 6)}")
print(f"product {np.round(problem.markov_values(), 6)}")
print("max deviation from the Markov covariance:",
      np.max(np.abs(result.argmax_matrix - markov_covariance(spec))))

# %%
# The same check with twenty starts and twenty random perturbations.
report = verify_max_entropy(spec, trials=20, seed=1)
print({k: report.to_dict()[k] for k in ("all_converged", "max_argmax_deviation", "perturbation_margin", "passed")})
