"""
Is this covariance Markov?
==========================

Three independent tests look at a covariance matrix from different sides:
whether its inverse is tridiagonal, whether far correlations are products
of adjacent ones, and whether regressing on the whole past is the same as
regressing on the last step. On any valid matrix they agree.
"""

import numpy as np

from gaussmarkov import ChainSpec, diagnose, markov_conditional_collapse, markov_covariance
from gaussmarkov.markov_model import GaussianModel

markov = markov_covariance(ChainSpec((2.0, 1.0, 0.5, 1.0), (0.7, -0.3, 0.9)))
equicorrelated = np.full((4, 4), 0.5) + 0.5 * np.eye(4)

for name, c in (("Markov chain", markov), ("equicorrelated", equicorrelated)):
    d = diagnose(c)
    print(f"{name:15s} tridiagonal={d.tridiagonal_pass} factorization={d.factorization_pass} "
          f"regression={d.regression_pass} (worst factorization gap {d.factorization_worst:.3g})")

# %%
# Conditioning tells the same story. For the chain, the law of the third
# coordinate given the first two is the law given the second alone.
for name, c in (("Markov chain", markov), ("equicorrelated", equicorrelated)):
    full, single, agree = markov_conditional_collapse(GaussianModel.from_covariance(c), 2)
    print(f"{name:15s} coefficients on the past {np.round(full.mean_map, 4)}  collapse: {agree}")
