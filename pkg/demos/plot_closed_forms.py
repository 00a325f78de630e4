"""
Closed forms for a Markov chain
===============================

A Gaussian chain is fixed by its standard deviations and its adjacent
correlations. Everything else follows: correlations two or more steps apart
multiply along the chain, the precision matrix is tridiagonal, and the
log-determinant is a plain sum.
"""

import numpy as np

from gaussmarkov import ChainSpec, build_model, cholesky, markov_logdet

np.set_printoptions(precision=4, suppress=True)

spec = ChainSpec(sigma=(1.0, 1.0, 1.0), rho=(0.5, 0.5))
model = build_model(spec)

print("covariance\n", model.covariance)
print("precision\n", model.precision)

# %%
# The corner of the precision matrix is exactly zero, not merely small.
print("corner entry:", model.precision[0, 2], "exact zero:", model.precision[0, 2] == 0.0)

# %%
# The log-determinant needs no factorization. Compare with Cholesky on a
# longer chain with strong correlations.
rng = np.random.default_rng(0)
long = ChainSpec(tuple(rng.uniform(0.5, 3.0, 10)), tuple(rng.uniform(-0.99, 0.99, 9)))
closed = markov_logdet(long)
factored = cholesky(build_model(long).covariance).logdet
print(f"closed form {closed:.15f}\ncholesky    {factored:.15f}")
