"""
Markov chains as unit vectors
=============================

A unit-diagonal covariance is the Gram matrix of unit vectors e_1..e_n.
The chain is Markov exactly when the dual basis f has a tridiagonal Gram
matrix, which is the same as each f_i being built from e_{i-1}, e_i and
e_{i+1} alone.
"""

import numpy as np

from gaussmarkov import dual_closed_form, is_markov_basis, markov_basis
from gaussmarkov.geometry import basis_from_gram, split_orthogonality_gap

np.set_printoptions(precision=4, suppress=True)

basis = markov_basis([0.6, -0.5, 0.8])
print("vectors (rows)\n", basis.vectors)
print("dual Gram matrix\n", basis.dual_gram)

# %%
# The three-term formula reproduces the dual basis.
print("max |closed form - dual|:", np.max(np.abs(dual_closed_form(basis) - basis.dual)))

# %%
# A basis that is not Markov fails all four criteria together.
other = basis_from_gram(np.array([[1, 0.5, 0.5], [0.5, 1, 0.5], [0.5, 0.5, 1.0]]))
for name, b in (("Markov", basis), ("equicorrelated", other)):
    ok, verdicts = is_markov_basis(b)
    print(f"{name:15s} markov={ok} criteria={verdicts}")

# %%
# Past and future residuals around a pivot are orthogonal only for the chain.
print("split orthogonality gap at pivot 1:",
      split_orthogonality_gap(basis, 1), split_orthogonality_gap(other, 1))
