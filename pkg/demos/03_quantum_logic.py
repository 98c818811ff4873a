"""
Propositions as idempotents
===========================

Idempotents of a Jordan algebra, ordered by p <= q iff p o q = p and
complemented by p' = I - p, form an orthomodular quantum logic.
"""

# %%
import numpy as np

from qlogic import (
    Algebra,
    decompose_to_atoms,
    leq,
    parse_algebra_spec,
    random_proposition,
    spectral_decomposition,
)
from qlogic.logic import unit

alg = Algebra(parse_algebra_spec("H(3)"))
p = random_proposition(alg, 2, seed=0)
print("rank of p:", p.rank, "  rank of p':", (~p).rank)

# %%
# Every nonzero proposition splits into rank-many orthogonal atoms.
atoms = decompose_to_atoms(p, seed=3)
print("atoms of p:", len(atoms), "  all below p:", all(leq(a, p) for a in atoms))
print("atoms of I:", len(decompose_to_atoms(unit(alg), seed=3)))

# %%
# Spectral decomposition x = sum lambda_k p_k, here in the Albert algebra.
albert = Algebra(parse_algebra_spec("O3"))
x = albert.random_element(np.random.default_rng(2))
dec = spectral_decomposition(x)
print("eigenvalues:", np.round(dec.values, 4))
print("reconstruction error:", (dec.reconstruct() - x).norm())
