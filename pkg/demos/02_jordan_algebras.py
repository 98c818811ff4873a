"""
Formally real Jordan algebras
=============================

Hermitian matrices over R, C, H (any size) and O (3 x 3 only), spin
factors, and direct sums of these, all with x o y = (xy + yx)/2.
"""

# %%
import numpy as np

from qlogic import Algebra, jordan_product, natural_trace, parse_algebra_spec

for spec in ["R(4)", "C(3)", "H(3)", "O3", "spin(4)", "C(3) + R(4) + H(3)"]:
    alg = Algebra(parse_algebra_spec(spec))
    print(f"{spec:<20} dim {alg.dim:>3}  rank {alg.rank}")

# %%
# The product is commutative but not associative; it satisfies
# (x^2 o y) o x = x^2 o (y o x) instead.
alg = Algebra(parse_algebra_spec("O3"))
rng = np.random.default_rng(1)
x, y, z = (alg.random_element(rng) for _ in range(3))
x2 = x.square()
print("Jordan identity:", (jordan_product(jordan_product(x2, y), x) - jordan_product(x2, jordan_product(y, x))).norm())
print("associativity:  ", (jordan_product(jordan_product(x, y), z) - jordan_product(x, jordan_product(y, z))).norm())

# %%
# The trace form <x|y> = trace(x o y) is positive definite.
gram = Algebra(parse_algebra_spec("H(2) + spin(3)")).gram_matrix()
print("smallest Gram eigenvalue:", np.linalg.eigvalsh(gram).min())
print("trace of the identity in O3:", natural_trace(alg.identity()))
