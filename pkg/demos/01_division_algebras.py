"""
Quaternions and octonions
=========================

Both are built by Cayley-Dickson doubling.  Quaternions are associative,
octonions are only alternative, and both have a multiplicative norm.
"""

# %%
import numpy as np

from qlogic import Octonion, Quaternion, associator, norm

i, j, k = (Quaternion.unit(n) for n in (1, 2, 3))
print("i j =", i * j, "  j i =", j * i)

# %%
# The norm is multiplicative for random pairs.
rng = np.random.default_rng(0)
a, b = Octonion.random(rng), Octonion.random(rng)
print("|ab| - |a||b| =", norm(a * b) - norm(a) * norm(b))

# %%
# Three imaginary units that do not associate.
e1, e2, e4 = Octonion.unit(1), Octonion.unit(2), Octonion.unit(4)
print("(e1 e2) e4 =", (e1 * e2) * e4)
print("e1 (e2 e4) =", e1 * (e2 * e4))
print("|associator| =", norm(associator(e1, e2, e4)))

# %%
# Alternativity still holds: (aa)b = a(ab).
print("alternativity residual:", norm((a * a) * b - a * (a * b)))
