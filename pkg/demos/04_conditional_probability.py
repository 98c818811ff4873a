"""
States and conditioning
=======================

A state is a positive trace-one density a, with mu(p) = <a|p>.
Conditioning on p uses the quadratic map U_p:

    mu(q | p) = mu({p, q, p}) / mu(p)

which for complex matrices is the Lueders rule trace(p a p q) / trace(p a).
"""

# %%
import numpy as np

from qlogic import (
    Algebra,
    conditional_probability,
    decompose_state,
    line_proposition,
    parse_algebra_spec,
    random_proposition,
    random_state,
    trace_state,
    transition_probability,
)

alg = Algebra(parse_algebra_spec("C(3)"))
mu = random_state(alg, seed=4)
p = random_proposition(alg, 2, seed=5)
q = random_proposition(alg, 1, seed=6)
print("mu(q | p) =", conditional_probability(mu, q, p))

f = alg.factors[0]
a, P, Q = (f.to_complex(z.coords) for z in (mu.density, p.element, q.element))
print("Lueders   =", np.trace(P @ a @ P @ Q).real / np.trace(P @ a).real)

# %%
# Conditioning on an atom forgets the state: P(q | e) = <e|q>, which is
# |<u, v>|^2 for lines through unit vectors u and v.
u = np.array([1, 0, 0])
v = np.array([1, 1j, 0]) / np.sqrt(2)
e, g = line_proposition(alg, u), line_proposition(alg, v)
print("P(g|e) =", transition_probability(e, g), "  |<u,v>|^2 =", abs(np.vdot(u, v)) ** 2)
print("symmetric:", transition_probability(g, e))

# %%
# Every state is a mixture of at most n orthogonal atoms.
dec = decompose_state(mu)
print("weights:", np.round(dec.weights, 4))
print("mu(q) =", mu(q), "  from atoms:", dec(q))

# %%
# The trace state gives every atom probability 1/n.
tau = trace_state(alg)
print("tau(atom) =", tau(e))
