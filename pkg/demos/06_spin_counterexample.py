"""
Non-unique conditioning in spin factors
=======================================

In spin(n) every nontrivial proposition is an atom (1/2)(1, u) with
|u| = 1, and the only orthogonal pairs are antipodal.  So changing the
probability of one antipodal pair of a pure state gives another state
that is still certain of the same atom.  The new state has no density.
"""

# %%
from qlogic import Algebra, parse_algebra_spec, verify_lift, verify_nonuniqueness

rep = verify_nonuniqueness(3)
for key, value in rep.summary().items():
    print(f"{key:<16} {value}")

# %%
# The same construction survives inside a direct sum.
lift = verify_lift(Algebra(parse_algebra_spec("spin(3) + R(2)")))
print("lifted:", lift.passed, " gap:", lift.gap, " worst frame sum error:", lift.frame_violation)
