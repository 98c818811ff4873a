"""
Second- and third-order interference
====================================

For orthogonal blocks p1, p2, p3 the interference terms are alternating
sums of mu(U_P q) over the block unions.  Jordan algebras show
second-order interference but never third-order.
"""

# %%
from qlogic import Algebra, parse_algebra_spec, search_I2, sweep_I3
from qlogic.interference import max_abs

for spec in ["R(3)", "C(4)", "H(3)", "O3", "C(3) + R(3)"]:
    reports = sweep_I3(Algebra(parse_algebra_spec(spec)), 100, seed=0)
    print(f"{spec:<12} max |I3| over {len(reports)} configurations: {max_abs(reports):.1e}")

# %%
best = search_I2(Algebra(parse_algebra_spec("C(3)")), 200, seed=0)
print("largest |I2| found in C(3):", abs(best.value))
