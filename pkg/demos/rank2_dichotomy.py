"""
Rank-two subgroups and the invariant v1
=======================================

A rank-2 subgroup E of GF(p^n) is, up to dilation, either a copy of
F_{p^2} or something with trivial stabiliser.  The single invariant
v1 = d1^(p+1) / d2^p tells the two apart: it vanishes exactly on the
dilations of F_{p^2}.
"""

from collections import Counter

from dickinv import make_field
from dickinv.separating import eval_invariant, v_exponents
from dickinv.subspace import dilation_orbit_reps, stabilizer_order

p, n = 3, 4
ctx = make_field(p, n)
v1 = v_exponents(p, 2, 1)

table = dilation_orbit_reps(ctx, 2)
print(f"GF({p}^{n}) has {sum(table.orbit_sizes)} rank-2 subgroups in {len(table)} dilation orbits\n")

print("rep rows        orbit        q  v1")
for V, size, q in table:
    val = eval_invariant(v1, V)
    print(f"{str(list(V.rows)):15s} {size:5d}  {q:7d}  {val.hex()}")

# %%
# Stabiliser F_{p^2}^x  <=>  v1 = 0.  Each orbit gets its own value of v1,
# which is the separation statement for rank 2.

vals = Counter(eval_invariant(v1, V).hex() for V in table.reps)
assert all(c == 1 for c in vals.values())
zero = [V for V in table.reps if eval_invariant(v1, V).code == 0]
assert len(zero) == 1 and stabilizer_order(zero[0]) == p * p
print("\nv1 separates the orbits; it is zero only on the F_9 orbit")
