"""
Primitive solutions of the weight equation
==========================================

A monomial d_1^a_1 ... d_{r-1}^a_{r-1} / d_r^a_r is invariant under
dilation when the weighted sum of the a_i vanishes.  The primitive
solutions form a finite generating set.  For r = 3, 4, 5 they come in
closed-form families; here they are recovered by brute force.
"""

import time

from dickinv.monoid import (
    default_cap,
    enumerate_primitive,
    generating_family_tagged,
    to_tilde,
)

for p, r in [(2, 3), (3, 3), (2, 4), (3, 4), (2, 5)]:
    cap = default_cap(p, r) if r < 5 else 62
    t0 = time.perf_counter()
    prims = enumerate_primitive(p, r, cap)
    fam = generating_family_tagged(p, r)
    same = set(prims) == set(fam)
    print(f"p={p} r={r} cap={cap:4d}: {len(prims):3d} primitives, "
          f"family match={same}  ({time.perf_counter() - t0:.2f} s)")

# %%
# The rank-5 families are easiest to read in tilde coordinates, where the
# weight equation says the first four entries sum to the last and the
# height is the first entry.

print("\nrank 5, p = 2, first few members per family")
shown = {}
for v in generating_family_tagged(2, 5):
    shown.setdefault(v.label, []).append(v)
for label, members in shown.items():
    heads = ", ".join(str(list(to_tilde(v))) for v in members[:3])
    print(f"  {label:7s} ({len(members):2d})  {heads}")
