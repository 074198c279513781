"""
Separating dilation orbits
==========================

Evaluate the rank-r separating list on one representative per orbit and
check that no two orbits share a fingerprint.  A smaller list is shown to
fail, which is what makes the check meaningful.
"""

from dickinv import make_field
from dickinv.separating import separating_set, separation_check

ctx = make_field(2, 6)
r = 3
specs = separating_set(2, r)
print("invariants:", ", ".join(f"{s.label}={list(s.exponents.a)}" for s in specs))

rep = separation_check(ctx, r)
print(f"\n{rep.orbit_count} orbits, unseparated pairs: {len(rep.unseparated_pairs)}")
for rows, vals in rep.fingerprints[:8]:
    print(f"  {str(rows):22s} {' '.join(vals)}")
print("  ...")

# %%
# With v12 alone several orbits collide.

weak = separation_check(ctx, r, specs=[s for s in specs if s.label == "v12"])
print(f"\nv12 alone: {len(weak.unseparated_pairs)} colliding pairs, e.g. {weak.unseparated_pairs[0]}")
