"""
Partitions, classification and the rank-5 conjectures
======================================================

Every subgroup splits as a direct sum of dilated finite fields; the
lexicographically largest list of summand ranks is its partition.  For
ranks 3 and 4 polynomial conditions in the Dickson invariants decide the
partition.  For rank 5 three conjectured varieties are compared with the
structural property they should cut out.
"""

from dickinv import make_field
from dickinv.structure import (
    conjecture_check,
    mixed_rank5_example,
    rank4_classify,
    sum_of_subfields,
    verify_theorem,
)

ctx = make_field(2, 6)

V = sum_of_subfields(ctx, 3, 2)
res = rank4_classify(V)
print("F_8 + F_4:", res.oracle_partition, {k: res.values[k] for k in ("v1", "v12", "v13")})

E = mixed_rank5_example(ctx)
print("Span{1, a, a^3, b, ab}:", E.hex_rows())

# %%
# Exhaustive agreement on GF(2,6)

for name in ("rk3", "rk4", "rk4p2", "codim1"):
    rep = verify_theorem(name, ctx)
    print(f"{name:7s} {rep.tested:5d} subgroups, {len(rep.counterexamples)} disagreements")
    for case, count in sorted(rep.tally.items()):
        print(f"          {case}: {count}")

# %%
# The conjectures on GF(2,6) are vacuous (every rank-5 subgroup has each
# property), so a seeded sample in a larger field is checked as well.

for cid, n in [("fp3", 12), ("subspace", 8), ("fp2", 10)]:
    full = conjecture_check(cid, ctx)
    samp = conjecture_check(cid, make_field(2, n), sample=60, seed=1)
    print(f"{cid:8s} GF(2,6): {full.tally}   GF(2,{n}) sample: {samp.tally}")
