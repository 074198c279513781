import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dickinv.dickson import DependentBasisError, dickson_eval
from dickinv.field import gcd, make_field
from dickinv.monoid import ExponentVector, enumerate_primitive
from dickinv.separating import (
    SOUNDNESS_NOTE,
    InvariantSpec,
    eval_invariant,
    fingerprint,
    separating_set,
    separation_check,
    uij_exponents,
    v_exponents,
    vij_exponents,
)
from dickinv.structure import sum_of_subfields
from dickinv.subspace import Subspace, dilate, dilation_orbit_reps, partition_of


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_v_examples(p):
    assert v_exponents(p, 2, 1).exponents.a == (p + 1, p)
    s = p ** 4 + p ** 3 + p ** 2 + p + 1
    assert v_exponents(p, 5, 1).exponents.a == (s, 0, 0, 0, p ** 4)
    assert v_exponents(p, 4, 2).exponents.a == (0, p * p + 1, 0, p * p)
    with pytest.raises(ValueError):
        v_exponents(p, 3, 3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_vij_examples(p):
    assert vij_exponents(p, 5, 1, 4).exponents.a == (p, 0, 0, 1, p)
    assert vij_exponents(p, 4, 1, 3).exponents.a == (p, 0, 1, p)
    assert vij_exponents(p, 3, 1, 2).exponents.a == (p, 1, p)
    assert vij_exponents(p, 4, 1, 2).exponents.a == (p * p + p, 1, 0, p * p)
    with pytest.raises(ValueError):
        vij_exponents(p, 4, 2, 3)  # gcd(4, 2) = 2 does not divide 3


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_uij_examples(p):
    assert uij_exponents(p, 4, 2, 3).exponents.a == (0, p * p, p + 1, p * p + p)
    for i, j in [(2, 3), (4, 3), (2, 5), (4, 1)]:
        u = uij_exponents(p, 6, i, j)
        assert u.exponents.is_solution
        assert u.exponents.a[j - 1] == p + 1
    with pytest.raises(ValueError):
        uij_exponents(p, 6, 3, 1)
    with pytest.raises(ValueError):
        uij_exponents(p, 6, 2, 4)


def test_uij_minimal_by_brute_force():
    # the u_23 exponents at r = 6 are the least b over all solutions with
    # support {2, 3, 6} and a_3 = p + 1
    p, r = 2, 6
    u = uij_exponents(p, r, 2, 3).exponents
    w = [p ** r - p ** (r - i) for i in range(1, r)] + [p ** r - 1]
    best = None
    for b in range(1, u.a[-1] + 1):
        num = b * w[-1] - (p + 1) * w[2]
        if num > 0 and num % w[1] == 0:
            best = (num // w[1], b)
            break
    assert best == (u.a[1], u.a[-1])


def test_set_sizes():
    assert [s.label for s in separating_set(2, 2)] == ["v1"]
    assert [s.label for s in separating_set(3, 4)] == ["v1", "v2", "v3", "v12", "v13", "v32"]
    assert len(separating_set(2, 7)) == 21
    labels6 = [s.label for s in separating_set(2, 6)]
    assert labels6 == [
        "v1", "v2", "v3", "v4", "v5", "v12", "v13", "v14", "v15",
        "v52", "v53", "v54", "v24", "u23", "u43",
    ]
    for r in (0, 1, 12):
        with pytest.raises(ValueError):
            separating_set(2, r)


def test_set_sizes_composite_ranks():
    # count by the closed descriptions, independently of the implementation
    def count(r):
        base = r - 1
        if r == 8:
            return base + sum(r - 1 - i for i in range(1, r, 2)) + 3
        if r == 9:
            return base + sum(r - 1 - i for i in range(1, r) if i not in (3, 6)) + 1
        if r == 10:
            odd = sum(r - 1 - i for i in (1, 3, 7, 9))
            even = sum(1 for i in range(2, r, 2) for j in range(i + 2, r, 2))
            return base + odd + even + 4

    for r in (8, 9, 10):
        assert len(separating_set(2, r)) == count(r)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_all_specs_are_solutions(p):
    for r in range(2, 12):
        specs = separating_set(p, r)
        assert all(s.exponents.is_solution and min(s.exponents.a) >= 0 for s in specs)
        assert len({s.label for s in specs}) == len(specs)
        for s in specs:
            if s.kind == "v_ij":
                i, j = s.indices
                assert j % gcd(r, i) == 0 and s.exponents.a[j - 1] == 1
            if s.kind == "u_ij":
                i, j = s.indices
                assert gcd(r, i) == 2 and j % 2 == 1


@pytest.mark.parametrize("p", [2, 3])
def test_r4_specs_are_primitive(p):
    prims = set(enumerate_primitive(p, 4, 2 * (p ** 4 - 1)))
    for s in separating_set(p, 4):
        assert s.exponents in prims


def test_invariant_spec_rejects_non_solution():
    with pytest.raises(ValueError):
        InvariantSpec("custom", (), ExponentVector(2, (1, 1, 1)), "bad")


def test_eval_v1_on_fp2_dilation():
    ctx = make_field(3, 4)
    F9 = Subspace.span(ctx, ctx.subfield_codes(2))
    v1 = v_exponents(3, 2, 1)
    for a in (1, 7, 40):
        assert eval_invariant(v1, dilate(ctx.elem(a), F9)) == ctx.zero


def test_eval_rank_deficient():
    ctx = make_field(2, 4)
    with pytest.raises((DependentBasisError, ValueError)):
        eval_invariant(v_exponents(2, 2, 1), [ctx.one, ctx.one])
    with pytest.raises(ValueError):
        eval_invariant(v_exponents(2, 3, 1), Subspace.span(ctx, [1, 2]))


def test_codim1_value():
    # v_{1s} = 1 on every subgroup with partition (s, 1)
    ctx = make_field(2, 6)
    v13 = vij_exponents(2, 4, 1, 3)
    v12 = vij_exponents(2, 3, 1, 2)
    checked = Counter()
    for r, spec, part in ((4, v13, (3, 1)), (3, v12, (2, 1))):
        for V, _, _ in dilation_orbit_reps(ctx, r):
            if partition_of(V) == part:
                assert eval_invariant(spec, V) == ctx.one
                checked[part] += 1
    assert checked[(3, 1)] and checked[(2, 1)]


def test_sum_of_subfields_values():
    ctx = make_field(2, 6)
    V = sum_of_subfields(ctx, 3, 2)
    vals = {
        s.label: eval_invariant(s, V)
        for s in separating_set(2, 4)
        if s.label in ("v12", "v13", "v1")
    }
    assert vals["v12"] == ctx.zero
    assert vals["v13"] == ctx.one
    assert vals["v1"] == -ctx.one == ctx.one


def test_sum_of_subfields_values_p3():
    ctx = make_field(3, 6)
    V = sum_of_subfields(ctx, 3, 2)
    assert partition_of(V) == (3, 1)
    specs = {s.label: s for s in separating_set(3, 4)}
    assert eval_invariant(specs["v12"], V) == ctx.zero
    assert eval_invariant(specs["v13"], V) == ctx.one
    assert eval_invariant(specs["v1"], V) == -ctx.one


@pytest.mark.parametrize("p,n,r", [(2, 4, 2), (3, 4, 2), (2, 6, 2), (2, 6, 3), (2, 5, 3), (3, 3, 2), (2, 6, 4)])
def test_separation_exhaustive(p, n, r):
    rep = separation_check(make_field(p, n), r)
    assert rep.unseparated_pairs == []
    assert rep.invariance_failures == []
    assert rep.ok
    assert rep.orbit_count == len(dilation_orbit_reps(make_field(p, n), r))
    assert rep.note == SOUNDNESS_NOTE


def test_separation_f9_fingerprint():
    rep = separation_check(make_field(3, 4), 2)
    zeros = [rows for rows, vals in rep.fingerprints if vals == ["0000"]]
    assert len(zeros) == 1
    V = Subspace(make_field(3, 4), tuple(zeros[0]))
    assert partition_of(V) == (2,)


def test_smaller_set_fails_to_separate():
    # v_12 alone merges rank-3 orbits in GF(2,6), so the check has teeth
    ctx = make_field(2, 6)
    only = [s for s in separating_set(2, 3) if s.label == "v12"]
    rep = separation_check(ctx, 3, specs=only)
    assert len(rep.unseparated_pairs) == 13
    assert not rep.ok
    # every reported pair really is two distinct orbits with equal values
    for a, b in rep.unseparated_pairs:
        A, B = Subspace(ctx, tuple(a)), Subspace(ctx, tuple(b))
        assert fingerprint(only, A) == fingerprint(only, B)
        assert all(dilate(ctx.elem(x), A) != B for x in range(1, ctx.q))


def test_separation_bad_rank():
    with pytest.raises(ValueError):
        separation_check(make_field(2, 4), 5)


# -- invariance properties ---------------------------------------------------

FIELDS = [(2, 4), (2, 6), (3, 4), (2, 5), (3, 3)]


@st.composite
def subgroup_case(draw):
    p, n = draw(st.sampled_from(FIELDS))
    ctx = make_field(p, n)
    r = draw(st.integers(2, min(n, 5)))
    codes = draw(st.lists(st.integers(1, ctx.q - 1), min_size=r, max_size=r))
    alpha = draw(st.integers(1, ctx.q - 1))
    seed = draw(st.integers(0, 2 ** 32))
    return ctx, r, codes, alpha, seed


@settings(max_examples=150, deadline=None, derandomize=True)
@given(subgroup_case())
def test_separating_invariants_are_dilation_and_gl_invariant(case):
    ctx, r, codes, alpha, seed = case
    V = Subspace.span(ctx, codes)
    if V.rank != r:
        return
    specs = separating_set(ctx.p, r)
    base = fingerprint(specs, V)
    assert fingerprint(specs, dilate(ctx.elem(alpha), V)) == base
    # a different basis of the same subgroup, in a shuffled order
    rng = random.Random(seed)
    basis = [b.code for b in V.basis()]
    rng.shuffle(basis)
    mixed = [basis[0]] + [ctx.add(b, ctx.mul(rng.randrange(ctx.p), basis[0])) for b in basis[1:]]
    assert fingerprint(specs, [ctx.elem(c) for c in mixed]) == base
    assert fingerprint(specs, dickson_eval([ctx.elem(c) for c in codes])) == base
