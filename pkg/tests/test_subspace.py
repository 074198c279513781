import json
import random

import pytest

from dickinv.dickson import dickson_eval
from dickinv.field import make_field
from dickinv.structure import sum_of_subfields
from dickinv.subspace import (
    Subspace,
    all_decompositions,
    dilate,
    dilated_subfields_in,
    dilation_orbit_reps,
    enumerate_subspaces,
    orbit_of,
    partition_of,
    stabilizer_codes,
    stabilizer_order,
)


def count_by_product(n, r, p):
    num = den = 1
    for i in range(r):
        num *= p ** (n - i) - 1
        den *= p ** (r - i) - 1
    assert num % den == 0
    return num // den


def subfield_space(ctx, s):
    return Subspace.span(ctx, ctx.subfield_codes(s))


@pytest.mark.parametrize(
    "p,n,r,expected",
    [(2, 2, 1, 3), (2, 4, 2, 35), (2, 6, 5, 63), (3, 6, 5, 364), (2, 6, 3, 1395), (3, 4, 2, None)],
)
def test_enumerate_counts(p, n, r, expected):
    ctx = make_field(p, n)
    subs = enumerate_subspaces(ctx, r)
    want = count_by_product(n, r, p)
    if expected is not None:
        assert want == expected
    assert len(subs) == want
    assert len({V.rows for V in subs}) == want
    assert all(V.rank == r for V in subs)


def test_enumerate_bad_rank():
    ctx = make_field(2, 3)
    with pytest.raises(ValueError):
        enumerate_subspaces(ctx, 0)
    with pytest.raises(ValueError):
        enumerate_subspaces(ctx, 4)


def test_canonical_form_independent_of_basis():
    ctx = make_field(3, 3)
    a, b = 5, 13
    V = Subspace.span(ctx, [a, b])
    W = Subspace.span(ctx, [ctx.add(a, b), ctx.sub(a, b)])
    assert V == W
    assert V.elements == frozenset(Subspace.from_elements(V.basis()).elements)


def test_dilate_examples():
    ctx = make_field(2, 4)
    F4 = subfield_space(ctx, 2)
    assert dilate(ctx.one, F4) == F4
    for c in ctx.subfield_codes(2):
        if c:
            assert dilate(ctx.elem(c), F4) == F4
    with pytest.raises(ValueError):
        dilate(ctx.zero, F4)


def test_dilate_composes():
    ctx = make_field(3, 4)
    rng = random.Random(8)
    for _ in range(50):
        V = Subspace.span(ctx, [rng.randrange(1, ctx.q) for _ in range(2)])
        a, b = ctx.elem(rng.randrange(1, ctx.q)), ctx.elem(rng.randrange(1, ctx.q))
        assert dilate(a, dilate(b, V)) == dilate(a * b, V)


@pytest.mark.parametrize("p,n,r,orbits", [(2, 2, 2, 1), (2, 3, 2, 1)])
def test_orbit_examples(p, n, r, orbits):
    assert len(dilation_orbit_reps(make_field(p, n), r)) == orbits


@pytest.mark.parametrize("p,n,r", [(2, 4, 2), (2, 6, 3), (3, 4, 2), (2, 6, 4), (3, 3, 2)])
def test_orbit_table_covers_and_respects_stabilizers(p, n, r):
    ctx = make_field(p, n)
    table = dilation_orbit_reps(ctx, r)
    assert sum(table.orbit_sizes) == count_by_product(n, r, p)
    for V, size, q in table:
        assert size * (q - 1) == ctx.q - 1
        assert V == min(orbit_of(V))


def test_f4_orbit_in_gf16():
    ctx = make_field(2, 4)
    F4 = subfield_space(ctx, 2)
    table = dilation_orbit_reps(ctx, 2)
    sizes = {V.rows: s for V, s, _ in table}
    rep = min(orbit_of(F4))
    assert sizes[rep.rows] == 5


def test_stabilizer_examples():
    ctx = make_field(2, 6)
    for s in (1, 2, 3, 6):
        V = dilate(ctx.elem(ctx.generator()), subfield_space(ctx, s))
        assert stabilizer_order(V) == 2 ** s
    # rank 2 with d_1 != 0 has stabilizer F_p
    rng = random.Random(2)
    seen = 0
    while seen < 30:
        V = Subspace.span(ctx, [rng.randrange(1, ctx.q) for _ in range(2)])
        if V.rank != 2:
            continue
        seen += 1
        d1 = dickson_eval(V.basis())[1]
        assert (stabilizer_order(V) == 2) == (d1 != ctx.zero)


def test_stabilizer_is_subfield_brute_force():
    ctx = make_field(3, 4)
    for V, _, q in dilation_orbit_reps(ctx, 2):
        brute = {a for a in range(1, ctx.q) if dilate(ctx.elem(a), V) == V}
        assert brute | {0} == set(stabilizer_codes(V)) | {0}
        assert len(brute) == q - 1


def test_partition_examples():
    ctx = make_field(2, 6)
    for s in (1, 2, 3):
        assert partition_of(subfield_space(ctx, s)) == (s,)
    assert partition_of(Subspace.span(ctx, [37])) == (1,)
    V = sum_of_subfields(ctx, 3, 2)
    assert V.rank == 4
    assert partition_of(V) == (3, 1)


def test_dilated_subfields_examples():
    ctx = make_field(2, 6)
    F4 = subfield_space(ctx, 2)
    found = dilated_subfields_in(F4, 2)
    assert len(found) == 1 and found[0][0] == ctx.one and found[0][1] == F4
    big = make_field(2, 4)
    assert dilated_subfields_in(subfield_space(big, 4), 3) == []
    V = sum_of_subfields(ctx, 3, 2)
    found = dilated_subfields_in(V, 3)
    assert [U for _, U in found] == [subfield_space(ctx, 3)]


def test_dilated_subfields_brute_force():
    ctx = make_field(2, 6)
    rng = random.Random(6)
    for _ in range(20):
        V = Subspace.span(ctx, [rng.randrange(1, ctx.q) for _ in range(4)])
        for s in (1, 2, 3):
            got = {U for _, U in dilated_subfields_in(V, s)}
            brute = {
                U for U in (dilate(ctx.elem(a), subfield_space(ctx, s)) for a in range(1, ctx.q))
                if V.contains_subspace(U)
            }
            assert got == brute


def test_partition_is_lex_max_of_decompositions():
    ctx = make_field(2, 6)
    for V, _, _ in dilation_orbit_reps(ctx, 3):
        decs = all_decompositions(V)
        assert decs and all(sum(d) == 3 for d in decs)
        assert partition_of(V) == max(decs)


def test_partition_is_dilation_invariant():
    ctx = make_field(3, 4)
    g = ctx.elem(ctx.generator())
    for V, _, _ in dilation_orbit_reps(ctx, 3):
        assert partition_of(dilate(g, V)) == partition_of(V)


def test_orbit_jsonl_is_stable():
    ctx = make_field(2, 4)
    table = dilation_orbit_reps(ctx, 2)
    lines = table.to_jsonl().splitlines()
    assert len(lines) == len(table)
    rec = json.loads(lines[0])
    assert set(rec) == {"rep", "orbit_size", "stabilizer_q", "partition", "dickson"}
    assert table.to_jsonl() == dilation_orbit_reps(ctx, 2).to_jsonl()
