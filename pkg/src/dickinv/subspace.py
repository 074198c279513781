"""Finite subgroups of GF(p^n) as F_p-subspaces, and their dilation orbits.

A subgroup is stored in reduced row-echelon form over F_p.  Rows are the
coefficient vectors of basis elements, packed as element codes; each row's
pivot is its highest-degree nonzero coefficient, normalised to 1 and
cleared from every other row, and rows are listed by decreasing pivot.
Two subgroups are equal iff their row tuples are equal.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .dickson import DicksonVector, dickson_codes, span_codes
from .field import FieldCtx, FqElem, gaussian_binomial


def echelon_rows(ctx: FieldCtx, codes: Iterable[int]) -> tuple[int, ...]:
    p = ctx.p
    if p == 2:
        piv: dict[int, int] = {}
        for c in codes:
            for b, row in piv.items():
                if (c >> b) & 1:
                    c ^= row
            if c:
                top = c.bit_length() - 1
                for b in piv:
                    if (piv[b] >> top) & 1:
                        piv[b] ^= c
                piv[top] = c
        return tuple(piv[b] for b in sorted(piv, reverse=True))

    n = ctx.n
    inv = [0] + [pow(k, p - 2, p) for k in range(1, p)]
    rows: dict[int, list[int]] = {}
    for c in codes:
        v = ctx.digits(c)
        for b, row in rows.items():
            f = v[b]
            if f:
                for k in range(n):
                    if row[k]:
                        v[k] = (v[k] - f * row[k]) % p
        top = -1
        for k in range(n - 1, -1, -1):
            if v[k]:
                top = k
                break
        if top < 0:
            continue
        s = inv[v[top]]
        if s != 1:
            v = [(x * s) % p for x in v]
        for row in rows.values():
            f = row[top]
            if f:
                for k in range(n):
                    if v[k]:
                        row[k] = (row[k] - f * v[k]) % p
        rows[top] = v
    return tuple(ctx.from_digits(rows[b]) for b in sorted(rows, reverse=True))


@dataclass(frozen=True)
class Subspace:
    """Canonical (reduced echelon) form of a finite subgroup of GF(p^n)."""

    ctx: FieldCtx = field(compare=True, repr=False)
    rows: tuple[int, ...]

    @classmethod
    def span(cls, ctx: FieldCtx, codes: Iterable[int]) -> "Subspace":
        return cls(ctx, echelon_rows(ctx, codes))

    @classmethod
    def from_elements(cls, elems: Iterable[FqElem]) -> "Subspace":
        elems = list(elems)
        if not elems:
            raise ValueError("need at least one element to fix the field")
        ctx = elems[0].ctx
        return cls.span(ctx, (e.code for e in elems))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.ctx.p ** self.rank

    def __lt__(self, other: "Subspace") -> bool:
        return self.rows < other.rows

    @functools.cached_property
    def elements(self) -> frozenset[int]:
        return span_codes(self.ctx, self.rows)

    def __contains__(self, x) -> bool:
        code = x.code if isinstance(x, FqElem) else x
        return code in self.elements

    def basis(self) -> list[FqElem]:
        return [FqElem(self.ctx, c) for c in self.rows]

    @functools.cached_property
    def dickson(self) -> DicksonVector:
        return DicksonVector(self.ctx, dickson_codes(self.ctx, self.rows))

    def contains_subspace(self, other: "Subspace") -> bool:
        els = self.elements
        return all(c in els for c in other.rows)

    def hex_rows(self) -> list[str]:
        return [self.ctx.hex(c) for c in self.rows]

    def __repr__(self) -> str:
        return f"Subspace(GF({self.ctx.p}^{self.ctx.n}), rows={list(self.hex_rows())})"


def subspace(elems: Iterable[FqElem]) -> Subspace:
    return Subspace.from_elements(elems)


# ---------------------------------------------------------------------------
# Enumeration

def _pivot_pattern_rows(ctx: FieldCtx, pivots: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    p = ctx.p
    pivset = set(pivots)
    free = [[k for k in range(piv) if k not in pivset] for piv in pivots]
    slots = [(i, k) for i, fs in enumerate(free) for k in fs]
    weights = [p ** k for k in range(ctx.n)]
    base = [weights[piv] for piv in pivots]
    for vals in itertools.product(range(p), repeat=len(slots)):
        rows = list(base)
        for (i, k), v in zip(slots, vals):
            if v:
                rows[i] += v * weights[k]
        yield tuple(rows)


def enumerate_subspaces(ctx: FieldCtx, r: int) -> list[Subspace]:
    """Every rank-r subgroup of GF(p^n), sorted by canonical rows."""
    if not 1 <= r <= ctx.n:
        raise ValueError(f"rank must lie in 1..{ctx.n}, got {r}")
    out = []
    for pivots in itertools.combinations(range(ctx.n - 1, -1, -1), r):
        out.extend(Subspace(ctx, rows) for rows in _pivot_pattern_rows(ctx, pivots))
    out.sort()
    expected = gaussian_binomial(ctx.n, r, ctx.p)
    if len(out) != expected:
        raise AssertionError(f"enumerated {len(out)} subspaces, expected {expected}")
    return out


def dilate(alpha, V: Subspace) -> Subspace:
    """Canonical form of alpha * V."""
    ctx = V.ctx
    a = alpha.code if isinstance(alpha, FqElem) else alpha
    if a == 0:
        raise ValueError("cannot dilate by zero")
    return Subspace(ctx, echelon_rows(ctx, (ctx.mul(a, c) for c in V.rows)))


# ---------------------------------------------------------------------------
# Stabilisers and orbits

def stabilizer_codes(V: Subspace) -> frozenset[int]:
    """{alpha : alpha V = V} together with 0."""
    if V.rank == 0:
        raise ValueError("zero subgroup")
    ctx = V.ctx
    els = V.elements
    v0inv = ctx.inv(V.rows[0])
    out = {0}
    for v in els:
        if v == 0:
            continue
        alpha = ctx.mul(v, v0inv)
        if all(ctx.mul(alpha, c) in els for c in V.rows):
            out.add(alpha)
    return frozenset(out)


def stabilizer_order(V: Subspace) -> int:
    """q such that Stab(V) together with 0 is the subfield F_q."""
    stab = stabilizer_codes(V)
    q = len(stab)
    ctx = V.ctx
    s = 0
    while ctx.p ** s < q:
        s += 1
    if ctx.p ** s != q or ctx.n % s or stab != ctx.subfield_codes(s):
        raise AssertionError(f"stabiliser of {V} is not a subfield")
    return q


@dataclass
class OrbitTable:
    ctx: FieldCtx
    r: int
    reps: list[Subspace]
    orbit_sizes: list[int]
    stabilizer_qs: list[int]
    members: list[list[Subspace]] | None = None

    def __len__(self) -> int:
        return len(self.reps)

    def __iter__(self):
        return iter(zip(self.reps, self.orbit_sizes, self.stabilizer_qs))

    def to_records(self, with_partition: bool = True) -> list[dict]:
        out = []
        for V, size, q in self:
            rec = {
                "rep": list(V.rows),
                "orbit_size": size,
                "stabilizer_q": q,
            }
            if with_partition:
                rec["partition"] = list(partition_of(V))
            rec["dickson"] = V.dickson.hex()
            out.append(rec)
        return out

    def to_jsonl(self, with_partition: bool = True) -> str:
        return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in self.to_records(with_partition))


def orbit_of(V: Subspace) -> list[Subspace]:
    """The dilation orbit of V, walked by powers of a primitive element."""
    g = V.ctx.generator()
    out = [V]
    W = dilate(g, V)
    while W != V:
        out.append(W)
        W = dilate(g, W)
    return out


@functools.lru_cache(maxsize=32)
def dilation_orbit_reps(ctx: FieldCtx, r: int, keep_members: bool = False) -> OrbitTable:
    """One lexicographically least representative per dilation orbit."""
    subs = enumerate_subspaces(ctx, r)
    seen: set[tuple[int, ...]] = set()
    reps, sizes, qs, members = [], [], [], []
    for V in subs:
        if V.rows in seen:
            continue
        orb = orbit_of(V)
        seen.update(W.rows for W in orb)
        q = stabilizer_order(V)
        if len(orb) * (q - 1) != ctx.order:
            raise AssertionError(f"orbit-stabiliser mismatch at {V}")
        reps.append(V)
        sizes.append(len(orb))
        qs.append(q)
        if keep_members:
            members.append(sorted(orb))
    if sum(sizes) != len(subs):
        raise AssertionError("orbits do not cover all subspaces")
    return OrbitTable(ctx, r, reps, sizes, qs, members if keep_members else None)


# ---------------------------------------------------------------------------
# Dilated subfields and partitions

def _subfield_basis(ctx: FieldCtx, s: int) -> tuple[int, ...]:
    return echelon_rows(ctx, sorted(ctx.subfield_codes(s)))


def dilated_subfields_in(V: Subspace, s: int) -> list[tuple[FqElem, Subspace]]:
    """Every U inside V of the form alpha * F_{p^s}, with one witness alpha each."""
    ctx = V.ctx
    if s < 1 or s > V.rank or ctx.n % s:
        return []
    sub = ctx.subfield_codes(s)
    sub_nz = [x for x in sub if x > 1]
    basis = _subfield_basis(ctx, s)
    els = V.elements
    covered: set[int] = set()
    out = []
    for v in sorted(els):
        if v == 0 or v in covered:
            continue
        if all(ctx.mul(v, x) in els for x in sub_nz):
            U = Subspace(ctx, echelon_rows(ctx, (ctx.mul(v, b) for b in basis)))
            covered.update(U.elements)
            out.append((FqElem(ctx, v), U))
    return out


def complements(V: Subspace, U: Subspace) -> Iterator[Subspace]:
    """Every W with V = U (+) W."""
    ctx = V.ctx
    uel = U.elements
    # extend U's rows to a basis of V
    ext = []
    cur = list(U.rows)
    r0 = len(cur)
    for c in V.rows:
        if len(echelon_rows(ctx, cur + [c])) > len(cur):
            cur.append(c)
            ext.append(c)
    if r0 + len(ext) != V.rank:
        raise ValueError("U is not contained in V")
    ulist = sorted(uel)
    for shifts in itertools.product(ulist, repeat=len(ext)):
        yield Subspace(ctx, echelon_rows(ctx, (ctx.add(w, u) for w, u in zip(ext, shifts))))


def _lex_cap(s: int, rest: int) -> tuple[int, ...]:
    out = []
    while rest > 0:
        out.append(min(s, rest))
        rest -= out[-1]
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _partition(ctx: FieldCtx, rows: tuple[int, ...]) -> tuple[int, ...]:
    r = len(rows)
    if r == 0:
        return ()
    V = Subspace(ctx, rows)
    for s in range(r, 0, -1):
        found = dilated_subfields_in(V, s)
        if found:
            break
    if s == r:
        return (r,)
    if s == 1:
        return (1,) * r
    cap = _lex_cap(s, r - s)
    best: tuple[int, ...] | None = None
    for _, U in found:
        for W in complements(V, U):
            rest = _partition(ctx, W.rows)
            if best is None or rest > best:
                best = rest
                if best == cap:
                    return (s,) + best
    return (s,) + best


def partition_of(V: Subspace) -> tuple[int, ...]:
    """Lex-greatest sorted sequence of ranks over all decompositions of V
    into dilated finite fields (exhaustive search, memoised)."""
    if V.rank == 0:
        raise ValueError("zero subgroup has no partition")
    return _partition(V.ctx, V.rows)


@functools.lru_cache(maxsize=None)
def _decompositions(ctx: FieldCtx, rows: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    r = len(rows)
    if r == 0:
        return frozenset({()})
    V = Subspace(ctx, rows)
    out: set[tuple[int, ...]] = set()
    for s in range(1, r + 1):
        for _, U in dilated_subfields_in(V, s):
            for W in complements(V, U):
                for rest in _decompositions(ctx, W.rows):
                    out.add(tuple(sorted((s,) + rest, reverse=True)))
    return frozenset(out)


def all_decompositions(V: Subspace) -> list[tuple[int, ...]]:
    """Every realised multiset of summand ranks, as sorted tuples, largest first."""
    return sorted(_decompositions(V.ctx, V.rows), reverse=True)
