"""Structural theorems about subgroups, tested against brute-force oracles.

Each check evaluates a polynomial criterion in the Dickson invariants and
compares it with a direct computation (closure under a subfield, a search
for dilated subfields, or the partition from :mod:`dickinv.subspace`).
"""

from __future__ import annotations

import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .dickson import dickson_codes, omega_code
from .field import TABLE_LIMIT, FieldCtx, FqElem, make_field
from .monoid import ExponentVector, v_vector
from .separating import eval_monomial_codes, vij_exponents
from .subspace import (
    Subspace,
    dilated_subfields_in,
    echelon_rows,
    enumerate_subspaces,
    partition_of,
    stabilizer_codes,
)

UNDETERMINED = "undetermined"

THEOREMS = ("field", "comp", "codim1", "embedding", "rk2", "rk3", "rk4", "rk4p2", "rk5")
CONJECTURES = ("fp3", "subspace", "fp2")

POINTWISE_NOTE = (
    "checked on F_{p^n}-points only: ideal equality is not tested, and agreement "
    "on one finite field is evidence rather than proof"
)


# ---------------------------------------------------------------------------
# small helpers

def _d(V: Subspace) -> tuple[int, ...]:
    return V.dickson.codes


def _dd(d: Sequence[int], i: int) -> int:
    """d_i with the conventions d_0 = 1 and 0 outside 1..r."""
    if i == 0:
        return 1
    if i < 0 or i > len(d):
        return 0
    return d[i - 1]


def _mono(ctx: FieldCtx, d: Sequence[int], v: ExponentVector) -> int:
    return eval_monomial_codes(ctx, tuple(d), v.a)


def _as_subspace(V) -> Subspace:
    if isinstance(V, Subspace):
        return V
    elems = list(V)
    return Subspace.from_elements(elems)


def _closed_under(V: Subspace, s: int) -> bool:
    """alpha V in V for every alpha in F_{p^s} (s must divide n)."""
    ctx = V.ctx
    els = V.elements
    return all(ctx.mul(a, c) in els for a in ctx.subfield_codes(s) for c in V.rows)


def witness(V: Subspace, **values) -> dict:
    out = {"basis": V.hex_rows(), "rows": list(V.rows), "dickson": V.dickson.hex()}
    ctx = V.ctx
    for k, val in values.items():
        if isinstance(val, FqElem):
            val = val.hex()
        elif isinstance(val, int) and not isinstance(val, bool) and k.startswith("f_"):
            val = ctx.hex(val)
        elif isinstance(val, tuple):
            val = list(val)
        out[k] = val
    return out


def choose_n(p: int, r: int, divisors: Iterable[int] = ()) -> int:
    """Smallest n >= r divisible by every entry of ``divisors``."""
    m = 1
    for k in divisors:
        m = m * k // math.gcd(m, k)
    n = m
    while n < r:
        n += m
    return n


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("DICKINV_JOBS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence, jobs: int | None = None) -> list:
    """Order-preserving map; a process pool is used when jobs > 1."""
    jobs = default_jobs() if jobs is None else jobs
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# ---------------------------------------------------------------------------
# field, comp, codim1 criteria

def is_Fq_space_test(V, s: int) -> tuple[bool, bool]:
    """(d_i = 0 for every i not divisible by s, direct closure under F_{p^s})."""
    V = _as_subspace(V)
    if s < 1 or V.rank % s:
        raise ValueError(f"s={s} does not divide rank {V.rank}")
    if V.ctx.n % s:
        raise ValueError(f"F_{V.ctx.p}^{s} is not a subfield of GF({V.ctx.p}^{V.ctx.n})")
    d = _d(V)
    theorem = all(d[i - 1] == 0 for i in range(1, V.rank + 1) if i % s)
    return theorem, _closed_under(V, s)


def comp_identity_check(s: int, W) -> bool:
    """d_i(F_{p^s} + W) = d_i(omega_s W) - d_{i-s}(omega_s W) for all i."""
    W = _as_subspace(W)
    ctx = W.ctx
    if ctx.n % s:
        raise ValueError(f"F_{ctx.p}^{s} is not a subfield of the ambient field")
    sub = ctx.subfield_codes(s)
    if len(W.elements & sub) > 1:
        raise ValueError("W meets F_{p^s} nontrivially")
    field_basis = echelon_rows(ctx, sorted(sub))
    V_rows = list(field_basis) + list(W.rows)
    r = len(V_rows)
    if len(echelon_rows(ctx, V_rows)) != r:  # pragma: no cover - excluded above
        raise AssertionError("sum is not direct")
    dv = dickson_codes(ctx, V_rows)
    dw = dickson_codes(ctx, [omega_code(ctx, s, c) for c in W.rows])
    return all(_dd(dv, i) == ctx.sub(_dd(dw, i), _dd(dw, i - s)) for i in range(1, r + 1))


def codim1_predicate(V) -> bool:
    """Partition (s,1) criterion for V of rank s+1, s >= 2."""
    V = _as_subspace(V)
    s = V.rank - 1
    if s < 2:
        raise ValueError("codim1 needs rank s+1 with s >= 2")
    ctx = V.ctx
    d = _d(V)
    if any(_dd(d, i) for i in range(2, s)):
        return False
    num = ctx.mul(ctx.pow(_dd(d, 1), ctx.p), _dd(d, s))
    return num == ctx.pow(_dd(d, s + 1), ctx.p)


def codim1_classify(V) -> tuple[bool, bool]:
    """(theorem predicate, partition_of(V) == (s, 1))."""
    V = _as_subspace(V)
    s = V.rank - 1
    return codim1_predicate(V), partition_of(V) == (s, 1)


# ---------------------------------------------------------------------------
# embedding criterion

def embedding_equations(V, full: bool = True) -> bool:
    """d_1 != 0 and d_i^p = d_{i-1} d_1^p for i = 2..r.

    These are the vanishing conditions d_{i,r+1}(E) = 0 for the extension of
    V by a root of D_r(t)^(p-1) = d_1^p.  With ``full=False`` the last
    condition (i = r) is dropped, matching the narrower published range.
    """
    V = _as_subspace(V)
    r = V.rank
    if r < 2:
        raise ValueError("embedding test needs rank >= 2")
    ctx = V.ctx
    d = _d(V)
    d1 = d[0]
    if d1 == 0:
        return False
    d1p = ctx.pow(d1, ctx.p)
    top = r if full else r - 1
    return all(ctx.pow(_dd(d, i), ctx.p) == ctx.mul(_dd(d, i - 1), d1p) for i in range(2, top + 1))


@lru_cache(maxsize=16)
def field_embedding(small: FieldCtx, big: FieldCtx) -> tuple[int, ...]:
    """Codes of an embedding GF(p^m) -> GF(p^N), m | N, via a root of small's modulus."""
    if small.p != big.p or big.n % small.n:
        raise ValueError("no embedding between these fields")
    mod = small.modulus
    root = None
    for x in range(big.q):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, x), c)
        if acc == 0:
            root = x
            break
    if root is None:  # pragma: no cover
        raise AssertionError("modulus has no root in the larger field")
    powers = [1]
    for _ in range(small.n - 1):
        powers.append(big.mul(powers[-1], root))
    out = []
    for code in range(small.q):
        acc = 0
        for dig, pw in zip(small.digits(code), powers):
            if dig:
                acc = big.add(acc, big.mul(dig, pw))
        out.append(acc)
    return tuple(out)


def _in_dilated_subfield(ctx: FieldCtx, codes: Sequence[int], s: int) -> bool:
    """Is Span(codes) inside alpha F_{p^s} for some alpha in ctx?"""
    if ctx.n % s:
        return False
    sub = ctx.subfield_codes(s)
    els = [c for c in _span(ctx, codes) if c]
    v0inv = ctx.inv(els[0])
    return all(ctx.mul(v, v0inv) in sub for v in els)


def _span(ctx: FieldCtx, codes: Sequence[int]) -> frozenset[int]:
    from .dickson import span_codes

    return span_codes(ctx, codes)


def embedding_direct(V, lift: bool = True) -> bool | None:
    """Is V inside a dilation of F_{p^(r+1)} over the algebraic closure?

    If V is inside alpha K then v0^-1 V lies in K for any nonzero v0 in V,
    so the test only needs F_{p^(r+1)} inside a field containing V.  When
    (r+1) does not divide n the question is moved into GF(p^lcm(n, r+1)) if
    that field is small enough for tables; otherwise None is returned.
    """
    V = _as_subspace(V)
    ctx, s = V.ctx, V.rank + 1
    if ctx.n % s == 0:
        return _in_dilated_subfield(ctx, V.rows, s)
    if not lift:
        return False
    N = ctx.n * s // math.gcd(ctx.n, s)
    if ctx.p ** N > TABLE_LIMIT:
        return None
    big = make_field(ctx.p, N)
    emb = field_embedding(ctx, big)
    return _in_dilated_subfield(big, [emb[c] for c in V.rows], s)


def embedding_test(V) -> tuple[bool, bool]:
    """(equation test, direct test).

    The direct test is exact over the closure; it raises when neither the
    ambient field nor an affordable extension contains F_{p^(r+1)}.
    """
    eq = embedding_equations(V)
    direct = embedding_direct(V)
    if direct is None:
        raise ValueError("direct embedding test unavailable: extension field too large")
    return eq, direct


def embedding_direct_in_field(V) -> bool:
    """Containment in a dilation of F_{p^(r+1)} with the dilation taken in F_{p^n}."""
    V = _as_subspace(V)
    return embedding_direct(V, lift=False)


# ---------------------------------------------------------------------------
# partition classification

@dataclass
class ClassificationResult:
    rows: tuple[int, ...]
    theorem_partition: tuple[int, ...] | str
    oracle_partition: tuple[int, ...]
    agree: bool
    fired: list[tuple[int, ...]] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        tp = self.theorem_partition
        return {
            "rep": list(self.rows),
            "theorem_partition": tp if isinstance(tp, str) else list(tp),
            "oracle_partition": list(self.oracle_partition),
            "agree": self.agree,
            "values": self.values,
        }


def _finish(V: Subspace, fired: list, residual, values: dict) -> ClassificationResult:
    oracle = partition_of(V)
    if len(fired) > 1:
        theorem = "conflict"
        agree = False
    elif fired:
        theorem = fired[0]
        agree = theorem == oracle
    else:
        theorem = residual
        if residual == UNDETERMINED:
            agree = oracle not in values.get("_characterised", ())
        else:
            agree = theorem == oracle
    values = {k: v for k, v in values.items() if not k.startswith("_")}
    return ClassificationResult(V.rows, theorem, oracle, agree, fired, values)


def rank3_classify(V) -> ClassificationResult:
    V = _as_subspace(V)
    if V.rank != 3:
        raise ValueError("rank3_classify needs rank 3")
    ctx, p = V.ctx, V.ctx.p
    d = _d(V)
    v12 = _mono(ctx, d, vij_exponents(p, 3, 1, 2).exponents)
    fired = []
    if d[0] == 0 and d[1] == 0:
        fired.append((3,))
    if v12 == 1:
        fired.append((2, 1))
    return _finish(V, fired, (1, 1, 1), {"v12": ctx.hex(v12)})


def rank4_classify(V) -> ClassificationResult:
    V = _as_subspace(V)
    if V.rank != 4:
        raise ValueError("rank4_classify needs rank 4")
    ctx, p = V.ctx, V.ctx.p
    d = _d(V)
    v1 = _mono(ctx, d, v_vector(p, 4, 1))
    v12 = _mono(ctx, d, vij_exponents(p, 4, 1, 2).exponents)
    v13 = _mono(ctx, d, vij_exponents(p, 4, 1, 3).exponents)
    fired = []
    if d[0] == d[1] == d[2] == 0:
        fired.append((4,))
    if d[0] == 0 and d[2] == 0 and d[1] != 0:
        fired.append((2, 2))
    if d[1] == 0 and v13 == 1:
        fired.append((3, 1))
    # H / (d_4^p d_1^(p^2+1)) = ((v12 - v13^p)^p v13 - v1) / v1, so this is
    # the invariant form of H; the variant without the inner p-th power is
    # kept for the record only
    g211 = ctx.sub(ctx.mul(ctx.pow(ctx.sub(v12, ctx.pow(v13, p)), p), v13), v1)
    g211_lit = ctx.sub(ctx.mul(ctx.pow(ctx.sub(v12, v13), p), v13), v1)
    if d[0] != 0 and d[1] != 0 and g211 == 0:
        fired.append((2, 1, 1))
    vals = {
        "v1": ctx.hex(v1),
        "v12": ctx.hex(v12),
        "v13": ctx.hex(v13),
        "g211": ctx.hex(g211),
        "g211_without_inner_power": ctx.hex(g211_lit),
    }
    return _finish(V, fired, (1, 1, 1, 1), vals)


def rank5_partial_classify(V) -> ClassificationResult:
    V = _as_subspace(V)
    if V.rank != 5:
        raise ValueError("rank5_partial_classify needs rank 5")
    ctx, p = V.ctx, V.ctx.p
    d = _d(V)
    v14 = _mono(ctx, d, vij_exponents(p, 5, 1, 4).exponents)
    fired = []
    if d[0] == d[1] == d[2] == d[3] == 0:
        fired.append((5,))
    if d[1] == 0 and d[2] == 0 and v14 == 1:
        fired.append((4, 1))
    vals = {"v14": ctx.hex(v14), "_characterised": ((5,), (4, 1))}
    return _finish(V, fired, UNDETERMINED, vals)


CLASSIFIERS = {3: rank3_classify, 4: rank4_classify, 5: rank5_partial_classify}


def classify(V) -> ClassificationResult:
    V = _as_subspace(V)
    if V.rank in CLASSIFIERS:
        return CLASSIFIERS[V.rank](V)
    oracle = partition_of(V)
    if V.rank == 1:
        return ClassificationResult(V.rows, (1,), oracle, oracle == (1,), [(1,)])
    if V.rank == 2:
        ctx = V.ctx
        v1 = _mono(ctx, _d(V), v_vector(ctx.p, 2, 1))
        theorem = (2,) if v1 == 0 else (1, 1)
        return ClassificationResult(V.rows, theorem, oracle, theorem == oracle, [theorem], {"v1": ctx.hex(v1)})
    return ClassificationResult(V.rows, UNDETERMINED, oracle, True)


def rk4p2_H(V) -> int:
    V = _as_subspace(V)
    ctx, p = V.ctx, V.ctx.p
    d1, d2, d3, d4 = _d(V)
    t1 = ctx.mul(ctx.mul(ctx.pow(d1, p * p), ctx.pow(d2, p)), d3)
    t2 = ctx.mul(ctx.pow(d4, p), ctx.pow(d1, p * p + 1))
    t3 = ctx.pow(d3, p * p + 1)
    return ctx.sub(ctx.sub(t1, t2), t3)


def rank4_contains_Fp2(V) -> tuple[bool, bool]:
    """(H(V) = 0, V contains a dilation of F_{p^2})."""
    V = _as_subspace(V)
    if V.rank != 4:
        raise ValueError("rank4_contains_Fp2 needs rank 4")
    return rk4p2_H(V) == 0, bool(dilated_subfields_in(V, 2))


def rank2_dichotomy(V) -> tuple[bool, bool]:
    """(v_1(V) = 0, V is a dilation of F_{p^2})."""
    V = _as_subspace(V)
    ctx = V.ctx
    v1 = _mono(ctx, _d(V), v_vector(ctx.p, 2, 1))
    return v1 == 0, len(stabilizer_codes(V)) == ctx.p ** 2


# ---------------------------------------------------------------------------
# rank-5 conjectures, pointwise

def conjecture_values(id: str, V) -> dict[str, int]:
    """Codes of the generators of the conjectured ideal, evaluated at V."""
    V = _as_subspace(V)
    ctx, p = V.ctx, V.ctx.p
    d1, d2, d3, d4, d5 = _d(V)
    pw = ctx.pow
    mul = ctx.mul
    sub = ctx.sub
    if id == "fp3":
        out = {
            "P1": sub(pw(d4, p), mul(d3, pw(d1, p))),
            "P2": sub(mul(pw(d5, p), d1), mul(d4, pw(d2, p))),
        }
        for i in range(1, p + 1):
            lhs = mul(pw(d5, i * p), pw(d4, p - i))
            rhs = mul(mul(d3, pw(d2, i * p)), pw(d1, p - i))
            out[f"P3_{i}"] = sub(lhs, rhs)
        return out
    r1 = sub(pw(d5, p), mul(d4, pw(d1, p)))
    r2 = sub(pw(d3, p), mul(d2, pw(d1, p)))
    if id == "subspace":
        return {"r1": r1, "r2": r2}
    if id == "fp2":
        inner = sub(mul(pw(d5, p), d2), mul(d4, pw(d3, p)))
        return {"G": sub(pw(r1, p * p + 1), mul(pw(r2, p * p), inner))}
    raise ValueError(f"unknown conjecture {id!r}")


def _has_Fp2_hyperplane(V: Subspace) -> bool:
    """Does V contain a rank-4 subgroup closed under F_{p^2}?"""
    ctx = V.ctx
    if V.rank < 4:
        return False
    w = [x for x in ctx.subfield_codes(2) if x not in range(ctx.p)][0]
    # the largest F_{p^2}-subspace of V is {v : w^k v in V for all k}
    els = V.elements
    core = [v for v in els if ctx.mul(w, v) in els and ctx.mul(ctx.mul(w, w), v) in els]
    return len(core) >= ctx.p ** 4


def conjecture_property(id: str, V) -> bool:
    V = _as_subspace(V)
    if id == "fp3":
        return bool(dilated_subfields_in(V, 3))
    if id == "subspace":
        return _has_Fp2_hyperplane(V)
    if id == "fp2":
        return bool(dilated_subfields_in(V, 2))
    raise ValueError(f"unknown conjecture {id!r}")


def conjecture_requirements(id: str) -> tuple[int, ...]:
    return {"fp3": (3,), "subspace": (2,), "fp2": (2,)}[id]


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckReport:
    kind: str  # "theorem" or "conjecture"
    name: str
    p: int
    n: int
    tested: int
    counterexamples: list[dict]
    tally: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "name": self.name,
            "p": self.p,
            "n": self.n,
            "tested": self.tested,
            "counterexamples": self.counterexamples,
            "tally": dict(sorted(self.tally.items())),
            "notes": self.notes,
        }
        if timing:
            out["runtime"] = round(self.runtime, 3)
        return out


ConjectureReport = CheckReport


def _conj_one(args) -> tuple[str, dict | None]:
    id, V = args
    vals = conjecture_values(id, V)
    variety = all(v == 0 for v in vals.values())
    prop = conjecture_property(id, V)
    key = f"variety={variety},property={prop}"
    if variety != prop:
        w = witness(V, **{f"f_{k}": v for k, v in vals.items()}, variety=variety, property=prop)
        return key, w
    return key, None


def _random_subspace(ctx: FieldCtx, rng, seed_rows: Sequence[int], r: int) -> Subspace | None:
    rows = list(seed_rows)
    while len(echelon_rows(ctx, rows)) < r:
        rows.append(rng.randrange(1, ctx.q))
        if len(rows) > 4 * r:
            return None
    return Subspace.span(ctx, rows)


def _planted_rows(id: str, ctx: FieldCtx, rng) -> list[int]:
    """Basis of a subgroup that has the structural property by construction."""
    alpha = rng.randrange(1, ctx.q)
    if id in ("fp3", "fp2"):
        s = 3 if id == "fp3" else 2
        return [ctx.mul(alpha, c) for c in echelon_rows(ctx, sorted(ctx.subfield_codes(s)))]
    # rank-4 F_{p^2}-subspace: F_{p^2}-span of two random elements
    w = [x for x in ctx.subfield_codes(2) if x >= ctx.p][0]
    out: list[int] = []
    while len(echelon_rows(ctx, out)) < 4:
        x = rng.randrange(1, ctx.q)
        out = list(echelon_rows(ctx, out + [x, ctx.mul(w, x)]))
    return out


def sample_rank5(id: str, ctx: FieldCtx, count: int, seed: int = 0) -> list[Subspace]:
    """``count`` rank-5 subgroups: half planted with the property, half uniform-ish."""
    import random

    rng = random.Random(seed)
    out: list[Subspace] = []
    while len(out) < count:
        planted = len(out) % 2 == 0
        rows = _planted_rows(id, ctx, rng) if planted else []
        V = _random_subspace(ctx, rng, rows, 5)
        if V is not None and V.rank == 5:
            out.append(V)
    return out


def conjecture_check(id: str, ctx: FieldCtx, jobs: int | None = None, sample: int | None = None, seed: int = 0) -> CheckReport:
    """Compare a conjectured variety with its structural property on rank-5 subgroups.

    Exhaustive by default; with ``sample`` a seeded set of subgroups is used,
    half of them built to have the property so both directions are exercised.
    """
    if id not in CONJECTURES:
        raise ValueError(f"unknown conjecture {id!r}; choose from {CONJECTURES}")
    if ctx.n < 5:
        raise ValueError("conjecture checks need n >= 5")
    for k in conjecture_requirements(id):
        if ctx.n % k:
            raise ValueError(f"conjecture {id} needs F_{ctx.p}^{k} inside the ambient field ({k} | n)")
    t0 = time.perf_counter()
    subs = enumerate_subspaces(ctx, 5) if sample is None else sample_rank5(id, ctx, sample, seed)
    results = parallel_map(_conj_one, [(id, V) for V in subs], jobs)
    tally = Counter(k for k, _ in results)
    bad = [w for _, w in results if w is not None]
    notes = [POINTWISE_NOTE]
    if sample is not None:
        notes.append(f"sampled {sample} subgroups with seed {seed}, half planted with the property")
    return CheckReport("conjecture", id, ctx.p, ctx.n, len(subs), bad, dict(tally), notes, time.perf_counter() - t0)


# theorem checks: each worker returns (tally key, counterexample or None)

def _field_one(args):
    V, s = args
    th, di = is_Fq_space_test(V, s)
    key = f"s={s},r={V.rank},{th}"
    return key, None if th == di else witness(V, s=s, theorem=th, direct=di)


def _comp_one(args):
    s, W = args
    ok = comp_identity_check(s, W)
    return f"s={s},l={W.rank}", None if ok else witness(W, s=s)


def _codim1_one(V):
    th, orc = codim1_classify(V)
    key = f"s={V.rank - 1},{th}"
    return key, None if th == orc else witness(V, theorem=th, oracle_is_s1=orc, partition=partition_of(V))


def _embedding_one(V):
    eq = embedding_equations(V)
    lit = embedding_equations(V, full=False)
    direct = embedding_direct(V)
    in_field = embedding_direct_in_field(V)
    if direct is None:
        return f"r={V.rank},unavailable", None
    key = f"r={V.rank},eq={eq},literal={lit},direct={direct},in_field={in_field}"
    return key, None if eq == direct else witness(V, equations=eq, literal=lit, direct=direct)


def _rk2_one(V):
    th, di = rank2_dichotomy(V)
    return f"{th}", None if th == di else witness(V, v1_zero=th, dilated_Fp2=di)


def _classify_one(V):
    res = classify(V)
    tp = res.theorem_partition
    key = f"theorem={tp if isinstance(tp, str) else ','.join(map(str, tp))},oracle={','.join(map(str, res.oracle_partition))}"
    return key, None if res.agree else witness(V, theorem=tp, oracle=res.oracle_partition, **res.values)


def _rk4p2_one(V):
    th, di = rank4_contains_Fp2(V)
    return f"{th}", None if th == di else witness(V, H_zero=th, dilated_Fp2=di, f_H=rk4p2_H(V))


def theorem_requirements(name: str) -> tuple[int, tuple[int, ...]]:
    """(minimum n, required divisors of n)."""
    return {
        "field": (2, (2,)),
        "comp": (2, (2,)),
        "codim1": (3, ()),
        "embedding": (3, (3,)),
        "rk2": (2, (2,)),
        "rk3": (3, ()),
        "rk4": (4, (2,)),
        "rk4p2": (4, (2,)),
        "rk5": (5, ()),
    }[name]


def _tasks(name: str, ctx: FieldCtx) -> tuple[Callable, list]:
    n = ctx.n
    if name == "field":
        tasks = []
        for s in range(2, n + 1):
            if n % s:
                continue
            for r in range(s, n + 1, s):
                tasks += [(V, s) for V in enumerate_subspaces(ctx, r)]
        return _field_one, tasks
    if name == "comp":
        tasks = []
        for s in range(1, n):
            if n % s:
                continue
            sub = ctx.subfield_codes(s)
            for ell in range(1, n - s + 1):
                tasks += [(s, W) for W in enumerate_subspaces(ctx, ell) if len(W.elements & sub) == 1]
        return _comp_one, tasks
    if name == "codim1":
        return _codim1_one, [V for s in range(2, n) for V in enumerate_subspaces(ctx, s + 1)]
    if name == "embedding":
        return _embedding_one, [V for r in range(2, n) for V in enumerate_subspaces(ctx, r)]
    if name == "rk2":
        return _rk2_one, enumerate_subspaces(ctx, 2)
    if name in ("rk3", "rk4", "rk5"):
        return _classify_one, enumerate_subspaces(ctx, int(name[2]))
    if name == "rk4p2":
        return _rk4p2_one, enumerate_subspaces(ctx, 4)
    raise ValueError(f"unknown theorem {name!r}; choose from {THEOREMS}")


def verify_theorem(name: str, ctx: FieldCtx, jobs: int | None = None) -> CheckReport:
    """Exhaustive bidirectional comparison of a theorem with its oracle on GF(p^n)."""
    if name not in THEOREMS:
        raise ValueError(f"unknown theorem {name!r}; choose from {THEOREMS}")
    n_min, divs = theorem_requirements(name)
    if ctx.n < n_min or any(ctx.n % k for k in divs):
        raise ValueError(f"theorem {name} needs n >= {n_min} divisible by {divs or 1}, got n={ctx.n}")
    t0 = time.perf_counter()
    fn, tasks = _tasks(name, ctx)
    results = parallel_map(fn, tasks, jobs)
    tally = Counter(k for k, _ in results)
    bad = [w for _, w in results if w is not None]
    notes = []
    if name == "embedding":
        notes.append("direct test is exact over the closure: V lies in a dilation of F_{p^(r+1)} iff v0^-1 V does")
        notes.append("literal= drops the i=r condition; in_field= restricts the dilation to F_{p^n}")
    if name == "rk5":
        notes.append("partitions other than (5) and (4,1) are reported as undetermined")
    return CheckReport("theorem", name, ctx.p, ctx.n, len(tasks), bad, dict(tally), notes, time.perf_counter() - t0)


def rank5_expectation_table(ctx: FieldCtx) -> dict[str, Counter]:
    """Empirical truth table for the (2,2,1) and (2,1,1,1) expectations."""
    out: dict[str, Counter] = {}
    for V in enumerate_subspaces(ctx, 5):
        lam = partition_of(V)
        d = _d(V)
        key = ",".join(map(str, lam))
        c = out.setdefault(key, Counter())
        c[f"d2_nonzero={d[1] != 0}"] += 1
        if ctx.n % 2 == 0:
            g = conjecture_values("fp2", V)["G"]
            r = conjecture_values("subspace", V)
            c[f"G_zero={g == 0},r_nonzero={r['r1'] != 0 or r['r2'] != 0}"] += 1
    return out


# ---------------------------------------------------------------------------
# named subgroups

def sum_of_subfields(ctx: FieldCtx, s: int, t: int) -> Subspace:
    """F_{p^s} + F_{p^t} inside GF(p^n)."""
    if ctx.n % s or ctx.n % t:
        raise ValueError("both subfields must lie in the ambient field")
    return Subspace.span(ctx, sorted(ctx.subfield_codes(s) | ctx.subfield_codes(t)))


def mixed_rank5_example(ctx: FieldCtx) -> Subspace:
    """Span{1, a, a^3, b, ab} with a in F_{p^3}, b in F_{p^2}.

    Only some generators a of F_{p^3} make the five elements independent
    (at p = 2, a root of t^3 + t + 1 has a^3 = a + 1); the first a and b,
    in code order, that give rank 5 are used.
    """
    if ctx.n % 6:
        raise ValueError("need F_{p^6} inside the ambient field")
    F3 = sorted(ctx.subfield_codes(3) - ctx.subfield_codes(1))
    F2 = sorted(ctx.subfield_codes(2) - ctx.subfield_codes(1))
    for a in F3:
        for b in F2:
            rows = [1, a, ctx.pow(a, 3), b, ctx.mul(a, b)]
            if len(echelon_rows(ctx, rows)) == 5:
                return Subspace.span(ctx, rows)
    raise AssertionError("no independent choice found")  # pragma: no cover
