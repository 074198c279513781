"""Closed-form separating invariants and their exhaustive check.

Each invariant is a weight-zero monomial d_1^a_1 ... d_{r-1}^a_{r-1} / d_r^a_r,
so it is constant on dilation orbits.  Evaluating a list of them on one
representative per orbit and comparing the tuples tells whether the list
separates the F_{p^n}-rational orbits.

Any alpha with alpha E = E' for subgroups E, E' of F_{p^n} is a ratio of two
nonzero elements of F_{p^n}, so in-field orbits are exactly the orbits of the
algebraic closure restricted to F_{p^n}; the check is a sound restriction.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field

from .dickson import DicksonVector, DependentBasisError, dickson_codes
from .field import FieldCtx, FqElem, gcd
from .monoid import ExponentVector, min_pair_vector, v_vector
from .subspace import Subspace, dilate, dilation_orbit_reps

SOUNDNESS_NOTE = (
    "alpha relating two subgroups of F_{p^n} is a ratio of nonzero elements of "
    "F_{p^n}, so in-field orbit equivalence coincides with equivalence over the closure"
)


@dataclass(frozen=True)
class InvariantSpec:
    kind: str  # "v_i", "v_ij", "u_ij" or "custom"
    indices: tuple[int, ...]
    exponents: ExponentVector
    label: str

    def __post_init__(self):
        if not self.exponents.is_solution:
            raise ValueError(f"{self.label}: exponent vector {self.exponents} has nonzero weight")

    @property
    def p(self) -> int:
        return self.exponents.p

    @property
    def r(self) -> int:
        return self.exponents.r

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "indices": list(self.indices),
            "exponents": list(self.exponents.a),
        }


def v_exponents(p: int, r: int, i: int) -> InvariantSpec:
    if not 1 <= i < r:
        raise ValueError(f"v_i needs 1 <= i < r, got i={i}, r={r}")
    return InvariantSpec("v_i", (i,), v_vector(p, r, i).with_label(f"v{i}"), f"v{i}")


def vij_exponents(p: int, r: int, i: int, j: int) -> InvariantSpec:
    if i == j or not (1 <= i < r and 1 <= j < r):
        raise ValueError(f"v_ij needs distinct i, j in 1..{r - 1}")
    if j % gcd(r, i):
        raise ValueError(f"v_{i}{j} does not exist for r={r}: gcd(r, i)={gcd(r, i)} does not divide j")
    vec = min_pair_vector(p, r, i, j, 1, f"v{i}{j}")
    if vec is None:  # pragma: no cover - excluded by the divisibility check
        raise AssertionError(f"no solution found for v_{i}{j}")
    return InvariantSpec("v_ij", (i, j), vec, f"v{i}{j}")


def uij_exponents(p: int, r: int, i: int, j: int) -> InvariantSpec:
    if i == j or not (1 <= i < r and 1 <= j < r):
        raise ValueError(f"u_ij needs distinct i, j in 1..{r - 1}")
    if gcd(r, i) != 2 or j % 2 == 0:
        raise ValueError(f"u_{i}{j} needs gcd(r, i) = 2 and j odd (r={r})")
    vec = min_pair_vector(p, r, i, j, p + 1, f"u{i}{j}")
    if vec is None:  # pragma: no cover
        raise AssertionError(f"no solution found for u_{i}{j}")
    return InvariantSpec("u_ij", (i, j), vec, f"u{i}{j}")


def _is_prime(r: int) -> bool:
    return r > 1 and all(r % k for k in range(2, int(r ** 0.5) + 1))


def separating_set(p: int, r: int) -> list[InvariantSpec]:
    """The rank-specific separating list, 2 <= r <= 11."""
    if not 2 <= r <= 11:
        raise ValueError(f"separating sets are known for 2 <= r <= 11, got {r}")
    vs = [v_exponents(p, r, i) for i in range(1, r)]
    if r == 2:
        return vs
    pairs: list[tuple[int, int]] = []
    extra: list[InvariantSpec] = []
    if _is_prime(r):
        pairs = [(i, j) for i in range(1, r) for j in range(i + 1, r)]
    elif r == 4:
        pairs = [(1, 2), (1, 3), (3, 2)]
    elif r == 6:
        pairs = [(1, 2), (1, 3), (1, 4), (1, 5), (5, 2), (5, 3), (5, 4), (2, 4)]
        extra = [uij_exponents(p, r, 2, 3), uij_exponents(p, r, 4, 3)]
    elif r == 8:
        pairs = [(i, j) for i in range(1, r, 2) for j in range(i + 1, r)]
        pairs += [(2, 4), (2, 6), (6, 4)]
    elif r == 9:
        pairs = [(i, j) for i in range(1, r) if i not in (3, 6) for j in range(i + 1, r)]
        pairs += [(3, 6)]
    elif r == 10:
        pairs = [(i, j) for i in (1, 3, 7, 9) for j in range(i + 1, r)]
        pairs += [(i, j) for i in range(2, r, 2) for j in range(i + 2, r, 2)]
        extra = [uij_exponents(p, r, i, 5) for i in range(2, r, 2)]
    return vs + [vij_exponents(p, r, i, j) for i, j in pairs] + extra


# ---------------------------------------------------------------------------
# Evaluation

def eval_monomial_codes(ctx: FieldCtx, d: tuple[int, ...], a: tuple[int, ...]) -> int:
    """prod d_i^a_i * d_r^(-a_r) for a Dickson code vector d with d_r != 0."""
    if d[-1] == 0:
        raise DependentBasisError("d_r vanishes: the subgroup does not have full rank")
    acc = 1
    for di, ai in zip(d[:-1], a[:-1]):
        if ai:
            acc = ctx.mul(acc, ctx.pow(di, ai))
    if a[-1]:
        acc = ctx.mul(acc, ctx.pow(ctx.inv(d[-1]), a[-1]))
    return acc


def _dickson_codes_of(V) -> tuple[FieldCtx, tuple[int, ...]]:
    if isinstance(V, Subspace):
        return V.ctx, V.dickson.codes
    if isinstance(V, DicksonVector):
        return V.ctx, V.codes
    elems = list(V)
    ctx = elems[0].ctx
    return ctx, dickson_codes(ctx, [e.code for e in elems])


def eval_invariant(spec: InvariantSpec | ExponentVector, V) -> FqElem:
    """Value of the monomial at V (a Subspace, a basis list, or a DicksonVector)."""
    ctx, d = _dickson_codes_of(V)
    a = spec.exponents.a if isinstance(spec, InvariantSpec) else spec.a
    if len(a) != len(d):
        raise ValueError(f"invariant has rank {len(a)} but the subgroup has rank {len(d)}")
    return FqElem(ctx, eval_monomial_codes(ctx, d, a))


def fingerprint(specs: list[InvariantSpec], V) -> tuple[str, ...]:
    ctx, d = _dickson_codes_of(V)
    return tuple(ctx.hex(eval_monomial_codes(ctx, d, s.exponents.a)) for s in specs)


# ---------------------------------------------------------------------------

@dataclass
class SeparatingReport:
    p: int
    n: int
    r: int
    orbit_count: int
    specs: list[str]
    unseparated_pairs: list[tuple[list[int], list[int]]]
    fingerprints: list[tuple[list[int], list[str]]]
    invariance_failures: list[list[int]] = field(default_factory=list)
    note: str = SOUNDNESS_NOTE

    @property
    def ok(self) -> bool:
        return not self.unseparated_pairs and not self.invariance_failures

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "r": self.r,
            "orbit_count": self.orbit_count,
            "specs": self.specs,
            "unseparated_pairs": [[list(a), list(b)] for a, b in self.unseparated_pairs],
            "invariance_failures": [list(x) for x in self.invariance_failures],
            "fingerprints": [{"rep": list(rep), "values": list(vals)} for rep, vals in self.fingerprints],
            "note": self.note,
        }


def separation_check(ctx: FieldCtx, r: int, jobs: int | None = None, specs: list[InvariantSpec] | None = None) -> SeparatingReport:
    """Evaluate the separating set on every orbit representative.

    Dilation invariance is also checked on each rep against its image under
    a primitive element.  ``jobs`` is accepted for interface symmetry; the
    evaluation is cheap enough to run serially.
    """
    if not 2 <= r <= min(ctx.n, 11):
        raise ValueError(f"need 2 <= r <= min(n, 11), got r={r}, n={ctx.n}")
    specs = separating_set(ctx.p, r) if specs is None else specs
    table = dilation_orbit_reps(ctx, r)
    g = ctx.generator()
    groups: dict[tuple[str, ...], list[Subspace]] = defaultdict(list)
    prints = []
    bad_inv = []
    for V in table.reps:
        fp = fingerprint(specs, V)
        groups[fp].append(V)
        prints.append((list(V.rows), list(fp)))
        if fingerprint(specs, dilate(g, V)) != fp:
            bad_inv.append(list(V.rows))
    unsep = []
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                unsep.append((list(members[a].rows), list(members[b].rows)))
    unsep.sort()
    return SeparatingReport(ctx.p, ctx.n, r, len(table), [s.label for s in specs], unsep, prints, bad_inv)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("DICKINV_JOBS", "1")))
    except ValueError:
        return 1
