"""Weight-zero monomials d_1^a_1 ... d_{r-1}^a_{r-1} d_r^(-a_r).

A monomial is F^x-invariant exactly when its exponent vector solves

    sum_{i<r} a_i (p^r - p^(r-i)) = a_r (p^r - 1).

The non-negative solutions form a pointed monoid; its primitive elements
(nonzero, not a sum of two nonzero solutions) give a minimal monomial
generating set.  This module builds the closed-form families for
r = 3, 4, 5 and enumerates primitives by brute force for comparison.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class CapWarning(UserWarning):
    """The enumeration cap may cut off primitive solutions."""


def weights(p: int, r: int) -> tuple[int, ...]:
    """(p^r - p^(r-1), ..., p^r - p) followed by p^r - 1 for the d_r slot."""
    return tuple(p ** r - p ** (r - i) for i in range(1, r)) + (p ** r - 1,)


@dataclass(frozen=True)
class ExponentVector:
    p: int
    a: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.a) < 2:
            raise ValueError("exponent vectors need r >= 2 entries")

    @property
    def r(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __getitem__(self, i):
        return self.a[i]

    def __len__(self) -> int:
        return len(self.a)

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(self.p, tuple(x + y for x, y in zip(self.a, other.a)))

    def __sub__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(self.p, tuple(x - y for x, y in zip(self.a, other.a)))

    def __le__(self, other: "ExponentVector") -> bool:
        return all(x <= y for x, y in zip(self.a, other.a))

    def __lt__(self, other: "ExponentVector") -> bool:
        return self.a < other.a

    @property
    def weight_defect(self) -> int:
        w = weights(self.p, self.r)
        return sum(x * y for x, y in zip(self.a[:-1], w[:-1])) - self.a[-1] * w[-1]

    @property
    def is_solution(self) -> bool:
        return self.weight_defect == 0

    @property
    def height(self) -> int:
        return sum(self.a[:-1]) - self.a[-1]

    def tilde(self) -> tuple[int, ...]:
        return to_tilde(self)

    def with_label(self, label: str) -> "ExponentVector":
        return ExponentVector(self.p, self.a, label)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<{','.join(map(str, self.a))}{tag}>"


def is_solution(v: ExponentVector) -> bool:
    return v.is_solution


def height(v: ExponentVector) -> int:
    return v.height


# ---------------------------------------------------------------------------
# The tilde basis:  a_r = p t_r,  a_{r-1} = p t_{r-1} + t_r,
# a_i = p t_i - t_{i+1} for i <= r-2.  Solutions satisfy
# t_1 + ... + t_{r-1} = t_r, and t_1 is the height.

def from_tilde(at: Sequence[int], p: int, r: int | None = None) -> ExponentVector:
    at = [int(x) for x in at]
    if r is not None and len(at) != r:
        raise ValueError(f"expected {r} tilde coordinates, got {len(at)}")
    r = len(at)
    if r < 2:
        raise ValueError("need r >= 2")
    a = [0] * r
    a[r - 1] = p * at[r - 1]
    a[r - 2] = p * at[r - 2] + at[r - 1]
    for i in range(r - 3, -1, -1):
        a[i] = p * at[i] - at[i + 1]
    return ExponentVector(p, tuple(a))


def to_tilde(v: ExponentVector) -> tuple[int, ...]:
    p, a, r = v.p, v.a, v.r
    at = [0] * r
    if a[r - 1] % p:
        raise ValueError(f"{v}: a_r is not divisible by p")
    at[r - 1] = a[r - 1] // p
    num = a[r - 2] - at[r - 1]
    if num % p:
        raise ValueError(f"{v}: divisibility fails at a_{r - 1}")
    at[r - 2] = num // p
    for i in range(r - 3, -1, -1):
        num = a[i] + at[i + 1]
        if num % p:
            raise ValueError(f"{v}: divisibility fails at a_{i + 1}")
        at[i] = num // p
    return tuple(at)


# ---------------------------------------------------------------------------
# Closed-form vectors

def v_vector(p: int, r: int, i: int) -> ExponentVector:
    """The unique primitive with support {d_i, d_r^-1}."""
    from math import gcd

    if not 1 <= i < r:
        raise ValueError(f"need 1 <= i < r, got i={i}, r={r}")
    ell = gcd(p ** i - 1, p ** r - 1)
    a = [0] * r
    a[i - 1] = (p ** r - 1) // ell
    a[r - 1] = p ** (r - i) * (p ** i - 1) // ell
    return ExponentVector(p, tuple(a), f"v{i}")


def min_pair_vector(p: int, r: int, i: int, j: int, aj: int, label: str = "") -> ExponentVector | None:
    """a_j = aj, a_i = a, a_r = b with b >= 1 least such that a is a positive integer.

    Solves b * w_r = aj * w_j (mod w_i) directly; b is kept below the
    (p^r - 1)^2 guard.  Returns None when no such b exists.
    """
    from math import gcd

    if i == j or not (1 <= i < r and 1 <= j < r):
        raise ValueError(f"need distinct i, j in 1..{r - 1}")
    w = weights(p, r)
    wi, wj, wr = w[i - 1], w[j - 1], w[r - 1]
    g = gcd(wr, wi)
    if (aj * wj) % g:
        return None
    mod = wi // g
    b = (aj * wj // g) * pow(wr // g, -1, mod) % mod if mod > 1 else 0
    while b < 1 or b * wr - aj * wj <= 0:
        b += mod
    if b > (p ** r - 1) ** 2:
        return None
    a = [0] * r
    a[i - 1] = (b * wr - aj * wj) // wi
    a[j - 1] = aj
    a[r - 1] = b
    return ExponentVector(p, tuple(a), label)


def _e(p: int, a: Iterable[int], label: str = "") -> ExponentVector:
    return ExponentVector(p, tuple(a), label)


def _t(p: int, at: Iterable[int], label: str = "") -> ExponentVector:
    return from_tilde(tuple(at), p).with_label(label)


def named_vectors(p: int, r: int) -> dict[str, ExponentVector]:
    """Vertices and named points used to describe the generating families."""
    if r == 3:
        return {
            "v1": _e(p, (p * p + p + 1, 0, p * p), "v1"),
            "v12": _e(p, (p, 1, p), "v12"),
            "v2": _e(p, (0, p * p + p + 1, p * p + p), "v2"),
        }
    if r == 4:
        return {
            "v1": _e(p, ((p ** 4 - 1) // (p - 1), 0, 0, p ** 3), "v1"),
            "v2": _e(p, (0, p * p + 1, 0, p * p), "v2"),
            "v3": _e(p, (0, 0, (p ** 4 - 1) // (p - 1), p * (p ** 3 - 1) // (p - 1)), "v3"),
            "v12": _e(p, (p * p + p, 1, 0, p * p), "v12"),
            "v13": _e(p, (p, 0, 1, p), "v13"),
            "u23": _e(p, (0, p * p, p + 1, p * p + p), "u23"),
            "v32": min_pair_vector(p, 4, 3, 2, 1, "v32"),
        }
    if r == 5:
        p2, p3, p4 = p ** 2, p ** 3, p ** 4
        return {
            "v1": _e(p, (p4 + p3 + p2 + p + 1, 0, 0, 0, p4), "v1"),
            "v2": _e(p, (0, p4 + p3 + p2 + p + 1, 0, 0, p4 + p3), "v2"),
            "v3": _e(p, (0, 0, p4 + p3 + p2 + p + 1, 0, p4 + p3 + p2), "v3"),
            "v4": _e(p, (0, 0, 0, p4 + p3 + p2 + p + 1, p4 + p3 + p2 + p), "v4"),
            "v12": _e(p, (p3 + p2 + p, 1, 0, 0, p3), "v12"),
            "v13": _e(p, (p2 + p, 0, 1, 0, p2), "v13"),
            "v14": _e(p, (p, 0, 0, 1, p), "v14"),
            "v23": _e(p, (0, p2, 1, 0, p2), "v23"),
            "v32": _e(p, (0, 1, p3, 0, p3), "v32"),
            "v34": _e(p, (0, 0, p3 + p, 1, p3 + p), "v34"),
            "w24": _e(p, (0, p2, 0, p + 1, p2 + p), "w24"),
            "w34": _e(p, (0, 0, p3, p2 + p + 1, p3 + p2 + p), "w34"),
            "w43": _e(p, (0, 0, p3 + 1, p2, p3 + p2), "w43"),
            "v312": _e(p, (p - 1, 1, p2 - p + 1, 0, p2), "v312"),
            "v123": _e(p, (p2 - 1, p, 1, 0, p2), "v123"),
            "w21": _e(p, (p, p3 + 1, 0, 0, p3), "w21"),
            "w24'": _e(p, (0, p3 + p2 + 1, 0, p, p3 + p2), "w24'"),
        }
    raise ValueError(f"no named vectors for r={r}")


# family name -> simplex vertices (names from named_vectors)
FAMILY_VERTICES: dict[int, dict[str, tuple[str, ...]]] = {
    3: {"L": ("v12", "v2"), "v1": ("v1",)},
    4: {"v1": ("v1",), "L": ("v2", "v12"), "Delta": ("v13", "v3", "u23")},
    5: {
        "T1": ("v4", "v14", "w24", "w34"),
        "T2": ("v14", "v23", "v34", "w43"),
        "Delta1": ("v23", "v32", "v312"),
        "Delta2": ("v312", "v23", "v123"),
        "Delta3": ("v2", "w21", "w24'"),
        "L1": ("v3", "v13"),
        "L2": ("w21", "v12"),
        "v1": ("v1",),
    },
}


def _family_r3(p: int) -> list[ExponentVector]:
    out = [
        _e(p, (p * p + p + 1, 0, p * p), "v1"),
        _e(p, (0, p * p + p + 1, p * p + p), "v2"),
        _e(p, (p, 1, p), "v12"),
    ]
    for i in range(1, p):
        out.append(_e(p, (p - i, i * (p + 1) + 1, (i + 1) * p), f"f{i}"))
    return out


def _family_r4(p: int) -> list[ExponentVector]:
    out = [_e(p, ((p ** 4 - 1) // (p - 1), 0, 0, p ** 3), "v1")]
    for j in range(p + 1):
        out.append(_e(p, ((p + 1) * j, p * p + 1 - j * p, 0, p * p), "L"))
    for i in range(p + 1):
        for j in range(p * p - i * p + 1):
            a3 = p ** 3 + (1 - i) * p * p + (1 - i - j) * (p + 1)
            a4 = p ** 3 + (1 - i) * p * p + (1 - i - j) * p
            out.append(_e(p, (i, j, a3, a4), "Delta"))
    return out


def _family_r5(p: int) -> list[ExponentVector]:
    p2, p3, p4 = p ** 2, p ** 3, p ** 4
    out = []
    # T1: height one with tilde_4 >= 0
    for i in range(p + 1):
        for j in range(p * i + 1):
            for k in range(p * j + 1):
                out.append(_t(p, (1, i, j, k, 1 + i + j + k), "T1"))
    # T2: barycentric coordinates on v14, v23, v34, w43 all non-negative
    for i in range(p + 1):
        for j in range(p * i + 1):
            # p k + i <= 0  and  (p-1) j + p^2 k + p i >= 0
            k_hi = -((i + p - 1) // p)
            k_lo = -((p * i + (p - 1) * j) // p2)
            for k in range(k_lo, k_hi + 1):
                out.append(_t(p, (1, i, j, k, 1 + i + j + k), "T2"))
    # Delta1
    for i in range(p):
        for j in range(p - i):
            out.append(_e(p, (j, i * (p + 1) + 1, p3 - j * (p2 + 1) - i * (p2 + p + 1), 0, p2 * (p - i - j)), "Delta1"))
    # Delta2
    for i in range(1, p + 1):
        for j in range(1, p + 2 - i):
            out.append(_t(p, (i, j, p + 1 - (i + j), -1, p), "Delta2"))
    # Delta3
    for i in range(p + 1):
        for j in range(p + 1 - i):
            out.append(_e(p, (i, p4 + p2 + (p3 + 1) * (1 - (i + j)) + p * (1 - i), 0, j, p4 + p3 * (1 - (i + j)) + p * j), "Delta3"))
    # L1
    for i in range(p2 + p + 1):
        out.append(_e(p, (i, 0, (p2 + p - i) * (p2 + 1) + 1, 0, (p2 + p + 1 - i) * p2), "L1"))
    # L2
    for j in range(p2 + 1):
        out.append(_e(p, (p3 + p2 + p - j * (p + 1), 1 + j * p, 0, 0, p3), "L2"))
    out.append(_e(p, (p4 + p3 + p2 + p + 1, 0, 0, 0, p4), "v1"))
    return out


def generating_family_tagged(p: int, r: int) -> list[ExponentVector]:
    """Closed-form family with a family tag on each member, duplicates dropped
    (first family in listing order keeps the point)."""
    if r == 3:
        raw = _family_r3(p)
    elif r == 4:
        raw = _family_r4(p)
    elif r == 5:
        raw = _family_r5(p)
    else:
        raise ValueError(f"closed-form generating families exist only for r in 3..5, got {r}")
    seen: dict[tuple[int, ...], ExponentVector] = {}
    for v in raw:
        if not v.is_solution or min(v.a) < 0:
            raise AssertionError(f"family member {v} is not a non-negative solution")
        seen.setdefault(v.a, v)
    return sorted(seen.values())


def generating_family(p: int, r: int) -> set[ExponentVector]:
    return set(generating_family_tagged(p, r))


def family_cardinality(p: int, r: int) -> int:
    return len(generating_family_tagged(p, r))


def default_cap(p: int, r: int) -> int:
    """Twice the largest coordinate of the closed-form family."""
    return 2 * max(max(v.a) for v in generating_family_tagged(p, r))


# ---------------------------------------------------------------------------
# Brute-force enumeration

def enumerate_solutions(p: int, r: int, cap: int, support: Iterable[int] | None = None) -> np.ndarray:
    """All non-negative solutions with every coordinate <= cap, as rows.

    ``support`` restricts which of a_1..a_{r-1} may be nonzero (1-based).
    """
    if r < 2:
        raise ValueError("need r >= 2")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    w = weights(p, r)
    top = w[-1]
    if cap * sum(w) >= 2 ** 62:
        raise OverflowError("cap too large for int64 enumeration")
    free = list(range(1, r)) if support is None else sorted(set(support) - {r})
    if any(not 1 <= i < r for i in free):
        raise ValueError("support indices must lie in 1..r-1")
    if not free:
        return np.zeros((1, r), dtype=np.int64)
    ww = np.array([w[i - 1] for i in free], dtype=np.int64)
    rng = np.arange(cap + 1, dtype=np.int64)
    chunks = []
    lead = free[0]
    rest = free[1:]
    if rest:
        grids = np.meshgrid(*([rng] * len(rest)), indexing="ij")
        rest_cols = np.stack([g.ravel() for g in grids], axis=1)
        rest_sum = rest_cols @ ww[1:]
    else:
        rest_cols = np.zeros((1, 0), dtype=np.int64)
        rest_sum = np.zeros(1, dtype=np.int64)
    for x in range(cap + 1):
        total = rest_sum + x * ww[0]
        ok = (total % top == 0) & (total // top <= cap)
        if not ok.any():
            continue
        sel = rest_cols[ok]
        block = np.zeros((sel.shape[0], r), dtype=np.int64)
        block[:, lead - 1] = x
        for col, i in enumerate(rest):
            block[:, i - 1] = sel[:, col]
        block[:, r - 1] = total[ok] // top
        chunks.append(block)
    return np.concatenate(chunks, axis=0)


def minimal_elements(sols: np.ndarray) -> np.ndarray:
    """Nonzero rows not dominated coordinatewise by another nonzero row.

    Graded by the last coordinate: a dominating solution has strictly
    smaller a_r, because every weight is positive.
    """
    sols = sols[sols.any(axis=1)]
    if len(sols) == 0:
        return sols
    order = np.lexsort(sols.T[::-1])
    sols = sols[order]
    grade = sols[:, -1]
    prims = np.zeros((0, sols.shape[1]), dtype=sols.dtype)
    for g in np.unique(grade):
        block = sols[grade == g]
        if len(prims):
            dom = (prims[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
            block = block[~dom]
        prims = np.concatenate([prims, block], axis=0)
    return prims


def enumerate_primitive(p: int, r: int, cap: int, support: Iterable[int] | None = None) -> list[ExponentVector]:
    """Primitive solutions with all coordinates <= cap, sorted.

    The answer is exact inside the box: a dominating solution of a boxed
    vector is itself boxed.  Primitives with a coordinate above ``cap`` are
    not seen; a :class:`CapWarning` is raised when the cap is below the
    largest closed-form coordinate (r in 3..5) or when a primitive touches it.
    """
    prims = minimal_elements(enumerate_solutions(p, r, cap, support))
    out = sorted(ExponentVector(p, tuple(int(x) for x in row)) for row in prims)
    if support is None and 3 <= r <= 5:
        need = max(max(v.a) for v in generating_family_tagged(p, r))
        if cap < need:
            warnings.warn(f"cap {cap} is below the largest known primitive coordinate {need}", CapWarning, stacklevel=2)
    if any(max(v.a) >= cap for v in out):
        warnings.warn(f"a primitive touches the cap {cap}; larger primitives may be missing", CapWarning, stacklevel=2)
    return out


def is_primitive(v: ExponentVector, cap: int | None = None) -> bool:
    """Direct check: no nonzero solution u < v other than v itself."""
    if not v.is_solution or not any(v.a):
        return False
    ranges = [range(x + 1) for x in v.a[:-1]]
    w = weights(v.p, v.r)
    for head in itertools.product(*ranges):
        s = sum(x * y for x, y in zip(head, w[:-1]))
        if s == 0 or s % w[-1]:
            continue
        ar = s // w[-1]
        if ar <= v.a[-1] and (head + (ar,)) != v.a:
            return False
    return True
