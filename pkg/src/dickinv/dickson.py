"""Dickson invariants evaluated at a basis of a finite additive subgroup.

For E = Span_{F_p}{c_1, ..., c_r} inside GF(p^n) the polynomial

    F_E(t) = prod_{c in E} (t - c) = t^(p^r) + sum_{i<r} d_{r-i,r}(E) t^(p^i)

is additive, and its non-leading coefficients are the Dickson invariants.
Two routes are provided: :func:`norm_poly` expands the product over all
p^r roots, :func:`dickson_eval` runs the column-by-column recursion

    d_{i,s+1} = d_{i,s}^p - d_{i-1,s} * D_s(c_{s+1})^(p-1)

which never touches more than r + 1 values at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import FieldCtx, FqElem, gcd


class DependentBasisError(ValueError):
    """Raised when an operation needs an F_p-independent basis."""


def _as_codes(basis) -> tuple[FieldCtx, list[int]]:
    """Accept a Subspace, or a non-empty sequence of FqElem."""
    rows = getattr(basis, "rows", None)
    if rows is not None:
        return basis.ctx, list(rows)
    basis = list(basis)
    if not basis:
        raise ValueError("empty basis")
    ctx = basis[0].ctx
    for b in basis:
        if b.ctx != ctx:
            raise ValueError("basis elements live in different fields")
    return ctx, [b.code for b in basis]


# ---------------------------------------------------------------------------

def span_codes(ctx: FieldCtx, codes: Iterable[int]) -> frozenset[int]:
    elems = [0]
    for c in codes:
        if c in elems:
            continue
        multiples = [ctx.mul(k, c) for k in range(1, ctx.p)]
        elems = elems + [ctx.add(e, m) for m in multiples for e in elems]
    return frozenset(elems)


def subgroup_elements(basis) -> frozenset[FqElem]:
    """All F_p-combinations of the basis; dependent bases give the smaller span."""
    ctx, codes = _as_codes(basis)
    return frozenset(FqElem(ctx, c) for c in span_codes(ctx, codes))


def rank_codes(ctx: FieldCtx, codes: Iterable[int]) -> int:
    from .subspace import echelon_rows

    return len(echelon_rows(ctx, codes))


def rank(basis) -> int:
    """F_p-dimension of the span, by Gaussian elimination on coefficient vectors."""
    ctx, codes = _as_codes(basis)
    return rank_codes(ctx, codes)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DicksonVector:
    """(d_{1,r}(E), ..., d_{r,r}(E)) as codes.

    Indexing follows the usual conventions: ``dv[0]`` is 1 and indices
    below 0 or above r give 0.
    """

    ctx: FieldCtx
    codes: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.codes)

    def code(self, i: int) -> int:
        if i == 0:
            return 1
        if i < 0 or i > self.r:
            return 0
        return self.codes[i - 1]

    def __getitem__(self, i: int) -> FqElem:
        return FqElem(self.ctx, self.code(i))

    @property
    def values(self) -> tuple[FqElem, ...]:
        return tuple(FqElem(self.ctx, c) for c in self.codes)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return self.r

    def hex(self) -> list[str]:
        return [self.ctx.hex(c) for c in self.codes]


@dataclass(frozen=True)
class AdditivePoly:
    """Monic additive polynomial t^(p^r) + sum_i coeff[i] t^(p^i).

    ``coeffs[i]`` is the code of the coefficient of t^(p^i) for i < r.
    """

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.coeffs)

    def coefficient(self, i: int) -> FqElem:
        """Coefficient of t^(p^i)."""
        if i == self.r:
            return self.ctx.one
        return FqElem(self.ctx, self.coeffs[i])

    def eval_code(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        xp = x
        for c in self.coeffs:
            acc = ctx.add(acc, ctx.mul(c, xp))
            xp = ctx.pow(xp, ctx.p)
        return ctx.add(acc, xp)

    def __call__(self, x: FqElem) -> FqElem:
        return FqElem(self.ctx, self.eval_code(x.code))

    def dickson(self) -> DicksonVector:
        # d_{r-i,r} is the coefficient of t^(p^i)
        return DicksonVector(self.ctx, tuple(self.coeffs[self.r - j] for j in range(1, self.r + 1)))

    def homogenized(self, x: FqElem, y: FqElem) -> FqElem:
        """N_E(x, y) = x^|E| F_E(y/x), expanded termwise so x = 0 is allowed."""
        ctx = self.ctx
        q = ctx.p ** self.r
        acc = ctx.pow(y.code, q)
        for i, c in enumerate(self.coeffs):
            pi = ctx.p ** i
            term = ctx.mul(c, ctx.mul(ctx.pow(y.code, pi), ctx.pow(x.code, q - pi)))
            acc = ctx.add(acc, term)
        return FqElem(ctx, acc)


def product_poly_codes(ctx: FieldCtx, roots: Iterable[int]) -> list[int]:
    """Dense ascending coefficients of prod (t - c)."""
    poly = [1]
    for c in roots:
        nc = ctx.neg(c)
        out = [0] * (len(poly) + 1)
        for k, a in enumerate(poly):
            out[k + 1] = ctx.add(out[k + 1], a)
            out[k] = ctx.add(out[k], ctx.mul(a, nc))
        poly = out
    return poly


def norm_poly(basis) -> AdditivePoly:
    """F_E(t) by multiplying out all p^r linear factors."""
    ctx, codes = _as_codes(basis)
    r = len(codes)
    roots = span_codes(ctx, codes)
    if len(roots) != ctx.p ** r:
        raise DependentBasisError(f"basis of length {r} spans only {len(roots)} elements")
    dense = product_poly_codes(ctx, sorted(roots))
    sparse = []
    powers = {ctx.p ** i: i for i in range(r + 1)}
    for k, c in enumerate(dense):
        if c and k not in powers:
            raise AssertionError(f"F_E has a non-additive term t^{k}")  # would mean E is not a group
    for i in range(r):
        sparse.append(dense[ctx.p ** i])
    if dense[ctx.p ** r] != 1:
        raise AssertionError("F_E is not monic")
    return AdditivePoly(ctx, tuple(sparse))


def dickson_codes(ctx: FieldCtx, codes: Sequence[int], check: bool = True) -> tuple[int, ...]:
    """Recursion over basis columns; returns (d_1, ..., d_r) codes."""
    p = ctx.p
    d = [1]  # d[i] = d_{i,s}; d[0] = 1
    for c in codes:
        s = len(d) - 1
        # D_s(c) = c^(p^s) + sum_{i<s} d_{s-i,s} c^(p^i)
        acc = 0
        cp = c
        for i in range(s):
            acc = ctx.add(acc, ctx.mul(d[s - i], cp))
            cp = ctx.pow(cp, p)
        acc = ctx.add(acc, cp)
        if acc == 0 and check:
            raise DependentBasisError("basis is linearly dependent over F_p")
        h = ctx.pow(acc, p - 1)
        new = [1]
        for i in range(1, s + 2):
            prev = ctx.pow(d[i], p) if i <= s else 0
            new.append(ctx.sub(prev, ctx.mul(d[i - 1], h)))
        d = new
    return tuple(d[1:])


def dickson_eval(basis) -> DicksonVector:
    """All Dickson invariants of the span of an independent basis."""
    ctx, codes = _as_codes(basis)
    if not codes:
        raise ValueError("empty basis")
    return DicksonVector(ctx, dickson_codes(ctx, codes))


def dickson_of(ctx: FieldCtx, codes: Sequence[int]) -> DicksonVector:
    return DicksonVector(ctx, dickson_codes(ctx, codes))


# ---------------------------------------------------------------------------

def omega_code(ctx: FieldCtx, s: int, a: int) -> int:
    return ctx.sub(ctx.frob(a, s), a)


def omega_map(s: int, basis) -> list[FqElem]:
    """Apply t -> t^(p^s) - t to each basis element.

    Requires Span(basis) to meet F_{p^s} trivially, so the image has the
    same rank.
    """
    ctx, codes = _as_codes(basis)
    if s < 1:
        raise ValueError("s must be positive")
    # the kernel of omega_s inside GF(p^n) is F_{p^gcd(s,n)}
    kernel = ctx.subfield_codes(gcd(s, ctx.n))
    if len(span_codes(ctx, codes) & kernel) > 1:
        raise ValueError(f"subgroup meets F_{ctx.p}^{s} nontrivially")
    return [FqElem(ctx, omega_code(ctx, s, c)) for c in codes]
