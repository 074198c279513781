"""Exact arithmetic in GF(p) and GF(p^n).

Elements are stored as integer codes: the coefficient vector
(c_0, ..., c_{n-1}) of c_0 + c_1 t + ... + c_{n-1} t^{n-1} is packed as
sum(c_i * p**i).  For p = 2 the code is the usual bit pattern.  All
arithmetic goes through a :class:`FieldCtx`; :class:`FqElem` is a thin
operator-overloading wrapper around a code and its context.

Fields with at most ``TABLE_LIMIT`` elements get exp/log and Zech tables;
larger ones fall back to schoolbook polynomial arithmetic.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Sequence

TABLE_LIMIT = 1 << 16


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    k = 3
    while k * k <= m:
        if m % k == 0:
            return False
        k += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    k = 2
    while k * k <= m:
        if m % k == 0:
            out.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# Polynomials over F_p as ascending coefficient lists, trailing zeros stripped.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    m = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(m)]
    return _trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else 1
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        _trim(a)
    return _trim(q), a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return poly_divmod(a, b, p)[1]


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv_lead = pow(a[-1], p - 2, p) if p > 2 else 1
        a = [(x * inv_lead) % p for x in a]
    return a


def poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """gcd(f, t^(p^k) - t) = 1 for every k <= deg(f)/2."""
    f = _trim(list(modulus))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(n // 2):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(f, poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n with the smallest lower-coefficient code."""
    for code in range(p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


# ---------------------------------------------------------------------------

class FieldCtx:
    """GF(p^n) with a fixed monic irreducible modulus.

    Immutable after construction.  Codes are ints in ``range(p**n)``.
    """

    def __init__(self, p: int, n: int, modulus: Sequence[int] | None = None, tables: bool | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"extension degree must be a positive integer, got {n!r}")
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self.order = self.q - 1
        if tables is None:
            tables = self.q <= TABLE_LIMIT
        self._tables = tables
        self._exp: list[int] = []
        self._log: list[int] = []
        self._zech: list[int] = []
        if tables:
            self._build_tables()

    # -- construction helpers -------------------------------------------
    def _build_tables(self) -> None:
        g = self._find_primitive_slow()
        q1 = self.order
        exp = [0] * (2 * q1)
        log = [-1] * self.q
        x = 1
        for k in range(q1):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        exp[q1:] = exp[:q1]
        self._exp, self._log = exp, log
        self.generator_code = g
        if self.p != 2:
            # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
            zech = [0] * q1
            for k in range(q1):
                s = self._add_digits(1, exp[k])
                zech[k] = log[s] if s else -1
            self._zech = zech

    def _find_primitive_slow(self) -> int:
        if self.q == 2:
            return 1
        primes = prime_factors(self.order)
        for g in range(2, self.q):
            if all(self._pow_slow(g, self.order // ell) != 1 for ell in primes):
                return g
        raise AssertionError("no primitive element")  # unreachable

    def __reduce__(self):
        return (make_field_with_modulus, (self.p, self.n, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    # -- code <-> coefficients -------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        code = 0
        mult = 1
        for d in ds:
            code += (d % self.p) * mult
            mult *= self.p
        return code

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        code = 0
        mult = 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            code += ((x + y) % p) * mult
            mult *= p
        return code

    def _mul_slow(self, a: int, b: int) -> int:
        prod = poly_mod(poly_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p), self.modulus, self.p)
        return self.from_digits(prod)

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    # -- arithmetic on codes ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not self._tables:
            return self._add_digits(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        k = lb - la
        if k < 0:
            k += self.order
        z = self._zech[k]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.mul(self.p - 1, a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d^%d)" % (self.p, self.n))
        if self._tables:
            return self._exp[(self.order - self._log[a]) % self.order]
        return self._pow_slow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._tables:
            return self._exp[(self._log[a] * e) % self.order]
        return self._pow_slow(a, e % self.order or self.order)

    def frob(self, a: int, s: int = 1) -> int:
        """a^(p^s) by repeated p-th powering."""
        for _ in range(s):
            a = self.pow(a, self.p)
        return a

    def log(self, a: int) -> int:
        if not self._tables:
            raise NotImplementedError("discrete log needs tables")
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        if not self._tables:
            return self._pow_slow(self.generator(), k)
        return self._exp[k % self.order]

    # -- structure --------------------------------------------------------
    def generator(self) -> int:
        """Code of a fixed primitive element (generator of the unit group)."""
        if self._tables:
            return self.generator_code
        g = getattr(self, "_gen_cache", None)
        if g is None:
            g = self._find_primitive_slow()
            self._gen_cache = g
        return g

    def elements(self) -> range:
        return range(self.q)

    def prime_subfield(self) -> range:
        # constants 0..p-1 have codes 0..p-1
        return range(self.p)

    def subfield_codes(self, m: int) -> frozenset[int]:
        return _subfield_codes(self, m)

    def hex(self, a: int) -> str:
        return "".join("0123456789abcdef"[d] for d in self.digits(a))

    def from_hex(self, s: str) -> int:
        # little-endian, so missing high digits are zero
        s = s.strip().lower()
        if not s or len(s) > self.n:
            raise ValueError(f"expected 1 to {self.n} base-{self.p} digits, got {s!r}")
        s = s.ljust(self.n, "0")
        ds = [int(ch, 16) for ch in s]
        if any(d >= self.p for d in ds):
            raise ValueError(f"digit out of range for p={self.p} in {s!r}")
        return self.from_digits(ds)

    # -- element wrappers -------------------------------------------------
    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.ctx != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.p:
                # integers embed through the prime field
                value %= self.p
            return FqElem(self, value)
        if isinstance(value, (list, tuple)):
            if len(value) > self.n:
                raise ValueError("too many coefficients")
            return FqElem(self, self.from_digits(value))
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def elem(self, code: int) -> "FqElem":
        if not 0 <= code < self.q:
            raise ValueError("code out of range")
        return FqElem(self, code)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    @property
    def t(self) -> "FqElem":
        """The class of the indeterminate (a root of the modulus)."""
        if self.n == 1:
            return FqElem(self, self.from_digits([-self.modulus[0]]))
        return FqElem(self, self.p)


@functools.lru_cache(maxsize=None)
def _subfield_codes(ctx: FieldCtx, m: int) -> frozenset[int]:
    if m < 1 or ctx.n % m:
        raise ValueError(f"F_{ctx.p}^{m} is not a subfield of GF({ctx.p}^{ctx.n}): {m} does not divide {ctx.n}")
    if ctx._tables:
        step = ctx.order // (ctx.p ** m - 1)
        return frozenset([0] + [ctx._exp[k] for k in range(0, ctx.order, step)])
    return frozenset(a for a in range(ctx.q) if ctx.frob(a, m) == a)


class FqElem:
    """Element of GF(p^n); compares equal coefficientwise within one field."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise ValueError("mismatched field contexts")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.ctx, self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.ctx, self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.ctx, self.ctx.sub(b, self.code))

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.ctx, self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.ctx, self.ctx.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FqElem(self.ctx, self.ctx.div(b, self.code))

    def __pow__(self, e: int):
        return FqElem(self.ctx, self.ctx.pow(self.code, e))

    def inverse(self) -> "FqElem":
        return FqElem(self.ctx, self.ctx.inv(self.code))

    def frobenius(self, s: int = 1) -> "FqElem":
        return frobenius(self, s)

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.code)

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = str(c) if (c != 1 or i == 0) else ""
                terms.append(coef + mono)
        return " + ".join(reversed(terms)) if terms else "0"

    def hex(self) -> str:
        return self.ctx.hex(self.code)


# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int) -> FieldCtx:
    """GF(p^n) with the lexicographically smallest monic irreducible modulus."""
    return FieldCtx(p, n)


@functools.lru_cache(maxsize=None)
def make_field_with_modulus(p: int, n: int, modulus: tuple[int, ...]) -> FieldCtx:
    return FieldCtx(p, n, modulus)


def element_arith(op: str, a: FqElem, b: FqElem) -> FqElem:
    if a.ctx != b.ctx:
        raise ValueError("mismatched field contexts")
    ctx = a.ctx
    if op == "add":
        return FqElem(ctx, ctx.add(a.code, b.code))
    if op == "sub":
        return FqElem(ctx, ctx.sub(a.code, b.code))
    if op == "mul":
        return FqElem(ctx, ctx.mul(a.code, b.code))
    if op == "div":
        return FqElem(ctx, ctx.div(a.code, b.code))
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FqElem, s: int = 1) -> FqElem:
    if s < 0:
        raise ValueError("Frobenius exponent must be non-negative")
    return FqElem(a.ctx, a.ctx.frob(a.code, s))


def subfield_elements(ctx: FieldCtx, m: int) -> frozenset[FqElem]:
    """The p^m elements fixed by a -> a^(p^m)."""
    return frozenset(FqElem(ctx, c) for c in _subfield_codes(ctx, m))


def gaussian_binomial(n: int, r: int, p: int) -> int:
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= p ** (n - i) - 1
        den *= p ** (r - i) - 1
    return num // den


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def gcd(*xs: int) -> int:
    return math.gcd(*xs)
