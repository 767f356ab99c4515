"""Coefficient substrate: rationals, prime fields, and univariate polynomials.

Rationals are `fractions.Fraction` (already normalized: lowest terms,
positive denominator).  Prime fields are capped at p < 2**31 so residue
products fit in a machine word, which is what lets the dense kernels stay
in int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .errors import (CharacteristicTooSmall, ConstantPolynomial,
                     RingMismatch, ZeroInverse)

Rational = Fraction

MAX_PRIME = 2**31

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


# ---------------------------------------------------------------------------
# coefficient rings


class _RationalField:
    """Ring tag + elementwise operations for Q."""

    char = 0

    def __repr__(self):
        return "QQ"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise RingMismatch(f"cannot coerce {x!r} into QQ")

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("division by zero in QQ")
        return 1 / a

    def is_zero(self, a):
        return a == 0


QQ = _RationalField()

_GF_CACHE: dict[int, "_PrimeField"] = {}


class _PrimeField:
    """Ring tag + elementwise operations for F_p, residues as plain ints."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= MAX_PRIME:
            raise ValueError(f"prime {p} exceeds the 2^31 cap")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"GF({self.p})"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroInverse(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise RingMismatch(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInverse(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0


def GF(p: int) -> _PrimeField:
    ring = _GF_CACHE.get(p)
    if ring is None:
        ring = _PrimeField(p)
        _GF_CACHE[p] = ring
    return ring


@dataclass(frozen=True)
class FpElem:
    """A residue in F_p.  0 <= value < modulus, modulus prime."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other):
        if self.modulus != other.modulus:
            raise RingMismatch("mixed moduli")

    def __add__(self, other):
        self._check(other)
        return FpElem(self.value + other.value, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return FpElem(self.value - other.value, self.modulus)

    def __mul__(self, other):
        self._check(other)
        return FpElem(self.value * other.value, self.modulus)

    def __neg__(self):
        return FpElem(-self.value, self.modulus)


def fp_inv(a: FpElem) -> FpElem:
    """Multiplicative inverse in F_p."""
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.modulus}")
    return FpElem(pow(a.value, a.modulus - 2, a.modulus), a.modulus)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial, constant term first.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring):
        cs = [ring.coerce(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.ring = ring

    @classmethod
    def zero(cls, ring):
        return cls((), ring)

    @classmethod
    def one(cls, ring):
        return cls((1,), ring)

    @classmethod
    def x(cls, ring):
        return cls((0, 1), ring)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            return self.ring.zero
        return self.coeffs[-1]

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ring is other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, id(self.ring)))

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)}, {self.ring!r})"

    def _check(self, other):
        if self.ring is not other.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        r = self.ring
        cs = [r.add(self.coeffs[i] if i < len(self.coeffs) else r.zero,
                    other.coeffs[i] if i < len(other.coeffs) else r.zero)
              for i in range(n)]
        return UniPoly(cs, r)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = self.ring
        return UniPoly([r.neg(c) for c in self.coeffs], r)

    def __mul__(self, other):
        self._check(other)
        r = self.ring
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(r)
        if isinstance(r, _PrimeField):
            out = K.mul(self.to_array(), other.to_array(), r.p)
            return UniPoly.from_array(out, r)
        cs = [r.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if r.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                cs[i + j] = r.add(cs[i + j], r.mul(a, b))
        return UniPoly(cs, r)

    def scale(self, c):
        r = self.ring
        c = r.coerce(c)
        return UniPoly([r.mul(c, a) for a in self.coeffs], r)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = UniPoly.one(self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __divmod__(self, other):
        self._check(other)
        r = self.ring
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if isinstance(r, _PrimeField):
            q, rem = K.divmod_(self.to_array(), other.to_array(), r.p)
            return UniPoly.from_array(q, r), UniPoly.from_array(rem, r)
        q = [r.zero] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        inv = r.inv(other.lc)
        db = other.degree
        for k in range(len(rem) - 1 - db, -1, -1):
            c = r.mul(rem[k + db], inv)
            if r.is_zero(c):
                continue
            q[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = r.sub(rem[k + j], r.mul(c, b))
        return UniPoly(q, r), UniPoly(rem, r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.inv(self.lc))

    def diff(self):
        r = self.ring
        cs = [r.mul(r.coerce(i), self.coeffs[i])
              for i in range(1, len(self.coeffs))]
        return UniPoly(cs, r)

    def eval(self, x):
        r = self.ring
        x = r.coerce(x)
        acc = r.zero
        for c in reversed(self.coeffs):
            acc = r.add(r.mul(acc, x), c)
        return acc

    def shift_arg(self, a):
        """p(T + a) by Horner composition."""
        r = self.ring
        lin = UniPoly((r.coerce(a), r.one), r)
        out = UniPoly.zero(r)
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly((c,), r)
        return out

    # dense int64 bridges for the kernels
    def to_array(self) -> np.ndarray:
        if not self.coeffs:
            return np.zeros(1, dtype=np.int64)
        return np.array(self.coeffs, dtype=np.int64)

    @classmethod
    def from_array(cls, arr, ring) -> "UniPoly":
        return cls([int(v) for v in arr], ring)


def upoly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over a field (gcd with 0 is the monic form of the other)."""
    if f.ring is not g.ring:
        raise RingMismatch(f"{f.ring!r} vs {g.ring!r}")
    r = f.ring
    if isinstance(r, _PrimeField):
        out = K.gcd(f.to_array(), g.to_array(), r.p)
        return UniPoly.from_array(out, r)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def upoly_resultant(f: UniPoly, g: UniPoly):
    """Resultant via the Euclidean remainder sequence (exact over a field)."""
    r = f.ring
    if f.is_zero() or g.is_zero():
        return r.zero
    res = r.one
    a, b = f, g
    sign = 1
    while b.degree > 0:
        rem = a % b
        if rem.is_zero():
            return r.zero if b.degree > 0 else res
        da, db, dr = a.degree, b.degree, rem.degree
        if (da * db) % 2 == 1:
            sign = -sign
        # res(a, b) = lc(b)^(da - dr) * res(b, rem) up to the tracked sign
        res = r.mul(res, _ring_pow(r, b.lc, da - dr))
        a, b = b, rem
    # b is a nonzero constant now
    res = r.mul(res, _ring_pow(r, b.lc, a.degree))
    if sign < 0:
        res = r.neg(res)
    return res


def _ring_pow(r, base, e):
    out = r.one
    for _ in range(e):
        out = r.mul(out, base)
    return out


def discriminant(q: UniPoly) -> Fraction:
    """disc(q) = (-1)^(d(d-1)/2) Res(q, q') / lc(q)."""
    d = q.degree
    if d < 1:
        raise ConstantPolynomial("discriminant needs degree >= 1")
    res = upoly_resultant(q, q.diff())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    r = q.ring
    return r.mul(r.coerce(sign), r.mul(res, r.inv(q.lc)))


def squarefree_decomposition(f: UniPoly):
    """Yun's algorithm; factors returned monic, f = lc * prod g_i^(e_i).

    Over F_p this needs p > deg f so no exponent can hit the characteristic;
    the pipeline's prime selection guarantees that.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of 0")
    r = f.ring
    if r.char and r.char <= f.degree:
        raise CharacteristicTooSmall(
            f"p = {r.char} <= deg f = {f.degree}")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    df = f.diff()
    g = upoly_gcd(f, df)
    c = f // g
    d = df // g - c.diff()
    i = 1
    while c.degree > 0:
        a = upoly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c2 = c // a
        d = d // a - c2.diff()
        c = c2
        i += 1
    return out
