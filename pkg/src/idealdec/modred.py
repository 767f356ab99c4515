"""Prime selection and the reduction map psi_p: primitive generators,
mod-p images of polynomials and ideals, plus the Z[alpha] coefficient path
used when an explicit algebraic extension is in play."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import GF, QQ, UniPoly, discriminant, is_prime
from .errors import BadPrime, NoAdmissiblePrime, RingMismatch
from .factor import factor_univariate_fp, factor_univariate_q
from .groebner import Ideal
from .mpoly import MultiPoly

TRIAL_DIVISION_BOUND = 10 ** 6
DEFAULT_PRIME_CAP = 2 ** 31


@dataclass(frozen=True)
class ExtensionDescriptor:
    """Q(alpha) described by the minimal polynomial of alpha (integer
    coefficients, irreducible over Q)."""

    min_poly: UniPoly
    symbol: str = "alpha"

    def __post_init__(self):
        q = self.min_poly
        if q.ring is not QQ or q.degree < 1:
            raise ValueError("minimal polynomial must be rational, degree >= 1")
        if any(c.denominator != 1 for c in q.coeffs):
            raise ValueError("minimal polynomial must have integer coefficients")
        fl = factor_univariate_q(q)
        if len(fl.factors) != 1 or fl.factors[0][1] != 1:
            raise ValueError("minimal polynomial must be irreducible")

    @property
    def degree(self):
        return self.min_poly.degree


class ZAlphaRing:
    """Elements of Q(alpha) as coordinate vectors in the power basis of
    alpha; multiplication reduces by the minimal polynomial.  Exists to
    express ideals whose written generators carry algebraic coefficients."""

    char = 0

    def __init__(self, ext: ExtensionDescriptor):
        self.ext = ext
        d = ext.degree
        self.zero = (Fraction(0),) * d
        self.one = (Fraction(1),) + (Fraction(0),) * (d - 1)

    def __repr__(self):
        return f"Z[{self.ext.symbol}]"

    def coerce(self, x):
        d = self.ext.degree
        if isinstance(x, (int, Fraction)):
            return (Fraction(x),) + (Fraction(0),) * (d - 1)
        if isinstance(x, (tuple, list)):
            if len(x) > d:
                raise ValueError("coordinate vector too long")
            v = tuple(Fraction(c) for c in x)
            return v + (Fraction(0),) * (d - len(v))
        raise RingMismatch(f"cannot coerce {x!r} into {self!r}")

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        q = self.ext.min_poly
        prod = UniPoly(a, QQ) * UniPoly(b, QQ)
        rem = prod % q
        cs = list(rem.coeffs) + [Fraction(0)] * (self.ext.degree - len(rem.coeffs))
        return tuple(cs)

    def inv(self, a):
        raise NotImplementedError("division in Z[alpha] is not needed")

    def is_zero(self, a):
        return all(x == 0 for x in a)


@dataclass(frozen=True)
class PrimeContext:
    """A prime p with the root beta_p realizing psi_p (alpha -> beta).

    For pipeline primes the reference polynomial is the rational factor d
    that selected p, and beta is the simple root 0 of d mod p (p | d(0))."""

    p: int
    beta: int = 0
    source: str = ""
    ref_poly: UniPoly | None = None

    @classmethod
    def for_extension(cls, ext: ExtensionDescriptor, p: int, beta=None,
                      source="extension"):
        q = ext.min_poly
        validate_extension_prime(q, p)
        ring = GF(p)
        qp = UniPoly([c for c in q.coeffs], ring)
        if beta is None:
            roots = sorted(p - int(h.coeffs[0]) if h.coeffs[0] else 0
                           for h, _ in factor_univariate_fp(qp).factors
                           if h.degree == 1)
            if not roots:
                raise NoAdmissiblePrime(f"q has no root mod {p}")
            beta = roots[0] % p
        if qp.eval(beta) != 0:
            raise ValueError(f"beta = {beta} is not a root of q mod {p}")
        if qp.diff().eval(beta) == 0:
            raise ValueError(f"beta = {beta} is not a simple root mod {p}")
        return cls(p, beta % p, source, q)


def validate_extension_prime(q: UniPoly, p: int):
    """Good-reduction side conditions: p prime, p > deg q, p coprime to
    disc(q) and to lc(q)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p <= q.degree:
        raise ValueError(f"p = {p} <= deg q = {q.degree}")
    disc = discriminant(q)
    if disc == 0 or disc.numerator % p == 0:
        raise ValueError(f"p = {p} divides disc(q) = {disc}")
    if Fraction(q.lc).numerator % p == 0:
        raise ValueError(f"p = {p} divides lc(q)")


def primitivize(f: MultiPoly) -> MultiPoly:
    """Integer coefficients with content 1 and positive leading coefficient
    (degree-lex)."""
    if f.is_zero():
        raise ValueError("primitivize(0)")
    return f.primitive_int()[0]


def _prime_divisors(n, cap):
    """Ascending prime divisors of |n|; a large prime cofactor counts when
    it fits below the cap, an unfactored composite cofactor is dropped."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n and d <= TRIAL_DIVISION_BOUND:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n <= TRIAL_DIVISION_BOUND or is_prime(n):
            if n < cap:
                out.append(n)
    return out


def admissible_primes(d: UniPoly, exclude=frozenset(), cap=DEFAULT_PRIME_CAP):
    """Primes p | d(0) with p > deg d, p coprime to disc(d) and lc(d)."""
    if d.ring is not QQ:
        raise RingMismatch("prime selection works on the rational factor")
    d0 = d.eval(0)
    if d0 == 0:
        return []
    if any(c.denominator != 1 for c in d.coeffs):
        d = UniPoly(_clear_denoms(d.coeffs), QQ)
        d0 = d.eval(0)
    disc = discriminant(d) if d.degree >= 1 else Fraction(1)
    out = []
    for p in _prime_divisors(int(d0), cap):
        if p in exclude or p <= d.degree:
            continue
        if disc != 0 and disc.numerator % p == 0:
            continue
        if int(d.lc) % p == 0:
            continue
        out.append(p)
    return out


def _clear_denoms(coeffs):
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [c * den for c in coeffs]


def select_prime(d: UniPoly, exclude=frozenset(),
                 cap=DEFAULT_PRIME_CAP) -> PrimeContext:
    """Smallest admissible prime dividing d(0); beta is the simple root 0."""
    primes = admissible_primes(d, exclude, cap)
    if not primes:
        raise NoAdmissiblePrime(
            f"no prime divisor of d(0) = {d.eval(0)} passes the conditions")
    p = primes[0]
    return PrimeContext(p, beta=0, source="factor-constant", ref_poly=d)


def reduce_coeff(c, ctx: PrimeContext, ext: ExtensionDescriptor | None):
    p = ctx.p
    if ext is None:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise BadPrime(f"denominator of {c} vanishes mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    acc = 0
    bpow = 1
    for coord in c:
        coord = Fraction(coord)
        if coord.denominator % p == 0:
            raise BadPrime(f"coordinate denominator vanishes mod {p}")
        acc = (acc + coord.numerator * pow(coord.denominator, -1, p) * bpow) % p
        bpow = bpow * ctx.beta % p
    return acc


def reduce_poly(f: MultiPoly, ctx: PrimeContext,
                ext: ExtensionDescriptor | None = None) -> MultiPoly:
    """Coefficientwise psi_p; integers mod p, alpha -> beta."""
    ring = GF(ctx.p)
    terms = {}
    for e, c in f.terms.items():
        v = reduce_coeff(c, ctx, ext)
        if v:
            terms[e] = v
    return MultiPoly(terms, ring, f.n)


def reduce_unipoly(d: UniPoly, ctx: PrimeContext) -> UniPoly:
    ring = GF(ctx.p)
    return UniPoly([reduce_coeff(c, ctx, None) for c in d.coeffs], ring)


def reduce_ideal(idl: Ideal, ctx: PrimeContext,
                 ext: ExtensionDescriptor | None = None) -> Ideal:
    """Generatorwise reduction of primitivized generators; a generator
    falling to 0 mod p is a bad prime, not a smaller ideal."""
    gens = []
    for g in idl.generators:
        img = reduce_poly(g, ctx, ext)
        if img.is_zero():
            raise BadPrime(f"generator collapses to 0 mod {ctx.p}")
        gens.append(img)
    return Ideal(tuple(gens), GF(ctx.p), idl.n, idl.c)
