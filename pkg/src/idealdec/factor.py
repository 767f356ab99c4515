"""Polynomial factorization: univariate over F_p (Cantor-Zassenhaus),
univariate over Q (Zassenhaus: good prime + linear Hensel lifting to the
Mignotte bound + subset recombination), and bivariate over F_p (specialize,
lift in the second variable, recombine).

Randomness (equal-degree splitting, nothing else) comes from a PRNG seeded
by the caller's seed mixed with a digest of the input, so identical calls
reproduce bit-identical factor lists.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .arith import GF, QQ, UniPoly, is_prime, squarefree_decomposition
from .errors import UnluckySpecialization
from .mpoly import MultiPoly, TermOrder

_DEGLEX2 = TermOrder.deglex(2)


@dataclass(frozen=True)
class FactorList:
    """unit * prod(poly^mult) reconstructs the input exactly."""

    unit: object
    factors: tuple


def _mix_seed(seed, ints):
    h = 0x9E3779B97F4A7C15 ^ (seed & 0xFFFFFFFFFFFFFFFF)
    for v in ints:
        h ^= (v & 0xFFFFFFFFFFFFFFFF) + 0x9E3779B97F4A7C15 + ((h << 6) & 0xFFFFFFFFFFFFFFFF) + (h >> 2)
        h &= 0xFFFFFFFFFFFFFFFF
    return h


# ---------------------------------------------------------------------------
# univariate over F_p


def factor_univariate_fp(f: UniPoly, seed: int = 0) -> FactorList:
    """Complete monic irreducible factorization over F_p (needs p > deg f
    only for the squarefree step, which the pipeline's primes guarantee)."""
    ring = f.ring
    p = ring.p
    if f.is_zero():
        raise ValueError("factor of 0")
    unit = f.lc
    if f.degree == 0:
        return FactorList(unit, ())
    rng = random.Random(_mix_seed(seed, (p,) + tuple(f.coeffs)))
    out = []
    for g, e in squarefree_decomposition(f):
        for h in _factor_squarefree_fp(g.to_array(), p, rng):
            out.append((UniPoly.from_array(h, ring), e))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return FactorList(unit, tuple(out))


def _factor_squarefree_fp(a, p, rng):
    """Distinct-degree then equal-degree splitting; a monic squarefree."""
    n = len(a) - 1
    if n == 0:
        return []
    if n == 1:
        return [a]
    out = []
    x = np.array([0, 1], dtype=np.int64)
    h = x.copy()
    rest = a
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = K.powmod(h, p, rest, p)
        g = K.gcd(_sub_mod(h, x, p), rest, p)
        if len(g) - 1 > 0:
            out.extend(_equal_degree_split(g, d, p, rng))
            rest_new = K.divmod_(rest, g, p)[0]
            rest = rest_new
            h = K.divmod_(h, rest, p)[1]
    if len(rest) - 1 > 0:
        out.append(rest)
    return out


def _sub_mod(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[:len(a)] += a
    out[:len(b)] -= b
    out %= p
    k = n
    while k > 1 and out[k - 1] == 0:
        k -= 1
    return out[:k]


def _equal_degree_split(f, d, p, rng):
    """Cantor-Zassenhaus on a product of degree-d irreducibles, p odd."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        r = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        while len(r) > 1 and r[-1] == 0:
            r = r[:-1]
        if len(r) == 1 and r[0] == 0:
            continue
        g = K.gcd(r, f, p)
        if 0 < len(g) - 1 < n:
            break
        # norm map: t = prod r^(p^i), then t^((p-1)/2) is +-1 per factor
        t = K.divmod_(r, f, p)[1]
        s = t.copy()
        for _ in range(d - 1):
            s = K.powmod(s, p, f, p)
            t = K.divmod_(K.mul(t, s, p), f, p)[1]
        w = K.powmod(t, (p - 1) // 2, f, p)
        one = np.array([1], dtype=np.int64)
        g = K.gcd(_sub_mod(w, one, p), f, p)
        if 0 < len(g) - 1 < n:
            break
    h = K.divmod_(f, g, p)[0]
    return _equal_degree_split(g, d, p, rng) + _equal_degree_split(h, d, p, rng)


# ---------------------------------------------------------------------------
# univariate over Q (Zassenhaus)


def factor_univariate_q(f: UniPoly) -> FactorList:
    """Rational irreducible factorization with multiplicities.  Factors are
    integer-primitive with positive leading coefficient."""
    if f.is_zero():
        raise ValueError("factor of 0")
    if f.degree == 0:
        return FactorList(f.coeffs[0], ())
    out = []
    unit = Fraction(f.lc)
    for g, e in squarefree_decomposition(f):
        gi = _int_primitive([c for c in g.coeffs])
        for h in _zassenhaus(gi):
            out.append((UniPoly(h, QQ), e))
    # unit fixes lc: f = lc * prod(monic^e); primitive factors absorb that
    rebuilt = Fraction(1)
    for h, e in out:
        rebuilt *= Fraction(h.lc) ** e
    unit = unit / rebuilt
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return FactorList(unit, tuple(out))


def _int_primitive(coeffs):
    """Fractions -> coprime ints with positive leading coefficient."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    if ints and ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _zassenhaus(f):
    """Irreducible factors of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    b = f[-1]
    A = max(abs(c) for c in f)
    # Mignotte: any factor's coefficients are below sqrt(n+1) 2^n A |lc|
    B = (math.isqrt(n + 1) + 1) * (1 << n) * A * abs(b)
    # pick a prime keeping f squarefree with few modular factors
    cands = []
    q = 2
    while len(cands) < 5:
        q = _next_small_prime(q)
        if b % q == 0 or q <= n:
            continue
        fq = UniPoly([c % q for c in f], GF(q))
        if fq.degree != n:
            continue
        der = fq.diff()
        from .arith import upoly_gcd
        if upoly_gcd(fq, der).degree != 0:
            continue
        fl = factor_univariate_fp(fq.monic())
        cands.append((len(fl.factors), q, [list(h.coeffs) for h, _ in fl.factors]))
        if len(fl.factors) <= 3:
            break
    _, q, modular = min(cands, key=lambda t: (t[0], t[1]))
    if len(modular) == 1:
        return [f]
    l = 1
    ql = q
    while ql < 2 * B + 1:
        ql *= q
        l += 1
    lifted = _hensel_lift_int(f, modular, q, l)
    return _recombine_int(f, lifted, q ** l)


def _next_small_prime(q):
    q += 1
    while not is_prime(q):
        q += 1
    return q


def _hensel_lift_int(f, factors, q, l):
    """Linear multifactor Hensel lifting: monic int factors g_i with
    f = lc(f) prod g_i mod q^l.  Invariant: error divisible by q^k."""
    p = q
    gs = [[c % q for c in g] for g in factors]
    # Bezout data mod q: beta_i = (prod_{j!=i} g_j)^(-1) mod g_i
    ring = GF(q)
    gpolys = [UniPoly(g, ring) for g in gs]
    betas = []
    for i, gi in enumerate(gpolys):
        prod = UniPoly.one(ring)
        for j, gj in enumerate(gpolys):
            if j != i:
                prod = (prod * gj) % gi
        betas.append(_upoly_invmod(prod, gi))
    lc = f[-1]
    lc_inv_q = pow(lc % q, -1, q)
    cur = [list(g) for g in gs]
    m = q
    for _ in range(1, l):
        prod = [lc]
        for g in cur:
            prod = _iz_mul(prod, g)
        err = _iz_sub(f, prod)
        e_over = [(c // m) % q for c in err]
        e_poly = UniPoly([v * lc_inv_q % q for v in e_over], ring)
        for i, gi in enumerate(gpolys):
            sigma = (e_poly % gi) * betas[i] % gi
            for k, c in enumerate(sigma.coeffs):
                cur[i][k] = (cur[i][k] + m * int(c)) % (m * q)
        m *= q
    return cur


def _upoly_invmod(a, m):
    """Inverse of a modulo m over F_q (extended Euclid)."""
    ring = a.ring
    r0, r1 = m, a % m
    s0, s1 = UniPoly.zero(ring), UniPoly.one(ring)
    while not r1.is_zero():
        qq, rr = divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
    if r0.degree != 0:
        raise ArithmeticError("not invertible")
    return s0.scale(ring.inv(r0.coeffs[0])) % m


def _iz_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _iz_sub(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return out


def _sym(c, m):
    c %= m
    return c - m if 2 * c > m else c


def _recombine_int(f, lifted, ql):
    """Subset recombination with the symmetric residue trick."""
    T = list(range(len(lifted)))
    factors = []
    b = f[-1]
    s = 1
    while 2 * s <= len(T):
        found = False
        for S in itertools.combinations(T, s):
            # cheap prefilter on the constant coefficient
            c0 = b
            for i in S:
                c0 = c0 * lifted[i][0] % ql
            c0 = _sym(c0, ql)
            if c0 != 0 and (f[0] * b) % c0 != 0:
                continue
            G = [b]
            for i in S:
                G = _iz_mul(G, lifted[i])
            G = [_sym(c % ql, ql) for c in G]
            G = _iz_primitive(G)
            cof = _iz_div_exact(f, G)
            if cof is not None:
                factors.append(G)
                f = _iz_primitive(cof)
                b = f[-1]
                T = [i for i in T if i not in S]
                found = True
                break
        if not found:
            s += 1
    if len(f) - 1 > 0:
        factors.append(_iz_primitive(f))
    return factors


def _iz_primitive(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if g:
        a = [v // g for v in a]
    if a[-1] < 0:
        a = [-v for v in a]
    return a


def _iz_div_exact(a, b):
    """a / b over Z when exact, else None."""
    if len(b) > len(a):
        return None
    ra = [Fraction(c) for c in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = Fraction(b[-1])
    for k in range(len(out) - 1, -1, -1):
        c = ra[k + len(b) - 1] / lb
        out[k] = c
        if c:
            for j, v in enumerate(b):
                ra[k + j] -= c * v
    if any(v != 0 for v in ra[:len(b) - 1]):
        return None
    if any(v.denominator != 1 for v in out):
        return None
    return [int(v) for v in out]


# ---------------------------------------------------------------------------
# bivariate over F_p


def factor_bivariate_fp(f: MultiPoly, seed: int = 0, max_shifts: int = 64) -> FactorList:
    """Irreducible factorization in F_p[x, y].  Strategy: pull the content
    in one variable, take the squarefree part in the other, factor a good
    specialization, lift linearly in the untouched variable, recombine
    subsets, and read multiplicities by trial division."""
    if f.n != 2:
        raise ValueError("bivariate input expected")
    ring = f.ring
    p = ring.p
    if f.is_zero():
        raise ValueError("factor of 0")
    # orient so the main variable (y) carries the larger degree
    swap = f.deg_in(0) > f.deg_in(1)
    if swap:
        f = _swap_vars(f)
    work = f
    unit = ring.one
    factors = []

    dy = work.deg_in(1)
    if dy == 0:
        # univariate in x
        u = work.to_unipoly(0)
        fl = factor_univariate_fp(u, seed=seed)
        unit = ring.mul(unit, fl.unit)
        for h, e in fl.factors:
            factors.append((MultiPoly.from_unipoly(h, 0, ring, 2), e))
    else:
        cont, prim = _content_split(work, ring)
        if cont.degree > 0:
            fl = factor_univariate_fp(cont, seed=seed)
            unit = ring.mul(unit, fl.unit)
            for h, e in fl.factors:
                factors.append((MultiPoly.from_unipoly(h, 0, ring, 2), e))
        else:
            unit = ring.mul(unit, cont.coeffs[0] if cont.coeffs else ring.one)
        sqf = _squarefree_part_y(prim, ring)
        irr = _factor_squarefree_bivariate(sqf, ring, seed, max_shifts)
        rest = prim
        for u in irr:
            e = 0
            while True:
                q = rest.exact_div(u, _DEGLEX2)
                if q is None:
                    break
                rest = q
                e += 1
            factors.append((u, e))
        if not rest.is_constant():
            raise ArithmeticError("trial division left a nonconstant cofactor")
        unit = ring.mul(unit, rest.constant_value())

    # monic normalization under deglex; fold scalars into the unit
    normal = []
    for h, e in factors:
        lc = h.leading(_DEGLEX2)[1]
        if lc != ring.one:
            h = h.scale(ring.inv(lc))
            unit = ring.mul(unit, pow(lc, e, p))
        normal.append((h, e))
    if swap:
        normal = [(_swap_vars(h), e) for h, e in normal]
    normal.sort(key=lambda t: (t[0].total_degree(),
                               sorted(t[0].terms.items())))
    return FactorList(unit, tuple(normal))


def _swap_vars(f):
    return MultiPoly({(e[1], e[0]): c for e, c in f.terms.items()}, f.ring, 2)


def _content_split(f, ring):
    """gcd over F_p[x] of the y-coefficients; returns (content, f/content)."""
    p = ring.p
    cs = f.coeffs_in(1)
    arrs = [c.to_unipoly(0).to_array() for c in cs if not c.is_zero()]
    g = arrs[0]
    for a in arrs[1:]:
        g = K.gcd(g, a, p)
        if len(g) - 1 == 0:
            break
    cont = UniPoly.from_array(g, ring)
    if cont.degree == 0:
        return cont, f
    cont_m = MultiPoly.from_unipoly(cont, 0, ring, 2)
    prim = f.exact_div(cont_m, _DEGLEX2)
    return cont, prim


def _pseudo_gcd_y(a, b, ring):
    """Primitive-PRS gcd in y of two primitive bivariate polynomials."""
    def pp(g):
        if g.is_zero() or g.deg_in(1) < 0:
            return g
        c, prim = _content_split(g, ring)
        return prim

    A, B = a, b
    if A.deg_in(1) < B.deg_in(1):
        A, B = B, A
    while not B.is_zero() and B.deg_in(1) > 0:
        R = _pseudo_rem_y(A, B, ring)
        A, B = B, pp(R) if not R.is_zero() else R
    if B.is_zero():
        return pp(A)
    return MultiPoly.constant(ring.one, ring, 2)


def _pseudo_rem_y(a, b, ring):
    db = b.deg_in(1)
    lcb = b.coeffs_in(1)[db]
    R = a
    while not R.is_zero() and R.deg_in(1) >= db:
        dr = R.deg_in(1)
        lcr = R.coeffs_in(1)[dr]
        shift = [0, dr - db]
        R = R * lcb - b.mul_term(tuple(shift), ring.one) * lcr
    return R


def _squarefree_part_y(f, ring):
    """f / gcd(f, df/dy): one copy of every y-dependent irreducible.

    The gcd degree is read off cheap univariate specializations first
    (valid whenever lc_y(f) survives the evaluation); a degree-0 probe
    proves squarefreeness outright.  Positive degrees go through a
    Brown-style interpolated gcd with the pseudo-PRS as the exact
    fallback."""
    p = ring.p
    fy = f.derivative(1)
    if fy.is_zero():
        raise ArithmeticError("derivative vanished; p too small for deg f")
    dy = f.deg_in(1)
    lcf = f.coeffs_in(1)[dy].to_unipoly(0).to_array()
    probes = []
    t = 0
    while len(probes) < 3 and t < p:
        if K.eval_at(lcf, t, p) != 0:
            ft = _eval_x(f, t, ring)
            fyt = _eval_x(fy, t, ring)
            if not (len(fyt) == 1 and fyt[0] == 0):
                gd = len(K.gcd(ft, fyt, p)) - 1
                if gd == 0:
                    return f
                probes.append((t, gd))
        t += 1
    g = _brown_gcd_y(f, fy, ring) if probes else None
    if g is None:
        g = _pseudo_gcd_y(f, fy, ring)
    if g.is_constant():
        return f
    q = f.exact_div(g, _DEGLEX2)
    if q is None:
        g = _pseudo_gcd_y(f, fy, ring)
        if g.is_constant():
            return f
        q = f.exact_div(g, _DEGLEX2)
        if q is None:
            raise ArithmeticError("squarefree split failed")
    _, prim = _content_split(q, ring)
    return prim


def _brown_gcd_y(f, fy, ring):
    """gcd in y by univariate gcds at interpolation points, scaled by the
    gcd of the leading coefficients; None when the points disagree or the
    verification division fails."""
    p = ring.p
    dy = f.deg_in(1)
    lcf = f.coeffs_in(1)[dy].to_unipoly(0).to_array()
    dfy = fy.deg_in(1)
    lcfy = fy.coeffs_in(1)[dfy].to_unipoly(0).to_array()
    gamma = K.gcd(lcf, lcfy, p)
    bound = f.deg_in(0) + len(gamma)      # deg_x(gcd) + deg gamma + 1 points
    if bound + 8 > p:
        return None
    pts, rows, dmin = [], [], None
    t = 0
    while len(pts) < bound and t < p:
        if K.eval_at(lcf, t, p) == 0:
            t += 1
            continue
        ft = _eval_x(f, t, ring)
        fyt = _eval_x(fy, t, ring)
        if len(fyt) == 1 and fyt[0] == 0:
            t += 1
            continue
        gt = K.gcd(ft, fyt, p)
        d = len(gt) - 1
        if dmin is None or d < dmin:
            dmin = d
            pts, rows = [], []
        if d == dmin:
            scale = K.eval_at(gamma, t, p)
            pts.append(t)
            rows.append((gt * scale) % p)
        t += 1
    if dmin is None or len(pts) < bound:
        return None
    if dmin == 0:
        return MultiPoly.constant(ring.one, ring, 2)
    terms = {}
    npts = len(pts)
    for i, ti in enumerate(pts):
        num = [1]
        den = 1
        for j, tj in enumerate(pts):
            if j == i:
                continue
            num = _lin_mul(num, (-tj) % p, p)
            den = den * (ti - tj) % p
        sc = pow(den, -1, p)
        li = [v * sc % p for v in num]
        row = rows[i]
        for xp, lv in enumerate(li):
            if lv:
                for yp in range(len(row)):
                    if row[yp]:
                        key = (xp, yp)
                        terms[key] = (terms.get(key, 0) + lv * int(row[yp])) % p
    g = MultiPoly({e: c for e, c in terms.items() if c}, ring, 2)
    if g.is_zero() or g.deg_in(1) != dmin:
        return None
    _, g = _content_split(g, ring)
    if f.exact_div(g, _DEGLEX2) is None or fy.exact_div(g, _DEGLEX2) is None:
        return None
    return g


def _lin_mul(coeffs, c0, p):
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = (out[i] + c * c0) % p
        out[i + 1] = (out[i + 1] + c) % p
    return out


def _factor_squarefree_bivariate(w, ring, seed, max_shifts):
    p = ring.p
    dy = w.deg_in(1)
    if dy == 0:
        return []
    # find a shift a with lc_y(w)(a) != 0 and w(a, y) squarefree of degree dy
    lc_y = w.coeffs_in(1)[dy].to_unipoly(0).to_array()
    chosen = None
    for a in range(min(p, max_shifts)):
        if K.eval_at(lc_y, a, p) == 0:
            continue
        spec = _eval_x(w, a, ring)
        if len(spec) - 1 != dy:
            continue
        der = _poly_deriv(spec, p)
        if len(K.gcd(spec, der, p)) - 1 == 0:
            chosen = (a, spec)
            break
    if chosen is None:
        raise UnluckySpecialization(
            f"no squarefree specialization among {min(p, max_shifts)} shifts")
    a, spec = chosen
    rng_seed = _mix_seed(seed, (p, a) + tuple(int(v) for v in spec))
    base = _factor_squarefree_fp(
        (spec * K.inv_scalar(int(spec[-1]), p)) % p, p, random.Random(rng_seed))
    if len(base) == 1:
        return [w]
    W = _shift_x(w, a, ring)
    lifted, N = _lift_bivariate(W, base, ring)
    found = _recombine_bivariate(W, lifted, N, ring)
    return [_shift_x(u, (-a) % p, ring) for u in found]


def _eval_x(f, a, ring):
    p = ring.p
    acc = np.zeros(f.deg_in(1) + 1, dtype=np.int64)
    for e, c in f.terms.items():
        acc[e[1]] = (acc[e[1]] + c * pow(a, e[0], p)) % p
    k = len(acc)
    while k > 1 and acc[k - 1] == 0:
        k -= 1
    return acc[:k]


def _poly_deriv(a, p):
    out = np.array([(i * int(a[i])) % p for i in range(1, len(a))], dtype=np.int64)
    if len(out) == 0:
        return np.zeros(1, dtype=np.int64)
    k = len(out)
    while k > 1 and out[k - 1] == 0:
        k -= 1
    return out[:k]


def _shift_x(f, a, ring):
    """Substitute x -> x + a."""
    if a % ring.p == 0:
        return f
    p = ring.p
    dx = f.deg_in(0)
    # binomial expansion per x-power, row ops on a dense table
    table = {}
    for e, c in f.terms.items():
        row = table.setdefault(e[1], np.zeros(dx + 1, dtype=np.int64))
        row[e[0]] = (row[e[0]] + c) % p
    out = {}
    binom = [[0] * (dx + 1) for _ in range(dx + 1)]
    for i in range(dx + 1):
        binom[i][0] = 1
        for j in range(1, i + 1):
            binom[i][j] = (binom[i - 1][j - 1] + binom[i - 1][j]) % p
    apow = [1] * (dx + 1)
    for i in range(1, dx + 1):
        apow[i] = apow[i - 1] * a % p
    for ydeg, row in table.items():
        new = [0] * (dx + 1)
        for i in range(dx + 1):
            c = int(row[i])
            if c:
                for j in range(i + 1):
                    new[j] = (new[j] + c * binom[i][j] * apow[i - j]) % p
        for j, c in enumerate(new):
            if c:
                out[(j, ydeg)] = c
    return MultiPoly(out, ring, 2)


def _to_dense(f, N):
    dy = f.deg_in(1)
    out = np.zeros((dy + 1, N), dtype=np.int64)
    for e, c in f.terms.items():
        if e[0] < N:
            out[e[1], e[0]] = c
    return out


def _from_dense(A, ring):
    out = {}
    rows, cols = A.shape
    for i in range(rows):
        for j in range(cols):
            if A[i, j]:
                out[(j, i)] = int(A[i, j])
    return MultiPoly(out, ring, 2)


def _lift_bivariate(W, base, ring):
    """Linear Hensel lifting of the monic specialization factors in x."""
    p = ring.p
    dy = W.deg_in(1)
    dx = W.deg_in(0)
    lc_y = W.coeffs_in(1)[dy].to_unipoly(0).to_array()
    N = dx + (len(lc_y) - 1) + 1
    lc_arr = np.zeros(N, dtype=np.int64)
    lc_arr[:len(lc_y)] = lc_y
    lc_inv = K.series_inv(lc_arr, N, p)
    Wd = _to_dense(W, N)
    # Ghat = W / lc_y as a series in x: monic in y
    Ghat = np.zeros((dy + 1, N), dtype=np.int64)
    for i in range(dy + 1):
        Ghat[i] = _series_mul_row(Wd[i], lc_inv, N, p)
    ring_q = GF(p)
    gpolys = [UniPoly.from_array(g, ring_q) for g in base]
    betas = []
    for i, gi in enumerate(gpolys):
        prod = UniPoly.one(ring_q)
        for j, gj in enumerate(gpolys):
            if j != i:
                prod = (prod * gj) % gi
        betas.append(_upoly_invmod(prod, gi))
    cur = []
    for g in base:
        arr = np.zeros((len(g), N), dtype=np.int64)
        arr[:, 0] = g
        cur.append(arr)
    for k in range(1, N):
        P = cur[0]
        for arr in cur[1:]:
            P = K.mul_trunc2(P, arr, k + 1, p)
        err = (Ghat[:, k] - P[:, k]) % p
        e_poly = UniPoly([int(v) for v in err], ring_q)
        if e_poly.is_zero():
            continue
        for i, gi in enumerate(gpolys):
            sigma = (e_poly % gi) * betas[i] % gi
            for t, c in enumerate(sigma.coeffs):
                cur[i][t, k] = int(c)
    return cur, N


def _series_mul_row(a, inv, N, p):
    out = np.zeros(N, dtype=np.int64)
    for i in range(min(len(a), N)):
        c = int(a[i])
        if c:
            top = N - i
            out[i:] = (out[i:] + c * inv[:top]) % p
    return out


def _recombine_bivariate(W, lifted, N, ring):
    """Zassenhaus-style subset search; candidates are primitive parts of
    lc_y * prod(subset) truncated mod x^N.  A univariate divisibility probe
    at a fixed x-value rejects almost every false subset before the full
    bivariate division runs."""
    p = ring.p
    found = []
    T = list(range(len(lifted)))
    cur = W
    while True:
        dy = cur.deg_in(1)
        lc_y = cur.coeffs_in(1)[dy].to_unipoly(0).to_array()
        lc_row = np.zeros((1, N), dtype=np.int64)
        lc_row[0, :len(lc_y)] = lc_y
        probe_t = 1
        while K.eval_at(lc_y, probe_t, p) == 0 and probe_t < p:
            probe_t += 1
        cur_probe = _eval_x(cur, probe_t, ring)
        done = False
        for s in range(1, len(T) // 2 + 1):
            hit = None
            for S in itertools.combinations(T, s):
                C = lc_row
                for i in S:
                    C = K.mul_trunc2(C, lifted[i], N, p)
                cand = _from_dense(C, ring)
                if cand.is_zero():
                    continue
                cand_probe = _eval_x(cand, probe_t, ring)
                if not _arr_divides(cand_probe, cur_probe, p):
                    continue
                _, cand = _content_split(cand, ring)
                q = cur.exact_div(cand, _DEGLEX2)
                if q is not None:
                    hit = (S, cand, q)
                    break
            if hit is not None:
                S, cand, q = hit
                found.append(cand)
                _, cur = _content_split(q, ring)
                T = [i for i in T if i not in S]
                done = False
                break
        else:
            done = True
        if done or not T or cur.deg_in(1) == 0:
            break
    if cur.deg_in(1) > 0:
        found.append(cur)
    return found


def _arr_divides(a, b, p):
    """a | b for dense univariate arrays (a nonzero constant divides all)."""
    if len(a) == 1:
        return a[0] != 0
    if len(b) < len(a):
        return False
    rem = K.divmod_(b, a, p)[1]
    return len(rem) == 1 and rem[0] == 0
