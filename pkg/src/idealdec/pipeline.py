"""End-to-end modular decomposition for equidimensional curves (c = 1).

Flow per Las Vegas round: generic affine coordinate change; rational
univariate projection through the origin section; rational factorization;
then per rational factor a well-chosen prime, mod-p plane projections and
their factorizations, partition of the modular factors, the minimal-degree
choice fixing the conjugacy count r, matching across projections by the
section-dimension test, and for reduced components a Jacobian-minor colon
cleanup feeding the initial ideal and affine Hilbert function.

Every consistency check failure (bad prime, bad coordinates) is recoverable:
the branch is retried with the next prime, then the round with fresh
coordinates, until the budget runs out.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .arith import QQ, GF, UniPoly, _PrimeField, discriminant, is_prime
from .errors import (BadPrime, BudgetExceeded, InvalidPrimeOverride,
                     NoMatch, NoUsableMinor, PartitionIncomplete,
                     RetryExhausted, UnsupportedDimension)
from .factor import FactorList, factor_bivariate_fp, factor_univariate_q
from .groebner import (Ideal, buchberger, colon_single, dim_at_origin_section,
                       eliminate, hilbert_dimension)
from .hilbert import (HilbertData, MonomialIdeal, affine_hilbert_function,
                      initial_ideal)
from .modred import (PrimeContext, admissible_primes, primitivize,
                     reduce_ideal, reduce_unipoly)
from .mpoly import (CoordChange, MultiPoly, TermOrder, apply_coord_change,
                    jacobian_minors, resultant)

DEFAULT_PRIME_CAP = 2 ** 31


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    coeff_bound: int = 10
    max_coord_rounds: int = 5
    primes_per_factor: int = 8
    prime_cap: int = DEFAULT_PRIME_CAP
    order: str = "deglex"            # deglex | degrevlex
    backend: str = "auto"            # groebner | resultant | auto
    prime_override: int | None = None
    audit: bool = False
    max_basis: int = 600
    max_degree: int = 160

    def term_order(self, n):
        if self.order == "deglex":
            return TermOrder.deglex(n)
        if self.order == "degrevlex":
            return TermOrder.degrevlex(n)
        raise ValueError(f"unknown order {self.order!r}")


@dataclass(frozen=True)
class ProjectionPlan:
    """Index sets H_i of the variables eliminated by each plane projection;
    projection i keeps (X_1, X_{i+1}), so the first projection drops the
    variable tail X_3..X_n."""

    sets: tuple

    @classmethod
    def for_curve(cls, n):
        return cls(tuple(frozenset(range(n)) - {0, i} for i in range(1, n)))

    def kept(self, i):
        n = len(self.sets) + 1
        return tuple(sorted(frozenset(range(n)) - self.sets[i]))


@dataclass(frozen=True)
class ComponentRecord:
    rational_degree: int
    multiplicity: int
    absolute_count: int
    absolute_degree: int
    prime: int
    initial_ideal: MonomialIdeal | None
    hilbert: HilbertData | None
    isolating_polys_mod_p: tuple | None

    def __post_init__(self):
        assert self.rational_degree == self.absolute_count * self.absolute_degree
        assert self.multiplicity >= 1 and self.absolute_count >= 1


@dataclass(frozen=True)
class DecompositionReport:
    s: int
    components: tuple
    coord_change: CoordChange
    seed: int
    total_degree: int
    candidate_primes: tuple = ()     # diagnostics, not part of the JSON schema


class _BranchFail(Exception):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


# ---------------------------------------------------------------------------
# public sub-operations


def partition_factors(d: UniPoly, p: int, modular_factors: FactorList):
    """Modular factors of D_1 whose origin specializations multiply back to
    d mod p (early exit once the product matches)."""
    ring = GF(p)
    ctx = PrimeContext(p)
    dmod = reduce_unipoly(_as_int_unipoly(d), ctx)
    if dmod.degree != d.degree:
        raise PartitionIncomplete(f"deg d drops mod {p}")
    dmod = dmod.monic()
    delta = UniPoly.one(ring)
    out = []
    for h, _e in modular_factors.factors:
        spec = h.evaluate_partial({0: 0})
        if spec.is_zero():
            raise PartitionIncomplete("factor specialization vanishes")
        if spec.deg_in(1) != h.total_degree():
            continue
        u = spec.to_unipoly(1).monic()
        if u.degree == 0:
            continue
        if (dmod % u).is_zero():
            out.append(h)
            delta = delta * u
            if delta == dmod:
                return out
            if delta.degree > dmod.degree:
                raise PartitionIncomplete("specializations overshoot d")
    raise PartitionIncomplete(
        "included specializations do not multiply to d mod p")


def _as_int_unipoly(d):
    if all(c.denominator == 1 for c in d.coeffs):
        return d
    den = 1
    for c in d.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return UniPoly([c * den for c in d.coeffs], QQ)


def match_factors(idl_mod_p: Ideal, first: MultiPoly, candidates, m: int,
                  *, audit=False) -> Ideal:
    """Pick one factor per extra projection so the combined cylinder ideal
    keeps an origin-section of dimension 0 (a genuine common component)."""
    ideal, _ = _match_factors_impl(idl_mod_p, first, candidates, m, audit=audit)
    return ideal


def _match_factors_impl(idl_mod_p, first, candidates, m, *, audit=False):
    eval_vars = {0}        # section by the generic hyperplane X_1 = 0
    for combo in itertools.product(*candidates) if candidates else [()]:
        gens = list(idl_mod_p.generators)
        gens.append(first ** m)
        gens.extend(c ** m for c in combo)
        idl = Ideal(tuple(gens), idl_mod_p.ring, idl_mod_p.n, idl_mod_p.c)
        try:
            h = dim_at_origin_section(idl, eval_vars, audit=audit)
        except BudgetExceeded:
            continue
        if h == 0:
            return idl, (first,) + tuple(combo)
    raise NoMatch("no candidate tuple reaches section dimension 0")


def pick_jacobian_minor(idl_mod_p: Ideal, candidate_ideal: Ideal, *,
                        order=None, audit=False) -> MultiPoly:
    """First Jacobian minor (deterministic order) that is nonzero mod p and
    whose colon result keeps dimension 1."""
    minor, _, _ = _minor_and_colon(idl_mod_p, candidate_ideal, order=order,
                                   audit=audit)
    return minor


def _minor_and_colon(idl_mod_p, candidate_ideal, *, order=None, audit=False):
    n = idl_mod_p.n
    size = n - (idl_mod_p.c or 1)
    minors = jacobian_minors(list(idl_mod_p.generators), size)
    order = order or TermOrder.deglex(n)
    from .hilbert import monomial_dimension
    for minor in minors:
        if minor.is_zero():
            continue
        try:
            colon = colon_single(candidate_ideal, minor, audit=audit)
        except (BudgetExceeded, ArithmeticError):
            continue
        if any(g.is_zero() for g in colon.generators):
            continue
        try:
            gb = buchberger(colon, order, audit=audit)
        except BudgetExceeded:
            continue
        if len(gb.polys) == 1 and gb.polys[0].is_constant():
            continue
        if monomial_dimension(initial_ideal(gb)) == idl_mod_p.c:
            return minor, colon, gb
    raise NoUsableMinor("no minor kept the colon at dimension c")


# ---------------------------------------------------------------------------
# decompose


def decompose(idl: Ideal, cfg: PipelineConfig | None = None) -> DecompositionReport:
    cfg = cfg or PipelineConfig()
    if idl.ring is not QQ:
        raise UnsupportedDimension("input ideal must have rational coefficients")
    if (idl.c or 1) != 1:
        raise UnsupportedDimension(f"pipeline handles c = 1 only, got c = {idl.c}")
    if idl.n < 2:
        raise UnsupportedDimension("need at least 2 variables")
    if cfg.backend not in ("auto", "groebner", "resultant"):
        raise ValueError(f"unknown backend {cfg.backend!r}")
    if cfg.backend == "resultant" and not (len(idl.generators) == 2 and idl.n == 3):
        raise ValueError("resultant backend needs exactly 2 generators in 3 variables")
    rng = random.Random(cfg.seed)
    trace = []
    for round_no in range(cfg.max_coord_rounds):
        change = _draw_change(rng, idl.n, cfg.coeff_bound)
        try:
            return _run_round(idl, change, cfg, trace)
        except _BranchFail as exc:
            trace.append(f"round {round_no}: {exc.reason}")
            continue
    raise RetryExhausted(
        "I cannot compute the irreducible components "
        f"(budget: {cfg.max_coord_rounds} coordinate rounds)", trace)


def _draw_change(rng, n, bound):
    while True:
        mat = tuple(tuple(rng.randint(-bound, bound) for _ in range(n))
                    for _ in range(n))
        tr = tuple(rng.randint(-bound, bound) for _ in range(n))
        try:
            return CoordChange(mat, tr)
        except Exception:
            continue


class _RoundState:
    def __init__(self, idl, change, cfg):
        self.cfg = cfg
        self.n = idl.n
        self.change = change
        gens = [primitivize(apply_coord_change(g, change))
                for g in idl.generators]
        self.ideal = Ideal(tuple(gens), QQ, idl.n, 1)
        self.plan = ProjectionPlan.for_curve(idl.n)
        self.prime_cache = {}

    def backend(self):
        cfg = self.cfg
        if cfg.backend != "auto":
            return cfg.backend
        if len(self.ideal.generators) == 2 and self.n == 3:
            return "resultant"
        return "groebner"


def _run_round(idl, change, cfg, trace):
    state = _RoundState(idl, change, cfg)
    d_univ = _rational_projection(state)
    d_total = d_univ.degree
    if d_total <= 0:
        raise _BranchFail("projection degenerated to a constant")
    flist = factor_univariate_q(d_univ)
    factors = [( _as_int_unipoly(h), e) for h, e in flist.factors]
    if sum(e * h.degree for h, e in factors) != d_total:
        raise _BranchFail("rational factorization degree mismatch")
    streams = _prime_streams(factors, d_total, cfg)
    records = {}
    # One-prime-for-all pre-pass.  A shared prime is only trusted for a
    # splittable factor when it divides that factor's constant term (the
    # condition forcing the absolute splitting to be visible mod p);
    # without it a lucky-looking run could report a wrong conjugacy count.
    shared = [p for p in sorted({p for st in streams for p in st})
              if all(_shared_prime_ok(p, h) for h, _ in factors)][:2]
    for p in shared:
        try:
            recs = [_process_factor(state, j, factors[j][0], factors[j][1], p)
                    for j in range(len(factors))]
        except _BranchFail as exc:
            trace.append(f"shared p={p}: {exc.reason}")
            continue
        records = dict(enumerate(recs))
        break
    if len(records) != len(factors):
        for j, (d_j, m_j) in enumerate(factors):
            if j in records:
                continue
            last = None
            for p in streams[j]:
                try:
                    records[j] = _process_factor(state, j, d_j, m_j, p)
                    break
                except _BranchFail as exc:
                    last = exc.reason
                    trace.append(f"factor {j} p={p}: {exc.reason}")
            else:
                raise _BranchFail(
                    f"factor {j} exhausted its primes (last: {last})")
    comps = tuple(records[j] for j in range(len(factors)))
    return DecompositionReport(
        s=len(comps), components=comps, coord_change=change, seed=cfg.seed,
        total_degree=d_total,
        candidate_primes=tuple(tuple(st) for st in streams))


def _prime_streams(factors, d_total, cfg):
    """Candidate primes per rational factor.  Splittable factors (deg >= 2)
    draw from the admissible divisors of d(0), which forces their absolute
    splitting to show mod p; linear factors cannot split and take small
    generic primes.  All primes must exceed the projected degree so mod-p
    squarefree machinery stays valid."""
    if cfg.prime_override is not None:
        p = cfg.prime_override
        _validate_override(p, factors, d_total, cfg)
        return [[p] for _ in factors]
    out = []
    for d_j, _m in factors:
        if d_j.degree >= 2:
            cands = [p for p in admissible_primes(d_j, cap=cfg.prime_cap)
                     if p > d_total][:cfg.primes_per_factor]
        else:
            cands = _generic_primes(d_total, cfg.primes_per_factor)
        out.append(cands)
    return out


def _generic_primes(d_total, count):
    out = []
    p = max(2, d_total)
    while len(out) < count:
        p += 1
        while not is_prime(p):
            p += 1
        out.append(p)
    return out


def _quick_prime_ok(p, d_j):
    if p <= d_j.degree:
        return False
    if d_j.degree >= 1:
        disc = discriminant(d_j)
        if disc == 0 or disc.numerator % p == 0:
            return False
    return int(d_j.lc) % p != 0


def _shared_prime_ok(p, d_j):
    if not _quick_prime_ok(p, d_j):
        return False
    return d_j.degree == 1 or int(d_j.eval(0)) % p == 0


def _validate_override(p, factors, d_total, cfg):
    if not is_prime(p):
        raise InvalidPrimeOverride(f"{p} is not prime")
    if p >= cfg.prime_cap:
        raise InvalidPrimeOverride(f"{p} exceeds the prime cap")
    if p <= d_total:
        raise InvalidPrimeOverride(
            f"{p} <= projected degree {d_total}; mod-p factorization unsafe")
    for d_j, _m in factors:
        if not _quick_prime_ok(p, d_j):
            raise InvalidPrimeOverride(
                f"{p} violates the selection conditions for a factor of degree "
                f"{d_j.degree}")
    splittable = [d_j for d_j, _m in factors if d_j.degree >= 2]
    if splittable and not any(int(d_j.eval(0)) % p == 0 for d_j in splittable):
        raise InvalidPrimeOverride(
            f"{p} divides no splittable factor's constant term, so the forced "
            "splitting guarantee is lost")


def _rational_projection(state) -> UniPoly:
    """D_1(0,..,0,X_2): eliminate everything but X_2 from the ideal with X_1
    evaluated at 0 (the generic coordinates make the origin section generic)."""
    cfg = state.cfg
    n = state.n
    gens0 = []
    for g in state.ideal.generators:
        h = g.evaluate_partial({0: 0})
        if h.is_zero():
            raise _BranchFail("generator vanished at the origin section")
        gens0.append(h)
    if state.backend() == "resultant":
        f, g = gens0
        d = _resultant_projection(f, g, elim_var=2)
    else:
        elim = frozenset(range(n)) - {1}
        idl0 = Ideal(tuple(gens0), QQ, n, 1)
        members = _elimination_members(idl0, elim - {0}, keep={1}, cfg=cfg)
        if len(members) != 1:
            raise _BranchFail(
                f"expected a unique projection polynomial, got {len(members)}")
        d = members[0]
    if d.is_zero() or d.deg_in(1) != d.total_degree():
        raise _BranchFail("projection polynomial degenerated")
    uni = d.to_unipoly(1, QQ)
    prim = primitivize(MultiPoly.from_unipoly(uni, 1, QQ, n)).to_unipoly(1, QQ)
    return prim


def _resultant_projection(f, g, elim_var):
    if f.deg_in(elim_var) <= 0 or g.deg_in(elim_var) <= 0:
        raise _BranchFail("resultant backend: generator free of the variable")
    r = None
    if isinstance(f.ring, _PrimeField):
        r = _fp_resultant_interp(f, g, elim_var)
    if r is None:
        r = resultant(f, g, elim_var)
    if r.is_zero():
        raise _BranchFail("resultant vanished (shared factor)")
    return r


# -- fast mod-p resultant: evaluate one kept variable, take univariate-entry
#    Bareiss determinants per row, interpolate back ------------------------------


def _fp_resultant_interp(f, g, var):
    """Res_var(f, g) over F_p for 3-variable inputs, or None when p is too
    small to supply enough interpolation rows (caller falls back)."""
    ring = f.ring
    p = ring.p
    if f.n != 3:
        return None
    kept = sorted(set(range(3)) - {var})
    a_var, b_var = kept
    df, dg = f.deg_in(var), g.deg_in(var)
    deg_bound = dg * f.deg_in(a_var) + df * g.deg_in(a_var)
    npts = deg_bound + 1
    if npts + 8 > p:
        return None
    fc = [c for c in f.coeffs_in(var)]
    gc = [c for c in g.coeffs_in(var)]
    ts, rows = [], []
    t = 0
    while len(ts) < npts and t < p:
        fe = [_eval_var_to_upoly_arr(c, a_var, b_var, t, p) for c in fc]
        ge = [_eval_var_to_upoly_arr(c, a_var, b_var, t, p) for c in gc]
        if _arr_is_zero(fe[-1]) or _arr_is_zero(ge[-1]):
            t += 1
            continue
        det = _sylvester_det_upoly(fe, ge, p)
        ts.append(t)
        rows.append(det)
        t += 1
    if len(ts) < npts:
        return None
    coeffs_by_apow = _lagrange_interp_rows(ts, rows, p)
    terms = {}
    for apow, row in enumerate(coeffs_by_apow):
        for bpow, c in enumerate(row):
            c = int(c)
            if c:
                e = [0, 0, 0]
                e[a_var] = apow
                e[b_var] = bpow
                terms[tuple(e)] = c
    return MultiPoly(terms, ring, 3)


def _eval_var_to_upoly_arr(c, a_var, b_var, t, p):
    """Evaluate a {a,b}-supported coefficient at a=t: dense array in b."""
    db = c.deg_in(b_var)
    out = np.zeros(max(db, 0) + 1, dtype=np.int64)
    for e, v in c.terms.items():
        out[e[b_var]] = (out[e[b_var]] + v * pow(t, e[a_var], p)) % p
    k = len(out)
    while k > 1 and out[k - 1] == 0:
        k -= 1
    return out[:k]


def _arr_is_zero(u):
    return len(u) == 1 and u[0] == 0


def _arr_sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[:len(a)] += a
    out[:len(b)] -= b
    out %= p
    k = n
    while k > 1 and out[k - 1] == 0:
        k -= 1
    return out[:k]


def _sylvester_det_upoly(fe, ge, p):
    """Bareiss determinant of the Sylvester matrix with F_p[b] entries."""
    from . import _kernels as K
    df, dg = len(fe) - 1, len(ge) - 1
    size = df + dg
    zero = np.zeros(1, dtype=np.int64)
    frow = [fe[df - j] for j in range(df + 1)]
    grow = [ge[dg - j] for j in range(dg + 1)]
    m = []
    for s in range(dg):
        m.append([zero] * s + frow + [zero] * (size - df - 1 - s))
    for s in range(df):
        m.append([zero] * s + grow + [zero] * (size - dg - 1 - s))
    sign = 1
    prev = np.ones(1, dtype=np.int64)
    for k in range(size - 1):
        piv = next((r for r in range(k, size) if not _arr_is_zero(m[r][k])), None)
        if piv is None:
            return zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = _arr_sub(K.mul(m[i][j], m[k][k], p),
                               K.mul(m[i][k], m[k][j], p), p)
                if _arr_is_zero(num):
                    m[i][j] = zero
                else:
                    q, rem = K.divmod_(num, prev, p)
                    if not _arr_is_zero(rem):
                        raise ArithmeticError("Bareiss division not exact")
                    m[i][j] = q
            m[i][k] = zero
        prev = m[k][k]
    det = m[size - 1][size - 1]
    if sign < 0:
        det = (-det) % p
    return det


def _lagrange_interp_rows(ts, rows, p):
    """R(a, b) from rows R(t_i, b): list indexed by a-power of b-coeff arrays."""
    npts = len(ts)
    max_b = max(len(r) for r in rows)
    acc = [[0] * max_b for _ in range(npts)]
    for i, ti in enumerate(ts):
        num = [1]
        den = 1
        for j, tj in enumerate(ts):
            if j == i:
                continue
            num = _poly_mul_linear_fp(num, (-tj) % p, p)
            den = den * (ti - tj) % p
        scale = pow(den, -1, p)
        li = [v * scale % p for v in num]
        for apow, lv in enumerate(li):
            if lv:
                row = rows[i]
                for bpow in range(len(row)):
                    if row[bpow]:
                        acc[apow][bpow] = (acc[apow][bpow] + lv * int(row[bpow])) % p
    return acc


def _poly_mul_linear_fp(coeffs, c0, p):
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = (out[i] + c * c0) % p
        out[i + 1] = (out[i + 1] + c) % p
    return out


def _elimination_members(idl, elim, keep, cfg):
    try:
        polys = eliminate(idl, elim, audit=cfg.audit, max_basis=cfg.max_basis,
                          max_degree=cfg.max_degree)
    except BudgetExceeded as exc:
        raise _BranchFail(f"elimination budget: {exc}")
    return [p for p in polys if p.variables() <= set(keep)]


def _prime_data(state, p):
    """Reductions, plane projections and their factorizations mod p, cached
    per prime within a round."""
    if p in state.prime_cache:
        val = state.prime_cache[p]
        if isinstance(val, _BranchFail):
            raise val
        return val
    try:
        data = _build_prime_data(state, p)
    except _BranchFail as exc:
        state.prime_cache[p] = exc
        raise
    state.prime_cache[p] = data
    return data


class _PrimeData:
    def __init__(self, ctx, ideal_p, projections, factorizations):
        self.ctx = ctx
        self.ideal_p = ideal_p
        self.projections = projections
        self.factorizations = factorizations


def _build_prime_data(state, p):
    cfg = state.cfg
    n = state.n
    ctx = PrimeContext(p, beta=0, source="pipeline")
    try:
        ideal_p = reduce_ideal(state.ideal, ctx)
    except BadPrime as exc:
        raise _BranchFail(f"reduction failed: {exc}")
    try:
        if hilbert_dimension(ideal_p, audit=cfg.audit) != 1:
            raise _BranchFail("input ideal is not a curve mod p")
    except BudgetExceeded as exc:
        raise _BranchFail(f"dimension check budget: {exc}")
    d_total = None
    projections = []
    factorizations = []
    for i, H in enumerate(state.plan.sets):
        kept = state.plan.kept(i)
        if state.backend() == "resultant":
            f, g = ideal_p.generators
            elim_var = next(iter(H))
            proj = _resultant_projection(f, g, elim_var)
        else:
            members = _elimination_members(ideal_p, H, keep=kept, cfg=cfg)
            if len(members) != 1:
                raise _BranchFail(
                    f"projection {i}: {len(members)} kept-variable generators")
            proj = members[0]
        restricted = proj.restrict(kept)
        deg = restricted.total_degree()
        if d_total is None:
            d_total = deg
        if deg != d_total or deg <= 0:
            raise _BranchFail(f"projection {i}: degree {deg} != {d_total}")
        try:
            fl = factor_bivariate_fp(restricted, seed=cfg.seed)
        except Exception as exc:
            raise _BranchFail(f"projection {i}: factorization failed: {exc}")
        if sum(e * h.total_degree() for h, e in fl.factors) != deg:
            raise _BranchFail(f"projection {i}: factor degrees inconsistent")
        projections.append(restricted)
        factorizations.append(fl)
    return _PrimeData(ctx, ideal_p, projections, factorizations)


def _process_factor(state, j, d_j, m_j, p):
    """One branch of the main loop: everything mod p for rational factor j."""
    cfg = state.cfg
    pd = _prime_data(state, p)
    n = state.n
    try:
        part = partition_factors(d_j, p, pd.factorizations[0])
    except PartitionIncomplete as exc:
        raise _BranchFail(f"partition: {exc}")
    except BadPrime as exc:
        raise _BranchFail(f"partition: {exc}")
    part = sorted(part, key=lambda h: (h.total_degree(),
                                       sorted(h.terms.items())))
    chosen = None
    for h in part:
        if d_j.degree % h.total_degree() == 0:
            chosen = h
            break
    if chosen is None:
        raise _BranchFail("no modular factor degree divides deg d (retry)")
    r_j = d_j.degree // chosen.total_degree()
    mult_of = dict((h, e) for h, e in pd.factorizations[0].factors)
    if mult_of.get(chosen) != m_j:
        raise _BranchFail("chosen factor multiplicity disagrees with m_j")
    abs_deg = chosen.total_degree()
    # candidates in the other projections: same degree, same multiplicity
    candidates = []
    for i in range(1, len(state.plan.sets)):
        lst = [h for h, e in pd.factorizations[i].factors
               if h.total_degree() == abs_deg and e == m_j]
        if not lst:
            raise _BranchFail(f"projection {i}: no candidate factor")
        kept = state.plan.kept(i)
        candidates.append([h.embed(list(kept), n) for h in lst])
    first = chosen.embed(list(state.plan.kept(0)), n)
    try:
        matched, used = _match_factors_impl(pd.ideal_p, first, candidates,
                                            m_j, audit=cfg.audit)
    except NoMatch as exc:
        raise _BranchFail(f"matching: {exc}")
    order = cfg.term_order(n)
    if m_j == 1:
        try:
            minor, colon, gb = _minor_and_colon(pd.ideal_p, matched,
                                                order=order, audit=cfg.audit)
        except NoUsableMinor as exc:
            raise _BranchFail(f"minor: {exc}")
        init = initial_ideal(gb)
        hd = affine_hilbert_function(init)
        if hd.dimension != 1:
            raise _BranchFail(f"component Hilbert dimension {hd.dimension} != 1")
        if hd.degree != abs_deg:
            raise _BranchFail(
                f"component Hilbert degree {hd.degree} != {abs_deg}")
        return ComponentRecord(
            rational_degree=d_j.degree, multiplicity=m_j, absolute_count=r_j,
            absolute_degree=abs_deg, prime=p, initial_ideal=init, hilbert=hd,
            isolating_polys_mod_p=None)
    return ComponentRecord(
        rational_degree=d_j.degree, multiplicity=m_j, absolute_count=r_j,
        absolute_degree=abs_deg, prime=p, initial_ideal=None, hilbert=None,
        isolating_polys_mod_p=tuple(used))
