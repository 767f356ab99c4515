"""Buchberger engine over Q and F_p, elimination, colon ideals, and
Hilbert dimensions of evaluated ideals.

Coefficient policy: over F_p every stored polynomial is monic; over Q it is
integer-primitive with positive leading coefficient, which bounds growth and
keeps mod-p images of a basis well defined.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .arith import QQ, _PrimeField
from .errors import (BudgetExceeded, GroebnerAuditError, ZeroDivisor)
from .hilbert import initial_ideal, monomial_dimension
from .mpoly import MultiPoly, TermOrder

DEFAULT_MAX_BASIS = 600
DEFAULT_MAX_DEGREE = 160

# diagnostics only: number of bases that went through the full audit
AUDITED_BASES = 0


@dataclass(frozen=True)
class Ideal:
    """Finite generating set over a named ring.  c is the declared
    equidimensional dimension (trusted, per the pipeline contract)."""

    generators: tuple
    ring: object
    n: int
    c: int | None = None

    @classmethod
    def from_gens(cls, gens, c=None):
        gens = tuple(g for g in gens)
        if not gens:
            raise ValueError("empty generator list")
        ring = gens[0].ring
        n = gens[0].n
        for g in gens:
            if g.ring is not ring or g.n != n:
                raise ValueError("mixed rings in generator list")
        return cls(gens, ring, n, c)


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple
    order: TermOrder


def _normalize(f: MultiPoly, order: TermOrder) -> MultiPoly:
    if f.is_zero():
        return f
    if f.ring is QQ:
        g, _ = f.primitive_int()
        lead = g.leading(order)[1]
        return g.scale(-1) if lead < 0 else g
    lc = f.leading(order)[1]
    return f.scale(f.ring.inv(lc))


def normal_form(f: MultiPoly, gb, order: TermOrder | None = None) -> MultiPoly:
    """Full remainder of f modulo a basis (no term divisible by a basis LM)."""
    if isinstance(gb, GroebnerBasis):
        polys, order = gb.polys, gb.order
    else:
        polys = tuple(gb)
        if order is None:
            raise ValueError("order required when passing a raw poly list")
    basis = [(p.leading(order), p) for p in polys if not p.is_zero()]
    return _reduce(f, basis, order)


def _prep_basis(basis, ring):
    """Reduction-ready view: (lead exps, inverse lead coeff, term list)."""
    p = ring.p if isinstance(ring, _PrimeField) else None
    prep = []
    for (le, lc), g in basis:
        inv = pow(lc, -1, p) if p is not None else ring.inv(lc)
        prep.append((le, inv, list(g.terms.items())))
    return prep


def _reduce(f, basis, order, prep=None):
    r = f.ring
    key = order.key
    p = r.p if isinstance(r, _PrimeField) else None
    if prep is None:
        prep = _prep_basis(basis, r)
    work = dict(f.terms)
    out = {}
    # lazy max-heap over negated order keys; stale entries skipped on pop
    heap = [tuple(-x for x in key(e)) + (e,) for e in work]
    heapq.heapify(heap)
    while heap:
        entry = heapq.heappop(heap)
        e = entry[-1]
        if e not in work:
            continue
        c = work.pop(e)
        hit = None
        for le, inv, gterms in prep:
            ok = True
            for a, b in zip(e, le):
                if a < b:
                    ok = False
                    break
            if ok:
                hit = (le, inv, gterms)
                break
        if hit is None:
            out[e] = c
            continue
        le, inv, gterms = hit
        shift = tuple(a - b for a, b in zip(e, le))
        if p is not None:
            q = c * inv % p
            for ge, gc in gterms:
                te = tuple(a + b for a, b in zip(shift, ge))
                if te == e:
                    continue
                s = (work.get(te, 0) - q * gc) % p
                if s:
                    if te not in work:
                        heapq.heappush(heap, tuple(-x for x in key(te)) + (te,))
                    work[te] = s
                else:
                    work.pop(te, None)
        else:
            q = r.mul(c, inv)
            for ge, gc in gterms:
                te = tuple(a + b for a, b in zip(shift, ge))
                if te == e:
                    continue
                s = r.sub(work.get(te, r.zero), r.mul(q, gc))
                if r.is_zero(s):
                    work.pop(te, None)
                else:
                    if te not in work:
                        heapq.heappush(heap, tuple(-x for x in key(te)) + (te,))
                    work[te] = s
    return MultiPoly(out, r, f.n)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: TermOrder) -> MultiPoly:
    r = f.ring
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(a - b for a, b in zip(lcm, ef))
    mg = tuple(a - b for a, b in zip(lcm, eg))
    return f.mul_term(mf, r.inv(cf)) - g.mul_term(mg, r.inv(cg))


def buchberger(idl: Ideal, order: TermOrder, *, max_basis=DEFAULT_MAX_BASIS,
               max_degree=DEFAULT_MAX_DEGREE, audit=False) -> GroebnerBasis:
    """Reduced Groebner basis by plain Buchberger with the product and chain
    criteria, normal pair selection (minimal lcm degree first)."""
    gens = [_normalize(g, order) for g in idl.generators if not g.is_zero()]
    basis = []          # list of ((lm_exps, lm_coeff), poly)
    prep = []           # parallel reduction-ready entries
    pending = set()     # unprocessed pairs (i, j), i < j
    heap = []

    def lm(i):
        return basis[i][0][0]

    def push_pairs(j):
        ej = lm(j)
        for i in range(j):
            lcm = tuple(max(a, b) for a, b in zip(lm(i), ej))
            heapq.heappush(heap, (sum(lcm), order.key(lcm), i, j))
            pending.add((i, j))

    def add_poly(p):
        if p.is_constant():
            return "unit"
        basis.append((p.leading(order), p))
        prep.extend(_prep_basis(basis[-1:], idl.ring))
        if len(basis) > max_basis:
            raise BudgetExceeded(f"basis size exceeded {max_basis}")
        if p.total_degree() > max_degree:
            raise BudgetExceeded(f"degree exceeded {max_degree}")
        push_pairs(len(basis) - 1)
        return None

    unit = False
    for g in gens:
        if g.is_constant():
            unit = True
            break
        if add_poly(g) == "unit":
            unit = True
            break

    while heap and not unit:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        ei, ej = lm(i), lm(j)
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        # product criterion: coprime leading monomials
        if all(a + b == c for a, b, c in zip(ei, ej, lcm)):
            continue
        # chain criterion: a third LM divides the lcm and both side pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if all(a <= b for a, b in zip(lm(k), lcm)):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = s_polynomial(basis[i][1], basis[j][1], order)
        rem = _reduce(s, basis, order, prep=prep)
        if rem.is_zero():
            continue
        rem = _normalize(rem, order)
        if add_poly(rem) == "unit":
            unit = True

    if unit:
        one = MultiPoly.constant(idl.ring.one, idl.ring, idl.n)
        gb = GroebnerBasis((one,), order)
        if audit:
            _audit(gb, idl)
        return gb

    reduced = _interreduce([b[1] for b in basis], order)
    gb = GroebnerBasis(tuple(reduced), order)
    if audit:
        _audit(gb, idl)
    return gb


def _interreduce(polys, order):
    # keep only polys whose LM is not divisible by another LM
    polys = [p for p in polys if not p.is_zero()]
    lead = [p.leading(order)[0] for p in polys]
    keep = []
    for i, p in enumerate(polys):
        li = lead[i]
        dominated = False
        for j, lj in enumerate(lead):
            if i == j:
                continue
            if all(a <= b for a, b in zip(lj, li)) and (lj != li or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(p)
    # tail-reduce each against the others until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = [(keep[j].leading(order), keep[j])
                      for j in range(len(keep)) if j != i]
            r = _reduce(keep[i], others, order)
            r = _normalize(r, order)
            if r != keep[i]:
                keep[i] = r
                changed = True
        keep = [p for p in keep if not p.is_zero()]
    keep.sort(key=lambda p: order.key(p.leading(order)[0]))
    return keep


def _audit(gb: GroebnerBasis, idl: Ideal):
    """Direct Buchberger-criterion check plus input membership; raises on
    any violation.  Used by the acceptance suite on every pipeline basis."""
    global AUDITED_BASES
    polys = gb.polys
    if not polys:
        raise GroebnerAuditError("empty basis")
    ring = polys[0].ring
    pairs = [(p.leading(gb.order), p) for p in polys]
    prep = _prep_basis(pairs, ring)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            s = s_polynomial(polys[i], polys[j], gb.order)
            if not _reduce(s, pairs, gb.order, prep=prep).is_zero():
                raise GroebnerAuditError(
                    f"S-polynomial of basis pair ({i},{j}) does not reduce to 0")
    for g in idl.generators:
        if not _reduce(g, pairs, gb.order, prep=prep).is_zero():
            raise GroebnerAuditError("input generator escapes the basis")
    AUDITED_BASES += 1


def eliminate(idl: Ideal, H, *, audit=False, max_basis=DEFAULT_MAX_BASIS,
              max_degree=DEFAULT_MAX_DEGREE):
    """Generators of idl restricted to K[X_j : j not in H] (the H-free
    members of a block elimination basis generate the elimination ideal)."""
    H = frozenset(H)
    if not H:
        gb = buchberger(idl, TermOrder.deglex(idl.n), audit=audit)
        return list(gb.polys)
    order = TermOrder.block(H, idl.n)
    gb = buchberger(idl, order, audit=audit, max_basis=max_basis,
                    max_degree=max_degree)
    return [p for p in gb.polys if not (p.variables() & H)]


def colon_single(idl: Ideal, f: MultiPoly, *, audit=False) -> Ideal:
    """(idl : f) via the intersection with (f), computed with an auxiliary
    elimination variable, then
    exact division of each intersection generator by f."""
    if f.is_zero():
        raise ZeroDivisor("colon by the zero polynomial")
    r = idl.ring
    n = idl.n
    m = n + 1          # auxiliary variable t at index n
    t = MultiPoly.variable(n, r, m)
    one = MultiPoly.constant(r.one, r, m)
    lifted = [t * g.embed(list(range(n)), m) for g in idl.generators]
    f_lift = f.embed(list(range(n)), m)
    lifted.append((one - t) * f_lift)
    big = Ideal.from_gens(lifted)
    inter = eliminate(big, {n}, audit=audit)
    gens = []
    for g in inter:
        g_low = g.restrict(list(range(n)))
        q = g_low.exact_div(f)
        if q is None:
            raise ArithmeticError("intersection member not divisible by f")
        if not q.is_zero():
            gens.append(q)
    if not gens:
        gens = [MultiPoly.zero(r, n)]
        return Ideal(tuple(gens), r, n, idl.c)
    return Ideal.from_gens(gens, c=idl.c)


def hilbert_dimension(idl: Ideal, *, order=None, audit=False) -> int:
    """Affine Hilbert dimension via the initial-ideal staircase."""
    order = order or TermOrder.deglex(idl.n)
    gb = buchberger(idl, order, audit=audit)
    if len(gb.polys) == 1 and gb.polys[0].is_constant():
        return -1
    return monomial_dimension(initial_ideal(gb))


def dim_at_origin_section(idl: Ideal, eval_vars, *, audit=False) -> int:
    """Affine Hilbert dimension after substituting 0 for eval_vars; -1 when
    the section is empty (unit ideal)."""
    eval_vars = set(eval_vars)
    keep = [i for i in range(idl.n) if i not in eval_vars]
    gens = []
    for g in idl.generators:
        h = g.evaluate_partial({i: 0 for i in eval_vars})
        if h.is_zero():
            continue
        if h.is_constant():
            return -1
        gens.append(h.restrict(keep))
    if not gens:
        return len(keep)
    return hilbert_dimension(Ideal.from_gens(gens), audit=audit)
