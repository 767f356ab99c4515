"""Monomial staircase machinery: affine Hilbert function, dimension,
degree, multiplicity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import (NonDivisible, OrderNotDegreeCompatible,
                     StabilizationFailed)

UPTO_CAP = 64
INCL_EXCL_MAX_GENS = 12


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal monomial generators (an antichain under divisibility)."""

    gens: tuple
    n: int

    @classmethod
    def from_exponents(cls, exponents, n):
        exps = sorted(set(tuple(e) for e in exponents))
        minimal = []
        for e in sorted(exps, key=sum):
            if not any(_divides(m, e) for m in minimal):
                minimal.append(e)
        return cls(tuple(sorted(minimal)), n)

    @property
    def contains_one(self):
        return any(sum(e) == 0 for e in self.gens)

    def contains(self, exps):
        return any(_divides(g, exps) for g in self.gens)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class HilbertData:
    """Affine Hilbert values up to stabilization, the Hilbert polynomial
    (ascending Fraction coefficients), dimension and degree."""

    values: tuple
    polynomial: tuple
    dimension: int
    degree: int
    regularity: int


def initial_ideal(gb) -> MonomialIdeal:
    """Leading monomials of a reduced basis, minimalized."""
    if not gb.order.degree_compatible:
        raise OrderNotDegreeCompatible(
            "Hilbert data needs a degree compatible order")
    exps = [p.leading(gb.order)[0] for p in gb.polys]
    n = gb.polys[0].n if gb.polys else gb.order.n
    return MonomialIdeal.from_exponents(exps, n)


def monomial_dimension(m: MonomialIdeal) -> int:
    """max |S| such that no generator is supported inside S; -1 for (1)."""
    if m.contains_one:
        return -1
    if not m.gens:
        return m.n
    supports = [frozenset(i for i, v in enumerate(g) if v) for g in m.gens]
    best = 0
    for size in range(m.n, 0, -1):
        for S in itertools.combinations(range(m.n), size):
            sset = set(S)
            if all(not sup <= sset for sup in supports):
                best = size
                break
        if best:
            break
    return best


def count_standard_leq(m: MonomialIdeal, i: int) -> int:
    """Number of monomials of degree <= i outside m."""
    if i < 0:
        return 0
    if m.contains_one:
        return 0
    if not m.gens:
        return comb(m.n + i, m.n)
    if len(m.gens) <= INCL_EXCL_MAX_GENS:
        return _count_incl_excl(m, i)
    return _count_enumerate(m, i)


def _count_incl_excl(m, i):
    n = m.n
    gens = m.gens
    total = comb(n + i, n)
    # subsets of generators; lcm degree prunes quickly
    for bits in range(1, 1 << len(gens)):
        lcm = [0] * n
        sign = 1            # becomes (-1)^{|S|} after the flips below
        k = bits
        idx = 0
        while k:
            if k & 1:
                g = gens[idx]
                lcm = [max(a, b) for a, b in zip(lcm, g)]
                sign = -sign
            k >>= 1
            idx += 1
        d = sum(lcm)
        if d <= i:
            total += sign * comb(n + i - d, n)
    return total


def _count_enumerate(m, i):
    count = 0
    for e in _monomials_leq(m.n, i):
        if not m.contains(e):
            count += 1
    return count


def _monomials_leq(n, d):
    if n == 0:
        yield ()
        return
    for k in range(d + 1):
        for rest in _monomials_leq(n - 1, d - k):
            yield (k,) + rest


def affine_hilbert_function(m: MonomialIdeal, upto=None) -> HilbertData:
    """Staircase count of HF^a plus interpolated Hilbert polynomial.

    Values are declared polynomial once (dim+2) consecutive finite
    differences of order (dim+1) vanish; the polynomial is then interpolated
    from the trailing dim+1 values (an affine Hilbert polynomial has degree
    exactly dim).
    """
    dim = monomial_dimension(m)
    if dim == -1:
        vals = tuple(0 for _ in range(max(2, (upto or 2) + 1)))
        return HilbertData(vals, (), -1, 0, 0)
    maxdeg = max((sum(g) for g in m.gens), default=1)
    target = upto if upto is not None else min(2 * maxdeg + m.n, UPTO_CAP)
    target = max(target, dim + 3)
    while True:
        vals = [count_standard_leq(m, i) for i in range(target + 1)]
        stab = _stabilization_index(vals, dim)
        if stab is not None:
            break
        if target >= UPTO_CAP:
            raise StabilizationFailed(
                f"no polynomial tail below i = {UPTO_CAP}")
        target = min(UPTO_CAP, target + max(4, target // 2))
    poly = _interpolate(vals, dim)
    lead = poly[-1] if poly else Fraction(0)
    degree = factorial(dim) * lead
    if degree.denominator != 1 or degree <= 0:
        raise StabilizationFailed(f"inconsistent leading coefficient {lead}")
    reg = _regularity(vals, poly)
    return HilbertData(tuple(vals), tuple(poly), dim, int(degree), reg)


def _stabilization_index(vals, dim):
    """First index after which order-(dim+1) differences vanish dim+2 times."""
    order = dim + 1
    diffs = list(vals)
    for _ in range(order):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    run = 0
    for idx in range(len(diffs) - 1, -1, -1):
        if diffs[idx] == 0:
            run += 1
        else:
            break
    if run >= dim + 2:
        return len(diffs) - run
    return None


def _interpolate(vals, dim):
    """Degree-dim polynomial through the last dim+1 (i, vals[i]) points."""
    pts = [(i, vals[i]) for i in range(len(vals) - dim - 1, len(vals))]
    coeffs = [Fraction(0)] * (dim + 1)
    for j, (xj, yj) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(pts):
            if k == j:
                continue
            basis = _poly_mul_lin(basis, -xk)
            denom *= xj - xk
        scale = Fraction(yj) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul_lin(coeffs, c0):
    """coeffs(t) * (t + c0)."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] += c * c0
        out[i + 1] += c
    return out


def _regularity(vals, poly):
    def hp(i):
        acc = Fraction(0)
        for k in range(len(poly) - 1, -1, -1):
            acc = acc * i + poly[k]
        return acc
    reg = len(vals)
    for i in range(len(vals) - 1, -1, -1):
        if hp(i) == vals[i]:
            reg = i
        else:
            break
    return reg


def multiplicity_of(component_degree: int, radical_degree: int) -> int:
    """deg(q) / deg(p) for a p-primary q; the pipeline reads multiplicities
    off factor exponents instead and keeps this for audits."""
    if component_degree <= 0 or radical_degree <= 0:
        raise NonDivisible("degrees must be positive")
    if component_degree % radical_degree:
        raise NonDivisible(
            f"{radical_degree} does not divide {component_degree}")
    return component_degree // radical_degree
