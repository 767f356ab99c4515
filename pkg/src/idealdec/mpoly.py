"""Sparse multivariate polynomials, term orders, coordinate changes,
Sylvester resultants and Jacobian minors.

Terms live in a dict keyed by exponent tuples; nothing is kept sorted, the
active TermOrder sorts on demand.  Coefficients follow the ring tag (QQ ->
Fraction, GF(p) -> int residues) exactly as in arith.UniPoly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from .arith import QQ, UniPoly
from .errors import (DegreeZeroInVariable, RingMismatch, SingularMatrix,
                     SizeTooLarge, ZeroPolynomial)


class TermOrder:
    """deglex / degrevlex / block elimination order.

    key(exps) returns a flat integer tuple; larger tuple = larger monomial.
    Block orders rank any monomial containing a front-block variable above
    every front-free monomial, which is what elimination needs.
    """

    def __init__(self, kind, n, front=frozenset()):
        if kind not in ("deglex", "degrevlex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.n = n
        self.front = frozenset(front)
        if kind == "block":
            self._front_idx = tuple(sorted(self.front))
            self._back_idx = tuple(i for i in range(n) if i not in self.front)

    @classmethod
    def deglex(cls, n):
        return cls("deglex", n)

    @classmethod
    def degrevlex(cls, n):
        return cls("degrevlex", n)

    @classmethod
    def block(cls, front, n):
        return cls("block", n, front)

    @property
    def degree_compatible(self):
        return self.kind in ("deglex", "degrevlex")

    def key(self, exps):
        if self.kind == "deglex":
            return (sum(exps),) + tuple(exps)
        if self.kind == "degrevlex":
            return (sum(exps),) + tuple(-exps[i] for i in range(self.n - 1, -1, -1))
        fe = tuple(exps[i] for i in self._front_idx)
        be = tuple(exps[i] for i in self._back_idx)
        return (sum(fe),) + fe + (sum(be),) + be

    def __eq__(self, other):
        return (isinstance(other, TermOrder) and self.kind == other.kind
                and self.n == other.n and self.front == other.front)

    def __hash__(self):
        return hash((self.kind, self.n, self.front))

    def __repr__(self):
        if self.kind == "block":
            return f"TermOrder.block({sorted(self.front)}, n={self.n})"
        return f"TermOrder.{self.kind}(n={self.n})"


class MultiPoly:
    __slots__ = ("terms", "ring", "n")

    def __init__(self, terms, ring, n):
        clean = {}
        for e, c in terms.items():
            c = ring.coerce(c)
            if not ring.is_zero(c):
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for n={n}")
                clean[tuple(e)] = c
        self.terms = clean
        self.ring = ring
        self.n = n

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring, n):
        return cls({}, ring, n)

    @classmethod
    def constant(cls, c, ring, n):
        return cls({(0,) * n: c}, ring, n)

    @classmethod
    def variable(cls, i, ring, n):
        e = [0] * n
        e[i] = 1
        return cls({tuple(e): ring.one}, ring, n)

    # -- predicates / views --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.n, self.ring.zero)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def deg_in(self, var):
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def variables(self):
        used = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(i)
        return used

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.ring is other.ring
                and self.n == other.n and self.terms == other.terms)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), id(self.ring), self.n))

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.ring is not other.ring or self.n != other.n:
            raise RingMismatch("incompatible polynomial rings")

    def __add__(self, other):
        self._check(other)
        r = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = r.add(out.get(e, r.zero), c)
            if r.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(out, r, self.n)

    def __neg__(self):
        r = self.ring
        return MultiPoly({e: r.neg(c) for e, c in self.terms.items()}, r, self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        r = self.ring
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = r.add(out.get(e, r.zero), r.mul(c1, c2))
                if r.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(out, r, self.n)

    def scale(self, c):
        r = self.ring
        c = r.coerce(c)
        return MultiPoly({e: r.mul(c, v) for e, v in self.terms.items()}, r, self.n)

    def mul_term(self, exps, coeff):
        r = self.ring
        return MultiPoly(
            {tuple(a + b for a, b in zip(e, exps)): r.mul(c, coeff)
             for e, c in self.terms.items()}, r, self.n)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.ring.one, self.ring, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self, var):
        r = self.ring
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                e2 = list(e)
                e2[var] -= 1
                out[tuple(e2)] = r.mul(r.coerce(e[var]), c)
        return MultiPoly(out, r, self.n)

    # -- order-aware views ------------------------------------------------------

    def sorted_terms(self, order, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]),
                      reverse=reverse)

    def leading(self, order):
        if not self.terms:
            raise ZeroPolynomial("leading term of 0")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    # -- substitution / restriction ----------------------------------------------

    def evaluate_partial(self, assignments):
        """Substitute ring values for the given variable indices; the result
        stays in the same n-variable ring."""
        r = self.ring
        vals = {i: r.coerce(v) for i, v in assignments.items()}
        acc = {}
        for e, c in self.terms.items():
            coeff = c
            e2 = list(e)
            for i, v in vals.items():
                if e[i]:
                    coeff = r.mul(coeff, _pow_coeff(r, v, e[i]))
                    e2[i] = 0
            key = tuple(e2)
            s = r.add(acc.get(key, r.zero), coeff)
            if r.is_zero(s):
                acc.pop(key, None)
            else:
                acc[key] = s
        return MultiPoly(acc, r, self.n)

    def restrict(self, keep):
        """View over only the variables in `keep` (support must allow it)."""
        keep = tuple(keep)
        pos = {v: i for i, v in enumerate(keep)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(keep)
            for i, v in enumerate(e):
                if v:
                    if i not in pos:
                        raise ValueError(f"variable {i} not in restriction set")
                    ne[pos[i]] = v
            out[tuple(ne)] = c
        return MultiPoly(out, self.ring, len(keep))

    def embed(self, positions, n):
        """Inverse of restrict: place variable i at positions[i]."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, v in enumerate(e):
                ne[positions[i]] = v
            out[tuple(ne)] = c
        return MultiPoly(out, self.ring, n)

    def coeffs_in(self, var):
        """Coefficients of var^k as var-free polynomials (same ring)."""
        d = self.deg_in(var)
        out = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[var]
            e2 = list(e)
            e2[var] = 0
            out[k][tuple(e2)] = c
        return [MultiPoly(t, self.ring, self.n) for t in out]

    def to_unipoly(self, var, ring=None):
        """Convert when the support touches only `var`."""
        ring = ring or self.ring
        cs = [ring.zero] * (self.deg_in(var) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            if sum(e) != e[var]:
                raise ValueError("polynomial is not univariate in that variable")
            cs[e[var]] = c
        return UniPoly(cs, ring)

    @classmethod
    def from_unipoly(cls, f, var, ring, n):
        out = {}
        for k, c in enumerate(f.coeffs):
            if not f.ring.is_zero(c):
                e = [0] * n
                e[var] = k
                out[tuple(e)] = c
        return cls(out, ring, n)

    def map_coeffs(self, fn, ring):
        return MultiPoly({e: fn(c) for e, c in self.terms.items()}, ring, self.n)

    # -- integer normalization over Q -----------------------------------------------

    def primitive_int(self):
        """Scalar multiple with coprime integer coefficients and positive
        deglex-leading coefficient.  Returns (poly, applied_scalar)."""
        if self.ring is not QQ:
            raise RingMismatch("primitive_int needs rational coefficients")
        if not self.terms:
            return self, Fraction(1)
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // igcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = igcd(num, c.numerator * (den // c.denominator))
        scal = Fraction(den, num)
        lead = max(self.terms, key=TermOrder.deglex(self.n).key)
        if self.terms[lead] < 0:
            scal = -scal
        return self.scale(scal), scal

    # -- exact division ---------------------------------------------------------------

    def exact_div(self, g, order=None):
        """self / g when g divides exactly, else None."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = order or TermOrder.deglex(self.n)
        r = self.ring
        glead, glc = g.leading(order)
        glc_inv = r.inv(glc)
        rem = dict(self.terms)
        out = {}
        while rem:
            e = max(rem, key=order.key)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, glead))
            if any(v < 0 for v in qe):
                return None
            qc = r.mul(c, glc_inv)
            out[qe] = qc
            for ge, gc in g.terms.items():
                te = tuple(a + b for a, b in zip(qe, ge))
                s = r.sub(rem.get(te, r.zero), r.mul(qc, gc))
                if r.is_zero(s):
                    rem.pop(te, None)
                else:
                    rem[te] = s
        return MultiPoly(out, r, self.n)

    # -- display ----------------------------------------------------------------------------

    def to_text(self, names=None, order=None):
        if not self.terms:
            return "0"
        names = names or [f"X{i+1}" for i in range(self.n)]
        order = order or TermOrder.deglex(self.n)
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e) if k)
            coeff = str(c)
            neg = coeff.startswith("-")
            if neg:
                coeff = coeff[1:]
            if mono:
                body = mono if coeff == "1" else f"{coeff}*{mono}"
            else:
                body = coeff
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def _pow_coeff(r, v, k):
    out = r.one
    for _ in range(k):
        out = r.mul(out, v)
    return out


# ---------------------------------------------------------------------------
# free-function operations


def leading_monomial(f: MultiPoly, order: TermOrder):
    """Exponent vector of the order-greatest term."""
    return f.leading(order)[0]


@dataclass(frozen=True)
class CoordChange:
    """Affine substitution X -> matrix . X + translation.

    Entries may be integers or Fractions; the matrix must be invertible
    over Q.  The pipeline draws small integer entries.
    """

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        n = len(self.matrix)
        mat = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        tr = tuple(Fraction(v) for v in self.translation)
        if any(len(row) != n for row in mat) or len(tr) != n:
            raise ValueError("matrix/translation shape mismatch")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "translation", tr)
        if _det_fraction(mat) == 0:
            raise SingularMatrix("coordinate change matrix has det 0")

    @property
    def n(self):
        return len(self.matrix)

    def inverse(self):
        n = self.n
        inv = _invert_fraction_matrix(self.matrix)
        tr = tuple(-sum(inv[i][j] * self.translation[j] for j in range(n))
                   for i in range(n))
        return CoordChange(inv, tr)


def _det_fraction(mat):
    n = len(mat)
    m = [list(r) for r in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _invert_fraction_matrix(mat):
    n = len(mat)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix not invertible")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def apply_coord_change(f: MultiPoly, change: CoordChange) -> MultiPoly:
    """Compose f with X_i -> sum_j M[i][j] X_j + t_i (degree preserved)."""
    if f.n != change.n:
        raise ValueError("variable count mismatch")
    r = f.ring
    n = f.n
    images = []
    for i in range(n):
        terms = {}
        for j in range(n):
            v = change.matrix[i][j]
            if v:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = r.coerce(v)
        if change.translation[i]:
            terms[(0,) * n] = r.coerce(change.translation[i])
        images.append(MultiPoly(terms, r, n))
    powers = [{0: MultiPoly.constant(r.one, r, n)} for _ in range(n)]

    def img_pow(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = img_pow(i, k - 1) * images[i]
        return cache[k]

    out = MultiPoly.zero(r, n)
    for e, c in f.terms.items():
        term = MultiPoly.constant(c, r, n)
        for i, k in enumerate(e):
            if k:
                term = term * img_pow(i, k)
        out = out + term
    return out


def evaluate_partial(f: MultiPoly, assignments) -> MultiPoly:
    return f.evaluate_partial(assignments)


def bareiss_det(rows):
    """Fraction-free determinant over an integral domain of MultiPoly
    entries.  Intermediate entries stay true minors, so every division is
    exact."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    ring = m[0][0].ring
    nvars = m[0][0].n
    one = MultiPoly.constant(ring.one, ring, nvars)
    sign = 1
    prev = one
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not m[r][k].is_zero()), None)
        if piv is None:
            return MultiPoly.zero(ring, nvars)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                if num.is_zero():
                    m[i][j] = MultiPoly.zero(ring, nvars)
                else:
                    q = num.exact_div(prev)
                    if q is None:
                        raise ArithmeticError("Bareiss division not exact")
                    m[i][j] = q
            m[i][k] = MultiPoly.zero(ring, nvars)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: MultiPoly, g: MultiPoly, var: int) -> MultiPoly:
    """Sylvester determinant of f, g read as univariate in `var`."""
    f._check(g)
    df, dg = f.deg_in(var), g.deg_in(var)
    if df <= 0 or dg <= 0:
        raise DegreeZeroInVariable(
            f"both arguments need positive degree in variable {var}")
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    ring, n = f.ring, f.n
    zero = MultiPoly.zero(ring, n)
    size = df + dg
    rows = []
    # dg rows of f coefficients (descending powers), then df rows of g
    frow = [fc[df - j] for j in range(df + 1)]
    grow = [gc[dg - j] for j in range(dg + 1)]
    for s in range(dg):
        rows.append([zero] * s + frow + [zero] * (size - df - 1 - s))
    for s in range(df):
        rows.append([zero] * s + grow + [zero] * (size - dg - 1 - s))
    return bareiss_det(rows)


def jacobian_minors(gens, size, first_nonzero=False):
    """All size x size minors of the Jacobian (d gen_i / d X_j), ordered by
    row-combination then column-combination, both lexicographic."""
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    n = gens[0].n
    if size > min(len(gens), n):
        raise SizeTooLarge(f"minor size {size} exceeds {len(gens)}x{n} Jacobian")
    jac = [[g.derivative(j) for j in range(n)] for g in gens]
    out = []
    for rows in itertools.combinations(range(len(gens)), size):
        for cols in itertools.combinations(range(n), size):
            sub = [[jac[r][c] for c in cols] for r in rows]
            minor = bareiss_det(sub)
            if first_nonzero:
                if not minor.is_zero():
                    return [minor]
            else:
                out.append(minor)
    if first_nonzero:
        return []
    return out
