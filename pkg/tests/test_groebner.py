import random

import pytest

from idealdec.arith import QQ
from idealdec.errors import BudgetExceeded, ZeroDivisor
from idealdec.groebner import (Ideal, buchberger, colon_single,
                               dim_at_origin_section, eliminate,
                               hilbert_dimension, normal_form)
from idealdec.modred import PrimeContext, reduce_ideal
from idealdec.mpoly import CoordChange, MultiPoly, TermOrder, apply_coord_change, resultant
from tests.conftest import random_poly


def _xy(ring=QQ):
    return MultiPoly.variable(0, ring, 2), MultiPoly.variable(1, ring, 2)


def _xyz(ring=QQ):
    return (MultiPoly.variable(0, ring, 3), MultiPoly.variable(1, ring, 3),
            MultiPoly.variable(2, ring, 3))


def test_normal_form_examples():
    X, Y = _xy()
    gb = buchberger(Ideal.from_gens([X]), TermOrder.deglex(2))
    assert normal_form(X * X, gb).is_zero()
    one = MultiPoly.constant(1, QQ, 2)
    assert normal_form(Y + one, gb) == Y + one
    gb2 = buchberger(Ideal.from_gens([X * X - Y]), TermOrder.deglex(2))
    assert normal_form(X ** 3, gb2) == X * Y


def test_buchberger_examples():
    X, Y = _xy()
    gb = buchberger(Ideal.from_gens([X]), TermOrder.deglex(2))
    assert [p for p in gb.polys] == [X]
    gb2 = buchberger(Ideal.from_gens([X * X - Y, X ** 3]), TermOrder.deglex(2), audit=True)
    assert set(gb2.polys) == {X * X - Y, X * Y, Y * Y}


def test_buchberger_membership_soundness():
    rng = random.Random(41)
    for _ in range(12):
        gens = [random_poly(3, rng.randint(1, 3), rng) for _ in range(2)]
        idl = Ideal.from_gens(gens)
        gb = buchberger(idl, TermOrder.deglex(3), audit=True)
        # random combinations must reduce to zero
        for _ in range(4):
            h = MultiPoly.zero(QQ, 3)
            for g in gens:
                h = h + random_poly(3, rng.randint(0, 2), rng) * g
            assert normal_form(h, gb).is_zero()


def test_eliminate_examples():
    X, Y, Z = _xyz()
    two = MultiPoly.constant(2, QQ, 3)
    out = eliminate(Ideal.from_gens([X - Y, Y * Y - two]), {1})
    assert len(out) == 1 and out[0] == X * X - two
    out2 = eliminate(Ideal.from_gens([X]), {1, 2})
    assert out2 == [X]
    one = MultiPoly.constant(1, QQ, 3)
    assert eliminate(Ideal.from_gens([X * Y - one]), {1}) == []


def test_eliminate_matches_resultant_on_curves():
    rng = random.Random(42)
    from idealdec.arith import upoly_gcd
    checked = 0
    while checked < 6:
        f = random_poly(3, rng.randint(1, 2), rng)
        g = random_poly(3, rng.randint(1, 2), rng)
        if f.deg_in(2) <= 0 or g.deg_in(2) <= 0:
            continue
        res = resultant(f, g, 2)
        if res.is_zero():
            continue
        members = [h for h in eliminate(Ideal.from_gens([f, g]), {2})
                   if not h.variables() & {2}]
        if len(members) != 1:
            continue
        # same projection set: squarefree parts divide each other
        if members[0].variables() <= {0, 1} and res.variables() <= {0, 1}:
            if members[0].deg_in(1) == members[0].total_degree() and \
               res.deg_in(1) == res.total_degree() and members[0].deg_in(0) == 0 == res.deg_in(0):
                a = members[0].to_unipoly(1, QQ)
                b = res.to_unipoly(1, QQ)
                ga = upoly_gcd(a, a.diff())
                gb_ = upoly_gcd(b, b.diff())
                sa = divmod(a, ga)[0].monic()
                sb = divmod(b, gb_)[0].monic()
                assert sa == sb
        checked += 1


def test_colon_examples():
    X, Y = _xy()
    c1 = colon_single(Ideal.from_gens([X * X, X * Y]), X)
    gb = buchberger(c1, TermOrder.deglex(2))
    assert set(gb.polys) == {X, Y}
    c2 = colon_single(Ideal.from_gens([X]), X)
    gb2 = buchberger(c2, TermOrder.deglex(2))
    assert len(gb2.polys) == 1 and gb2.polys[0].is_constant()
    c3 = colon_single(Ideal.from_gens([X]), Y)
    gb3 = buchberger(c3, TermOrder.deglex(2))
    assert list(gb3.polys) == [X]
    with pytest.raises(ZeroDivisor):
        colon_single(Ideal.from_gens([X]), MultiPoly.zero(QQ, 2))


def test_colon_soundness_random():
    rng = random.Random(43)
    checked = 0
    while checked < 8:
        gens = [random_poly(2, rng.randint(1, 2), rng) for _ in range(2)]
        f = random_poly(2, 1, rng)
        if f.is_zero():
            continue
        idl = Ideal.from_gens(gens)
        colon = colon_single(idl, f)
        gb = buchberger(idl, TermOrder.deglex(2))
        for g in colon.generators:
            if g.is_zero():
                continue
            assert normal_form(g * f, gb).is_zero()
        cgb = buchberger(colon, TermOrder.deglex(2))
        for g in gens:
            assert normal_form(g, cgb).is_zero()
        checked += 1


def test_dim_at_origin_section_examples():
    X, Y, Z = _xyz()
    one = MultiPoly.constant(1, QQ, 3)
    assert dim_at_origin_section(Ideal.from_gens([one]), {2}) == -1
    # a line in generic coordinates sectioned by a generic plane: 1 point
    rng = random.Random(44)
    while True:
        try:
            change = CoordChange(
                tuple(tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(3)),
                tuple(rng.randint(-5, 5) for _ in range(3)))
            break
        except Exception:
            continue
    line = [apply_coord_change(X, change), apply_coord_change(Y, change)]
    assert dim_at_origin_section(Ideal.from_gens(line), {2}) == 0


def test_budget_exceeded():
    X, Y = _xy()
    with pytest.raises(BudgetExceeded):
        buchberger(Ideal.from_gens([X ** 5 - Y ** 2, X * Y ** 4 - X - Y]),
                   TermOrder.deglex(2), max_basis=2)


def test_gb_mod_p_preserves_initial_ideal():
    """Reduction of a primitive reduced basis by a good prime is again a
    basis with the same leading monomials."""
    rng = random.Random(45)
    checked = 0
    while checked < 8:
        gens = [random_poly(3, rng.randint(1, 2), rng) for _ in range(2)]
        idl = Ideal.from_gens(gens)
        gb = buchberger(idl, TermOrder.deglex(3))
        if len(gb.polys) == 1 and gb.polys[0].is_constant():
            continue
        order = TermOrder.deglex(3)
        bad = set()
        for g in gb.polys:
            lead = g.leading(order)[1]
            bad |= {q for q in (2, 3, 5, 7) if int(lead) % q == 0}
        p = next(q for q in (10007, 10009, 10037) if q not in bad)
        ctx = PrimeContext(p)
        idl_p = reduce_ideal(idl, ctx)
        gb_p = buchberger(idl_p, order, audit=True)
        lm_q = {g.leading(order)[0] for g in gb.polys}
        lm_p = {g.leading(order)[0] for g in gb_p.polys}
        assert lm_q == lm_p
        checked += 1


def test_hilbert_dimension_helper():
    X, Y, Z = _xyz()
    assert hilbert_dimension(Ideal.from_gens([X, Y])) == 1
    assert hilbert_dimension(Ideal.from_gens([X])) == 2
    one = MultiPoly.constant(1, QQ, 3)
    assert hilbert_dimension(Ideal.from_gens([one])) == -1
