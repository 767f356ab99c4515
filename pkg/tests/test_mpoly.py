import random
from fractions import Fraction

import pytest

from idealdec.arith import QQ
from idealdec.errors import (DegreeZeroInVariable, SingularMatrix,
                             SizeTooLarge, ZeroPolynomial)
from idealdec.mpoly import (CoordChange, MultiPoly, TermOrder,
                            apply_coord_change, evaluate_partial,
                            jacobian_minors, leading_monomial, resultant)
from tests.conftest import random_poly


def _vars3(ring=QQ):
    return (MultiPoly.variable(0, ring, 3), MultiPoly.variable(1, ring, 3),
            MultiPoly.variable(2, ring, 3))


def test_leading_monomial_examples():
    X, Y, Z = _vars3()
    assert leading_monomial(X * X - Y, TermOrder.deglex(3)) == (2, 0, 0)
    assert leading_monomial(X + Y + Z, TermOrder.degrevlex(3)) == (1, 0, 0)
    assert leading_monomial(X * Y - Z ** 3, TermOrder.deglex(3)) == (0, 0, 3)
    with pytest.raises(ZeroPolynomial):
        leading_monomial(MultiPoly.zero(QQ, 3), TermOrder.deglex(3))


def test_leading_monomial_multiplicative():
    rng = random.Random(21)
    for order in (TermOrder.deglex(3), TermOrder.degrevlex(3),
                  TermOrder.block({1}, 3)):
        for _ in range(30):
            f = random_poly(3, rng.randint(1, 3), rng)
            g = random_poly(3, rng.randint(1, 3), rng)
            if f.is_zero() or g.is_zero():
                continue
            lf = leading_monomial(f, order)
            lg = leading_monomial(g, order)
            assert leading_monomial(f * g, order) == tuple(a + b for a, b in zip(lf, lg))


def test_ring_laws_random():
    rng = random.Random(22)
    for _ in range(25):
        f = random_poly(3, rng.randint(0, 3), rng)
        g = random_poly(3, rng.randint(0, 3), rng)
        h = random_poly(3, rng.randint(0, 3), rng)
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        if not f.is_zero() and not g.is_zero():
            assert (f * g).total_degree() == f.total_degree() + g.total_degree()


def test_coord_change_examples():
    X, Y, Z = _vars3()
    ident = CoordChange(((1, 0, 0), (0, 1, 0), (0, 0, 1)), (0, 0, 0))
    f = X * X - Y * Z
    assert apply_coord_change(f, ident) == f
    swap = CoordChange(((0, 1, 0), (1, 0, 0), (0, 0, 1)), (0, 0, 0))
    assert apply_coord_change(X, swap) == Y
    shear = CoordChange(((1, 1, 0), (0, 1, 0), (0, 0, 1)), (0, 0, 0))
    two = MultiPoly.constant(2, QQ, 3)
    assert apply_coord_change(X * X - two, shear) == X * X + two * X * Y + Y * Y - two
    with pytest.raises(SingularMatrix):
        CoordChange(((1, 1, 0), (1, 1, 0), (0, 0, 1)), (0, 0, 0))


def test_coord_change_roundtrip():
    rng = random.Random(23)
    for _ in range(15):
        while True:
            mat = tuple(tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3))
            tr = tuple(rng.randint(-4, 4) for _ in range(3))
            try:
                change = CoordChange(mat, tr)
                break
            except SingularMatrix:
                continue
        f = random_poly(3, rng.randint(1, 3), rng)
        g = apply_coord_change(apply_coord_change(f, change), change.inverse())
        assert g == f
        assert apply_coord_change(f, change).total_degree() == f.total_degree()


def test_evaluate_partial_examples():
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    assert evaluate_partial(X * X + Y * Z, {1: 0}) == X * X
    assert evaluate_partial(X * X - two, {0: 0}) == -two
    three = MultiPoly.constant(3, QQ, 3)
    f = three * Y * Y - two * Z * X
    assert evaluate_partial(f, {2: 1}) == three * Y * Y - two * X


def test_resultant_examples():
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    assert resultant(X - Y, Y * Y - two, 1) == X * X - two
    assert resultant(Y, Y, 1).is_zero()
    r = resultant(X * X - two * Z * Z, Y * Y - X * Z, 0)
    assert r == Y ** 4 - two * Z ** 4
    with pytest.raises(DegreeZeroInVariable):
        resultant(X, Y, 2)


def test_resultant_specialization_and_degree():
    rng = random.Random(24)
    for _ in range(20):
        f = random_poly(3, rng.randint(1, 3), rng)
        g = random_poly(3, rng.randint(1, 3), rng)
        if f.deg_in(2) <= 0 or g.deg_in(2) <= 0:
            continue
        res = resultant(f, g, 2)
        assert res.is_zero() or res.total_degree() <= f.total_degree() * g.total_degree()
        x0, y0 = rng.randint(-4, 4), rng.randint(-4, 4)
        lf = f.coeffs_in(2)[f.deg_in(2)].evaluate_partial({0: x0, 1: y0})
        lg = g.coeffs_in(2)[g.deg_in(2)].evaluate_partial({0: x0, 1: y0})
        if lf.is_zero() or lg.is_zero():
            continue
        fu = f.evaluate_partial({0: x0, 1: y0}).to_unipoly(2, QQ)
        gu = g.evaluate_partial({0: x0, 1: y0}).to_unipoly(2, QQ)
        from idealdec.arith import upoly_resultant
        spec = res.evaluate_partial({0: x0, 1: y0}).constant_value()
        assert upoly_resultant(fu, gu) == spec


def test_jacobian_minors_examples():
    X, Y, Z = _vars3()
    one = MultiPoly.constant(1, QQ, 3)
    ms = jacobian_minors([X, Y], 2)
    assert ms == [one, MultiPoly.zero(QQ, 3), MultiPoly.zero(QQ, 3)]
    in1 = MultiPoly.variable(0, QQ, 1)
    assert jacobian_minors([in1 * in1], 1) == [in1.scale(2)]
    two = MultiPoly.constant(2, QQ, 3)
    ms2 = jacobian_minors([(X - Z) ** 2, Y - Z], 2)
    assert two * (X - Z) in ms2
    with pytest.raises(SizeTooLarge):
        jacobian_minors([X], 2)


def test_exact_div():
    rng = random.Random(25)
    for _ in range(25):
        f = random_poly(3, rng.randint(1, 2), rng)
        g = random_poly(3, rng.randint(1, 2), rng)
        if f.is_zero() or g.is_zero():
            continue
        prod = f * g
        q = prod.exact_div(g)
        assert q == f
        off = prod + MultiPoly.constant(1, QQ, 3)
        if off.exact_div(g) is not None:
            assert off.exact_div(g) * g == off


def test_text_rendering():
    X, Y, Z = _vars3()
    f = X * X * MultiPoly.constant(3, QQ, 3) - Y.scale(Fraction(1, 2))
    assert f.to_text(["X", "Y", "Z"]) == "3*X^2 - 1/2*Y"
    assert MultiPoly.zero(QQ, 3).to_text() == "0"
