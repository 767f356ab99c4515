import random
from fractions import Fraction
from math import comb

import pytest

from idealdec.arith import QQ
from idealdec.errors import NonDivisible, OrderNotDegreeCompatible
from idealdec.groebner import Ideal, buchberger
from idealdec.hilbert import (MonomialIdeal, affine_hilbert_function,
                              initial_ideal, monomial_dimension,
                              multiplicity_of)
from idealdec.mpoly import MultiPoly, TermOrder
from tests.conftest import random_poly
from tests.macaulay import macaulay_affine_hf


def test_initial_ideal_examples():
    X = MultiPoly.variable(0, QQ, 2)
    Y = MultiPoly.variable(1, QQ, 2)
    gb = buchberger(Ideal.from_gens([X * X - Y, X ** 3]), TermOrder.deglex(2))
    init = initial_ideal(gb)
    assert set(init.gens) == {(2, 0), (1, 1), (0, 2)}
    gb2 = buchberger(Ideal.from_gens([X]), TermOrder.deglex(2))
    assert set(initial_ideal(gb2).gens) == {(1, 0)}
    with pytest.raises(OrderNotDegreeCompatible):
        initial_ideal(buchberger(Ideal.from_gens([X]), TermOrder.block({0}, 2)))


def test_affine_hf_line_like():
    m = MonomialIdeal.from_exponents([(1, 0, 0), (0, 2, 0)], 3)
    hd = affine_hilbert_function(m)
    assert hd.values[:4] == (1, 3, 5, 7)
    assert hd.polynomial == (Fraction(1), Fraction(2))
    assert hd.dimension == 1
    assert hd.degree == 2


def test_affine_hf_trivial_cases():
    z = MonomialIdeal.from_exponents([], 3)
    hz = affine_hilbert_function(z)
    assert hz.values[:4] == tuple(comb(3 + i, 3) for i in range(4))
    assert hz.dimension == 3 and hz.degree == 1
    u = MonomialIdeal.from_exponents([(0, 0, 0)], 3)
    hu = affine_hilbert_function(u)
    assert set(hu.values) == {0} and hu.dimension == -1


def test_values_nondecreasing_and_delta_identity():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 3)
        gens = [tuple(rng.randint(0, 3) for _ in range(n))
                for _ in range(rng.randint(1, 5))]
        m = MonomialIdeal.from_exponents(gens, n)
        if m.contains_one:
            continue
        hd = affine_hilbert_function(m)
        vals = hd.values
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        # increments count standard monomials of exact degree i
        from idealdec.hilbert import count_standard_leq
        for i in range(1, min(6, len(vals))):
            assert vals[i] - vals[i - 1] == (count_standard_leq(m, i)
                                             - count_standard_leq(m, i - 1))


def test_dimension_edges():
    assert monomial_dimension(MonomialIdeal.from_exponents([], 4)) == 4
    assert monomial_dimension(MonomialIdeal.from_exponents([(0, 0)], 2)) == -1


def test_stabilization_cap():
    from idealdec.errors import StabilizationFailed
    huge = MonomialIdeal.from_exponents([(70,)], 1)
    with pytest.raises(StabilizationFailed):
        affine_hilbert_function(huge)


def test_multiplicity_of():
    assert multiplicity_of(2, 2) == 1
    assert multiplicity_of(4, 2) == 2
    with pytest.raises(NonDivisible):
        multiplicity_of(3, 2)
    with pytest.raises(NonDivisible):
        multiplicity_of(0, 1)


def test_hf_invariant_across_degree_compatible_orders():
    rng = random.Random(32)
    for _ in range(10):
        gens = [random_poly(3, rng.randint(1, 3), rng) for _ in range(2)]
        idl = Ideal.from_gens(gens)
        h1 = affine_hilbert_function(
            initial_ideal(buchberger(idl, TermOrder.deglex(3))))
        h2 = affine_hilbert_function(
            initial_ideal(buchberger(idl, TermOrder.degrevlex(3))))
        top = min(len(h1.values), len(h2.values))
        assert h1.values[:top] == h2.values[:top]
        assert (h1.dimension, h1.degree) == (h2.dimension, h2.degree)


def test_staircase_agrees_with_macaulay_oracle_small():
    rng = random.Random(33)
    checked = 0
    while checked < 8:
        n = rng.randint(2, 3)
        gens = [random_poly(n, rng.randint(1, 3), rng)
                for _ in range(rng.randint(1, 2))]
        idl = Ideal.from_gens(gens)
        gb = buchberger(idl, TermOrder.deglex(n))
        if len(gb.polys) == 1 and gb.polys[0].is_constant():
            continue
        hd = affine_hilbert_function(initial_ideal(gb), upto=8)
        oracle = macaulay_affine_hf(list(idl.generators), 8)
        assert list(hd.values[:9]) == oracle
        checked += 1
