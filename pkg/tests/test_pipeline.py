import random

import pytest

from idealdec.arith import GF, QQ, UniPoly
from idealdec.errors import (InvalidPrimeOverride, NoMatch,
                             PartitionIncomplete, RetryExhausted,
                             UnsupportedDimension)
from idealdec.factor import FactorList, factor_univariate_q
from idealdec.groebner import Ideal, dim_at_origin_section
from idealdec.mpoly import MultiPoly
from idealdec.pipeline import (PipelineConfig, ProjectionPlan, decompose,
                               match_factors, partition_factors,
                               pick_jacobian_minor)
from idealdec.pipeline import (_RoundState, _as_int_unipoly, _draw_change,
                               _match_factors_impl, _prime_data,
                               _prime_streams, _rational_projection)
from tests.conftest import random_poly


def _vars3(ring=QQ):
    return (MultiPoly.variable(0, ring, 3), MultiPoly.variable(1, ring, 3),
            MultiPoly.variable(2, ring, 3))


def four_lines_ideal():
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    return Ideal.from_gens([X * X - two * Z * Z, Y * Y - two * Z * Z], c=1)


def double_line_ideal():
    X, Y, Z = _vars3()
    return Ideal.from_gens([(X - Z) ** 2, Y - Z], c=1)


def degree4_ideal():
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    return Ideal.from_gens([X * X - two * Z * Z, Y * Y - X * Z], c=1)


def test_projection_plan():
    plan = ProjectionPlan.for_curve(4)
    assert plan.sets == (frozenset({2, 3}), frozenset({1, 3}), frozenset({1, 2}))
    assert plan.kept(0) == (0, 1)
    assert plan.kept(2) == (0, 3)


def test_unsupported_inputs():
    X, Y, Z = _vars3()
    with pytest.raises(UnsupportedDimension):
        decompose(Ideal.from_gens([X], c=2))
    with pytest.raises(UnsupportedDimension):
        decompose(Ideal((X,), GF(7), 3, 1))


def test_partition_factors_example():
    R = GF(7)
    d = UniPoly([-2, 0, 1], QQ)          # Y^2 - 2
    h1 = MultiPoly({(0, 1): 1, (0, 0): 4}, R, 2)     # specializes to Y - 3
    h2 = MultiPoly({(0, 1): 1, (0, 0): 3}, R, 2)     # specializes to Y + 3
    h3 = MultiPoly({(0, 1): 1, (0, 0): 2}, R, 2)     # specializes to Y + 2
    fl = FactorList(1, ((h1, 1), (h2, 1), (h3, 1)))
    got = partition_factors(d, 7, fl)
    assert got == [h1, h2]
    # a linear d with its own image present: singleton
    dlin = UniPoly([-3, 1], QQ)
    fl2 = FactorList(1, ((MultiPoly({(0, 1): 1, (0, 0): 4}, R, 2), 1),))
    assert len(partition_factors(dlin, 7, fl2)) == 1
    # degree-dropping specialization
    bad = MultiPoly({(1, 1): 1}, R, 2)               # X*Y -> 0 at X=0
    with pytest.raises(PartitionIncomplete):
        partition_factors(d, 7, FactorList(1, ((bad, 1),)))


def _prepared_state(idl, seed=42):
    cfg = PipelineConfig(seed=seed)
    rng = random.Random(seed)
    state = _RoundState(idl, _draw_change(rng, idl.n, cfg.coeff_bound), cfg)
    d = _rational_projection(state)
    fl = factor_univariate_q(d)
    factors = [(_as_int_unipoly(h), e) for h, e in fl.factors]
    return state, d, factors


def test_match_factors_exhaustive_pairing_oracle():
    """On the four-lines fixture each partitioned factor of D_1 matches
    exactly one factor of D_2 (section dim 0); crossed pairings give -1."""
    state, d, factors = _prepared_state(four_lines_ideal())
    streams = _prime_streams(factors, d.degree, state.cfg)
    p = streams[0][0]
    pd = _prime_data(state, p)
    d_j, m_j = factors[0]
    part = partition_factors(d_j, p, pd.factorizations[0])
    all_d2 = [h for h, e in pd.factorizations[1].factors if e == m_j]
    kept1 = state.plan.kept(1)
    for chosen in part:
        first = chosen.embed(list(state.plan.kept(0)), 3)
        hits = 0
        for cand in all_d2:
            emb = cand.embed(list(kept1), 3)
            gens = list(pd.ideal_p.generators) + [first, emb]
            h = dim_at_origin_section(
                Ideal(tuple(gens), pd.ideal_p.ring, 3, 1), {0})
            if h == 0:
                hits += 1
            else:
                assert h == -1
        assert hits == 1
    # the public operation finds a match and returns the augmented ideal
    first = part[0].embed(list(state.plan.kept(0)), 3)
    cands = [[h.embed(list(kept1), 3) for h in all_d2]]
    matched = match_factors(pd.ideal_p, first, cands, m_j)
    assert len(matched.generators) == len(pd.ideal_p.generators) + 2


def test_match_factors_no_match():
    state, d, factors = _prepared_state(four_lines_ideal())
    streams = _prime_streams(factors, d.degree, state.cfg)
    p = streams[0][0]
    pd = _prime_data(state, p)
    ring = pd.ideal_p.ring
    first = MultiPoly({(1, 0, 0): 1, (0, 0, 0): 1}, ring, 3)
    bogus = MultiPoly({(0, 0, 1): 1, (0, 0, 0): 2}, ring, 3)
    with pytest.raises(NoMatch):
        match_factors(pd.ideal_p, first, [[bogus]], 1)


def test_pick_jacobian_minor_examples():
    R = GF(101)
    X, Y, Z = _vars3(R)
    one = MultiPoly.constant(1, R, 3)
    line = Ideal.from_gens([X, Y], c=1)
    assert pick_jacobian_minor(line, line) == one
    # zero minors are skipped deterministically
    axis = Ideal.from_gens([Y, Z], c=1)
    assert pick_jacobian_minor(axis, axis) == one
    two = MultiPoly.constant(2, R, 3)
    cyl = Ideal.from_gens([X * X - two * Z * Z, Y * Y - two * Z * Z], c=1)
    three = MultiPoly.constant(3, R, 3)
    lineq = Ideal.from_gens([X - Z.scale(45), Y - Z.scale(45)], c=1)
    minor = pick_jacobian_minor(cyl, lineq)
    assert minor == X * Y.scale(4)


def test_four_lines_report():
    rep = decompose(four_lines_ideal(), PipelineConfig(seed=42))
    assert rep.s == 2 and rep.total_degree == 4
    for c in rep.components:
        assert (c.rational_degree, c.multiplicity, c.absolute_count,
                c.absolute_degree) == (2, 1, 2, 1)
        assert c.initial_ideal is not None and len(c.initial_ideal.gens) == 2
        assert all(sum(e) == 1 for e in c.initial_ideal.gens)
        assert c.hilbert.values[:4] == (1, 2, 3, 4)
        assert c.isolating_polys_mod_p is None


def test_double_line_report():
    rep = decompose(double_line_ideal(), PipelineConfig(seed=42))
    assert rep.s == 1 and rep.total_degree == 2
    c = rep.components[0]
    assert (c.rational_degree, c.multiplicity, c.absolute_count,
            c.absolute_degree) == (1, 2, 1, 1)
    assert c.initial_ideal is None and c.hilbert is None
    assert len(c.isolating_polys_mod_p) == 2


def test_degree4_report():
    rep = decompose(degree4_ideal(), PipelineConfig(seed=42))
    assert rep.s == 1 and rep.total_degree == 4
    c = rep.components[0]
    assert (c.rational_degree, c.multiplicity, c.absolute_count,
            c.absolute_degree) == (4, 1, 4, 1)


def test_rational_projection_degree4_squarefree_part():
    """Pre-change elimination output is an associate of Y^4 - 2Z^4 (checked
    through the resultant backend on the unchanged ideal)."""
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    from idealdec.mpoly import resultant
    r = resultant(X * X - two * Z * Z, Y * Y - X * Z, 0)
    assert r == Y ** 4 - two * Z ** 4


def test_determinism_same_seed():
    a = decompose(four_lines_ideal(), PipelineConfig(seed=7))
    b = decompose(four_lines_ideal(), PipelineConfig(seed=7))
    assert a == b


def test_prime_independence_on_fixture():
    # scan seeds until a run exposes an unused admissible prime to override
    base = alt = None
    for seed in range(42, 70):
        rep = decompose(four_lines_ideal(), PipelineConfig(seed=seed))
        used = {c.prime for c in rep.components}
        cands = sorted({p for st in rep.candidate_primes for p in st} - used)
        for cand in cands:
            try:
                alt = decompose(four_lines_ideal(),
                                PipelineConfig(seed=seed, prime_override=cand))
            except Exception:
                continue
            base = rep
            break
        if base is not None:
            break
    assert base is not None, "no seed exposed an alternate admissible prime"
    assert alt.s == base.s
    for a, b in zip(base.components, alt.components):
        assert (a.rational_degree, a.multiplicity, a.absolute_count,
                a.absolute_degree) == (b.rational_degree, b.multiplicity,
                                       b.absolute_count, b.absolute_degree)
        assert a.initial_ideal == b.initial_ideal
        assert a.hilbert.values == b.hilbert.values


def test_invalid_prime_override():
    with pytest.raises(InvalidPrimeOverride):
        decompose(four_lines_ideal(), PipelineConfig(seed=42, prime_override=6))
    with pytest.raises(InvalidPrimeOverride):
        decompose(four_lines_ideal(), PipelineConfig(seed=42, prime_override=3))


def test_mixed_field_components():
    """Two rational components living over different quadratic fields
    (Q(sqrt2) and Q(sqrt3)); each must report r = 2 from its own forced
    prime, never r = 1 from a prime that is inert for it."""
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    three = MultiPoly.constant(3, QQ, 3)
    F = (X * X - two * Z * Z) * (X * X - three * Z * Z)
    G = Y - Z
    rep = decompose(Ideal.from_gens([F, G], c=1), PipelineConfig(seed=5))
    assert rep.s == 2 and rep.total_degree == 4
    for c in rep.components:
        assert (c.rational_degree, c.multiplicity, c.absolute_count,
                c.absolute_degree) == (2, 1, 2, 1)


def test_biquadratic_single_class():
    """Four lines in a single conjugacy class over the degree-4 field
    Q(sqrt2, sqrt3): one rational component with r = 4."""
    X, Y, Z = _vars3()
    two = MultiPoly.constant(2, QQ, 3)
    three = MultiPoly.constant(3, QQ, 3)
    rep = decompose(Ideal.from_gens([X * X - two * Z * Z,
                                     Y * Y - three * Z * Z], c=1),
                    PipelineConfig(seed=5))
    assert rep.s == 1
    c = rep.components[0]
    assert (c.rational_degree, c.multiplicity, c.absolute_count,
            c.absolute_degree) == (4, 1, 4, 1)


def test_plane_curve_n2():
    X = MultiPoly.variable(0, QQ, 2)
    Y = MultiPoly.variable(1, QQ, 2)
    two = MultiPoly.constant(2, QQ, 2)
    rep = decompose(Ideal.from_gens([X * X - two * Y * Y], c=1),
                    PipelineConfig(seed=1))
    c = rep.components[0]
    assert (rep.s, c.rational_degree, c.multiplicity, c.absolute_count,
            c.absolute_degree) == (1, 2, 1, 2, 1)


def test_conjugate_lines_n4_groebner_backend():
    V = [MultiPoly.variable(i, QQ, 4) for i in range(4)]
    two = MultiPoly.constant(2, QQ, 4)
    gens = [V[0] * V[0] - two * V[3] * V[3], V[1] - V[3], V[2] - V[3]]
    rep = decompose(Ideal.from_gens(gens, c=1), PipelineConfig(seed=3))
    c = rep.components[0]
    assert (rep.s, c.rational_degree, c.multiplicity, c.absolute_count,
            c.absolute_degree) == (1, 2, 1, 2, 1)


def test_backends_agree_on_fixture():
    a = decompose(four_lines_ideal(), PipelineConfig(seed=42, backend="groebner"))
    b = decompose(four_lines_ideal(), PipelineConfig(seed=42, backend="resultant"))
    assert a == b


def test_degrevlex_order_same_counts():
    rep = decompose(four_lines_ideal(), PipelineConfig(seed=42, order="degrevlex"))
    assert rep.s == 2
    for c in rep.components:
        assert (c.rational_degree, c.multiplicity, c.absolute_count,
                c.absolute_degree) == (2, 1, 2, 1)
        assert c.hilbert.values[:4] == (1, 2, 3, 4)


def test_colon_cleanup_contains_matched_ideal():
    """a_j subset of (a_j : M): every generator of the matched ideal
    normal-forms to zero against the colon basis, and the colon keeps
    dimension 1."""
    from idealdec.groebner import normal_form
    from idealdec.hilbert import monomial_dimension, initial_ideal
    from idealdec.mpoly import TermOrder
    from idealdec.pipeline import _minor_and_colon
    state, d, factors = _prepared_state(four_lines_ideal())
    streams = _prime_streams(factors, d.degree, state.cfg)
    p = streams[0][0]
    pd = _prime_data(state, p)
    d_j, m_j = factors[0]
    part = partition_factors(d_j, p, pd.factorizations[0])
    chosen = sorted(part, key=lambda h: (h.total_degree(),
                                         sorted(h.terms.items())))[0]
    first = chosen.embed(list(state.plan.kept(0)), 3)
    kept1 = state.plan.kept(1)
    cands = [[h.embed(list(kept1), 3)
              for h, e in pd.factorizations[1].factors if e == m_j
              and h.total_degree() == chosen.total_degree()]]
    matched, _ = _match_factors_impl(pd.ideal_p, first, cands, m_j)
    minor, colon, gb = _minor_and_colon(pd.ideal_p, matched,
                                        order=TermOrder.deglex(3))
    for g in matched.generators:
        assert normal_form(g, gb).is_zero()
    assert monomial_dimension(initial_ideal(gb)) == 1


def test_degree_conservation_small_random():
    rng = random.Random(71)
    done = 0
    while done < 4:
        F = random_poly(3, rng.randint(2, 3), rng)
        G = random_poly(3, rng.randint(2, 3), rng)
        idl = Ideal.from_gens([F, G], c=1)
        try:
            rep = decompose(idl, PipelineConfig(seed=done))
        except RetryExhausted:
            continue
        total = sum(c.multiplicity * c.rational_degree for c in rep.components)
        assert total == rep.total_degree
        assert total == F.total_degree() * G.total_degree()
        for c in rep.components:
            assert c.rational_degree == c.absolute_count * c.absolute_degree
            if c.multiplicity == 1:
                assert c.hilbert.dimension == 1
                assert c.hilbert.degree == c.absolute_degree
        done += 1
