from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import budgen.series as S
from budgen.core import AsOperad, BudgenError, BudOperad, DivergenceError
from budgen.operads import MagOperad, all_treelike, hook_count, st_is_perfect

AS = AsOperad()
MAG = MagOperad()
BUD = BudOperad(AS, ("1", "2"))


def test_series_construction_and_coeff():
    f = S.Series(AS, 5, {2: Fraction(3), 3: Fraction(0)})
    assert f.coeff(2) == 3
    assert f.coeff(3) == 0
    assert f.support() == {2}
    with pytest.raises(BudgenError):
        S.Series(AS, 3, {5: Fraction(1)})
    with pytest.raises(BudgenError):
        S.Series(AS, 0, {})


def test_series_dumps_sorted():
    f = S.Series(AS, 5, {3: Fraction(2), 1: Fraction(1), 2: Fraction(5)})
    assert f.dumps() == "1 * 1\n5 * 2\n2 * 3"


def test_linear_operations():
    f = S.characteristic(AS, [1, 2], 4)
    g = S.characteristic(AS, [2, 3], 4)
    assert S.add(f, g).coeff(2) == 2
    assert S.sub(f, g).coeff(2) == 0
    assert S.scale(3, f).coeff(1) == 3
    assert S.scalar_product(f, g) == 1
    with pytest.raises(BudgenError):
        S.add(f, S.characteristic(AS, [1], 5))


def test_pre_lie_on_as():
    f = S.characteristic(AS, [2], 6)
    assert S.pre_lie(f, f).coeff(3) == 2  # two positions
    assert S.pre_lie(S.pre_lie(f, f), f).coeff(4) == 6


def test_pre_lie_is_left_but_not_right_associative():
    f = S.characteristic(AS, [2], 6)
    left = S.pre_lie(S.pre_lie(f, f), f)
    right = S.pre_lie(f, S.pre_lie(f, f))
    assert left.coeff(4) == 6 and right.coeff(4) == 4


def test_compose_prod_on_as():
    f = S.characteristic(AS, [2], 6)
    g = S.add(f, S.characteristic(AS, [3], 6))
    k = S.compose_prod(f, g)
    assert k.coeff(4) == 1 and k.coeff(5) == 2 and k.coeff(6) == 1


def test_compose_prod_units():
    u = S.units_series(BUD, 4)
    f = S.characteristic(BUD, [BUD.element("1", 2, ("2", "1"))], 4)
    assert S.compose_prod(u, f) == f
    assert S.compose_prod(f, u) == f


def _random_series(data, op, pool, bound, terms=3):
    support = data.draw(st.lists(st.sampled_from(pool), min_size=1,
                                 max_size=terms, unique=True))
    coeffs = {}
    for x in support:
        coeffs[x] = Fraction(data.draw(st.integers(-3, 3)),
                             data.draw(st.integers(1, 3)))
    return S.Series(op, bound, coeffs)


def _bud_pool(bound):
    pool = []
    for n in range(1, bound + 1):
        pool.extend(BUD.elements(n))
    return pool


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_pre_lie_relation_property(data):
    # (f <- g) <- h - f <- (g <- h) is symmetric in g and h
    pool = _bud_pool(3)
    f = _random_series(data, BUD, pool, 6)
    g = _random_series(data, BUD, pool, 6)
    h = _random_series(data, BUD, pool, 6)
    lhs = S.sub(S.pre_lie(S.pre_lie(f, g), h), S.pre_lie(f, S.pre_lie(g, h)))
    rhs = S.sub(S.pre_lie(S.pre_lie(f, h), g), S.pre_lie(f, S.pre_lie(h, g)))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_compose_prod_associative_property(data):
    pool = _bud_pool(3)
    f = _random_series(data, BUD, pool, 6)
    g = _random_series(data, BUD, pool, 6)
    h = _random_series(data, BUD, pool, 6)
    assert S.compose_prod(S.compose_prod(f, g), h) == \
        S.compose_prod(f, S.compose_prod(g, h))


def test_stars_on_mag():
    r = S.characteristic(MAG, [MAG.corolla()], 5)
    u = S.units_series(MAG, 5)
    hs = S.pre_lie_star(r)
    assert hs == S.add(u, S.pre_lie(hs, r))
    cs = S.compose_star(r)
    assert cs == S.add(u, S.compose_prod(cs, r))
    gens = [MAG.corolla()]
    table = all_treelike(MAG, gens, 5, 4)
    for x, c in hs.coeffs.items():
        assert c == sum(hook_count(t) for t in table.get(x, []))
    for x, c in cs.coeffs.items():
        assert c == sum(1 for t in table.get(x, []) if st_is_perfect(t))


def test_star_divergence_detected():
    f = S.characteristic(BUD, [BUD.element("1", 1, ("2",)),
                               BUD.element("2", 1, ("1",))], 4)
    with pytest.raises(DivergenceError):
        S.pre_lie_star(f)
    with pytest.raises(DivergenceError):
        S.compose_star(f)


def test_powers():
    r = S.characteristic(MAG, [MAG.corolla()], 5)
    p2 = S.compose_power(r, 2)
    # ((u (.) r) (.) r): the corolla composed with corollas everywhere
    assert p2.coeff(MAG.loads("c(c(*,*),c(*,*))")) == 1
    assert p2.coeff(MAG.corolla()) == 0
    q2 = S.pre_lie_power(r, 2)
    assert q2.coeff(MAG.loads("c(c(*,*),*)")) == 1
    assert q2.coeff(MAG.loads("c(*,c(*,*))")) == 1


def test_compose_inverse_on_mag():
    r = S.characteristic(MAG, [MAG.corolla()], 5)
    u = S.units_series(MAG, 5)
    inv = S.compose_inverse(S.sub(u, r))
    assert S.compose_prod(S.sub(u, r), inv) == u
    gens = [MAG.corolla()]
    table = all_treelike(MAG, gens, 5, 4)
    for x, c in inv.coeffs.items():
        assert c == len(table.get(x, []))


def test_compose_inverse_with_scaled_units():
    # f = 2u + 3c: the inverse must normalize by the unit coefficients
    r = S.scale(3, S.characteristic(MAG, [MAG.corolla()], 4))
    u = S.units_series(MAG, 4)
    f = S.add(S.scale(2, u), r)
    inv = S.compose_inverse(f)
    assert S.compose_prod(f, inv) == u
    assert S.compose_prod(inv, f) == u


def test_compose_inverse_needs_unit_coefficients():
    r = S.characteristic(MAG, [MAG.corolla()], 4)
    with pytest.raises(BudgenError):
        S.compose_inverse(r)


def test_col_and_pru_series():
    mag_bud = BudOperad(MAG, ("1", "2"))
    c = MAG.corolla()
    f = S.characteristic(mag_bud, [mag_bud.element("1", c, ("1", "2")),
                                   mag_bud.element("1", c, ("2", "1"))], 4)
    colf, carrier = S.col_series(f)
    assert colf.coeff(("1", 2, ("1", "2"))) == 1
    pruf = S.pru_series(f)
    assert pruf.coeff(c) == 2
    with pytest.raises(BudgenError):
        S.pru_series(S.characteristic(AS, [2], 4))


def test_colt_table():
    mag_bud = BudOperad(MAG, ("1", "2"))
    c = MAG.corolla()
    f = S.characteristic(mag_bud, [mag_bud.element("1", c, ("1", "2")),
                                   mag_bud.element("1", c, ("2", "1"))], 4)
    assert S.colt_table(f) == {("1", (1, 1)): 2}


def test_zero_one_coefficients():
    f = S.characteristic(AS, [1, 2], 4)
    assert S.zero_one_coefficients(f)
    assert not S.zero_one_coefficients(S.scale(2, f))


def test_word_series_concatenation_is_pre_lie():
    alphabet = ("a", "b")
    op = S.word_operad(alphabet)
    f = S.mu_encode({("a",): Fraction(2)}, alphabet, 8, op)
    g = S.mu_encode({("b", "a"): Fraction(1)}, alphabet, 8, op)
    expect = S.mu_encode({("a", "b", "a"): Fraction(2)}, alphabet, 8, op)
    assert S.pre_lie(f, g) == expect
    with pytest.raises(BudgenError):
        S.word_operad(("a", S.WORD_MARK))
