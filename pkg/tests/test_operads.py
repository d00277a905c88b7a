import math

import pytest
from hypothesis import given, settings, strategies as st

from budgen.core import MONO, BudgenError, BudOperad, NotGeneratedError
from budgen.operads import (
    ASchrOperad,
    CollectionSpec,
    DiasOperad,
    FreeOperad,
    MagOperad,
    MotzOperad,
    all_treelike,
    capped_tree_operad,
    degree_bound,
    dumps_term,
    finitely_factorizing_check,
    hook_count,
    left_expression_count,
    loads_term,
    s_degree,
    st_degree,
    st_is_perfect,
    st_leaf,
    st_node,
    treelike_expressions,
)


def test_term_syntax_round_trip():
    for text in ["*", "!1", "c(*,*)", "c(c(*,*),*)", "a(*,b(*,*,!2),*)"]:
        assert dumps_term(loads_term(text)) == text
    with pytest.raises(BudgenError):
        loads_term("c(*,*")
    with pytest.raises(BudgenError):
        loads_term("c(*,*))")


# -- magmatic ---------------------------------------------------------------


def test_mag_graft():
    op = MagOperad()
    c = op.corolla()
    left = op.compose(c, 1, c)
    assert op.dumps(left) == "c(c(*,*),*)"
    assert op.arity(left) == 3
    assert op.dumps(op.compose(left, 2, c)) == "c(c(*,c(*,*)),*)"


def test_mag_counts_are_catalan():
    op = MagOperad()
    catalan = [1, 1, 2, 5, 14, 42]
    for n in range(1, 7):
        assert len(list(op.elements(n))) == catalan[n - 1]


# -- pluriassociative -------------------------------------------------------


def test_dias_compose_examples():
    op = DiasOperad(2)
    assert op.compose("010", 1, "02") == "0210"
    assert op.compose("102", 2, "01") == "1012"


def test_dias_max_rule():
    op = DiasOperad(3)
    # the pivot letter dominates every letter of the inserted word
    assert op.compose("20", 1, "01") == "220"


def test_dias_validation_and_counts():
    op = DiasOperad(2)
    with pytest.raises(BudgenError):
        op.loads("11")
    with pytest.raises(BudgenError):
        op.loads("030")
    for n in range(1, 6):
        words = list(op.elements(n))
        assert len(words) == n * 2 ** (n - 1)
        assert len(set(words)) == len(words)


# -- Motzkin ----------------------------------------------------------------


def test_motz_compose_example():
    op = MotzOperad()
    assert op.compose("UD", 2, "H") == "UHD"
    assert op.compose("UD", 1, "H") == "HUD"
    assert op.compose("UD", 3, "H") == "UDH"


def test_motz_validation_and_counts():
    op = MotzOperad()
    with pytest.raises(BudgenError):
        op.loads("UDD")
    with pytest.raises(BudgenError):
        op.loads("UU")
    motzkin = [1, 1, 2, 4, 9, 21]
    for n in range(1, 7):
        assert len(list(op.elements(n))) == motzkin[n - 1]


# -- alternating Schroeder trees --------------------------------------------


def test_aschr_graft_merges_equal_labels():
    op = ASchrOperad()
    a2 = op.corolla("a")
    b2 = op.corolla("b")
    assert op.dumps(op.compose(a2, 1, b2)) == "a(b(*,*),*)"
    # grafting a on a merges into a single wider corolla
    assert op.dumps(op.compose(a2, 1, a2)) == "a(*,*,*)"
    assert op.arity(op.compose(a2, 1, a2)) == 3


def test_aschr_validation_and_counts():
    op = ASchrOperad()
    with pytest.raises(BudgenError):
        op.loads("a(a(*,*),*)")
    with pytest.raises(BudgenError):
        op.loads("a(*)")
    # two interleaved label choices double the Schroeder numbers above arity 1
    schroeder = [1, 1, 3, 11, 45]
    for n in range(2, 6):
        assert len(list(op.elements(n))) == 2 * schroeder[n - 1]


# -- free colored operads ----------------------------------------------------


def _two_color_spec():
    return CollectionSpec([("a", "1", ("2", "1")), ("b", "2", ("1", "2", "1"))])


def test_free_operad_basics():
    op = FreeOperad(_two_color_spec())
    a = op.corolla("a")
    b = op.corolla("b")
    assert op.out(a) == "1"
    assert op.ins(a) == ("2", "1")
    x = op.compose(a, 1, b)
    assert op.dumps(x) == "a(b(*,*,*),*)"
    assert op.ins(x) == ("1", "2", "1", "1")
    assert op.compose(a, 1, op.unit("2")) == a
    assert op.compose(op.unit("1"), 1, a) == a


def test_free_operad_validation():
    op = FreeOperad(_two_color_spec())
    with pytest.raises(BudgenError):
        op.loads("a(*)")
    with pytest.raises(BudgenError):
        op.loads("z(*,*)")
    with pytest.raises(BudgenError):
        op.loads("a(a(*,*),*)")  # child output color 1 at a color-2 input
    assert op.loads("a(b(*,*,*),*)") == op.compose(op.corolla("a"), 1,
                                                   op.corolla("b"))


def test_collection_spec_validation():
    with pytest.raises(BudgenError):
        CollectionSpec([("a(", "1", ("1",))])
    with pytest.raises(BudgenError):
        CollectionSpec([("a", "1", ())])
    with pytest.raises(BudgenError):
        CollectionSpec([("a", "1", ("1",)), ("a", "1", ("1",))])


def test_capped_tree_operad():
    op = capped_tree_operad(3)
    assert sorted(op.spec.gens) == ["n1", "n2", "n3"]
    x = op.compose(op.corolla("n2"), 2, op.corolla("n3"))
    assert op.arity(x) == 4


# -- operad axioms as properties ----------------------------------------------


def _mag_trees(max_n=5):
    op = MagOperad()
    pool = []
    for n in range(1, max_n + 1):
        pool.extend(op.elements(n))
    return pool


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mag_sequential_axiom(data):
    op = MagOperad()
    pool = _mag_trees()
    x = data.draw(st.sampled_from(pool))
    y = data.draw(st.sampled_from(pool))
    z = data.draw(st.sampled_from(pool))
    i = data.draw(st.integers(1, op.arity(x)))
    j = data.draw(st.integers(1, op.arity(y)))
    lhs = op.compose(op.compose(x, i, y), i + j - 1, z)
    rhs = op.compose(x, i, op.compose(y, j, z))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mag_parallel_axiom(data):
    op = MagOperad()
    pool = [t for t in _mag_trees() if op.arity(t) >= 2]
    x = data.draw(st.sampled_from(pool))
    y = data.draw(st.sampled_from(_mag_trees()))
    z = data.draw(st.sampled_from(_mag_trees()))
    i = data.draw(st.integers(1, op.arity(x) - 1))
    j = data.draw(st.integers(i + 1, op.arity(x)))
    m = op.arity(y)
    lhs = op.compose(op.compose(x, i, y), j + m - 1, z)
    rhs = op.compose(op.compose(x, j, z), i, y)
    assert lhs == rhs


# -- syntax trees and expressions ----------------------------------------------


def test_hook_count():
    op = MagOperad()
    c = op.corolla()
    leaf = st_leaf(MONO)
    t1 = st_node(c, [leaf, leaf])
    assert hook_count(t1) == 1
    t2 = st_node(c, [st_node(c, [leaf, leaf]), leaf])
    assert hook_count(t2) == 1
    t3 = st_node(c, [st_node(c, [leaf, leaf]), st_node(c, [leaf, leaf])])
    # 3 nodes, two independent subtrees: 3!/ (3*1*1) = 2
    assert hook_count(t3) == 2
    assert st_degree(t3) == 3
    assert st_is_perfect(t3)
    assert not st_is_perfect(t2)


def test_treelike_expressions_on_mag():
    op = MagOperad()
    gens = [op.corolla()]
    comb = op.loads("c(c(*,*),*)")
    trees = treelike_expressions(op, gens, comb)
    assert len(trees) == 1
    balanced = op.loads("c(c(*,*),c(*,*))")
    assert left_expression_count(op, gens, balanced) == 2
    assert s_degree(op, gens, balanced) == 3


def test_not_generated():
    op = MagOperad()
    right_comb = op.loads("c(*,c(*,*))")
    left_only = all_treelike(op, [op.loads("c(c(*,*),*)")], 5, 4)
    assert right_comb not in left_only
    with pytest.raises(NotGeneratedError):
        s_degree(op, [], op.corolla())


def test_finitely_factorizing_check():
    op = BudOperad(MagOperad(), ("1", "2"))
    leaf = MagOperad().unit(MONO)
    ok, chain = finitely_factorizing_check(op, [])
    assert (ok, chain) == (True, 0)
    ok, chain = finitely_factorizing_check(
        op, [op.element("2", leaf, ("1",))])
    assert (ok, chain) == (True, 1)
    ok, chain = finitely_factorizing_check(
        op, [op.element("2", leaf, ("1",)), op.element("1", leaf, ("2",))])
    assert ok is False


def test_degree_bound():
    assert degree_bound(4, 0) == 3
    assert degree_bound(4, 1) == 10


def test_hook_count_equals_linear_extension_factorial_identity():
    # left comb of n nodes has hook count (n-1)! / ... = product check
    op = MagOperad()
    c = op.corolla()
    leaf = st_leaf(MONO)
    t = st_node(c, [leaf, leaf])
    for _ in range(4):
        t = st_node(c, [t, leaf])
    degs = st_degree(t)
    assert hook_count(t) == math.factorial(degs) // math.prod(
        range(1, degs + 1))  # chain: exactly one linear extension
