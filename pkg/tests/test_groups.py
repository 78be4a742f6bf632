import itertools
from collections import Counter
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adamsfix.groups import (
    FiniteGroupModel,
    GroupBoundError,
    Permutation,
    adams_pullback,
    an_power_action,
    an_split_test,
    canonical_conjugator,
    canonical_representative,
    class_power_table,
    conjugacy_classes,
    conjugator_sign,
    cyclic_table,
    dihedral_table,
    direct_product,
    element_order,
    quaternion_table,
    to_table,
)
from adamsfix.partitions import (
    SplitAction,
    is_split_type,
    parity_is_even,
    partitions_of,
    split_square_sign,
)


def exhaustive_classes(g):
    """Conjugacy classes of any model by brute force over its elements."""
    elems = g.element_list()
    seen, out = set(), []
    for x in elems:
        if x in seen:
            continue
        cls = {g.multiply(g.multiply(y, x), g.inverse(y)) for y in elems}
        seen |= cls
        out.append(cls)
    return out


def split_partitions(max_n):
    return [p for n in range(1, max_n + 1) for p in partitions_of(n)
            if parity_is_even(p) and is_split_type(p)]


# -- class examples --------------------------------------------------------

def test_symmetric4_classes():
    g = FiniteGroupModel.symmetric(4)
    assert sorted(c.descriptor for c in g.classes) == sorted(
        [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)])
    sizes = {c.descriptor: c.size for c in g.classes}
    assert sizes == {(1, 1, 1, 1): 1, (2, 1, 1): 6, (2, 2): 3, (3, 1): 8, (4,): 6}


def test_alternating4_classes():
    g = FiniteGroupModel.alternating(4)
    assert len(g.classes) == 4
    desc = Counter(c.partition for c in g.classes)
    assert desc == {(1, 1, 1, 1): 1, (2, 2): 1, (3, 1): 2}
    split = [c for c in g.classes if c.partition == (3, 1)]
    assert {c.tag for c in split} == {"plus", "minus"}
    assert split[0].size == split[1].size == 4


def test_cyclic6_classes():
    g = cyclic_table(6)
    assert len(g.classes) == 6
    assert all(c.size == 1 for c in g.classes)


def test_identity_class_first():
    for g in (FiniteGroupModel.symmetric(4), dihedral_table(5), quaternion_table()):
        assert g.classes[g.identity_class()].order == 1


def test_sizes_sum_and_orders_divide(small_group):
    g = small_group
    assert sum(c.size for c in g.classes) == g.order
    assert all(g.order % c.order == 0 for c in g.classes)


@pytest.mark.parametrize("n", range(1, 6))
def test_symmetric_classes_match_exhaustive(n):
    g = FiniteGroupModel.symmetric(n)
    ex = exhaustive_classes(g)
    assert len(ex) == len(g.classes)
    for cls in ex:
        types = {x.cycle_type() for x in cls}
        assert len(types) == 1
        c = g.classes[g.class_of(next(iter(cls)))]
        assert c.size == len(cls)


@pytest.mark.parametrize("n", range(2, 7))
def test_alternating_classes_match_exhaustive(n):
    g = FiniteGroupModel.alternating(n)
    ex = exhaustive_classes(g)
    assert len(ex) == len(g.classes)
    labels = []
    for cls in ex:
        ids = {g.class_of(x) for x in cls}
        assert len(ids) == 1
        (cid,) = ids
        assert g.classes[cid].size == len(cls)
        labels.append(cid)
    assert sorted(labels) == list(range(len(g.classes)))


def test_table_classes_match_group_theory():
    assert sorted(c.size for c in quaternion_table().classes) == [1, 1, 2, 2, 2]
    assert sorted(c.size for c in dihedral_table(4).classes) == [1, 1, 2, 2, 2]
    assert len(dihedral_table(5).classes) == 4


def test_class_bound():
    g = to_table(FiniteGroupModel.symmetric(4))
    with pytest.raises(GroupBoundError):
        conjugacy_classes(g, bound=10)


# -- power tables ----------------------------------------------------------

def test_power_table_examples():
    g = FiniteGroupModel.symmetric(4)
    ids = {c.descriptor: c.id for c in g.classes}
    assert g.power_table.power(ids[(4,)], 2) == ids[(2, 2)]
    a5 = FiniteGroupModel.alternating(5)
    plus = next(c for c in a5.classes if c.descriptor == ((5,), "plus"))
    minus = next(c for c in a5.classes if c.descriptor == ((5,), "minus"))
    assert a5.power_table.power(plus.id, 2) == minus.id


def test_power_table_basic_columns(small_group):
    t = small_group.power_table
    ident = small_group.identity_class()
    for j in range(t.l):
        assert t.power(j, 0) == ident
        assert t.power(j, 1) == j
        o = t.orders[j]
        for r in range(t.period):
            assert t.d[j][r] == t.d[j][r % o]


def test_power_table_composition(small_group):
    g = small_group
    if g.order > 200:
        pytest.skip("exhaustive check limited to |G| <= 200")
    t = g.power_table
    L = t.period
    for j in range(t.l):
        for r in range(L):
            for s in range(L):
                assert t.d[t.d[j][r]][s] == t.d[j][(r * s) % L]


def test_power_table_matches_elements(small_group):
    g = small_group
    t = g.power_table
    for c in g.classes:
        for r in range(t.period):
            assert g.class_of(g.power(c.rep, r)) == t.d[c.id][r]


@pytest.mark.parametrize("n", range(6, 9))
def test_alternating_power_table_matches_elements(n):
    g = FiniteGroupModel.alternating(n)
    t = g.power_table
    for c in g.classes:
        for r in range(c.order):
            assert g.class_of(c.rep ** r) == t.d[c.id][r]


@pytest.mark.parametrize("n", range(1, 11))
def test_coprime_powers_fix_symmetric_classes(n):
    g = FiniteGroupModel.symmetric(n)
    t = g.power_table
    for j, o in enumerate(t.orders):
        for r in range(1, t.period):
            if gcd(r, o) == 1:
                assert t.d[j][r] == j


def test_coprime_powers_fix_table_classes():
    for g in (dihedral_table(6), quaternion_table(), to_table(FiniteGroupModel.symmetric(4))):
        t = g.power_table
        for j, o in enumerate(t.orders):
            for r in range(1, t.period):
                if gcd(r, o) == 1:
                    assert t.d[j][r] == j


def test_power_table_is_read_only():
    t = FiniteGroupModel.symmetric(3).power_table
    with pytest.raises(ValueError):
        t.d[0][0] = 1


def test_power_table_limit():
    with pytest.raises(GroupBoundError):
        class_power_table(FiniteGroupModel.symmetric(40))


# -- conjugators and split classes -----------------------------------------

def test_conjugator_sign_examples():
    x = Permutation.from_cycles(3, [(0, 1, 2)])
    y = Permutation.from_cycles(3, [(0, 2, 1)])
    tau = canonical_conjugator(x, y)
    assert tau * x * tau.inverse() == y
    assert conjugator_sign(x, y) == -1
    assert conjugator_sign(x, x) == 1
    assert canonical_conjugator(x, x) == Permutation.identity(3)
    t12 = Permutation.from_cycles(3, [(0, 1)])
    assert conjugator_sign(t12, x) is None
    with pytest.raises(ValueError):
        conjugator_sign(x, Permutation.identity(4))


perm_strategy = st.integers(1, 9).flatmap(lambda n: st.permutations(range(n)).map(tuple))


@given(perm_strategy, st.data())
def test_canonical_conjugator_conjugates(images, data):
    x = Permutation(images)
    tau0 = Permutation(tuple(data.draw(st.permutations(range(x.n)))))
    y = tau0 * x * tau0.inverse()
    tau = canonical_conjugator(x, y)
    assert tau * x * tau.inverse() == y


def test_split_test_examples():
    assert an_split_test((3, 1))
    assert not an_split_test((2, 2))
    assert not an_split_test((3, 3, 1))


def test_power_action_examples():
    assert an_power_action((3,), 2) is SplitAction.EXCHANGE
    assert an_power_action((7,), 2) is SplitAction.IDENTITY
    with pytest.raises(ValueError):
        an_power_action((2, 2), 3)
    with pytest.raises(ValueError):
        an_power_action((3, 1), 3)


@pytest.mark.parametrize("p", split_partitions(11), ids=str)
def test_fourth_power_is_identity(p):
    o = int(np.lcm.reduce(p))
    assert an_power_action(p, 4 % o if o > 1 else 1) is SplitAction.IDENTITY


@pytest.mark.parametrize("p", split_partitions(11), ids=str)
def test_square_action_matches_parity_rule(p):
    o = int(np.lcm.reduce(p))
    assert an_power_action(p, 2 % o if o > 1 else 1) == (
        split_square_sign(p) if o > 1 else SplitAction.IDENTITY)


@pytest.mark.parametrize("p", split_partitions(11), ids=str)
def test_power_action_is_homomorphism(p):
    o = int(np.lcm.reduce(p))
    units = [r for r in range(1, o + 1) if gcd(r, o) == 1]
    for a, b in itertools.product(units, repeat=2):
        ab = (a * b) % o or o
        assert an_power_action(p, ab) == an_power_action(p, a).compose(an_power_action(p, b))


@pytest.mark.parametrize("m", range(1, 7))
def test_single_cycle_rule(m):
    expected = SplitAction.IDENTITY if m % 4 in (0, 3) else SplitAction.EXCHANGE
    assert an_power_action((2 * m + 1,), 2) is expected


@pytest.mark.parametrize("p", [p for p in split_partitions(9) if sum(p) <= 7], ids=str)
def test_power_action_matches_exhaustive_conjugation(p):
    # is x**2 conjugate to x by some even permutation?  search A_n directly
    n = sum(p)
    x = canonical_representative(p)
    o = x.order()
    if o == 1:
        return
    y = x ** 2
    even = [Permutation(q) for q in itertools.permutations(range(n)) if Permutation(q).sign() == 1]
    found = any(t * x * t.inverse() == y for t in even)
    assert (an_power_action(p, 2) is SplitAction.IDENTITY) == found


# -- element orders and Adams pullback -------------------------------------

def test_element_order_examples():
    s4 = FiniteGroupModel.symmetric(4)
    assert element_order(s4, Permutation.identity(4)) == 1
    assert element_order(s4, Permutation.from_cycles(4, [(0, 1, 2, 3)])) == 4
    z23 = FiniteGroupModel.abelian([2, 3])
    assert element_order(z23, (1, 1)) == 6
    q8 = quaternion_table()
    assert sorted(element_order(q8, x) for x in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_adams_pullback_examples():
    g = FiniteGroupModel.symmetric(4)
    f = list(range(10, 10 + len(g.classes)))
    assert adams_pullback(g, f, 1) == f
    e = f[g.identity_class()]
    assert adams_pullback(g, f, 0) == [e] * len(f)
    with pytest.raises(ValueError):
        adams_pullback(g, f[:-1], 2)


@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                min_size=5, max_size=5), st.integers(0, 30), st.integers(0, 30))
def test_adams_composition(f, k, m):
    g = FiniteGroupModel.symmetric(4)
    assert adams_pullback(g, adams_pullback(g, f, m), k) == adams_pullback(g, f, k * m)


# -- models ----------------------------------------------------------------

def test_table_validation():
    with pytest.raises(ValueError):
        FiniteGroupModel.table([0, 1], [[0, 1], [1, 1]], 0)  # not a Latin square
    with pytest.raises(ValueError):
        FiniteGroupModel.table([0, 1], [[1, 0], [0, 1]], 0)  # wrong identity
    # a Latin square with identity that is not associative
    mul = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ValueError):
        FiniteGroupModel.table(list(range(5)), mul, 0)


def test_exhaustive_associativity_table_accepts_groups():
    g = direct_product(FiniteGroupModel.symmetric(3), cyclic_table(2))
    FiniteGroupModel.table(g.elements, g.mul, g.identity)
    assert g.order == 12


@pytest.mark.parametrize("g", [
    FiniteGroupModel.symmetric(5), FiniteGroupModel.alternating(6),
    FiniteGroupModel.abelian([2, 3]), dihedral_table(4), quaternion_table()], ids=str)
def test_json_round_trip(g):
    h = FiniteGroupModel.from_json(g.to_json())
    assert h == g and hash(h) == hash(g)
    assert [c.descriptor for c in h.classes] == [c.descriptor for c in g.classes]


def test_bad_models():
    with pytest.raises(ValueError):
        FiniteGroupModel.symmetric(0)
    with pytest.raises(ValueError):
        FiniteGroupModel.abelian([1])
    with pytest.raises(ValueError):
        FiniteGroupModel.alternating(4).class_of(Permutation.from_cycles(4, [(0, 1)]))


def test_direct_product_element_layout():
    g, h = FiniteGroupModel.abelian([2]), FiniteGroupModel.abelian([3])
    gh = direct_product(g, h)
    assert gh.order == 6 and len(gh.classes) == 6
    assert element_order(gh, 1 * 3 + 1) == 6
