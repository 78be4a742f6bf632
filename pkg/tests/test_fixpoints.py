import itertools
from math import prod

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adamsfix.analytic import lambda_series_coefficients
from adamsfix.fixpoints import (
    CyclotomicClassFunction,
    FixedPointGroup,
    abelian_structure,
    brute_force_fixed_points,
    class_function_from_values,
    combine_invariant_factors,
    enumerate_members,
    is_fixed_point,
    is_member,
    product_split,
    pullback,
    series_defect,
    solve_fixed_points,
)
from adamsfix.groups import (
    FiniteGroupModel,
    GroupBoundError,
    cyclic_table,
    direct_product,
)

from conftest import SMALL_GROUPS


def candidate_vectors(g):
    """Every exponent vector whose entries are ord_j-th roots of unity."""
    N = g.exponent
    choices = [[(N // c.order) * k for k in range(c.order)] for c in g.classes]
    return itertools.product(*choices)


# -- examples --------------------------------------------------------------

def test_symmetric2():
    a = solve_fixed_points(FiniteGroupModel.symmetric(2))
    assert a.invariant_factors == (2,)
    assert a.generators[0].exps == (0, 1)


@pytest.mark.parametrize("m", range(2, 13))
def test_cyclic(m):
    g = cyclic_table(m)
    assert solve_fixed_points(g).invariant_factors == (m,)
    assert brute_force_fixed_points(g, guard=10**12).invariant_factors == (m,)


def test_trivial_group():
    for g in (FiniteGroupModel.symmetric(1), cyclic_table(1)):
        a = solve_fixed_points(g)
        assert a.invariant_factors == () and a.order == 1
        assert brute_force_fixed_points(g).invariant_factors == ()


@pytest.mark.parametrize("g, expected", [
    (FiniteGroupModel.alternating(3), (3,)),
    (FiniteGroupModel.symmetric(4), (2, 2)),
    (FiniteGroupModel.abelian([2, 2]), (2, 2, 2)),
], ids=["A3", "S4", "V4"])
def test_oracle_examples(g, expected):
    assert brute_force_fixed_points(g).invariant_factors == expected
    assert solve_fixed_points(g).invariant_factors == expected


def test_symmetric4_generators_supported_where_expected():
    g = FiniteGroupModel.symmetric(4)
    ids = {c.descriptor: c.id for c in g.classes}
    for f in solve_fixed_points(g).elements():
        assert f.exps[ids[(2, 2)]] == 0 and f.exps[ids[(3, 1)]] == 0


def test_is_fixed_point_examples():
    s3 = FiniteGroupModel.symmetric(3)
    assert is_fixed_point(s3, CyclotomicClassFunction.one(s3))
    N = s3.exponent
    sign = CyclotomicClassFunction(N, tuple(0 if c.rep.sign() == 1 else N // 2 for c in s3.classes))
    assert is_fixed_point(s3, sign)
    s2 = FiniteGroupModel.symmetric(2)
    assert not is_fixed_point(s2, CyclotomicClassFunction(6, (0, 2)))
    with pytest.raises(ValueError):
        is_fixed_point(s3, sign, order=1)


def test_oracle_guard():
    with pytest.raises(GroupBoundError):
        brute_force_fixed_points(FiniteGroupModel.symmetric(7), guard=1000)


# -- solver against oracle -------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_solver_matches_oracle(name):
    g = SMALL_GROUPS[name]
    solved = solve_fixed_points(g)
    # the guard bounds the unpruned space; pruning keeps these searches tiny
    members = set(enumerate_members(g, guard=10**30))
    assert solved.order == len(members)
    assert solved.invariant_factors == brute_force_fixed_points(g, guard=10**30).invariant_factors
    assert {f.exps for f in solved.elements()} == members


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_generators_pass_series(name):
    g = SMALL_GROUPS[name]
    a = solve_fixed_points(g)
    for gen, o in zip(a.generators, a.invariant_factors):
        assert gen.order() == o
        assert is_fixed_point(g, gen, order=30, tol=1e-10)


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_invariant_factor_divisibility(name):
    fs = solve_fixed_points(SMALL_GROUPS[name]).invariant_factors
    assert all(f >= 2 for f in fs)
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))


def test_solver_output_is_deterministic():
    g = FiniteGroupModel.symmetric(6)
    assert solve_fixed_points(g).to_json() == solve_fixed_points(g).to_json()


@pytest.mark.parametrize("name", ["S4", "A4", "D4", "Q8", "Z2x4", "Z6x6"])
def test_closure(name):
    g = SMALL_GROUPS[name]
    members = [f for f in solve_fixed_points(g).elements()]
    sample = members[:40]
    for f, h in itertools.product(sample, repeat=2):
        assert is_member(g, f * h)
    for f in members:
        assert is_member(g, f.inverse())


@pytest.mark.parametrize("name", ["S4", "A5", "D6", "Q8", "Z2x4"])
def test_negative_exponents_follow(name):
    # relations stated for all integers k, not just k >= 0
    g = SMALL_GROUPS[name]
    for f in solve_fixed_points(g).elements():
        for c in g.classes:
            for k in range(-2 * g.exponent, 0):
                assert f.exps[g.class_of(g.power(c.rep, k))] == (k * f.exps[c.id]) % f.modulus


# -- series check, both directions -----------------------------------------

@pytest.mark.parametrize("name", ["S3", "S4", "A4", "Z4", "Z2x2", "D4", "Q8", "Z6", "D5"])
def test_series_agrees_with_membership_exhaustively(name):
    g = SMALL_GROUPS[name]
    N = g.exponent
    for vec in candidate_vectors(g):
        f = CyclotomicClassFunction(N, vec)
        defect = series_defect(g, f.values(), 30)
        if is_member(g, f):
            assert defect <= 1e-10
        else:
            assert defect > 1e-6


@given(st.sampled_from(["S3", "S4", "A4", "D4", "Q8"]), st.data())
def test_random_values_fail_series(name, data):
    g = SMALL_GROUPS[name]
    l = len(g.classes)
    vals = data.draw(st.lists(st.complex_numbers(min_magnitude=0.2, max_magnitude=2,
                                                 allow_nan=False, allow_infinity=False),
                              min_size=l, max_size=l))
    vals[g.identity_class()] = 1.0
    members = {tuple(np.round(f.values(), 9)) for f in solve_fixed_points(g).elements()}
    if tuple(np.round(np.asarray(vals, dtype=complex), 9)) in members:
        return
    assert series_defect(g, vals, 30) > 1e-10


@given(st.sampled_from(["S3", "A4", "Z2x2", "D4"]), st.data())
def test_lambda_multiplicative(name, data):
    g = SMALL_GROUPS[name]
    l = len(g.classes)
    cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
    f = np.array(data.draw(st.lists(cplx, min_size=l, max_size=l)), dtype=complex)
    h = np.array(data.draw(st.lists(cplx, min_size=l, max_size=l)), dtype=complex)
    j = data.draw(st.integers(0, l - 1))
    lf = lambda_series_coefficients(g, f, j, 20)
    lh = lambda_series_coefficients(g, h, j, 20)
    lfh = lambda_series_coefficients(g, f + h, j, 20)
    conv = np.convolve(lf, lh)[:21]
    scale = 1 + np.max(np.abs(conv))
    assert np.max(np.abs(lfh - conv)) / scale < 1e-10


def test_lambda_of_member_is_linear():
    g = FiniteGroupModel.symmetric(4)
    for f in solve_fixed_points(g).elements():
        v = f.values()
        for j in range(len(v)):
            coeffs = lambda_series_coefficients(g, v, j, 12)
            assert abs(coeffs[0] - 1) < 1e-12 and abs(coeffs[1] + v[j]) < 1e-12
            assert np.max(np.abs(coeffs[2:])) < 1e-12


# -- functoriality ---------------------------------------------------------

def sign_map(x):
    return (0,) if x.sign() == 1 else (1,)


def test_pullback_identity_map():
    g = FiniteGroupModel.symmetric(4)
    for f in solve_fixed_points(g).elements():
        assert pullback(g, g, lambda x: x, f) == f


def test_pullback_sign():
    s4, z2 = FiniteGroupModel.symmetric(4), FiniteGroupModel.abelian([2])
    nontrivial = solve_fixed_points(z2).generators[0]
    out = pullback(s4, z2, sign_map, nontrivial)
    N = s4.exponent
    assert out.exps == tuple(0 if c.rep.sign() == 1 else N // 2 for c in s4.classes)
    assert out.exps in set(enumerate_members(s4))


def test_pullback_inclusion():
    a4, s4 = FiniteGroupModel.alternating(4), FiniteGroupModel.symmetric(4)
    oracle = set(enumerate_members(a4))
    for f in solve_fixed_points(s4).elements():
        assert pullback(a4, s4, lambda x: x, f).exps in oracle


def test_pullback_composition():
    a4, s4, z2 = (FiniteGroupModel.alternating(4), FiniteGroupModel.symmetric(4),
                  FiniteGroupModel.abelian([2]))
    for f in solve_fixed_points(z2).elements():
        direct = pullback(a4, z2, sign_map, f)
        staged = pullback(a4, s4, lambda x: x, pullback(s4, z2, sign_map, f))
        assert direct == staged


def test_pullback_rejects_non_homomorphism():
    s3, z2 = FiniteGroupModel.symmetric(3), FiniteGroupModel.abelian([2])
    bad = lambda x: (1,) if x.cycle_type() == (3,) else (0,)
    with pytest.raises(ValueError):
        pullback(s3, z2, bad, solve_fixed_points(z2).generators[0])


# -- direct products of coprime order --------------------------------------

COPRIME_FACTORS = {
    "Z2": FiniteGroupModel.abelian([2]),
    "Z3": FiniteGroupModel.abelian([3]),
    "Z4": FiniteGroupModel.abelian([4]),
    "Z5": FiniteGroupModel.abelian([5]),
    "S3": FiniteGroupModel.symmetric(3),
}
COPRIME_PAIRS = [(a, b) for a, b in itertools.combinations(COPRIME_FACTORS, 2)
                 if np.gcd(COPRIME_FACTORS[a].order, COPRIME_FACTORS[b].order) == 1]


@pytest.mark.parametrize("a, b", COPRIME_PAIRS)
def test_product_of_coprime_groups(a, b):
    g, h = COPRIME_FACTORS[a], COPRIME_FACTORS[b]
    gh = direct_product(g, h)
    expected = combine_invariant_factors(solve_fixed_points(g).invariant_factors,
                                         solve_fixed_points(h).invariant_factors)
    assert solve_fixed_points(gh).invariant_factors == expected
    for f in solve_fixed_points(gh).generators:
        f1, f2 = product_split(g, h, f, product=gh)
        assert is_member(g, f1) and is_member(h, f2)


def test_product_split_examples():
    z2, z3 = FiniteGroupModel.abelian([2]), FiniteGroupModel.abelian([3])
    gh = direct_product(z2, z3)
    assert brute_force_fixed_points(gh).invariant_factors == (6,)
    assert combine_invariant_factors((2,), (3,)) == (6,)
    one = CyclotomicClassFunction.one(gh)
    f1, f2 = product_split(z2, z3, one, product=gh)
    assert f1 == CyclotomicClassFunction.one(z2) and f2 == CyclotomicClassFunction.one(z3)
    s3, z5 = FiniteGroupModel.symmetric(3), FiniteGroupModel.abelian([5])
    s3z5 = direct_product(s3, z5)
    assert brute_force_fixed_points(s3z5, guard=10**13).order == 2 * 5
    with pytest.raises(ValueError):
        product_split(z2, FiniteGroupModel.abelian([4]), CyclotomicClassFunction(4, (0,) * 8))


# -- structure helpers and serialisation -----------------------------------

def test_abelian_structure():
    # Z/2 x Z/4 inside (Z/4)^2
    elems = {((2 * a) % 4, b) for a in range(2) for b in range(4)}
    factors, basis = abelian_structure(elems, 4)
    assert factors == (2, 4) and len(basis) == 2


def test_combine_invariant_factors():
    assert combine_invariant_factors([2, 2], [3]) == (2, 6)
    assert combine_invariant_factors([4], [2], [3, 9]) == (6, 36)
    assert combine_invariant_factors() == ()


def test_fixed_point_group_json():
    g = FiniteGroupModel.alternating(5)
    a = solve_fixed_points(g)
    b = FixedPointGroup.from_json(a.to_json())
    assert b.invariant_factors == a.invariant_factors
    assert b.generators == a.generators and b.group == g


def test_class_function_from_values():
    g = FiniteGroupModel.symmetric(3)
    f = solve_fixed_points(g).generators[0]
    assert class_function_from_values(g, f.values()) == f
    with pytest.raises(ValueError):
        class_function_from_values(g, [1, 0.5, 1])


def test_member_count_is_product_of_factors(small_group):
    a = solve_fixed_points(small_group)
    assert a.order == prod(a.invariant_factors)
