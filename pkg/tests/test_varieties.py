import itertools
import random

import pytest

from supercohom.fields import GF, QQ, Matrix
from supercohom.liesuper import (
    build_example,
    build_gl,
    check_supermodule,
    natural_module,
    regular_module,
    trivial_module,
)
from supercohom.varieties import (
    BoundExceeded,
    CrTuple,
    char0_odd_space,
    char0_support,
    char0_tensor_support_check,
    complexity_sequence,
    cone_membership,
    cr_membership,
    enumerate_cone,
    enumerate_cr,
    free_over_exterior,
    free_over_odd_point,
    group_closure,
    invariant_dimensions,
    molien_dimensions,
    odd_vector_from_coords,
    parity_directsum_checks,
    random_smash_module,
    random_supermodule,
    smash_compatible,
    smash_group_regular,
    smash_lambda_regular,
    smash_trivial,
    support_points,
    tensor_support_check,
    two_divisibility_check,
)

F3 = GF(3)


def test_cone_membership_examples():
    g = build_example("odd_abelian", 3, d=2)
    for coords in itertools.product(range(3), repeat=2):
        x = odd_vector_from_coords(g, [g.field.of(c) for c in coords])
        assert cone_membership(g, x)
    g2 = build_example("ex_3_1_2", 3)
    x = odd_vector_from_coords(g2, [g2.field.one()])
    assert not cone_membership(g2, x)
    assert cone_membership(g2, g2.zero_vector())
    # gl(1|1): a e12 + b e21 self-commutes iff ab = 0
    gg = build_gl(1, 1, 3)
    f = gg.field
    for a in range(3):
        for b in range(3):
            x = odd_vector_from_coords(gg, [f.of(a), f.of(b)])
            assert cone_membership(gg, x) == (a * b % 3 == 0)


def test_enumerate_cone_counts():
    assert len(enumerate_cone(build_example("odd_abelian", 3, d=2))) == 9
    assert len(enumerate_cone(build_gl(1, 1, 3))) == 5
    with pytest.raises(BoundExceeded):
        enumerate_cone(build_gl(2, 2, 5), bound=10)


def test_cone_conical():
    # membership of x implies membership of every scalar multiple
    g = build_gl(1, 1, 3)
    f = g.field
    for coords in enumerate_cone(g):
        for lam in range(1, 3):
            scaled = tuple(f.mul(f.of(lam), c) for c in coords)
            assert scaled in set(enumerate_cone(g))


def test_free_over_odd_point_examples():
    g = build_example("odd_abelian", 3, d=1)
    M = regular_module(g)
    x = odd_vector_from_coords(g, [g.field.one()])
    assert free_over_odd_point(M, g, x)
    k = trivial_module(g)
    assert not free_over_odd_point(k, g, x)
    gg = build_gl(1, 1, 3)
    nat = natural_module(gg, 1, 1)
    e12 = odd_vector_from_coords(gg, [gg.field.one(), gg.field.zero()])
    assert free_over_odd_point(nat, gg, e12)
    with pytest.raises(ValueError):
        free_over_odd_point(nat, gg, gg.zero_vector())


def test_support_points_examples():
    gg = build_gl(1, 1, 3)
    rep = support_points(gg, natural_module(gg, 1, 1))
    assert rep.member_points == [(0, 0)] and rep.is_zero_only
    rep2 = support_points(gg, trivial_module(gg))
    assert len(rep2.member_points) == 5  # the whole cone
    assert rep2.dimension_estimate == (1, True)
    g2 = build_example("odd_abelian", 3, d=2)
    rep3 = support_points(g2, regular_module(g2))
    assert rep3.is_zero_only
    assert support_points(g2, trivial_module(g2)).dimension_estimate == (2, True)


def test_free_over_exterior_examples():
    g = build_example("odd_abelian", 3, d=2)
    basis = [g.basis_vector(i) for i in g.odd_indices]
    assert free_over_exterior(regular_module(g), g, basis)
    assert not free_over_exterior(trivial_module(g), g, basis)
    # Lambda(V) + k has dimension 5 != 2 * top
    from supercohom.liesuper import direct_sum

    g1 = build_example("odd_abelian", 3, d=1)
    mix = direct_sum(regular_module(g1), trivial_module(g1))
    assert not free_over_exterior(mix, g1, [g1.basis_vector(0)])


def test_free_over_exterior_agrees_with_point_test():
    g = build_example("odd_abelian", 3, d=1)
    rng = random.Random(0)
    x = g.basis_vector(0)
    for _ in range(10):
        M = random_supermodule(g, rng)
        assert free_over_exterior(M, g, [x]) == free_over_odd_point(M, g, x)


def test_cr_membership_gl11():
    g = build_gl(1, 1, 3)
    f = g.field
    e = {n: i for i, n in enumerate(g.names)}
    alpha = g.zero_vector()
    alpha[e["e11"]] = f.one()
    alpha[e["e22"]] = f.one()
    beta = g.zero_vector()
    beta[e["e12"]] = f.one()
    beta[e["e21"]] = f.one()
    assert cr_membership(g, CrTuple([alpha], beta), 1)
    alpha2 = g.zero_vector()
    alpha2[e["e11"]] = f.one()
    assert not cr_membership(g, CrTuple([alpha2], beta), 1)
    assert cr_membership(g, CrTuple([g.zero_vector()], g.zero_vector()), 1)


def test_enumerate_cr_counts():
    g = build_gl(1, 1, 3)
    pts = enumerate_cr(g, 1, bound=10 ** 5)
    assert len(pts) == 9
    # purely odd: C_1 = cone
    g2 = build_example("odd_abelian", 3, d=2)
    assert len(enumerate_cr(g2, 1, bound=10 ** 4)) == 9


def test_enumerate_cr_purely_even_reduces_to_classical():
    # gl(2|0): C_1 = pairs (alpha, 0) with alpha^[p] = (1/2)[0,0] = 0,
    # i.e. p-nilpotent matrices; r = 2 adds a second commuting nilpotent
    g = build_gl(2, 0, 3)
    pts = enumerate_cr(g, 1, bound=10 ** 5)
    f = g.field
    count = 0
    for flat in itertools.product(range(3), repeat=4):
        m = Matrix.from_entries(f, [[flat[0], flat[1]], [flat[2], flat[3]]])
        if m.power(3).is_zero():
            count += 1
    assert len(pts) == count


def test_cr_count_invariant_under_basis_permutation():
    g = build_gl(1, 1, 3)
    # permute the declared order of the even basis
    perm_names = [g.names[i] for i in (1, 0, 2, 3)]
    remap = {0: 1, 1: 0, 2: 2, 3: 3}
    brackets = {}
    for (i, j), prod in g.brackets.items():
        brackets[(remap[i], remap[j])] = {remap[k]: c for k, c in prod.items()}
    pmap = {remap[i]: {remap[k]: c for k, c in img.items()} for i, img in g.pmap.items()}
    from supercohom.liesuper import LieSuperalgebra

    g2 = LieSuperalgebra(g.field, perm_names, [g.parities[i] for i in (1, 0, 2, 3)], brackets, pmap=pmap)
    assert len(enumerate_cr(g2, 1, bound=10 ** 5)) == 9


def test_parity_directsum_and_tensor_checks():
    rng = random.Random(7)
    for g in [build_example("odd_abelian", 3, d=2), build_gl(1, 1, 3)]:
        for _ in range(5):
            M = random_supermodule(g, rng)
            N = random_supermodule(g, rng)
            assert check_supermodule(g, M) == []
            r1 = parity_directsum_checks(g, M, N)
            assert r1.ok
            r2 = tensor_support_check(g, M, N)
            assert r2.ok and r2.details["equality"]


def test_complexity_examples():
    g = build_example("odd_abelian", 3, d=2)
    rep = complexity_sequence(g, trivial_module(g), steps=15)
    assert rep.cover_dims[:11] == [4 * (n + 1) for n in range(11)]
    assert 0.9 <= rep.growth_exponent <= 1.1
    assert rep.complexity == 2 == rep.support_dim
    g1 = build_example("odd_abelian", 3, d=1)
    rep1 = complexity_sequence(g1, trivial_module(g1), steps=8)
    assert rep1.cover_dims == [2] * 8
    assert rep1.complexity == 1
    repP = complexity_sequence(g, regular_module(g), steps=4)
    assert repP.cover_dims == [4, 0, 0, 0]
    assert repP.complexity == 0 and repP.support_dim == 0


def test_complexity_rejects_nonlocal():
    g = build_example("ex_5_3_1", 3)  # x^[p] = x: V(g) has a torus part
    with pytest.raises(ValueError):
        complexity_sequence(g, trivial_module(g), steps=3)


# -- characteristic zero ----------------------------------------------------


def _swap_setup():
    V = char0_odd_space(2)
    swap = Matrix.from_entries(QQ, [[0, 1], [1, 0]])
    G = group_closure([swap])
    vectors = [
        tuple(QQ.of(a) for a in t) for t in itertools.product([-1, 0, 1, 2], repeat=2)
    ]
    return V, G, vectors


def test_group_closure():
    V, G, _ = _swap_setup()
    assert len(G) == 2
    eye = Matrix.identity(QQ, 2)
    assert len(group_closure([eye])) == 1
    rot = Matrix.from_entries(QQ, [[0, -1], [1, 0]])
    assert len(group_closure([rot])) == 4


def test_char0_support_examples():
    V, G, vectors = _swap_setup()
    triv = [Matrix.identity(QQ, 2)]
    lam = smash_lambda_regular(V, triv)
    rep = char0_support(triv, lam, vectors)
    assert rep.member_orbits == [tuple([QQ.of(0)] * 2)]
    k = smash_trivial(V, triv)
    repk = char0_support(triv, k, vectors)
    assert len(repk.member_orbits) == len(repk.orbits) == len(set(vectors))
    # Z/2 swap: orbits merge (1,0) with (0,1); regular smash module is free
    reg = smash_group_regular(V, G)
    assert smash_compatible(G, G, reg)
    rep2 = char0_support(G, reg, vectors)
    assert rep2.member_orbits == [tuple([QQ.of(0)] * 2)]
    assert len(rep2.orbits) < len(set(vectors))


def test_two_divisibility():
    V, G, vectors = _swap_setup()
    lam = smash_lambda_regular(V, G)
    rep = char0_support(G, lam, vectors)
    div = two_divisibility_check(lam, rep.member_orbits)
    assert div.ok and div.codimension == 2
    k = smash_trivial(V, G)
    repk = char0_support(G, k, vectors)
    divk = two_divisibility_check(k, repk.member_orbits)
    assert divk.ok and divk.codimension == 0
    # Lambda(V) + flip(Lambda(V)): dim 8, codim 2, sdim 0
    from supercohom.varieties import smash_direct_sum, smash_parity_flip

    both = smash_direct_sum(lam, smash_parity_flip(lam))
    repb = char0_support(G, both, vectors)
    divb = two_divisibility_check(both, repb.member_orbits)
    assert divb.ok and divb.codimension == 2 and both.module.sdim == 0


def test_char0_tensor_equality():
    V, G, vectors = _swap_setup()
    rng = random.Random(5)
    for _ in range(4):
        A = random_smash_module(V, G, rng)
        B = random_smash_module(V, G, rng)
        rep = char0_tensor_support_check(G, A, B, vectors)
        assert rep.ok


def test_random_smash_modules_compatible():
    V, G, _ = _swap_setup()
    rng = random.Random(13)
    for _ in range(6):
        M = random_smash_module(V, G, rng)
        assert check_supermodule(V, M.module) == []
        assert smash_compatible(G, G, M)


def test_invariant_dimensions_vs_molien():
    V, G, _ = _swap_setup()
    dual = [m.transpose() for m in G]
    inv = invariant_dimensions(dual, range(5))
    assert inv == [1, 1, 2, 2, 3]
    assert molien_dimensions(dual, range(5)) == inv
    # trivial group: everything is invariant
    triv = [Matrix.identity(QQ, 2)]
    assert invariant_dimensions(triv, range(4)) == [1, 2, 3, 4]
    assert molien_dimensions(triv, range(4)) == [1, 2, 3, 4]
    # rotation of order 4
    rot = group_closure([Matrix.from_entries(QQ, [[0, -1], [1, 0]])])
    dual_rot = [m.transpose() for m in rot]
    assert invariant_dimensions(dual_rot, range(5)) == molien_dimensions(
        dual_rot, range(5)
    )
