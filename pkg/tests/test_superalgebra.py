import random

import pytest

from supercohom.fields import GF, QQ
from supercohom.superalgebra import (
    AlgebraElement,
    FreeSuperalgebra,
    GeneratorSpec,
    check_graded_commutativity,
    monomial_basis,
    nilradical_decomposition,
    truncated_algebra,
)

F3 = GF(3)
F5 = GF(5)


def gens_xy():
    # one even degree-1 generator (square-zero) and one odd degree-1 (poly)
    return [GeneratorSpec("x*", 0, 1), GeneratorSpec("y*", 1, 1)]


def test_square_zero_derivation():
    x, y = gens_xy()
    assert x.square_zero and not y.square_zero
    s = GeneratorSpec("s", 0, 2)
    assert not s.square_zero
    u = GeneratorSpec("u", 1, 2)
    assert u.square_zero


def test_monomial_basis_examples():
    gens = gens_xy()
    basis2 = monomial_basis(gens, 2)
    assert len(basis2) == 2  # (y*)^2 and <x*> y*
    # two odd degree-1 generators: dimension n+1 in degree n
    gens2 = [GeneratorSpec("a", 1, 1), GeneratorSpec("b", 1, 1)]
    for n in range(7):
        assert len(monomial_basis(gens2, n)) == n + 1
    assert len(monomial_basis(gens, 0)) == 1


def test_monomial_basis_rejects_degree_zero():
    with pytest.raises(ValueError):
        monomial_basis([GeneratorSpec("c", 0, 0)], 1)


def test_square_zero_annihilates():
    alg = FreeSuperalgebra(gens_xy())
    x = AlgebraElement.generator(alg, F3, "x*")
    assert (x * x).is_zero()


def test_divided_power_binomial():
    alg = FreeSuperalgebra([GeneratorSpec("g", 0, 2, kind="divided")])
    g1 = AlgebraElement.monomial(alg, F3, alg.generator_monomial(0))
    g2 = g1 * g1  # 2*gamma_2
    g3 = g1 * g2  # 2*3*gamma_3 = 0 mod 3
    assert g3.is_zero()
    over5 = AlgebraElement.monomial(alg, F5, alg.generator_monomial(0))
    assert not (over5 * (over5 * over5)).is_zero()


def test_sign_rule_odd_even():
    # odd deg-1 u times even deg-1 v: uv = -vu
    alg = FreeSuperalgebra([GeneratorSpec("v", 0, 1), GeneratorSpec("u", 1, 1)])
    u = AlgebraElement.generator(alg, F5, "u")
    v = AlgebraElement.generator(alg, F5, "v")
    assert (u * v) == (v * u).scaled(F5.of(-1))


def random_gens(rng, n=3):
    gens = []
    for i in range(n):
        gens.append(
            GeneratorSpec(
                f"g{i}",
                rng.randrange(2),
                rng.randrange(1, 4),
                kind=rng.choice(["poly", "divided"]),
            )
        )
    return gens


def test_associativity_random():
    rng = random.Random(7)
    for _ in range(40):
        gens = random_gens(rng)
        alg = FreeSuperalgebra(gens)
        monos = []
        for d in range(1, 4):
            monos.extend(alg.monomials_of_degree(d))
        a, b, c = (
            AlgebraElement.monomial(alg, F5, rng.choice(monos)) for _ in range(3)
        )
        assert ((a * b) * c) == (a * (b * c))


def test_sign_law_on_monomials():
    rng = random.Random(11)
    for _ in range(40):
        gens = random_gens(rng)
        alg = FreeSuperalgebra(gens)
        monos = []
        for d in range(1, 4):
            monos.extend(alg.monomials_of_degree(d))
        m1, m2 = rng.choice(monos), rng.choice(monos)
        a = AlgebraElement.monomial(alg, F5, m1)
        b = AlgebraElement.monomial(alg, F5, m2)
        s = (alg.parity(m1) * alg.parity(m2) + alg.z_degree(m1) * alg.z_degree(m2)) % 2
        rhs = (b * a).scaled(F5.of(-1 if s else 1))
        assert a * b == rhs


def test_graded_commutativity_check():
    A = truncated_algebra(F3, gens_xy(), 4)
    assert check_graded_commutativity(A)
    # flip one sign
    key = next(
        (i, j)
        for (i, j), prod in A.table.items()
        if i != j and i != A.unit_index and j != A.unit_index and prod
    )
    k, c = next(iter(A.table[key].items()))
    A.table[key][k] = F3.neg(c)
    assert not check_graded_commutativity(A)


def test_truncated_ring_ky_mod_y2():
    # H^*(g,k) of the smallest example: k[y*]/((y*)^2) with y* in degree 1...
    # as an abstract algebra: one odd degree-1 generator truncated at degree 1.
    A = truncated_algebra(F3, [GeneratorSpec("y*", 1, 1)], 1)
    assert A.dim == 2
    assert check_graded_commutativity(A)


def test_nilradical_exterior_line():
    # Lambda on one even degree-1 generator t: Nil(A) = span(t)
    A = truncated_algebra(F3, [GeneratorSpec("t", 0, 1)], 3)
    res = nilradical_decomposition(A)
    assert len(res.nilradical) == 1
    assert res.nil_R == []  # t lives in A_0^odd, not in R


def test_nilradical_truncated_polynomial():
    # k[s]/(s^4), s even degree 2: Nil = (s), dimension 3
    A = truncated_algebra(F3, [GeneratorSpec("s", 0, 2)], 7)
    assert A.dim == 4
    res = nilradical_decomposition(A)
    assert len(res.nil_R) == 3
    assert len(res.nilradical) == 3
    assert res.truncated_at == 7


def test_nilradical_char0():
    A = truncated_algebra(QQ, [GeneratorSpec("s", 0, 2), GeneratorSpec("t", 1, 1)], 5)
    res = nilradical_decomposition(A)
    # everything of positive degree is nilpotent in a truncated algebra
    assert len(res.nilradical) == A.dim - 1


def brute_force_nilradical_dim(A):
    """Oracle: nilpotency status of each basis element of the candidate
    decomposition, computed by raw powering with no sector formula."""
    f = A.field
    count = 0
    for i in range(A.dim):
        v = [f.zero()] * A.dim
        v[i] = f.one()
        if A.is_nilpotent_vector(v):
            count += 1
    return count


def test_nilradical_matches_bruteforce_random():
    rng = random.Random(23)
    for trial in range(20):
        gens = random_gens(rng, n=rng.randrange(1, 4))
        field = rng.choice([F3, F5, QQ])
        A = truncated_algebra(field, gens, rng.randrange(2, 5))
        res = nilradical_decomposition(A)
        # the candidate spans exactly the nilpotent basis monomials here:
        # every monomial basis element of positive degree is nilpotent
        # (truncation), and degree 0 is spanned by 1.
        assert len(res.nilradical) == brute_force_nilradical_dim(A)
