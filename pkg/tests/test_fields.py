from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercohom.fields import (
    GF,
    QQ,
    FieldError,
    FieldScalar,
    Matrix,
    kernel_basis,
    rank,
    solve,
)

F3 = GF(3)
F5 = GF(5)


def test_scalar_ops_examples():
    # inv(2) over F_5 = 3
    assert FieldScalar(F5.of(2), F5).inv().value == 3
    # add(p-1, 1) = 0 over F_p
    for p in (3, 5, 7):
        f = GF(p)
        assert (FieldScalar(f.of(p - 1), f) + FieldScalar(f.of(1), f)).value == 0
    # inv(2/3) over Q = 3/2
    assert FieldScalar(QQ.of("2/3"), QQ).inv().value == Fraction(3, 2)


def test_scalar_errors():
    with pytest.raises(ZeroDivisionError):
        FieldScalar(F3.of(0), F3).inv()
    with pytest.raises(FieldError):
        FieldScalar(F3.of(1), F3) + FieldScalar(F5.of(1), F5)
    with pytest.raises(FieldError):
        GF(2)
    with pytest.raises(FieldError):
        GF(9)


def test_rank_examples():
    assert rank(Matrix.identity(F3, 2)) == 2
    assert rank(Matrix.zero(F5, 3, 4)) == 0
    assert rank(Matrix.from_entries(F5, [[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(F3, 3)) == []
    kb = kernel_basis(Matrix.zero(F3, 2, 2))
    assert kb == [[1, 0], [0, 1]]
    kb = kernel_basis(Matrix.from_entries(F3, [[1, 1]]))
    assert kb == [[2, 1]]  # canonical: free var = 1, pivot = -1 = 2


def test_solve_examples():
    assert solve(Matrix.identity(F3, 2), [F3.of(1), F3.of(0)]) == [1, 0]
    assert solve(Matrix.zero(F3, 2, 2), [F3.of(1), F3.of(0)]) is None
    m = Matrix.from_entries(F5, [[1, 2], [2, 4]])
    x = solve(m, [F5.of(1), F5.of(2)])
    assert x is not None
    assert m.apply(x) == [1, 2]


def test_solve_rationals():
    m = Matrix.from_entries(QQ, [[2, 1], [1, 1]])
    x = solve(m, [QQ.of(1), QQ.of(0)])
    assert x == [Fraction(1), Fraction(-1)]


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([3, 5, 7]))
    f = GF(p)
    nr = draw(st.integers(1, 6))
    nc = draw(st.integers(1, 6))
    rows = draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=nc, max_size=nc),
            min_size=nr,
            max_size=nr,
        )
    )
    return Matrix.from_entries(f, rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.ncols


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate(m):
    z = [m.field.zero()] * m.nrows
    for v in kernel_basis(m):
        assert m.apply(v) == z


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_solve_exact_when_solvable(m, rng):
    x0 = [m.field.of(rng.randrange(m.field.p)) for _ in range(m.ncols)]
    rhs = m.apply(x0)
    x = solve(m, rhs)
    assert x is not None
    assert m.apply(x) == rhs


def test_determinism():
    m = Matrix.from_entries(F5, [[1, 2, 3], [4, 0, 1], [2, 4, 4]])
    assert m.rref() == m.copy().rref()
    assert kernel_basis(m) == kernel_basis(m.copy())
