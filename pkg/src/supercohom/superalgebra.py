"""Monomial-based graded-commutative superalgebras.

One engine covers every algebra the homological machinery needs: the
super-exterior algebra on a dual space (square-zero generators plus
polynomial generators), divided-power algebras, and the hybrid complexes
built from both.  A generator is square-zero exactly when parity + degree
is odd; that is forced by the sign law

    a b = (-1)^{|a||b| + deg(a) deg(b)} b a,

so the flag is derived rather than declared.  Non-square-zero generators
are "poly" (x^a x^b = x^{a+b}) or "divided" (gamma_a gamma_b =
C(a+b,a) gamma_{a+b}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from .fields import Matrix, kernel_basis


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    parity: int
    z_degree: int
    kind: str = "poly"  # for non-square-zero generators: "poly" or "divided"

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        if self.z_degree < 0:
            raise ValueError("z_degree must be nonnegative")
        if self.kind not in ("poly", "divided"):
            raise ValueError("kind must be 'poly' or 'divided'")

    @property
    def square_zero(self):
        return (self.parity + self.z_degree) % 2 == 1


class SuperMonomial(NamedTuple):
    """Exponent data of a basis monomial.

    mask: bitmask over the square-zero generators (ascending order);
    exponents: tuple over the remaining generators.
    """

    mask: int
    exponents: tuple


class FreeSuperalgebra:
    """Free graded-commutative superalgebra on a list of GeneratorSpecs."""

    def __init__(self, gens):
        self.gens = list(gens)
        self.sq_idx = [i for i, g in enumerate(self.gens) if g.square_zero]
        self.ex_idx = [i for i, g in enumerate(self.gens) if not g.square_zero]
        self._pos = {}
        for b, i in enumerate(self.sq_idx):
            self._pos[i] = ("sq", b)
        for b, i in enumerate(self.ex_idx):
            self._pos[i] = ("ex", b)
        # pairwise swap signs s(g,h) = parity*parity + deg*deg mod 2
        n = len(self.gens)
        self._swap = [
            [
                (self.gens[g].parity * self.gens[h].parity
                 + self.gens[g].z_degree * self.gens[h].z_degree) % 2
                for h in range(n)
            ]
            for g in range(n)
        ]

    def one(self):
        return SuperMonomial(0, (0,) * len(self.ex_idx))

    def generator_monomial(self, i):
        kind, b = self._pos[i]
        if kind == "sq":
            return SuperMonomial(1 << b, (0,) * len(self.ex_idx))
        e = [0] * len(self.ex_idx)
        e[b] = 1
        return SuperMonomial(0, tuple(e))

    def full_exponents(self, m: SuperMonomial):
        """Exponent per generator index, mask bits included."""
        e = [0] * len(self.gens)
        for b, i in enumerate(self.sq_idx):
            if m.mask >> b & 1:
                e[i] = 1
        for b, i in enumerate(self.ex_idx):
            e[i] = m.exponents[b]
        return e

    def z_degree(self, m: SuperMonomial):
        return sum(e * g.z_degree for e, g in zip(self.full_exponents(m), self.gens))

    def parity(self, m: SuperMonomial):
        return sum(e * g.parity for e, g in zip(self.full_exponents(m), self.gens)) % 2

    def odd_letter_count(self, m: SuperMonomial):
        return sum(e for e, g in zip(self.full_exponents(m), self.gens) if g.parity)

    def pairing_sign(self, m: SuperMonomial):
        """Super pairing normalization (-1)^{C(t,2)}, t = odd letters."""
        t = self.odd_letter_count(m)
        return -1 if (t * (t - 1) // 2) % 2 else 1

    def mul_monomials(self, m1: SuperMonomial, m2: SuperMonomial):
        """Integer coefficient and product monomial, or (0, None)."""
        if m1.mask & m2.mask:
            return 0, None
        e1 = self.full_exponents(m1)
        e2 = self.full_exponents(m2)
        sign_exp = 0
        for g in range(len(self.gens)):
            if not e2[g]:
                continue
            row = self._swap[g]
            for h in range(g + 1, len(self.gens)):
                if e1[h]:
                    sign_exp += e2[g] * e1[h] * row[h]
        coeff = -1 if sign_exp % 2 else 1
        exps = []
        for b, i in enumerate(self.ex_idx):
            a, c = m1.exponents[b], m2.exponents[b]
            if a and c and self.gens[i].kind == "divided":
                coeff *= comb(a + c, a)
            exps.append(a + c)
        return coeff, SuperMonomial(m1.mask | m2.mask, tuple(exps))

    def monomials_of_degree(self, degree):
        """All monomials of the given Z-degree, in canonical order."""
        if degree < 0:
            return []
        for g in self.gens:
            if g.z_degree == 0:
                raise ValueError(
                    "degree-0 generators make graded components infinite-dimensional"
                )
        out = []
        sq_degs = [self.gens[i].z_degree for i in self.sq_idx]
        ex_degs = [self.gens[i].z_degree for i in self.ex_idx]

        def rec_ex(pos, rem, acc):
            if pos == len(ex_degs):
                if rem == 0:
                    out.append(tuple(acc))
                return
            d = ex_degs[pos]
            for e in range(rem // d + 1):
                rec_ex(pos + 1, rem - e * d, acc + [e])

        for bits in itertools.product((0, 1), repeat=len(sq_degs)):
            used = sum(b * d for b, d in zip(bits, sq_degs))
            if used > degree:
                continue
            mask = sum(1 << i for i, b in enumerate(bits) if b)
            start = len(out)
            rec_ex(0, degree - used, [])
            out[start:] = [SuperMonomial(mask, e) for e in out[start:]]
        out.sort(key=lambda m: (m.mask, m.exponents))
        return out

    def format_monomial(self, m: SuperMonomial):
        parts = []
        for b, i in enumerate(self.sq_idx):
            if m.mask >> b & 1:
                parts.append(f"<{self.gens[i].name}>")
        for b, i in enumerate(self.ex_idx):
            e = m.exponents[b]
            if e == 1:
                parts.append(self.gens[i].name)
            elif e > 1:
                parts.append(f"{self.gens[i].name}^{e}")
        return "".join(parts) if parts else "1"


def monomial_basis(gens, degree):
    return FreeSuperalgebra(gens).monomials_of_degree(degree)


class AlgebraElement:
    """Finite sum of monomials with exact field coefficients."""

    def __init__(self, algebra: FreeSuperalgebra, field, terms=None):
        self.algebra = algebra
        self.field = field
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls, algebra, field):
        return cls(algebra, field)

    @classmethod
    def monomial(cls, algebra, field, m, c=None):
        return cls(algebra, field, {m: field.one() if c is None else c})

    @classmethod
    def generator(cls, algebra, field, name):
        for i, g in enumerate(algebra.gens):
            if g.name == name:
                return cls.monomial(algebra, field, algebra.generator_monomial(i))
        raise KeyError(name)

    @classmethod
    def one(cls, algebra, field):
        return cls.monomial(algebra, field, algebra.one())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __add__(self, other):
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = f.add(out.get(m, f.zero()), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return AlgebraElement(self.algebra, f, out)

    def __neg__(self):
        f = self.field
        return AlgebraElement(
            self.algebra, f, {m: f.neg(c) for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        f = self.field
        if not c:
            return AlgebraElement.zero(self.algebra, f)
        return AlgebraElement(
            self.algebra, f, {m: f.mul(c, v) for m, v in self.terms.items()}
        )

    def __mul__(self, other):
        f = self.field
        alg = self.algebra
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                k, m = alg.mul_monomials(m1, m2)
                if not k:
                    continue
                c = f.mul(f.mul(c1, c2), f.of(k))
                if not c:
                    continue
                v = f.add(out.get(m, f.zero()), c)
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return AlgebraElement(alg, f, out)

    def power(self, k):
        acc = AlgebraElement.one(self.algebra, self.field)
        for _ in range(k):
            acc = acc * self
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (m.mask, m.exponents)):
            bits.append(f"{self.terms[m]}*{self.algebra.format_monomial(m)}")
        return " + ".join(bits)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.algebra is not b.algebra and a.algebra.gens != b.algebra.gens:
        raise ValueError("elements over different generator sets")
    return a * b


class FiniteGradedSuperalgebra:
    """Finite-dimensional graded superalgebra via structure constants.

    basis[i] = (name, parity, z_degree); table[(i, j)] maps k to the
    coefficient of basis k in basis_i * basis_j.  Grading additivity is
    enforced at construction; graded-commutativity is a separate check.
    """

    def __init__(self, field, basis, table, unit_index=None, truncated_at=None):
        self.field = field
        self.basis = list(basis)
        self.table = {k: dict(v) for k, v in table.items()}
        self.unit_index = unit_index
        self.truncated_at = truncated_at
        for (i, j), prod in self.table.items():
            di = self.basis[i][2] + self.basis[j][2]
            pi = (self.basis[i][1] + self.basis[j][1]) % 2
            for k, c in prod.items():
                if not c:
                    continue
                if self.basis[k][2] != di or self.basis[k][1] != pi:
                    raise ValueError(
                        f"grading violation in product {i}*{j} -> {k}"
                    )

    @property
    def dim(self):
        return len(self.basis)

    def mul_vectors(self, u, v):
        f = self.field
        out = [f.zero()] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = f.add(out[k], f.mul(f.mul(a, b), c))
        return out

    def is_nilpotent_vector(self, v, max_power=None):
        """Exact nilpotency test; bounded by dim + 1 steps."""
        f = self.field
        limit = max_power or self.dim + 1
        acc = list(v)
        for _ in range(limit):
            if all(not c for c in acc):
                return True
            acc = self.mul_vectors(acc, v)
        return all(not c for c in acc)


def truncated_algebra(field, gens, max_degree):
    """Quotient of the free graded-commutative algebra by degrees > bound."""
    alg = FreeSuperalgebra(gens)
    monos = []
    for d in range(max_degree + 1):
        monos.extend(alg.monomials_of_degree(d))
    index = {m: i for i, m in enumerate(monos)}
    basis = [
        (alg.format_monomial(m), alg.parity(m), alg.z_degree(m)) for m in monos
    ]
    table = {}
    for i, m1 in enumerate(monos):
        for j, m2 in enumerate(monos):
            k, m = alg.mul_monomials(m1, m2)
            if not k or m not in index:
                continue
            c = field.of(k)
            if c:
                table[(i, j)] = {index[m]: c}
    return FiniteGradedSuperalgebra(
        field, basis, table, unit_index=index[alg.one()], truncated_at=max_degree
    )


def check_graded_commutativity(A: FiniteGradedSuperalgebra) -> bool:
    f = A.field
    n = A.dim
    for i in range(n):
        for j in range(n):
            lhs = A.table.get((i, j), {})
            rhs = A.table.get((j, i), {})
            s = (A.basis[i][1] * A.basis[j][1] + A.basis[i][2] * A.basis[j][2]) % 2
            sign = f.neg(f.one()) if s else f.one()
            keys = set(lhs) | set(rhs)
            for k in keys:
                if lhs.get(k, f.zero()) != f.mul(sign, rhs.get(k, f.zero())):
                    return False
    return True


def _commutative_sector_indices(A: FiniteGradedSuperalgebra):
    """Basis indices of R = A_0^ev + A_1^odd (ordinary-commutative part)."""
    out = []
    for i, (_, parity, deg) in enumerate(A.basis):
        if (deg % 2 == 0 and parity == 0) or (deg % 2 == 1 and parity == 1):
            out.append(i)
    return out


def _radical_of_commutative(A, idx):
    """Nilradical of the subalgebra spanned by basis indices idx.

    Char p: kernel of the additive p^m-power map (p^m >= dim), which is
    F_p-linear because the sector is ordinary-commutative.  Char 0: kernel
    of the trace form T(x, y) = Tr(L_xy).
    """
    f = A.field
    n = len(idx)
    if n == 0:
        return []
    pos = {b: r for r, b in enumerate(idx)}

    def embed(r):
        v = [f.zero()] * A.dim
        v[idx[r]] = f.one()
        return v

    def restrict(v):
        out = [f.zero()] * n
        for b, c in enumerate(v):
            if c:
                if b not in pos:
                    raise ValueError("sector not closed under multiplication")
                out[pos[b]] = c
        return out

    if f.p:
        m = 1
        while f.p ** m < n + 1:
            m += 1
        q = f.p ** m
        cols = []
        for r in range(n):
            cols.append(restrict(_vector_power(A, embed(r), q)))
        mat = Matrix(f, [[cols[c][r] for c in range(n)] for r in range(n)])
        return [
            _expand(idx, v, A.dim, f) for v in kernel_basis(mat)
        ]
    # char 0: trace form
    mult_ops = []
    for r in range(n):
        op = []
        for c in range(n):
            prod = restrict(A.mul_vectors(embed(r), embed(c)))
            op.append(prod)
        # op[c][k]: coefficient of idx[k] in e_r e_c; L_{e_r} matrix column c
        mult_ops.append(op)

    def trace_of_mult(v):
        # v is an R-coordinate vector; Tr(L_v)
        t = f.zero()
        for c in range(n):
            s = f.zero()
            for r in range(n):
                if v[r]:
                    s = f.add(s, f.mul(v[r], mult_ops[r][c][c]))
            t = f.add(t, s)
        return t

    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = restrict(A.mul_vectors(embed(i), embed(j)))
            row.append(trace_of_mult(prod))
        gram.append(row)
    mat = Matrix(f, gram)
    return [_expand(idx, v, A.dim, f) for v in kernel_basis(mat)]


def _vector_power(A, v, k):
    f = A.field
    acc = None
    base = list(v)
    while k:
        if k & 1:
            acc = base if acc is None else A.mul_vectors(acc, base)
        k >>= 1
        if k:
            base = A.mul_vectors(base, base)
    return acc if acc is not None else v


def _expand(idx, v, dim, f):
    out = [f.zero()] * dim
    for r, b in enumerate(idx):
        out[b] = v[r]
    return out


@dataclass
class NilradicalResult:
    nil_R: list  # basis vectors of Nil(R), full-dimension coordinates
    nilradical: list  # basis vectors of Nil(A)
    truncated_at: object  # degree bound the algebra was truncated at, or None
    verified_nilpotent: bool


def nilradical_decomposition(A: FiniteGradedSuperalgebra) -> NilradicalResult:
    """Nil(A) = Nil(R) + A_0^odd + A_1^ev, R the ordinary-commutative sector."""
    f = A.field
    idx_R = _commutative_sector_indices(A)
    nil_R = _radical_of_commutative(A, idx_R)
    other = [i for i in range(A.dim) if i not in idx_R]
    full = [list(v) for v in nil_R]
    for i in other:
        v = [f.zero()] * A.dim
        v[i] = f.one()
        full.append(v)
    verified = all(A.is_nilpotent_vector(v) for v in full)
    if not verified:
        raise ArithmeticError("nilradical candidate contains a non-nilpotent element")
    return NilradicalResult(nil_R, full, A.truncated_at, verified)
