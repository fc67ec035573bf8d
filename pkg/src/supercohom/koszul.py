"""The Koszul cochain complex C(g, M) = M (x) Lambda_s(g*) and Lie
superalgebra cohomology by exact rank computation.

Sign conventions, fixed once and validated by the golden examples:

* on a dual generator f, the differential is
      d(f) = sum_{u <= v} eps(u,v) f(br(u,v)) u* v*,
  where br(u,v) = [u,v] for u < v, br(u,u) = (1/2)[u,u] for odd u, and
  eps(u,v) = -1 exactly when u and v are both odd;
* d extends to monomials as a derivation with sign (-1)^deg;
* on module elements, d(m) = -sum_k (-1)^{|z_k| |m|} (z_k.m) (x) z_k*,
  the unique sign making d^2 = 0 against the rule above;
* d(m (x) z) = d(m) z + m (x) d(z).

d^2 = 0 is asserted during construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Matrix, from_columns, kernel_basis, rank, solve
from .superalgebra import AlgebraElement, FreeSuperalgebra, GeneratorSpec
from .liesuper import (
    Supermodule,
    adjoint_module,
    build_gl,
    dual_module,
    restrict_module,
    trivial_module,
)


class SignConventionError(ArithmeticError):
    """d^2 != 0: a sign convention bug; construction must abort."""


class LieCochains:
    """Differential machinery on C(g, M) without materialized bases."""

    def __init__(self, g, M: Supermodule | None = None):
        self.g = g
        self.f = g.field
        self.M = M if M is not None else trivial_module(g)
        gens = [
            GeneratorSpec(name + "*", parity, 1)
            for name, parity in zip(g.names, g.parities)
        ]
        self.lam = FreeSuperalgebra(gens)
        self._dgen = [self._diff_generator(i) for i in range(g.dim)]
        self._mono_cache = {}
        self._dmod_cache = {}

    # -- Lambda_s(g*) side ------------------------------------------------
    def _diff_generator(self, i):
        f = self.f
        g = self.g
        out = AlgebraElement.zero(self.lam, f)
        for u in range(g.dim):
            for v in range(u, g.dim):
                if u == v:
                    if g.parities[u] == 0:
                        continue
                    half = f.inv(f.of(2))
                    c = f.mul(half, g.bracket_basis(u, u)[i])
                else:
                    c = g.bracket_basis(u, v)[i]
                if not c:
                    continue
                if g.parities[u] and g.parities[v]:
                    c = f.neg(c)
                k, mono = self.lam.mul_monomials(
                    self.lam.generator_monomial(u), self.lam.generator_monomial(v)
                )
                assert k == 1
                out = out + AlgebraElement.monomial(self.lam, f, mono, c)
        return out

    def generator_element(self, i):
        return AlgebraElement.monomial(
            self.lam, self.f, self.lam.generator_monomial(i)
        )

    def diff_monomial(self, mono) -> AlgebraElement:
        """d on one monomial, by the (-1)^deg product rule along its letters."""
        cached = self._mono_cache.get(mono)
        if cached is not None:
            return cached
        f = self.f
        lam = self.lam
        letters = []
        for i, e in enumerate(lam.full_exponents(mono)):
            letters.extend([i] * e)
        # prefix[j] = product of the first j letters (a single monomial)
        prefix = [lam.one()]
        for i in letters:
            _, m = lam.mul_monomials(prefix[-1], lam.generator_monomial(i))
            prefix.append(m)
        suffix = [lam.one()]
        for i in reversed(letters):
            _, m = lam.mul_monomials(lam.generator_monomial(i), suffix[-1])
            suffix.append(m)
        suffix.reverse()
        out = AlgebraElement.zero(lam, f)
        sign = f.one()
        for pos, i in enumerate(letters):
            for dm, dc in self._dgen[i].terms.items():
                k1, m1 = lam.mul_monomials(prefix[pos], dm)
                if not k1:
                    continue
                k2, m2 = lam.mul_monomials(m1, suffix[pos + 1])
                if not k2:
                    continue
                c = f.mul(sign, f.mul(dc, f.of(k1 * k2)))
                out = out + AlgebraElement.monomial(lam, f, m2, c)
            # every generator sits in degree 1, so the sign alternates
            sign = f.neg(sign)
        self._mono_cache[mono] = out
        return out

    def diff_lambda(self, elem: AlgebraElement) -> AlgebraElement:
        """Derivation extension of the generator differential."""
        out = AlgebraElement.zero(self.lam, self.f)
        for mono, coeff in elem.terms.items():
            out = out + self.diff_monomial(mono).scaled(coeff)
        return out

    # -- full complex with coefficients ------------------------------------
    def module_parity(self, idx):
        return 0 if idx < self.M.dims[0] else 1

    def diff_module_basis(self, idx):
        """d(e_idx) as a dict {(module index, degree-1 monomial): coeff}."""
        cached = self._dmod_cache.get(idx)
        if cached is not None:
            return cached
        f = self.f
        g = self.g
        out = {}
        pm = self.module_parity(idx)
        for k in range(g.dim):
            col = [self.M.rho[k].matrix.rows[r][idx] for r in range(self.M.dim)]
            if not any(col):
                continue
            sgn = f.neg(f.one())
            if g.parities[k] and pm:
                sgn = f.one()
            mono = self.lam.generator_monomial(k)
            for r, c in enumerate(col):
                if c:
                    key = (r, mono)
                    v = f.add(out.get(key, f.zero()), f.mul(sgn, c))
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        self._dmod_cache[idx] = out
        return out

    def diff_cochain(self, cochain):
        """cochain: {(module index, monomial): coeff} -> same shape, degree + 1."""
        f = self.f
        out = {}

        def add(idx, mono, c):
            if not c:
                return
            key = (idx, mono)
            v = f.add(out.get(key, f.zero()), c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)

        for (idx, mono), coeff in cochain.items():
            # d(m) * z
            for (idx2, gen_mono), c in self.diff_module_basis(idx).items():
                k, m2 = self.lam.mul_monomials(gen_mono, mono)
                if k:
                    add(idx2, m2, f.mul(coeff, f.mul(c, f.of(k))))
            # m (x) d(z)
            for m2, c2 in self.diff_monomial(mono).terms.items():
                add(idx, m2, f.mul(coeff, c2))
        return out


@dataclass
class CohomologyTable:
    dims: list
    truncation: int

    def as_list(self):
        return [d for _, d in self.dims]


class KoszulComplex:
    """Based components of C(g, M) up to max_degree with differential
    matrices; d^2 = 0 verified at construction."""

    def __init__(self, g, M, max_degree):
        if max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        self.g = g
        self.M = M
        self.max_degree = max_degree
        self.cochains = LieCochains(g, M)
        f = g.field
        lam = self.cochains.lam
        self.components = []
        for n in range(max_degree + 1):
            monos = lam.monomials_of_degree(n)
            basis = [(i, m) for m in monos for i in range(M.dim)]
            self.components.append(basis)
        self.index = [
            {key: r for r, key in enumerate(basis)} for basis in self.components
        ]
        self.differentials = []
        for n in range(max_degree):
            rows = len(self.components[n + 1])
            cols = len(self.components[n])
            mat = Matrix.zero(f, rows, cols)
            for c, key in enumerate(self.components[n]):
                img = self.cochains.diff_cochain({key: f.one()})
                for key2, v in img.items():
                    mat.rows[self.index[n + 1][key2]][c] = v
            self.differentials.append(mat)
        for n in range(max_degree - 1):
            if not (self.differentials[n + 1] @ self.differentials[n]).is_zero():
                raise SignConventionError(f"d^2 != 0 between degrees {n} and {n + 2}")

    def cohomology_dims(self):
        out = []
        for n in range(self.max_degree):
            ker = len(self.components[n]) - rank(self.differentials[n])
            im = rank(self.differentials[n - 1]) if n >= 1 else 0
            out.append((n, ker - im))
        return out

    def element_vector(self, cochain, degree):
        f = self.g.field
        v = [f.zero()] * len(self.components[degree])
        for key, c in cochain.items():
            v[self.index[degree][key]] = c
        return v


def build_koszul(g, M, max_degree):
    return KoszulComplex(g, M, max_degree)


def cohomology(g, M, max_degree) -> CohomologyTable:
    cx = KoszulComplex(g, M, max_degree)
    return CohomologyTable(cx.cohomology_dims(), max_degree)


@dataclass
class CocycleCertificate:
    degree: int
    is_cocycle: bool
    is_coboundary: bool
    preimage: object  # coefficient vector over the degree-(dp-1) basis, or None


def ppower_cocycle(g, f_elem: AlgebraElement, complex_bound=None):
    """f^p for f in S(g_1*): verify it is a cocycle, decide coboundary
    membership by exact solve against the previous differential."""
    field = g.field
    p = field.p
    if p == 0:
        raise ValueError("p-power map needs positive characteristic")
    cochains = LieCochains(g)
    lam = cochains.lam
    for mono in f_elem.terms:
        for e, gen in zip(lam.full_exponents(mono), lam.gens):
            if e and gen.parity == 0:
                raise ValueError("f must be a polynomial in odd dual generators")
    deg = {lam.z_degree(m) for m in f_elem.terms}
    if len(deg) != 1:
        raise ValueError("f must be homogeneous")
    d = deg.pop()
    target = d * p
    bound = complex_bound or target + 1
    if bound < target + 1:
        raise ValueError("truncation too small for f^p")
    fp = f_elem.power(p)
    img = cochains.diff_lambda(fp)
    is_cocycle = img.is_zero()
    M = trivial_module(g)
    cx = KoszulComplex(g, M, bound)
    vec = cx.element_vector({(0, m): c for m, c in fp.terms.items()}, target)
    x = solve(cx.differentials[target - 1], vec)
    return CocycleCertificate(target, is_cocycle, x is not None, x)


# -- the gl(m|m) cocycle identities ---------------------------------------


def _perms(n):
    import itertools

    for sigma in itertools.permutations(range(n)):
        inv = sum(
            1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j]
        )
        yield sigma, -1 if inv % 2 else 1


def _dual_name_index(g, i, j):
    return g.names.index(f"e{i}{j}")


def _f1_element(cochains, m):
    """sum_sigma sgn(sigma) X_{sigma(1),m+1} ... X_{sigma(m),2m}."""
    g = cochains.g
    f = cochains.f
    out = AlgebraElement.zero(cochains.lam, f)
    for sigma, sgn in _perms(m):
        term = AlgebraElement.one(cochains.lam, f)
        for i in range(m):
            k = _dual_name_index(g, sigma[i] + 1, m + i + 1)
            term = term * cochains.generator_element(k)
        out = out + term.scaled(f.of(sgn))
    return out


def _supertrace_element(cochains, m):
    g = cochains.g
    f = cochains.f
    out = AlgebraElement.zero(cochains.lam, f)
    for r in range(1, m + 1):
        k = _dual_name_index(g, r, r)
        out = out + cochains.generator_element(k)
    for r in range(m + 1, 2 * m + 1):
        k = _dual_name_index(g, r, r)
        out = out - cochains.generator_element(k)
    return out


def verify_f1_identity(m, p, break_supertrace=False):
    """d(f1) = str * f1 in Lambda_s(gl(m|m)*)."""
    g = build_gl(m, m, p)
    cochains = LieCochains(g)
    f1 = _f1_element(cochains, m)
    s = _supertrace_element(cochains, m)
    if break_supertrace:
        # wrong trace form: sum of all diagonal duals
        f = cochains.f
        s = AlgebraElement.zero(cochains.lam, f)
        for r in range(1, 2 * m + 1):
            s = s + cochains.generator_element(_dual_name_index(g, r, r))
    return cochains.diff_lambda(f1) == s * f1


def _coadjoint_cochains(g):
    return LieCochains(g, dual_module(adjoint_module(g)))


def _coadjoint_index(g, M, i, j):
    """Index of X_ij in the coadjoint module coordinates (even-first)."""
    order = sorted(range(g.dim), key=lambda t: (g.parities[t], t))
    return order.index(_dual_name_index(g, i, j))


def _f2_cochain(cochains, m):
    """sum_i sum_sigma sgn(sigma) X_{sigma(i),m+i} (x) prod_{l != i} X_{sigma(l),m+l}."""
    g = cochains.g
    f = cochains.f
    out = {}
    for i in range(m):
        for sigma, sgn in _perms(m):
            idx = _coadjoint_index(g, cochains.M, sigma[i] + 1, m + i + 1)
            term = AlgebraElement.one(cochains.lam, f)
            for l in range(m):
                if l == i:
                    continue
                k = _dual_name_index(g, sigma[l] + 1, m + l + 1)
                term = term * cochains.generator_element(k)
            for mono, c in term.terms.items():
                key = (idx, mono)
                v = f.add(out.get(key, f.zero()), f.mul(f.of(sgn), c))
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def _tensor_cochain(cochains, mod_element, lam_element):
    """(module vector) (x) (Lambda element) as a cochain dict."""
    f = cochains.f
    out = {}
    for idx, c in enumerate(mod_element):
        if not c:
            continue
        for mono, c2 in lam_element.terms.items():
            out[(idx, mono)] = f.mul(c, c2)
    return out


def _right_multiply(cochains, cochain, lam_element):
    f = cochains.f
    out = {}
    for (idx, mono), c in cochain.items():
        prod = AlgebraElement.monomial(cochains.lam, f, mono) * lam_element
        for m2, c2 in prod.terms.items():
            key = (idx, m2)
            v = f.add(out.get(key, f.zero()), f.mul(c, c2))
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def verify_f2_identity(m, p):
    """d(f2) = -str (x) f1 + (-1)^{m-1} f2 . str in C(gl(m|m), gl(m|m)*)."""
    g = build_gl(m, m, p)
    cochains = _coadjoint_cochains(g)
    f = cochains.f
    f2 = _f2_cochain(cochains, m)
    f1 = _f1_element(cochains, m)
    strv = [f.zero()] * cochains.M.dim
    for r in range(1, m + 1):
        strv[_coadjoint_index(g, cochains.M, r, r)] = f.one()
    for r in range(m + 1, 2 * m + 1):
        strv[_coadjoint_index(g, cochains.M, r, r)] = f.neg(f.one())
    str_lam = _supertrace_element(cochains, m)

    lhs = cochains.diff_cochain(f2)
    rhs = {}
    t1 = _tensor_cochain(cochains, strv, f1)
    for key, c in t1.items():
        rhs[key] = f.neg(c)
    sgn = f.one() if (m - 1) % 2 == 0 else f.neg(f.one())
    t2 = _right_multiply(cochains, f2, str_lam)
    for key, c in t2.items():
        v = f.add(rhs.get(key, f.zero()), f.mul(sgn, c))
        if v:
            rhs[key] = v
        else:
            rhs.pop(key, None)
    return lhs == rhs


def verify_f2_consequence(m, p):
    """d(-f2 * f1^{p-1}) = str (x) f1^p."""
    g = build_gl(m, m, p)
    cochains = _coadjoint_cochains(g)
    f = cochains.f
    f2 = _f2_cochain(cochains, m)
    f1 = _f1_element(cochains, m)
    f1_pow = f1.power(p - 1)
    lhs_arg = _right_multiply(cochains, f2, f1_pow)
    lhs_arg = {k: f.neg(c) for k, c in lhs_arg.items()}
    lhs = cochains.diff_cochain(lhs_arg)
    strv = [f.zero()] * cochains.M.dim
    for r in range(1, m + 1):
        strv[_coadjoint_index(g, cochains.M, r, r)] = f.one()
    for r in range(m + 1, 2 * m + 1):
        strv[_coadjoint_index(g, cochains.M, r, r)] = f.neg(f.one())
    rhs = _tensor_cochain(cochains, strv, f1.power(p))
    return lhs == rhs


# -- restriction of cochains ----------------------------------------------


@dataclass
class CochainMap:
    matrices: list
    commutes: bool
    surjective: bool


def restrict_cochains(g, sub, emb, M, max_degree):
    """The map C(g, M) -> C(sub, M|_sub) induced by restriction of linear
    functions along a subalgebra embedding; checked degree by degree."""
    f = g.field
    big = KoszulComplex(g, M, max_degree)
    Msub = restrict_module(M, sub, emb)
    small = KoszulComplex(sub, Msub, max_degree)
    # dual generator images: X_i -> sum_j emb[i][j] u_j*
    images = []
    for i in range(g.dim):
        el = AlgebraElement.zero(small.cochains.lam, f)
        for j in range(sub.dim):
            c = emb.rows[i][j]
            if c:
                el = el + small.cochains.generator_element(j).scaled(c)
        images.append(el)
    mats = []
    for n in range(max_degree + 1):
        rows = len(small.components[n])
        cols = len(big.components[n])
        mat = Matrix.zero(f, rows, cols)
        for c, (idx, mono) in enumerate(big.components[n]):
            el = AlgebraElement.one(small.cochains.lam, f)
            for i, e in enumerate(big.cochains.lam.full_exponents(mono)):
                for _ in range(e):
                    el = el * images[i]
            for m2, c2 in el.terms.items():
                mat.rows[small.index[n][(idx, m2)]][c] = c2
        mats.append(mat)
    commutes = all(
        (mats[n + 1] @ big.differentials[n]) == (small.differentials[n] @ mats[n])
        for n in range(max_degree)
    )
    surjective = all(
        rank(mats[n]) == len(small.components[n]) for n in range(max_degree + 1)
    )
    return CochainMap(mats, commutes, surjective)
