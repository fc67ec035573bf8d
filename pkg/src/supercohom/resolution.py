"""The Iwai--Shimada--May free resolution of k over V(g) for restricted Lie
superalgebras with abelian even part, and V(g)-cohomology via its dual.

X(g) = W(g) (x) Gamma(g_0[2])^(1) with W(g) = V(g) # A(g) and
A(g) = Lambda(g_0) (x) Gamma(g_1).  The differential is

    d_t(w (x) gamma) = d(w) (x) gamma
                       + (-1)^{deg w} sum [w . t(gamma')] (x) gamma'',

with t the twisting cochain t(gamma_1(x)) = x^{p-1}<x> - <x^[p]> on the
even basis, zero in higher degrees (the abelian case).  The inexact
differential d on W(g) has three parts on a monomial of A(g):

* remove an exterior letter <x_i> and multiply x_i into V(g), with sign
  (-1)^{number of earlier exterior letters};
* remove one divided-power letter from gamma_b(y_j) and multiply y_j into
  V(g), with sign (-1)^{number of exterior letters};
* the bracket part, the transpose of the Koszul cochain differential on
  Lambda_s(g*) under the super pairing eps(m) = (-1)^{C(t,2)} (t = odd
  letters), with a global minus sign.

d_t^2 = 0 and exactness are checked at construction, and the dual-complex
differential is the signed transpose

    coeff(d* a*, b*) = (-1)^{deg a} eps(a) eps(b) [1-coefficient of a in d_t b].

These conventions reproduce the worked-example differentials and
coboundary lists verbatim; see the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Matrix, rank, solve
from .superalgebra import AlgebraElement, FreeSuperalgebra, GeneratorSpec, SuperMonomial
from .koszul import LieCochains, CohomologyTable
from .liesuper import Enveloping


class ScopeError(ValueError):
    """Raised for inputs outside the abelian-even-part construction."""


@dataclass
class TwistingCochain:
    g: object
    # even basis index -> list of (pbw monomial, exterior g-index or None, coeff)
    images: dict
    epsilon_vanishes: bool
    twisting_condition: bool


def build_twisting_cochain(g) -> TwistingCochain:
    """t(gamma_1(x)) = x^{p-1}<x> - <x^[p]> on the fixed even basis; zero in
    homological degrees above 2.  Verifies eps o t = 0 and d o (t u t) = 0."""
    if not g.restricted:
        raise ScopeError("twisting cochain needs a restricted algebra")
    if not g.even_is_abelian():
        raise ScopeError("only the abelian-even-part construction is implemented")
    f = g.field
    env = Enveloping(g, restricted=True)
    images = {}
    for i in g.even_indices:
        terms = []
        mono = [0] * g.dim
        mono[env.pos_of[i]] = f.p - 1
        terms.append((tuple(mono), i, f.one()))
        zero_mono = (0,) * g.dim
        for k, c in enumerate(g.pmap_basis(i)):
            if c:
                terms.append((zero_mono, k, f.neg(c)))
        images[i] = terms
    # eps o t = 0: every image term carries an exterior letter (A-degree 1)
    eps_ok = all(ext is not None for ts in images.values() for (_, ext, _) in ts)
    tc = TwistingCochain(g, images, eps_ok, True)
    tc.twisting_condition = _check_twisting_condition(g, tc, env)
    if not tc.epsilon_vanishes or not tc.twisting_condition:
        raise ScopeError("constructed cochain violates the twisting conditions")
    return tc


def _w_product_of_t_terms(g, env, t1, t2):
    """Product t(gamma_1(x_i)) t(gamma_1(x_j)) inside W(g_0): returns
    {(pbw, frozenset of exterior indices): coeff}.  Even part abelian, so
    V-parts commute and exterior letters square to zero."""
    f = g.field
    out = {}
    for (v1, e1, c1) in t1:
        for (v2, e2, c2) in t2:
            if e1 == e2:
                continue
            prod = env.multiply({v1: f.one()}, {v2: f.one()})
            # moving v2 past <e1> costs nothing: both even
            sign = f.one()
            ext = (e1, e2)
            if e2 < e1:
                ext = (e2, e1)
                sign = f.neg(f.one())  # swap two exterior degree-1 letters
            for m, cv in prod.items():
                key = (m, ext)
                v = f.add(out.get(key, f.zero()), f.mul(f.mul(f.mul(c1, c2), cv), sign))
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def _check_twisting_condition(g, tc, env):
    """d((t u t)(gamma)) = 0 for every degree-2 divided monomial gamma.

    With g_0 abelian the bracket part of d vanishes on W(g_0), so d of a
    term v (x) <x_a x_b> is (v x_a) (x) <x_b> - (v x_b) (x) <x_a>."""
    f = g.field
    for i in g.even_indices:
        for j in g.even_indices:
            if j < i:
                continue
            if i == j:
                prod = _w_product_of_t_terms(g, env, tc.images[i], tc.images[i])
            else:
                prod = _w_product_of_t_terms(g, env, tc.images[i], tc.images[j])
                for key, c in _w_product_of_t_terms(
                    g, env, tc.images[j], tc.images[i]
                ).items():
                    v = f.add(prod.get(key, f.zero()), c)
                    if v:
                        prod[key] = v
                    else:
                        prod.pop(key, None)
            img = {}
            for (vm, (a, b), c) in prod.items():
                for (gen, other, sgn) in ((a, b, f.one()), (b, a, f.neg(f.one()))):
                    res = env.mul_elem_gen({vm: f.one()}, env.pos_of[gen])
                    for m2, cv in res.items():
                        key = (m2, other)
                        v = f.add(img.get(key, f.zero()), f.mul(f.mul(c, cv), sgn))
                        if v:
                            img[key] = v
                        else:
                            img.pop(key, None)
            if img:
                return False
    return True


class MayResolution:
    """Based components of X(g) up to a homological truncation, with the
    twisted differential as sparse generator images and as field matrices."""

    def __init__(self, g, t: TwistingCochain, truncation, check_exactness_to=None):
        if not g.even_is_abelian():
            raise ScopeError("only the abelian-even-part construction is implemented")
        self.g = g
        self.t = t
        self.truncation = truncation
        f = g.field
        self.f = f
        self.env = Enveloping(g, restricted=True)
        self.cochains = LieCochains(g)

        n_odd = len(g.odd_indices)
        gens = []
        self._aidx = {}
        for i in range(g.dim):
            if g.parities[i] == 0:
                gens.append(GeneratorSpec(f"<{g.names[i]}>", 0, 1))
            else:
                gens.append(GeneratorSpec(f"g({g.names[i]})", 1, 1, kind="divided"))
        for i in g.even_indices:
            gens.append(GeneratorSpec(f"g2({g.names[i]})", 0, 2, kind="divided"))
        self.xalg = FreeSuperalgebra(gens)
        self.n_a_ex = n_odd  # A-part exponent slots (odd generators)
        # map: slot position in xalg exponents for the Gamma[2] generator of
        # even basis index i
        self._g2_slot = {}
        for pos, gi in enumerate(self.xalg.ex_idx):
            if gi >= g.dim:
                self._g2_slot[g.even_indices[gi - g.dim]] = pos

        self.xmonos = [self.xalg.monomials_of_degree(n) for n in range(truncation + 1)]
        self._bracket_tables = self._build_bracket_tables()
        self.d_gen = [None] + [
            {m: self._d_of_monomial(m) for m in self.xmonos[n]}
            for n in range(1, truncation + 1)
        ]
        self._check_d_squared()
        bound = check_exactness_to
        if bound is None:
            bound = truncation - 1
        self.exactness_checked_to = 0
        if bound >= 0:
            self._check_exactness(bound)

    # -- monomial bookkeeping ------------------------------------------
    def a_degree(self, mono: SuperMonomial):
        d = bin(mono.mask).count("1")
        d += sum(mono.exponents[: self.n_a_ex])
        return d

    def a_part_lam_monomial(self, mono):
        return SuperMonomial(mono.mask, mono.exponents[: self.n_a_ex])

    def _with_a_part(self, mono, lam_mono):
        exps = tuple(lam_mono.exponents) + tuple(mono.exponents[self.n_a_ex:])
        return SuperMonomial(lam_mono.mask, exps)

    def pairing_sign(self, mono):
        return self.xalg.pairing_sign(mono)

    # -- the differential ------------------------------------------------
    def _build_bracket_tables(self):
        """Per A-degree: a_mono -> [(target a_mono, coeff)], the transpose of
        the Koszul cochain differential with a global minus sign."""
        g = self.g
        f = self.f
        lam = self.cochains.lam
        max_a = self.truncation
        tables = [dict() for _ in range(max_a + 1)]
        for d in range(1, max_a + 1):
            lower = lam.monomials_of_degree(d - 1)
            table = tables[d]
            for b_mono in lower:
                img = self.cochains.diff_monomial(b_mono)
                eps_b = lam.pairing_sign(b_mono)
                for a_mono, c in img.terms.items():
                    eps_a = lam.pairing_sign(a_mono)
                    coeff = f.mul(f.of(-eps_a * eps_b), c)
                    table.setdefault(a_mono, []).append((b_mono, coeff))
        return tables

    def _d_of_monomial(self, mono):
        """d_t(1 (x) mono) as {(pbw monomial, xmonomial): coeff}."""
        g = self.g
        f = self.f
        env = self.env
        out = {}

        def add(vm, xm, c):
            if not c:
                return
            key = (vm, xm)
            v = f.add(out.get(key, f.zero()), c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)

        a_deg = self.a_degree(mono)
        zero_pbw = (0,) * g.dim
        # letter removal: the Koszul sign is the full swap sign past every
        # preceding letter (odd past odd is free; everything else costs -1)
        full = self.xalg.full_exponents(mono)

        def letters_before(gen_index, kinds):
            n = 0
            for gidx in range(gen_index):
                if self.xalg.gens[gidx].z_degree != 1:
                    continue
                if self.xalg.gens[gidx].parity in kinds:
                    n += full[gidx]
            return n

        for b, gi in enumerate(self.xalg.sq_idx):
            if mono.mask >> b & 1:
                passed = letters_before(gi, (0, 1))
                sign = f.one() if passed % 2 == 0 else f.neg(f.one())
                xm = SuperMonomial(mono.mask & ~(1 << b), mono.exponents)
                vm = list(zero_pbw)
                vm[env.pos_of[gi]] = 1
                add(tuple(vm), xm, sign)
        # divided-letter removal from the Gamma(g_1) part
        for pos in range(self.n_a_ex):
            if mono.exponents[pos]:
                gi = self.xalg.ex_idx[pos]
                passed = letters_before(gi, (0,))
                sign = f.one() if passed % 2 == 0 else f.neg(f.one())
                exps = list(mono.exponents)
                exps[pos] -= 1
                vm = list(zero_pbw)
                vm[env.pos_of[gi]] = 1
                add(tuple(vm), SuperMonomial(mono.mask, tuple(exps)), sign)
        # bracket part
        table = self._bracket_tables[self.a_degree(mono)] if self.a_degree(mono) else {}
        a_lam = self.a_part_lam_monomial(mono)
        for b_mono, c in table.get(a_lam, []):
            add(zero_pbw, self._with_a_part(mono, b_mono), c)
        # twisting part
        tw_sign = f.one() if a_deg % 2 == 0 else f.neg(f.one())
        for i, slot in self._g2_slot.items():
            c_exp = mono.exponents[slot]
            if not c_exp:
                continue
            lowered_g2 = list(mono.exponents)
            lowered_g2[slot] -= 1
            n_g2 = len(self.xalg.ex_idx) - self.n_a_ex
            a_full = SuperMonomial(
                mono.mask, mono.exponents[: self.n_a_ex] + (0,) * n_g2
            )
            for (vm, ext, c) in self.t.images[i]:
                # commute the V-part x_i^k past the A-part by the adjoint
                # derivation, then multiply the exterior letter in
                k = vm[env.pos_of[i]] if any(vm) else 0
                expansion = self._commute_power_past(i, k, a_full)
                for (vm2, am2, c2) in expansion:
                    prod_c, am3 = self._mul_a_ext(am2, ext)
                    if not prod_c:
                        continue
                    exps3 = (
                        am3.exponents[: self.n_a_ex]
                        + tuple(lowered_g2[self.n_a_ex:])
                    )
                    xm3 = SuperMonomial(am3.mask, exps3)
                    add(vm2, xm3, f.mul(f.mul(f.mul(c, c2), f.of(prod_c)), tw_sign))
        return out

    def _mul_a_ext(self, a_mono, ext_index):
        """Right-multiply an A-part monomial by the exterior letter of the
        even basis element ext_index; integer coefficient and monomial."""
        gen = self.xalg.generator_monomial(ext_index)
        return self.xalg.mul_monomials(a_mono, gen)

    def _commute_power_past(self, i, k, a_mono):
        """(1 (x) a) x_i^k = sum_j C(k,j) x_i^{k-j} (x) D_i^j(a):
        list of (pbw monomial, A-part monomial, coeff)."""
        from math import comb

        f = self.f
        env = self.env
        g = self.g
        if k == 0:
            return [((0,) * g.dim, a_mono, f.one())]
        # iterate the adjoint derivation D_i
        terms_by_j = [{a_mono: f.one()}]
        for _ in range(k):
            prev = terms_by_j[-1]
            cur = {}
            for m, c in prev.items():
                for m2, c2 in self._adjoint_derivation(i, m).items():
                    v = f.add(cur.get(m2, f.zero()), f.mul(c, c2))
                    if v:
                        cur[m2] = v
                    else:
                        cur.pop(m2, None)
            terms_by_j.append(cur)
        out = []
        for j in range(k + 1):
            coeff = f.of(comb(k, j))
            if not coeff:
                continue
            vm = [0] * g.dim
            vm[env.pos_of[i]] = k - j
            for m, c in terms_by_j[j].items():
                out.append((tuple(vm), m, f.mul(coeff, c)))
        return out

    def _adjoint_derivation(self, i, a_mono):
        """D_i(a) = sum of a with one divided letter y_l replaced by
        gamma_1([y_l, x_i]); the right adjoint action of x_i on A(g)."""
        f = self.f
        g = self.g
        out = {}
        for pos in range(self.n_a_ex):
            e = a_mono.exponents[pos]
            if not e:
                continue
            l = self.xalg.ex_idx[pos]
            br = g.bracket_basis(l, i)  # [y_l, x_i]
            if not any(br):
                continue
            exps = list(a_mono.exponents)
            exps[pos] -= 1
            lowered = SuperMonomial(a_mono.mask, tuple(exps))
            for k, c in enumerate(br):
                if not c:
                    continue
                kc, m2 = self.xalg.mul_monomials(
                    lowered, self.xalg.generator_monomial(k)
                )
                if not kc:
                    continue
                v = f.add(out.get(m2, f.zero()), f.mul(c, f.of(kc)))
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
        return out

    # -- applying and checking the differential ---------------------------
    def apply_d(self, elem):
        """elem: {(pbw, xmono): coeff} of pure homological degree -> image."""
        f = self.f
        env = self.env
        out = {}
        for (vm, xm), c in elem.items():
            n = self.xalg.z_degree(xm)
            for (vm2, xm2), c2 in self.d_gen[n][xm].items():
                prod = env.multiply({vm: f.one()}, {vm2: f.one()})
                for m3, c3 in prod.items():
                    key = (m3, xm2)
                    v = f.add(out.get(key, f.zero()), f.mul(f.mul(c, c2), c3))
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    def _check_d_squared(self):
        for n in range(2, self.truncation + 1):
            for m in self.xmonos[n]:
                img = self.apply_d(dict(self.d_gen[n][m]))
                if img:
                    raise ArithmeticError(f"d_t^2 != 0 on {self.xalg.format_monomial(m)}")

    def field_basis(self, n):
        pbw = self.env.vg_basis()
        return [(u, m) for m in self.xmonos[n] for u in pbw]

    def field_matrix(self, n):
        """d_t: X_n -> X_{n-1} over the base field via the PBW basis."""
        f = self.f
        rows = self.field_basis(n - 1)
        cols = self.field_basis(n)
        ridx = {k: r for r, k in enumerate(rows)}
        mat = Matrix.zero(f, len(rows), len(cols))
        env = self.env
        for cidx, (u, m) in enumerate(cols):
            for (vm, xm2), c in self.d_gen[self.xalg.z_degree(m)][m].items():
                prod = env.multiply({u: f.one()}, {vm: f.one()})
                for m3, c3 in prod.items():
                    mat.rows[ridx[(m3, xm2)]][cidx] = f.add(
                        mat.rows[ridx[(m3, xm2)]][cidx], f.mul(c, c3)
                    )
        return mat

    def _check_exactness(self, bound):
        f = self.f
        mats = {n: self.field_matrix(n) for n in range(1, min(bound + 1, self.truncation) + 1)}
        # H_0 = k: the image of d_1 is the augmentation ideal
        if rank(mats[1]) != len(self.field_basis(0)) - 1:
            raise ArithmeticError("H_0 of the resolution is not one-dimensional")
        for n in range(1, min(bound, self.truncation - 1) + 1):
            ker = len(self.field_basis(n)) - rank(mats[n])
            im = rank(mats[n + 1])
            if ker != im:
                raise ArithmeticError(f"resolution not exact at degree {n}")
            self.exactness_checked_to = n


@dataclass
class DualComplex:
    resolution: MayResolution
    algebra: FreeSuperalgebra  # Lambda_s(g*) (x) S(g_0*[2])^(1)
    monos: list  # per degree, the dual monomial basis
    matrices: list  # matrices[n]: degree n -> n + 1

    def degree_dim(self, n):
        return len(self.monos[n])


def _dual_algebra(res: MayResolution) -> FreeSuperalgebra:
    """Same generator layout as the chain side, with polynomial kinds: the
    monomial tuples coincide, only the product rule differs (S vs Gamma)."""
    g = res.g
    gens = []
    for i in range(g.dim):
        if g.parities[i] == 0:
            gens.append(GeneratorSpec(f"<{g.names[i]}*>", 0, 1))
        else:
            gens.append(GeneratorSpec(f"{g.names[i]}*", 1, 1, kind="poly"))
    for i in g.even_indices:
        gens.append(GeneratorSpec(f"{g.names[i]}*[2]", 0, 2, kind="poly"))
    return FreeSuperalgebra(gens)


def dual_complex(res: MayResolution) -> DualComplex:
    """Hom_{V(g)}(X(g), k) with the signed-transpose differential."""
    f = res.f
    monos = res.xmonos
    mats = []
    for n in range(res.truncation):
        rows = len(monos[n + 1])
        cols = len(monos[n])
        mat = Matrix.zero(f, rows, cols)
        cidx = {m: c for c, m in enumerate(monos[n])}
        zero_pbw = (0,) * res.g.dim
        for r, b in enumerate(monos[n + 1]):
            img = res.d_gen[n + 1][b]
            for (vm, a), c in img.items():
                if vm != zero_pbw:
                    continue
                sgn = res.pairing_sign(a) * res.pairing_sign(b)
                if n % 2:
                    sgn = -sgn
                col = cidx[a]
                mat.rows[r][col] = f.add(mat.rows[r][col], f.mul(f.of(sgn), c))
        mats.append(mat)
    dc = DualComplex(res, _dual_algebra(res), monos, mats)
    for n in range(res.truncation - 1):
        if not (mats[n + 1] @ mats[n]).is_zero():
            raise ArithmeticError(f"(d_t*)^2 != 0 between degrees {n} and {n + 2}")
    return dc


def build_resolution(g, t=None, truncation=None, check_exactness_to=None):
    if t is None:
        t = build_twisting_cochain(g)
    if truncation is None:
        truncation = 2 * g.field.p + 2
    return MayResolution(g, t, truncation, check_exactness_to=check_exactness_to)


def vg_cohomology(g, max_degree) -> CohomologyTable:
    """Dimensions of H^n(V(g), k) for n <= max_degree."""
    res = build_resolution(g, truncation=max_degree + 1, check_exactness_to=-1)
    dc = dual_complex(res)
    dims = []
    for n in range(max_degree + 1):
        ker = dc.degree_dim(n) - rank(dc.matrices[n])
        im = rank(dc.matrices[n - 1]) if n >= 1 else 0
        dims.append((n, ker - im))
    return CohomologyTable(dims, max_degree)


# -- cocycle classes of the edge generators --------------------------------


@dataclass
class EdgeClassReport:
    even_classes: list  # (name, is_cocycle, is_coboundary)
    odd_classes: list


def _element_vector(dc: DualComplex, elem: AlgebraElement, degree):
    f = dc.resolution.f
    v = [f.zero()] * dc.degree_dim(degree)
    for m, c in elem.terms.items():
        v[dc.monos[degree].index(m)] = c
    return v


def dual_generator(dc: DualComplex, kind, i):
    """As an element: 'ext' gives <x_i*>, 'odd' gives y_i*, 'poly2' gives
    the degree-2 polynomial generator x_i*[2]."""
    res = dc.resolution
    alg = dc.algebra
    f = res.f
    if kind == "poly2":
        slot = res._g2_slot[i]
        exps = [0] * len(alg.ex_idx)
        exps[slot] = 1
        mono = SuperMonomial(0, tuple(exps))
    else:
        mono = alg.generator_monomial(i)
    return AlgebraElement.monomial(alg, f, mono)


def is_dual_coboundary(dc: DualComplex, elem: AlgebraElement, degree):
    v = _element_vector(dc, elem, degree)
    return solve(dc.matrices[degree - 1], v) is not None


def is_dual_cocycle(dc: DualComplex, elem: AlgebraElement, degree):
    v = _element_vector(dc, elem, degree)
    img = dc.matrices[degree].apply(v)
    return all(not c for c in img)


def edge_subalgebra_classes(g, truncation=None) -> EdgeClassReport:
    """The degree-2 classes x* in S(g_0*[2])^(1) and the degree-p classes
    (y*)^p, each tagged cocycle/coboundary by exact solve."""
    f = g.field
    p = f.p
    res = build_resolution(
        g, truncation=max(p + 1, 3), check_exactness_to=-1
    ) if truncation is None else build_resolution(
        g, truncation=truncation, check_exactness_to=-1
    )
    dc = dual_complex(res)
    even_classes = []
    for i in g.even_indices:
        el = dual_generator(dc, "poly2", i)
        even_classes.append(
            (
                g.names[i],
                is_dual_cocycle(dc, el, 2),
                is_dual_coboundary(dc, el, 2),
            )
        )
    odd_classes = []
    for j in g.odd_indices:
        el = dual_generator(dc, "odd", j).power(p)
        odd_classes.append(
            (
                g.names[j],
                is_dual_cocycle(dc, el, p),
                is_dual_coboundary(dc, el, p),
            )
        )
    return EdgeClassReport(even_classes, odd_classes)
