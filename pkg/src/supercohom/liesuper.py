"""Finite-dimensional Lie superalgebras, restricted structures, supermodules.

An algebra is a homogeneous basis with sparse bracket structure constants,
an optional p-map (images of even basis vectors), and an optional matrix
realization.  Validation checks the axioms exhaustively on basis tuples and
reports every violation with a witness.
"""

from __future__ import annotations

from .fields import Matrix, SuperMatrix, solve, from_columns


class LieSuperalgebra:
    def __init__(self, field, names, parities, brackets, pmap=None, matrices=None):
        """brackets: {(i, j): {k: coeff}}; missing (j, i) entries are filled
        from super antisymmetry.  pmap: {even index: {k: coeff}} or None for
        a non-restricted algebra (use {} for a restricted algebra whose even
        part is zero or has zero p-map entries declared explicitly).
        """
        self.field = field
        self.names = list(names)
        self.parities = list(parities)
        self.dim = len(self.names)
        self.brackets = {}
        for (i, j), prod in brackets.items():
            self.brackets[(i, j)] = {k: field.of(c) for k, c in prod.items() if field.of(c)}
        for (i, j) in list(self.brackets):
            if (j, i) not in self.brackets and i != j:
                # [y,x] = -(-1)^{|x||y|} [x,y]: sign -1 unless both odd
                s = self.parities[i] * self.parities[j]
                sign = field.one() if s else field.neg(field.one())
                self.brackets[(j, i)] = {
                    k: field.mul(sign, c) for k, c in self.brackets[(i, j)].items()
                }
        self.pmap = None
        if pmap is not None:
            self.pmap = {
                i: {k: field.of(c) for k, c in img.items() if field.of(c)}
                for i, img in pmap.items()
            }
        self.matrices = matrices

    # -- basic structure ------------------------------------------------
    @property
    def even_indices(self):
        return [i for i, p in enumerate(self.parities) if p == 0]

    @property
    def odd_indices(self):
        return [i for i, p in enumerate(self.parities) if p == 1]

    @property
    def restricted(self):
        return self.pmap is not None

    def zero_vector(self):
        return [self.field.zero()] * self.dim

    def basis_vector(self, i):
        v = self.zero_vector()
        v[i] = self.field.one()
        return v

    def bracket_basis(self, i, j):
        v = self.zero_vector()
        for k, c in self.brackets.get((i, j), {}).items():
            v[k] = c
        return v

    def bracket(self, u, v):
        f = self.field
        out = self.zero_vector()
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.brackets.get((i, j), {}).items():
                    out[k] = f.add(out[k], f.mul(f.mul(a, b), c))
        return out

    def pmap_basis(self, i):
        v = self.zero_vector()
        for k, c in (self.pmap or {}).get(i, {}).items():
            v[k] = c
        return v

    def parity_of_vector(self, v):
        par = None
        for i, c in enumerate(v):
            if c:
                if par is None:
                    par = self.parities[i]
                elif par != self.parities[i]:
                    return None
        return par

    def ad_matrix(self, v):
        """Matrix of ad(v) = [v, .] in the declared basis."""
        cols = [self.bracket(v, self.basis_vector(j)) for j in range(self.dim)]
        return from_columns(self.field, cols, self.dim)

    def component(self, v, parity):
        return [c if self.parities[i] == parity else self.field.zero() for i, c in enumerate(v)]

    def even_is_abelian(self):
        z = self.zero_vector()
        for i in self.even_indices:
            for j in self.even_indices:
                if self.bracket_basis(i, j) != z:
                    return False
        return True

    def matrix_of_vector(self, v):
        m = None
        for i, c in enumerate(v):
            if c:
                t = self.matrices[i].scaled(c)
                m = t if m is None else m + t
        if m is None:
            return self.matrices[0].scaled(self.field.zero())
        return m


def validate(g: LieSuperalgebra):
    """Exhaustive axiom check; returns a list of violation strings."""
    f = g.field
    report = []
    z = g.zero_vector()
    # parity additivity and super antisymmetry
    for i in range(g.dim):
        for j in range(g.dim):
            br = g.bracket_basis(i, j)
            want = (g.parities[i] + g.parities[j]) % 2
            for k, c in enumerate(br):
                if c and g.parities[k] != want:
                    report.append(
                        f"parity violation: [{g.names[i]},{g.names[j]}] has "
                        f"component {g.names[k]}"
                    )
            sign = f.one() if g.parities[i] * g.parities[j] else f.neg(f.one())
            mirror = [f.mul(sign, c) for c in g.bracket_basis(j, i)]
            if br != mirror:
                report.append(
                    f"antisymmetry violation at ({g.names[i]},{g.names[j]})"
                )
    # super Jacobi in ad-derivation form: [x,[y,z]] = [[x,y],z] + (-1)^{xy}[y,[x,z]]
    for i in range(g.dim):
        for j in range(g.dim):
            for k in range(g.dim):
                lhs = g.bracket(g.basis_vector(i), g.bracket_basis(j, k))
                t1 = g.bracket(g.bracket_basis(i, j), g.basis_vector(k))
                t2 = g.bracket(g.basis_vector(j), g.bracket_basis(i, k))
                s = f.neg(f.one()) if g.parities[i] * g.parities[j] else f.one()
                rhs = [f.add(a, f.mul(s, b)) for a, b in zip(t1, t2)]
                if lhs != rhs:
                    report.append(
                        f"Jacobi violation at ({g.names[i]},{g.names[j]},{g.names[k]})"
                    )
    if g.restricted:
        if f.p == 0:
            report.append("p-map declared over a characteristic-zero field")
        for i in g.even_indices:
            img = g.pmap_basis(i)
            if g.parity_of_vector(img) not in (None, 0):
                report.append(f"p-map image of {g.names[i]} is not even")
            # restrictedness: ad(x^[p]) = ad(x)^p
            lhs = g.ad_matrix(img)
            rhs = g.ad_matrix(g.basis_vector(i)).power(f.p)
            if lhs != rhs:
                report.append(f"ad(x^[p]) != ad(x)^p for x = {g.names[i]}")
        for i in g.odd_indices:
            if i in (g.pmap or {}):
                report.append(f"p-map defined on odd element {g.names[i]}")
    if g.matrices is not None:
        for i in range(g.dim):
            if not g.matrices[i].parity_blocks_zero(g.parities[i]):
                report.append(f"matrix of {g.names[i]} is not parity-homogeneous")
        for i in range(g.dim):
            for j in range(g.dim):
                a, b = g.matrices[i], g.matrices[j]
                s = f.one() if g.parities[i] * g.parities[j] else f.neg(f.one())
                comm = (a @ b) + (b @ a).scaled(s)
                want = g.matrix_of_vector(g.bracket_basis(i, j))
                if comm != want:
                    report.append(
                        f"matrix bracket mismatch at ({g.names[i]},{g.names[j]})"
                    )
        if g.restricted:
            for i in g.even_indices:
                if g.matrices[i].power(f.p) != g.matrix_of_vector(g.pmap_basis(i)):
                    report.append(
                        f"p-map disagrees with matrix p-th power at {g.names[i]}"
                    )
    return report


# -- canonical constructors ---------------------------------------------


def build_gl(m, n, p):
    """gl(m|n) over F_p with matrix units, super-commutator brackets, and
    the p-th matrix power as p-map.  Even units first."""
    from .fields import GF

    if m + n < 1:
        raise ValueError("need m + n >= 1")
    f = GF(p)
    d = m + n

    def sector(i):
        return 0 if i < m else 1

    pairs = [(i, j) for i in range(d) for j in range(d)]
    even_pairs = [ij for ij in pairs if sector(ij[0]) == sector(ij[1])]
    odd_pairs = [ij for ij in pairs if sector(ij[0]) != sector(ij[1])]
    order = even_pairs + odd_pairs
    index = {ij: k for k, ij in enumerate(order)}
    names = [f"e{i + 1}{j + 1}" for (i, j) in order]
    parities = [0] * len(even_pairs) + [1] * len(odd_pairs)

    brackets = {}
    for a, (i, j) in enumerate(order):
        for b, (k, l) in enumerate(order):
            out = {}
            if j == k:
                out[index[(i, l)]] = f.one()
            s = parities[a] * parities[b]
            if l == i:
                c = f.neg(f.one()) if s == 0 else f.one()
                t = index[(k, j)]
                out[t] = f.add(out.get(t, f.zero()), c)
            out = {t: c for t, c in out.items() if c}
            if out:
                brackets[(a, b)] = out

    mats = []
    for (i, j) in order:
        mm = Matrix.zero(f, d, d)
        mm.rows[i][j] = f.one()
        mats.append(SuperMatrix((m, n), (m, n), mm))

    pmap = {}
    for a, (i, j) in enumerate(order):
        if parities[a]:
            continue
        power = mats[a].power(p)
        img = {}
        for b, (k, l) in enumerate(order):
            c = power.matrix.rows[k][l]
            if c:
                img[b] = c
        pmap[a] = img
    return LieSuperalgebra(f, names, parities, brackets, pmap=pmap, matrices=mats)


def build_example(example_id, p, n=None, alphas=None, d=None):
    """The worked example algebras.

    odd_abelian(d): purely odd abelian of dimension d (restricted, g_0 = 0).
    ex_3_1_2: x even, y odd, [y,y] = 2x, non-restricted.
    ex_5_3_1: ex_3_1_2 plus x^[p] = x.
    ex_5_3_2: [y,y] = 0, [y,x] = y, x^[p] = x.
    ex_5_3_3: basis {y, x_0..x_n}, [y,y] = 2 x_0^[p], x_i^[p] = x_{i+1},
              x_n^[p] = sum alpha_i x_i.
    """
    from .fields import GF

    f = GF(p)
    one = f.one()
    if example_id == "odd_abelian":
        if not d or d < 1:
            raise ValueError("odd_abelian needs dimension d >= 1")
        return LieSuperalgebra(
            f, [f"y{i + 1}" for i in range(d)], [1] * d, {}, pmap={}
        )
    if example_id == "ex_3_1_2":
        return LieSuperalgebra(
            f, ["x", "y"], [0, 1], {(1, 1): {0: f.of(2)}}, pmap=None
        )
    if example_id == "ex_5_3_1":
        return LieSuperalgebra(
            f, ["x", "y"], [0, 1], {(1, 1): {0: f.of(2)}}, pmap={0: {0: one}}
        )
    if example_id == "ex_5_3_2":
        return LieSuperalgebra(
            f, ["x", "y"], [0, 1], {(1, 0): {1: one}}, pmap={0: {0: one}}
        )
    if example_id == "ex_5_3_3":
        if n is None or n < 0:
            raise ValueError("ex_5_3_3 needs n >= 0")
        alphas = [f.of(a) for a in (alphas or [])]
        if len(alphas) != n + 1:
            raise ValueError("ex_5_3_3 needs an alpha vector of length n + 1")
        # basis order {y, x_0, ..., x_n}
        names = ["y"] + [f"x{i}" for i in range(n + 1)]
        parities = [1] + [0] * (n + 1)
        brackets = {}
        # [y,y] = 2 x_0^[p] = 2 x_1 (or 2*sum alpha_i x_i when n = 0)
        if n >= 1:
            brackets[(0, 0)] = {2: f.of(2)}
        else:
            brackets[(0, 0)] = {
                1 + i: f.mul(f.of(2), a) for i, a in enumerate(alphas) if a
            }
        pmap = {}
        for i in range(n):
            pmap[1 + i] = {1 + i + 1: one}
        pmap[1 + n] = {1 + i: a for i, a in enumerate(alphas) if a}
        return LieSuperalgebra(f, names, parities, brackets, pmap=pmap)
    raise ValueError(f"unknown example id: {example_id}")


# -- p-power of arbitrary even elements ----------------------------------


def jacobson_p_power(g: LieSuperalgebra, v):
    """v^[p] for an even element v, from the basis p-map plus the Jacobson
    correction terms: i*s_i(a,b) is the lambda^{i-1} coefficient of
    ad(lambda a + b)^{p-1}(a)."""
    if not g.restricted:
        raise ValueError("algebra has no p-map")
    f = g.field
    p = f.p
    if g.parity_of_vector(v) not in (None, 0):
        raise ValueError("p-power of a non-even element")
    acc = g.zero_vector()  # running w^[p]
    w = g.zero_vector()  # running partial sum
    for i, c in enumerate(v):
        if not c:
            continue
        term = [f.mul(c, x) for x in g.basis_vector(i)]
        # (c b_i)^[p] = c^p b_i^[p] = c b_i^[p] over F_p
        term_p = [f.mul(c, x) for x in g.pmap_basis(i)]
        if any(w):
            for s in _jacobson_corrections(g, term, w):
                acc = [f.add(a, b) for a, b in zip(acc, s)]
        acc = [f.add(a, b) for a, b in zip(acc, term_p)]
        w = [f.add(a, b) for a, b in zip(w, term)]
    return acc


def _jacobson_corrections(g, a, b):
    """s_1..s_{p-1} for the pair (a, b)."""
    f = g.field
    p = f.p
    # poly[d] = coefficient vector of lambda^d in ad(lambda a + b)^k (a)
    poly = [g.zero_vector() for _ in range(p)]
    poly[0] = list(a)
    for _ in range(p - 1):
        new = [g.zero_vector() for _ in range(p)]
        for dd in range(p):
            if not any(poly[dd]):
                continue
            bb = g.bracket(b, poly[dd])
            new[dd] = [f.add(x, y) for x, y in zip(new[dd], bb)]
            if dd + 1 < p:
                aa = g.bracket(a, poly[dd])
                new[dd + 1] = [f.add(x, y) for x, y in zip(new[dd + 1], aa)]
        poly = new
    out = []
    for i in range(1, p):
        inv = f.inv(f.of(i))
        out.append([f.mul(inv, x) for x in poly[i - 1]])
    return out


# -- restricted subalgebra generation ------------------------------------


def _echelonize(field, vectors):
    if not vectors:
        return []
    m = Matrix(field, [list(v) for v in vectors])
    red, pivots = m.rref()
    return [red.rows[r] for r in range(len(pivots))]


def restricted_subalgebra(g: LieSuperalgebra, generators):
    """Smallest graded subspace containing the generators and closed under
    the bracket and the p-map.  Returns (subalgebra, embedding matrix whose
    columns are the sub-basis in g coordinates)."""
    if not g.restricted:
        raise ValueError("algebra is not restricted")
    f = g.field
    even = [g.component(v, 0) for v in generators]
    odd = [g.component(v, 1) for v in generators]
    even = _echelonize(f, [v for v in even if any(v)])
    odd = _echelonize(f, [v for v in odd if any(v)])
    while True:
        new_even = list(even)
        new_odd = list(odd)
        basis = [(v, 0) for v in even] + [(v, 1) for v in odd]
        for va, pa in basis:
            for vb, pb in basis:
                br = g.bracket(va, vb)
                if any(br):
                    (new_even if (pa + pb) % 2 == 0 else new_odd).append(br)
        for va, pa in basis:
            if pa == 0:
                pp = jacobson_p_power(g, va)
                if any(pp):
                    new_even.append(pp)
        new_even = _echelonize(f, new_even)
        new_odd = _echelonize(f, new_odd)
        if len(new_even) == len(even) and len(new_odd) == len(odd):
            break
        even, odd = new_even, new_odd
    sub_vectors = even + odd
    parities = [0] * len(even) + [1] * len(odd)
    names = [f"u{i}" for i in range(len(sub_vectors))]
    emb = from_columns(f, sub_vectors, g.dim)

    def coords(v):
        x = solve(emb, v)
        if x is None:
            raise ArithmeticError("closure failure: vector outside subspace")
        return x

    brackets = {}
    for i, vi in enumerate(sub_vectors):
        for j, vj in enumerate(sub_vectors):
            br = g.bracket(vi, vj)
            if any(br):
                x = coords(br)
                brackets[(i, j)] = {k: c for k, c in enumerate(x) if c}
    pmap = {}
    for i, vi in enumerate(sub_vectors):
        if parities[i] == 0:
            x = coords(jacobson_p_power(g, vi))
            pmap[i] = {k: c for k, c in enumerate(x) if c}
    sub = LieSuperalgebra(f, names, parities, brackets, pmap=pmap)
    return sub, emb


# -- PBW basis of U(g) and V(g) -------------------------------------------


class Enveloping:
    """PBW arithmetic in U(g) (restricted=False) or V(g) (restricted=True).

    Monomials are exponent tuples over the basis sorted even-first (within
    a parity, declared order).  Odd exponents are at most 1; in V(g) even
    exponents live below p and x^p rewrites to x^[p].
    """

    def __init__(self, g: LieSuperalgebra, restricted=True):
        self.g = g
        self.restricted = restricted
        if restricted and not g.restricted:
            raise ValueError("V(g) needs a restricted algebra")
        self.order = sorted(range(g.dim), key=lambda i: (g.parities[i], i))
        self.pos_of = {b: s for s, b in enumerate(self.order)}
        self.f = g.field

    def one(self):
        return {(0,) * self.g.dim: self.f.one()}

    def generator(self, i):
        e = [0] * self.g.dim
        e[self.pos_of[i]] = 1
        return {tuple(e): self.f.one()}

    def from_vector(self, v):
        out = {}
        for i, c in enumerate(v):
            if c:
                e = [0] * self.g.dim
                e[self.pos_of[i]] = 1
                out[tuple(e)] = c
        return out

    def _add_term(self, acc, mono, c):
        if not c:
            return
        v = self.f.add(acc.get(mono, self.f.zero()), c)
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)

    def _scale(self, elem, c):
        if not c:
            return {}
        return {m: self.f.mul(c, v) for m, v in elem.items()}

    def _addinto(self, acc, elem, c=None):
        for m, v in elem.items():
            self._add_term(acc, m, v if c is None else self.f.mul(c, v))

    def mul_mono_gen(self, mono, s):
        """Straightened product (monomial) * (generator at sorted position s)."""
        f = self.f
        g = self.g
        tail = max((t for t, e in enumerate(mono) if e and t > s), default=None)
        if tail is None:
            i = self.order[s]
            par = g.parities[i]
            if par == 1 and mono[s] == 1:
                # y * y = (1/2)[y, y]
                m0 = list(mono)
                m0[s] = 0
                half = f.inv(f.of(2))
                sq = [f.mul(half, c) for c in g.bracket_basis(i, i)]
                return self.mul_elem_vector({tuple(m0): f.one()}, sq)
            new = list(mono)
            new[s] += 1
            if par == 0 and self.restricted and new[s] == f.p:
                new[s] = 0
                return self.mul_elem_vector({tuple(new): f.one()}, g.pmap_basis(i))
            return {tuple(new): f.one()}
        # commute past the last letter z_t (t = tail > s)
        i, j = self.order[s], self.order[tail]
        m0 = list(mono)
        m0[tail] -= 1
        m0 = tuple(m0)
        sign = f.neg(f.one()) if g.parities[i] * g.parities[j] else f.one()
        out = {}
        # (m0 * z_j) * z_i = sign * (m0 * z_i) * z_j + m0 * [z_j, z_i]
        first = self.mul_mono_gen(m0, s)
        for m, c in first.items():
            self._addinto(out, self.mul_mono_gen(m, tail), self.f.mul(sign, c))
        br = self.g.bracket_basis(j, i)
        if any(br):
            self._addinto(out, self.mul_elem_vector({m0: f.one()}, br))
        return out

    def mul_elem_gen(self, elem, s):
        out = {}
        for m, c in elem.items():
            self._addinto(out, self.mul_mono_gen(m, s), c)
        return out

    def mul_elem_vector(self, elem, v):
        """elem * (element of g given by basis coordinates)."""
        out = {}
        for i, c in enumerate(v):
            if c:
                part = self.mul_elem_gen(elem, self.pos_of[i])
                self._addinto(out, part, c)
        return out

    def multiply(self, e1, e2):
        out = {}
        for m2, c2 in e2.items():
            part = e1
            for s, e in enumerate(m2):
                for _ in range(e):
                    part = self.mul_elem_gen(part, s)
            self._addinto(out, part, c2)
        return out

    # -- V(g) (or U of a purely odd g) as a finite-dimensional space ---
    def vg_basis(self):
        if not self.restricted and self.g.even_indices:
            raise ValueError("U(g) is infinite-dimensional")
        f = self.f
        ranges = []
        for s in range(self.g.dim):
            i = self.order[s]
            ranges.append(range(2) if self.g.parities[i] else range(f.p))
        basis = [()]
        for r in ranges:
            basis = [m + (e,) for m in basis for e in r]
        return sorted(basis)

    def monomial_parity(self, mono):
        return sum(
            e for s, e in enumerate(mono) if self.g.parities[self.order[s]]
        ) % 2

    def augmentation(self, elem):
        return elem.get((0,) * self.g.dim, self.f.zero())


def pbw_multiply(g, a, b, restricted=True):
    env = Enveloping(g, restricted=restricted)
    return env.multiply(a, b)


# -- supermodules ---------------------------------------------------------


class Supermodule:
    """dims = (even, odd); rho[i] is the SuperMatrix of the i-th basis
    element of g, in coordinates with the even module basis first."""

    def __init__(self, g: LieSuperalgebra, dims, rho):
        self.g = g
        self.dims = tuple(dims)
        self.rho = list(rho)

    @property
    def dim(self):
        return self.dims[0] + self.dims[1]

    @property
    def sdim(self):
        return self.dims[0] - self.dims[1]

    def rho_of_vector(self, v):
        f = self.g.field
        acc = None
        for i, c in enumerate(v):
            if c:
                t = self.rho[i].scaled(c)
                acc = t if acc is None else acc + t
        if acc is None:
            dd = self.dims
            return SuperMatrix(dd, dd, Matrix.zero(f, self.dim, self.dim))
        return acc


def trivial_module(g):
    f = g.field
    dd = (1, 0)
    return Supermodule(
        g, dd, [SuperMatrix(dd, dd, Matrix.zero(f, 1, 1)) for _ in range(g.dim)]
    )


def natural_module(g, m, n):
    """k^{m|n} for an algebra with an (m|n) matrix realization."""
    if g.matrices is None:
        raise ValueError("no matrix realization")
    return Supermodule(g, (m, n), list(g.matrices))


def adjoint_module(g):
    """g acting on itself; module coordinates sort the basis even-first."""
    f = g.field
    order = sorted(range(g.dim), key=lambda i: (g.parities[i], i))
    d0 = sum(1 for i in order if g.parities[i] == 0)
    dd = (d0, g.dim - d0)
    rho = []
    for i in range(g.dim):
        cols = []
        for j in order:
            br = g.bracket_basis(i, j)
            cols.append([br[k] for k in order])
        rho.append(SuperMatrix(dd, dd, from_columns(f, cols, g.dim)))
    return Supermodule(g, dd, rho)


def direct_sum(M: Supermodule, N: Supermodule):
    f = M.g.field
    dd = (M.dims[0] + N.dims[0], M.dims[1] + N.dims[1])
    rho = []
    for i in range(M.g.dim):
        a, b = M.rho[i], N.rho[i]
        mm = Matrix.zero(f, dd[0] + dd[1], dd[0] + dd[1])
        _paste_block(mm, a.matrix, _offsets(M.dims, N.dims))
        _paste_block(mm, b.matrix, _offsets_second(M.dims, N.dims))
        rho.append(SuperMatrix(dd, dd, mm))
    return Supermodule(M.g, dd, rho)


def _offsets(dM, dN):
    # even part of M at 0, odd part of M at dM0 + dN0
    return (0, dM[0] + dN[0], dM)


def _offsets_second(dM, dN):
    return (dM[0], dM[0] + dN[0] + dM[1], dN)


def _paste_block(target, src, off):
    re, ro, dims = off
    d0 = dims[0]
    for r in range(src.nrows):
        tr = re + r if r < d0 else ro + (r - d0)
        for c in range(src.ncols):
            tc = re + c if c < d0 else ro + (c - d0)
            target.rows[tr][tc] = src.rows[r][c]


def parity_flip(M: Supermodule):
    """Pi(M): grading flipped; a acts as (-1)^{|a|} a."""
    f = M.g.field
    dd = (M.dims[1], M.dims[0])
    d0 = M.dims[0]
    n = M.dim
    perm = list(range(d0, n)) + list(range(d0))  # new index -> old index
    rho = []
    for i in range(M.g.dim):
        src = M.rho[i].matrix
        mm = Matrix.zero(f, n, n)
        for r in range(n):
            for c in range(n):
                v = src.rows[perm[r]][perm[c]]
                mm.rows[r][c] = f.neg(v) if M.g.parities[i] else v
        rho.append(SuperMatrix(dd, dd, mm))
    return Supermodule(M.g, dd, rho)


def tensor_layout(M: Supermodule, N: Supermodule):
    """Sorted (even-first) pair basis of M (x) N with its index map."""
    pairs = [
        (r, s, (_par(M, r) + _par(N, s)) % 2)
        for r in range(M.dim)
        for s in range(N.dim)
    ]
    pairs.sort(key=lambda t: (t[2], t[0], t[1]))
    index = {(r, s): k for k, (r, s, _) in enumerate(pairs)}
    d0 = sum(1 for _, _, p in pairs if p == 0)
    return pairs, index, (d0, len(pairs) - d0)


def tensor_module(M: Supermodule, N: Supermodule):
    """M tensor N with z.(m@n) = (z.m)@n + (-1)^{|z||m|} m@(z.n)."""
    f = M.g.field
    pairs, index, dd = tensor_layout(M, N)
    rho = []
    for i in range(M.g.dim):
        zi = M.g.parities[i]
        mm = Matrix.zero(f, len(pairs), len(pairs))
        A, B = M.rho[i].matrix, N.rho[i].matrix
        for (r, s, _p) in pairs:
            col = index[(r, s)]
            for r2 in range(M.dim):
                v = A.rows[r2][r]
                if v:
                    row = index[(r2, s)]
                    mm.rows[row][col] = f.add(mm.rows[row][col], v)
            sgn = f.neg(f.one()) if zi and _par(M, r) else f.one()
            for s2 in range(N.dim):
                v = B.rows[s2][s]
                if v:
                    row = index[(r, s2)]
                    mm.rows[row][col] = f.add(mm.rows[row][col], f.mul(sgn, v))
        rho.append(SuperMatrix(dd, dd, mm))
    return Supermodule(M.g, dd, rho)


def dual_module(M: Supermodule):
    """M* with (z.f)(m) = -(-1)^{|z||f|} f(z.m)."""
    f = M.g.field
    dd = M.dims
    rho = []
    for i in range(M.g.dim):
        zi = M.g.parities[i]
        src = M.rho[i].matrix
        mm = Matrix.zero(f, M.dim, M.dim)
        for k in range(M.dim):
            for j in range(M.dim):
                # coefficient of e_k* in z.e_j*
                v = src.rows[j][k]
                if v:
                    s = f.neg(f.one())
                    if zi and _par(M, j):
                        s = f.one()
                    mm.rows[k][j] = f.mul(s, v)
        rho.append(SuperMatrix(dd, dd, mm))
    return Supermodule(M.g, dd, rho)


def _par(M, r):
    return 0 if r < M.dims[0] else 1


def check_supermodule(g: LieSuperalgebra, M: Supermodule):
    """Bracket compatibility, parity homogeneity, restricted compatibility."""
    f = g.field
    report = []
    for i in range(g.dim):
        if not M.rho[i].parity_blocks_zero(g.parities[i]):
            report.append(f"rho({g.names[i]}) not parity-homogeneous")
    for i in range(g.dim):
        for j in range(g.dim):
            s = f.one() if g.parities[i] * g.parities[j] else f.neg(f.one())
            lhs = (M.rho[i] @ M.rho[j]) + (M.rho[j] @ M.rho[i]).scaled(s)
            rhs = M.rho_of_vector(g.bracket_basis(i, j))
            if lhs != rhs:
                report.append(f"rho([{g.names[i]},{g.names[j]}]) mismatch")
    if g.restricted:
        for i in g.even_indices:
            if M.rho[i].power(f.p) != M.rho_of_vector(g.pmap_basis(i)):
                report.append(f"rho({g.names[i]})^p != rho({g.names[i]}^[p])")
    return report


def restrict_module(M: Supermodule, sub: LieSuperalgebra, emb: Matrix):
    """Pull the action back along a subalgebra embedding."""
    rho = []
    for j in range(sub.dim):
        col = [emb.rows[r][j] for r in range(emb.nrows)]
        rho.append(M.rho_of_vector(col))
    return Supermodule(sub, M.dims, rho)


def regular_module(g: LieSuperalgebra):
    """V(g) (or U(g) of a purely odd g) acting on itself by left
    multiplication."""
    env = Enveloping(g, restricted=g.restricted)
    basis = env.vg_basis()
    order = sorted(
        range(len(basis)), key=lambda k: (env.monomial_parity(basis[k]), basis[k])
    )
    index = {basis[k]: r for r, k in enumerate(order)}
    sorted_basis = [basis[k] for k in order]
    d0 = sum(1 for m in sorted_basis if env.monomial_parity(m) == 0)
    dd = (d0, len(sorted_basis) - d0)
    f = g.field
    rho = []
    for i in range(g.dim):
        mm = Matrix.zero(f, len(sorted_basis), len(sorted_basis))
        zi = env.generator(i)
        for c, mono in enumerate(sorted_basis):
            prod = env.multiply(zi, {mono: f.one()})
            for m2, v in prod.items():
                mm.rows[index[m2]][c] = v
        rho.append(SuperMatrix(dd, dd, mm))
    return Supermodule(g, dd, rho)
