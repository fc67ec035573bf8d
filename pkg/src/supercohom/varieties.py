"""Variety-level computations: self-commuting cones, rank-variety supports,
freeness oracles, commuting varieties C_r, characteristic-zero orbit
supports, divisibility and complexity checks.

A "variety" here is its set of rational points plus membership predicates;
everything is tested pointwise by exact rank computations.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

from .fields import Matrix, from_columns, kernel_basis, rank, solve, span_dimension
from .fields import QQ, SuperMatrix
from .liesuper import (
    Enveloping,
    LieSuperalgebra,
    Supermodule,
    adjoint_module,
    direct_sum,
    dual_module,
    natural_module,
    parity_flip,
    regular_module,
    tensor_layout,
    tensor_module,
    trivial_module,
)


class BoundExceeded(RuntimeError):
    pass


# -- the self-commuting cone ------------------------------------------------


def odd_vector_from_coords(g, coords):
    """Coefficient vector over g from coordinates in the odd basis."""
    v = g.zero_vector()
    for c, i in zip(coords, g.odd_indices):
        v[i] = c
    return v


def cone_membership(g, x) -> bool:
    """x an odd element (full coordinates): is [x, x] = 0?"""
    if g.parity_of_vector(x) not in (None, 1):
        raise ValueError("cone membership is defined for odd elements")
    return not any(g.bracket(x, x))


def enumerate_cone(g, bound=10 ** 6):
    """All F_p-rational points of {x in g_1 : [x,x] = 0}, lex order."""
    f = g.field
    if f.p == 0:
        raise ValueError("enumeration needs a finite field")
    d = len(g.odd_indices)
    if f.p ** d > bound:
        raise BoundExceeded(f"{f.p}^{d} points exceed the bound {bound}")
    out = []
    for coords in itertools.product(range(f.p), repeat=d):
        x = odd_vector_from_coords(g, [f.of(c) for c in coords])
        if cone_membership(g, x):
            out.append(tuple(f.of(c) for c in coords))
    return out


# -- freeness tests ---------------------------------------------------------


def free_over_odd_point(M: Supermodule, g, x) -> bool:
    """M restricted to <x> (x a nonzero self-commuting odd element) is free
    iff rank(rho(x)) doubles to dim M."""
    if not any(x):
        raise ValueError("freeness over the zero subalgebra is not defined")
    r = M.rho_of_vector(x)
    sq = r @ r
    if not sq.matrix.is_zero():
        raise ArithmeticError("rho(x)^2 != 0: x is not a cone point")
    return 2 * rank(r.matrix) == M.dim


@dataclass
class SupportReport:
    tested_points: int
    member_points: list
    is_zero_only: bool
    dimension_estimate: object  # (dim, exact_flag) or None


def _coordinate_subspace_dimension(f, points, d, p):
    """Max dimension of a full coordinate subspace contained in the point
    set; exact flag when those subspaces cover every point."""
    point_set = set(points)
    patterns = {frozenset(i for i, c in enumerate(pt) if c) for pt in point_set}
    verified = []
    for pat in sorted(patterns, key=len, reverse=True):
        if any(pat <= v for v in verified):
            continue
        full = True
        for coords in itertools.product(range(p), repeat=len(pat)):
            pt = [f.zero()] * d
            for i, c in zip(sorted(pat), coords):
                pt[i] = f.of(c)
            if tuple(pt) not in point_set:
                full = False
                break
        if full:
            verified.append(pat)
    covered = all(
        any(frozenset(i for i, c in enumerate(pt) if c) <= v for v in verified)
        for pt in point_set
    )
    dim = max((len(v) for v in verified), default=0)
    return dim, covered


def support_points(g, M: Supermodule, bound=10 ** 6) -> SupportReport:
    """X_g(M): the cone points where M is not free over <x>, plus 0."""
    f = g.field
    cone = enumerate_cone(g, bound)
    members = []
    for coords in cone:
        if not any(coords):
            members.append(coords)
            continue
        x = odd_vector_from_coords(g, coords)
        if not free_over_odd_point(M, g, x):
            members.append(coords)
    d = len(g.odd_indices)
    dim_est = _coordinate_subspace_dimension(f, members, d, f.p)
    return SupportReport(
        len(cone), members, len(members) == 1, dim_est
    )


def free_over_exterior(M: Supermodule, g, vectors) -> bool:
    """Freeness over Lambda(V) for V spanned by pairwise supercommuting
    self-commuting odd elements acting on M: compares dim M with
    2^{|V|} dim(M / sum of images)."""
    f = g.field
    ops = [M.rho_of_vector(v) for v in vectors]
    for a in ops:
        if not (a @ a).matrix.is_zero():
            raise ArithmeticError("a spanning vector does not square to zero")
    for a, b in itertools.combinations(ops, 2):
        anti = (a @ b) + (b @ a)
        if not anti.matrix.is_zero():
            raise ArithmeticError("spanning vectors do not supercommute")
    cols = []
    for a in ops:
        for j in range(M.dim):
            cols.append([a.matrix.rows[i][j] for i in range(M.dim)])
    rad_dim = span_dimension(f, cols)
    top = M.dim - rad_dim
    return M.dim == (2 ** len(vectors)) * top


# -- commuting varieties C_r ------------------------------------------------


@dataclass
class CrTuple:
    alphas: list  # r even elements (full coordinates)
    beta: list  # one odd element


def cr_membership(g, tup: CrTuple, r) -> bool:
    if not g.restricted:
        raise ValueError("C_r needs a restricted algebra")
    if len(tup.alphas) != r:
        raise ValueError("tuple shape does not match r")
    from .liesuper import jacobson_p_power

    f = g.field
    half = f.inv(f.of(2))
    alphas, beta = tup.alphas, tup.beta
    for a in alphas:
        if g.parity_of_vector(a) not in (None, 0):
            return False
    if g.parity_of_vector(beta) not in (None, 1):
        return False
    for i in range(r):
        for j in range(i + 1, r):
            if any(g.bracket(alphas[i], alphas[j])):
                return False
        if any(g.bracket(alphas[i], beta)):
            return False
    for i in range(r - 1):
        if any(jacobson_p_power(g, alphas[i])):
            return False
    want = [f.mul(half, c) for c in g.bracket(beta, beta)]
    return jacobson_p_power(g, alphas[r - 1]) == want


def enumerate_cr(g, r, bound=10 ** 6):
    """Exhaustive rational points of C_r; deterministic lex order."""
    f = g.field
    p = f.p
    ne, no = len(g.even_indices), len(g.odd_indices)
    total = p ** (r * ne + no)
    if total > bound:
        raise BoundExceeded(f"{total} candidate tuples exceed the bound {bound}")
    out = []
    for flat in itertools.product(range(p), repeat=r * ne + no):
        alphas = []
        for i in range(r):
            a = g.zero_vector()
            for c, idx in zip(flat[i * ne: (i + 1) * ne], g.even_indices):
                a[idx] = f.of(c)
            alphas.append(a)
        beta = g.zero_vector()
        for c, idx in zip(flat[r * ne:], g.odd_indices):
            beta[idx] = f.of(c)
        if cr_membership(g, CrTuple(alphas, beta), r):
            out.append(tuple(f.of(c) for c in flat))
    return out


# -- support-variety formal properties (pointwise checks) -------------------


@dataclass
class PropertyReport:
    points_tested: int
    failures: list
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures


def _support_set(g, M, bound):
    return set(support_points(g, M, bound).member_points)


def parity_directsum_checks(g, M, N, bound=10 ** 6) -> PropertyReport:
    """The union law for direct sums and Pi-invariance."""
    sM = _support_set(g, M, bound)
    sN = _support_set(g, N, bound)
    failures = []
    union = _support_set(g, direct_sum(M, N), bound)
    if union != sM | sN:
        failures.append("directsum-union")
    if _support_set(g, parity_flip(M), bound) != sM:
        failures.append("parity-flip")
    return PropertyReport(len(sM | sN), failures, {"M": sorted(sM), "N": sorted(sN)})


def tensor_support_check(g, M, N, bound=10 ** 6) -> PropertyReport:
    """Subset law for tensor products, with empirical equality logged."""
    sM = _support_set(g, M, bound)
    sN = _support_set(g, N, bound)
    sT = _support_set(g, tensor_module(M, N), bound)
    failures = []
    if not sT <= (sM & sN):
        failures.append("tensor-subset")
    return PropertyReport(
        len(sM | sN),
        failures,
        {"equality": sT == (sM & sN), "tensor": sorted(sT)},
    )


def random_supermodule(g, rng: random.Random, max_dim=12) -> Supermodule:
    """A random supermodule assembled from known ones by sums, tensor
    products, parity flips, and duals; always passes check_supermodule."""
    atoms = [trivial_module(g), regular_module(g), adjoint_module(g)]
    if g.matrices is not None:
        m = g.matrices[0].row_dims
        atoms.append(natural_module(g, m[0], m[1]))
    atoms = [a for a in atoms if a.dim <= max_dim] or [trivial_module(g)]
    M = rng.choice(atoms)
    for _ in range(rng.randrange(3)):
        op = rng.randrange(4)
        if op == 0:
            other = rng.choice(atoms)
            if M.dim + other.dim <= max_dim:
                M = direct_sum(M, other)
        elif op == 1:
            other = rng.choice(atoms)
            if M.dim * other.dim <= max_dim:
                M = tensor_module(M, other)
        elif op == 2:
            M = parity_flip(M)
        else:
            M = dual_module(M)
    return M


# -- complexity via minimal resolutions -------------------------------------


@dataclass
class ComplexityReport:
    cover_dims: list
    growth_exponent: object  # float estimate or None
    complexity: int
    support_dim: object


class _PlainModule:
    """Matrices of the generator actions; enough to iterate radical covers."""

    def __init__(self, field, mats):
        self.field = field
        self.mats = mats
        self.dim = mats[0].nrows if mats else 0


def _module_from_supermodule(M: Supermodule):
    return _PlainModule(M.g.field, [r.matrix for r in M.rho])


def _check_local(env: Enveloping):
    """The augmentation ideal must be nilpotent for covers to be minimal."""
    f = env.f
    basis = env.vg_basis()
    idx = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    unit = (0,) * env.g.dim
    span = [i for i, m in enumerate(basis) if m != unit]
    gens = [env.generator(i) for i in range(env.g.dim)]
    current = set(span)
    for _ in range(n + 1):
        nxt = set()
        for i in current:
            for z in gens:
                prod = env.multiply(z, {basis[i]: f.one()})
                for m2 in prod:
                    nxt.add(idx[m2])
        if not nxt:
            return True
        if nxt == current:
            break
        current = nxt
    # nilpotent iff the chain reaches the empty set
    return False


def complexity_sequence(g, M: Supermodule, steps=8) -> ComplexityReport:
    """Dims of a minimal projective resolution over V(g) (or Lambda(g_1) for
    purely odd g), plus a least-squares growth exponent of log dim P_n."""
    env = Enveloping(g, restricted=g.restricted)
    if not _check_local(env):
        raise ValueError("V(g) is not local: minimal covers need a unipotent algebra")
    f = g.field
    basis = env.vg_basis()
    bidx = {m: i for i, m in enumerate(basis)}
    algdim = len(basis)
    # generator action matrices on the regular module
    reg = []
    for i in range(g.dim):
        mat = Matrix.zero(f, algdim, algdim)
        zi = env.generator(i)
        for c, mono in enumerate(basis):
            for m2, v in env.multiply(zi, {mono: f.one()}).items():
                mat.rows[bidx[m2]][c] = v
        reg.append(mat)
    # action of a PBW monomial on any module
    def monomial_action(mats, mono):
        acc = Matrix.identity(f, mats[0].nrows)
        for s, e in enumerate(mono):
            zi = env.order[s]
            for _ in range(e):
                acc = acc @ mats[zi]
        return acc

    cur = _module_from_supermodule(M)
    dims = []
    for _ in range(steps):
        if cur.dim == 0:
            dims.append(0)
            continue
        # radical = sum of generator images
        cols = []
        for a in cur.mats:
            for j in range(cur.dim):
                cols.append([a.rows[i][j] for i in range(cur.dim)])
        mat = from_columns(f, cols, cur.dim) if cols else Matrix.zero(f, cur.dim, 0)
        red, pivots = mat.rref() if cols else (mat, [])
        rad_cols = [
            [mat.rows[i][c] for i in range(cur.dim)] for c in pivots
        ]
        rad_dim = len(rad_cols)
        top = cur.dim - rad_dim
        if top == 0:
            raise ArithmeticError("radical equals the module: not nilpotent")
        dims.append(top * algdim)
        # lift a basis of M / rad M
        lift = list(rad_cols)
        gens_idx = []
        eye = Matrix.identity(f, cur.dim)
        for j in range(cur.dim):
            cand = [eye.rows[i][j] for i in range(cur.dim)]
            if span_dimension(f, [list(v) for v in lift] + [cand]) > len(lift):
                lift.append(cand)
                gens_idx.append(j)
        assert len(gens_idx) == top
        # cover map V^top -> M over the field basis (pbw mono, slot)
        cov_cols = []
        for t in range(top):
            target = gens_idx[t]
            for mono in basis:
                act = monomial_action(cur.mats, mono)
                cov_cols.append([act.rows[i][target] for i in range(cur.dim)])
        cov = from_columns(f, cov_cols, cur.dim)
        ker = kernel_basis(cov)
        if not ker:
            cur = _PlainModule(f, [Matrix.zero(f, 0, 0) for _ in range(g.dim)])
            continue
        K = from_columns(f, ker, len(cov_cols))
        # generator actions on the free module V^top, restricted to the kernel
        new_mats = []
        for i in range(g.dim):
            free_cols = []
            for kvec in ker:
                img = [f.zero()] * len(cov_cols)
                pos = 0
                for t in range(top):
                    chunk = kvec[pos: pos + algdim]
                    pos += algdim
                    if not any(chunk):
                        continue
                    col = reg[i].apply(chunk)
                    base = t * algdim
                    for rr, vv in enumerate(col):
                        img[base + rr] = f.add(img[base + rr], vv)
                x = solve(K, img)
                if x is None:
                    raise ArithmeticError("kernel is not a submodule")
                free_cols.append(x)
            new_mats.append(from_columns(f, free_cols, len(ker)))
        cur = _PlainModule(f, new_mats)
    # least-squares slope of log dim P_n against log n, fitted on the tail
    # half where the polynomial growth dominates lower-order terms
    pts = [(n, d) for n, d in enumerate(dims) if n >= 1 and d > 0]
    pts = pts[len(pts) // 2:]
    if len(pts) >= 2 and any(d != pts[0][1] for _, d in pts):
        xs = [math.log(n) for n, _ in pts]
        ys = [math.log(d) for _, d in pts]
        xbar = sum(xs) / len(xs)
        ybar = sum(ys) / len(ys)
        num = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
        den = sum((x - xbar) ** 2 for x in xs)
        exponent = num / den
    elif pts:
        exponent = 0.0
    else:
        exponent = None
    if exponent is None:
        cx = 0
    else:
        cx = int(round(exponent)) + 1
    sup = None
    if g.field.p and len(g.odd_indices) <= 6:
        rep = support_points(g, M)
        sup = rep.dimension_estimate[0]
    return ComplexityReport(dims, exponent, cx, sup)


# -- characteristic-zero smash products -------------------------------------


class GroupClosureError(RuntimeError):
    pass


def group_closure(gen_mats, cap=10 ** 4):
    """Multiplicative closure of exact rational matrices; returns the list
    of elements (identity first) or raises when the cap is exceeded."""
    if not gen_mats:
        raise ValueError("need at least one generator (use the identity)")
    f = gen_mats[0].field
    n = gen_mats[0].nrows
    eye = Matrix.identity(f, n)

    def key(m):
        return tuple(tuple(r) for r in m.rows)

    elements = {key(eye): eye}
    frontier = [eye]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gen_mats:
                c = a @ b
                k = key(c)
                if k not in elements:
                    if len(elements) >= cap:
                        raise GroupClosureError("group closure cap exceeded")
                    elements[k] = c
                    nxt.append(c)
        frontier = nxt
    out = list(elements.values())
    return out


@dataclass
class SmashModule:
    """A Lambda(V) # kG supermodule over Q: a Supermodule over the purely
    odd abelian algebra of V plus one even matrix per group element."""

    module: Supermodule
    sigma: list  # Matrix per group element, aligned with the closure list


def smash_compatible(group, v_action, sm: SmashModule):
    """g rho(v) g^{-1} = rho(g.v) for every group element and basis vector."""
    M = sm.module
    g_alg = M.g
    f = g_alg.field
    d = len(g_alg.odd_indices)
    for gi, gmat in enumerate(group):
        smat = sm.sigma[gi]
        inv = _matrix_inverse(smat)
        for j in range(d):
            v = g_alg.basis_vector(g_alg.odd_indices[j])
            lhs = smat @ sm.module.rho_of_vector(v).matrix @ inv
            gv = [v_action[gi].rows[i][j] for i in range(d)]
            target = g_alg.zero_vector()
            for c, idx in zip(gv, g_alg.odd_indices):
                target[idx] = c
            if lhs != sm.module.rho_of_vector(target).matrix:
                return False
    return True


def _matrix_inverse(m):
    f = m.field
    n = m.nrows
    aug = Matrix(f, [list(r) + list(e) for r, e in zip(m.rows, Matrix.identity(f, n).rows)])
    red, pivots = aug.rref()
    if pivots != list(range(n)):
        raise ArithmeticError("matrix not invertible")
    return Matrix(f, [r[n:] for r in red.rows])


@dataclass
class OrbitSupportReport:
    orbits: list  # canonical representatives
    member_orbits: list  # representatives whose orbit lies in the support
    compatible: bool


def char0_support(group, sm: SmashModule, test_vectors) -> OrbitSupportReport:
    """Partition test vectors into G-orbits and apply the rank-1 freeness
    test to one representative per orbit."""
    M = sm.module
    g_alg = M.g
    f = g_alg.field
    compat = smash_compatible(group, group, sm)
    orbits = {}
    for vec in test_vectors:
        vec = tuple(f.of(c) for c in vec)
        orbit = {tuple(gm.apply(list(vec))) for gm in group}
        canon = min(orbit)
        orbits.setdefault(canon, canon)
    members = []
    for canon in sorted(orbits):
        if not any(canon):
            members.append(canon)
            continue
        x = g_alg.zero_vector()
        for c, idx in zip(canon, g_alg.odd_indices):
            x[idx] = c
        if not free_over_odd_point(M, g_alg, x):
            members.append(canon)
    return OrbitSupportReport(sorted(orbits), members, compat)


@dataclass
class DivisibilityReport:
    codimension: int
    power: int
    divides: bool
    sdim_zero_when_positive: bool

    @property
    def ok(self):
        return self.divides and self.sdim_zero_when_positive


def two_divisibility_check(sm: SmashModule, detected_support_vectors) -> DivisibilityReport:
    """d = dim V - dim span(support vectors); then 2^d | dim M, and
    sdim M = 0 whenever d > 0."""
    M = sm.module
    f = M.g.field
    d_total = len(M.g.odd_indices)
    vecs = [list(v) for v in detected_support_vectors if any(v)]
    d = d_total - span_dimension(f, vecs)
    divides = M.dim % (2 ** d) == 0
    sdim_ok = True if d == 0 else (M.sdim == 0)
    return DivisibilityReport(d, 2 ** d, divides, sdim_ok)


# -- invariants of S(V*)^G and the Molien oracle ----------------------------


def _sym_power_matrix(B: Matrix, n):
    """Matrix of the induced action on degree-n polynomials in the dual
    variables, monomial basis in lex order."""
    f = B.field
    d = B.nrows
    monos = sorted(
        (tuple(e) for e in _compositions(n, d)), reverse=True
    )
    idx = {m: i for i, m in enumerate(monos)}
    cols = []
    for m in monos:
        # image of the monomial: product over variables of (row image)^e
        poly = {(0,) * d: f.one()}
        for var, e in enumerate(m):
            for _ in range(e):
                new = {}
                for mono2, c in poly.items():
                    for j in range(d):
                        b = B.rows[j][var]
                        if not b:
                            continue
                        m3 = list(mono2)
                        m3[j] += 1
                        k = tuple(m3)
                        v = f.add(new.get(k, f.zero()), f.mul(c, b))
                        if v:
                            new[k] = v
                        else:
                            new.pop(k, None)
                poly = new
        col = [f.zero()] * len(monos)
        for mono2, c in poly.items():
            col[idx[mono2]] = c
        cols.append(col)
    return from_columns(f, cols, len(monos))


def _compositions(n, d):
    if d == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, d - 1):
            yield (first,) + rest


def invariant_dimensions(group_on_dual, degrees):
    """dim S^n(V*)^G per degree, by exact fixed-subspace computation."""
    f = group_on_dual[0].field
    out = []
    for n in degrees:
        mats = [_sym_power_matrix(B, n) for B in group_on_dual]
        dim = mats[0].nrows
        stacked = []
        for m in mats:
            for i in range(dim):
                row = list(m.rows[i])
                row[i] = f.sub(row[i], f.one())
                stacked.append(row)
        out.append(len(kernel_basis(Matrix(f, stacked, ncols=dim))))
    return out


def molien_dimensions(group_on_dual, degrees):
    """The independent oracle: group-average of graded traces."""
    f = group_on_dual[0].field
    order = f.of(len(group_on_dual))
    out = []
    for n in degrees:
        total = f.zero()
        for B in group_on_dual:
            m = _sym_power_matrix(B, n)
            tr = f.zero()
            for i in range(m.nrows):
                tr = f.add(tr, m.rows[i][i])
            total = f.add(total, tr)
        avg = f.div(total, order)
        if getattr(avg, "denominator", 1) != 1:
            raise ArithmeticError("Molien average is not an integer")
        out.append(int(avg))
    return out


# -- building char-0 smash modules ------------------------------------------


def char0_odd_space(d) -> LieSuperalgebra:
    """The purely odd abelian algebra of V = k^{0|d} over Q."""
    return LieSuperalgebra(QQ, [f"v{i + 1}" for i in range(d)], [1] * d, {})


def _det(f, rows):
    n = len(rows)
    if n == 0:
        return f.one()
    if n == 1:
        return rows[0][0]
    total = f.zero()
    sign = f.one()
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total = f.add(total, f.mul(f.mul(sign, rows[0][j]), _det(f, minor)))
        sign = f.neg(sign)
    return total


def _exterior_action(f, h: Matrix, subsets):
    """Matrix of the exterior-power action on wedge monomials e_S."""
    idx = {S: i for i, S in enumerate(subsets)}
    mat = Matrix.zero(f, len(subsets), len(subsets))
    for c, S in enumerate(subsets):
        k = len(S)
        for T in subsets:
            if len(T) != k:
                continue
            sub = [[h.rows[t][s] for s in S] for t in T]
            d = _det(f, sub)
            if d:
                mat.rows[idx[T]][c] = d
    return mat


def smash_trivial(g, group) -> SmashModule:
    f = g.field
    return SmashModule(
        trivial_module(g), [Matrix.identity(f, 1) for _ in group]
    )


def _regular_mono_subsets(g):
    """Exterior subsets in the order used by regular_module(g)."""
    env = Enveloping(g, restricted=g.restricted)
    basis = env.vg_basis()
    order = sorted(
        range(len(basis)), key=lambda k: (env.monomial_parity(basis[k]), basis[k])
    )
    subsets = []
    for k in order:
        mono = basis[k]
        subsets.append(tuple(i for i, e in enumerate(mono) if e))
    return subsets


def smash_lambda_regular(g, group) -> SmashModule:
    """Lambda(V) as a module over itself, with G acting by exterior powers."""
    f = g.field
    M = regular_module(g)
    subsets = _regular_mono_subsets(g)
    sigma = [_exterior_action(f, h, subsets) for h in group]
    return SmashModule(M, sigma)


def smash_group_regular(g, group) -> SmashModule:
    """The regular module of Lambda(V) # kG."""
    f = g.field
    d = len(g.odd_indices)
    subsets = []
    for k in range(d + 1):
        subsets.extend(itertools.combinations(range(d), k))
    pairs = [(S, gi) for S in subsets for gi in range(len(group))]
    pairs.sort(key=lambda t: (len(t[0]) % 2, t))
    index = {key: i for i, key in enumerate(pairs)}
    dim = len(pairs)
    d0 = sum(1 for S, _ in pairs if len(S) % 2 == 0)
    dd = (d0, dim - d0)
    rho = []
    for i in range(d):
        mat = Matrix.zero(f, dim, dim)
        for c, (S, gi) in enumerate(pairs):
            if i in S:
                continue
            before = sum(1 for j in S if j < i)
            sign = f.one() if before % 2 == 0 else f.neg(f.one())
            T = tuple(sorted(S + (i,)))
            mat.rows[index[(T, gi)]][c] = sign
        rho.append(SuperMatrix(dd, dd, mat))
    module = Supermodule(g, dd, rho)
    # group multiplication table via matrix products
    gkey = {tuple(tuple(r) for r in h.rows): i for i, h in enumerate(group)}
    sigma = []
    for hi, h in enumerate(group):
        mat = Matrix.zero(f, dim, dim)
        ext = _exterior_action(f, h, subsets)
        sidx = {S: i for i, S in enumerate(subsets)}
        for c, (S, gi) in enumerate(pairs):
            prod = h @ group[gi]
            pg = gkey[tuple(tuple(r) for r in prod.rows)]
            for T in subsets:
                v = ext.rows[sidx[T]][sidx[S]]
                if v:
                    mat.rows[index[(T, pg)]][c] = v
        sigma.append(mat)
    return SmashModule(module, sigma)


def smash_direct_sum(a: SmashModule, b: SmashModule) -> SmashModule:
    from .liesuper import _offsets, _offsets_second, _paste_block

    M, N = a.module, b.module
    module = direct_sum(M, N)
    f = M.g.field
    sigma = []
    for sa, sb in zip(a.sigma, b.sigma):
        mm = Matrix.zero(f, module.dim, module.dim)
        _paste_block(mm, sa, _offsets(M.dims, N.dims))
        _paste_block(mm, sb, _offsets_second(M.dims, N.dims))
        sigma.append(mm)
    return SmashModule(module, sigma)


def smash_tensor(a: SmashModule, b: SmashModule) -> SmashModule:
    M, N = a.module, b.module
    module = tensor_module(M, N)
    f = M.g.field
    pairs, index, _ = tensor_layout(M, N)
    sigma = []
    for sa, sb in zip(a.sigma, b.sigma):
        mm = Matrix.zero(f, module.dim, module.dim)
        for (r, s, _p) in pairs:
            c = index[(r, s)]
            for r2 in range(M.dim):
                va = sa.rows[r2][r]
                if not va:
                    continue
                for s2 in range(N.dim):
                    vb = sb.rows[s2][s]
                    if vb:
                        mm.rows[index[(r2, s2)]][c] = f.mul(va, vb)
        sigma.append(mm)
    return SmashModule(module, sigma)


def smash_parity_flip(a: SmashModule) -> SmashModule:
    M = a.module
    f = M.g.field
    module = parity_flip(M)
    d0 = M.dims[0]
    n = M.dim
    perm = list(range(d0, n)) + list(range(d0))
    sigma = []
    for sa in a.sigma:
        mm = Matrix.zero(f, n, n)
        for r in range(n):
            for c in range(n):
                mm.rows[r][c] = sa.rows[perm[r]][perm[c]]
        sigma.append(mm)
    return SmashModule(module, sigma)


def random_smash_module(g, group, rng: random.Random, max_dim=10) -> SmashModule:
    atoms = [
        smash_trivial(g, group),
        smash_lambda_regular(g, group),
        smash_group_regular(g, group),
    ]
    atoms = [a for a in atoms if a.module.dim <= max_dim] or atoms[:1]
    M = rng.choice(atoms)
    for _ in range(rng.randrange(3)):
        op = rng.randrange(3)
        if op == 0:
            other = rng.choice(atoms)
            if M.module.dim + other.module.dim <= max_dim:
                M = smash_direct_sum(M, other)
        elif op == 1:
            other = rng.choice(atoms)
            if M.module.dim * other.module.dim <= max_dim:
                M = smash_tensor(M, other)
        else:
            M = smash_parity_flip(M)
    return M


def char0_tensor_support_check(group, a: SmashModule, b: SmashModule, test_vectors):
    """Support of a tensor product versus the intersection, on orbit sets;
    equality is the characteristic-zero theorem."""
    sa = set(char0_support(group, a, test_vectors).member_orbits)
    sb = set(char0_support(group, b, test_vectors).member_orbits)
    st = set(char0_support(group, smash_tensor(a, b), test_vectors).member_orbits)
    failures = []
    if not st <= (sa & sb):
        failures.append("tensor-subset")
    if st != (sa & sb):
        failures.append("tensor-equality")
    return PropertyReport(
        len(test_vectors), failures, {"M": sorted(sa), "N": sorted(sb), "tensor": sorted(st)}
    )
