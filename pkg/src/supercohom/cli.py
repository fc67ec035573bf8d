"""Command-line front end.

Subcommands: check, cohomology, variety, verify-paper.  Input documents are
JSON with integer or "a/b" fraction scalars (no floats).  Exit codes:
0 ok, 1 assertion or validation failure, 2 parse error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time

from .fields import GF, QQ, Matrix, SuperMatrix
from .liesuper import (
    LieSuperalgebra,
    Supermodule,
    build_example,
    build_gl,
    check_supermodule,
    trivial_module,
    validate,
)
from . import koszul
from . import resolution
from . import varieties


class ParseError(ValueError):
    pass


EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_BOUND = 3


# -- input documents --------------------------------------------------------


def _field_of(doc):
    f = doc.get("field")
    if not isinstance(f, dict):
        raise ParseError("missing 'field' object")
    if "p" in f:
        try:
            return GF(int(f["p"]))
        except (ValueError, ArithmeticError) as e:
            raise ParseError(f"bad characteristic: {e}")
    if f.get("char") == 0:
        return QQ
    raise ParseError("field must be {'p': prime} or {'char': 0}")


def _scalar(field, v):
    if isinstance(v, float):
        raise ParseError("floats are not accepted; use integers or 'a/b'")
    try:
        return field.of(v)
    except (ValueError, ArithmeticError) as e:
        raise ParseError(f"bad scalar {v!r}: {e}")


def _sparse_map(field, pairs):
    out = {}
    for k, c in pairs:
        c = _scalar(field, c)
        if c:
            out[int(k)] = c
    return out


def parse_algebra(doc, field) -> LieSuperalgebra:
    spec = doc.get("algebra")
    if not isinstance(spec, dict):
        raise ParseError("missing 'algebra' object")
    if "builder" in spec:
        b = spec["builder"]
        kind = b.get("kind")
        if kind == "gl":
            if field.p == 0:
                raise ParseError("gl builder needs a finite field")
            return build_gl(int(b["m"]), int(b["n"]), field.p)
        if kind == "example":
            return build_example(
                b["id"],
                field.p,
                n=b.get("n"),
                alphas=b.get("alphas"),
                d=b.get("d"),
            )
        raise ParseError(f"unknown builder kind {kind!r}")
    try:
        basis = spec["basis"]
        names = [e["name"] for e in basis]
        parities = [int(e["parity"]) for e in basis]
        brackets = {}
        for i, j, pairs in spec.get("brackets", []):
            brackets[(int(i), int(j))] = _sparse_map(field, pairs)
        pmap = None
        if "pmap" in spec:
            pmap = {int(i): _sparse_map(field, pairs) for i, pairs in spec["pmap"]}
        matrices = None
        if "matrices" in spec:
            dims = tuple(spec["matrix_dims"])
            matrices = [
                SuperMatrix(dims, dims, Matrix.from_entries(field, rows))
                for rows in spec["matrices"]
            ]
        return LieSuperalgebra(
            field, names, parities, brackets, pmap=pmap, matrices=matrices
        )
    except (KeyError, TypeError, IndexError) as e:
        raise ParseError(f"malformed algebra description: {e}")


def parse_module(doc, g, name) -> Supermodule:
    mods = doc.get("modules", {})
    if name == "trivial" and name not in mods:
        return trivial_module(g)
    if name not in mods:
        raise ParseError(f"module {name!r} not present in the document")
    spec = mods[name]
    try:
        dims = tuple(int(x) for x in spec["dims"])
        rho = [
            SuperMatrix(dims, dims, Matrix.from_entries(g.field, rows))
            for rows in spec["matrices"]
        ]
    except (KeyError, TypeError, IndexError) as e:
        raise ParseError(f"malformed module {name!r}: {e}")
    if len(rho) != g.dim:
        raise ParseError(f"module {name!r} needs one matrix per basis element")
    return Supermodule(g, dims, rho)


def parse_group(doc, field):
    grp = doc.get("group")
    if not isinstance(grp, dict) or "generators" not in grp:
        raise ParseError("characteristic-zero commands need 'group.generators'")
    gens = [Matrix.from_entries(field, rows) for rows in grp["generators"]]
    return gens


def load_document(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(str(e))


# -- reports ----------------------------------------------------------------


def emit(report, fmt, timing=None):
    if timing is not None:
        report["timing_seconds"] = timing
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, default=str))
        return
    # csv: tables as degree,dimension; point lists as coordinate rows
    res = report.get("results", {})
    if "dims" in res:
        print("degree,dimension")
        for n, d in res["dims"]:
            print(f"{n},{d}")
    elif "points" in res:
        print(res.get("header", "basis coordinates in declared order"))
        for pt in res["points"]:
            print(",".join(str(c) for c in pt))
    else:
        for k in sorted(res):
            print(f"{k},{res[k]}")


# -- subcommands ------------------------------------------------------------


def cmd_check(args):
    doc = load_document(args.input)
    field = _field_of(doc)
    g = parse_algebra(doc, field)
    rep = validate(g)
    module_reports = {}
    for name in sorted(doc.get("modules", {})):
        M = parse_module(doc, g, name)
        module_reports[name] = check_supermodule(g, M)
    ok = not rep and all(not v for v in module_reports.values())
    emit(
        {
            "command": "check",
            "results": {
                "algebra_violations": rep,
                "module_violations": module_reports,
                "ok": ok,
            },
        },
        args.format,
    )
    return 0 if ok else EXIT_FAIL


def cmd_cohomology(args):
    doc = load_document(args.input)
    field = _field_of(doc)
    g = parse_algebra(doc, field)
    max_degree = args.max_degree
    if max_degree is None:
        max_degree = 2 * field.p + 2 if field.p else 6
    t0 = time.time()
    if args.which == "lie":
        M = parse_module(doc, g, args.module)
        table = koszul.cohomology(g, M, max_degree)
    else:
        if args.module != "trivial":
            raise ParseError("vg cohomology is implemented for trivial coefficients")
        try:
            table = resolution.vg_cohomology(g, max_degree)
        except resolution.ScopeError as e:
            print(str(e), file=sys.stderr)
            return EXIT_BOUND
    emit(
        {
            "command": "cohomology",
            "which": args.which,
            "max_degree": max_degree,
            "results": {"dims": table.dims},
            "truncation": table.truncation,
        },
        args.format,
        round(time.time() - t0, 3) if args.timing else None,
    )
    return 0


def cmd_variety(args):
    doc = load_document(args.input)
    field = _field_of(doc)
    t0 = time.time()
    try:
        if args.kind == "char0-support":
            if field.p != 0:
                raise ParseError("char0-support needs {'char': 0}")
            g = parse_algebra(doc, field)
            gens = parse_group(doc, field)
            group = varieties.group_closure(gens, cap=args.bound)
            name = args.module
            if name == "regular":
                sm = varieties.smash_group_regular(g, group)
            elif name == "lambda":
                sm = varieties.smash_lambda_regular(g, group)
            elif name == "trivial":
                sm = varieties.smash_trivial(g, group)
            else:
                raise ParseError(
                    "char0-support modules: trivial, lambda, or regular"
                )
            vectors = [
                tuple(_scalar(field, c) for c in v)
                for v in doc.get("test_vectors", [])
            ]
            if not vectors:
                raise ParseError("char0-support needs 'test_vectors'")
            rep = varieties.char0_support(group, sm, vectors)
            results = {
                "orbits": [[str(c) for c in o] for o in rep.orbits],
                "points": [[str(c) for c in o] for o in rep.member_orbits],
                "compatible": rep.compatible,
                "count": len(rep.member_orbits),
            }
        else:
            g = parse_algebra(doc, field)
            if args.kind == "cone":
                pts = varieties.enumerate_cone(g, args.bound)
                results = {"points": pts, "count": len(pts)}
            elif args.kind == "cr":
                pts = varieties.enumerate_cr(g, args.r, args.bound)
                results = {"points": pts, "count": len(pts)}
            elif args.kind == "support":
                M = parse_module(doc, g, args.module)
                rep = varieties.support_points(g, M, args.bound)
                results = {
                    "points": rep.member_points,
                    "count": len(rep.member_points),
                    "tested": rep.tested_points,
                    "is_zero_only": rep.is_zero_only,
                    "dimension_estimate": rep.dimension_estimate,
                }
            else:
                raise ParseError(f"unknown variety kind {args.kind!r}")
    except varieties.BoundExceeded as e:
        print(str(e), file=sys.stderr)
        return EXIT_BOUND
    except varieties.GroupClosureError as e:
        print(str(e), file=sys.stderr)
        return EXIT_BOUND
    emit(
        {
            "command": "variety",
            "kind": args.kind,
            "results": results,
            "header": "basis coordinates in declared order",
        },
        args.format,
        round(time.time() - t0, 3) if args.timing else None,
    )
    return 0


# -- the golden suite --------------------------------------------------------


def _golden_3_1_1(p, _seed):
    lines = []
    ok = True
    for d in (2, 3):
        g = build_example("odd_abelian", p, d=d)
        dims = koszul.cohomology(g, trivial_module(g), 7).as_list()
        want = [math.comb(n + d - 1, d - 1) for n in range(7)]
        good = dims == want
        ok &= good
        lines.append((f"odd_abelian({d}) H(g,k) degrees 0..6", good, dims, want))
    return ok, lines


def _golden_3_1_2(p, _seed):
    g = build_example("ex_3_1_2", p)
    dims = koszul.cohomology(g, trivial_module(g), 5).as_list()
    want = [1, 1, 0, 0, 0]
    return dims == want, [(f"ex_3_1_2 H(g,k) degrees 0..4 at p={p}", dims == want, dims, want)]


def _golden_5_3_1(p, _seed):
    g = build_example("ex_5_3_1", p)
    dims = resolution.vg_cohomology(g, 6).as_list()
    want = [1] * 7
    lines = [(f"ex_5_3_1 H(V(g),k) degrees 0..6 at p={p}", dims == want, dims, want)]
    res = resolution.build_resolution(g, truncation=4, check_exactness_to=-1)
    dc = resolution.dual_complex(res)
    x2 = resolution.dual_generator(dc, "poly2", 0)
    ys = resolution.dual_generator(dc, "odd", 1)
    rel = resolution.is_dual_coboundary(dc, x2 - ys * ys, 2)
    alone = resolution.is_dual_coboundary(dc, x2, 2)
    lines.append(("class relation [x*] = [(y*)^2]", rel and not alone, (rel, alone), (True, False)))
    return all(l[1] for l in lines), lines


def _golden_5_3_2(p, _seed):
    g = build_example("ex_5_3_2", p)
    dims = resolution.vg_cohomology(g, 2 * p).as_list()
    want = [1 if n % p == 0 else 0 for n in range(2 * p + 1)]
    good = dims == want
    return good, [(f"ex_5_3_2 H(V(g),k) degrees 0..{2 * p} at p={p}", good, dims, want)]


def _golden_5_3_3(p, seed):
    rng = random.Random(seed)
    lines = []
    ok = True
    for n in (1, 2):
        alphas = [rng.randrange(p) for _ in range(n + 1)]
        g = build_example("ex_5_3_3", p, n=n, alphas=alphas)
        res = resolution.build_resolution(g, truncation=4, check_exactness_to=2)
        dc = resolution.dual_complex(res)
        f = g.field
        xs = [resolution.dual_generator(dc, "poly2", 1 + i) for i in range(n + 1)]
        ys = resolution.dual_generator(dc, "odd", 0)
        al = [f.of(a) for a in alphas]
        listed = [xs[n].scaled(al[0]), xs[0] + xs[n].scaled(al[1]) - ys * ys]
        for i in range(1, n):
            listed.append(xs[i] + xs[n].scaled(al[i + 1]))
        good = all(
            resolution.is_dual_coboundary(dc, el, 2)
            for el in listed
            if not el.is_zero()
        )
        ok &= good
        lines.append((f"ex_5_3_3 n={n} alphas={alphas} coboundary list", good, None, None))
    return ok, lines


def _golden_f1(p, _seed):
    lines = []
    ok = True
    for m in (1, 2):
        good = koszul.verify_f1_identity(m, p)
        ok &= good
        lines.append((f"d(f1) = str . f1 for gl({m}|{m}) at p={p}", good, None, None))
    return ok, lines


def _golden_f2(p, _seed):
    lines = []
    ok = True
    for m in (1, 2):
        good = koszul.verify_f2_identity(m, p)
        ok &= good
        lines.append((f"d(f2) identity for gl({m}|{m}) at p={p}", good, None, None))
    good = koszul.verify_f2_consequence(1, p)
    ok &= good
    lines.append((f"d(-f2 f1^(p-1)) = str (x) f1^p for m=1 at p={p}", good, None, None))
    return ok, lines


def _golden_nilradical(p, seed):
    from .superalgebra import GeneratorSpec, nilradical_decomposition, truncated_algebra

    rng = random.Random(seed)
    field = GF(p)
    ok = True
    for _ in range(20):
        gens = [
            GeneratorSpec(
                f"g{i}",
                rng.randrange(2),
                rng.randrange(1, 4),
                kind=rng.choice(["poly", "divided"]),
            )
            for i in range(rng.randrange(1, 4))
        ]
        A = truncated_algebra(field, gens, rng.randrange(2, 5))
        res = nilradical_decomposition(A)
        brute = 0
        for i in range(A.dim):
            v = [field.zero()] * A.dim
            v[i] = field.one()
            if A.is_nilpotent_vector(v):
                brute += 1
        ok &= len(res.nilradical) == brute and res.verified_nilpotent
    return ok, [("20 random truncated algebras: corollary formula vs brute force", ok, None, None)]


def _golden_tensor(p, seed):
    rng = random.Random(seed)
    ok = True
    for g in [build_example("odd_abelian", p, d=2), build_gl(1, 1, p)]:
        for _ in range(6):
            M = varieties.random_supermodule(g, rng)
            N = varieties.random_supermodule(g, rng)
            r1 = varieties.parity_directsum_checks(g, M, N)
            r2 = varieties.tensor_support_check(g, M, N)
            ok &= r1.ok and r2.ok and r2.details["equality"]
    return ok, [("direct-sum union, parity flip, tensor subset+equality", ok, None, None)]


def _golden_divisibility(_p, seed):
    rng = random.Random(seed)
    V = varieties.char0_odd_space(2)
    swap = Matrix.from_entries(QQ, [[0, 1], [1, 0]])
    groups = [[Matrix.identity(QQ, 2)], varieties.group_closure([swap])]
    import itertools

    vectors = [
        tuple(QQ.of(a) for a in t) for t in itertools.product([-1, 0, 1, 2], repeat=2)
    ]
    ok = True
    lines = []
    for G in groups:
        mods = [
            varieties.smash_trivial(V, G),
            varieties.smash_lambda_regular(V, G),
            varieties.smash_group_regular(V, G),
        ] + [varieties.random_smash_module(V, G, rng) for _ in range(2)]
        for sm in mods:
            rep = varieties.char0_support(G, sm, vectors)
            div = varieties.two_divisibility_check(sm, rep.member_orbits)
            ok &= rep.compatible and div.ok
        for _ in range(2):
            A = varieties.random_smash_module(V, G, rng)
            B = varieties.random_smash_module(V, G, rng)
            ok &= varieties.char0_tensor_support_check(G, A, B, vectors).ok
    dual = [m.transpose() for m in groups[1]]
    inv = varieties.invariant_dimensions(dual, range(5))
    mol = varieties.molien_dimensions(dual, range(5))
    good = inv == [1, 1, 2, 2, 3] == mol
    ok &= good
    lines.append(("two-divisibility and tensor equality over Q", ok, None, None))
    lines.append(("S(V*)^G dims vs Molien oracle", good, inv, [1, 1, 2, 2, 3]))
    return ok, lines


def _golden_complexity(p, _seed):
    g = varieties.char0_odd_space(2) if p == 0 else build_example("odd_abelian", p, d=2)
    from .liesuper import regular_module

    rep = varieties.complexity_sequence(g, trivial_module(g), steps=15)
    good1 = rep.cover_dims[:11] == [4 * (n + 1) for n in range(11)]
    good2 = rep.growth_exponent is not None and 0.9 <= rep.growth_exponent <= 1.1
    repP = varieties.complexity_sequence(g, regular_module(g), steps=4)
    good3 = repP.complexity == 0 and repP.support_dim in (0, None)
    ok = good1 and good2 and good3
    return ok, [
        ("dim P_n = 4(n+1) for n <= 10 over Lambda(k^{0|2})", good1, rep.cover_dims[:11], [4 * (n + 1) for n in range(11)]),
        ("growth exponent in [0.9, 1.1]", good2, rep.growth_exponent, "[0.9, 1.1]"),
        ("projective module: cx 0, support {0}", good3, (repP.complexity, repP.support_dim), (0, 0)),
    ]


GOLDENS = {
    "3.1.1": _golden_3_1_1,
    "3.1.2": _golden_3_1_2,
    "5.3.1": _golden_5_3_1,
    "5.3.2": _golden_5_3_2,
    "5.3.3": _golden_5_3_3,
    "f1": _golden_f1,
    "f2": _golden_f2,
    "nilradical": _golden_nilradical,
    "tensor": _golden_tensor,
    "divisibility": _golden_divisibility,
    "complexity": _golden_complexity,
}


def cmd_verify_paper(args):
    if args.example not in GOLDENS:
        print(f"unknown example id {args.example!r}; known: {sorted(GOLDENS)}", file=sys.stderr)
        return EXIT_PARSE
    t0 = time.time()
    ok, lines = GOLDENS[args.example](args.p, args.seed)
    for label, good, got, want in lines:
        status = "pass" if good else "FAIL"
        print(f"[{status}] {label}")
        if not good and want is not None:
            print(f"    expected: {want}")
            print(f"    computed: {got}")
    if args.timing:
        print(f"# {round(time.time() - t0, 3)} s")
    return 0 if ok else EXIT_FAIL


def make_parser():
    ap = argparse.ArgumentParser(
        prog="supercohom",
        description="Exact cohomology and support varieties of Lie superalgebras",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("input", help="JSON input document, or - for stdin")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--timing", action="store_true")

    p_check = sub.add_parser("check", help="validate an input document")
    common(p_check)
    p_check.set_defaults(fn=cmd_check)

    p_coh = sub.add_parser("cohomology", help="Lie or V(g) cohomology table")
    common(p_coh)
    p_coh.add_argument("--module", default="trivial")
    p_coh.add_argument("--max-degree", type=int, default=None)
    p_coh.add_argument("--which", choices=["lie", "vg"], default="lie")
    p_coh.set_defaults(fn=cmd_cohomology)

    p_var = sub.add_parser("variety", help="cone, support, or C_r point sets")
    common(p_var)
    p_var.add_argument(
        "--kind", choices=["cone", "support", "cr", "char0-support"], required=True
    )
    p_var.add_argument("--r", type=int, default=1)
    p_var.add_argument("--bound", type=int, default=10 ** 6)
    p_var.add_argument("--module", default="trivial")
    p_var.set_defaults(fn=cmd_variety)

    p_ver = sub.add_parser("verify-paper", help="run a worked-example golden")
    p_ver.add_argument("--example", required=True)
    p_ver.add_argument("--p", type=int, default=3)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--timing", action="store_true")
    p_ver.set_defaults(fn=cmd_verify_paper)
    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ArithmeticError, ValueError) as e:
        print(f"failure: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
