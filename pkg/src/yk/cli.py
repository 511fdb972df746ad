"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage (including an
invalid shape or a specialization that hits a pole).
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import models, symfun, yangian
from .diagrams import DiagramError, enumerate_pp, format_shape, parse_shape
from .polyalg import (AlphabetError, OperatorFactory, PowerSumPoly, format_mon, make_mon,
                      operator_identity_check)
from .scalar import ModelParams, ParseError, PoleError, Scalar, format_poly, parse
from .yangian import norm

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- JSON forms -----------------------------------------------------------

def scalar_to_json(s: Scalar) -> dict:
    return {"num": format_poly(s.numerator), "den": format_poly(s.denominator)}


def scalar_from_json(obj: dict) -> Scalar:
    return parse(obj["num"]) / parse(obj["den"])


def poly_to_json(p: PowerSumPoly) -> list:
    return [{"mon": [list(f) for f in m], "coeff": scalar_to_json(c)}
            for m, c in p.sorted_terms()]


def poly_from_json(items: list, N: int = 1) -> PowerSumPoly:
    terms = {}
    for it in items:
        terms[make_mon([tuple(f) for f in it["mon"]])] = scalar_from_json(it["coeff"])
    return PowerSumPoly(terms, N)


def _path_json(path):
    return [list(b) for b in path]


# -- parameters -----------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _params(args, N=None) -> ModelParams:
    N = getattr(args, "layers", 1) if N is None else N
    if N < 1:
        raise UsageError("--layers must be >= 1")
    spec = {}
    for name in ("h1", "h2"):
        val = getattr(args, name, None)
        if val is not None:
            spec[name] = _rational(val)
    w_text = getattr(args, "w", None) or "w"
    try:
        w_val = parse(w_text)
    except ParseError as exc:
        raise UsageError(f"bad --w: {exc}") from exc
    return ModelParams(N=N, w=w_val, specialization=spec or None)


def _shape(text: str, three_d: bool, N: int):
    try:
        pi = parse_shape(text, three_d=three_d)
    except (DiagramError, ValueError) as exc:
        raise UsageError(f"invalid shape {text!r}: {exc}") from exc
    if pi.height > N:
        raise UsageError(f"shape {text!r} needs {pi.height} layers")
    return pi


def _spec(x: Scalar, params: ModelParams) -> Scalar:
    return params.specialize(x)


# -- commands -------------------------------------------------------------

def _symfun_record(s, params):
    return {
        "shape": format_shape(s.shape),
        "normalization_path": _path_json(s.path),
        "polynomial": poly_to_json(s.poly),
        "eigenvalue": scalar_to_json(_spec(symfun.eigenvalue(s.shape, params.w), params)),
        "norm": scalar_to_json(_spec(norm(s.shape, params.N), params)),
    }


def _symfun_text(s, params):
    return "\n".join([
        f"shape: {format_shape(s.shape)}",
        f"path: {' '.join(str(tuple(b)) for b in s.path)}",
        f"eigenvalue: {_spec(symfun.eigenvalue(s.shape, params.w), params)}",
        f"norm: {_spec(norm(s.shape, params.N), params).factored()}",
        f"polynomial: {s.poly}",
    ])


def cmd_compute_y(args):
    params = _params(args, N=1)
    pi = _shape(args.shape, False, 1)
    s = symfun.build(pi, params)
    return EXIT_OK, (_symfun_record(s, params) if args.format == "json" else _symfun_text(s, params))


def cmd_compute_3jack(args):
    params = _params(args)
    pi = _shape(args.pp, True, params.N)
    s = symfun.build(pi, params)
    return EXIT_OK, (_symfun_record(s, params) if args.format == "json" else _symfun_text(s, params))


def cmd_spectrum(args):
    params = _params(args)
    rows = models.spectrum(args.degree, params)
    if args.format == "json":
        return EXIT_OK, [{"shape": format_shape(e.shape), "c": scalar_to_json(e.c),
                          "norm": scalar_to_json(e.norm)} for e in rows]
    return EXIT_OK, "\n".join(f"{format_shape(e.shape)}\t{e.c}\t{e.norm.factored()}" for e in rows)


def cmd_norms(args):
    params = _params(args)
    out = []
    for d in range(args.degree + 1):
        for pi in enumerate_pp(d, params.N):
            paths_ok = None
            if args.check_paths:
                paths_ok = yangian.path_norms_consistent(pi, params.N)
            out.append({"shape": format_shape(pi),
                        "norm": scalar_to_json(_spec(norm(pi, params.N), params)),
                        "paths_consistent": paths_ok})
    code = EXIT_FAIL if any(r["paths_consistent"] is False for r in out) else EXIT_OK
    if args.format == "json":
        return code, out
    return code, "\n".join(f"{r['shape']}\t{scalar_from_json(r['norm']).factored()}" for r in out)


def _suite_yangian(args, params):
    rep = yangian.verify_relations(args.jmax, args.jmax, args.degree, params)
    return [{k: (str(v) if k == "witness" else v) for k, v in r.items()} for r in rep]


def _suite_operators(args, params):
    F = OperatorFactory(params)
    w = params.w
    psi = params.psi0
    from .scalar import sigma3
    rows = []
    dims = ["3d"] + (["2d"] if params.N == 1 else [])
    for dim in dims:
        g = lambda n: F.get(f"{n}_{dim}")  # noqa: E731
        W0_rhs = g("psi3").scale(Fraction(1, 6)) + g("psi2").scale((w - psi * sigma3 / 3) / 2)
        checks = [
            ("W0", g("W0"), W0_rhs),
            ("E1", g("E1"), g("e1") + g("e0").scale(w)),
            ("Eminus1", g("Eminus1"), -g("f1") - g("f0").scale(w)),
            ("psi3_e0", g("psi3").commutator(g("e0")),
             g("e1").scale(6) + g("e0").scale(2 * psi * sigma3)),
        ]
        for name, lhs, rhs in checks:
            r = operator_identity_check(lhs, rhs, args.degree)
            r["identity"] = f"{name}_{dim}"
            rows.append(r)
    if params.N == 1:
        r = operator_identity_check(F.get("W0_3d"), F.get("W0_2d"), args.degree)
        r["identity"] = "W0_3d_vs_2d"
        rows.append(r)
    return rows


def _suite_symfun(args, params):
    shapes = [pi for d in range(args.degree + 1) for pi in enumerate_pp(d, params.N)]
    if args.sample:
        rng = random.Random(args.seed)
        shapes = sorted(rng.sample(shapes, min(args.sample, len(shapes))), key=lambda p: p.sort_key())
    out = []
    for pi in shapes:
        r = symfun.verify_symfun(symfun.build(pi, params.N), params)
        r["shape"] = format_shape(pi)
        out.append(r)
    return out


def _suite_models(args, params):
    mode = "2d" if params.N == 1 else "3d"
    ok, _, _ = models.z0_routes_agree(args.degree, params, mode)
    rows = [{"check": "z0_routes", "status": "pass" if ok else "fail"}]
    h = models.z_hierarchy(1, args.degree, params, mode)
    good = all(h.homogeneous(d) == models.w_minus1_path_sum(d, params) for d in range(args.degree + 1))
    rows.append({"check": "w_minus1_paths", "status": "pass" if good else "fail"})
    c = models.cauchy_check(args.degree, params, mode)
    rows.append({"check": "cauchy", "status": c["status"],
                 "full_space_equal": c["full_space_equal"]})
    return rows


SUITES = {"yangian": _suite_yangian, "operators": _suite_operators,
          "symfun": _suite_symfun, "models": _suite_models}


def cmd_verify(args):
    params = _params(args)
    rows = SUITES[args.suite](args, params)
    failed = [r for r in rows if r.get("status") == "fail"]
    code = EXIT_FAIL if failed else EXIT_OK
    if args.format == "json":
        return code, rows
    return code, f"{args.suite}: {len(rows) - len(failed)}/{len(rows)} passed"


def cmd_relations(args):
    params = _params(args)
    rows = _suite_yangian(args, params)
    code = EXIT_FAIL if any(r["status"] == "fail" for r in rows) else EXIT_OK
    return code, rows


def _mode_arg(args, params):
    if args.model == "2d" and params.N != 1:
        raise UsageError("--model 2d needs --layers 1")
    return args.model


def cmd_expand_z(args):
    params = _params(args)
    mode = _mode_arg(args, params)
    M = _rational(args.M) if args.M is not None else None
    z = models.z0_expand(args.degree, params, mode, M)
    rows = []
    numeric = {}
    if args.t is not None:
        for shape, pre, arg, val in z.evaluate(_rational(args.t)):
            numeric[shape] = (arg, val)
    for term in z.terms:
        row = {"shape": format_shape(term.shape), "prefactor": scalar_to_json(term.prefactor),
               "exponent": scalar_to_json(term.exponent), "polynomial": poly_to_json(term.poly)}
        if term.shape in numeric:
            arg, val = numeric[term.shape]
            row["t_exponent"] = str(arg)
            row["value"] = repr(val)
        rows.append(row)
    if args.format == "json":
        return EXIT_OK, rows
    return EXIT_OK, "\n".join(f"{r['shape']}\t{scalar_from_json(r['prefactor'])}"
                              f"\texp(t*({scalar_from_json(r['exponent'])}))" for r in rows)


def cmd_hierarchy(args):
    params = _params(args)
    mode = _mode_arg(args, params)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    p = models.z_hierarchy(args.n, args.degree, params, mode)
    return EXIT_OK, (poly_to_json(p) if args.format == "json" else str(p))


def cmd_operator(args):
    params = _params(args)
    name = args.op
    m = re.fullmatch(r"(e|f|psi)(\d+)", name)
    if m:
        label, j = m.group(1), int(m.group(2))
        mm = yangian.mode_matrix(label, j, args.degree, params)
        rows = [{"row": format_shape(r), "col": format_shape(c), "value": scalar_to_json(_spec(v, params))}
                for r, c, v in mm.triplets()]
        return EXIT_OK, rows
    try:
        op = OperatorFactory(params).get(name)
    except (KeyError, ValueError, AlphabetError) as exc:
        raise UsageError(f"unknown operator {name!r}: {exc}") from exc
    rows = []
    for d in range(args.degree + 1):
        if not 0 <= d + op.shift <= args.degree:
            continue
        for (r, c), v in sorted(op.block(d).items(), key=lambda t: (t[0][1], t[0][0])):
            rows.append({"row": format_mon(r, params.N), "col": format_mon(c, params.N),
                         "value": scalar_to_json(_spec(v, params))})
    return EXIT_OK, rows


# -- parser ---------------------------------------------------------------

def _common(p, layers=True):
    if layers:
        p.add_argument("--layers", type=int, default=1, help="number of alphabets N")
    p.add_argument("--w", default="w", help="shift w: 'w' or a rational")
    p.add_argument("--h1", help="specialize h1 to a rational")
    p.add_argument("--h2", help="specialize h2 to a rational")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="yk", description="Y_lambda, 3-Jack polynomials and "
                                 "the affine Yangian of gl(1) in exact arithmetic")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute-y", help="Y_lambda for a 2D partition")
    p.add_argument("--shape", required=True)
    _common(p, layers=False)
    p.set_defaults(fn=cmd_compute_y)

    p = sub.add_parser("compute-3jack", help="3-Jack polynomial for a plane partition")
    p.add_argument("--pp", required=True)
    _common(p)
    p.set_defaults(fn=cmd_compute_3jack)

    for name, fn, extra in (("spectrum", cmd_spectrum, False), ("norms", cmd_norms, True)):
        p = sub.add_parser(name)
        p.add_argument("--degree", type=int, default=4)
        if extra:
            p.add_argument("--check-paths", action="store_true",
                           help="also check the product of E^2 along every growth path")
        _common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--jmax", type=int, default=2)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--sample", type=int, default=0, help="check a random sample of shapes")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("relations", help="Yangian relation report")
    p.add_argument("--jmax", type=int, default=2)
    p.add_argument("--degree", type=int, default=4)
    _common(p)
    p.set_defaults(fn=cmd_relations)

    p = sub.add_parser("expand-z", help="truncated Z_0")
    p.add_argument("--model", choices=("2d", "3d"), default="2d")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--M", help="evaluation parameter (default N)")
    p.add_argument("--t", help="rational t for numeric values")
    _common(p)
    p.set_defaults(fn=cmd_expand_z)

    p = sub.add_parser("hierarchy", help="exp(W_{-n}/n) . 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--model", choices=("2d", "3d"), default="2d")
    p.add_argument("--degree", type=int, default=4)
    _common(p)
    p.set_defaults(fn=cmd_hierarchy)

    p = sub.add_parser("operator", help="export an operator as JSON triplets")
    p.add_argument("--op", required=True, help="polynomial operator name or e<j>, f<j>, psi<j>")
    p.add_argument("--degree", type=int, default=3)
    _common(p)
    p.set_defaults(fn=cmd_operator)
    return ap


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "degree", 0) is not None and getattr(args, "degree", 0) < 0:
        print("error: --degree must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, payload = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PoleError as exc:
        print(f"error: specialization hits a pole: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (symfun.SymFunError, DiagramError, AlphabetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(payload, str):
        out.write(payload + "\n")
    else:
        out.write(json.dumps(payload, indent=2) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
