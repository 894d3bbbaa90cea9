"""Command-line interface: ``planeaut <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource bound exceeded.
"""

import argparse
import json
import sys

from .automorphisms import (PlaneAut, diagonalize_finite_order, invert,
                            jvdk_decompose, order_of)
from .certcheck import check_text
from .coordinates import find_partner, is_coordinate, residual_coordinate_check
from .corpus import format_results, run_corpus
from .errors import (NotAnAutomorphism, ParseError, PlaneAutError,
                     ResourceBound, SchemaError)
from .parser import parse_polynomial, parse_ring
from .plane import (PlaneCertificate, PlaneInput, analyze,
                    residual_fiber_sweep, russell_sathaye_check)
from .rings import ZZ, DvrLocal
from .serialize import (coordinate_certificate_to_json, dumps, load_document,
                        poly_from_json, report_to_json, triple_to_json,
                        audit_to_json)

OK, FAILED, USAGE, BOUND = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit(args, payload, text):
    if args.json:
        print(dumps(payload))
    else:
        print(text)


def _pair(args):
    R = parse_ring(args.ring)
    vars = tuple(args.vars.split())
    return R, PlaneAut(parse_polynomial(args.F, R, vars), parse_polynomial(args.G, R, vars))


def cmd_decompose(args):
    _, phi = _pair(args)
    try:
        word = jvdk_decompose(phi)
    except NotAnAutomorphism as exc:
        _emit(args, {"automorphism": False, "stage": exc.stage, "detail": exc.detail},
              f"not an automorphism ({exc.stage}): {exc.detail}")
        return FAILED
    letters = [repr(l.as_plane_aut()) for l in word.letters]
    _emit(args, {"automorphism": True, "letters": letters}, "\n".join(f"{l.kind}: {s}" for l, s in zip(word.letters, letters)))
    return OK


def cmd_invert(args):
    _, phi = _pair(args)
    try:
        inv = invert(phi)
    except NotAnAutomorphism as exc:
        _emit(args, {"automorphism": False, "stage": exc.stage}, f"not an automorphism ({exc.stage})")
        return FAILED
    _emit(args, {"inverse": [repr(inv.F), repr(inv.G)]}, repr(inv))
    return OK


def cmd_order(args):
    _, phi = _pair(args)
    try:
        res = order_of(phi, bound=args.bound)
    except NotAnAutomorphism as exc:
        _emit(args, {"automorphism": False, "stage": exc.stage}, f"not an automorphism ({exc.stage})")
        return FAILED
    _emit(args, {"order": res.kind, "value": res.value}, repr(res))
    return OK


def cmd_diagonalize(args):
    R, phi = _pair(args)
    d = diagonalize_finite_order(phi, args.n)
    fmt = R.format
    _emit(args, {"U": repr(d.U), "V": repr(d.V), "alpha": fmt(d.alpha), "beta": fmt(d.beta)},
          f"U = {d.U!r}\nV = {d.V!r}\nalpha = {fmt(d.alpha)}\nbeta = {fmt(d.beta)}")
    return OK


def cmd_is_coordinate(args):
    R = parse_ring(args.ring)
    f = parse_polynomial(args.f, R, tuple(args.vars.split()))
    res = is_coordinate(f)
    if not res.accepted:
        _emit(args, {"accepted": False, "reason": res.reason, "detail": res.detail},
              f"Reject: {res.reason} ({res.detail}); strategy-limited")
        return OK
    h = find_partner(f, res.certificate)
    payload = {"accepted": True, "partner": repr(h), "certificate": coordinate_certificate_to_json(res.certificate)}
    _emit(args, payload, f"Accept; partner {h!r}; {len(res.certificate.letters)} letter(s)")
    return OK


def cmd_residual(args):
    R = parse_ring(args.ring)
    if not isinstance(R, DvrLocal):
        print("residual needs a DVR ring such as Z_(p) or Q[t]_(t)", file=sys.stderr)
        return USAGE
    W = parse_polynomial(args.W, R, tuple(args.vars.split()))
    rep = residual_coordinate_check(W, seminormal=args.seminormal)
    payload = {"verdict": rep.verdict, "flags": rep.flags,
               "fibers": [{"prime": f.prime, "field": f.field, "accepted": f.accepted, "reason": f.reason}
                          for f in rep.fibers]}
    lines = [f"{f.prime} over {f.field}: {'Accept' if f.accepted else 'Reject ' + f.reason}" for f in rep.fibers]
    _emit(args, payload, "\n".join(lines + [f"verdict: {rep.verdict}"]))
    return OK


def _load_certificate(path, ring):
    with open(path, encoding="utf-8") as fh:
        doc, _ = load_document(fh.read())
    if doc["kind"] != "plane":
        raise SchemaError("--cert expects a plane certificate")
    vars, pv = tuple(doc["vars"]), tuple(doc["param_vars"])
    m = {k: poly_from_json(doc["maps"][k], ring, vars if k in "uv" else pv) for k in "uvxyz"}
    return PlaneCertificate(**m)


def cmd_analyze_plane(args):
    R = parse_ring(args.ring)
    a = parse_polynomial(args.a, R, ("X", "Y"))
    b = parse_polynomial(args.b, R, ("X", "Y"))
    cert = _load_certificate(args.cert, R) if args.cert else None
    rep = analyze(PlaneInput(R, a, b, args.n, cert), degree_bound=args.degree_bound)
    payload = report_to_json(rep)
    if args.seed is not None:
        payload["seed"] = args.seed
    if rep.triple is not None:
        payload["triple_certificate"] = triple_to_json(rep.triple, a.change_ring(rep.triple.ring),
                                                       b.change_ring(rep.triple.ring), args.n)
    lines = [f"verdict: {rep.verdict}" + (f" ({rep.stage}: {rep.reason})" if rep.reason else "")]
    if rep.U is not None:
        lines.append(f"U = {rep.U!r}")
    if rep.X0 is not None:
        lines.append(f"X0 = {rep.X0!r}")
    lines += [f"note: {n}" for n in rep.notes]
    for audit in rep.rs_audit:
        lines.append(f"audit {audit.label}: " + ", ".join(f"{k} {c.status}" for k, c in sorted(audit.conditions.items())))
    _emit(args, payload, "\n".join(lines))
    if cert is not None and rep.stage == "certificate":
        return FAILED
    return OK


def _exprs(text, ring, names):
    if not text:
        return None
    out = {}
    for part in text.split(";"):
        var, expr = (s.strip() for s in part.split("=", 1))
        out[var] = parse_polynomial(expr, ring, names)
    return out


def cmd_rs_check(args):
    R = parse_ring(args.ring)
    if not isinstance(R, DvrLocal):
        print("rs-check needs a DVR ring", file=sys.stderr)
        return USAGE
    vars = tuple(args.vars.split())
    gens = [parse_polynomial(s, R, vars) for s in args.gens.split(",")]
    names = tuple(f"S{i + 1}" for i in range(len(gens))) + ("W",)
    w3 = parse_polynomial(args.w3, R.K, vars) if args.w3 else None
    w4 = parse_polynomial(args.w4, R.k, vars) if args.w4 else None
    audit = russell_sathaye_check(R, gens, w3=w3, inverse3=_exprs(args.inverse3, R.K, names),
                                  w4=w4, inverse4=_exprs(args.inverse4, R.k, names),
                                  degree_bound=args.degree_bound or 4)
    lines = [f"{k}: {c.status} ({c.detail})" for k, c in sorted(audit.conditions.items())]
    lines += [f"note: {n}" for n in audit.notes]
    lines.append(f"conclusion: {audit.conclusion}" if audit.conclusion else "no conclusion")
    _emit(args, audit_to_json(audit), "\n".join(lines))
    return OK if audit.all_verified else FAILED


def cmd_sweep(args):
    primes = [p.strip() for p in args.primes.split(",") if p.strip()]
    primes = [p if p == "generic" else int(p) for p in primes]
    if args.W:
        rep = residual_fiber_sweep(primes, W=parse_polynomial(args.W, ZZ, ("X", "Y")))
        fibers = {k: v for k, v in rep.fibers.items()}
    else:
        if not (args.a and args.b and args.n):
            print("sweep needs either --W or --a, --b and --n", file=sys.stderr)
            return USAGE
        plane = (parse_polynomial(args.a, ZZ, ("X", "Y")), parse_polynomial(args.b, ZZ, ("X", "Y")), args.n)
        rep = residual_fiber_sweep(primes, plane=plane)
        fibers = {k: v.verdict for k, v in rep.fibers.items()}
    payload = {"verdict": rep.verdict, "qualifier": rep.qualifier, "flags": rep.flags, "fibers": fibers}
    lines = [f"{k}: {v}" for k, v in fibers.items()] + [f"verdict: {rep.verdict}", rep.qualifier]
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_check_cert(args):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    res = check_text(text)
    if res:
        _emit(args, {"verified": True}, "verified")
        return OK
    _emit(args, {"verified": False, "identity": res.identity, "detail": res.detail},
          f"FAILED {res.identity}: {res.detail}")
    return FAILED


def cmd_corpus(args):
    results = run_corpus(args.filter, workers=args.workers)
    payload = [{"id": r.id, "verdict": r.verdict, "ok": r.ok, "data": r.data, "mismatches": r.mismatches}
               for r in results]
    _emit(args, payload, format_results(results))
    return OK if all(r.ok for r in results) else FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="Q", help="ring descriptor, e.g. Q, GF(5), Z_(2), Q[t]_(t), Q(zeta_3)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="recorded in JSON output; all algorithms are deterministic")
    common.add_argument("--degree-bound", type=int, default=None, help="degree bound for membership searches")
    common.add_argument("--vars", default="X Y", help="variable names")

    p = _Parser(prog="planeaut", description="Exact tools for plane automorphisms and planes bZ^n - a.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (("decompose", cmd_decompose, "normal-form word of (F, G)"),
                               ("invert", cmd_invert, "inverse of (F, G)"),
                               ("order", cmd_order, "order of (F, G)"),
                               ("diagonalize", cmd_diagonalize, "diagonal coordinates of a finite-order (F, G)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("F")
        s.add_argument("G")
        if name == "order":
            s.add_argument("--bound", type=int, default=256)
        if name == "diagonalize":
            s.add_argument("--n", type=int, required=True)
        s.set_defaults(func=fn)

    s = sub.add_parser("is-coordinate", parents=[common], help="recognise a coordinate of k[X,Y]")
    s.add_argument("f")
    s.set_defaults(func=cmd_is_coordinate)

    s = sub.add_parser("residual", parents=[common], help="fiberwise coordinate test over a DVR")
    s.add_argument("W")
    s.add_argument("--seminormal", action="store_true", help="assert the base is seminormal")
    s.set_defaults(func=cmd_residual)

    s = sub.add_parser("analyze-plane", parents=[common], help="analyze g = b*Z^n - a")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cert", metavar="FILE", help="plane certificate (JSON)")
    s.set_defaults(func=cmd_analyze_plane)

    s = sub.add_parser("rs-check", parents=[common], help="Russell-Sathaye audit with witnesses")
    s.add_argument("--gens", required=True, help="comma-separated generators")
    s.add_argument("--w3", help="complement over the fraction field")
    s.add_argument("--w4", help="complement over the residue field")
    s.add_argument("--inverse3", help="'X = expr; Y = expr' in S1.., W over the fraction field")
    s.add_argument("--inverse4", help="same over the residue field")
    s.set_defaults(func=cmd_rs_check)

    s = sub.add_parser("sweep", parents=[common], help="fiber verdicts over Z at listed primes")
    s.add_argument("--primes", default="", help="e.g. 2,3,5,generic")
    s.add_argument("--W")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("check-cert", parents=[common], help="replay a JSON certificate")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_cert)

    s = sub.add_parser("corpus", parents=[common], help="run the built-in corpus")
    s.add_argument("filter", nargs="?", default=None)
    s.add_argument("--workers", type=int, default=4)
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args)
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ResourceBound as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return BOUND
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except PlaneAutError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
