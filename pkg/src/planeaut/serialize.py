"""JSON encoding of polynomials, certificates and reports (schema ``v = 1``)."""

import json

from .errors import ParseError, SchemaError
from .parser import parse_constant, parse_ring
from .poly import Polynomial

VERSION = 1


def poly_to_json(f):
    return {
        "vars": list(f.vars),
        "terms": [[list(m), f.ring.format(c)] for m, c in f.sorted_terms()],
    }


def poly_from_json(obj, ring, declared=None):
    if not isinstance(obj, dict) or "vars" not in obj or "terms" not in obj:
        raise SchemaError("polynomial needs 'vars' and 'terms'")
    vars = tuple(obj["vars"])
    if declared is not None and vars != tuple(declared):
        extra = [v for v in vars if v not in declared]
        if extra:
            raise SchemaError(f"undeclared variable(s) {', '.join(extra)}")
        raise SchemaError(f"variables {list(vars)} do not match the declared {list(declared)}")
    terms = {}
    for entry in obj["terms"]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise SchemaError("each term is [exponents, coefficient]")
        exps, coeff = entry
        if not (isinstance(exps, list) and len(exps) == len(vars)
                and all(isinstance(e, int) and e >= 0 for e in exps)):
            raise SchemaError(f"bad exponent vector {exps!r}")
        if not isinstance(coeff, str):
            raise SchemaError("coefficients are strings")
        try:
            c = parse_constant(coeff, ring)
        except ParseError as exc:
            raise SchemaError(f"bad coefficient {coeff!r}: {exc}") from exc
        m = tuple(exps)
        if m in terms:
            raise SchemaError(f"repeated monomial {exps}")
        terms[m] = c
    return Polynomial(ring, vars, terms)


def _header(kind, ring):
    return {"v": VERSION, "kind": kind, "ring": ring.name}


def plane_certificate_to_json(inp, cert):
    doc = _header("plane", inp.ring)
    doc.update({
        "vars": ["X", "Y", "Z"], "param_vars": ["P", "Q"],
        "a": poly_to_json(inp.a.embed(("X", "Y", "Z"))),
        "b": poly_to_json(inp.b.embed(("X", "Y", "Z"))),
        "n": inp.n,
        "maps": {k: poly_to_json(getattr(cert, k)) for k in ("u", "v", "x", "y", "z")},
    })
    return doc


def triple_to_json(triple, a, b, n):
    doc = _header("triple", triple.ring)
    doc.update({
        "vars": ["X", "Y", "Z"], "inverse_vars": ["S1", "S2", "S3"],
        "a": poly_to_json(a.embed(("X", "Y", "Z"))),
        "b": poly_to_json(b.embed(("X", "Y", "Z"))),
        "n": n,
        "forward": [poly_to_json(f) for f in triple.forward],
        "inverse": [poly_to_json(f) for f in triple.inverse],
    })
    return doc


def coordinate_certificate_to_json(cert):
    f = cert.target
    doc = _header("coordinate", f.ring)
    doc.update({
        "vars": list(f.vars),
        "target": poly_to_json(f),
        "letters": [[poly_to_json(phi.F), poly_to_json(phi.G)]
                    for phi in (l.as_plane_aut() for l in cert.letters + [cert.final])],
    })
    return doc


def load_document(text):
    """Parse JSON text, check the version and return ``(doc, ring)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    if doc.get("v") != VERSION:
        raise SchemaError(f"unsupported schema version {doc.get('v')!r}")
    for key in ("kind", "ring", "vars"):
        if key not in doc:
            raise SchemaError(f"missing key {key!r}")
    try:
        ring = parse_ring(doc["ring"])
    except ParseError as exc:
        raise SchemaError(f"bad ring descriptor: {exc}") from exc
    return doc, ring


def _fmt(x):
    return repr(x) if x is not None else None


def report_to_json(report):
    out = {
        "v": VERSION,
        "kind": "report",
        "verdict": report.verdict,
        "stage": report.stage,
        "reason": report.reason,
        "U": _fmt(report.U),
        "X0": _fmt(report.X0),
        "notes": list(report.notes),
    }
    if report.axis is not None:
        ax = report.axis
        out["axis"] = {
            "g1": repr(ax.g1),
            "shifts": [None if s is None else ax.g1.ring.format(s) for s in ax.shifts],
            "multiplicities": list(ax.multiplicities),
        }
    if report.triple is not None:
        out["triple"] = {"ring": report.triple.ring.name,
                         "forward": [repr(f) for f in report.triple.forward],
                         "inverse": [repr(f) for f in report.triple.inverse]}
    if report.fibers:
        out["fibers"] = {k: report_to_json(v) for k, v in sorted(report.fibers.items())}
    if report.rs_audit:
        out["russell_sathaye"] = [audit_to_json(a) for a in report.rs_audit]
    return out


def audit_to_json(audit):
    return {
        "label": audit.label,
        "conditions": {k: {"status": c.status, "detail": c.detail}
                       for k, c in sorted(audit.conditions.items())},
        "conclusion": audit.conclusion,
        "notes": list(audit.notes),
    }


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
