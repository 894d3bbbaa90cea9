"""Built-in corpus of pinned plane and coordinate cases."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .coordinates import is_coordinate, residue_polynomial
from .parser import parse_polynomial, parse_ring
from .plane import (PlaneInput, analyze, prop56_mode, russell_sathaye_check)

XY = ("X", "Y")
XYZ = ("X", "Y", "Z")
RS_NAMES = ("S1", "S2", "W")


@dataclass
class CorpusCase:
    id: str
    ring: str
    a: str
    b: str
    n: int
    expected: str
    mode: str = "analyze"
    expect_data: Dict[str, str] = field(default_factory=dict)
    source: str = ""


@dataclass
class CaseResult:
    id: str
    verdict: str
    data: Dict[str, str]
    mismatches: List[str]

    @property
    def ok(self):
        return not self.mismatches


CASES = [
    CorpusCase("linear-plane-t-divides-b", "Q[t]_(t)", "-Y - t*Y*(X + X^2) - t^2*X", "t*Y^2", 1,
               "Unknown", source="linear plane with t | b; open"),
    CorpusCase("char-p-divides-n", "GF(2)", "Y + Y^6", "1", 4, "NotApplicable",
               mode="char-p",
               expect_data={"coordinate Z^4 - Y - Y^6": "Reject"},
               source="Z^4 - Y - Y^6 over GF(2)"),
    CorpusCase("dvr-axis-not-residual", "Q[t]_(t)", "-Y", "t^2*X + t*Y^2", 2, "Variable",
               expect_data={"X0": "Y^2 + t*X", "b in R[X0]": "t*T", "X0 residual": "Reject"},
               source="b = t^2 X + t Y^2 over Q[t]_(t)"),
    CorpusCase("rs-witness-plane", "Z_(2)", "Y^2 + Y + 2*X", "1", 2, "NotApplicable",
               mode="rs",
               expect_data={"audit": "all verified", "closed a": "Reject",
                            "conclusion": "Z_(2)[X, Y, Z] = Z_(2)[-Y^2 + Z^2 - 2*X - Y, -Y + Z]^[1]"},
               source="a = Y^p + Y + pX with p = 2"),
    CorpusCase("char0-closed-fiber-coordinate", "Z_(3)", "Y + 9*X", "3", 3, "Variable",
               mode="prop56", expect_data={"closed a": "Accept"},
               source="residue characteristic divides n, closed fiber of a is a coordinate"),
    CorpusCase("field-xz2-minus-y", "Q", "Y", "X", 2, "Variable", expect_data={"U": "X"},
               source="g = XZ^2 - Y"),
    CorpusCase("field-cubic-partner", "Q", "Y + X^3", "X", 3, "Variable", expect_data={"U": "X"},
               source="a = Y + X^3, b = X"),
    CorpusCase("field-b-irreducible", "Q", "Y", "X^2 + 1", 2, "Variable", expect_data={"U": "X"},
               source="b irreducible over Q"),
    CorpusCase("field-gf5-nested", "GF(5)", "X + (Y + X^2)^2", "(Y + X^2)^2 + 2", 2, "Variable",
               expect_data={"U": "X^2 + Y"}, source="synthesized over GF(5)"),
    CorpusCase("field-repeated-factor", "Q", "Y + (X + Y^2)^2", "(X + Y^2)^2*(X + Y^2 + 1)", 3,
               "Variable", expect_data={"U": "Y^2 + X", "multiplicities": "[2, 1]"},
               source="b with a repeated factor"),
]


def _rs_witness_case(R, a):
    """Explicit witnesses for D = R[g, Z - Y] inside R[X, Y, Z] with p = 2."""
    K, k = R.K, R.k
    g = parse_polynomial("Z^2 - Y^2 - Y - 2*X", R, XYZ)
    Zp = parse_polynomial("Z - Y", R, XYZ)
    inv3 = {"Y": parse_polynomial("W", K, RS_NAMES),
            "Z": parse_polynomial("S2 + W", K, RS_NAMES),
            "X": parse_polynomial("((S2 + W)^2 - W^2 - W - S1)/2", K, RS_NAMES)}
    inv4 = {"X": parse_polynomial("W", k, RS_NAMES),
            "Y": parse_polynomial("S2^2 + S1", k, RS_NAMES),
            "Z": parse_polynomial("S2 + S1 + S2^2", k, RS_NAMES)}
    return russell_sathaye_check(R, [g, Zp], w3=parse_polynomial("Y", R, XYZ), inverse3=inv3,
                                 w4=parse_polynomial("X", R, XYZ), inverse4=inv4,
                                 label="R[g, Z - Y] in R[X,Y,Z]")


def run_case(case):
    R = parse_ring(case.ring)
    a = parse_polynomial(case.a, R, XY)
    b = parse_polynomial(case.b, R, XY)
    inp = PlaneInput(R, a, b, case.n)
    data = {}
    if case.mode == "prop56":
        rep = prop56_mode(inp)
        data["closed a"] = "Accept" if is_coordinate(residue_polynomial(a)).accepted else "Reject"
    else:
        rep = analyze(inp)
    if case.mode == "char-p":
        f = parse_polynomial("Z^4 - Y - Y^6", R, ("Y", "Z"))
        data["coordinate Z^4 - Y - Y^6"] = "Accept" if is_coordinate(f).accepted else "Reject"
    if case.mode == "rs":
        audit = _rs_witness_case(R, a)
        data["audit"] = "all verified" if audit.all_verified else "incomplete"
        data["conclusion"] = audit.conclusion or ""
        data["closed a"] = "Accept" if is_coordinate(residue_polynomial(a)).accepted else "Reject"
    if rep.U is not None:
        data["U"] = repr(rep.U)
    if rep.X0 is not None:
        data["X0"] = repr(rep.X0)
    if rep.axis is not None:
        data["multiplicities"] = str(rep.axis.multiplicities)
    if "b_in_X0" in rep.data:
        data["b in R[X0]"] = repr(rep.data["b_in_X0"].poly)
    if "residual_X0" in rep.data:
        data["X0 residual"] = rep.data["residual_X0"].verdict
    if rep.triple is not None:
        data["triple"] = "verified" if rep.triple.verify() else "FAILED"
    mismatches = []
    if rep.verdict != case.expected:
        mismatches.append(f"verdict: expected {case.expected}, got {rep.verdict}")
    for key, want in case.expect_data.items():
        got = data.get(key)
        if got != want:
            mismatches.append(f"{key}: expected {want!r}, got {got!r}")
    if data.get("triple") == "FAILED":
        mismatches.append("triple certificate does not replay")
    return CaseResult(case.id, rep.verdict, data, mismatches)


def select(filter_text=None):
    if not filter_text:
        return list(CASES)
    return [c for c in CASES if filter_text in c.id]


def run_corpus(filter_text=None, workers=4):
    """Run matching cases concurrently; results are sorted by identifier."""
    cases = select(filter_text)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(run_case, cases))
    return sorted(results, key=lambda r: r.id)


def format_results(results):
    lines = []
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        extras = ", ".join(f"{k}={v}" for k, v in sorted(r.data.items()))
        lines.append(f"{status} {r.id}: {r.verdict}" + (f" [{extras}]" if extras else ""))
        for m in r.mismatches:
            lines.append(f"    {m}")
    failed = sum(not r.ok for r in results)
    lines.append(f"{len(results)} cases, {failed} failed")
    return "\n".join(lines)
