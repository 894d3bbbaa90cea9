import json

import pytest

from planeaut.certcheck import check_text, in_principal_ideal, replay_substitute
from planeaut.coordinates import is_coordinate
from planeaut.errors import SchemaError
from planeaut.parser import parse_polynomial, parse_ring
from planeaut.plane import PlaneInput, analyze, auto_certificate
from planeaut.serialize import (coordinate_certificate_to_json, dumps, load_document,
                                plane_certificate_to_json, poly_from_json, poly_to_json,
                                triple_to_json)

from randgen import mutate_certificate, rng_for

XY = ("X", "Y")


def P(text, ring="Q", vars=XY):
    return parse_polynomial(text, parse_ring(ring), vars)


def plane_doc(a="Y", b="X", n=2, ring="Q"):
    R = parse_ring(ring)
    inp = PlaneInput(R, P(a, ring), P(b, ring), n)
    return plane_certificate_to_json(inp, auto_certificate(inp.a, inp.b, n))


def triple_doc(a="Y + X^3", b="X", n=3, ring="Q"):
    R = parse_ring(ring)
    rep = analyze(PlaneInput(R, P(a, ring), P(b, ring), n))
    return triple_to_json(rep.triple, P(a, ring), P(b, ring), n)


def test_polynomial_json_round_trip():
    f = P("t^2*X - Y/(1 + t) + 3", "Q[t]_(t)")
    back = poly_from_json(json.loads(json.dumps(poly_to_json(f))), f.ring, XY)
    assert back == f


def test_valid_certificates_replay():
    assert check_text(dumps(plane_doc()))
    assert check_text(dumps(triple_doc()))
    res = is_coordinate(P("Y + (X + Y^2)^3"))
    assert check_text(dumps(coordinate_certificate_to_json(res.certificate)))


def test_corrupted_plane_certificate():
    doc = plane_doc()
    doc["maps"]["y"] = poly_to_json(P("P*Q", vars=("P", "Q")))
    res = check_text(dumps(doc))
    assert not res and res.identity == "y-identity"


@pytest.mark.parametrize("make", [plane_doc, triple_doc], ids=["plane", "triple"])
def test_every_single_coefficient_mutation_fails(make):
    doc = make()
    _, ring = load_document(dumps(doc))
    for i in range(15):
        bad, path = mutate_certificate(doc, ring, rng_for("mut", make.__name__, i))
        res = check_text(dumps(bad))
        assert not res, path
        assert res.identity


@pytest.mark.parametrize("edit, message", [
    (lambda d: d.update(v=2), "unsupported schema version"),
    (lambda d: d.pop("ring"), "missing key 'ring'"),
    (lambda d: d.update(ring="Q[[t]]"), "bad ring descriptor"),
    (lambda d: d["maps"]["u"].update(vars=["X", "Y", "W"]), "undeclared variable"),
    (lambda d: d["maps"]["u"]["terms"].append([[1, 0], "1"]), "bad exponent vector"),
    (lambda d: d["maps"]["u"]["terms"].append([[0, 0, 0], 1]), "coefficients are strings"),
    (lambda d: d.update(kind="mystery"), "unknown certificate kind"),
])
def test_schema_errors(edit, message):
    doc = plane_doc()
    edit(doc)
    with pytest.raises(SchemaError, match=message):
        check_text(dumps(doc))


def test_invalid_json_is_schema_error():
    with pytest.raises(SchemaError):
        check_text("{not json")


def test_checker_primitives_against_direct_arithmetic():
    R = parse_ring("Q")
    vars = ("X", "Y", "Z")
    g = parse_polynomial("X*Z^2 - Y", R, vars)
    h = parse_polynomial("Z^3 + X*Y - 2", R, vars)
    assert in_principal_ideal(g * h, g)
    assert not in_principal_ideal(g * h + parse_polynomial("X", R, vars), g)
    f = parse_polynomial("X^2*Y + Z", R, vars)
    imgs = {"X": g, "Y": h, "Z": parse_polynomial("X", R, vars)}
    assert replay_substitute(f, imgs, vars, R) == g * g * h + imgs["Z"]
