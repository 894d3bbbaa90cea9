"""Independent replay of serialized certificates.

Only ring and :class:`Polynomial` arithmetic are shared with the
analyzer; substitution and ideal membership are reimplemented here so a
bug in the pipeline cannot vouch for its own output.
"""

from dataclasses import dataclass

from .errors import SchemaError
from .poly import Polynomial
from .serialize import load_document, poly_from_json


@dataclass
class Outcome:
    ok: bool
    identity: str = ""
    detail: str = ""

    def __bool__(self):
        return self.ok


def replay_substitute(f, images, target_vars, ring):
    """``f`` with each variable replaced by ``images[var]`` (naive expansion)."""
    one = Polynomial.constant(ring, target_vars, 1)
    total = Polynomial.zero(ring, target_vars)
    for m, c in f.terms.items():
        term = one * c
        for v, e in zip(f.vars, m):
            for _ in range(e):
                term = term * images[v]
        total = total + term
    return total


def in_principal_ideal(f, g):
    """Exact test of ``f in (g)`` by leading-term division over the fraction field."""
    K = g.ring.fraction_field()
    lm_g = max(g.terms, key=lambda m: (sum(m), m))
    inv = 1 / K(g.terms[lm_g])
    r = f
    while r:
        lm = max(r.terms, key=lambda m: (sum(m), m))
        shift = tuple(a - b for a, b in zip(lm, lm_g))
        if min(shift) < 0:
            return False
        c = K(r.terms[lm]) * inv
        if not g.ring.contains(c):
            return False
        r = r - Polynomial(g.ring, g.vars, {shift: g.ring(c)}) * g
    return True


def _var(ring, vars, name):
    return Polynomial(ring, vars, {tuple(int(v == name) for v in vars): ring.one})


def _plane_g(doc, ring, vars):
    a = poly_from_json(doc["a"], ring, vars)
    b = poly_from_json(doc["b"], ring, vars)
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    return b * _var(ring, vars, "Z") ** n - a


def check_plane(doc, ring):
    vars = tuple(doc["vars"])
    pv = tuple(doc.get("param_vars", ()))
    if vars != ("X", "Y", "Z") or len(pv) != 2:
        raise SchemaError("plane certificates use vars X Y Z and two parameter variables")
    g = _plane_g(doc, ring, vars)
    maps = doc.get("maps")
    if not isinstance(maps, dict) or set(maps) != {"u", "v", "x", "y", "z"}:
        raise SchemaError("maps must give u, v, x, y, z")
    u, v = (poly_from_json(maps[k], ring, vars) for k in ("u", "v"))
    x, y, z = (poly_from_json(maps[k], ring, pv) for k in ("x", "y", "z"))
    back = {pv[0]: u, pv[1]: v}
    for name, img in (("x", x), ("y", y), ("z", z)):
        diff = replay_substitute(img, back, vars, ring) - _var(ring, vars, name.upper())
        if not in_principal_ideal(diff, g):
            return Outcome(False, f"{name}-identity", f"{name}(u, v) - {name.upper()} not in (g)")
    fwd = {"X": x, "Y": y, "Z": z}
    if replay_substitute(g, fwd, pv, ring):
        return Outcome(False, "g-identity", "g(x, y, z) != 0")
    for name, img, target in (("u", u, pv[0]), ("v", v, pv[1])):
        if replay_substitute(img, fwd, pv, ring) != _var(ring, pv, target):
            return Outcome(False, f"{name}-identity", f"{name}(x, y, z) != {target}")
    return Outcome(True)


def check_triple(doc, ring):
    vars = tuple(doc["vars"])
    iv = tuple(doc.get("inverse_vars", ()))
    if len(vars) != 3 or len(iv) != 3:
        raise SchemaError("triple certificates need three variables on each side")
    forward = [poly_from_json(f, ring, vars) for f in doc["forward"]]
    inverse = [poly_from_json(f, ring, iv) for f in doc["inverse"]]
    if len(forward) != 3 or len(inverse) != 3:
        raise SchemaError("forward and inverse need three components")
    if "a" in doc:
        if forward[1] != _plane_g(doc, ring, vars):
            return Outcome(False, "g-definition", "second forward component is not b*Z^n - a")
    inv = dict(zip(vars, inverse))
    for i, f in enumerate(forward):
        if replay_substitute(f, inv, iv, ring) != _var(ring, iv, iv[i]):
            return Outcome(False, f"forward-{i + 1}", f"forward[{i + 1}](inverse) != {iv[i]}")
    fwd = dict(zip(iv, forward))
    for i, e in enumerate(inverse):
        if replay_substitute(e, fwd, vars, ring) != _var(ring, vars, vars[i]):
            return Outcome(False, f"inverse-{vars[i]}", f"inverse[{vars[i]}](forward) != {vars[i]}")
    return Outcome(True)


def check_coordinate(doc, ring):
    vars = tuple(doc["vars"])
    if len(vars) != 2:
        raise SchemaError("coordinate certificates use two variables")
    f = poly_from_json(doc["target"], ring, vars)
    letters = doc.get("letters")
    if not isinstance(letters, list) or not letters:
        raise SchemaError("letters must be a non-empty list")
    for i, pair in enumerate(letters):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError(f"letter {i} must be [F, G]")
        F, G = (poly_from_json(p, ring, vars) for p in pair)
        f = replay_substitute(f, {vars[0]: F, vars[1]: G}, vars, ring)
    if f != _var(ring, vars, vars[0]):
        return Outcome(False, "chain-identity", f"chain maps the target to {f!r}, not {vars[0]}")
    return Outcome(True)


CHECKERS = {"plane": check_plane, "triple": check_triple, "coordinate": check_coordinate}


def check_text(text):
    """Check a JSON certificate; raises :class:`SchemaError` on malformed input."""
    doc, ring = load_document(text)
    checker = CHECKERS.get(doc["kind"])
    if checker is None:
        raise SchemaError(f"unknown certificate kind {doc['kind']!r}")
    return checker(doc, ring)
