"""Recognizing coordinates of k[X, Y] and related membership questions.

A coordinate (variable) ``f`` is recognised by degree reduction: the top
form must be a pure power ``c * l**d`` of a linear form, which a linear
change sends to a power of the second variable; an elementary
substitution ``X -> X + c*Y**m`` must then lower the degree.  Every
acceptance carries a replayable certificate.
"""

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Tuple

from . import upoly
from .automorphisms import (AffineAut, ElementaryAut, PlaneAut, compose,
                            invert, jvdk_decompose)
from .errors import Degenerate, NotAnAutomorphism, ResourceBound
from .factor import roots_in_field
from .linalg import solve_combination
from .poly import Polynomial, content_primitive, leading_form
from .rings import DvrLocal

_C = "_c"


@dataclass
class CoordCertificate:
    """Letters ``phi_1, ..., phi_k`` and a final affine ``A`` with
    ``f o phi_1 o ... o phi_k o A == X``."""

    target: Polynomial
    letters: List[object]
    final: AffineAut

    def chain(self):
        return compose(self.letters + [self.final], self.target.ring, self.target.vars)

    def replay(self):
        """Apply the letters one by one; returns the list of intermediate polynomials."""
        g = self.target
        trail = [g]
        for letter in self.letters + [self.final]:
            g = letter.as_plane_aut()(g)
            trail.append(g)
        return trail

    def verify(self):
        x = Polynomial.variable(self.target.ring, self.target.vars, self.target.vars[0])
        return self.replay()[-1] == x


@dataclass
class Accept:
    certificate: CoordCertificate
    accepted: bool = True


@dataclass
class Reject:
    reason: str
    detail: str = ""
    # degree reduction is not known to be rejection-complete in general
    strategy_limited: bool = True
    accepted: bool = False


def _linear_root(L, d):
    """Candidates ``(c, alpha, beta)`` with ``L == c*(alpha*X + beta*Y)**d``."""
    ring = L.ring
    top = L.coefficient((d, 0))
    if not top:
        c = L.coefficient((0, d))
        return [(c, ring.zero, ring.one)] if c else []
    p = ring.characteristic
    j = next(j for j in range(1, d + 1) if not p or comb(d, j) % p)
    target = L.coefficient((d - j, j)) / (top * comb(d, j))
    if j == 1:
        return [(top, ring.one, target)]
    roots = roots_in_field([-target] + [ring.zero] * (j - 1) + [ring.one], ring)
    return [(top, ring.one, r) for r in roots]


def _to_second_variable(ring, vars, alpha, beta):
    """Affine letter ``phi`` with ``(alpha*X + beta*Y) o phi == Y``."""
    zero, one = ring.zero, ring.one
    if beta:
        return AffineAut(ring, one, zero, zero, -alpha / beta, one / beta, zero, vars)
    return AffineAut(ring, zero, one / alpha, zero, one, zero, zero, vars)


def _reducing_elementary(g, d):
    """Find ``(m, c)`` so that ``g(X + c*Y**m, Y)`` has degree below ``d``."""
    ring, vars = g.ring, g.vars
    big = vars + (_C,)
    G = g.embed(big)
    X, Y, C = (Polynomial.variable(ring, big, v) for v in big)
    if not g.degree_in(vars[0]) > 0:
        return None
    for m in range(1, d + 1):
        h = G.substitute({vars[0]: X + C * Y ** m}, big, ring)
        eqs = {}
        for mono, coef in h.terms.items():
            if mono[0] + mono[1] >= d:
                eq = eqs.setdefault(mono[:2], [])
                eq.extend([ring.zero] * (mono[2] + 1 - len(eq)))
                eq[mono[2]] = eq[mono[2]] + coef
        common = None
        for eq in eqs.values():
            eq = upoly.trim(eq)
            if not eq:
                continue
            common = eq if common is None else upoly.gcd(common, eq)
            if len(common) == 1:
                break
        if common is None or len(common) <= 1:
            continue
        for c in roots_in_field(common, ring):
            if c:
                return m, c
    return None


def is_coordinate(f):
    """Return :class:`Accept` with a certificate or :class:`Reject`.

    ``f`` must be a nonconstant polynomial in two variables over a field.
    """
    if len(f.vars) != 2:
        raise ValueError("is_coordinate works in two variables")
    if f.degree() < 1:
        raise Degenerate("constant polynomial")
    ring, vars = f.ring, f.vars
    one, zero = ring.one, ring.zero
    letters = []
    g = f
    while g.degree() > 1:
        d = g.degree()
        L = leading_form(g)
        found = None
        for c, alpha, beta in _linear_root(L, d):
            ell = Polynomial(ring, vars, {(1, 0): alpha, (0, 1): beta})
            if L == ell ** d * c:
                found = (alpha, beta)
                break
        if found is None:
            return Reject("NonPurePowerLeadingForm", f"leading form {L!r} is not a scalar times a d-th power")
        alpha, beta = found
        if alpha or beta != one:
            lin = _to_second_variable(ring, vars, alpha, beta)
            letters.append(lin)
            g = lin.as_plane_aut()(g)
        step = _reducing_elementary(g, d)
        if step is None:
            return Reject("NoReducingElementary", f"no X -> X + c*Y^m lowers degree {d}")
        m, c = step
        h = tuple([zero] * m + [c])
        el = ElementaryAut(ring, one, one, zero, h, vars)
        letters.append(el)
        g = el.as_plane_aut()(g)
    a, b = g.coefficient((1, 0)), g.coefficient((0, 1))
    gamma = g.constant_term()
    # g o final == X
    if a:
        final = AffineAut(ring, one / a, -b / a, -gamma / a, zero, one, zero, vars)
    else:
        final = AffineAut(ring, zero, one, zero, one / b, zero, -gamma / b, vars)
    cert = CoordCertificate(f, letters, final)
    if not cert.verify():
        raise AssertionError("coordinate certificate does not replay")
    return Accept(cert)


def find_partner(f, cert=None):
    """``h`` such that ``(f, h)`` is an automorphism of the plane."""
    if cert is None:
        res = is_coordinate(f)
        if not res.accepted:
            raise NotAnAutomorphism("no coordinate certificate", res.reason)
        cert = res.certificate
    if not cert.verify() or cert.target != f:
        raise NotAnAutomorphism("certificate verification", "certificate does not replay for f")
    psi = invert(cert.chain())
    if psi.F != f:
        raise AssertionError("inverse chain does not return f")
    jvdk_decompose(psi)
    return psi.G


@dataclass
class FiberVerdict:
    prime: str
    field: str
    accepted: bool
    certificate: Optional[CoordCertificate] = None
    reason: str = ""


@dataclass
class ResidualReport:
    fibers: List[FiberVerdict]
    flags: dict
    verdict: str


def residue_polynomial(W):
    """Image of ``W`` over the residue field of its DVR."""
    R = W.ring
    return Polynomial(R.k, W.vars, {m: R.residue(c) for m, c in W.terms.items()})


def _fiber(label, field, f):
    if f.degree() < 1:
        return FiberVerdict(label, field.name, False, reason="constant image")
    res = is_coordinate(f)
    if res.accepted:
        return FiberVerdict(label, field.name, True, res.certificate)
    return FiberVerdict(label, field.name, False, reason=res.reason)


def residual_coordinate_check(W, seminormal=False, contains_q=None):
    """Test ``W`` over a DVR fiber by fiber.

    The verdict is ``Variable`` only if both fibers accept and one of the
    hypotheses (the ring contains Q, or it is seminormal) holds.
    """
    R = W.ring
    if not isinstance(R, DvrLocal):
        raise TypeError("residual_coordinate_check needs a DVR")
    if contains_q is None:
        contains_q = R.k.characteristic == 0
    generic = _fiber("(0)", R.K, W.change_ring(R.K))
    _, prim = content_primitive(W)
    closed = _fiber(f"({R.uniformizer_name})", R.k, residue_polynomial(prim))
    fibers = [generic, closed]
    flags = {"contains-Q": bool(contains_q), "seminormal": "asserted" if seminormal else "unknown"}
    if not all(fb.accepted for fb in fibers):
        verdict = "Reject"
    elif contains_q or seminormal:
        verdict = "Variable"
    else:
        verdict = "FibersOk-HypothesisUnverified"
    return ResidualReport(fibers, flags, verdict)


@dataclass
class CoefficientRingData:
    W: Polynomial
    lam: object
    mu: object
    unit_lambda: bool


def intersect_coefficient_ring(U, R=None):
    """Write ``U = lam*W + mu`` with ``W`` primitive over the DVR ``R``.

    ``U`` may have coefficients in ``R`` or in its fraction field.
    """
    R = R or U.ring
    if not isinstance(R, DvrLocal):
        raise TypeError("intersect_coefficient_ring needs a DVR")
    if U.degree() < 1:
        raise Degenerate("U is constant")
    K = R.K
    mu = K(U.constant_term())
    rest = {m: K(c) for m, c in U.terms.items() if any(m)}
    v = min(R.valuation(c) for c in rest.values())
    scale = R.uniformizer ** v
    prim = {m: c / scale for m, c in rest.items()}
    lc = Polynomial(K, U.vars, prim).leading_coefficient()
    unit = R.unit_part(lc)
    W = Polynomial(R, U.vars, {m: c / unit for m, c in prim.items()})
    lam = scale * unit
    check = Polynomial(K, U.vars, W.terms) * lam + mu
    if check != U.change_ring(K):
        raise AssertionError("lam*W + mu does not reproduce U")
    return CoefficientRingData(W, lam, mu, R.is_unit(lam))


@dataclass
class Expression:
    """``poly`` in ``gen_vars`` with ``poly(generators) == f``."""

    poly: Polynomial
    gen_vars: Tuple[str, ...]
    generators: List[Polynomial] = field(default_factory=list)

    def evaluate(self):
        g0 = self.generators[0]
        images = dict(zip(self.gen_vars, self.generators))
        return self.poly.substitute(images, g0.vars, g0.ring)

    def __bool__(self):
        return True


@dataclass
class NotFoundAtBound:
    """No expression at this degree bound; not a proof of non-membership."""

    bound: int

    def __bool__(self):
        return False


def _gen_names(k):
    return ("T",) if k == 1 else tuple(f"T{i + 1}" for i in range(k))


def subring_membership(f, generators, degree_bound=None, max_monomials=4000):
    """Express ``f`` as a polynomial in ``generators`` by linear algebra.

    Monomials in the generators of total degree at most ``degree_bound``
    (default ``deg f``) are tried.  Over a DVR the solve happens over the
    fraction field and the coefficients must come out integral.
    """
    gens = list(generators)
    ring, vars = f.ring, f.vars
    for g in gens:
        if g.vars != vars or g.ring != ring:
            raise TypeError("generators must share ring and variables with f")
    D = f.degree() if degree_bound is None else degree_bound
    D = max(D, 0)
    names = _gen_names(len(gens))
    K = ring.fraction_field()
    exps = [e for total in range(D + 1)
            for e in _compositions(total, len(gens))]
    if len(exps) > max_monomials:
        raise ResourceBound(f"{len(exps)} generator monomials exceed {max_monomials}")
    powers = [[Polynomial.constant(ring, vars, 1)] for _ in gens]
    cols = []
    for e in exps:
        prod = Polynomial.constant(ring, vars, 1)
        for i, k in enumerate(e):
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * gens[i])
            if k:
                prod = prod * powers[i][k]
        cols.append({m: K(c) for m, c in prod.terms.items()})
    sol = solve_combination(cols, {m: K(c) for m, c in f.terms.items()}, K.one)
    if sol is None:
        return NotFoundAtBound(D)
    if not all(ring.contains(c) for c in sol.values()):
        return NotFoundAtBound(D)
    phi = Polynomial(ring, names, {exps[j]: c for j, c in sol.items()})
    expr = Expression(phi, names, gens)
    if expr.evaluate() != f:
        raise AssertionError("membership expression does not evaluate to f")
    return expr


def _compositions(total, k):
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest
