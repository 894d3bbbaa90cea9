"""Planes ``g = b*Z**n - a`` and their variables.

Over a field the analysis follows the root-of-unity argument: the map
``Z -> omega*Z`` induces a finite-order automorphism of the plane's
coordinate ring, its invariant coordinate is rewritten against
``w = a/b``, the axis ``U`` is read off the factors of ``b`` and finally
descended to the base field.  Over a DVR the two fibers are analyzed
separately and glued by the Russell-Sathaye criterion.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import upoly
from .automorphisms import (PlaneAut, diagonalize_finite_order, invert,
                            jvdk_decompose, order_divides)
from .coordinates import (find_partner, intersect_coefficient_ring,
                          is_coordinate, residual_coordinate_check,
                          residue_polynomial, subring_membership)
from .errors import (CannotConstruct, DescentFailed, NotAnAutomorphism,
                     NotSplitOverConstants, OrderCheckFailed, PlaneAutError,
                     ResourceBound, Unsupported)
from .factor import bivariate_factor, cyclotomic_adjoin, univariate_factor_dense
from .poly import (Polynomial, content_primitive, grlex_key,
                   principal_ideal_division, squarefree_part)
from .rings import DvrLocal, PrimeField, QQ, SimpleExtension

VARS2 = ("X", "Y")
VARS3 = ("X", "Y", "Z")
PQ = ("P", "Q")
SVARS = ("S1", "S2", "S3")
AXIS_VARS = ("U", "w")


def plane_polynomial(a, b, n):
    Z = Polynomial.variable(a.ring, VARS3, "Z")
    return b.embed(VARS3) * Z ** n - a.embed(VARS3)


@dataclass
class CheckResult:
    ok: bool
    stage: str = ""
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class PlaneCertificate:
    """``u, v`` in R[X,Y,Z] and ``x, y, z`` in R[P,Q]."""

    u: Polynomial
    v: Polynomial
    x: Polynomial
    y: Polynomial
    z: Polynomial

    def change_ring(self, ring, fn=None):
        conv = (lambda f: f.change_ring(ring)) if fn is None else (lambda f: f.map_coefficients(ring, fn))
        return PlaneCertificate(*(conv(f) for f in (self.u, self.v, self.x, self.y, self.z)))


@dataclass
class PlaneInput:
    ring: object
    a: Polynomial
    b: Polynomial
    n: int
    certificate: Optional[PlaneCertificate] = None

    def __post_init__(self):
        if not self.b:
            raise ValueError("b must be nonzero")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def g(self):
        return plane_polynomial(self.a, self.b, self.n)


def verify_plane_certificate(inp, cert=None):
    """Check that the certificate identifies R[X,Y,Z]/(g) with R[P,Q]."""
    cert = cert or inp.certificate
    if cert is None:
        raise ValueError("no certificate supplied")
    g = inp.g
    ring = g.ring
    uv = {"P": cert.u, "Q": cert.v}
    for name, img in (("x", cert.x), ("y", cert.y), ("z", cert.z)):
        back = img.substitute(uv, VARS3, ring) - Polynomial.variable(ring, VARS3, name.upper())
        if not principal_ideal_division(back, g, "Z").is_member:
            return CheckResult(False, f"{name}-identity", f"{name}(u, v) - {name.upper()} is not in (g)")
    xyz = {"X": cert.x, "Y": cert.y, "Z": cert.z}
    if g.substitute(xyz, PQ, ring):
        return CheckResult(False, "g-identity", "g(x, y, z) is not zero")
    for name, img, target in (("u", cert.u, "P"), ("v", cert.v, "Q")):
        if img.substitute(xyz, PQ, ring) != Polynomial.variable(ring, PQ, target):
            return CheckResult(False, f"{name}-identity", f"{name}(x, y, z) != {target}")
    return CheckResult(True)


def _univariate_eval(coeffs, t):
    out = Polynomial.zero(t.ring, t.vars)
    for c in reversed(coeffs):
        out = out * t + c
    return out


@dataclass
class _Pair:
    """A coordinate pair ``(U, a)`` with ``b = beta(U)`` and the inverse maps."""

    U: Polynomial
    beta: list
    F: Polynomial
    G: Polynomial


def _pair_with_b(a, U0, b):
    """Shift ``U0`` by a polynomial in ``a`` until ``b`` lies in k[U0]."""
    ring = a.ring
    for _ in range(2):
        inv = invert(PlaneAut(U0, a))
        B = inv(b)
        if B.degree_in("Y") <= 0:
            beta = [ring.zero] * (max(B.degree(), 0) + 1)
            for m, c in B.terms.items():
                beta[m[0]] = c
            return _Pair(U0, upoly.trim(beta), inv.F, inv.G)
        coeffs = B.coefficients_in("X")
        N = max(coeffs)
        top = coeffs[N]
        p = ring.characteristic
        if N == 0 or not top.is_constant() or (p and N % p == 0):
            return None
        q = coeffs.get(N - 1, Polynomial.zero(ring, VARS2)) / (top.constant_term() * N)
        q = q - q.constant_term()
        U0 = U0 + q.substitute({"X": Polynomial.zero(ring, VARS2), "Y": a}, VARS2, ring)
    return None


def coordinate_pair(a, b):
    """``(U, a)`` automorphism pair over a field with ``b`` in k[U], or None."""
    if a.degree() < 1:
        return None
    res = is_coordinate(a)
    if not res.accepted:
        return None
    h = find_partner(a, res.certificate)
    return _pair_with_b(a, h, b if b else Polynomial.zero(a.ring, VARS2))


def auto_certificate(a, b, n):
    """Build a plane certificate when ``a`` is a coordinate with ``b`` in k[partner]."""
    pair = coordinate_pair(a, b)
    if pair is None:
        raise CannotConstruct("a is not a recognised coordinate with b in k[partner]")
    ring = a.ring
    P, Q = (Polynomial.variable(ring, PQ, v) for v in PQ)
    second = _univariate_eval(pair.beta, P) * Q ** n
    imgs = {"X": P, "Y": second}
    cert = PlaneCertificate(
        u=pair.U.embed(VARS3),
        v=Polynomial.variable(ring, VARS3, "Z"),
        x=pair.F.substitute(imgs, PQ, ring),
        y=pair.G.substitute(imgs, PQ, ring),
        z=Q,
    )
    check = verify_plane_certificate(PlaneInput(ring, a, b, n, cert))
    if not check:
        raise AssertionError(f"auto certificate failed at {check.stage}")
    return cert


@dataclass
class TripleCertificate:
    """``forward`` = (U, g, Z) in R[X,Y,Z]; ``inverse`` gives X, Y, Z in R[S1,S2,S3]."""

    forward: List[Polynomial]
    inverse: List[Polynomial]

    @property
    def ring(self):
        return self.forward[0].ring

    def verify(self):
        ring = self.ring
        inv = dict(zip(VARS3, self.inverse))
        fwd = dict(zip(SVARS, self.forward))
        for i, f in enumerate(self.forward):
            if f.substitute(inv, SVARS, ring) != Polynomial.variable(ring, SVARS, SVARS[i]):
                return CheckResult(False, f"forward-{i + 1}", f"component {i + 1} of forward o inverse")
        for i, e in enumerate(self.inverse):
            if e.substitute(fwd, VARS3, ring) != Polynomial.variable(ring, VARS3, VARS3[i]):
                return CheckResult(False, f"inverse-{VARS3[i]}", f"{VARS3[i]} is not recovered")
        return CheckResult(True)


def triple_certificate(pair, a, b, n):
    """``k[X,Y,Z] = k[U, g, Z]`` from ``a = beta(U)*Z**n - g``."""
    ring = a.ring
    S1, S2, S3 = (Polynomial.variable(ring, SVARS, v) for v in SVARS)
    a_expr = _univariate_eval(pair.beta, S1) * S3 ** n - S2
    imgs = {"X": S1, "Y": a_expr}
    inverse = [pair.F.substitute(imgs, SVARS, ring), pair.G.substitute(imgs, SVARS, ring), S3]
    forward = [pair.U.embed(VARS3), plane_polynomial(a, b, n), Polynomial.variable(ring, VARS3, "Z")]
    cert = TripleCertificate(forward, inverse)
    check = cert.verify()
    if not check:
        raise AssertionError(f"triple certificate failed at {check.stage}")
    return cert


def induced_automorphism(cert, omega, n):
    """The automorphism of R[P,Q] induced by ``Z -> omega*Z``."""
    ring = cert.x.ring
    imgs = {"X": cert.x, "Y": cert.y, "Z": cert.z * omega}
    sigma = PlaneAut(cert.u.substitute(imgs, PQ, ring), cert.v.substitute(imgs, PQ, ring))
    if not order_divides(sigma, n):
        raise OrderCheckFailed(f"induced automorphism does not have order dividing {n}")
    return sigma


@dataclass
class AxisData:
    g1: Polynomial
    shifts: list
    multiplicities: list
    factors: list
    constant: object
    notes: List[str] = field(default_factory=list)


def _mean_shift(Bt, N, c):
    coeffs = Bt.coefficients_in("U")
    prev = coeffs.get(N - 1, Polynomial.zero(Bt.ring, Bt.vars))
    return -prev / (c * N)


def extract_axis(Bt):
    """Split ``Bt(U, w) = c * prod (U - g1(w) - c_i)**n_i`` with ``c_1 = 0``."""
    ring, vars = Bt.ring, Bt.vars
    if not Bt:
        raise ValueError("B~ must be nonzero")
    U = Polynomial.variable(ring, vars, vars[0])
    N = Bt.degree_in(vars[0])
    if N < 1:
        raise NotSplitOverConstants("B~ does not involve U")
    top = Bt.coefficients_in(vars[0])[N]
    if not top.is_constant():
        raise NotSplitOverConstants("leading U-coefficient is not constant")
    c = top.constant_term()
    p = ring.characteristic
    notes = []
    if not p or N % p:
        s = _mean_shift(Bt, N, c)
    else:
        sq = squarefree_part(Bt, vars[0])
        M = sq.degree_in(vars[0])
        if M % p:
            s = _mean_shift(sq, M, sq.coefficients_in(vars[0])[M].constant_term())
            notes.append("shift read from the squarefree part")
        else:
            s = None
            _, facs = bivariate_factor(Bt)
            for f, _ in facs:
                cs = f.coefficients_in(vars[0])
                if f.degree_in(vars[0]) == 1 and cs[1].is_constant():
                    s = -cs.get(0, Polynomial.zero(ring, vars)) / cs[1].constant_term()
                    break
            if s is None:
                raise NotSplitOverConstants("no factor linear in U")
            notes.append("shift read from a bivariate factor")
    C = Bt.substitute({vars[0]: U + s}, vars, ring)
    if vars[1] in C.used_vars():
        raise NotSplitOverConstants("factors of B~ differ by non-constant amounts")
    dense = [ring.zero] * (N + 1)
    for m, coef in C.terms.items():
        dense[m[0]] = coef
    try:
        _, facs = univariate_factor_dense(dense, ring, bound=max(12, N))
    except Unsupported as exc:
        facs = None
        notes.append(f"factors left unsplit: {exc}")
    if facs:
        facs = sorted(facs, key=lambda fm: (-fm[1], len(fm[0]), [ring.format(x) for x in fm[0]]))
        linear = [(f, m) for f, m in facs if len(f) == 2]
        if linear and linear[0] == facs[0]:
            r1 = -facs[0][0][0]
            g1 = s + r1
            shifted = [(upoly.compose(f, [r1, ring.one]), m) for f, m in facs]
        else:
            g1 = s
            shifted = facs
            notes.append("no constant root in the coefficient field; shift left at the mean")
    else:
        g1 = s
        shifted = [(upoly.trim(dense), 1)] if dense else []
        c = ring.one
    shifts, mults, factors = [], [], []
    Ut = U - g1
    recon = Polynomial.constant(ring, vars, c)
    for f, m in shifted:
        fac = _univariate_eval(f, Ut)
        recon = recon * fac ** m
        factors.append((fac, m))
        mults.append(m)
        if len(f) == 2:
            shifts.append(-f[0])
        else:
            shifts.append(None)
    if recon != Bt:
        raise NotSplitOverConstants("product check failed")
    return AxisData(g1, shifts, mults, factors, c, notes)


def _to_base(c, E, k):
    if E == k:
        return c
    if isinstance(E, SimpleExtension) and E.base == k:
        if any(x for x in c.c[1:]):
            raise DescentFailed(f"coefficient {E.format(c)} is not in {k.name}")
        return c.c[0]
    raise DescentFailed(f"cannot descend from {E.name} to {k.name}")


def descend_to_base(U_E, k):
    """Normalize a coordinate over ``E`` and read it over ``k``.

    The coefficient of the grlex-smallest nonconstant monomial is made 1
    and the constant term dropped; what remains must have coefficients in
    ``k``.
    """
    E = U_E.ring
    nonconst = [m for m in U_E.terms if any(m)]
    if not nonconst:
        raise DescentFailed("U_E is constant")
    lam = U_E.terms[min(nonconst, key=grlex_key)]
    V = U_E / lam
    V = V - V.constant_term()
    return Polynomial(k, V.vars, {m: _to_base(c, E, k) for m, c in V.terms.items()})


@dataclass
class AnalysisReport:
    verdict: str
    reason: str = ""
    stage: str = ""
    U: Optional[Polynomial] = None
    X0: Optional[Polynomial] = None
    axis: Optional[AxisData] = None
    triple: Optional[TripleCertificate] = None
    fibers: Dict[str, "AnalysisReport"] = field(default_factory=dict)
    rs_audit: list = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)


def _rejected(stage, reason, **kw):
    return AnalysisReport("Rejected", reason=reason, stage=stage, **kw)


def _deepening_membership(f, gens, bound):
    for D in range(1, max(bound, 1) + 1):
        res = subring_membership(f, gens, D)
        if res:
            return res
    return res


def _rewrite_in_axis(bxy, Uprime, Vprime, z, n, bound):
    """``Bt(U, w)`` with ``Bt(U', z**n) == bxy``."""
    E = bxy.ring
    inv = invert(PlaneAut(Uprime, Vprime))
    Z2 = inv(z)
    cY = Z2.coefficient((0, 1))
    if cY and Z2 == Polynomial.variable(E, PQ, "Q") * cY:
        B2 = inv(bxy)
        terms = {}
        scale = 1 / cY ** n
        for m, c in B2.terms.items():
            if m[1] % n:
                return None
            terms[(m[0], m[1] // n)] = c * scale ** (m[1] // n)
        return Polynomial(E, AXIS_VARS, terms)
    res = _deepening_membership(bxy, [Uprime, z ** n], bound)
    if not res:
        return None
    return res.poly.rename({"T1": "U", "T2": "w"})


def analyze_over_field(inp, degree_bound=None):
    """Find a variable ``U`` with ``k[X,Y,Z] = k[U, g, Z]``."""
    k, a, b, n = inp.ring, inp.a, inp.b, inp.n
    p = k.characteristic
    if p and n % p == 0:
        return AnalysisReport("NotApplicable", reason=f"characteristic {p} divides n = {n}",
                              stage="characteristic",
                              notes=["the root-of-unity argument needs char k prime to n; "
                                     "Z^4 - Y - Y^6 over GF(2) shows the condition cannot be dropped"])
    if n == 1:
        return AnalysisReport("Unknown", stage="n=1",
                              notes=["asserted_conclusion: linear planes bZ - a are variables "
                                     "when b is not divisible by the uniformizer; no construction implemented"])
    notes = []
    E, omega = cyclotomic_adjoin(k, n)
    if inp.certificate is not None:
        cert = inp.certificate
        check = verify_plane_certificate(inp)
        if not check:
            return _rejected("certificate", f"supplied certificate fails at {check.stage}")
    else:
        try:
            cert = auto_certificate(a, b, n)
        except CannotConstruct as exc:
            return _rejected("certificate", str(exc))
        notes.append("plane certificate built automatically")
    certE = cert.change_ring(E)
    try:
        sigma = induced_automorphism(certE, omega, n)
        diag = diagonalize_finite_order(sigma, n, omega)
    except (OrderCheckFailed, PlaneAutError) as exc:
        return _rejected("diagonalize", str(exc))
    if diag.alpha == 1:
        Uprime, Vprime = diag.U, diag.V
    elif diag.beta == 1:
        Uprime, Vprime = diag.V, diag.U
    else:
        return _rejected("diagonalize", "neither eigenvalue is 1")
    data = {"sigma": sigma, "U'": Uprime, "V'": Vprime, "E": E, "omega": omega}
    axis = None
    try:
        if b.is_constant():
            pair = coordinate_pair(a, b)
            if pair is None:
                return _rejected("partner", "a is not a recognised coordinate")
            U = pair.U
            notes.append("b is constant; U is a partner of a")
        else:
            maxdeg = max(f.degree() for f in (certE.x, certE.y, certE.z))
            bound = degree_bound or b.degree() * maxdeg
            bE = b.change_ring(E)
            bxy = bE.substitute({"X": certE.x, "Y": certE.y}, PQ, E)
            Bt = _rewrite_in_axis(bxy, Uprime, Vprime, certE.z, n, bound)
            if Bt is None:
                return _rejected("rewrite", f"b not found in E[U', w] at degree bound {bound}")
            axis = extract_axis(Bt)
            zn = certE.z ** n
            g1 = axis.g1.substitute({"U": Polynomial.zero(E, PQ), "w": zn}, PQ, E)
            U_E_pq = Uprime - g1
            back = _deepening_membership(U_E_pq, [certE.x, certE.y], b.degree())
            if not back:
                return _rejected("pullback", "U' - g1(w) not found in E[x, y]", axis=axis)
            U_E = back.poly.rename({"T1": "X", "T2": "Y"})
            U = descend_to_base(U_E, k)
            pair = _pair_with_b(a, U, b)
            if pair is None or pair.U != U:
                return _rejected("verify", "b is not in k[U]", U=U, axis=axis)
    except (NotSplitOverConstants, DescentFailed, NotAnAutomorphism) as exc:
        return _rejected(type(exc).__name__, str(exc), axis=axis)
    if not subring_membership(b, [U]):
        return _rejected("verify", "b is not in k[U]", U=U, axis=axis)
    try:
        jvdk_decompose(PlaneAut(U, a))
    except NotAnAutomorphism as exc:
        return _rejected("verify", f"(U, a) is not an automorphism: {exc}", U=U, axis=axis)
    triple = triple_certificate(pair, a, b, n)
    return AnalysisReport("Variable", U=U, axis=axis, triple=triple, notes=notes, data=data)


@dataclass
class ConditionResult:
    status: str
    detail: str = ""

    @property
    def verified(self):
        return self.status == "Verified"


@dataclass
class RSAudit:
    label: str
    conditions: Dict[str, ConditionResult]
    conclusion: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def all_verified(self):
        return all(c.verified for c in self.conditions.values())


def _det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = None
    for j, entry in enumerate(rows[0]):
        if not entry:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0] * 0


def jacobian_minors(polys):
    """Nonzero maximal minors of the Jacobian, keyed by variable subset."""
    from itertools import combinations

    vars = polys[0].vars
    out = {}
    for cols in combinations(vars, len(polys)):
        d = _det([[f.derivative(v) for v in cols] for f in polys])
        if d:
            out[cols] = d
    return out


def _exponent_rank(vectors):
    from fractions import Fraction

    rows = [[Fraction(e) for e in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def algebraically_independent(polys, relation_bound=3):
    """``(True|False|None, method)``; ``None`` means inconclusive."""
    if any(f.degree() < 1 for f in polys):
        return False, "a generator is constant"
    lms = [f.leading_monomial() for f in polys]
    if _exponent_rank(lms) == len(polys):
        return True, "leading monomials are multiplicatively independent"
    ring = polys[0].ring
    perfect = ring.characteristic == 0 or isinstance(ring, PrimeField) or (
        isinstance(ring, SimpleExtension) and isinstance(ring.base, PrimeField))
    if perfect:
        minors = jacobian_minors(polys)
        if minors:
            cols, d = sorted(minors.items(), key=lambda kv: (kv[1].degree(), kv[0]))[0]
            return True, f"Jacobian minor in {','.join(cols)} is {d!r}"
    from .linalg import kernel_vector

    K = ring.fraction_field()
    exps = [e for total in range(1, relation_bound + 1)
            for e in _exps(total, len(polys))]
    cols = []
    for e in exps:
        prod = Polynomial.constant(ring, polys[0].vars, 1)
        for f, k in zip(polys, e):
            prod = prod * f ** k
        cols.append({m: K(c) for m, c in prod.terms.items()})
    cols.append({(0,) * len(polys[0].vars): K.one})
    if kernel_vector(cols, K.one) is not None:
        return False, f"relation of degree <= {relation_bound} found"
    return None, f"no relation of degree <= {relation_bound}; independence not shown"


def _exps(total, k):
    if k == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exps(total - first, k - 1):
            yield (first,) + rest


def _expr_names(m):
    return tuple(f"S{i + 1}" for i in range(m)) + ("W",)


def _complement_condition(gens, w, inverse, field, degree_bound, where):
    vars = gens[0].vars
    m = len(gens)
    if w is None:
        return ConditionResult("NotVerified", f"no complement witness over {where}"), []
    notes = []
    if m + 1 != len(vars):
        return ConditionResult("NotVerified", "generators plus witness do not match the number of variables"), notes
    system = list(gens) + [w]
    J = _det([[f.derivative(v) for v in vars] for f in system])
    if not J or not J.is_constant():
        notes.append(f"Jacobian determinant over {where} is {J!r}, not a nonzero constant, so "
                     "these elements cannot generate the ambient ring")
        return ConditionResult("NotVerified", "Jacobian determinant is not a unit"), notes
    names = _expr_names(m)
    if inverse is None:
        inverse = {}
        for v in vars:
            target = Polynomial.variable(field, vars, v)
            res = _deepening_membership(target, system, degree_bound)
            if not res:
                notes.append(f"{v} not found in the generated algebra at degree bound {degree_bound} "
                             "(not a proof of non-membership)")
                return ConditionResult("NotVerified", f"no inverse expression for {v}"), notes
            old = res.poly.vars
            inverse[v] = res.poly.rename(dict(zip(old, names)))
    images = dict(zip(names, system))
    for v in vars:
        e = inverse.get(v)
        if e is None:
            return ConditionResult("NotVerified", f"missing inverse expression for {v}"), notes
        e = e.change_ring(field)
        if e.substitute(images, vars, field) != Polynomial.variable(field, vars, v):
            return ConditionResult("NotVerified", f"inverse expression for {v} does not replay"), notes
    return ConditionResult("Verified", f"{where}[vars] = {where}[generators][w] by explicit inverse"), notes


def russell_sathaye_check(R, generators, w3=None, inverse3=None, w4=None, inverse4=None,
                          degree_bound=4, label=""):
    """Audit the four conditions for ``A = R[vars]`` over ``D = R[generators]`` at the uniformizer.

    ``w3`` lives over the fraction field (``A[1/t] = D[1/t][w3]``) and
    ``w4`` over the residue field (``A/tA = (D/tD)[w4]``).  Inverse
    expressions are polynomials in ``S1..Sm, W``; missing ones are
    searched for up to ``degree_bound``.
    """
    K, k = R.K, R.k
    gens = list(generators)
    vars = gens[0].vars
    conds = {}
    notes = []
    conds["1-prime"] = ConditionResult(
        "Verified", f"A/{R.uniformizer_name}A = {k.name}[{', '.join(vars)}] is a domain")
    genK = [f.change_ring(K) for f in gens]
    genk = [residue_polynomial(f) for f in gens]
    indK, howK = algebraically_independent(genK)
    indk, howk = (False, "a generator reduces to a constant") if any(
        f.degree() < 1 for f in genk) else algebraically_independent(genk)
    if indK and indk:
        conds["2-contraction"] = ConditionResult("Verified", f"over {K.name}: {howK}; mod t: {howk}")
    else:
        conds["2-contraction"] = ConditionResult("NotVerified", f"over {K.name}: {howK}; mod t: {howk}")
    w3K = w3.change_ring(K) if w3 is not None and w3.ring != K else w3
    c3, n3 = _complement_condition(genK, w3K, inverse3, K, degree_bound, K.name)
    conds["3-generic"] = c3
    notes += n3
    if w4 is not None and w4.ring != k:
        w4 = residue_polynomial(w4)
    c4, n4 = _complement_condition(genk, w4, inverse4, k, degree_bound, k.name)
    conds["4-closed"] = c4
    notes += n4
    audit = RSAudit(label, conds, notes=notes)
    if audit.all_verified:
        gtxt = ", ".join(repr(f) for f in gens)
        audit.conclusion = f"{R.name}[{', '.join(vars)}] = {R.name}[{gtxt}]^[1]"
    return audit


def _rename_pair_inverse(pair_inv_component):
    # (X, Y) stand for (U, a)
    return pair_inv_component.rename({"X": "W", "Y": "S1"})


def _rename_triple_inverse(component):
    # (S1, S2, S3) stand for (U, g, Z)
    return component.rename({"S1": "W", "S2": "S1", "S3": "S2"})


def _closed_fiber_divisible(a_bar, n):
    """Closed fiber when t | b: the plane is -a_bar and needs a_bar to be a coordinate."""
    k = a_bar.ring
    if a_bar.degree() < 1:
        return _rejected("closed", "a reduces to a constant")
    pair = coordinate_pair(a_bar, Polynomial.zero(k, VARS2))
    if pair is None:
        return _rejected("closed", "reduction of a is not a recognised coordinate")
    triple = triple_certificate(pair, a_bar, Polynomial.zero(k, VARS2), n)
    return AnalysisReport("Variable", U=pair.U, triple=triple,
                          notes=["t divides b; the closed fiber of g is -a mod t"])


def _integral(f, R):
    return all(R.contains(c) for c in f.terms.values())


def analyze_over_dvr(inp, degree_bound=None):
    """Fiberwise analysis over a DVR glued by the Russell-Sathaye criterion."""
    R, a, b, n = inp.ring, inp.a, inp.b, inp.n
    if not isinstance(R, DvrLocal):
        raise TypeError("analyze_over_dvr needs a DVR")
    K, k = R.K, R.k
    t_divides_b = min(R.valuation(c) for c in b.terms.values()) > 0
    if n == 1:
        if t_divides_b:
            return AnalysisReport("Unknown", stage="n=1",
                                  notes=["n = 1 with t | b: it is not yet known whether g is a variable"])
        return AnalysisReport("Unknown", stage="n=1",
                              notes=["asserted_conclusion: R[X,Y,Z] = R[g]^[2] for linear planes with t not "
                                     "dividing b; the construction is not implemented"])
    p = k.characteristic
    if p and n % p == 0:
        return AnalysisReport("NotApplicable", stage="characteristic",
                              reason=f"residue characteristic {p} divides n = {n}",
                              notes=["open regime: whether R[X,Y,Z] = R[g]^[2] is not settled in general; "
                                     "supply Russell-Sathaye witnesses (rs-check) for specific instances"])
    certK = certk = None
    if inp.certificate is not None:
        certK = inp.certificate.change_ring(K)
        certk = inp.certificate.change_ring(k, R.residue)
    generic = analyze_over_field(PlaneInput(K, a.change_ring(K), b.change_ring(K), n, certK), degree_bound)
    fibers = {"generic": generic}
    if generic.verdict != "Variable":
        return AnalysisReport(generic.verdict, stage="generic", fibers=fibers,
                              reason=f"generic fiber: {generic.reason}")
    a_bar = residue_polynomial(a)
    if t_divides_b:
        closed = _closed_fiber_divisible(a_bar, n)
    else:
        closed = analyze_over_field(PlaneInput(k, a_bar, residue_polynomial(b), n, certk), degree_bound)
    fibers["closed"] = closed
    if closed.verdict != "Variable":
        return AnalysisReport("Rejected", stage="closed", fibers=fibers,
                              reason=f"closed fiber: {closed.verdict} {closed.reason}".strip())
    notes = []
    U = generic.U
    x0 = intersect_coefficient_ring(U, R)
    mem = subring_membership(b, [x0.W])
    if not mem:
        return AnalysisReport("Rejected", stage="X0", fibers=fibers, U=U, X0=x0.W,
                              reason="b not found in R[X0]")
    notes.append(f"b = {mem.poly.rename({'T': 'X0'})!r} with X0 = {x0.W!r}")
    content, _ = content_primitive(a - a.constant_term())
    notes.append("a - a(0) has unit content, so tR[X,Y] meets R[a] in tR[a]"
                 if R.is_unit(content) else "a - a(0) has non-unit content")
    aK = a.change_ring(K)
    invK = invert(PlaneAut(U, aK))
    invk = invert(PlaneAut(closed.U, a_bar))
    audit_a = russell_sathaye_check(
        R, [a], w3=U, inverse3={"X": _rename_pair_inverse(invK.F), "Y": _rename_pair_inverse(invK.G)},
        w4=closed.U, inverse4={"X": _rename_pair_inverse(invk.F), "Y": _rename_pair_inverse(invk.G)},
        label="R[a] in R[X,Y]")
    g = inp.g
    Z = Polynomial.variable(R, VARS3, "Z")
    audit_g = russell_sathaye_check(
        R, [g, Z], w3=generic.triple.forward[0],
        inverse3={v: _rename_triple_inverse(e) for v, e in zip(VARS3, generic.triple.inverse)},
        w4=closed.triple.forward[0],
        inverse4={v: _rename_triple_inverse(e) for v, e in zip(VARS3, closed.triple.inverse)},
        label="R[g, Z] in R[X,Y,Z]")
    residual = residual_coordinate_check(x0.W)
    notes.append(f"X0 residual check: {residual.verdict}")
    data = {"b_in_X0": mem, "X0_data": x0, "residual_X0": residual,
            "triple_integral": all(_integral(f, R) for f in generic.triple.inverse)}
    verdict = "Variable" if audit_a.all_verified and audit_g.all_verified else "Unknown"
    reason = "" if verdict == "Variable" else "Russell-Sathaye audit incomplete"
    return AnalysisReport(verdict, reason=reason, U=U, X0=x0.W, axis=generic.axis, triple=generic.triple,
                          fibers=fibers, rs_audit=[audit_a, audit_g], notes=notes, data=data)


def analyze(inp, degree_bound=None):
    if isinstance(inp.ring, DvrLocal):
        return analyze_over_dvr(inp, degree_bound)
    return analyze_over_field(inp, degree_bound)


def prop56_mode(inp):
    """Characteristic-zero DVR mode: the closed fiber of ``a`` must be a coordinate."""
    R, a, b, n = inp.ring, inp.a, inp.b, inp.n
    if R.K.characteristic != 0:
        raise ValueError("prop56_mode needs a characteristic-zero DVR")
    a_bar = residue_polynomial(a)
    if a_bar.degree() < 1:
        return AnalysisReport("Unknown", stage="closed", reason="a reduces to a constant")
    res = is_coordinate(a_bar)
    if not res.accepted:
        return AnalysisReport("Unknown", stage="closed", reason=f"reduction of a rejected: {res.reason}",
                              notes=["the algebraic-closedness hypothesis is not decided by a rejection"])
    aK, bK = a.change_ring(R.K), b.change_ring(R.K)
    pair = coordinate_pair(aK, bK)
    data = {"closed_certificate": res.certificate}
    if pair is None:
        return AnalysisReport("Unknown", stage="generic", data=data,
                              reason="no triple certificate over the fraction field")
    triple = triple_certificate(pair, aK, bK, n)
    notes = ["conclusion: R[X,Y] = R[a]^[1] and R[X,Y,Z] = R[Z,g]^[1]"]
    data["triple_integral"] = all(_integral(f, R) for f in triple.forward + triple.inverse)
    if data["triple_integral"]:
        notes.append("the triple certificate has coefficients in R")
    return AnalysisReport("Variable", U=pair.U, triple=triple, notes=notes, data=data)


@dataclass
class SweepReport:
    fibers: Dict[str, object]
    verdict: str
    qualifier: str
    flags: dict


def _fiber_field(p):
    return QQ if p in (0, "generic") else PrimeField(int(p))


def _plane_fiber(k, a, b, n):
    p = k.characteristic
    if n == 1 or (p and n % p == 0):
        pair = coordinate_pair(a, b)
        if pair is None:
            return _rejected("direct", "no coordinate pair (U, a) with b in k[U]")
        return AnalysisReport("Variable", U=pair.U, triple=triple_certificate(pair, a, b, n),
                              notes=["direct construction from a coordinate pair"])
    return analyze_over_field(PlaneInput(k, a, b, n))


def residual_fiber_sweep(primes, plane=None, W=None):
    """Fiber verdicts over Z at the listed primes (``"generic"`` for Q).

    ``plane`` is ``(a, b, n)`` with integer coefficients; ``W`` a single
    polynomial tested for being a coordinate on each fiber.
    """
    if (plane is None) == (W is None):
        raise ValueError("give exactly one of plane or W")
    fibers = {}
    for p in primes:
        k = _fiber_field(p)
        label = "generic" if k is QQ else str(p)
        if plane is not None:
            a, b, n = plane
            ab = [f.change_ring(k) for f in (a, b)]
            if not ab[1]:
                fibers[label] = _rejected("fiber", "b vanishes on this fiber")
                continue
            fibers[label] = _plane_fiber(k, ab[0], ab[1], n)
        else:
            f = W.change_ring(k)
            if f.degree() < 1:
                fibers[label] = "Reject"
                continue
            fibers[label] = "Variable" if is_coordinate(f).accepted else "Reject"
    flags = {"contains-Q": False, "seminormal": "holds (Z is normal)"}
    if not fibers:
        return SweepReport(fibers, "PartialSweep", "no primes listed; no conclusion", flags)
    verdicts = [f if isinstance(f, str) else f.verdict for f in fibers.values()]
    if any(v != "Variable" for v in verdicts):
        return SweepReport(fibers, "Reject", "a listed fiber is not Variable; no conclusion", flags)
    return SweepReport(fibers, "AllListedFibersVariable",
                       "PartialSweep: only the listed primes were checked; the global conclusion "
                       "needs every prime and is flagged by the seminormal hypothesis", flags)
