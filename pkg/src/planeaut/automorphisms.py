"""Automorphisms of the affine plane over a field.

A :class:`PlaneAut` is stored by the images ``(F, G)`` of the two
variables.  Composition follows polynomial maps: ``compose([A, B])`` is
``A o B``, whose components are ``A.F(B.F, B.G)`` and ``A.G(B.F, B.G)``,
so the rightmost factor is applied first to points.  Acting on a
polynomial, ``sigma(f) = f(F, G)``.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import upoly
from .errors import (CharacteristicDividesOrder, InfiniteOrder,
                     NotAnAutomorphism, NotComaximalVariablePair,
                     NotFiniteOrder, RootsOfUnityMissing)
from .factor import roots_of_unity
from .linalg import solve_combination
from .poly import Polynomial, leading_form


class PlaneAut:
    __slots__ = ("F", "G", "_inverse")

    def __init__(self, F, G, inverse=None):
        if F.vars != G.vars or F.ring != G.ring:
            raise TypeError("components must share ring and variables")
        if len(F.vars) != 2:
            raise ValueError("plane automorphisms act on two variables")
        self.F = F
        self.G = G
        self._inverse = inverse

    @classmethod
    def identity(cls, ring, vars=("X", "Y")):
        return cls(Polynomial.variable(ring, vars, vars[0]), Polynomial.variable(ring, vars, vars[1]))

    @property
    def ring(self):
        return self.F.ring

    @property
    def vars(self):
        return self.F.vars

    def images(self):
        return {self.vars[0]: self.F, self.vars[1]: self.G}

    def __call__(self, f):
        """Apply to a polynomial in the same variables: ``f(F, G)``."""
        return f.substitute(self.images(), self.vars, self.ring)

    def compose(self, other):
        """``self o other``."""
        imgs = other.images()
        return PlaneAut(self.F.substitute(imgs, self.vars, self.ring),
                        self.G.substitute(imgs, self.vars, self.ring))

    __matmul__ = compose

    def is_identity(self):
        X, Y = (Polynomial.variable(self.ring, self.vars, v) for v in self.vars)
        return self.F == X and self.G == Y

    def degree(self):
        return max(self.F.degree(), self.G.degree())

    def power(self, n):
        result = PlaneAut.identity(self.ring, self.vars)
        for _ in range(n):
            result = result.compose(self)
        return result

    def change_ring(self, ring):
        return PlaneAut(self.F.change_ring(ring), self.G.change_ring(ring))

    def __eq__(self, other):
        return isinstance(other, PlaneAut) and self.F == other.F and self.G == other.G

    def __hash__(self):
        return hash((self.F, self.G))

    def __repr__(self):
        return f"({self.F!r}, {self.G!r})"


def _xy(ring, vars):
    return (Polynomial.variable(ring, vars, vars[0]), Polynomial.variable(ring, vars, vars[1]))


@dataclass(frozen=True)
class AffineAut:
    """``(X, Y) -> (a1*X + b1*Y + g1, a2*X + b2*Y + g2)``."""

    ring: object
    a1: object
    b1: object
    g1: object
    a2: object
    b2: object
    g2: object
    vars: Tuple[str, str] = ("X", "Y")

    def __post_init__(self):
        if not (self.a1 * self.b2 - self.a2 * self.b1):
            raise NotAnAutomorphism("singular affine part", "a1*b2 - a2*b1 = 0")

    def as_plane_aut(self):
        X, Y = _xy(self.ring, self.vars)
        return PlaneAut(X * self.a1 + Y * self.b1 + self.g1, X * self.a2 + Y * self.b2 + self.g2)

    @classmethod
    def from_plane_aut(cls, phi):
        if phi.F.degree() > 1 or phi.G.degree() > 1:
            return None
        x, y = phi.vars
        X, Y = _xy(phi.ring, phi.vars)
        c = lambda f, m: f.coefficient(m)
        try:
            return cls(phi.ring, c(phi.F, (1, 0)), c(phi.F, (0, 1)), phi.F.constant_term(),
                       c(phi.G, (1, 0)), c(phi.G, (0, 1)), phi.G.constant_term(), phi.vars)
        except NotAnAutomorphism:
            return None

    def in_bf2(self):
        return not self.a2

    def inverse(self):
        det = self.a1 * self.b2 - self.a2 * self.b1
        inv = 1 / det
        a1, b1, a2, b2 = self.b2 * inv, -self.b1 * inv, -self.a2 * inv, self.a1 * inv
        g1 = -(a1 * self.g1 + b1 * self.g2)
        g2 = -(a2 * self.g1 + b2 * self.g2)
        return AffineAut(self.ring, a1, b1, g1, a2, b2, g2, self.vars)

    kind = "affine"


@dataclass(frozen=True)
class ElementaryAut:
    """``(X, Y) -> (alpha*X + h(Y), beta*Y + gamma)``; ``h`` is a coefficient list."""

    ring: object
    alpha: object
    beta: object
    gamma: object
    h: Tuple = ()
    vars: Tuple[str, str] = ("X", "Y")

    def __post_init__(self):
        if not self.alpha or not self.beta:
            raise NotAnAutomorphism("singular elementary letter", "alpha and beta must be units")

    def h_poly(self):
        y = self.vars[1]
        return Polynomial(self.ring, self.vars, {(0, i): c for i, c in enumerate(self.h) if c})

    def as_plane_aut(self):
        X, Y = _xy(self.ring, self.vars)
        return PlaneAut(X * self.alpha + self.h_poly(), Y * self.beta + self.gamma)

    @classmethod
    def from_plane_aut(cls, phi):
        F, G = phi.F, phi.G
        if any(m[0] for m in G.terms) or G.degree() > 1 or not G.coefficient((0, 1)):
            return None
        alpha = F.coefficient((1, 0))
        if not alpha:
            return None
        h = [phi.ring.zero] * (max(F.degree_in(phi.vars[1]), 0) + 1)
        for m, c in F.terms.items():
            if m == (1, 0):
                continue
            if m[0]:
                return None
            h[m[1]] = c
        return cls(phi.ring, alpha, G.coefficient((0, 1)), G.constant_term(), tuple(upoly.trim(h)), phi.vars)

    def in_bf2(self):
        return len(self.h) <= 2

    def inverse(self):
        # X = (X' - h(Y))/alpha with Y = (Y' - gamma)/beta
        ia, ib = 1 / self.alpha, 1 / self.beta
        sub = [-self.gamma * ib, ib]
        hh = upoly.compose(list(self.h), sub) if self.h else []
        return ElementaryAut(self.ring, ia, ib, -self.gamma * ib,
                             tuple(upoly.scale(hh, -ia)), self.vars)

    kind = "elementary"


Letter = object


def letter_of(phi, prefer=None):
    """Classify a PlaneAut as an AffineAut or ElementaryAut letter (or None)."""
    e = ElementaryAut.from_plane_aut(phi)
    a = AffineAut.from_plane_aut(phi)
    if prefer == "affine" and a is not None:
        return a
    if e is not None:
        return e
    return a


def _in_bf2(letter):
    return letter.in_bf2()


def _is_identity_letter(letter):
    return letter.as_plane_aut().is_identity()


@dataclass
class AutWord:
    """Word of affine/elementary letters; ``compose(word)`` is their product."""

    letters: List[object]
    conjugator: Optional["AutWord"] = None
    ring: object = None
    vars: Tuple[str, str] = ("X", "Y")

    def __len__(self):
        return len(self.letters)

    def compose(self):
        return compose(self)

    def is_normal_form(self):
        if len(self.letters) <= 1:
            return True
        for a, b in zip(self.letters, self.letters[1:]):
            if a.kind == b.kind:
                return False
        return not any(_in_bf2(l) for l in self.letters[1:-1])

    def inverse(self):
        return AutWord([l.inverse() for l in reversed(self.letters)], ring=self.ring, vars=self.vars)


def compose(word, ring=None, vars=None):
    """Compose letters or PlaneAuts left to right as maps (rightmost acts first)."""
    if isinstance(word, AutWord):
        items = word.letters
        ring = ring or word.ring
        vars = vars or word.vars
    else:
        items = list(word)
    auts = [it if isinstance(it, PlaneAut) else it.as_plane_aut() for it in items]
    if not auts:
        if ring is None:
            raise ValueError("empty word needs a ring")
        return PlaneAut.identity(ring, vars or ("X", "Y"))
    result = auts[-1]
    for a in reversed(auts[:-1]):
        result = a.compose(result)
    return result


def _merge(a, b):
    """Merge two letters that share a factor (or where one is in Bf2)."""
    phi = a.as_plane_aut().compose(b.as_plane_aut())
    kinds = {l.kind for l in (a, b) if not _in_bf2(l)}
    prefer = kinds.pop() if len(kinds) == 1 else a.kind
    if prefer == "affine":
        res = AffineAut.from_plane_aut(phi)
    else:
        res = ElementaryAut.from_plane_aut(phi)
    if res is None:
        res = letter_of(phi)
    if res is None:
        raise AssertionError("merged letters left both factors")
    return res


def _mergeable(a, b):
    return a.kind == b.kind or _in_bf2(a) or _in_bf2(b)


def normalize_word(letters):
    """Reduce a letter list to amalgamated-product normal form."""
    letters = list(letters)
    while True:
        changed = False
        out = []
        for l in letters:
            if _is_identity_letter(l) and (out or len(letters) > 1):
                changed = True
                continue
            if out and _mergeable(out[-1], l):
                out[-1] = _merge(out[-1], l)
                changed = True
            else:
                out.append(l)
        out = [l for l in out if not _is_identity_letter(l)] or out[:1]
        letters = out
        if not changed:
            return letters


def jvdk_decompose(phi):
    """Decompose a plane automorphism into a normal-form :class:`AutWord`.

    Raises :class:`NotAnAutomorphism` naming the failing stage.
    """
    ring, vars = phi.ring, phi.vars
    F, G = phi.F, phi.G
    raw = []
    swap = AffineAut(ring, ring.zero, ring.one, ring.zero, ring.one, ring.zero, ring.zero, vars)
    while True:
        dF, dG = F.degree(), G.degree()
        if dF <= 1 and dG <= 1:
            if dF < 1 or dG < 1:
                raise NotAnAutomorphism("singular affine part", "a component is constant")
            raw.append(AffineAut.from_plane_aut(PlaneAut(F, G)) or _raise_singular())
            break
        if dF < 1 or dG < 1:
            raise NotAnAutomorphism("constant component", f"degrees {dF}, {dG}")
        flip = dG > dF
        big, small = (G, F) if flip else (F, G)
        db, ds = big.degree(), small.degree()
        if db % ds:
            raise NotAnAutomorphism("degree non-divisibility", f"{ds} does not divide {db}")
        k = db // ds
        lf_big = leading_form(big)
        lf_pow = leading_form(small) ** k
        c = lf_big.leading_coefficient() / lf_pow.leading_coefficient()
        if lf_big != lf_pow * c:
            raise NotAnAutomorphism("leading-form mismatch",
                                    f"leading form is not a scalar times the {k}-th power")
        h = [ring.zero] * k + [c]
        letter = ElementaryAut(ring, ring.one, ring.one, ring.zero, tuple(h), vars)
        big = big - small ** k * c
        if flip:
            raw.extend([swap, letter, swap])
            G = big
        else:
            raw.append(letter)
            F = big
    word = AutWord(normalize_word(raw), ring=ring, vars=vars)
    if compose(word) != phi:
        raise AssertionError("decomposition does not recompose")
    return word


def _raise_singular():
    raise NotAnAutomorphism("singular affine part", "determinant vanishes")


def is_automorphism(phi):
    try:
        jvdk_decompose(phi)
    except NotAnAutomorphism:
        return False
    return True


def peel(psi, letters):
    """``psi o l_1 o ... o l_k``, composed one letter at a time.

    When ``psi`` inverts the product of the letters every intermediate
    map has low degree, so this is a cheap exact inverse check.
    """
    for letter in letters:
        psi = psi.compose(letter.as_plane_aut() if not isinstance(letter, PlaneAut) else letter)
    return psi


def apply_letters(f, letters):
    """``f o l_1 o ... o l_k`` for a polynomial ``f``, one letter at a time."""
    for letter in letters:
        phi = letter if isinstance(letter, PlaneAut) else letter.as_plane_aut()
        f = phi(f)
    return f


def invert(phi):
    """Exact inverse, via decomposition."""
    if phi._inverse is not None:
        return phi._inverse
    word = jvdk_decompose(phi)
    inv = compose(word.inverse())
    if not peel(inv, word.letters).is_identity():
        raise AssertionError("inverse check failed")
    phi._inverse = inv
    inv._inverse = phi
    return inv


@dataclass(frozen=True)
class OrderResult:
    kind: str  # "finite", "infinite", "unknown"
    value: Optional[int] = None

    def __repr__(self):
        if self.kind == "finite":
            return f"Finite({self.value})"
        if self.kind == "unknown":
            return f"Unknown({self.value})"
        return "Infinite"


def conjugate_to_vertex(sigma):
    """Cyclically reduce ``sigma``'s normal form.

    Returns ``(tau, letter)`` with ``tau o sigma o tau^-1 == letter``, where
    ``tau`` is an :class:`AutWord` and ``letter`` a single vertex letter.
    Raises :class:`InfiniteOrder` if the cyclically reduced length is >= 2.
    """
    ring, vars = sigma.ring, sigma.vars
    letters = jvdk_decompose(sigma).letters
    conj = []
    while len(letters) >= 2:
        if len(letters) % 2 == 0 or not _mergeable(letters[0], letters[-1]):
            raise InfiniteOrder(f"cyclically reduced word of length {len(letters)}")
        last = letters[-1]
        conj.insert(0, last)
        letters = normalize_word([_merge(last, letters[0])] + letters[1:-1])
    tau = AutWord(normalize_word(conj) if conj else [], ring=ring, vars=vars)
    vertex = letters[0]
    # rebuild tau^-1 o vertex o tau from letters; cheaper than conjugating sigma
    check = compose(tau.inverse().letters + [vertex] + tau.letters, ring, vars)
    if check != sigma:
        raise AssertionError("conjugation check failed")
    return tau, vertex


def order_of(phi, bound=256):
    """Order of a plane automorphism: Finite(n), Infinite or Unknown(bound)."""
    try:
        _, vertex = conjugate_to_vertex(phi)
    except InfiniteOrder:
        return OrderResult("infinite")
    a = vertex.as_plane_aut()
    power = a
    for m in range(1, bound + 1):
        if power.is_identity():
            return OrderResult("finite", m)
        power = a.compose(power)
    return OrderResult("unknown", bound)


def order_divides(sigma, n):
    """Whether ``sigma^n`` is the identity, decided on the conjugate vertex letter."""
    try:
        _, vertex = conjugate_to_vertex(sigma)
    except InfiniteOrder:
        return False
    return vertex.as_plane_aut().power(n).is_identity()


@dataclass
class Diagonalization:
    U: Polynomial
    V: Polynomial
    alpha: object
    beta: object
    guard_checks: List[Tuple] = field(default_factory=list)


def lemma_guard_sum(f, alpha, beta, n):
    """``beta^(n-1) f(U) + beta^(n-2) f(alpha U) + ... + f(alpha^(n-1) U)`` as coefficients."""
    total = []
    for j in range(n):
        scaled = [c * alpha ** (i * j) for i, c in enumerate(f)]
        total = upoly.add(total, upoly.scale(scaled, beta ** (n - 1 - j)))
    return total


def _triangular_solve(sigma_loc, n, checks):
    """Diagonalize ``(alpha*X + mu, beta*Y + f(X))`` on its own coordinates."""
    ring, vars = sigma_loc.ring, sigma_loc.vars
    X, Y = _xy(ring, vars)
    P, Q = sigma_loc.F, sigma_loc.G
    if P.degree() > 1 or P.coefficient((0, 1)):
        raise AssertionError("local form is not triangular")
    alpha = P.coefficient((1, 0))
    mu = P.constant_term()
    beta = Q.coefficient((0, 1))
    if any(m[1] for m in (Q - Y * beta).terms):
        raise AssertionError("local form is not triangular")
    f_old = [ring.zero] * (max(Q.degree_in(vars[0]), 0) + 1)
    for m, c in (Q - Y * beta).terms.items():
        f_old[m[0]] = c
    f_old = upoly.trim(f_old)
    if alpha == 1:
        if mu:
            raise NotFiniteOrder("translation part survives although alpha = 1")
        shift = ring.zero
    else:
        shift = mu / (alpha - 1)
    U = X + shift
    # f(U) := f_old(U - shift)
    f = upoly.compose(f_old, [-shift, ring.one]) if f_old else []
    guard = lemma_guard_sum(f, alpha, beta, n)
    checks.append((tuple(f), alpha, beta, n, not guard))
    if guard:
        raise AssertionError("finite-order identity for the elementary part fails")
    g = []
    for i, a in enumerate(f):
        if not a:
            g.append(ring.zero)
            continue
        if beta == alpha ** i:
            raise AssertionError("alpha^i = beta with a_i != 0")
        g.append(a / (beta - alpha ** i))
    g = upoly.trim(g)
    gU = Polynomial.zero(ring, vars)
    Upow = Polynomial.constant(ring, vars, 1)
    for c in g:
        gU = gU + Upow * c
        Upow = Upow * U
    V = Y + gU
    if sigma_loc(U) != U * alpha or sigma_loc(V) != V * beta:
        raise AssertionError("local diagonalization check failed")
    return U, V, alpha, beta


def diagonalize_finite_order(sigma, n, omega=None):
    """Find coordinates ``U, V`` with ``sigma(U) = alpha*U`` and ``sigma(V) = beta*V``.

    ``sigma`` must have order dividing ``n``; the field must contain the
    n-th roots of unity (``omega`` may name a primitive one).
    """
    ring, vars = sigma.ring, sigma.vars
    p = ring.characteristic
    if p and n % p == 0:
        raise CharacteristicDividesOrder(f"characteristic {p} divides {n}")
    try:
        tau, vertex = conjugate_to_vertex(sigma)
    except InfiniteOrder:
        raise NotFiniteOrder("sigma has infinite order") from None
    if not vertex.as_plane_aut().power(n).is_identity():
        raise NotFiniteOrder(f"sigma^{n} is not the identity")
    T = compose(tau, ring, vars)
    sig = vertex.as_plane_aut()
    X, Y = _xy(ring, vars)
    if isinstance(vertex, ElementaryAut):
        C = PlaneAut(Y, X)
    else:
        a1, b1, a2, b2 = vertex.a1, vertex.b1, vertex.a2, vertex.b2
        roots = roots_of_unity(ring, n, omega)
        lam = None
        for r in roots:
            if not ((a1 - r) * (b2 - r) - a2 * b1):
                lam = r
                break
        if lam is None:
            raise RootsOfUnityMissing(f"no eigenvalue among the {n}-th roots of unity in {ring}")
        if a1 - lam or a2:
            nu1, nu2 = a2, lam - a1
        elif b2 - lam or b1:
            nu1, nu2 = b2 - lam, -b1
        else:
            nu1, nu2 = ring.one, ring.zero
        Ucoord = X * nu1 + Y * nu2
        C = PlaneAut(Ucoord, Y) if nu1 else PlaneAut(Ucoord, X)
    sigma_loc = C.compose(sig).compose(invert(C))
    checks = []
    Ul, Vl, alpha, beta = _triangular_solve(sigma_loc, n, checks)
    CT = C.compose(T)
    U, V = CT(Ul), CT(Vl)
    word = tau.inverse().letters + [vertex] + tau.letters  # equals sigma, checked above
    if apply_letters(U, word) != U * alpha or apply_letters(V, word) != V * beta:
        raise AssertionError("diagonalization check failed")
    if alpha ** n != 1 or beta ** n != 1:
        raise AssertionError("eigenvalues are not n-th roots of unity")
    if alpha == 1 and beta == 1 and not sigma.is_identity():
        raise AssertionError("trivial eigenvalues for a non-identity sigma")
    jvdk_decompose(PlaneAut(U, V))
    return Diagonalization(U, V, alpha, beta, checks)


def affine_translate_check(Xp, X1, degree_bound=None):
    """Return ``(alpha, beta)`` with ``Xp == alpha*X1 + beta``.

    ``X1`` must be a variable.  Comaximality of ``Xp`` and ``X1`` is first
    shown by finding ``A*Xp + B*X1 = 1`` with bounded-degree cofactors.
    """
    from .coordinates import find_partner, is_coordinate

    ring, vars = X1.ring, X1.vars
    D = degree_bound if degree_bound is not None else Xp.degree() + X1.degree()
    monos = [(i, d - i) for d in range(D + 1) for i in range(d + 1)]
    cols = []
    for gen in (Xp, X1):
        for m in monos:
            mono = Polynomial(ring, vars, {m: ring.one}, check=False)
            cols.append((gen * mono).terms)
    one = Polynomial.constant(ring, vars, 1)
    if solve_combination(cols, one.terms, ring.one) is None:
        raise NotComaximalVariablePair("no combination equal to 1 at the degree bound")
    res = is_coordinate(X1)
    if not res.accepted:
        raise NotComaximalVariablePair("X1 is not a certified variable")
    h = find_partner(X1, res.certificate)
    inv = invert(PlaneAut(X1, h))
    expr = inv(Xp)
    if expr.degree() > 1 or expr.coefficient((0, 1)):
        raise NotComaximalVariablePair("Xp is not affine in X1")
    alpha = expr.coefficient((1, 0))
    if not alpha:
        raise NotComaximalVariablePair("Xp is constant")
    return alpha, expr.constant_term()
