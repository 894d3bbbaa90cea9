"""Sparse multivariate polynomials over exact rings.

Monomials are exponent tuples aligned with the polynomial's variable
list; the monomial order is graded lexicographic with the first variable
largest.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from .errors import Unsupported, ZeroPolynomial
from .rings import DvrLocal, FunctionField

Monomial = Tuple[int, ...]


def grlex_key(m):
    return (sum(m), m)


class Polynomial:
    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring, vars, terms=None, check=True):
        self.ring = ring
        self.vars = tuple(vars)
        if terms is None:
            terms = {}
        if check:
            n = len(self.vars)
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"exponent {m} does not match variables {self.vars}")
                if any(e < 0 for e in m):
                    raise ValueError("negative exponent")
                c = ring(c)
                if c:
                    clean[m] = c
            terms = clean
        self.terms: Dict[Monomial, object] = terms

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring, vars):
        return cls(ring, vars, {}, check=False)

    @classmethod
    def constant(cls, ring, vars, c):
        c = ring(c)
        return cls(ring, vars, {(0,) * len(vars): c} if c else {}, check=False)

    @classmethod
    def variable(cls, ring, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(ring, vars, {m: ring.one}, check=False)

    def _like(self, terms):
        return Polynomial(self.ring, self.vars, terms, check=False)

    # -- coercion -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise TypeError(f"variable mismatch: {self.vars} vs {other.vars}")
            if other.ring != self.ring:
                raise TypeError(f"descriptor mismatch: {self.ring} vs {other.ring}")
            return other
        try:
            c = self.ring(other)
        except (TypeError, ValueError):
            return None
        return Polynomial.constant(self.ring, self.vars, c)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = self.ring(other)
            except (TypeError, ValueError):
                return NotImplemented
            if not c:
                return self._like({})
            return self._like({m: v * c for m, v in self.terms.items() if v * c})
        other = self._coerce(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return self._like({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.ring, self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c):
        c = self.ring.fraction_field()(c)
        inv = 1 / c
        return Polynomial(self.ring, self.vars, {m: v * inv for m, v in self.terms.items()})

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Polynomial) else other
        if other is None:
            return NotImplemented
        if other.vars != self.vars:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[m] for m, c in self.terms.items())

    def __hash__(self):
        return hash((self.vars, frozenset((m, hash(c)) for m, c in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parser import format_polynomial

        return format_polynomial(self)

    # -- inspection ---------------------------------------------------
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var):
        i = self.vars.index(var)
        return max((m[i] for m in self.terms), default=-1)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.ring.zero)

    def coefficient(self, m):
        return self.terms.get(tuple(m), self.ring.zero)

    def leading_monomial(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def homogeneous_part(self, d):
        return self._like({m: c for m, c in self.terms.items() if sum(m) == d})

    def used_vars(self):
        return [v for i, v in enumerate(self.vars) if any(m[i] for m in self.terms)]

    # -- structural maps ----------------------------------------------
    def map_coefficients(self, ring, fn):
        return Polynomial(ring, self.vars, {m: fn(c) for m, c in self.terms.items()})

    def change_ring(self, ring):
        return Polynomial(ring, self.vars, self.terms)

    def embed(self, vars):
        """Re-express over a variable list containing all used variables."""
        vars = tuple(vars)
        idx = []
        for i, v in enumerate(self.vars):
            if v in vars:
                idx.append(vars.index(v))
            elif any(m[i] for m in self.terms):
                raise ValueError(f"variable {v} not in {vars}")
            else:
                idx.append(None)
        terms = {}
        for m, c in self.terms.items():
            new = [0] * len(vars)
            for i, e in enumerate(m):
                if e:
                    new[idx[i]] = e
            terms[tuple(new)] = c
        return Polynomial(self.ring, vars, terms, check=False)

    def rename(self, mapping):
        return Polynomial(self.ring, [mapping.get(v, v) for v in self.vars], self.terms, check=False)

    def coefficients_in(self, var):
        """Map power of ``var`` to the coefficient polynomial (same variables)."""
        i = self.vars.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            out.setdefault(e, {})[mm] = c
        return {e: self._like(t) for e, t in out.items()}

    def derivative(self, var):
        i = self.vars.index(var)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                v = c * m[i]
                if v:
                    terms[m[:i] + (m[i] - 1,) + m[i + 1:]] = v
        return self._like(terms)

    def substitute(self, images, target_vars=None, target_ring=None):
        """Substitute ``images[v]`` for each variable ``v``.

        Variables missing from ``images`` map to themselves, which then
        must exist in the target variable list.
        """
        sample = next(iter(images.values()), None)
        if target_vars is None:
            target_vars = sample.vars if sample is not None else self.vars
        if target_ring is None:
            target_ring = sample.ring if sample is not None else self.ring
        if target_ring != self.ring:
            raise TypeError(f"descriptor mismatch: {self.ring} vs {target_ring}")
        target_vars = tuple(target_vars)
        imgs = []
        for v in self.vars:
            if v in images:
                img = images[v]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(target_ring, target_vars, img)
                if img.vars != target_vars or img.ring != target_ring:
                    raise TypeError("substitution images must share ring and variables")
                imgs.append(img)
            else:
                imgs.append(Polynomial.variable(target_ring, target_vars, v))
        powers = [dict() for _ in imgs]
        one = Polynomial.constant(target_ring, target_vars, 1)

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                if e == 0:
                    cache[e] = one
                elif e == 1:
                    cache[e] = imgs[i]
                else:
                    cache[e] = pw(i, e // 2) * pw(i, e - e // 2)
            return cache[e]

        acc = {}
        for m, c in self.terms.items():
            prod = None
            for i, e in enumerate(m):
                if e:
                    prod = pw(i, e) if prod is None else prod * pw(i, e)
            if prod is None:
                prod = one
            for mm, cc in prod.terms.items():
                s = acc.get(mm)
                acc[mm] = c * cc if s is None else s + c * cc
        return Polynomial(target_ring, target_vars, {m: c for m, c in acc.items() if c}, check=False)

    def evaluate(self, values):
        """Evaluate at ring elements given per variable name."""
        total = self.ring.zero
        for m, c in self.terms.items():
            t = c
            for v, e in zip(self.vars, m):
                if e:
                    t = t * values[v] ** e
            total = total + t
        return total


class PolyRing:
    """Convenience factory for polynomials over a fixed ring and variable list."""

    def __init__(self, ring, vars):
        if isinstance(vars, str):
            vars = vars.replace(",", " ").split()
        self.ring = ring
        self.vars = tuple(vars)

    def gens(self):
        return tuple(Polynomial.variable(self.ring, self.vars, v) for v in self.vars)

    def gen(self, name):
        return Polynomial.variable(self.ring, self.vars, name)

    def __call__(self, c):
        if isinstance(c, Polynomial):
            return c.embed(self.vars).change_ring(self.ring) if c.ring != self.ring else c.embed(self.vars)
        return Polynomial.constant(self.ring, self.vars, c)

    def zero(self):
        return Polynomial.zero(self.ring, self.vars)

    def one(self):
        return Polynomial.constant(self.ring, self.vars, 1)

    def __repr__(self):
        return f"{self.ring.name}[{', '.join(self.vars)}]"


@dataclass(frozen=True)
class PolyMap:
    """Substitution ``source_vars[i] -> images[i]``; images share ring and variables."""

    source_vars: Tuple[str, ...]
    images: Tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.source_vars) != len(self.images):
            raise ValueError("one image per source variable")
        if self.images:
            r, vs = self.images[0].ring, self.images[0].vars
            for img in self.images:
                if img.ring != r or img.vars != vs:
                    raise TypeError("images must share descriptor and target variables")

    @property
    def target_vars(self):
        return self.images[0].vars

    @property
    def ring(self):
        return self.images[0].ring

    def as_dict(self):
        return dict(zip(self.source_vars, self.images))

    def __call__(self, f):
        return poly_substitute(f, self)


def poly_substitute(f, m):
    if f.ring != m.ring:
        raise TypeError(f"descriptor mismatch: {f.ring} vs {m.ring}")
    return f.substitute(m.as_dict(), m.target_vars, m.ring)


def leading_form(f):
    """Homogeneous component of top total degree."""
    if not f:
        raise ZeroPolynomial("leading form of zero")
    return f.homogeneous_part(f.degree())


def derivative(f, var):
    return f.derivative(var)


def content_primitive(f):
    """Split ``f = content * primitive``.

    Over a DVR the content is ``t**v`` with ``v`` the minimal coefficient
    valuation; over a field it is 1; over Z it is the integer gcd.
    """
    if not f:
        raise ZeroPolynomial("content of zero")
    R = f.ring
    if isinstance(R, DvrLocal):
        v = min(R.valuation(c) for c in f.terms.values())
        content = R.uniformizer ** v
        if v == 0:
            return R.one, f
        inv = 1 / content
        prim = Polynomial(R, f.vars, {m: c * inv for m, c in f.terms.items()}, check=False)
        return content, prim
    if R.name == "Z":
        from math import gcd

        g = 0
        for c in f.terms.values():
            g = gcd(g, int(c))
        g = R(g)
        return g, Polynomial(R, f.vars, {m: c / g for m, c in f.terms.items()}, check=False)
    return R.one, f


@dataclass(frozen=True)
class DivisionResult:
    is_member: bool
    quotient: object = None
    remainder: object = None

    def __bool__(self):
        return self.is_member


def exact_divide(f, g):
    """Return q with f = q*g, or None when g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return f._like({})
    lm_g = g.leading_monomial()
    lc_g = g.terms[lm_g]
    K = f.ring.fraction_field()
    inv = 1 / K(lc_g)
    r = f
    q = {}
    while r:
        lm = r.leading_monomial()
        diff = tuple(a - b for a, b in zip(lm, lm_g))
        if any(e < 0 for e in diff):
            return None
        c = r.terms[lm] * inv
        if not f.ring.contains(c):
            return None
        c = f.ring(c)
        q[diff] = c
        r = r - Polynomial(f.ring, f.vars, {diff: c}, check=False) * g
    return Polynomial(f.ring, f.vars, q, check=False)


def pseudo_remainder(f, g, var):
    """lc^e * f = q*g + r with deg_var r < deg_var g (lc = leading coefficient of g in var)."""
    dg = g.degree_in(var)
    cg = g.coefficients_in(var)
    lc = cg[dg]
    i = f.vars.index(var)
    r = f
    while r and r.degree_in(var) >= dg:
        dr = r.degree_in(var)
        lr = r.coefficients_in(var)[dr]
        shift = tuple(dr - dg if j == i else 0 for j in range(len(f.vars)))
        mono = Polynomial(f.ring, f.vars, {shift: f.ring.one}, check=False)
        r = lc * r - lr * mono * g
    return r


def principal_ideal_division(f, g, var):
    """Decide whether ``f`` lies in the principal ideal ``(g)``.

    ``g`` must have positive degree in ``var``.  Returns a
    :class:`DivisionResult`; on failure the remainder is the pseudo-remainder
    of ``f`` by ``g`` with respect to ``var``.
    """
    if g.degree_in(var) < 1:
        raise ValueError(f"divisor must have positive degree in {var}")
    q = exact_divide(f, g)
    if q is not None:
        return DivisionResult(True, quotient=q)
    return DivisionResult(False, remainder=pseudo_remainder(f, g, var))


def to_univariate(f, var, field):
    """Coefficient list (lowest first) of ``f`` in ``var`` over ``field``.

    ``field`` is either the coefficient field itself (when ``f`` has no
    other variables) or a :class:`FunctionField` in the single remaining
    variable.
    """
    others = [v for v in f.used_vars() if v != var]
    d = f.degree_in(var)
    coeffs = [field.zero] * (d + 1)
    if not others:
        for m, c in f.terms.items():
            e = m[f.vars.index(var)]
            coeffs[e] = coeffs[e] + field(c)
        return coeffs
    if len(others) > 1 or not isinstance(field, FunctionField):
        raise Unsupported("univariate view needs at most one other variable")
    o = f.vars.index(others[0])
    i = f.vars.index(var)
    by_power = {}
    for m, c in f.terms.items():
        by_power.setdefault(m[i], {})[m[o]] = c
    for e, cs in by_power.items():
        dense = [field.base.zero] * (max(cs) + 1)
        for k, c in cs.items():
            dense[k] = field.base(c)
        coeffs[e] = field.from_poly(dense)
    return coeffs


def from_univariate(coeffs, var, vars, ring, other=None):
    """Inverse of :func:`to_univariate`; rational-function coefficients must be polynomial."""
    vars = tuple(vars)
    i = vars.index(var)
    o = vars.index(other) if other is not None else None
    terms = {}
    for e, c in enumerate(coeffs):
        if not c:
            continue
        if hasattr(c, "den") and o is not None:
            if len(c.den) != 1:
                raise ValueError("coefficient is not a polynomial")
            for k, a in enumerate(c.num):
                if a:
                    m = [0] * len(vars)
                    m[i] = e
                    m[o] = k
                    terms[tuple(m)] = a / c.den[0]
        else:
            if hasattr(c, "den"):
                if not c.is_constant():
                    raise ValueError("coefficient is not a constant")
                c = c.constant()
            m = [0] * len(vars)
            m[i] = e
            terms[tuple(m)] = c
    return Polynomial(ring, vars, terms)


def squarefree_part(f, var):
    """``f / gcd(f, df/dvar)`` viewed in ``var`` over the fraction field of the rest.

    Supported for at most one other variable.  The result is normalized to
    be monic in ``var`` when that keeps it polynomial, otherwise it is made
    primitive in the other variable.
    """
    from . import upoly

    if not f:
        raise ZeroPolynomial("squarefree part of zero")
    others = [v for v in f.used_vars() if v != var]
    if len(others) > 1:
        raise Unsupported("squarefree_part supports at most two variables")
    K = f.ring.fraction_field()
    field = FunctionField(K, others[0]) if others else K
    u = upoly.trim(to_univariate(f, var, field))
    du = upoly.deriv(u)
    if not du:
        return f
    g = upoly.gcd(u, du)
    q = upoly.monic(upoly.divmod_(u, g)[0])
    if others:
        q = _clear_denominators(q, field)
    return from_univariate(q, var, f.vars, f.ring, others[0] if others else None)


def _clear_denominators(coeffs, field):
    from . import upoly

    den = [field.base.one]
    for c in coeffs:
        if c:
            den = _lcm(den, list(c.den))
    d = field.from_poly(den)
    out = [c * d for c in coeffs]
    num_gcd = []
    for c in out:
        if c:
            num_gcd = upoly.gcd(num_gcd, list(c.num)) if num_gcd else upoly.monic(list(c.num))
    if len(num_gcd) > 1:
        g = field.from_poly(num_gcd)
        out = [c / g for c in out]
    return out


def _lcm(a, b):
    from . import upoly

    g = upoly.gcd(a, b)
    return upoly.monic(upoly.divmod_(upoly.mul(a, b), g)[0])
