"""Polynomial factorization and roots of unity.

Univariate factoring over Q and GF(p) delegates to sympy; over a simple
extension it uses Trager's norm reduction on top of that.  Every result
is checked by multiplying back.
"""

from fractions import Fraction
from itertools import combinations

import sympy

from . import upoly
from .errors import DegenerateOrder, ResourceBound, Unsupported
from .poly import Polynomial
from .rings import (ExtElement, FunctionField, PrimeField, RationalField,
                    SimpleExtension)

DEGREE_BOUND = 12

_x, _y = sympy.symbols("x y")


def _to_sympy_coeff(c, field):
    if isinstance(field, RationalField):
        return sympy.Rational(c.numerator, c.denominator)
    if isinstance(field, PrimeField):
        return sympy.Integer(c.v)
    raise Unsupported(f"no sympy conversion for {field}")


def _from_sympy_coeff(c, field):
    c = sympy.Rational(c)
    return field(Fraction(int(c.p), int(c.q)))


def _sympy_factor(coeffs, field):
    expr = sum(_to_sympy_coeff(c, field) * _x ** i for i, c in enumerate(coeffs) if c)
    if isinstance(field, PrimeField):
        poly = sympy.Poly(expr, _x, modulus=field.p)
    else:
        poly = sympy.Poly(expr, _x, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for fac, mult in facs:
        dense = [_from_sympy_coeff(c, field) for c in reversed(fac.all_coeffs())]
        out.append((upoly.monic(upoly.trim(dense)), mult))
    return out


def _finite_field_size(field):
    if isinstance(field, PrimeField):
        return field.p
    if isinstance(field, SimpleExtension):
        q = _finite_field_size(field.base)
        return None if q is None else q ** field.degree
    return None


def _squarefree_split(f, field):
    """Return list of (squarefree factor, multiplicity) with product f (monic)."""
    f = upoly.monic(f)
    out = []
    if len(f) <= 1:
        return out
    df = upoly.deriv(f)
    if not df:
        p = field.characteristic
        q = _finite_field_size(field)
        if not p or q is None:
            raise Unsupported(f"inseparable polynomial over {field}")
        # f = h(x^p) = g(x)^p with g's coefficients the p-th roots
        root_exp = q // p
        g = [f[i] ** root_exp for i in range(0, len(f), p)]
        return [(h, m * p) for h, m in _squarefree_split(g, field)]
    g = upoly.gcd(f, df)
    s = upoly.monic(upoly.divmod_(f, g)[0])
    mult = 1
    rest = f
    while len(s) > 1:
        rest = upoly.divmod_(rest, s)[0]
        t = upoly.gcd(rest, s)
        fac = upoly.monic(upoly.divmod_(s, t)[0])
        if len(fac) > 1:
            out.append((fac, mult))
        s = t
        mult += 1
    if len(rest) > 1:
        out.extend(_squarefree_split(rest, field))
    return out


def _resultant_norm(g_coeffs, field):
    """Norm of g in field[x] down to field.base[x], via a resultant."""
    base = field.base
    m = list(field.modulus)
    my = sum(_to_sympy_coeff(c, base) * _y ** i for i, c in enumerate(m) if c)
    gx = 0
    for i, c in enumerate(g_coeffs):
        for j, b in enumerate(c.c):
            if b:
                gx += _to_sympy_coeff(b, base) * _y ** j * _x ** i
    res = sympy.Poly(sympy.resultant(my, gx, _y), _x)
    return upoly.trim([_from_sympy_coeff(c, base) for c in reversed(res.all_coeffs())])


def _trager(f, field):
    """Factor a monic squarefree f over a simple extension."""
    base = field.base
    theta = field.gen()
    for s in range(0, 20):
        shift = [-(theta * s), field.one] if s else [field.zero, field.one]
        shifted = upoly.compose(f, shift)
        norm = _resultant_norm(shifted, field)
        if not norm:
            continue
        if len(upoly.gcd(norm, upoly.deriv(norm))) > 1:
            continue
        facs = univariate_factor_dense(norm, base)[1]
        out = []
        back = [theta * s, field.one]
        for h, _ in facs:
            hE = upoly.compose([field(c) for c in h], back)
            g = upoly.gcd(f, hE)
            if len(g) > 1:
                out.append(g)
        return out
    raise Unsupported("Trager norm never squarefree")


def univariate_factor_dense(coeffs, field, bound=DEGREE_BOUND):
    """Factor a dense univariate polynomial over a field.

    Returns ``(unit, [(monic irreducible, multiplicity), ...])``.
    """
    f = upoly.trim([field(c) for c in coeffs])
    if not f:
        raise ValueError("cannot factor zero")
    unit = f[-1]
    if len(f) == 1:
        return unit, []
    if len(f) - 1 > bound:
        raise ResourceBound(f"degree {len(f) - 1} exceeds factorization bound {bound}")
    if isinstance(field, (RationalField, PrimeField)):
        out = _sympy_factor(f, field)
    elif isinstance(field, FunctionField):
        mf = upoly.monic(f)
        if not all(c.is_constant() for c in mf):
            raise Unsupported(f"factorization over {field} with non-constant coefficients")
        _, facs = univariate_factor_dense([c.constant() for c in mf], field.base, bound)
        out = [([field(c) for c in h], m) for h, m in facs]
    elif isinstance(field, SimpleExtension):
        if not isinstance(field.base, (RationalField, PrimeField)):
            raise Unsupported(f"factorization over tower {field}")
        out = []
        for s, m in _squarefree_split(f, field):
            for g in _trager(s, field):
                out.append((g, m))
    else:
        raise Unsupported(f"factorization over {field}")
    out.sort(key=lambda t: (len(t[0]), [field.format(c) for c in t[0]]))
    check = [unit]
    for h, m in out:
        for _ in range(m):
            check = upoly.mul(check, h)
    if not (len(check) == len(f) and all(a == b for a, b in zip(check, f))):
        raise AssertionError("factorization failed multiply-back check")
    return unit, out


def univariate_factor(f, bound=DEGREE_BOUND):
    """Factor a univariate :class:`Polynomial` over its coefficient field."""
    used = f.used_vars()
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    if not used:
        return f.leading_coefficient(), []
    var = used[0]
    field = f.ring
    if not field.is_field:
        raise Unsupported(f"factorization over non-field {field}")
    i = f.vars.index(var)
    dense = [field.zero] * (f.degree() + 1)
    for m, c in f.terms.items():
        dense[m[i]] = c
    unit, facs = univariate_factor_dense(dense, field, bound)
    out = []
    for h, mult in facs:
        terms = {tuple(e if j == i else 0 for j in range(len(f.vars))): c for e, c in enumerate(h) if c}
        out.append((Polynomial(field, f.vars, terms), mult))
    return unit, out


def roots_in_field(coeffs, field):
    """Distinct roots of a univariate polynomial that lie in ``field``."""
    f = upoly.trim([field(c) for c in coeffs])
    if len(f) <= 1:
        return []
    if len(f) == 2:
        return [-f[0] / f[1]]
    if isinstance(field, PrimeField) and field.p <= 257:
        return [a for a in field.elements() if not upoly.evaluate(f, a)]
    _, facs = univariate_factor_dense(f, field, bound=max(DEGREE_BOUND, len(f)))
    return [-h[0] for h, _ in facs if len(h) == 2]


def bivariate_factor(f, bound=DEGREE_BOUND):
    """Factor a polynomial in (at most) two variables over Q or GF(p).

    Returns ``(unit, [(irreducible, multiplicity), ...])``.
    """
    used = f.used_vars()
    if len(used) > 2:
        raise ValueError("more than two variables")
    if f.degree() > bound:
        raise ResourceBound(f"total degree {f.degree()} exceeds bound {bound}")
    if len(used) <= 1:
        return univariate_factor(f, bound)
    field = f.ring
    if isinstance(field, RationalField):
        return _bivariate_sympy(f)
    if isinstance(field, PrimeField):
        return _bivariate_kronecker(f, used)
    raise Unsupported(f"bivariate factorization over {field}")


def _bivariate_sympy(f):
    syms = sympy.symbols(f.vars)
    expr = 0
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s ** e
        expr += term
    content, facs = sympy.factor_list(expr, *syms)
    out = []
    unit = f.ring(Fraction(int(sympy.Rational(content).p), int(sympy.Rational(content).q)))
    for fac, mult in facs:
        p = sympy.Poly(fac, *syms)
        terms = {tuple(mon): Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
                 for mon, c in p.terms()}
        g = Polynomial(f.ring, f.vars, terms)
        lc = g.leading_coefficient()
        unit = unit * lc ** mult
        out.append((g / lc, mult))
    return unit, _verify_factors(f, unit, out)


def _bivariate_kronecker(f, used):
    field = f.ring
    xv, yv = used
    D = f.degree_in(xv) + 1
    ix, iy = f.vars.index(xv), f.vars.index(yv)
    lc = f.leading_coefficient()
    g = f / lc
    remaining = g
    out = []
    while not remaining.is_constant():
        D = remaining.degree_in(xv) + 1
        dense = [field.zero] * (remaining.degree_in(xv) + D * remaining.degree_in(yv) + 1)
        for m, c in remaining.terms.items():
            dense[m[ix] + D * m[iy]] = c
        _, ufacs = univariate_factor_dense(dense, field, bound=10 ** 6)
        pieces = [h for h, mult in ufacs for _ in range(mult)]
        found = None
        for size in range(1, len(pieces) // 2 + 1 if len(pieces) > 1 else 1):
            for combo in combinations(range(len(pieces)), size):
                prod = [field.one]
                for k in combo:
                    prod = upoly.mul(prod, pieces[k])
                cand = _unkron(prod, D, f.vars, ix, iy, field)
                if cand is None or cand.is_constant():
                    continue
                from .poly import exact_divide

                q = exact_divide(remaining, cand)
                if q is not None:
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            found = remaining
        found = found / found.leading_coefficient()
        mult = 0
        from .poly import exact_divide

        while True:
            q = exact_divide(remaining, found)
            if q is None:
                break
            remaining = q
            mult += 1
        out.append((found, mult))
    return lc, _verify_factors(f, lc, out)


def _unkron(dense, D, vars, ix, iy, field):
    terms = {}
    for k, c in enumerate(dense):
        if c:
            m = [0] * len(vars)
            m[ix] = k % D
            m[iy] = k // D
            terms[tuple(m)] = c
    return Polynomial(field, vars, terms)


def _verify_factors(f, unit, out):
    prod = Polynomial.constant(f.ring, f.vars, unit)
    for g, m in out:
        prod = prod * g ** m
    if prod != f:
        raise AssertionError("bivariate factorization failed multiply-back check")
    return out


def cyclotomic_dense(n):
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first."""
    f = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            f = upoly.divmod_(f, cyclotomic_dense(d))[0]
    return [Fraction(c) for c in f]


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order_is(x, n):
    if x ** n != 1:
        return False
    return all(x ** (n // q) != 1 for q in _prime_factors(n))


def cyclotomic_adjoin(base, n):
    """Adjoin a primitive n-th root of unity to ``base``.

    Returns ``(E, omega)`` where ``E`` is ``base`` itself when a primitive
    root already exists there, and otherwise ``base[zeta]/(m)`` for the
    first irreducible factor ``m`` of the n-th cyclotomic polynomial.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = base.characteristic
    if p and n % p == 0:
        raise DegenerateOrder(f"characteristic {p} divides {n}")
    if not base.is_field:
        base = base.fraction_field()
    if n == 1:
        return base, base.one
    phi = [base(c) for c in cyclotomic_dense(n)]
    _, facs = univariate_factor_dense(phi, base, bound=max(DEGREE_BOUND, len(phi)))
    linear = [h for h, _ in facs if len(h) == 2]
    if linear:
        roots = [-h[0] for h in linear]
        if isinstance(base, PrimeField):
            roots.sort(key=lambda r: r.v)
        omega = roots[0]
        E = base
    else:
        m = facs[0][0]
        E = SimpleExtension(base, m, name="zeta", check=False)
        omega = E.gen()
    if not multiplicative_order_is(omega, n):
        raise AssertionError("adjoined root has the wrong order")
    if isinstance(E, SimpleExtension):
        E.root_of_unity = (n, omega)
    return E, omega


def roots_of_unity(field, n, omega=None):
    """All n-th roots of unity in ``field``."""
    known = getattr(field, "root_of_unity", None)
    if omega is None and known is not None and known[0] % n == 0:
        omega = known[1] ** (known[0] // n)
    if omega is not None and multiplicative_order_is(field(omega), n):
        omega = field(omega)
        return [omega ** j for j in range(n)]
    coeffs = [field(-1)] + [field.zero] * (n - 1) + [field.one]
    return roots_in_field(coeffs, field)


__all__ = [
    "univariate_factor", "univariate_factor_dense", "bivariate_factor",
    "cyclotomic_adjoin", "cyclotomic_dense", "roots_in_field", "roots_of_unity",
    "multiplicative_order_is", "ExtElement",
]
