"""Exact coefficient rings.

Ring descriptors are immutable objects that coerce Python numbers into
canonical elements.  Element types:

* :data:`QQ` and localizations of the integers use :class:`fractions.Fraction`;
* prime fields use :class:`GFElement`;
* simple algebraic extensions use :class:`ExtElement`;
* rational function fields ``k(t)`` and the localization ``k[t]_(t)`` use
  :class:`RatFunc`.

Every element type supports ``+ - * / **`` with ints and Fractions, and is
falsy exactly when it is zero.
"""

from fractions import Fraction
from math import gcd

from . import upoly
from .errors import Unsupported

INFINITY = float("inf")


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class Ring:
    characteristic = 0
    is_field = True

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def contains(self, x):
        try:
            self(x)
        except (TypeError, ValueError, ZeroDivisionError):
            return False
        return True

    def is_unit(self, x):
        return bool(x)

    def fraction_field(self):
        return self

    def format(self, x):
        return str(x)

    def symbols(self):
        """Names the expression parser resolves to ring constants."""
        return {}


class RationalField(Ring):
    name = "Q"

    def key(self):
        return ("Q",)

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def format(self, x):
        return str(x)


QQ = RationalField()


class IntegerRing(Ring):
    """The integers; only used as a base for fiber sweeps."""

    name = "Z"
    is_field = False

    def key(self):
        return ("Z",)

    def __call__(self, x):
        x = QQ(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        return x

    def is_unit(self, x):
        return x in (1, -1)

    def fraction_field(self):
        return QQ


ZZ = IntegerRing()


class GFElement:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v % field.p
        self.field = field

    def _c(self, o):
        if isinstance(o, GFElement):
            if o.field.p != self.field.p:
                raise TypeError("mixing prime fields")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.field.p)
        return None

    def _new(self, v):
        return GFElement(v, self.field)

    def __add__(self, o):
        c = self._c(o)
        return NotImplemented if c is None else self._new(self.v + c)

    __radd__ = __add__

    def __sub__(self, o):
        c = self._c(o)
        return NotImplemented if c is None else self._new(self.v - c)

    def __rsub__(self, o):
        c = self._c(o)
        return NotImplemented if c is None else self._new(c - self.v)

    def __mul__(self, o):
        c = self._c(o)
        return NotImplemented if c is None else self._new(self.v * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.v)

    def inverse(self):
        if not self.v:
            raise ZeroDivisionError("zero has no inverse")
        return self._new(pow(self.v, -1, self.field.p))

    def __truediv__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return self * self._new(c).inverse()

    def __rtruediv__(self, o):
        c = self._c(o)
        return NotImplemented if c is None else self.inverse() * c

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.v, e, self.field.p))

    def __eq__(self, o):
        try:
            c = self._c(o)
        except (TypeError, ValueError):
            return False
        if c is None:
            return NotImplemented
        return (self.v - c) % self.field.p == 0

    def __hash__(self):
        return hash(("gf", self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField(Ring):
    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def key(self):
        return ("GF", self.p)

    def __call__(self, x):
        if isinstance(x, GFElement):
            if x.field.p != self.p:
                raise TypeError("mixing prime fields")
            return x
        if isinstance(x, int):
            return GFElement(x, self)
        if isinstance(x, Fraction):
            return GFElement(x.numerator * pow(x.denominator, -1, self.p), self)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def elements(self):
        return [GFElement(i, self) for i in range(self.p)]

    def format(self, x):
        return str(x.v)


def _wrap(s):
    if any(ch in s for ch in "+-*/ ") and not (s.startswith("(") and s.endswith(")")):
        return f"({s})"
    return s


class ExtElement:
    __slots__ = ("c", "field")

    def __init__(self, c, field):
        self.c = c
        self.field = field

    def _c(self, o):
        if isinstance(o, ExtElement) and o.field is self.field:
            return o.c
        try:
            return self.field(o).c
        except (TypeError, ValueError):
            return None

    def __add__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return ExtElement(tuple(x + y for x, y in zip(self.c, c)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(tuple(-x for x in self.c), self.field)

    def __sub__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return ExtElement(tuple(x - y for x, y in zip(self.c, c)), self.field)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return self.field._mul(self.c, c)

    __rmul__ = __mul__

    def inverse(self):
        return self.field._inverse(self.c)

    def __truediv__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return self * ExtElement(c, self.field).inverse()

    def __rtruediv__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return ExtElement(c, self.field) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        res = self.field.one
        base = self
        while e:
            if e & 1:
                res = res * base
            e >>= 1
            if e:
                base = base * base
        return res

    def __eq__(self, o):
        c = self._c(o)
        if c is None:
            return NotImplemented
        return all(x == y for x, y in zip(self.c, c))

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return self.field.format(self)


class SimpleExtension(Ring):
    """``base[x]/(m(x))`` for a monic irreducible ``m``.

    ``modulus`` is the coefficient list of ``m``, lowest degree first.
    """

    def __init__(self, base, modulus, name="w", check=True):
        modulus = upoly.monic(upoly.trim([base(c) for c in modulus]))
        if len(modulus) < 2:
            raise ValueError("modulus must have positive degree")
        if not base.is_field:
            raise Unsupported("extensions are only built over fields")
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.gen_name = name
        self.characteristic = base.characteristic
        self.name = f"{base.name}[{name}]/({upoly_str(modulus, name, base)})"
        if check:
            from .factor import univariate_factor_dense

            _, factors = univariate_factor_dense(list(modulus), base)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError(f"modulus of {self.name} is reducible")

    def key(self):
        return ("ext", self.base.key(), tuple(self.base.format(c) for c in self.modulus), self.gen_name)

    def __call__(self, x):
        if isinstance(x, ExtElement):
            if x.field == self:
                return x if x.field is self else ExtElement(x.c, self)
            raise TypeError(f"cannot coerce {x!r} into {self.name}")
        b = self.base(x)
        return ExtElement((b,) + (self.base.zero,) * (self.degree - 1), self)

    def gen(self):
        z = self.base.zero
        c = [z] * self.degree
        if self.degree == 1:
            return ExtElement((-self.modulus[0],), self)
        c[1] = self.base.one
        return ExtElement(tuple(c), self)

    def from_coeffs(self, coeffs):
        coeffs = [self.base(c) for c in coeffs]
        return self._reduce(coeffs)

    def _reduce(self, r):
        d = self.degree
        m = self.modulus
        r = list(r)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if not c:
                continue
            for j in range(d):
                r[i - d + j] = r[i - d + j] - c * m[j]
        z = self.base.zero
        r = r[:d] + [z] * (d - len(r))
        return ExtElement(tuple(r), self)

    def _mul(self, a, b):
        z = self.base.zero
        r = [z] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    r[i + j] = r[i + j] + x * y
        return self._reduce(r)

    def _inverse(self, a):
        g, s, _ = upoly.xgcd(list(a), list(self.modulus), self.base.one)
        if not g:
            raise ZeroDivisionError("zero has no inverse")
        return self._reduce(s)

    def characteristic_of(self):
        return self.characteristic

    def fraction_field(self):
        return self

    def format(self, x):
        return upoly_str(list(x.c), self.gen_name, self.base)

    def symbols(self):
        out = dict(self.base.symbols())
        out[self.gen_name] = self.gen()
        return out


def upoly_str(coeffs, var, base):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        cs = base.format(c)
        if i == 0:
            terms.append(cs)
            continue
        mon = var if i == 1 else f"{var}^{i}"
        if c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{_wrap(cs)}*{mon}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class RatFunc:
    """Reduced fraction num/den of dense polynomials; den is monic."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field, reduce=True):
        if reduce:
            num = upoly.trim(num)
            den = upoly.trim(den)
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                den = [field.base.one]
            else:
                g = upoly.gcd(num, den)
                if len(g) > 1:
                    num = upoly.divmod_(num, g)[0]
                    den = upoly.divmod_(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    inv = 1 / lc
                    num = [c * inv for c in num]
                    den = [c * inv for c in den]
        self.num = tuple(num)
        self.den = tuple(den)
        self.field = field

    def _c(self, o):
        if isinstance(o, RatFunc) and o.field.base == self.field.base:
            return o
        try:
            return self.field(o)
        except (TypeError, ValueError):
            return None

    def __add__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(upoly.add(self.num, o.num), self.den, self.field)
        num = upoly.add(upoly.mul(self.num, o.den), upoly.mul(o.num, self.den))
        return RatFunc(num, upoly.mul(self.den, o.den), self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc([-c for c in self.num], self.den, self.field, reduce=False)

    def __sub__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return RatFunc(upoly.mul(self.num, o.num), upoly.mul(self.den, o.den), self.field)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("zero has no inverse")
        return RatFunc(self.den, self.num, self.field)

    def __truediv__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        one = self.field.base.one
        return RatFunc(upoly.power(list(self.num), e, one), upoly.power(list(self.den), e, one), self.field)

    def __eq__(self, o):
        o = self._c(o)
        if o is None:
            return NotImplemented
        return (len(self.num) == len(o.num) and len(self.den) == len(o.den)
                and all(x == y for x, y in zip(self.num, o.num))
                and all(x == y for x, y in zip(self.den, o.den)))

    def __hash__(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return hash(self.num[0]) if self.num else hash(0)
        return hash((tuple(map(hash, self.num)), tuple(map(hash, self.den))))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return self.field.format(self)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def constant(self):
        return self.num[0] if self.num else self.field.base.zero


class FunctionField(Ring):
    """The rational function field ``base(t)``."""

    def __init__(self, base, name="t"):
        if not base.is_field:
            raise Unsupported("function fields are only built over fields")
        self.base = base
        self.var = name
        self.characteristic = base.characteristic
        self.name = f"{base.name}({name})"

    def key(self):
        return ("frac", self.base.key(), self.var)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.field.base == self.base:
                return x if x.field is self else RatFunc(x.num, x.den, self, reduce=False)
            raise TypeError(f"cannot coerce {x!r} into {self.name}")
        b = self.base(x)
        return RatFunc([b] if b else [], [self.base.one], self, reduce=False)

    def gen(self):
        return RatFunc([self.base.zero, self.base.one], [self.base.one], self, reduce=False)

    def from_poly(self, coeffs):
        return RatFunc([self.base(c) for c in coeffs], [self.base.one], self)

    def format(self, x):
        num = upoly_str(list(x.num), self.var, self.base)
        if len(x.den) == 1:
            return num
        return f"{_wrap(num)}/({upoly_str(list(x.den), self.var, self.base)})"

    def symbols(self):
        out = dict(self.base.symbols())
        out[self.var] = self.gen()
        return out


class DvrLocal(Ring):
    """A discrete valuation ring: ``Z_(p)`` or ``k[t]_(t)``.

    Elements live in the fraction field and are checked to have a
    denominator prime to the uniformizer.
    """

    is_field = False

    def fraction_field(self):
        return self.K

    def is_unit(self, x):
        return bool(x) and self.valuation(x) == 0

    def unit_part(self, x):
        return x / self.uniformizer ** self.valuation(x)

    def valuation_residue(self, x):
        v = self.valuation(x)
        return v, self.residue(x)


class IntegersAt(DvrLocal):
    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"Z_({p})"
        self.K = QQ
        self.k = PrimeField(p)
        self.uniformizer = Fraction(p)
        self.uniformizer_name = str(p)

    def key(self):
        return ("Zp", self.p)

    def __call__(self, x):
        x = QQ(x)
        if x.denominator % self.p == 0:
            raise ValueError(f"{x} is not in {self.name}")
        return x

    def valuation(self, x):
        x = QQ(x)
        if not x:
            return INFINITY
        v = 0
        n, d = x.numerator, x.denominator
        while n % self.p == 0:
            n //= self.p
            v += 1
        while d % self.p == 0:
            d //= self.p
            v -= 1
        return v

    def residue(self, x):
        x = self(x)
        if self.valuation(x) > 0:
            return self.k.zero
        return self.k(x)


class PolyAt(DvrLocal):
    def __init__(self, base, name="t"):
        self.base = base
        self.var = name
        self.K = FunctionField(base, name)
        self.k = base
        self.characteristic = base.characteristic
        self.name = f"{base.name}[{name}]_({name})"
        self.uniformizer = self.K.gen()
        self.uniformizer_name = name

    def key(self):
        return ("kt", self.base.key(), self.var)

    def __call__(self, x):
        x = self.K(x)
        if not x.den[0]:
            raise ValueError(f"{x} is not in {self.name}")
        return x

    def valuation(self, x):
        x = self.K(x)
        if not x:
            return INFINITY
        v = 0
        while not x.num[v]:
            v += 1
        w = 0
        while not x.den[w]:
            w += 1
        return v - w

    def residue(self, x):
        x = self(x)
        if not x.num or not x.num[0]:
            return self.base.zero
        return x.num[0] / x.den[0]

    def format(self, x):
        return self.K.format(x)

    def symbols(self):
        return self.K.symbols()


def residue_map(ring, x):
    """Image of a DVR element in the residue field."""
    return ring.residue(x)


def valuation_residue(ring, x):
    """Return ``(v, residue)``; ``v`` is ``inf`` for zero."""
    if not x:
        return INFINITY, ring.k.zero
    return ring.valuation(x), ring.residue(x)


def base_field(ring):
    """Smallest field the ring's elements naturally live in."""
    return ring.fraction_field()


def is_rational_int(x):
    return isinstance(x, Fraction) and x.denominator == 1


def int_content(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
