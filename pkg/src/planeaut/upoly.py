"""Dense univariate polynomial helpers over a field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.  Coefficients are ring
elements supporting ``+ - * /`` and truthiness (zero is falsy).
"""


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for i, c in enumerate(b):
        res[i] = res[i] + c
    return trim(res)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return []
    return trim([x * c for x in a])


def mul(a, b):
    if not a or not b:
        return []
    res = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            res[i + j] = res[i + j] + x * y
    return trim(res)


def divmod_(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    if len(a) <= db:
        return [], trim(a)
    q = [b[-1] * 0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = c * inv
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = a[i - db + j] - c * b[j]
    return trim(q), trim(a[:db])


def monic(a):
    if not a:
        return []
    inv = 1 / a[-1]
    return [c * inv for c in a[:-1]] + [a[-1] * inv]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def xgcd(a, b, one):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = 1 / r0[-1]
    return monic(r0), scale(s0, inv), scale(t0, inv)


def deriv(a):
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(a, x):
    res = None
    for c in reversed(a):
        res = c if res is None else res * x + c
    return res


def compose(a, b):
    """Return a(b(x))."""
    res = []
    for c in reversed(a):
        res = add(mul(res, b), [c] if c else [])
    return res


def power(a, e, one):
    res = [one]
    base = a
    while e:
        if e & 1:
            res = mul(res, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return res
