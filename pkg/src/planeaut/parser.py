"""Expression grammar, ring headers and the canonical printer.

Grammar::

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ("^" INT)?
    atom  := INT | NAME | "(" expr ")"

Division is only accepted when the divisor lowers to a unit constant.
Implicit multiplication is rejected.
"""

import re
from fractions import Fraction

from .errors import ParseError
from .poly import Polynomial, grlex_key
from .rings import (QQ, ZZ, FunctionField, IntegersAt, PolyAt, PrimeField,
                    SimpleExtension, _wrap)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("INT", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("NAME", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("EOF", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "EOF":
            op = self.take()[0]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "INT":
                raise ParseError("exponent must be a non-negative integer literal", tok[2])
            node = ("pow", node, tok[1])
        return node

    def atom(self):
        tok = self.take()
        if tok[0] == "INT":
            node = ("int", tok[1])
        elif tok[0] == "NAME":
            node = ("sym", tok[1], tok[2])
        elif tok[0] == "(":
            node = self.expr()
            self.take(")")
        else:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        nxt = self.peek()
        if nxt[0] in ("INT", "NAME", "("):
            raise ParseError("implicit multiplication is not allowed", nxt[2])
        return node


def parse_ast(text):
    """Parse text into an expression tree of nested tuples."""
    return _Parser(text).parse()


def lower(ast, ring, vars):
    """Turn an expression tree into a :class:`Polynomial`."""
    vars = tuple(vars)
    consts = ring.symbols()
    K = ring.fraction_field()

    def go(node):
        kind = node[0]
        if kind == "int":
            return Polynomial(K, vars, {(0,) * len(vars): node[1]})
        if kind == "sym":
            name = node[1]
            if name in vars:
                return Polynomial.variable(K, vars, name)
            if name in consts:
                return Polynomial.constant(K, vars, consts[name])
            raise ParseError(f"unresolved symbol {name!r}", node[2])
        if kind == "neg":
            return -go(node[1])
        if kind == "pow":
            return go(node[1]) ** node[2]
        a, b = go(node[1]), go(node[2])
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return a * b
        if not b.is_constant() or not b:
            raise ParseError("division only by nonzero constants")
        return a / b.constant_term()

    poly = go(ast)
    try:
        return Polynomial(ring, vars, poly.terms)
    except ValueError as exc:
        raise ParseError(f"coefficient outside {ring.name}: {exc}") from exc


def parse_polynomial(text, ring, vars):
    if isinstance(vars, str):
        vars = vars.split()
    return lower(parse_ast(text), ring, vars)


def parse_constant(text, ring):
    p = parse_polynomial(text, ring, ())
    return p.constant_term()


def format_monomial(vars, m):
    parts = []
    for v, e in zip(vars, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f):
    """Canonical text form; ``parse_polynomial(format_polynomial(f)) == f``."""
    pieces = []
    for m, c in f.sorted_terms():
        mon = format_monomial(f.vars, m)
        cs = f.ring.format(c)
        if not mon:
            pieces.append(cs)
        elif c == 1:
            pieces.append(mon)
        elif c == -1:
            pieces.append("-" + mon)
        elif cs.startswith("-") and not any(ch in cs[1:] for ch in "+-* "):
            pieces.append(f"-{_wrap(cs[1:])}*{mon}")
        else:
            pieces.append(f"{_wrap(cs)}*{mon}")
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


_GF = re.compile(r"^(?:GF\((\d+)\)|F_?(\d+))$")


def parse_ring(text):
    """Parse a ring descriptor such as ``Q``, ``GF(5)``, ``Z_(2)``,
    ``Q[t]_(t)``, ``Q(t)``, ``Q[w]/(w^2+w+1)`` or ``Q(zeta_3)``."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text == "Z":
        return ZZ
    m = _GF.match(text)
    if m:
        return PrimeField(int(m.group(1) or m.group(2)))
    m = re.match(r"^Z_\((\d+)\)$", text)
    if m:
        return IntegersAt(int(m.group(1)))
    m = re.match(r"^(.*)\[([A-Za-z_]\w*)\]_\(\2\)$", text)
    if m:
        return PolyAt(parse_ring(m.group(1)), m.group(2))
    m = re.match(r"^(.*)\(zeta_(\d+)\)$", text)
    if m:
        from .factor import cyclotomic_adjoin

        return cyclotomic_adjoin(parse_ring(m.group(1)), int(m.group(2)))[0]
    m = re.match(r"^(.*)\[([A-Za-z_]\w*)\]/\((.*)\)$", text)
    if m:
        base = parse_ring(m.group(1))
        name = m.group(2)
        mod = parse_polynomial(m.group(3), base, [name])
        coeffs = [base.zero] * (mod.degree() + 1)
        for mon, c in mod.terms.items():
            coeffs[mon[0]] = c
        return SimpleExtension(base, coeffs, name=name)
    m = re.match(r"^(.*)\(([A-Za-z_]\w*)\)$", text)
    if m:
        return FunctionField(parse_ring(m.group(1)), m.group(2))
    raise ParseError(f"unknown ring descriptor {text!r}")


def parse_header(text):
    """Parse ``ring R; vars X Y Z; name = expr; ...``.

    Returns ``(ring, vars, bindings)`` where bindings maps names to
    polynomials (or ints for bare integer statements such as ``n = 2``).
    """
    ring, vars, bindings = None, None, {}
    for stmt in text.split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if stmt.startswith("ring "):
            ring = parse_ring(stmt[5:])
        elif stmt.startswith("vars "):
            vars = tuple(stmt[5:].replace(",", " ").split())
        elif "=" in stmt:
            name, expr = (s.strip() for s in stmt.split("=", 1))
            if ring is None or vars is None:
                raise ParseError("ring and vars must be declared before bindings")
            if re.fullmatch(r"-?\d+", expr):
                bindings[name] = int(expr)
            else:
                bindings[name] = parse_polynomial(expr, ring, vars)
        else:
            raise ParseError(f"cannot parse statement {stmt!r}")
    if ring is None:
        raise ParseError("missing ring declaration")
    return ring, vars or (), bindings


def rational_str(x):
    x = Fraction(x)
    return str(x)
