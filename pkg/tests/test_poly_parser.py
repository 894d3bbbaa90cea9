import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from planeaut.errors import ParseError
from planeaut.parser import format_polynomial, parse_polynomial, parse_ring
from planeaut.poly import Polynomial, principal_ideal_division
from planeaut.rings import QQ, PrimeField

XY = ("X", "Y")
sX, sY = sympy.symbols("X Y")

coeff = st.fractions(min_value=-9, max_value=9, max_denominator=4)
monomial = st.tuples(st.integers(0, 4), st.integers(0, 4))
term_dicts = st.dictionaries(monomial, coeff, max_size=6)


def poly(terms, R=QQ):
    return Polynomial(R, XY, {m: R(c) for m, c in terms.items() if c})


def to_sympy(f):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sX ** m[0] * sY ** m[1]
                            for m, c in f.terms.items()))


@settings(max_examples=60, deadline=None)
@given(term_dicts, term_dicts)
def test_arithmetic_matches_sympy(t1, t2):
    f, g = poly(t1), poly(t2)
    assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
    assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))


@settings(max_examples=60, deadline=None)
@given(term_dicts, term_dicts, term_dicts)
def test_substitution_matches_sympy(t1, t2, t3):
    f, F, G = poly(t1), poly(t2), poly(t3)
    got = f.substitute({"X": F, "Y": G}, XY, QQ)
    want = sympy.expand(to_sympy(f).subs({sX: to_sympy(F), sY: to_sympy(G)}, simultaneous=True))
    assert to_sympy(got) == want


@settings(max_examples=100, deadline=None)
@given(term_dicts)
def test_print_parse_round_trip_q(terms):
    f = poly(terms)
    assert parse_polynomial(format_polynomial(f), QQ, XY) == f


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(monomial, st.integers(0, 4), max_size=6))
def test_print_parse_round_trip_gf5(terms):
    F5 = PrimeField(5)
    f = poly(terms, F5)
    assert parse_polynomial(format_polynomial(f), F5, XY) == f


@pytest.mark.parametrize("ring", ["Q(zeta_3)", "Q[t]_(t)", "Z_(2)", "Q(t)"])
def test_round_trip_over_other_rings(ring):
    R = parse_ring(ring)
    text = {"Q(zeta_3)": "zeta*X^2 - (zeta + 1)*Y + 1/2",
            "Q[t]_(t)": "t^2*X + t*Y^2 - Y/(1 + t)",
            "Z_(2)": "Y^2 + Y + 2*X - 1/3",
            "Q(t)": "X/t + (t^2 + 1)*Y"}[ring]
    f = parse_polynomial(text, R, XY)
    assert parse_polynomial(format_polynomial(f), R, XY) == f


def test_grlex_ordering_and_printing():
    f = parse_polynomial("1 + Y + X + Y^2 + X*Y + X^2 - 2*X^3", QQ, XY)
    assert format_polynomial(f) == "-2*X^3 + X^2 + X*Y + Y^2 + X + Y + 1"


@pytest.mark.parametrize("text, message", [
    ("2X", "implicit multiplication"),
    ("X^Y", "exponent"),
    ("X + Z", "unresolved symbol 'Z'"),
    ("X / Y", "division only by nonzero constants"),
    ("X + ", "unexpected token"),
    ("X $ 2", "unexpected character"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_polynomial(text, QQ, XY)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("X + 3Y", QQ, XY)
    assert info.value.position == 5


def test_dvr_rejects_non_integral_coefficients():
    with pytest.raises(ParseError):
        parse_polynomial("X/t", parse_ring("Q[t]_(t)"), XY)
    with pytest.raises(ParseError):
        parse_polynomial("X/2", parse_ring("Z_(2)"), XY)


def test_ring_descriptors():
    assert parse_ring("GF(5)") == PrimeField(5)
    assert parse_ring("Q(zeta_4)").degree == 2
    assert parse_ring("Q(zeta_6)").degree == 2
    with pytest.raises(ParseError):
        parse_ring("R")


def test_principal_ideal_division():
    R = parse_ring("Q")
    XYZ = ("X", "Y", "Z")
    g = parse_polynomial("X*Z^2 - Y", R, XYZ)
    q = parse_polynomial("Z + X^2", R, XYZ)
    res = principal_ideal_division(g * q, g, "Z")
    assert res and res.quotient == q
    miss = principal_ideal_division(g * q + 1, g, "Z")
    assert not miss and miss.remainder
