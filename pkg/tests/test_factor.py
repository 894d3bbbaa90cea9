from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeaut.factor import (bivariate_factor, cyclotomic_adjoin, roots_of_unity,
                             univariate_factor_dense)
from planeaut.parser import format_polynomial, parse_polynomial, parse_ring
from planeaut.poly import Polynomial
from planeaut.rings import QQ, PrimeField

XY = ("X", "Y")


def monic_linear_in_x(F, tail):
    """``X + b(Y)`` is irreducible for every ``b``."""
    X = Polynomial.variable(F, XY, "X")
    Y = Polynomial.variable(F, XY, "Y")
    b = Polynomial.zero(F, XY)
    for i, c in enumerate(tail):
        b = b + Y ** i * F(c)
    return X + b


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=1, max_size=3), min_size=1, max_size=3))
def test_gf5_bivariate_recovers_known_irreducibles(tails):
    F = PrimeField(5)
    parts = [monic_linear_in_x(F, t) for t in tails]
    f = Polynomial.constant(F, XY, 1)
    for p in parts:
        f = f * p
    unit, facs = bivariate_factor(f)
    got = Counter()
    for h, m in facs:
        h = h / h.leading_coefficient()
        got[format_polynomial(h)] += m
    want = Counter(format_polynomial(p / p.leading_coefficient()) for p in parts)
    assert got == want


@pytest.mark.parametrize("ring, coeffs, shape", [
    ("Q(zeta_4)", [1, 0, 1], [1, 1]),            # X^2 + 1 splits
    ("Q(zeta_3)", [-2, 0, 0, 1], [3]),           # X^3 - 2 stays irreducible
    ("Q(zeta_3)", [-1, 0, 0, 0, 0, 0, 1], [1] * 6),
    ("Q(zeta_4)", [-2, 0, 1], [2]),              # sqrt(2) is not in Q(i)
])
def test_trager_splitting_patterns(ring, coeffs, shape):
    E = parse_ring(ring)
    unit, facs = univariate_factor_dense([E(c) for c in coeffs], E)
    degrees = sorted(len(h) - 1 for h, m in facs for _ in range(m))
    assert degrees == sorted(shape)


def test_repeated_factor_multiplicity():
    f = parse_polynomial("(X^2 + 1)^2*(X - 3)", QQ, XY)
    unit, facs = univariate_factor_dense([f.coefficient((i, 0)) for i in range(6)], QQ)
    assert sorted((len(h) - 1, m) for h, m in facs) == [(1, 1), (2, 2)]


@pytest.mark.parametrize("base, n, degree", [
    ("Q", 2, 1), ("Q", 3, 2), ("Q", 4, 2), ("Q", 6, 2), ("Q", 5, 4), ("GF(5)", 4, 1), ("GF(5)", 3, 2),
])
def test_cyclotomic_adjoin_degree(base, n, degree):
    E, omega = cyclotomic_adjoin(parse_ring(base), n)
    assert getattr(E, "degree", 1) == degree
    roots = roots_of_unity(E, n)
    assert len(roots) == n
    assert all(r ** n == E.one for r in roots)
