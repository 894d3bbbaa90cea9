import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeaut.automorphisms import (AffineAut, ElementaryAut, PlaneAut, apply_letters, compose,
                                    diagonalize_finite_order, invert, is_automorphism,
                                    jvdk_decompose, normalize_word, order_of, peel)
from planeaut.errors import NotAnAutomorphism, NotFiniteOrder
from planeaut.factor import roots_of_unity
from planeaut.parser import parse_polynomial, parse_ring
from planeaut.rings import QQ, PrimeField

from randgen import random_automorphism, random_word, rng_for

XY = ("X", "Y")
seeds = st.integers(0, 10 ** 6)


def aut(F, G, ring="Q"):
    R = parse_ring(ring)
    return PlaneAut(parse_polynomial(F, R, XY), parse_polynomial(G, R, XY))


def test_compose_applies_right_factor_first():
    A = aut("X + Y^2", "Y")
    B = aut("Y", "X")
    # (A o B)(X) = X(A(B)) : substitute B into A
    assert A.compose(B) == aut("Y + X^2", "X")
    assert B.compose(A) == aut("Y", "X + Y^2")


def test_decompose_simple_word():
    word = jvdk_decompose(aut("Y", "X + Y^3"))
    assert [l.kind for l in word.letters] == ["affine", "elementary"]
    assert word.compose() == aut("Y", "X + Y^3")


@pytest.mark.parametrize("F, G, stage", [
    ("X^2", "Y", "leading-form mismatch"),
    ("X + Y", "X + Y", "singular affine part"),
    ("X^3", "X^2", "degree non-divisibility"),
    ("X^2", "1", "constant component"),
])
def test_non_automorphisms_name_the_stage(F, G, stage):
    with pytest.raises(NotAnAutomorphism) as info:
        jvdk_decompose(aut(F, G))
    assert info.value.stage == stage


def test_order_two_example_over_q():
    sigma = aut("-X", "-Y + X^2")
    assert repr(order_of(sigma)) == "Finite(2)"
    d = diagonalize_finite_order(sigma, 2)
    assert d.alpha == d.beta == -1
    assert sigma(d.U) == d.U * d.alpha and sigma(d.V) == d.V * d.beta


def test_rotation_over_gaussian_field():
    sigma = aut("Y", "-X", "Q(zeta_4)")
    assert repr(order_of(sigma)) == "Finite(4)"
    d = diagonalize_finite_order(sigma, 4)
    assert {d.alpha, d.beta} == set(r for r in roots_of_unity(sigma.ring, 4) if r ** 2 != 1)


def test_infinite_order_and_not_finite():
    sigma = aut("Y", "X + Y^2")
    assert repr(order_of(sigma)) == "Infinite"
    with pytest.raises(NotFiniteOrder):
        diagonalize_finite_order(sigma, 2)
    assert repr(order_of(aut("X + 1", "Y"))) == "Unknown(256)"


def test_translation_has_order_p_in_characteristic_p():
    assert repr(order_of(aut("X + 1", "Y", "GF(5)"))) == "Finite(5)"


def test_letter_inverses():
    R = QQ
    e = ElementaryAut(R, R(2), R(-1), R(3), (R(1), R(0), R(5)))
    a = AffineAut(R, R(1), R(2), R(0), R(3), R(4), R(-1))
    for letter in (e, a):
        assert letter.as_plane_aut().compose(letter.inverse().as_plane_aut()).is_identity()


def test_normalize_merges_same_kind():
    R = QQ
    e1 = ElementaryAut(R, R(1), R(1), R(0), (R(0), R(0), R(1)))
    e2 = ElementaryAut(R, R(1), R(1), R(0), (R(0), R(0), R(-1)))
    assert normalize_word([e1, e2])[0].as_plane_aut().is_identity()


@pytest.mark.parametrize("R", [QQ, PrimeField(5)], ids=["Q", "GF5"])
@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_decompose_round_trip_property(R, seed):
    rng = rng_for("prop-word", R, seed)
    letters = random_word(R, rng, rng.randint(1, 4), max_degree=3, height=5)
    phi = compose(letters, R)
    word = jvdk_decompose(phi)
    assert word.is_normal_form()
    assert word.compose() == phi
    # normal-form length never exceeds the generating word's length
    assert len(word) <= len(letters)
    assert peel(invert(phi), letters).is_identity()


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_apply_letters_matches_substitution(seed):
    rng = rng_for("apply", seed)
    letters = random_word(QQ, rng, rng.randint(1, 3), max_degree=2, height=3)
    f = random_automorphism(QQ, rng, length=1).F
    assert apply_letters(f, letters) == compose(letters, QQ)(f)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_conjugated_torsion_diagonalizes(n, seed):
    E = parse_ring(f"Q(zeta_{n})")
    rng = rng_for("torsion", n, seed)
    roots = roots_of_unity(E, n)
    X = parse_polynomial("X", E, XY)
    Y = parse_polynomial("Y", E, XY)
    D = PlaneAut(X * rng.choice(roots), Y * rng.choice(roots))
    tau = random_automorphism(E, rng, length=rng.randint(1, 2), max_degree=2, height=2)
    sigma = tau.compose(D).compose(invert(tau))
    if sigma.is_identity():
        return
    d = diagonalize_finite_order(sigma, n)
    word = jvdk_decompose(sigma).letters
    assert apply_letters(d.U, word) == d.U * d.alpha
    assert apply_letters(d.V, word) == d.V * d.beta
    assert d.alpha ** n == E.one and d.beta ** n == E.one
    assert is_automorphism(PlaneAut(d.U, d.V))
