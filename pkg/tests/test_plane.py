import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeaut.automorphisms import PlaneAut, is_automorphism
from planeaut.coordinates import subring_membership
from planeaut.errors import CannotConstruct, DescentFailed, NotSplitOverConstants
from planeaut.factor import cyclotomic_adjoin
from planeaut.parser import parse_polynomial, parse_ring
from planeaut.plane import (PQ, PlaneCertificate, PlaneInput, analyze, auto_certificate,
                            descend_to_base, extract_axis, induced_automorphism,
                            prop56_mode, residual_fiber_sweep, russell_sathaye_check,
                            verify_plane_certificate)
from planeaut.rings import QQ, ZZ, PrimeField

from randgen import rng_for, synthesized_plane

XY = ("X", "Y")
XYZ = ("X", "Y", "Z")


def P(text, ring="Q", vars=XY):
    R = parse_ring(ring) if isinstance(ring, str) else ring
    return parse_polynomial(text, R, vars)


def xz2_input(y="P*Q^2"):
    cert = PlaneCertificate(u=P("X", vars=XYZ), v=P("Z", vars=XYZ),
                            x=P("P", vars=PQ), y=P(y, vars=PQ), z=P("Q", vars=PQ))
    return PlaneInput(QQ, P("Y"), P("X"), 2, cert)


def test_plane_certificate_verifies():
    assert verify_plane_certificate(xz2_input())


def test_corrupted_plane_certificate_names_identity():
    res = verify_plane_certificate(xz2_input(y="P*Q"))
    assert not res and res.stage == "y-identity"


@pytest.mark.parametrize("a, b, n", [("Y", "X", 2), ("Y + X^3", "X", 2), ("Y", "1", 3)])
def test_auto_certificate_verifies(a, b, n):
    inp = PlaneInput(QQ, P(a), P(b), n)
    cert = auto_certificate(inp.a, inp.b, n)
    assert verify_plane_certificate(inp, cert)


def test_auto_certificate_xz2_matches_hand_certificate():
    cert = auto_certificate(P("Y"), P("X"), 2)
    hand = xz2_input().certificate
    assert (cert.u, cert.x, cert.y, cert.z) == (hand.u, hand.x, hand.y, hand.z)


def test_auto_certificate_cannot_construct_for_non_coordinate():
    with pytest.raises(CannotConstruct):
        auto_certificate(P("Y^2 + Y", "GF(2)"), P("X", "GF(2)"), 3)


def test_induced_automorphism_examples():
    cert = xz2_input().certificate
    sigma = induced_automorphism(cert, QQ(-1), 2)
    assert sigma == PlaneAut(P("P", vars=PQ), P("-Q", vars=PQ))
    E, omega = cyclotomic_adjoin(QQ, 3)
    cert3 = auto_certificate(P("Y"), P("1"), 3).change_ring(E)
    sigma3 = induced_automorphism(cert3, omega, 3)
    assert sigma3.F == P("P", E, PQ) and sigma3.G == P("Q", E, PQ) * omega


def test_extract_axis_two_factors():
    Bt = P("(U - w^2)^2*(U - w^2 - 1)", vars=("U", "w"))
    ax = extract_axis(Bt)
    assert ax.g1 == P("w^2", vars=("U", "w"))
    assert ax.shifts == [0, 1] and ax.multiplicities == [2, 1]


def test_extract_axis_single_and_non_split():
    ax = extract_axis(P("U", vars=("U", "w")))
    assert not ax.g1 and ax.multiplicities == [1]
    with pytest.raises(NotSplitOverConstants):
        extract_axis(P("U^2 - w^2", vars=("U", "w")))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 2)), min_size=1, max_size=3,
                unique_by=lambda t: t[0]),
       st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_extract_axis_reconstructs_product(shifts, gcoeffs):
    vars = ("U", "w")
    w = P("w", vars=vars)
    g = sum((w ** i * c for i, c in enumerate(gcoeffs)), P("0", vars=vars))
    U = P("U", vars=vars)
    Bt = P("1", vars=vars)
    for c, m in shifts:
        Bt = Bt * (U - g - c) ** m
    ax = extract_axis(Bt)
    recon = P("1", vars=vars) * ax.constant
    for fac, m in ax.factors:
        recon = recon * fac ** m
    assert recon == Bt
    # g1 differs from g by one of the constant shifts
    assert (ax.g1 - g).is_constant()


def test_descend_to_base():
    E, omega = cyclotomic_adjoin(QQ, 3)
    U_E = P("2*X + Y^2", E)
    assert descend_to_base(U_E, QQ) == P("X + Y^2/2")
    assert descend_to_base(P("X", E) + omega - omega, QQ) == P("X")
    with pytest.raises(DescentFailed):
        descend_to_base(P("X", E) + P("Y", E) * omega, QQ)


@pytest.mark.parametrize("ring, a, b, n, U", [
    ("Q", "Y", "X", 2, "X"),
    ("Q", "Y + X^3", "X", 3, "X"),
    ("Q", "Y", "X^2 + 1", 2, "X"),
    ("GF(5)", "X + (Y + X^2)^2", "(Y + X^2)^2 + 2", 2, "X^2 + Y"),
])
def test_analyze_over_field_variable(ring, a, b, n, U):
    R = parse_ring(ring)
    rep = analyze(PlaneInput(R, P(a, R), P(b, R), n))
    assert rep.verdict == "Variable"
    assert rep.U == P(U, R)
    assert rep.triple.verify()


def test_xz2_triple_gives_y_from_g():
    rep = analyze(PlaneInput(QQ, P("Y"), P("X"), 2))
    inv = rep.triple.inverse
    # Y = X*Z^2 - g in the (U, g, Z) coordinates S1, S2, S3
    assert inv[1] == P("S1*S3^2 - S2", vars=("S1", "S2", "S3"))


def test_characteristic_divides_n():
    R = PrimeField(2)
    rep = analyze(PlaneInput(R, P("Y", R), P("X", R), 2))
    assert rep.verdict == "NotApplicable"


def test_remark_on_linear_plane_is_unknown():
    R = parse_ring("Q[t]_(t)")
    rep = analyze(PlaneInput(R, P("-Y - t*Y*(X + X^2) - t^2*X", R), P("t*Y^2", R), 1))
    assert rep.verdict == "Unknown"


def test_dvr_axis_recovery():
    R = parse_ring("Q[t]_(t)")
    rep = analyze(PlaneInput(R, P("-Y", R), P("t^2*X + t*Y^2", R), 2))
    assert rep.verdict == "Variable"
    assert rep.X0 == P("t*X + Y^2", R)
    assert rep.data["b_in_X0"].poly == parse_polynomial("t*T", R, ("T",))
    assert rep.data["residual_X0"].verdict == "Reject"
    assert all(f.verdict == "Variable" for f in rep.fibers.values())
    assert rep.triple.verify()


def test_dvr_with_p_dividing_n_is_not_applicable():
    R = parse_ring("Z_(2)")
    rep = analyze(PlaneInput(R, P("Y^2 + Y + 2*X", R), P("1", R), 2))
    assert rep.verdict == "NotApplicable"


def test_russell_sathaye_trivial_and_negative():
    R = parse_ring("Z_(3)")
    names = ("S1", "W")
    audit = russell_sathaye_check(R, [P("X", R)], w3=P("Y", R),
                                  inverse3={"X": P("S1", R.K, names), "Y": P("W", R.K, names)},
                                  w4=P("Y", R),
                                  inverse4={"X": P("S1", R.k, names), "Y": P("W", R.k, names)})
    assert audit.all_verified and audit.conclusion
    audit = russell_sathaye_check(R, [P("X^2", R)], w3=P("Y", R), w4=P("Y", R))
    assert audit.conditions["3-generic"].status == "NotVerified"
    assert audit.conclusion is None
    assert any("Jacobian" in n for n in audit.notes)


def test_russell_sathaye_corrupted_witness_flips_condition():
    R = parse_ring("Z_(3)")
    names = ("S1", "W")
    audit = russell_sathaye_check(R, [P("X", R)], w3=P("Y", R),
                                  inverse3={"X": P("S1 + W", R.K, names), "Y": P("W", R.K, names)},
                                  w4=P("Y", R))
    assert audit.conditions["3-generic"].status == "NotVerified"
    assert audit.conditions["4-closed"].status == "Verified"
    assert not audit.all_verified


@pytest.mark.parametrize("a, b, n, verdict", [
    ("Y + 9*X", "3", 3, "Variable"),
    ("Y^2 + Y + 2*X", "1", 2, "Unknown"),
    ("X", "3", 2, "Variable"),
])
def test_prop56_mode(a, b, n, verdict):
    R = parse_ring("Z_(3)") if "9" in a or a == "X" else parse_ring("Z_(2)")
    assert prop56_mode(PlaneInput(R, P(a, R), P(b, R), n)).verdict == verdict


def test_sweeps():
    rep = residual_fiber_sweep([2, 3, 5, "generic"], plane=(P("Y", ZZ), P("X", ZZ), 2))
    assert rep.verdict == "AllListedFibersVariable"
    rep = residual_fiber_sweep([2, "generic"], W=P("Y^2 + Y + 2*X", ZZ))
    assert rep.fibers == {"2": "Reject", "generic": "Variable"}
    assert rep.verdict == "Reject"
    assert residual_fiber_sweep([], W=P("X", ZZ)).verdict == "PartialSweep"


@pytest.mark.parametrize("R", [QQ, PrimeField(5)], ids=["Q", "GF5"])
@settings(max_examples=8, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_synthesized_planes_are_variables(R, seed):
    rng = rng_for("plane-prop", R, seed)
    a, b, n, _ = synthesized_plane(R, rng)
    rep = analyze(PlaneInput(R, a, b, n))
    assert rep.verdict == "Variable"
    assert subring_membership(b, [rep.U])
    assert is_automorphism(PlaneAut(rep.U, a))
    assert rep.triple.verify()
