import json

import pytest

from brauercheck.expr import parse_polynomial
from brauercheck.reduction import (
    ReductionError,
    arithmetic_genus,
    assert_nodal,
    expected_c4,
    expected_intersection_disc,
    infinity_disjointness,
    intersection_cubic,
    intersection_cubic_by_substitution,
    intersection_discriminant,
    node_location,
    revalidate,
    stable_reduction_certificate,
    weierstrass_invariants,
)
from brauercheck.ring import FiniteField, LocalizedIntegers, MultiPoly, find_nonsquare, is_prime
from brauercheck.shioda import run_pipeline

Z = LocalizedIntegers()
u = MultiPoly.var(Z, "u")
SWEEP = [p for p in range(11, 201) if is_prime(p)]


@pytest.fixture(scope="module", params=["even", "odd"])
def symbolic_cert(request):
    return stable_reduction_certificate(request.param)


def test_weierstrass_example():
    inv = weierstrass_invariants(-1, 0)
    assert (inv.c4, inv.disc) == (48, 64)
    assert not assert_nodal(inv)
    assert not assert_nodal(weierstrass_invariants(0, 0))
    assert assert_nodal(weierstrass_invariants(-3, 2))


@pytest.mark.parametrize("case", ["even", "odd"])
def test_c4_display(case):
    c = run_pipeline(case).coeffs.reduced()
    inv = weierstrass_invariants(c.p0, c.q0)
    if case == "even":
        display = ((u - 4) ** 2 * (u - 16) ** 2).exact_div_int(16)
    else:
        display = (81 * (u - 1) ** 2 * (u - 9) ** 2).exact_div_int(16)
    assert inv.c4 == display == expected_c4(case, Z)
    assert inv.disc.is_zero()
    assert assert_nodal(inv)


@pytest.mark.parametrize("p0, q0, x0", [(-3, 2, 1), (-3, -2, -1)])
def test_node_location(p0, q0, x0):
    assert node_location(p0, q0).value == x0


def test_node_location_requires_p0():
    with pytest.raises(ReductionError):
        node_location(0, 0)
    with pytest.raises(ReductionError):
        node_location(-1, 0)  # smooth: no double root


def test_node_off_line_p11_even():
    F = FiniteField(11)
    c = run_pipeline("even", F).coeffs.reduced()
    node = node_location(c.p0, c.q0)
    x0 = node.value
    assert not (c.p2 * x0 + c.q2).is_zero()


@pytest.mark.parametrize("case", ["even", "odd"])
def test_intersection_cubic_two_routes(case):
    res = run_pipeline(case)
    c = res.coeffs.reduced()
    disp = intersection_cubic(c.p0, c.q0, c.p2, c.q2)
    subs = intersection_cubic_by_substitution(res.forms.reduced().f2, c.p2, c.q2)
    assert disp == subs


def test_intersection_cubic_degenerate_line():
    p0, q0 = MultiPoly.var(Z, "t"), MultiPoly.var(Z, "u")
    zero = MultiPoly.const(Z, 0)
    cub = intersection_cubic(p0, q0, zero, zero)
    assert (cub.a2, cub.a1, cub.a0) == (zero, p0, q0)


def test_intersection_discriminant_display():
    for case in ("even", "odd"):
        c = run_pipeline(case).coeffs.reduced()
        d = intersection_discriminant(intersection_cubic(c.p0, c.q0, c.p2, c.q2))
        assert d == expected_intersection_disc(case, Z)
    even = (81 * u**2 * (u - 1) ** 2 * (u - 9) ** 2).exact_div_int(64)
    odd = (729 * u**6 * (u - 9) ** 2 * (4 * u - 9) ** 2).exact_div_int(256)
    assert expected_intersection_disc("even", Z) == even
    assert expected_intersection_disc("odd", Z) == odd


def test_intersection_discriminant_p11():
    F = FiniteField(11)
    c = run_pipeline("even", F, 2).coeffs.reduced()
    d = intersection_discriminant(intersection_cubic(c.p0, c.q0, c.p2, c.q2))
    assert not d.is_zero()
    # odd display at u = 2: 729 * 2^6 * 49 * (1/4)^2 / 16 mod 11
    val = expected_intersection_disc("odd", F, 2).constant_term()
    assert val == 729 * 64 * 49 * pow(16, -1, 11) * pow(16, -1, 11) % 11
    assert val != 0


def test_infinity_disjointness():
    for case in ("even", "odd"):
        f = run_pipeline(case).forms.reduced()
        assert infinity_disjointness(f.f0, f.f2)
    X = MultiPoly.var(Z, "X")
    assert not infinity_disjointness(X, run_pipeline("even").forms.reduced().f2)


@pytest.mark.parametrize("genera, nodes, expected", [([0, 1], 3, 3), ([3], 0, 3), ([0, 0], 1, 0)])
def test_arithmetic_genus(genera, nodes, expected):
    assert arithmetic_genus(genera, nodes) == expected


def test_symbolic_certificates(symbolic_cert):
    assert symbolic_cert.valid, symbolic_cert.failed()
    c4 = symbolic_cert.check("c4_nonzero_matches_display").witness
    assert parse_polynomial(c4["c4"]) == expected_c4(symbolic_cert.case, Z)
    fac = symbolic_cert.check("special_fiber_factorization").witness
    g, f0, f2 = (parse_polynomial(fac[k]) for k in ("g_bar", "f0_bar", "f2_bar"))
    assert (g + 4 * f0 * f2).is_zero()
    assert parse_polynomial(symbolic_cert.check("cubic_discriminant_zero").witness["disc"]).is_zero()


def test_certificate_json_roundtrip(symbolic_cert):
    text = symbolic_cert.dumps()
    data = json.loads(text)
    assert list(data) == ["schema_version", "subcommand", "case", "p", "r", "u", "checks", "gamma", "valid"]
    valid, results = revalidate(data)
    assert valid == data["valid"] is True
    assert set(results) == {c["name"] for c in data["checks"]}
    assert stable_reduction_certificate(symbolic_cert.case).dumps() == text


def test_revalidate_detects_tampering(symbolic_cert):
    data = json.loads(symbolic_cert.dumps())
    for chk in data["checks"]:
        if chk["name"] == "c4_nonzero_matches_display":
            chk["witness"]["c4"] = chk["witness"]["c4"] + " + 1"
    valid, results = revalidate(data)
    assert not valid and not results["c4_nonzero_matches_display"]


@pytest.mark.parametrize("p", SWEEP)
def test_instance_certificates(p):
    F = FiniteField(p)
    u0 = find_nonsquare(F)
    for case in ("even", "odd"):
        cert = stable_reduction_certificate(case, F, u0)
        assert cert.valid, cert.failed()
        w = cert.check("c4_nonzero_matches_display").witness
        # symbolic display, reduced mod p and evaluated at u0
        sym = parse_polynomial(stable_c4_string(case), F).substitute("u", u0)
        assert parse_polynomial(w["c4"], F) == sym
        w = cert.check("intersection_discriminant").witness
        sym = parse_polynomial(stable_disc_string(case), F).substitute("u", u0)
        assert parse_polynomial(w["disc"], F) == sym


def stable_c4_string(case):
    return expected_c4(case, Z).to_str()


def stable_disc_string(case):
    return expected_intersection_disc(case, Z).to_str()


def test_instance_revalidation():
    cert = stable_reduction_certificate("odd", FiniteField(11), 2)
    valid, _ = revalidate(json.loads(cert.dumps()))
    assert valid
