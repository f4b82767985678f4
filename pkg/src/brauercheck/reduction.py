"""Stable reduction of the ramification quartic over F_q[[t]].

The special fibre of g = f_1^2 - 4 f_0 f_2 splits as a line (f_0 = 0) and a
Weierstrass cubic (f_2 = 0).  This module checks that the cubic is nodal,
that the line meets it in three distinct points away from W = 0, and that the
resulting configuration has arithmetic genus 3.  All results are gathered
into a :class:`StableReductionCertificate` whose witnesses are canonical
polynomial strings, so the certificate can be re-checked from its JSON form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import json

from .ring import (
    FiniteField,
    LocalizedIntegers,
    MultiPoly,
    fq_legendre,
    monic_cubic_disc,
    reduce_mod_t,
)
from .shioda import (
    check_general_position,
    poly_from_eps,
    reduced_q_for,
    run_pipeline,
)

SCHEMA_VERSION = 1


class ReductionError(ValueError):
    pass


# --------------------------------------------------------------------------
# Weierstrass cubic y^2 = x^3 + p0 x + q0
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WeierstrassInvariants:
    c4: object
    disc: object


def weierstrass_invariants(p0, q0):
    return WeierstrassInvariants(c4=-48 * p0, disc=-16 * (4 * p0**3 + 27 * q0**2))


def assert_nodal(inv):
    """True iff the cubic is nodal: vanishing discriminant, nonzero c4."""
    return inv.disc == 0 and inv.c4 != 0


@dataclass(frozen=True)
class NodeLocation:
    """x-coordinate of the node as the fraction ``num / den``."""

    num: object
    den: object

    @property
    def value(self):
        num, den = self.num, self.den
        if isinstance(den, MultiPoly):
            if not den.is_constant():
                return None
            dom = den.domain
            c = den.constant_term()
            if isinstance(dom, FiniteField):
                return num * MultiPoly.const(dom, dom.inverse(c))
            return num * MultiPoly.const(dom, Fraction(1) / c)
        return Fraction(num) / Fraction(den)


def node_location(p0, q0):
    """Singular point of a nodal y^2 = x^3 + p0 x + q0: x0 = -3 q0 / (2 p0)."""
    if p0 == 0:
        raise ReductionError("p0 = 0: no node (cusp or smooth)")
    num, den = -3 * q0, 2 * p0
    # x0 is a double root: 3 x0^2 + p0 = 0 and x0^3 + p0 x0 + q0 = 0, scaled by den
    if 3 * num**2 + p0 * den**2 != 0:
        raise ReductionError("derivative does not vanish at the candidate node")
    if num**3 + p0 * num * den**2 + q0 * den**3 != 0:
        raise ReductionError("candidate node is not on the cubic")
    return NodeLocation(num, den)


# --------------------------------------------------------------------------
# Line / cubic intersection
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MonicCubic:
    a2: object
    a1: object
    a0: object


def intersection_cubic(p0, q0, p2, q2):
    """x^3 - (p2^2/4) x^2 + (p0 - p2 q2/2) x + q0 - q2^2/4."""
    return MonicCubic(
        a2=-_half(_half(p2**2)),
        a1=p0 - _half(p2 * q2),
        a0=q0 - _half(_half(q2**2)),
    )


def _half(v):
    if isinstance(v, MultiPoly):
        return v.exact_div_int(2)
    return Fraction(v) / 2


def intersection_cubic_by_substitution(f2bar, p2, q2):
    """Substitute Y = (p2 X + q2 W)/2, W = 1 into f2bar and read off x^3 + ... ."""
    dom = f2bar.domain
    x = MultiPoly.var(dom, "x")
    line_y = (p2 * x + q2).exact_div_int(2)
    cubic = f2bar.substitute("X", x).substitute("W", 1).substitute("Y", line_y)
    coeffs = cubic.coefficients_in("x")
    if len(coeffs) != 4 or coeffs[3] != 1:
        raise ReductionError(f"substituted cubic is not monic of degree 3: {cubic}")
    return MonicCubic(a2=coeffs[2], a1=coeffs[1], a0=coeffs[0])


def intersection_discriminant(cubic):
    return monic_cubic_disc(cubic.a2, cubic.a1, cubic.a0)


def infinity_disjointness(f0bar, f2bar):
    """The line and the cubic have no common point on W = 0."""
    f0i = f0bar.substitute("W", 0)
    f2i = f2bar.substitute("W", 0)
    if f0i.is_zero() or f2i.is_zero():
        return False
    if not f0i.is_homogeneous(1, ("X", "Y")) or not f2i.is_homogeneous(3, ("X", "Y")):
        raise ReductionError("expected a linear and a cubic binary form at infinity")
    a = f0i.coeff_in("X", 1)
    b = f0i.coeff_in("Y", 1)
    # a X + b Y vanishes only at [X : Y] = [-b : a]
    val = f2i.substitute("X", -b).substitute("Y", a)
    return not val.is_zero()


def arithmetic_genus(component_genera, nodes):
    return sum(component_genera) + nodes - len(component_genera) + 1


# --------------------------------------------------------------------------
# Displayed closed forms in u
# --------------------------------------------------------------------------


def _u_poly(domain, u=None):
    if u is None:
        return MultiPoly.var(domain, "u")
    return MultiPoly.const(domain, u)


def expected_c4(case, domain, u=None):
    U = _u_poly(domain, u)
    if case == "even":
        return ((U - 4) ** 2 * (U - 16) ** 2).exact_div_int(16)
    return (81 * (U - 1) ** 2 * (U - 9) ** 2).exact_div_int(16)


def expected_intersection_disc(case, domain, u=None):
    U = _u_poly(domain, u)
    if case == "even":
        return (81 * U**2 * (U - 1) ** 2 * (U - 9) ** 2).exact_div_int(64)
    nine_quarters = MultiPoly.const(domain, 9).exact_div_int(4)
    return (729 * U**6 * (U - 9) ** 2 * (U - nine_quarters) ** 2).exact_div_int(16)


# --------------------------------------------------------------------------
# Certificate
# --------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict

    def to_json(self):
        return {"name": self.name, "pass": bool(self.passed), "witness": self.witness}


@dataclass
class StableReductionCertificate:
    case: str
    p: int | None
    r: int | None
    u: object
    checks: list = field(default_factory=list)
    gamma: int | None = None
    subcommand: str = "verify-symbolic"

    @property
    def valid(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "case": self.case,
            "p": self.p,
            "r": self.r,
            "u": self.u,
            "checks": [c.to_json() for c in self.checks],
            "gamma": self.gamma,
            "valid": self.valid,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2) + "\n"


def _s(poly):
    return poly.to_str()


def _biquad_json(e):
    return [c.to_str() for c in e.c]


def _u_json(domain, u):
    if u is None:
        return None
    if isinstance(domain, FiniteField) and domain.r == 1:
        return int(u)
    return domain.format(u)


def stable_reduction_certificate(case, field=None, u=None):
    """Run the full pipeline and every special-fibre check."""
    res = run_pipeline(case, field, u)
    dom = res.domain
    symbolic = isinstance(dom, LocalizedIntegers)
    u_val = None if symbolic else res.u.constant_term()
    cert = StableReductionCertificate(
        case=case,
        p=None if symbolic else dom.p,
        r=None if symbolic else dom.r,
        u=_u_json(dom, u_val),
    )
    add = cert.checks.append

    pos = check_general_position(res.markings)
    add(Check("markings_general_position", pos.ok, {
        "markings": [_biquad_json(m) for m in res.markings],
        "violations": [f"{fam}{list(idx)}" for fam, idx in pos.violations()],
    }))

    elems = res.elements.elements()
    add(Check("twenty_seven_nonzero", len(elems) == 27 and not any(e.is_zero() for e in elems), {
        "elements": [_biquad_json(e) for e in elems],
    }))

    eps_bar = [reduce_mod_t(e) for e in res.eps]
    reduced_product = poly_from_eps(eps_bar)
    displayed = reduced_q_for(res)
    add(Check("reduction_matches_displayed_product", reduced_product == displayed, {
        "reduced_product": _s(reduced_product),
        "displayed_product": _s(displayed),
    }))

    g_bar = reduce_mod_t(res.g)
    add(Check("g_not_divisible_by_t", not g_bar.is_zero(), {"g_bar": _s(g_bar)}))

    cb = res.coeffs.reduced()
    add(Check("p1_q1_vanish_mod_t", cb.p1.is_zero() and cb.q1.is_zero(), {
        "p1_bar": _s(cb.p1), "q1_bar": _s(cb.q1),
    }))

    fb = res.forms.reduced()
    add(Check("special_fiber_factorization", (g_bar + 4 * fb.f0 * fb.f2).is_zero(), {
        "g_bar": _s(g_bar), "f0_bar": _s(fb.f0), "f2_bar": _s(fb.f2),
    }))

    inv = weierstrass_invariants(cb.p0, cb.q0)
    add(Check("cubic_discriminant_zero", inv.disc.is_zero(), {
        "p0_bar": _s(cb.p0), "q0_bar": _s(cb.q0), "disc": _s(inv.disc),
    }))

    c4_exp = expected_c4(case, dom, u_val)
    add(Check("c4_nonzero_matches_display", not inv.c4.is_zero() and inv.c4 == c4_exp, {
        "p0_bar": _s(cb.p0), "c4": _s(inv.c4), "expected": _s(c4_exp),
    }))

    add(Check("cubic_is_nodal", assert_nodal(inv), {"c4": _s(inv.c4), "disc": _s(inv.disc)}))

    # Redundant: if the line passed through the node the intersection
    # discriminant below would vanish.
    try:
        node = node_location(cb.p0, cb.q0)
        line_at_node = cb.p2 * node.num + cb.q2 * node.den
        ok = not line_at_node.is_zero()
        witness = {
            "p0_bar": _s(cb.p0), "q0_bar": _s(cb.q0), "p2_bar": _s(cb.p2), "q2_bar": _s(cb.q2),
            "node_num": _s(node.num), "node_den": _s(node.den),
            "line_at_node": _s(line_at_node), "redundant": True,
        }
    except ReductionError as exc:
        ok, witness = False, {"error": str(exc), "redundant": True}
    add(Check("node_off_line", ok, witness))

    sub = intersection_cubic_by_substitution(fb.f2, cb.p2, cb.q2)
    disp = intersection_cubic(cb.p0, cb.q0, cb.p2, cb.q2)
    add(Check("intersection_cubic", (sub.a2, sub.a1, sub.a0) == (disp.a2, disp.a1, disp.a0), {
        "p0_bar": _s(cb.p0), "q0_bar": _s(cb.q0), "p2_bar": _s(cb.p2), "q2_bar": _s(cb.q2),
        "a2": _s(sub.a2), "a1": _s(sub.a1), "a0": _s(sub.a0),
    }))

    idisc = intersection_discriminant(sub)
    idisc_exp = expected_intersection_disc(case, dom, u_val)
    add(Check("intersection_discriminant", not idisc.is_zero() and idisc == idisc_exp, {
        "a2": _s(sub.a2), "a1": _s(sub.a1), "a0": _s(sub.a0),
        "disc": _s(idisc), "expected": _s(idisc_exp),
    }))

    add(Check("infinity_disjoint", infinity_disjointness(fb.f0, fb.f2), {
        "f0_bar": _s(fb.f0), "f2_bar": _s(fb.f2),
    }))

    genera, nodes = [0, 1], 3
    add(Check("arithmetic_genus_3", arithmetic_genus(genera, nodes) == 3, {
        "component_genera": genera, "nodes": nodes, "genus": arithmetic_genus(genera, nodes),
    }))
    return cert


# --------------------------------------------------------------------------
# Re-validation from JSON
# --------------------------------------------------------------------------


def certificate_domain(data):
    if data.get("p") is None:
        return LocalizedIntegers()
    return FiniteField(data["p"], data.get("r") or 1)


def _u_from_json(dom, data):
    if isinstance(dom, LocalizedIntegers):
        return None
    u = data["u"]
    if isinstance(u, int):
        return dom.from_int(u)
    from .expr import parse_polynomial

    return parse_polynomial(u, dom).constant_term()


def revalidate(data):
    """Re-run every check from the witnesses stored in certificate JSON.

    Returns ``(valid, {check name: pass})``.
    """
    from .expr import parse_polynomial
    from .shioda import MarkingSet, make_ring
    from .ring import BiquadElem

    dom = certificate_domain(data)
    case = data["case"]
    u = _u_from_json(dom, data)
    if u is not None and fq_legendre(dom, u) != -1:
        return False, {"u_nonsquare": False}

    def P(s):
        return parse_polynomial(s, dom)

    ring = make_ring(None if u is None else dom, u)

    def B(coords):
        return BiquadElem(ring, *(P(c) for c in coords))

    results = {}
    for chk in data["checks"]:
        name, w = chk["name"], chk["witness"]
        if name == "markings_general_position":
            ms = MarkingSet(case, ring, tuple(B(c) for c in w["markings"]))
            ok = len(ms) == 6 and check_general_position(ms).ok
        elif name == "twenty_seven_nonzero":
            elems = [B(c) for c in w["elements"]]
            ok = len(elems) == 27 and not any(e.is_zero() for e in elems)
        elif name == "reduction_matches_displayed_product":
            from .shioda import q_polynomial

            q = q_polynomial(case, None if u is None else dom, u)
            ok = P(w["reduced_product"]) == P(w["displayed_product"]) == q
        elif name == "g_not_divisible_by_t":
            g = P(w["g_bar"])
            ok = not g.is_zero() and reduce_mod_t(g) == g
        elif name == "p1_q1_vanish_mod_t":
            ok = P(w["p1_bar"]).is_zero() and P(w["q1_bar"]).is_zero()
        elif name == "special_fiber_factorization":
            ok = (P(w["g_bar"]) + 4 * P(w["f0_bar"]) * P(w["f2_bar"])).is_zero()
        elif name == "cubic_discriminant_zero":
            inv = weierstrass_invariants(P(w["p0_bar"]), P(w["q0_bar"]))
            ok = inv.disc == P(w["disc"]) and inv.disc.is_zero()
        elif name == "c4_nonzero_matches_display":
            c4 = P(w["c4"])
            ok = (
                c4 == -48 * P(w["p0_bar"])
                and c4 == P(w["expected"]) == expected_c4(case, dom, u)
                and not c4.is_zero()
            )
        elif name == "cubic_is_nodal":
            ok = assert_nodal(WeierstrassInvariants(P(w["c4"]), P(w["disc"])))
        elif name == "node_off_line":
            if "error" in w:
                ok = False
            else:
                p0, q0, p2, q2 = (P(w[k]) for k in ("p0_bar", "q0_bar", "p2_bar", "q2_bar"))
                num, den = P(w["node_num"]), P(w["node_den"])
                ok = (
                    not den.is_zero()
                    and (3 * num**2 + p0 * den**2).is_zero()
                    and (num**3 + p0 * num * den**2 + q0 * den**3).is_zero()
                    and P(w["line_at_node"]) == p2 * num + q2 * den
                    and not (p2 * num + q2 * den).is_zero()
                )
        elif name == "intersection_cubic":
            p0, q0, p2, q2 = (P(w[k]) for k in ("p0_bar", "q0_bar", "p2_bar", "q2_bar"))
            disp = intersection_cubic(p0, q0, p2, q2)
            ok = (P(w["a2"]), P(w["a1"]), P(w["a0"])) == (disp.a2, disp.a1, disp.a0)
        elif name == "intersection_discriminant":
            d = monic_cubic_disc(P(w["a2"]), P(w["a1"]), P(w["a0"]))
            ok = (
                d == P(w["disc"])
                and d == P(w["expected"]) == expected_intersection_disc(case, dom, u)
                and not d.is_zero()
            )
        elif name == "infinity_disjoint":
            ok = infinity_disjointness(P(w["f0_bar"]), P(w["f2_bar"]))
        elif name == "arithmetic_genus_3":
            ok = arithmetic_genus(w["component_genera"], w["nodes"]) == 3 == w["genus"]
        elif name == "gamma_nontrivial" and u is not None:
            from .local_brauer import LocalField, ParityMismatch, displayed_alpha2, gamma_of_curve

            try:
                g = gamma_of_curve(case, LocalField.of(dom, u))
            except ParityMismatch:
                g = None
            ok = (
                g == w["alpha2"] == data.get("gamma") == -1
                and displayed_alpha2(case, dom.q) == w["displayed"] == -1
            )
        else:
            ok = False
        results[name] = bool(ok)
    valid = bool(results) and all(results.values())
    return valid, results
