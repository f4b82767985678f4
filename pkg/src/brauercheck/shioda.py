"""Cubic surface from six markings and its ramification quartic.

The six markings u_1..u_6 live in K = F(sqrt t, sqrt u).  From them we build
the 27 elements a_i, a'_i, a''_ij, their elementary symmetric functions, the
coefficients p_2, p_1, q_2, p_0, q_1, q_0 of the cubic surface

    f_0 Z^2 + f_1 Z + f_2 = 0,

and the quartic g = f_1^2 - 4 f_0 f_2 cut out by the ramification locus of the
projection from [0, 0, 1, 0].

Two modes share the same code path:

* symbolic: coefficients in Z[1/210][t, u], with u a variable;
* instance: coefficients in F_q[t], with u a fixed non-square of F_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
import math

from .ring import (
    BiquadRing,
    DomainError,
    LocalizedIntegers,
    MultiPoly,
    find_nonsquare,
    fq_legendre,
    reduce_mod_t,
)

CASES = ("even", "odd")


class PipelineError(ValueError):
    pass


@dataclass(frozen=True)
class MarkingSet:
    case: str
    ring: BiquadRing
    markings: tuple

    @property
    def symbolic(self):
        return isinstance(self.ring.domain, LocalizedIntegers)

    def __iter__(self):
        return iter(self.markings)

    def __len__(self):
        return len(self.markings)


@dataclass(frozen=True)
class TwentySeven:
    a: tuple
    aprime: tuple
    adouble: dict  # (i, j) -> element, 0-based i < j

    def elements(self):
        return list(self.a) + list(self.aprime) + [self.adouble[k] for k in sorted(self.adouble)]

    def __len__(self):
        return len(self.a) + len(self.aprime) + len(self.adouble)


@dataclass(frozen=True)
class ShiodaCoeffs:
    p2: MultiPoly
    p1: MultiPoly
    q2: MultiPoly
    p0: MultiPoly
    q1: MultiPoly
    q0: MultiPoly

    def as_dict(self):
        return {k: getattr(self, k) for k in ("p2", "p1", "q2", "p0", "q1", "q0")}

    def reduced(self):
        return ShiodaCoeffs(**{k: reduce_mod_t(v) for k, v in self.as_dict().items()})


@dataclass(frozen=True)
class SurfaceForms:
    f0: MultiPoly
    f1: MultiPoly
    f2: MultiPoly

    def reduced(self):
        return SurfaceForms(reduce_mod_t(self.f0), reduce_mod_t(self.f1), reduce_mod_t(self.f2))


def make_ring(field=None, u=None):
    """Biquadratic ring for symbolic mode (``field is None``) or instance mode."""
    if field is None:
        if u is not None:
            raise PipelineError("symbolic mode keeps u as a variable")
        return BiquadRing(LocalizedIntegers())
    if u is None:
        u = find_nonsquare(field)
    elif isinstance(u, int):
        u = field.from_int(u)
    if fq_legendre(field, u) != -1:
        raise PipelineError(f"u = {field.format(u)} is a square in {field.name}")
    return BiquadRing(field, u=MultiPoly.const(field, u))


def build_markings(case, field=None, u=None):
    if case not in CASES:
        raise PipelineError(f"unknown case {case!r}")
    R = make_ring(field, u)
    s, w, t = R.s, R.w, R.elem(R.t)
    one = R.one()
    if case == "even":
        ms = (one + s, one - s, one + w, one - w, 2 * one + t, t)
    else:
        ms = (one + s, one - s, one + w, one - w, one + t + 2 * w, one + t - 2 * w)
    return MarkingSet(case, R, ms)


@dataclass(frozen=True)
class PositionReport:
    checks: list  # (family, indices, passed)

    @property
    def ok(self):
        return all(passed for _, _, passed in self.checks)

    def violations(self):
        return [(fam, idx) for fam, idx, passed in self.checks if not passed]


def check_general_position(m):
    """u_i != u_j, u_i + u_j + u_k != 0, and sum u_i != 0."""
    us = m.markings
    checks = []
    for i, j in combinations(range(len(us)), 2):
        checks.append(("distinct", (i + 1, j + 1), not (us[i] - us[j]).is_zero()))
    for i, j, k in combinations(range(len(us)), 3):
        checks.append(("triple_sum", (i + 1, j + 1, k + 1), not (us[i] + us[j] + us[k]).is_zero()))
    total = us[0]
    for x in us[1:]:
        total = total + x
    checks.append(("total_sum", tuple(range(1, len(us) + 1)), not total.is_zero()))
    return PositionReport(checks)


def c1_of(m):
    total = m.ring.zero()
    for x in m.markings:
        total = total + x
    return -total


def twenty_seven_elements(m):
    c1 = c1_of(m)
    third = c1.exact_div_int(3)
    us = m.markings
    a = tuple(third - x for x in us)
    ap = tuple(-2 * third - x for x in us)
    ad = {(i, j): third + us[i] + us[j] for i, j in combinations(range(len(us)), 2)}
    te = TwentySeven(a, ap, ad)
    for idx, e in enumerate(te.elements()):
        if e.is_zero():
            raise PipelineError(f"element #{idx} of the 27 is zero")
    return te


def _common_denominator(elems):
    den = 1
    for e in elems:
        for coord in e.c:
            for c in coord.terms.values():
                d = getattr(c, "denominator", 1)
                den = den * d // math.gcd(den, d)
    return den


def elementary_symmetric(elems):
    """e_0..e_n of ``elems`` (BiquadElem list), via the product of (S + a_i).

    Returns base-ring polynomials; raises if a symmetric function picks up a
    non-base coordinate.
    """
    elems = list(elems)
    if not elems:
        raise PipelineError("need at least one element")
    R = elems[0].ring
    # Over Z[1/210] clear denominators so the product runs on integers:
    # prod (S + d a_i) has d^m e_m as its S^(n-m) coefficient.
    den = _common_denominator(elems) if isinstance(R.domain, LocalizedIntegers) else 1
    if den != 1:
        elems = [e * den for e in elems]
    coeffs = [R.one()]  # coeffs[m] = running e_m
    for a in elems:
        nxt = coeffs + [R.zero()]
        for m in range(len(coeffs), 0, -1):
            nxt[m] = nxt[m] + coeffs[m - 1] * a
        coeffs = nxt
    out = []
    for m, e in enumerate(coeffs):
        if not e.is_base():
            raise PipelineError(f"e_{m} has a non-base coordinate")
        val = e.base_part()
        if den != 1 and m:
            val = val.exact_div_int(den**m)
        out.append(val)
    return out


def shioda_coefficients(eps):
    e = eps
    p2 = e[2].exact_div_int(12)
    p1 = e[5].exact_div_int(48)
    q2 = (e[6] - 168 * p2**3).exact_div_int(96)
    p0 = (e[8] - 294 * p2**4 - 528 * p2 * q2).exact_div_int(480)
    q1 = (e[9] - 1008 * p1 * p2**2).exact_div_int(1344)
    q0 = (
        e[12]
        - 608 * p1**2 * p2
        - 4768 * p0 * p2**2
        - 252 * p2**6
        - 1200 * p2**3 * q2
        + 1248 * q2**2
    ).exact_div_int(17280)
    return ShiodaCoeffs(p2, p1, q2, p0, q1, q0)


def surface_forms(c):
    dom = c.p2.domain
    X, Y, W = (MultiPoly.var(dom, v) for v in "XYW")
    f0 = c.p2 * X - 2 * Y + c.q2 * W
    f1 = c.p1 * X * W + c.q1 * W**2
    f2 = X**3 + c.p0 * X * W**2 + c.q0 * W**3 - Y**2 * W
    forms = SurfaceForms(f0, f1, f2)
    for f in (f0, f1, f2):
        # [0, 0, 1, 0] lies on f0 Z^2 + f1 Z + f2 = 0
        if not f.evaluate(X=0, Y=0, W=0).is_zero():
            raise PipelineError("surface does not pass through [0, 0, 1, 0]")
    return forms


def ramification_quartic(f):
    return f.f1**2 - 4 * f.f0 * f.f2


def q_polynomial(case, field=None, u=None):
    """The product Q(u, S) of degree 27 in S; over ``field`` with u fixed if given."""
    if case not in CASES:
        raise PipelineError(f"unknown case {case!r}")
    dom = LocalizedIntegers() if field is None else field
    S = MultiPoly.var(dom, "S")
    if field is None:
        U = MultiPoly.var(dom, "u")
    else:
        U = MultiPoly.const(dom, field.from_int(u) if isinstance(u, int) else u)
    S2 = S**2
    if case == "even":
        factors = [
            S**3,
            (S2 - 1) ** 2,
            S2 - 4,
            (S2 - 9) ** 2,
            S2 - 16,
            (S2 - U) ** 2,
            S2**2 - (2 + 2 * U) * S2 + (1 - U) ** 2,
            S2**2 - (18 + 2 * U) * S2 + (9 - U) ** 2,
        ]
    else:
        factors = [
            S**3,
            (S2 - 9) ** 2,
            (S2 - U) ** 3,
            (S2 - 4 * U) ** 2,
            S2 - 9 * U,
            S2**2 - (18 + 2 * U) * S2 + (9 - U) ** 2,
            S2**2 - (18 + 8 * U) * S2 + (9 - 4 * U) ** 2,
        ]
    Q = MultiPoly.const(dom, 1)
    for f in factors:
        Q = Q * f
    return Q


def eps_from_q(Q, n=27):
    """e_m read off as the coefficient of S^(n - m)."""
    return [Q.coeff_in("S", n - m) for m in range(n + 1)]


def poly_from_eps(eps):
    """sum_m e_{n-m} S^m."""
    n = len(eps) - 1
    dom = eps[0].domain
    S = MultiPoly.var(dom, "S")
    out = MultiPoly.const(dom, 0)
    for m in range(n + 1):
        if not eps[n - m].is_zero():
            out = out + eps[n - m] * S**m
    return out


@dataclass(frozen=True)
class PipelineResult:
    markings: MarkingSet
    elements: TwentySeven
    eps: list
    coeffs: ShiodaCoeffs
    forms: SurfaceForms
    g: MultiPoly

    @property
    def case(self):
        return self.markings.case

    @property
    def domain(self):
        return self.markings.ring.domain

    @property
    def u(self):
        return self.markings.ring.u


def run_pipeline(case, field=None, u=None):
    m = build_markings(case, field, u)
    te = twenty_seven_elements(m)
    eps = elementary_symmetric(te.elements())
    coeffs = shioda_coefficients(eps)
    forms = surface_forms(coeffs)
    g = ramification_quartic(forms)
    return PipelineResult(m, te, eps, coeffs, forms, g)


def reduced_q_for(result):
    """Q(u, S) in the result's mode: symbolic, or with the instance u substituted."""
    if result.markings.symbolic:
        return q_polynomial(result.case)
    return q_polynomial(result.case, result.domain, result.u.constant_term())


__all__ = [
    "CASES",
    "DomainError",
    "MarkingSet",
    "PipelineError",
    "PipelineResult",
    "PositionReport",
    "ShiodaCoeffs",
    "SurfaceForms",
    "TwentySeven",
    "build_markings",
    "check_general_position",
    "elementary_symmetric",
    "eps_from_q",
    "make_ring",
    "poly_from_eps",
    "q_polynomial",
    "ramification_quartic",
    "reduced_q_for",
    "run_pipeline",
    "shioda_coefficients",
    "surface_forms",
    "twenty_seven_elements",
]
