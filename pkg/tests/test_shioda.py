from collections import Counter
from itertools import combinations
import random

import pytest

from brauercheck.ring import (
    BiquadRing,
    FiniteField,
    LocalizedIntegers,
    MultiPoly,
    find_nonsquare,
    is_prime,
    reduce_mod_t,
)
from brauercheck.shioda import (
    MarkingSet,
    PipelineError,
    build_markings,
    c1_of,
    check_general_position,
    elementary_symmetric,
    eps_from_q,
    make_ring,
    poly_from_eps,
    q_polynomial,
    run_pipeline,
    shioda_coefficients,
    surface_forms,
    twenty_seven_elements,
)

Z = LocalizedIntegers()
t, u, S = (MultiPoly.var(Z, n) for n in "tuS")


@pytest.fixture(scope="module", params=["even", "odd"])
def symbolic(request):
    return run_pipeline(request.param)


def test_markings_even():
    m = build_markings("even")
    R = m.ring
    s, w, T = R.s, R.w, R.elem(t)
    assert m.markings == (1 + s, 1 - s, 1 + w, 1 - w, 2 + T, T)


def test_markings_odd():
    m = build_markings("odd")
    R = m.ring
    s, w, T = R.s, R.w, R.elem(t)
    assert m.markings == (1 + s, 1 - s, 1 + w, 1 - w, 1 + T + 2 * w, 1 + T - 2 * w)


@pytest.mark.parametrize("case", ["even", "odd"])
def test_marking_sum(case):
    m = build_markings(case)
    assert c1_of(m) == m.ring.elem(-6 - 2 * t)


def test_general_position():
    assert check_general_position(build_markings("even")).ok
    assert check_general_position(build_markings("odd", FiniteField(11), 2)).ok
    m = build_markings("even")
    bad = MarkingSet("even", m.ring, (m.markings[0],) * 2 + m.markings[2:])
    rep = check_general_position(bad)
    assert not rep.ok and rep.violations()


def test_square_u_rejected():
    with pytest.raises(PipelineError):
        make_ring(FiniteField(11), 3)  # 3 = 5^2 mod 11


def _reduced_pairs(elems):
    # t -> 0 kills every s coordinate; keep (constant, coefficient of w)
    out = Counter()
    for e in elems:
        c0, c2 = reduce_mod_t(e.c[0]), reduce_mod_t(e.c[2])
        assert c0.is_constant() and c2.is_constant()
        out[(c0.constant_term(), c2.constant_term())] += 1
    return out


def test_even_reduced_multiset():
    te = twenty_seven_elements(build_markings("even"))
    assert len(te) == 27
    expected = Counter({(0, 0): 3})
    for k, mult in ((1, 2), (2, 1), (3, 2), (4, 1)):
        expected[(k, 0)] += mult
        expected[(-k, 0)] += mult
    expected[(0, 1)] = expected[(0, -1)] = 2
    for a in (1, -1, 3, -3):
        for b in (1, -1):
            expected[(a, b)] += 1
    assert _reduced_pairs(te.elements()) == expected
    # a''_{12} = c1/3 + (1 + s) + (1 - s) = -2t/3
    a12 = te.adouble[(0, 1)]
    assert a12 == a12.ring.elem((-2 * t).exact_div_int(3))
    assert all(reduce_mod_t(c).is_zero() for c in a12.c)


def test_elementary_symmetric_brute_force():
    R = BiquadRing(Z)
    elems = [R.elem(k) for k in (1, 2, 3)]
    eps = elementary_symmetric(elems)
    assert [e.constant_term() for e in eps] == [1, 6, 11, 6]
    # subset definition on a mixed 4-element sample
    # Galois-stable sample: the four conjugates of two elements
    sample = [R.s + 1 + R.w, R.elem(t) + R.s * R.w - 2 * R.w]
    elems = [x.conjugate(a, b) for x in sample for a in (False, True) for b in (False, True)]
    eps = elementary_symmetric(elems)
    for m in range(len(elems) + 1):
        brute = R.zero()
        for sub in combinations(elems, m):
            prod = R.one()
            for x in sub:
                prod = prod * x
            brute = brute + prod
        assert brute.is_base() and brute.base_part() == eps[m]
    with pytest.raises(PipelineError):
        elementary_symmetric([R.s])


def test_eps_base_and_degree(symbolic):
    assert len(symbolic.eps) == 28
    assert symbolic.eps[0] == MultiPoly.const(Z, 1)


def test_symbolic_reduction_matches_product(symbolic):
    reduced = [reduce_mod_t(e) for e in symbolic.eps]
    assert poly_from_eps(reduced) == q_polynomial(symbolic.case)


def test_coefficients_agree_between_routes(symbolic):
    from_elements = shioda_coefficients([reduce_mod_t(e) for e in symbolic.eps])
    from_q = shioda_coefficients(eps_from_q(q_polynomial(symbolic.case)))
    assert from_elements == from_q
    assert from_elements == symbolic.coeffs.reduced()


def test_p1_q1_vanish_mod_t(symbolic):
    c = symbolic.coeffs.reduced()
    assert c.p1.is_zero() and c.q1.is_zero()
    assert symbolic.forms.reduced().f1.is_zero()


def test_q_polynomial_shape():
    Q = q_polynomial("even")
    assert Q.degree("S") == 27
    assert Q.coeff_in("S", 27) == MultiPoly.const(Z, 1)
    assert Q.coeff_in("S", 24).is_zero()


def test_q_polynomial_at_u_zero():
    expected = (
        S**3 * (S**2 - 1) ** 2 * (S**2 - 4) * (S**2 - 9) ** 2 * (S**2 - 16)
        * S**4 * (S**2 - 1) ** 2 * (S**2 - 9) ** 2
    )
    assert q_polynomial("even").substitute("u", 0) == expected


def test_forms_homogeneous(symbolic):
    f = symbolic.forms
    for form, deg in ((f.f0, 1), (f.f1, 2), (f.f2, 3)):
        assert form.is_homogeneous(deg, "XYW")
    assert symbolic.g.is_homogeneous(4, "XYW")


def test_cuspidal_reference_form():
    zero = MultiPoly.const(Z, 0)
    f = surface_forms(shioda_coefficients([zero] * 13))
    X, Y, W = (MultiPoly.var(Z, n) for n in "XYW")
    assert f.f2 == X**3 - Y**2 * W


def test_quartic_coefficients(symbolic):
    g, c = symbolic.g, symbolic.coeffs
    assert g.coeff_in("X", 4).coeff_in("W", 0) == -4 * c.p2
    assert g.coeff_in("X", 1).coeff_in("Y", 2).coeff_in("W", 1) == 4 * c.p2
    assert g.coeff_in("Y", 3).coeff_in("W", 1) == MultiPoly.const(Z, -8)


def test_quartic_by_evaluation():
    rng = random.Random(5)
    res = run_pipeline("even", FiniteField(13))
    f = res.forms
    for _ in range(5):
        pt = {k: rng.randrange(13) for k in ("t", "X", "Y", "W")}
        ev = lambda p: p.evaluate(**pt).constant_term()  # noqa: E731
        assert ev(res.g) == (ev(f.f1) ** 2 - 4 * ev(f.f0) * ev(f.f2)) % 13


@pytest.mark.parametrize("p", [p for p in range(11, 101) if is_prime(p)])
def test_instance_reconstruction(p):
    F = FiniteField(p)
    u0 = find_nonsquare(F)
    for case in ("even", "odd"):
        res = run_pipeline(case, F, u0)
        reduced = [reduce_mod_t(e) for e in res.eps]
        assert poly_from_eps(reduced) == q_polynomial(case, F, u0)
        assert reduced[5].is_zero()
        assert res.forms.reduced().f1.is_zero()


def test_extension_field_instance():
    F = FiniteField(11, 2)
    res = run_pipeline("even", F)
    reduced = [reduce_mod_t(e) for e in res.eps]
    assert poly_from_eps(reduced) == q_polynomial("even", F, res.u.constant_term())
