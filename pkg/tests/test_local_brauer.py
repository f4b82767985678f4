import random

from hypothesis import given, settings, strategies as st
import pytest

from brauercheck.local_brauer import (
    EtaleAlgebra,
    GswClass,
    LocalField,
    ParityMismatch,
    conic_oracle,
    displayed_alpha2,
    etale_algebra_of_surface,
    gamma_of_curve,
    gsw_of_algebra,
    gsw_product,
    gsw_total_of_factor,
    hilbert_symbol,
)
from brauercheck.ring import FiniteField, is_prime

SWEEP = [p for p in range(11, 201) if is_prime(p)]


def local(p, r=1):
    return LocalField.of(FiniteField(p, r))


@pytest.mark.parametrize("p", [11, 13, 17, 19])
def test_displayed_symbol_values(p):
    L = local(p)
    e = (L.q - 1) // 2
    assert hilbert_symbol(L.t(), L.u_class()) == -1
    assert hilbert_symbol(L.minus_one(), L.tu()) == (-1) ** e
    assert hilbert_symbol(L.t(), L.t()) == (-1) ** e
    assert hilbert_symbol(L.u_class(), L.u_class()) == 1


def test_minus_one_class():
    assert local(13).minus_one().is_trivial()
    assert local(11).minus_one().label() == "u"


@pytest.mark.parametrize("p", SWEEP)
def test_symbol_properties_and_oracle(p):
    L = local(p)
    cs = L.classes()
    agree = 0
    for a in cs:
        assert hilbert_symbol(a, a * L.minus_one()) == 1
        for b in cs:
            h = hilbert_symbol(a, b)
            assert h == hilbert_symbol(b, a)
            agree += h == conic_oracle(a, b)
            for c in cs:
                assert hilbert_symbol(a * b, c) == hilbert_symbol(a, c) * hilbert_symbol(b, c)
    assert agree == 16


def test_oracle_examples():
    L = local(11)
    assert conic_oracle(L.one(), L.one()) == 1
    assert conic_oracle(L.u_class(), L.u_class()) == 1
    assert conic_oracle(L.t(), L.u_class()) == -1


def test_oracle_extension_field():
    L = local(11, 2)
    for a in L.classes():
        for b in L.classes():
            assert hilbert_symbol(a, b) == conic_oracle(a, b)


def test_factor_classes():
    L = local(13)
    assert gsw_total_of_factor("F", L) == GswClass(L.one(), 1)
    assert gsw_total_of_factor("K", L).a2 == -1
    e1 = gsw_total_of_factor("E1", L)
    assert e1 * e1 == GswClass(L.one(), hilbert_symbol(L.t(), L.t()))
    assert gsw_product([e1, gsw_total_of_factor("F", L)]) == e1
    with pytest.raises(ValueError):
        gsw_total_of_factor("G", L)


def test_etale_algebras():
    even, odd = etale_algebra_of_surface("even"), etale_algebra_of_surface("odd")
    assert even.as_counter() == {"E1": 4, "E2": 4, "K": 1, "F": 7}
    assert odd.as_counter() == {"E1": 2, "E2": 6, "K": 2, "F": 3}
    assert even.degree == odd.degree == 27
    assert EtaleAlgebra.of(K=2, F=1).degree == 9


@pytest.mark.parametrize("p", SWEEP)
def test_displayed_exponent_formulas(p):
    L = local(p)
    for case in ("even", "odd"):
        a2 = gsw_of_algebra(etale_algebra_of_surface(case), L).a2
        assert a2 == displayed_alpha2(case, L.q)


@pytest.mark.parametrize("p", SWEEP)
def test_gamma_nontrivial_on_matched_parity(p):
    L = local(p)
    case = "even" if ((p - 1) // 2) % 2 == 0 else "odd"
    assert gamma_of_curve(case, L) == -1
    other = "odd" if case == "even" else "even"
    with pytest.raises(ParityMismatch):
        gamma_of_curve(other, L)


def test_gamma_examples():
    assert gamma_of_curve("even", FiniteField(13)) == -1
    assert gamma_of_curve("odd", FiniteField(11)) == -1
    with pytest.raises(ParityMismatch):
        gamma_of_curve("odd", FiniteField(13))
    assert gamma_of_curve("even", local(11, 2)) == -1  # q = 121


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SWEEP), st.sampled_from(["even", "odd"]), st.integers(0, 2**32))
def test_gsw_product_order_independent(p, case, seed):
    L = local(p)
    factors = [gsw_total_of_factor(f, L) for f in etale_algebra_of_surface(case).expanded()]
    rng = random.Random(seed)
    shuffled = factors[:]
    rng.shuffle(shuffled)
    assert gsw_product(shuffled) == gsw_product(factors)
    k = rng.randrange(1, len(factors))
    assert gsw_product([gsw_product(shuffled[:k]), gsw_product(shuffled[k:])]) == gsw_product(factors)


def test_mixed_fields_rejected():
    a, b = local(11).t(), local(13).t()
    with pytest.raises(ValueError):
        hilbert_symbol(a, b)
