from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from brauercheck.ring import (
    BiquadRing,
    DomainError,
    FiniteField,
    LocalizedIntegers,
    MultiPoly,
    find_nonsquare,
    fq_legendre,
    is_irreducible,
    least_irreducible,
    monic_cubic_disc,
    reduce_mod_t,
)

Z = LocalizedIntegers()
F11 = FiniteField(11)


def v(name, dom=Z):
    return MultiPoly.var(dom, name)


t, u, S = v("t"), v("u"), v("S")


def test_cancellation():
    assert (t + 1) + (t - 1) == 2 * t


def test_difference_of_squares():
    assert (S - 1) * (S + 1) == S**2 - 1


def test_square_expansion():
    e = (S**2 - u) ** 2
    assert e == S**4 - 2 * u * S**2 + u**2
    assert e.evaluate(S=2, u=3) == 1


def test_exact_division():
    assert (12 * t).exact_div_int(12) == t
    q = (u + 1).exact_div_int(17280)
    assert q.coefficient({"u": 1}) == Fraction(1, 17280)
    with pytest.raises(DomainError):
        (u + 1).exact_div_int(11)


def test_reduce_mod_t():
    assert reduce_mod_t(-6 - 2 * t) == MultiPoly.const(Z, -6)
    assert reduce_mod_t(t**3 + t).is_zero()


def test_canonical_string_is_grlex():
    assert (u + t**2 + S).to_str() == (S + t**2 + u).to_str()
    assert MultiPoly.const(Z, 0).is_zero()
    assert not (t - t).terms


def test_legendre_examples():
    assert fq_legendre(F11, 1) == 1
    assert fq_legendre(F11, 2) == -1
    assert fq_legendre(FiniteField(13), 3) == 1


@pytest.mark.parametrize("p, expected", [(11, 2), (13, 2), (17, 3)])
def test_find_nonsquare(p, expected):
    assert find_nonsquare(FiniteField(p)) == expected


@pytest.mark.parametrize("a, expected", [((0, 0, -1), -27), ((0, -1, 0), 4), ((0, -3, 2), 0)])
def test_monic_cubic_disc(a, expected):
    assert monic_cubic_disc(*a) == expected


def test_small_primes_rejected():
    with pytest.raises(DomainError):
        FiniteField(7)
    with pytest.raises(DomainError):
        FiniteField(15)


def test_extension_field():
    F = FiniteField(11, 2)
    assert is_irreducible(F.modulus, 11)
    assert least_irreducible(11, 2) == F.modulus
    assert F.q == 121 and len(list(F.elements())) == 121
    z = F.generator()
    assert F.inverse(z) * z == F.one()
    assert z ** (F.q - 1) == F.one()
    # half the nonzero elements are squares
    assert sum(fq_legendre(F, F.element(i)) for i in range(1, F.q)) == 0


def test_biquad_relations():
    R = BiquadRing(Z)
    s, w = R.s, R.w
    assert (1 + s) * (1 - s) == R.one() - s * s
    assert (1 + s) * (1 - s) == R.elem(1 - t)
    assert w * w == R.elem(u)
    assert (s * w) ** 2 == R.elem(t * u)


# --------------------------------------------------------------------------
# Properties
# --------------------------------------------------------------------------

small = st.integers(-4, 4)
names = st.sampled_from(["t", "u", "S"])


@st.composite
def polys(draw, dom=Z):
    p = MultiPoly.const(dom, 0)
    for _ in range(draw(st.integers(0, 4))):
        c = draw(small)
        mono = MultiPoly.const(dom, c)
        for _ in range(draw(st.integers(0, 3))):
            mono = mono * MultiPoly.var(dom, draw(names))
        p = p + mono
    return p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.const(Z, 0)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_reduce_mod_t_is_homomorphism(a, b):
    assert reduce_mod_t(a * b) == reduce_mod_t(a) * reduce_mod_t(b)
    assert reduce_mod_t(a + b) == reduce_mod_t(a) + reduce_mod_t(b)


@settings(max_examples=60, deadline=None)
@given(polys(), st.sampled_from([2, 3, 5, 7, 12, 48, 1344, 17280]))
def test_exact_div_roundtrip(a, n):
    assert (a * n).exact_div_int(n) == a


@settings(max_examples=60, deadline=None)
@given(polys(FiniteField(13)), st.integers(1, 12))
def test_exact_div_roundtrip_fq(a, n):
    assert (a * n).exact_div_int(n) == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([11, 13, 17, 19, 23]), st.integers(1, 500), st.integers(1, 500))
def test_legendre_multiplicative(p, a, b):
    F = FiniteField(p)
    a, b = a % p or 1, b % p or 1
    assert fq_legendre(F, a * b % p) == fq_legendre(F, a) * fq_legendre(F, b)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 120), st.integers(1, 120))
def test_legendre_multiplicative_extension(i, j):
    F = FiniteField(11, 2)
    a, b = F.element(i % 120 + 1), F.element(j)
    assert fq_legendre(F, a * b) == fq_legendre(F, a) * fq_legendre(F, b)


F13 = FiniteField(13)
U13 = find_nonsquare(F13)
R13 = BiquadRing(F13, u=U13)


@st.composite
def biquads(draw):
    return R13.elem(*(draw(polys(F13)).substitute("u", U13).substitute("S", 1) for _ in range(4)))


@settings(max_examples=60, deadline=None)
@given(biquads(), biquads(), biquads())
def test_biquad_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=80, deadline=None)
@given(biquads(), biquads())
def test_biquad_has_no_zero_divisors(a, b):
    if (a * b).is_zero():
        assert a.is_zero() or b.is_zero()
    else:
        assert not a.is_zero() and not b.is_zero()
