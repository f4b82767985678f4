"""Exact arithmetic kernel.

Two coefficient domains are supported:

* :class:`LocalizedIntegers` -- the ring Z[1/210], i.e. rationals whose
  denominators only involve the primes 2, 3, 5 and 7.  Elements are plain
  ``int`` or :class:`fractions.Fraction` values.
* :class:`FiniteField` -- F_q with q = p^r, p >= 11.  For r = 1 elements are
  ``int`` in ``range(p)``; for r > 1 they are :class:`FqElem` instances.

:class:`MultiPoly` is a sparse polynomial over one of these domains in the
fixed variable alphabet ``(t, u, S, X, Y, W, x)``.  :class:`BiquadElem` is an
element of ``Base[s, w]/(s^2 - t, w^2 - u)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

VARIABLES = ("t", "u", "S", "X", "Y", "W", "x")
LOCALIZED_PRIMES = (2, 3, 5, 7)

_BITS = 16
_MASK = (1 << _BITS) - 1
_NVARS = len(VARIABLES)
_SHIFT = {v: _BITS * (_NVARS - 1 - i) for i, v in enumerate(VARIABLES)}


class DomainError(ArithmeticError):
    """Raised for illegal operations in a coefficient domain."""


def _strip_localized(n):
    n = abs(n)
    for q in LOCALIZED_PRIMES:
        while n % q == 0:
            n //= q
    return n


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --------------------------------------------------------------------------
# Coefficient domains
# --------------------------------------------------------------------------


class LocalizedIntegers:
    """The ring Z[1/(2*3*5*7)]."""

    characteristic = 0
    name = "Z[1/210]"

    def __eq__(self, other):
        return isinstance(other, LocalizedIntegers)

    def __hash__(self):
        return hash(LocalizedIntegers)

    def __repr__(self):
        return "LocalizedIntegers()"

    def norm(self, x):
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    def contains(self, x):
        if isinstance(x, int):
            return True
        return isinstance(x, Fraction) and _strip_localized(x.denominator) == 1

    def check_divisor(self, n):
        if n == 0:
            raise DomainError("division by zero")
        if _strip_localized(n) != 1:
            raise DomainError(
                f"cannot divide by {n} in {self.name}: prime factor outside {LOCALIZED_PRIMES}"
            )

    def div_int(self, x, n):
        self.check_divisor(n)
        return self.norm(Fraction(x) / n)

    def is_zero(self, x):
        return x == 0

    def format(self, x):
        return str(x)

    def sign_split(self, x):
        """Return ``(negative, magnitude)`` for pretty printing."""
        return (x < 0, -x if x < 0 else x)


class FiniteField:
    """The finite field F_q, q = p^r, p >= 11.

    For r > 1 the field is F_p[z]/(m(z)) where m is the least monic
    irreducible of degree r; monic polynomials are ordered by the integer
    ``c_0 + c_1 p + ... + c_{r-1} p^{r-1}`` of their lower coefficients.
    The same encoding fixes the canonical enumeration of field elements.
    """

    generator_name = "z"

    def __init__(self, p, r=1, modulus=None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if p < 11:
            raise DomainError(f"p >= 11 required (got p = {p})")
        if r < 1:
            raise DomainError("extension degree must be >= 1")
        self.p = p
        self.r = r
        self.q = p**r
        if r == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = least_irreducible(p, r)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree r")
            if not is_irreducible(modulus, p):
                raise DomainError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self.characteristic = p
        self.name = f"F_{self.q}"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.r == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.r}, {self.modulus})"

    # element plumbing
    def norm(self, x):
        if self.r == 1:
            return x % self.p
        return x

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        if self.r == 1:
            return int(n) % self.p
        return FqElem(self, (int(n) % self.p,) + (0,) * (self.r - 1))

    def from_coeffs(self, coeffs):
        coeffs = tuple(int(c) % self.p for c in coeffs)
        coeffs = coeffs + (0,) * (self.r - len(coeffs))
        if self.r == 1:
            return coeffs[0]
        return FqElem(self, coeffs[: self.r])

    def generator(self):
        if self.r == 1:
            raise DomainError("prime field has no named generator")
        return self.from_coeffs((0, 1))

    def element(self, index):
        """The element with canonical index ``index`` in ``range(q)``."""
        digits = []
        for _ in range(self.r):
            index, d = divmod(index, self.p)
            digits.append(d)
        return self.from_coeffs(digits)

    def index(self, x):
        if self.r == 1:
            return x
        return sum(c * self.p**i for i, c in enumerate(x.coeffs))

    def elements(self):
        for i in range(self.q):
            yield self.element(i)

    def contains(self, x):
        if self.r == 1:
            return isinstance(x, int) and 0 <= x < self.p
        return isinstance(x, FqElem) and x.field == self

    def check_divisor(self, n):
        if n % self.p == 0:
            raise DomainError(f"cannot divide by {n} in characteristic {self.p}")

    def div_int(self, x, n):
        self.check_divisor(n)
        inv = pow(n, -1, self.p)
        if self.r == 1:
            return x * inv % self.p
        return x * self.from_int(inv)

    def inverse(self, x):
        if self.is_zero(x):
            raise DomainError("zero is not invertible")
        return self.pow(x, self.q - 2)

    def pow(self, x, k):
        if self.r == 1:
            return pow(x, k, self.p)
        return x**k

    def is_zero(self, x):
        if self.r == 1:
            return x == 0
        return not any(x.coeffs)

    def format(self, x):
        if self.r == 1:
            return str(x)
        return x.format()

    def sign_split(self, x):
        return (False, x)


class FqElem:
    """Element of F_{p^r} (r > 1) as a coefficient vector in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise DomainError("field mismatch")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, ((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, ((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        prod = _fp_poly_mul(self.coeffs, other.coeffs, f.p)
        rem = _fp_poly_rem(prod, f.modulus, f.p)
        return FqElem(f, tuple(rem) + (0,) * (f.r - len(rem)))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.field.inverse(self) ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return isinstance(other, FqElem) and other.field == self.field and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"FqElem({self.format()})"

    def format(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        if not parts:
            return "0"
        if len(parts) == 1 and "+" not in parts[0]:
            return parts[0] if "*" not in parts[0] else f"({parts[0]})"
        return "(" + " + ".join(parts) + ")"


# univariate helpers over F_p, coefficient lists low degree first

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_poly_rem(a, m, p):
    a = _fp_trim(a)
    m = _fp_trim(m)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _fp_trim(a)
    return a


def is_irreducible(modulus, p):
    """Exhaustive trial division by monic polynomials of degree <= r/2."""
    m = _fp_trim(modulus)
    r = len(m) - 1
    if r <= 0:
        return False
    for d in range(1, r // 2 + 1):
        for low in iproduct(range(p), repeat=d):
            if not _fp_poly_rem(m, list(low) + [1], p):
                return False
    return True


def least_irreducible(p, r):
    """Least monic irreducible of degree r, by the encoding of its lower coefficients."""
    for k in range(p**r):
        low = []
        n = k
        for _ in range(r):
            n, d = divmod(n, p)
            low.append(d)
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise DomainError("no irreducible polynomial found")  # unreachable


def fq_legendre(field, a):
    """Quadratic character of ``a`` in F_q: +1, -1, or 0 for a = 0."""
    if field.is_zero(a):
        return 0
    v = field.pow(a, (field.q - 1) // 2)
    if v == field.one():
        return 1
    if v == field.from_int(-1):
        return -1
    raise DomainError("Euler criterion returned neither +1 nor -1")


def find_nonsquare(field):
    """Least non-square of F_q in the canonical enumeration."""
    for i in range(1, field.q):
        a = field.element(i)
        if fq_legendre(field, a) == -1:
            return a
    raise DomainError("no non-square found")  # unreachable for odd q


# --------------------------------------------------------------------------
# Sparse multivariate polynomials
# --------------------------------------------------------------------------


def pack_exponents(exps):
    """Pack an exponent mapping ``{var: e}`` (or a full tuple) into an int key."""
    if isinstance(exps, dict):
        key = 0
        for v, e in exps.items():
            if e < 0 or e > _MASK:
                raise ValueError(f"exponent out of range: {e}")
            key |= e << _SHIFT[v]
        return key
    key = 0
    for e in exps:
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent out of range: {e}")
        key = (key << _BITS) | e
    return key


def unpack_exponents(key):
    return tuple((key >> _SHIFT[v]) & _MASK for v in VARIABLES)


def _total_degree(key):
    return sum(unpack_exponents(key))


def _grlex_key(key):
    return (_total_degree(key), key)


class MultiPoly:
    """Sparse polynomial in ``VARIABLES`` with coefficients in ``domain``.

    Terms are stored as ``{packed exponent: coefficient}`` without zeros, so
    structural equality is polynomial equality.
    """

    __slots__ = ("domain", "terms")

    def __init__(self, domain, terms=None):
        self.domain = domain
        self.terms = {}
        if terms:
            norm = domain.norm
            for k, c in terms.items():
                c = norm(c)
                if c != 0:
                    self.terms[k] = c

    @classmethod
    def _raw(cls, domain, terms):
        obj = cls.__new__(cls)
        obj.domain = domain
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, domain, c):
        if isinstance(c, int):
            c = domain.from_int(c)
        return cls(domain, {0: c})

    @classmethod
    def var(cls, domain, name, power=1):
        if name not in _SHIFT:
            raise ValueError(f"unknown variable {name!r}")
        return cls._raw(domain, {power << _SHIFT[name]: domain.one()})

    @classmethod
    def monomial(cls, domain, exps, c=1):
        if isinstance(c, int):
            c = domain.from_int(c)
        return cls(domain, {pack_exponents(exps): c})

    # coercion
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.domain != self.domain:
                raise DomainError(f"domain mismatch: {self.domain.name} vs {other.domain.name}")
            return other
        if isinstance(other, (int, Fraction, FqElem)):
            if isinstance(other, Fraction) and not self.domain.contains(other):
                raise DomainError(f"{other} is not in {self.domain.name}")
            return MultiPoly(self.domain, {0: other})
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.domain.norm
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = norm(out.get(k, 0) + c)
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return MultiPoly._raw(self.domain, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.domain.norm
        return MultiPoly._raw(self.domain, {k: norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return MultiPoly._raw(self.domain, {})
        if len(a) < len(b):
            a, b = b, a
        norm = self.domain.norm
        out = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        res = {}
        for k, c in out.items():
            c = norm(c)
            if c != 0:
                res[k] = c
        return MultiPoly._raw(self.domain, res)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only natural exponents are supported")
        result = MultiPoly.const(self.domain, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div_int(self, n):
        """Divide every coefficient by the integer ``n``."""
        self.domain.check_divisor(n)
        div = self.domain.div_int
        return MultiPoly._raw(self.domain, {k: div(c, n) for k, c in self.terms.items()})

    def scale(self, c):
        return self * MultiPoly.const(self.domain, c)

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FqElem)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {0}

    def constant_term(self):
        return self.terms.get(0, self.domain.zero())

    # structure
    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(_total_degree(k) for k in self.terms)
        sh = _SHIFT[var]
        return max((k >> sh) & _MASK for k in self.terms)

    def variables(self):
        used = set()
        for k in self.terms:
            for v, e in zip(VARIABLES, unpack_exponents(k)):
                if e:
                    used.add(v)
        return [v for v in VARIABLES if v in used]

    def is_homogeneous(self, degree=None, variables=None):
        """Homogeneity in ``variables`` (default: all)."""
        if not self.terms:
            return True
        vs = variables or VARIABLES
        degs = {sum((k >> _SHIFT[v]) & _MASK for v in vs) for k in self.terms}
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, exps):
        return self.terms.get(pack_exponents(exps), self.domain.zero())

    def coeff_in(self, var, k):
        """Coefficient of ``var^k``, as a polynomial in the remaining variables."""
        sh = _SHIFT[var]
        out = {}
        for key, c in self.terms.items():
            if (key >> sh) & _MASK == k:
                out[key & ~(_MASK << sh)] = c
        return MultiPoly._raw(self.domain, out)

    def coefficients_in(self, var):
        d = self.degree(var)
        return [self.coeff_in(var, k) for k in range(d + 1)]

    def substitute(self, var, value):
        """Replace ``var`` by a polynomial or ring element."""
        if not isinstance(value, MultiPoly):
            value = MultiPoly.const(self.domain, value)
        elif value.domain != self.domain:
            raise DomainError("domain mismatch in substitution")
        sh = _SHIFT[var]
        powers = {}
        groups = {}
        for key, c in self.terms.items():
            e = (key >> sh) & _MASK
            groups.setdefault(e, {})[key & ~(_MASK << sh)] = c
        result = MultiPoly._raw(self.domain, {})
        for e, terms in groups.items():
            if e not in powers:
                powers[e] = value**e
            result = result + MultiPoly._raw(self.domain, terms) * powers[e]
        return result

    def evaluate(self, **values):
        out = self
        for var, val in values.items():
            out = out.substitute(var, val)
        return out

    def map_coefficients(self, domain, fn):
        return MultiPoly(domain, {k: fn(c) for k, c in self.terms.items()})

    # printing
    def sorted_terms(self):
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda kc: _grlex_key(kc[0]), reverse=True)

    def to_str(self):
        if not self.terms:
            return "0"
        dom = self.domain
        pieces = []
        for key, c in self.sorted_terms():
            neg, mag = dom.sign_split(c)
            mono = []
            for v, e in zip(VARIABLES, unpack_exponents(key)):
                if e == 1:
                    mono.append(v)
                elif e > 1:
                    mono.append(f"{v}^{e}")
            cstr = dom.format(mag)
            if mono:
                body = "*".join(mono)
                if mag != 1:
                    body = f"{cstr}*{body}"
            else:
                body = cstr
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    __str__ = to_str

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r} over {self.domain.name})"


def poly_arith(a, b, kind):
    """``kind`` in {"add", "sub", "mul"}."""
    if a.domain != b.domain:
        raise DomainError("domain mismatch")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def exact_div_int(a, n):
    return a.exact_div_int(n)


def reduce_mod_t(a):
    """Image under t -> 0."""
    if isinstance(a, BiquadElem):
        raise TypeError("reduce a base-ring element, not a biquadratic one")
    sh = _SHIFT["t"]
    return MultiPoly._raw(a.domain, {k: c for k, c in a.terms.items() if not (k >> sh) & _MASK})


def monic_cubic_disc(a2, a1, a0):
    """Discriminant of x^3 + a2 x^2 + a1 x + a0."""
    return 18 * a2 * a1 * a0 - 4 * a2**3 * a0 + a2**2 * a1**2 - 4 * a1**3 - 27 * a0**2


# --------------------------------------------------------------------------
# Biquadratic extension Base[s, w]/(s^2 - t, w^2 - u)
# --------------------------------------------------------------------------


class BiquadRing:
    """Parameters of the quotient ring adjoining s = sqrt(t) and w = sqrt(u).

    ``t`` and ``u`` are base polynomials: in symbolic mode both are
    variables; in instance mode ``u`` is a constant non-square of F_q.
    """

    def __init__(self, domain, t=None, u=None):
        self.domain = domain
        self.t = t if t is not None else MultiPoly.var(domain, "t")
        self.u = u if u is not None else MultiPoly.var(domain, "u")
        if not isinstance(self.u, MultiPoly):
            self.u = MultiPoly.const(domain, self.u)
        self.tu = self.t * self.u

    def __eq__(self, other):
        return (
            isinstance(other, BiquadRing)
            and self.domain == other.domain
            and self.t == other.t
            and self.u == other.u
        )

    def __hash__(self):
        return hash((self.domain, self.t, self.u))

    def base(self, c):
        if not isinstance(c, MultiPoly):
            c = MultiPoly.const(self.domain, c)
        return c

    def elem(self, c0=0, c1=0, c2=0, c3=0):
        return BiquadElem(self, *(self.base(c) for c in (c0, c1, c2, c3)))

    def zero(self):
        return self.elem()

    def one(self):
        return self.elem(1)

    @property
    def s(self):
        return self.elem(0, 1)

    @property
    def w(self):
        return self.elem(0, 0, 1)


class BiquadElem:
    """``c0 + c1*s + c2*w + c3*s*w`` with ``s^2 = t`` and ``w^2 = u``."""

    __slots__ = ("ring", "c")

    def __init__(self, ring, c0, c1, c2, c3):
        self.ring = ring
        self.c = (c0, c1, c2, c3)

    def _coerce(self, other):
        if isinstance(other, BiquadElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DomainError("biquadratic parameter mismatch")
            return other
        if isinstance(other, (int, Fraction, FqElem, MultiPoly)):
            return self.ring.elem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BiquadElem(self.ring, *(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return BiquadElem(self.ring, *(-a for a in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BiquadElem(self.ring, *(a - b for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return biquad_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def exact_div_int(self, n):
        return BiquadElem(self.ring, *(a.exact_div_int(n) for a in self.c))

    def __eq__(self, other):
        if not isinstance(other, BiquadElem):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return self.ring == other.ring and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return all(a.is_zero() for a in self.c)

    def is_base(self):
        """True when the s, w and s*w coordinates vanish."""
        return all(a.is_zero() for a in self.c[1:])

    def base_part(self):
        return self.c[0]

    def conjugate(self, flip_s=False, flip_w=False):
        c0, c1, c2, c3 = self.c
        if flip_s:
            c1, c3 = -c1, -c3
        if flip_w:
            c2, c3 = -c2, -c3
        return BiquadElem(self.ring, c0, c1, c2, c3)

    def to_str(self):
        labels = ("", "s", "w", "s*w")
        parts = []
        for lab, a in zip(labels, self.c):
            if a.is_zero():
                continue
            parts.append(f"({a.to_str()})" + (f"*{lab}" if lab else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"BiquadElem({self.to_str()})"


def biquad_mul(a, b):
    if a.ring != b.ring:
        raise DomainError("biquadratic parameter mismatch")
    R = a.ring
    a0, a1, a2, a3 = a.c
    b0, b1, b2, b3 = b.c
    zero = MultiPoly._raw(R.domain, {})

    def m(x, y):
        if not x.terms or not y.terms:
            return zero
        return x * y

    c0 = m(a0, b0) + m(R.t, m(a1, b1)) + m(R.u, m(a2, b2)) + m(R.tu, m(a3, b3))
    c1 = m(a0, b1) + m(a1, b0) + m(R.u, m(a2, b3) + m(a3, b2))
    c2 = m(a0, b2) + m(a2, b0) + m(R.t, m(a1, b3) + m(a3, b1))
    c3 = m(a0, b3) + m(a3, b0) + m(a1, b2) + m(a2, b1)
    return BiquadElem(R, c0, c1, c2, c3)

