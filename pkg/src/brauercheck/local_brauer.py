"""Square classes, tame Hilbert symbols and Galois-Stiefel-Whitney classes
over the local field F = F_q((t)), q odd.

F^x/(F^x)^2 is the Klein four-group {1, u, t, ut} where u is a fixed
non-square of F_q.  Degree-2 mod-2 Galois cohomology of F is Z/2, written
multiplicatively as {+1, -1}: a sum of degree-2 classes is a product of signs.
Cohomology of degree >= 3 vanishes for F, so total classes are truncated
after degree 2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .ring import FiniteField, find_nonsquare, fq_legendre


class ParityMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LocalField:
    """F_q((t)) together with the chosen non-square unit u."""

    field: FiniteField
    u: object

    @classmethod
    def of(cls, field, u=None):
        if u is None:
            u = find_nonsquare(field)
        elif isinstance(u, int):
            u = field.from_int(u)
        if fq_legendre(field, u) != -1:
            raise ValueError(f"u = {field.format(u)} is a square in {field.name}")
        return cls(field, u)

    @property
    def q(self):
        return self.field.q

    @property
    def half_order_parity(self):
        """(q - 1)/2 mod 2."""
        return ((self.q - 1) // 2) % 2

    def cls(self, vbit, ubit):
        return SquareClass(vbit % 2, ubit % 2, self)

    def one(self):
        return self.cls(0, 0)

    def t(self):
        return self.cls(1, 0)

    def u_class(self):
        return self.cls(0, 1)

    def tu(self):
        return self.cls(1, 1)

    def minus_one(self):
        # -1 is a square in F_q iff (q - 1)/2 is even
        return self.cls(0, 0 if fq_legendre(self.field, self.field.from_int(-1)) == 1 else 1)

    def classes(self):
        return [self.cls(v, w) for v in (0, 1) for w in (0, 1)]

    def unit_rep(self, c):
        return self.u if c.ubit else self.field.one()


@dataclass(frozen=True)
class SquareClass:
    vbit: int
    ubit: int
    local: LocalField

    def __mul__(self, other):
        if other.local != self.local:
            raise ValueError("square classes over different fields")
        return SquareClass(self.vbit ^ other.vbit, self.ubit ^ other.ubit, self.local)

    def is_trivial(self):
        return not (self.vbit or self.ubit)

    def label(self):
        return {(0, 0): "1", (0, 1): "u", (1, 0): "t", (1, 1): "tu"}[(self.vbit, self.ubit)]

    def __repr__(self):
        return f"SquareClass({self.label()})"


def hilbert_symbol(a, b):
    """Tame symbol for odd residue characteristic.

    With a = t^alpha a0 and b = t^beta b0, the symbol is the quadratic
    character of (-1)^(alpha beta) a0^beta b0^(-alpha) in F_q.
    """
    if a.local != b.local:
        raise ValueError("square classes over different fields")
    L = a.local
    fld = L.field
    alpha, beta = a.vbit, b.vbit
    a0, b0 = L.unit_rep(a), L.unit_rep(b)
    c = fld.one()
    if alpha and beta:
        c = c * fld.from_int(-1)
    if beta:
        c = c * a0
    if alpha:
        c = c * fld.inverse(b0)
    return fq_legendre(fld, fld.norm(c))


def conic_oracle(a, b):
    """Decide whether z^2 = a x^2 + b y^2 has a nontrivial solution over F.

    Independent of :func:`hilbert_symbol`: everything reduces to searching
    F_q for smooth points of a residue conic, found by enumerating F_q.  A
    smooth residue point lifts to F_q[[t]] by Hensel's lemma, and a primitive
    solution reduces to one, so the search is exact.
    """
    L = a.local
    fld = L.field
    elems = list(fld.elements())
    squares = {fld.norm(x * x) for x in elems}
    a0, b0 = L.unit_rep(a), L.unit_rep(b)

    def norm(x):
        return fld.norm(x)

    if not a.vbit and not b.vbit:
        # x = 1: z^2 = a0 + b0 y^2; otherwise x = 0, y = 1: z^2 = b0
        found = any(norm(a0 + b0 * y * y) in squares for y in elems) or b0 in squares
        return 1 if found else -1
    if a.vbit and not b.vbit:
        # mod t: z^2 = b0 y^2 with y != 0
        return 1 if b0 in squares else -1
    if b.vbit and not a.vbit:
        return 1 if a0 in squares else -1
    # z = t z1: t z1^2 = a0 x^2 + b0 y^2 needs a0 x^2 + b0 y^2 = 0 mod t, (x, y) != 0
    zero = fld.zero()
    found = any(norm(a0 * x * x + b0) == zero for x in elems)
    return 1 if found else -1


# --------------------------------------------------------------------------
# Total Galois-Stiefel-Whitney classes, truncated after degree 2
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GswClass:
    """1 + a1 + a2 with a1 a square class and a2 in {+1, -1}."""

    a1: SquareClass
    a2: int

    @property
    def a0(self):
        return 1

    def __mul__(self, other):
        return GswClass(self.a1 * other.a1, self.a2 * other.a2 * hilbert_symbol(self.a1, other.a1))


FACTOR_DEGREES = {"F": 1, "E1": 2, "E2": 2, "K": 4}


def gsw_total_of_factor(factor, local):
    """Total class of a field factor: F = F_q((t)), E1 = F(sqrt t), E2 = F(sqrt u),
    K = F(sqrt t, sqrt u).

    The class of K (a1 = 0, a2 = {t, u} + {-1, tu}) is taken as given.
    """
    if factor == "F":
        return GswClass(local.one(), 1)
    if factor == "E1":
        return GswClass(local.t(), 1)
    if factor == "E2":
        return GswClass(local.u_class(), 1)
    if factor == "K":
        a2 = hilbert_symbol(local.t(), local.u_class()) * hilbert_symbol(local.minus_one(), local.tu())
        return GswClass(local.one(), a2)
    raise ValueError(f"unknown factor {factor!r}")


def gsw_product(classes, local=None):
    classes = list(classes)
    if not classes:
        if local is None:
            raise ValueError("empty product needs the local field")
        return GswClass(local.one(), 1)
    out = classes[0]
    for c in classes[1:]:
        if c.a1.local != out.a1.local:
            raise ValueError("config mismatch")
        out = out * c
    return out


@dataclass(frozen=True)
class EtaleAlgebra:
    factors: tuple  # ((tag, multiplicity), ...) in F, E1, E2, K order

    @classmethod
    def of(cls, **mults):
        for tag in mults:
            if tag not in FACTOR_DEGREES:
                raise ValueError(f"unknown factor {tag!r}")
        return cls(tuple((tag, mults[tag]) for tag in FACTOR_DEGREES if mults.get(tag)))

    @property
    def degree(self):
        return sum(FACTOR_DEGREES[tag] * m for tag, m in self.factors)

    def as_counter(self):
        return Counter(dict(self.factors))

    def expanded(self):
        return [tag for tag, m in self.factors for _ in range(m)]


def etale_algebra_of_surface(case):
    """Etale algebra of the 27 lines for the two marking configurations."""
    if case == "even":
        alg = EtaleAlgebra.of(E1=4, E2=4, K=1, F=7)
    elif case == "odd":
        alg = EtaleAlgebra.of(E1=2, E2=6, K=2, F=3)
    else:
        raise ValueError(f"unknown case {case!r}")
    assert alg.degree == 27
    return alg


def gsw_of_algebra(alg, local):
    return gsw_product([gsw_total_of_factor(tag, local) for tag in alg.expanded()], local)


def case_for_field(field):
    """Marking case paired with the parity of (q - 1)/2."""
    return "even" if ((field.q - 1) // 2) % 2 == 0 else "odd"


def gamma_of_curve(case, local):
    """alpha_2 of the surface's etale algebra, as a sign."""
    if isinstance(local, FiniteField):
        local = LocalField.of(local)
    expected = case_for_field(local.field)
    if case != expected:
        raise ParityMismatch(
            f"case {case!r} requires (q-1)/2 {case}, but q = {local.q} gives {expected}"
        )
    return gsw_of_algebra(etale_algebra_of_surface(case), local).a2


def displayed_alpha2(case, q):
    """(-1)^((q-1)/2 + 1) for the even case, (-1)^((q-1)/2) for the odd case."""
    e = (q - 1) // 2
    return (-1) ** (e + 1) if case == "even" else (-1) ** e
