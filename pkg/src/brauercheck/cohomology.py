"""Integral cohomology of an amalgam of cyclic groups.

For G = Z/n1 *_{Z/m} Z/n2 the Mayer-Vietoris sequence

    ... -> H^{k-1}(C) -> H^k(G) -> H^k(A) + H^k(B) -> H^k(C) -> ...

gives 0 -> coker d_{k-1} -> H^k(G) -> ker d_k -> 0 with
d_k(a, b) = res(a) - res(b).  Kernels and cokernels of maps between finitely
generated abelian groups are computed with the Smith normal form.

H^2(Z/n, Z) = Hom(Z/n, Q/Z) is identified with Z/n so that restriction to
the subgroup Z/m is reduction mod m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod


class CohomologyError(ValueError):
    pass


# --------------------------------------------------------------------------
# Integer matrices
# --------------------------------------------------------------------------


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return [[0] * cols for _ in range(rows)]
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def determinant(M):
    """Bareiss fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    U: list
    D: list
    V: list
    Uinv: list
    Vinv: list

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M, rows=None, cols=None):
    """U, D, V with U M V = D diagonal, d_1 | d_2 | ..., U and V unimodular.

    ``rows``/``cols`` give the shape for matrices with no rows or columns.
    """
    m = len(M) if rows is None else rows
    n = (len(M[0]) if M else 0) if cols is None else cols
    A = [list(map(int, r)) for r in M] if m and n else [[0] * n for _ in range(m)]
    U, Uinv, V, Vinv = identity(m), identity(m), identity(n), identity(n)

    def swap_rows(i, j):
        for X in (A, U):
            X[i], X[j] = X[j], X[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for X in (A, V):
            for r in X:
                r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        for X in (A, U):
            X[dst] = [a + q * b for a, b in zip(X[dst], X[src])]
        for r in Uinv:
            r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for X in (A, V):
            for r in X:
                r[dst] += q * r[src]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def neg_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    for k in range(min(m, n)):
        while True:
            piv = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != k:
                swap_rows(k, piv[0])
            if piv[1] != k:
                swap_cols(k, piv[1])
            p = A[k][k]
            clean = True
            for i in range(k + 1, m):
                add_row(i, k, -(A[i][k] // p))
                clean = clean and A[i][k] == 0
            for j in range(k + 1, n):
                add_col(j, k, -(A[k][j] // p))
                clean = clean and A[k][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(k, bad, 1)
        if k < m and k < n and A[k][k] < 0:
            neg_row(k)

    sf = SmithForm(U, A, V, Uinv, Vinv)
    _verify(M, sf, m, n)
    return sf


def _verify(M, sf, m, n):
    Mfull = [list(r) for r in M] if m and n else [[0] * n for _ in range(m)]
    if matmul(matmul(sf.U, Mfull), sf.V) != sf.D and m and n:
        raise CohomologyError("Smith form check U M V = D failed")
    for X, Xi in ((sf.U, sf.Uinv), (sf.V, sf.Vinv)):
        if abs(determinant(X)) != 1 or matmul(X, Xi) != identity(len(X)):
            raise CohomologyError("transform is not unimodular")
    d = sf.diagonal
    for i in range(len(d)):
        for j in range(len(sf.D[0]) if sf.D else 0):
            if i != j and sf.D[i][j] != 0:
                raise CohomologyError("Smith form is not diagonal")
    nz = [x for x in d if x]
    if any(x < 0 for x in d) or any(b % a for a, b in zip(nz, nz[1:])) or d[len(nz):] != [0] * (len(d) - len(nz)):
        raise CohomologyError("divisibility chain violated")


# --------------------------------------------------------------------------
# Finitely generated abelian groups
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FgAbelianGroup:
    rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        fs = self.invariant_factors
        if self.rank < 0 or any(d < 2 for d in fs) or any(b % a for a, b in zip(fs, fs[1:])):
            raise CohomologyError(f"not in invariant-factor form: {self}")

    @classmethod
    def cyclic(cls, n):
        return cls(0, (n,)) if n >= 2 else cls(0)

    @classmethod
    def free(cls, r=1):
        return cls(r)

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.invariant_factors

    @property
    def order(self):
        return None if self.rank else prod(self.invariant_factors)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Presentation:
    """Z^ngens / (column span of relations)."""

    ngens: int
    relations: tuple  # ngens x k matrix, as tuple of row tuples

    @property
    def nrels(self):
        return len(self.relations[0]) if self.relations else 0

    def group(self):
        return group_from_relations(self.relations, self.ngens, self.nrels)


def group_from_relations(R, ngens, nrels):
    if ngens == 0:
        return FgAbelianGroup(0)
    sf = smith_normal_form([list(r) for r in R], ngens, nrels)
    d = [x for x in sf.diagonal if x]
    return FgAbelianGroup(ngens - len(d), tuple(x for x in d if x > 1))


def cyclic_presentation(n):
    """Z for n = 0, else Z/n."""
    if n == 0:
        return Presentation(1, ((),))
    return Presentation(1, ((n,),))


def zero_presentation():
    return Presentation(0, ())


def direct_sum(*ps):
    ngens = sum(p.ngens for p in ps)
    nrels = sum(p.nrels for p in ps)
    rows = []
    ro = 0
    for p in ps:
        for r in p.relations:
            row = [0] * nrels
            row[ro: ro + p.nrels] = r
            rows.append(tuple(row))
        ro += p.nrels
    return Presentation(ngens, tuple(rows))


def _hstack(A, B, rows):
    return [list(A[i] if A else []) + list(B[i] if B else []) for i in range(rows)]


def cokernel(phi, source, target):
    """target / (phi(source) + relations)."""
    M = _hstack(phi, target.relations, target.ngens)
    return group_from_relations(M, target.ngens, source.ngens + target.nrels)


def kernel(phi, source, target):
    """{x in source : phi(x) = 0 in target}."""
    nA, nB = source.ngens, target.ngens
    if nA == 0:
        return FgAbelianGroup(0)
    cols = nA + target.nrels
    if nB == 0:
        gens = identity(nA)
    else:
        M = _hstack(phi, target.relations, nB)
        sf = smith_normal_form(M, nB, cols)
        r = sf.rank
        gens = [[sf.V[i][j] for j in range(r, cols)] for i in range(nA)]
    ncols = len(gens[0]) if gens else 0
    if ncols == 0:
        return FgAbelianGroup(0)
    # basis of the preimage lattice L spanned by the columns of gens
    sg = smith_normal_form(gens, nA, ncols)
    d = [x for x in sg.diagonal if x]
    r = len(d)
    if r == 0:
        return FgAbelianGroup(0)
    # coordinates of the source relations in that basis
    UR = matmul(sg.U, [list(x) for x in source.relations]) if source.nrels else [[] for _ in range(nA)]
    C = []
    for i in range(r):
        row = []
        for x in UR[i]:
            if x % d[i]:
                raise CohomologyError("source relations not contained in the kernel lattice")
            row.append(x // d[i])
        C.append(row)
    for i in range(r, nA):
        if any(UR[i]):
            raise CohomologyError("source relations not contained in the kernel lattice")
    return group_from_relations(C, r, source.nrels)


# --------------------------------------------------------------------------
# Cyclic groups and the Mayer-Vietoris sequence
# --------------------------------------------------------------------------


def cyclic_cohomology(n, k):
    """H^k(Z/n, Z): Z for k = 0, Z/n for even k > 0, zero for odd k."""
    if n < 1 or k < 0:
        raise CohomologyError("need n >= 1 and k >= 0")
    if k == 0:
        return FgAbelianGroup(1)
    if k % 2:
        return FgAbelianGroup(0)
    return FgAbelianGroup.cyclic(n)


def _cyclic_cohomology_presentation(n, k):
    if k == 0:
        return cyclic_presentation(0)
    if k % 2 or n == 1:
        return zero_presentation()
    return cyclic_presentation(n)


def restriction_matrix(n, m, k):
    """Restriction H^k(Z/n) -> H^k(Z/m) on the standard generators."""
    if m < 1 or n % m:
        raise CohomologyError(f"{m} does not divide {n}")
    if k == 0:
        return [[1]]
    src = _cyclic_cohomology_presentation(n, k).ngens
    dst = _cyclic_cohomology_presentation(m, k).ngens
    if src == 0 or dst == 0:
        return [[0] * src for _ in range(dst)]
    return [[1 if m > 1 else 0]]


@dataclass(frozen=True)
class MVDegree:
    k: int
    source: FgAbelianGroup  # H^k(A) + H^k(B)
    target: FgAbelianGroup  # H^k(C)
    kernel: FgAbelianGroup
    cokernel: FgAbelianGroup
    incoming: FgAbelianGroup  # coker d_{k-1}
    group: FgAbelianGroup  # H^k(G)

    def orders_consistent(self):
        """|ker| |target| = |coker| |source| whenever all four are finite."""
        orders = [g.order for g in (self.kernel, self.target, self.cokernel, self.source)]
        if None in orders:
            return True
        return orders[0] * orders[1] == orders[2] * orders[3]


def mayer_vietoris(n1, n2, m, kmax):
    if m < 1 or n1 % m or n2 % m:
        raise CohomologyError(f"amalgamated subgroup Z/{m} must divide Z/{n1} and Z/{n2}")
    out = []
    prev_coker = FgAbelianGroup(0)
    for k in range(kmax + 1):
        HA = _cyclic_cohomology_presentation(n1, k)
        HB = _cyclic_cohomology_presentation(n2, k)
        HC = _cyclic_cohomology_presentation(m, k)
        src = direct_sum(HA, HB)
        ra = restriction_matrix(n1, m, k)
        rb = restriction_matrix(n2, m, k)
        phi = [list(a) + [-x for x in b] for a, b in zip(ra, rb)] if HC.ngens else []
        ker = kernel(phi, src, HC)
        cok = cokernel(phi, src, HC)
        if prev_coker.is_trivial:
            grp = ker
        elif ker.is_trivial:
            grp = prev_coker
        else:
            raise CohomologyError(f"extension problem in degree {k}: {prev_coker} -> ? -> {ker}")
        out.append(MVDegree(k, src.group(), HC.group(), ker, cok, prev_coker, grp))
        prev_coker = cok
    for seg in out:
        if not seg.orders_consistent():
            raise CohomologyError(f"order bookkeeping failed in degree {seg.k}")
    return out


def amalgam_cohomology(n1, n2, m, kmax):
    """[H^0(G), ..., H^kmax(G)] for G = Z/n1 *_{Z/m} Z/n2."""
    return [seg.group for seg in mayer_vietoris(n1, n2, m, kmax)]


def abelianization(n1, n2, m):
    """G^ab for G = Z/n1 *_{Z/m} Z/n2 with the standard embeddings."""
    # (Z/n1 + Z/n2) / <(n1/m, -n2/m)>
    return group_from_relations([[n1, 0, n1 // m], [0, n2, -(n2 // m)]], 2, 3)
