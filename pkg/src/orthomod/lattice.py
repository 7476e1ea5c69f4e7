"""Integer lattices presented by Gram matrices.

Builds the two lattice series used by the verdict engine (the even
unimodular lattices "2U + m E8(-1)" of signature (2, 8m+2) and their
K3-type extensions by a vector of square -2d), classifies stably
reflective vectors, and counts the branch-divisor components cut out by
them.  All linear algebra is exact (integers and fractions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .errors import (
    IndexOutOfRange,
    NotPrimitive,
    SingularGram,
    WrongSignature,
    ZeroVector,
)
from .exactnum import rho

Gram = tuple[tuple[int, ...], ...]

GRAM_U: Gram = ((0, 1), (1, 0))
GRAM_U2: Gram = ((0, 2), (2, 0))

# Negated E8 Cartan matrix, Bourbaki node numbering (node 2 hangs off node 4).
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def _e8_neg() -> Gram:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in _E8_EDGES:
        g[i - 1][j - 1] = 1
        g[j - 1][i - 1] = 1
    return tuple(tuple(row) for row in g)


GRAM_E8_NEG: Gram = _e8_neg()


def scalar_gram(k: int) -> Gram:
    return ((k,),)


def direct_sum(*blocks: Gram) -> Gram:
    n = sum(len(b) for b in blocks)
    g = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        r = len(b)
        for i in range(r):
            for j in range(r):
                g[off + i][off + j] = b[i][j]
        off += r
    return tuple(tuple(row) for row in g)


@dataclass(frozen=True)
class Lattice:
    """An integer lattice given by the Gram matrix of a basis."""

    gram: Gram
    label: str = ""
    series: str | None = None  # "II" or "L2d" when built by a series constructor
    m: int | None = None
    d: int | None = None

    def __post_init__(self) -> None:
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))


# --------------------------------------------------------------------------
# series constructors and the block-expression mini-language

_TERM_RE = re.compile(r"^(\d*)(U\(2\)|U|E8\(-1\)|<-?\d+>)$")


def build_lattice(spec: str, label: str | None = None) -> Lattice:
    """Assemble a lattice from a block expression like ``2U+1E8(-1)+<-6>``.

    Blocks: ``U`` (hyperbolic plane), ``U(2)``, ``E8(-1)`` and ``<k>`` for a
    rank-1 lattice generated by a vector of square k; an optional integer
    prefix repeats a block.
    """
    blocks: list[Gram] = []
    for raw in spec.replace(" ", "").split("+"):
        mobj = _TERM_RE.match(raw)
        if not mobj:
            raise ValueError(f"cannot parse lattice block {raw!r}")
        count = int(mobj.group(1)) if mobj.group(1) else 1
        name = mobj.group(2)
        if name == "U":
            block = GRAM_U
        elif name == "U(2)":
            block = GRAM_U2
        elif name == "E8(-1)":
            block = GRAM_E8_NEG
        else:
            block = scalar_gram(int(name[1:-1]))
        blocks.extend([block] * count)
    return Lattice(direct_sum(*blocks), label=label if label is not None else spec)


def lattice_II(m: int) -> Lattice:
    """Even unimodular lattice of signature (2, 8m+2)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return Lattice(
        direct_sum(GRAM_U, GRAM_U, *([GRAM_E8_NEG] * m)),
        label=f"II(2,{8*m+2})", series="II", m=m,
    )


def lattice_L2d(m: int, d: int) -> Lattice:
    """K3-type lattice 2U + m E8(-1) + <-2d>, signature (2, 8m+3)."""
    if m < 0 or d < 1:
        raise ValueError("need m >= 0 and d >= 1")
    return Lattice(
        direct_sum(GRAM_U, GRAM_U, *([GRAM_E8_NEG] * m), scalar_gram(-2 * d)),
        label=f"L_{2*d}^({m})", series="L2d", m=m, d=d,
    )


def lattice_KII(m: int) -> Lattice:
    """Complement of a (-2)-vector in II(2, 8m+2)."""
    return Lattice(
        direct_sum(GRAM_U, *([GRAM_E8_NEG] * m), scalar_gram(2)),
        label=f"K_II^({m})", m=m,
    )


def lattice_K2d(m: int, d: int) -> Lattice:
    """Complement of a (-2)-vector with div 1; |det| = 4d."""
    return Lattice(
        direct_sum(GRAM_U, *([GRAM_E8_NEG] * m), scalar_gram(2), scalar_gram(-2 * d)),
        label=f"K_{2*d}^({m})", m=m, d=d,
    )


def lattice_N2d(m: int, d: int) -> Lattice:
    """Complement of a (-2)-vector with div 2 (exists for d = 1 mod 4); |det| = d.

    The rank-2 tail is the even symmetric form [[2, 1], [1, (1-d)/2]] of
    determinant -d; evenness requires d = 1 mod 4.
    """
    if d % 4 != 1:
        raise ValueError("N-type complement requires d = 1 mod 4")
    tail = ((2, 1), (1, (1 - d) // 2))
    return Lattice(
        direct_sum(GRAM_U, *([GRAM_E8_NEG] * m), tail),
        label=f"N_{2*d}^({m})", m=m, d=d,
    )


def lattice_K2(m: int) -> Lattice:
    """One of the two complements of a (-2d)-vector with div d; |det| = 4."""
    return Lattice(
        direct_sum(GRAM_U, *([GRAM_E8_NEG] * m), scalar_gram(2), scalar_gram(-2)),
        label=f"K_2^({m})", m=m,
    )


def lattice_T(m: int) -> Lattice:
    """The other div-d complement, U + U(2) + m E8(-1); |det| = 4."""
    return Lattice(
        direct_sum(GRAM_U, GRAM_U2, *([GRAM_E8_NEG] * m)),
        label=f"T(2,{8*m+2})", m=m,
    )


# --------------------------------------------------------------------------
# exact linear algebra

def determinant(L: Lattice | Gram) -> int:
    """Exact determinant of the Gram matrix (fraction-free Bareiss)."""
    g = L.gram if isinstance(L, Lattice) else L
    n = len(g)
    m = [list(row) for row in g]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def signature(L: Lattice | Gram) -> tuple[int, int]:
    """Signature (n_+, n_-) by exact rational congruence diagonalization."""
    g = L.gram if isinstance(L, Lattice) else L
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    plus = minus = 0
    for i in range(n):
        if a[i][i] == 0:
            pivot = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if pivot is not None:
                a[i], a[pivot] = a[pivot], a[i]
                for row in a:
                    row[i], row[pivot] = row[pivot], row[i]
            else:
                off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    raise SingularGram("Gram matrix is singular")
                # fold row/column `off` into i to create a nonzero diagonal
                for j in range(n):
                    a[i][j] += a[off][j]
                for row in a:
                    row[i] += row[off]
        piv = a[i][i]
        if piv > 0:
            plus += 1
        else:
            minus += 1
        for j in range(i + 1, n):
            f = a[j][i] / piv
            if f == 0:
                continue
            for k in range(n):
                a[j][k] -= f * a[i][k]
            for row in a:
                row[j] -= f * row[i]
    return plus, minus


def smith_invariant_factors(g: Gram | list[list[int]]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (all of them,
    including 1s), in ascending divisibility order."""
    diag, _ = _smith_with_colops(g)
    # enforce the divisibility chain; gcd/lcm folding keeps the product fixed
    # (the reduction below already yields a chain, so this is a safety net)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            x, y = diag[i], diag[j]
            if x and y and y % x != 0:
                g_ = gcd(x, y)
                diag[i], diag[j] = g_, x * y // g_
            elif x == 0 and y != 0:
                diag[i], diag[j] = y, 0
    diag.sort(key=lambda z: (z == 0, z))
    return tuple(diag)


def _smith_with_colops(g) -> tuple[list[int], list[list[int]]]:
    """Diagonalization U*G*V = diag by elementary operations, tracking only V.

    The returned diagonal is not forced into a divisibility chain here; the
    (diagonal, V) pair stays exactly consistent, which the discriminant-form
    enumeration relies on."""
    a = [list(map(int, row)) for row in g]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_sub(j, k, q):  # col_j -= q * col_k
        for i in range(nrows):
            a[i][j] -= q * a[i][k]
        for i in range(ncols):
            v[i][j] -= q * v[i][k]

    def col_swap(j, k):
        for i in range(nrows):
            a[i][j], a[i][k] = a[i][k], a[i][j]
        for i in range(ncols):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    def row_sub(i, k, q):  # row_i -= q * row_k
        for j in range(ncols):
            a[i][j] -= q * a[k][j]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]

    t = 0
    while t < min(nrows, ncols):
        # pick the smallest nonzero entry of the trailing block as pivot
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        dirty = False
        for i in range(t + 1, nrows):
            q = a[i][t] // a[t][t]
            if q:
                row_sub(i, t, q)
            if a[i][t]:
                dirty = True
        for j in range(t + 1, ncols):
            q = a[t][j] // a[t][t]
            if q:
                col_sub(j, t, q)
            if a[t][j]:
                dirty = True
        if dirty:
            continue  # remainders became new, smaller pivot candidates
        # pivot must divide the rest of the block; if not, fold a bad row in
        bad = next(
            (
                (i, j)
                for i in range(t + 1, nrows)
                for j in range(t + 1, ncols)
                if a[i][j] % a[t][t] != 0
            ),
            None,
        )
        if bad is not None:
            row_sub(t, bad[0], -1)  # row_t += row_bad
            continue
        t += 1

    diag = [abs(a[i][i]) for i in range(min(nrows, ncols))]
    if ncols <= 40:
        # consistency guard: columns of G*V must be divisible by the diagonal
        for j in range(min(nrows, ncols)):
            if diag[j] == 0:
                continue
            for i in range(nrows):
                col = sum(g[i][k] * v[k][j] for k in range(ncols))
                assert col % diag[j] == 0, "Smith transform out of sync"
    return diag, v


@dataclass(frozen=True)
class DiscriminantInfo:
    """Invariant factors (1s omitted), exponent and order of L^vee / L."""

    invariant_factors: tuple[int, ...]
    exponent_D: int
    abs_det: int


def discriminant_info(L: Lattice) -> DiscriminantInfo:
    diag = smith_invariant_factors(L.gram)
    if any(x == 0 for x in diag):
        raise SingularGram("discriminant group requires a nonsingular Gram matrix")
    nontrivial = tuple(x for x in diag if x != 1)
    return DiscriminantInfo(
        invariant_factors=nontrivial,
        exponent_D=nontrivial[-1] if nontrivial else 1,
        abs_det=prod(diag),
    )


# --------------------------------------------------------------------------
# vectors: pairings, divisor, norm

def pairing_vector(L: Lattice, r) -> tuple[int, ...]:
    g = L.gram
    return tuple(sum(g[i][j] * r[j] for j in range(L.rank)) for i in range(L.rank))


def vector_norm(L: Lattice, r) -> int:
    gr = pairing_vector(L, r)
    return sum(ri * gi for ri, gi in zip(r, gr))


def is_primitive(r) -> bool:
    g = 0
    for x in r:
        g = gcd(g, x)
    return g == 1


def div(L: Lattice, r) -> int:
    """Positive generator of the pairing ideal (r, L)."""
    if all(x == 0 for x in r):
        raise ZeroVector("div of the zero vector is undefined")
    g = 0
    for x in pairing_vector(L, r):
        g = gcd(g, x)
    if g == 0:
        raise SingularGram("vector pairs to zero with the whole lattice")
    return g


# --------------------------------------------------------------------------
# stably reflective vectors

@dataclass(frozen=True)
class ReflectiveClass:
    """Arithmetic type of a stably reflective vector.

    ``sign_case`` records whether the reflection itself ("plus_sigma") or its
    negative ("minus_sigma") is stable.  ``exceptional`` marks the excluded
    triple D = 4, r^2 = -4, div = 2, for which the branch-component
    identification is not asserted.
    """

    norm: int
    divisor: int
    sign_case: str
    complement_label: str | None = None
    exceptional: bool = False


def _complement_label(L: Lattice, norm: int, divisor: int) -> str | None:
    if L.series == "II":
        return "K_II" if norm == -2 else None
    if L.series != "L2d" or L.d is None:
        return None
    d = L.d
    if norm == -2 and divisor == 1:
        return "K_2d"
    if norm == -2 and divisor == 2:
        return "N_2d"
    if norm == -2 * d and divisor == 2 * d:
        return "II_unimodular"
    if norm == -2 * d and divisor == d:
        return "K_2_or_T"
    return None


def classify_reflective(L: Lattice, r, verify: bool = False) -> ReflectiveClass | None:
    """Classify r per the arithmetic criteria for +-sigma_r stability.

    Returns None when r is not stably reflective.  With ``verify=True`` the
    decision is cross-checked by building the reflection matrix and testing
    integrality and triviality on the discriminant group.
    """
    if not L.is_even():
        raise WrongSignature("stable reflectivity is defined for even lattices")
    sig = signature(L)
    if sig[0] != 2:
        raise WrongSignature(f"expected signature (2, n), got {sig}")
    if not is_primitive(r):
        raise NotPrimitive(f"vector {tuple(r)} is not primitive")
    norm = vector_norm(L, r)
    if norm >= 0:
        return None
    D = discriminant_info(L).exponent_D
    dv = div(L, r)
    cls: ReflectiveClass | None = None
    if norm == -2:
        cls = ReflectiveClass(norm, dv, "plus_sigma", _complement_label(L, norm, dv))
    elif norm == -2 * D and dv == D and D % 2 == 1:
        cls = ReflectiveClass(norm, dv, "minus_sigma", _complement_label(L, norm, dv))
    elif norm == -D and (dv == D or 2 * dv == D):
        exceptional = D == 4 and norm == -4 and dv == 2
        cls = ReflectiveClass(norm, dv, "minus_sigma", _complement_label(L, norm, dv),
                              exceptional=exceptional)
    if cls is not None and cls.complement_label == "K_2_or_T":
        cls = ReflectiveClass(cls.norm, cls.divisor, cls.sign_case,
                              complement_type_div_d(L, r), exceptional=cls.exceptional)
    if verify:
        oracle = stable_reflection_sign(L, r)
        expected = None if cls is None else ("plus" if cls.sign_case == "plus_sigma" else "minus")
        if oracle != expected and not (oracle == "plus" and expected == "minus"):
            # -id can be stable (tiny discriminant groups), making both signs work
            raise AssertionError(
                f"matrix oracle {oracle!r} disagrees with arithmetic class {expected!r}"
            )
    return cls


def reflection_matrix(L: Lattice, r) -> list[list[Fraction]]:
    """Matrix of sigma_r(x) = x - 2 (x, r)/(r, r) r in the lattice basis."""
    n = L.rank
    norm = vector_norm(L, r)
    if norm == 0:
        raise ZeroVector("reflection requires r^2 != 0")
    gr = pairing_vector(L, r)
    return [
        [Fraction(int(i == j)) - Fraction(2 * r[i] * gr[j], norm) for j in range(n)]
        for i in range(n)
    ]


def _fraction_matrix_inverse(g: Gram) -> list[list[Fraction]]:
    n = len(g)
    a = [[Fraction(g[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularGram("Gram matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def stable_reflection_sign(L: Lattice, r) -> str | None:
    """Matrix oracle: "plus" if sigma_r is integral and trivial on L^vee/L,
    "minus" if -sigma_r is, else None.  Orientation is not tested here."""
    s = reflection_matrix(L, r)
    n = L.rank
    ginv = _fraction_matrix_inverse(L.gram)
    for sign, tag in ((1, "plus"), (-1, "minus")):
        mat = [[sign * s[i][j] for j in range(n)] for i in range(n)]
        if any(mat[i][j].denominator != 1 for i in range(n) for j in range(n)):
            continue
        # trivial on the discriminant group iff (M - I) G^{-1} is integral
        ok = True
        for i in range(n):
            for j in range(n):
                acc = sum((mat[i][k] - (1 if i == k else 0)) * ginv[k][j] for k in range(n))
                if acc.denominator != 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tag
    return None


# --------------------------------------------------------------------------
# orthogonal complements

def orthogonal_complement_gram(L: Lattice, r) -> Gram:
    """Gram matrix of the sublattice of vectors pairing to zero with r."""
    gr = pairing_vector(L, r)
    if all(x == 0 for x in gr):
        raise ZeroVector("complement of a vector pairing to zero everywhere")
    basis = _integer_kernel_basis(gr)
    n = L.rank
    g = L.gram
    out = []
    for u in basis:
        row = []
        gu = [sum(g[i][j] * u[j] for j in range(n)) for i in range(n)]
        for w in basis:
            row.append(sum(wi * gi for wi, gi in zip(w, gu)))
        out.append(tuple(row))
    return tuple(out)


def _integer_kernel_basis(vec) -> list[tuple[int, ...]]:
    """Basis of the rank-(n-1) kernel of x -> sum vec_i x_i over the integers."""
    n = len(vec)
    # column-reduce the 1 x n matrix while tracking the transform
    v = list(vec)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    while True:
        nz = [j for j in range(n) if v[j] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda j: abs(v[j]))
        j0 = nz[0]
        for j in nz[1:]:
            q = v[j] // v[j0]
            v[j] -= q * v[j0]
            cols[j] = [a - q * b for a, b in zip(cols[j], cols[j0])]
    return [tuple(cols[j]) for j in range(n) if v[j] == 0]


def complement_invariants(L: Lattice, r) -> tuple[int, int]:
    """(|det K_r|, [L : <r> + K_r]) from |det L| |r^2| / div^2 and |r^2|/div.

    Raises IndexOutOfRange when the index is not 1 or 2, which signals a
    vector outside the stably-reflective constraints.
    """
    if not is_primitive(r):
        raise NotPrimitive(f"vector {tuple(r)} is not primitive")
    norm = vector_norm(L, r)
    if norm == 0:
        raise ZeroVector("complement invariants require r^2 != 0")
    dv = div(L, r)
    det_l = determinant(L)
    if det_l == 0:
        raise SingularGram("complement invariants require nonsingular L")
    abs_det = abs(det_l) * abs(norm) // (dv * dv)
    index = abs(norm) // dv
    if index not in (1, 2):
        raise IndexOutOfRange(f"sublattice index {index} outside {{1, 2}}")
    return abs_det, index


# --------------------------------------------------------------------------
# discriminant form parity (separates the two div-d complement types)

def discriminant_form_values(L: Lattice) -> list[Fraction]:
    """Quadratic-form values q(x) of all nonzero classes of L^vee/L, as
    fractions representing elements of Q/2Z.  Only sensible for small
    discriminant groups; guarded accordingly."""
    diag, v = _smith_with_colops(L.gram)
    if any(x == 0 for x in diag):
        raise SingularGram("discriminant form requires nonsingular Gram")
    order = prod(diag)
    if order > 64:
        raise ValueError("discriminant form enumeration capped at order 64")
    n = L.rank
    # dual generators: columns of V scaled by 1/diag (V from U G V = diag)
    gens = []
    for j in range(n):
        if diag[j] == 1:
            continue
        gens.append(([Fraction(v[i][j], diag[j]) for i in range(n)], diag[j]))
    values = []

    def norm_q(x: list[Fraction]) -> Fraction:
        total = Fraction(0)
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                total += x[i] * L.gram[i][j] * x[j]
        return total % 2

    def rec(idx: int, acc: list[Fraction], nonzero: bool) -> None:
        if idx == len(gens):
            if nonzero:
                values.append(norm_q(acc))
            return
        vec, ordr = gens[idx]
        for c in range(ordr):
            nxt = [a + c * b for a, b in zip(acc, vec)]
            rec(idx + 1, nxt, nonzero or c != 0)

    rec(0, [Fraction(0)] * n, False)
    return values


def discriminant_form_parity(L: Lattice) -> str:
    """"even" when every discriminant-form value is an integer mod 2Z."""
    vals = discriminant_form_values(L)
    return "even" if all(x.denominator == 1 for x in vals) else "odd"


def complement_type_div_d(L: Lattice, r) -> str:
    """For a (-2d)-vector with div d, decide which |det| = 4 complement occurs
    by the parity of the complement's discriminant form ("K_2" or "T")."""
    k = Lattice(orthogonal_complement_gram(L, r))
    return "K_2" if discriminant_form_parity(k) == "odd" else "T"


# --------------------------------------------------------------------------
# branch-divisor census

@dataclass(frozen=True)
class CensusEntry:
    complement: str
    orbits: int
    divisors: int


@dataclass(frozen=True)
class BranchCensus:
    """Counts of reflective orbits and of irreducible branch components, by
    complement type, for the K3-type lattice with parameters (m, d)."""

    m: int
    d: int
    entries: tuple[CensusEntry, ...]

    def entry(self, complement: str) -> CensusEntry | None:
        for e in self.entries:
            if e.complement == complement:
                return e
        return None

    def total_divisors(self) -> int:
        return sum(e.divisors for e in self.entries)


def orbit_census(m: int, d: int) -> BranchCensus:
    """Orbit and branch-divisor counts for the K3-type series at (m, d).

    (-2)-classes contribute one divisor per orbit.  (-2d)-classes exist for
    d > 1; their orbit counts are powers of two determined by rho(d) and the
    residue of d mod 8 / mod 4, and +-r give the same divisor when d > 2, so
    those orbit counts are halved.  For d = 2 each orbit is its own divisor.
    """
    if m < 0 or d < 1:
        raise ValueError("need m >= 0 and d >= 1")
    entries = [CensusEntry("K_2d", 1, 1)]
    if d % 4 == 1:
        entries.append(CensusEntry("N_2d", 1, 1))
    if d > 1:
        r = rho(d)
        orb_2d = 2 ** r
        if d % 8 == 0:
            orb_d = 2 ** (r + 1)
        elif d % 4 == 2:
            orb_d = 2 ** (r - 1)
        else:  # d odd or d = 4 mod 8
            orb_d = 2 ** r
        halve = d > 2
        entries.append(
            CensusEntry("II_unimodular", orb_2d, orb_2d // 2 if halve else orb_2d)
        )
        entries.append(
            CensusEntry("K_2_or_T", orb_d, orb_d // 2 if halve else orb_d)
        )
    return BranchCensus(m=m, d=d, entries=tuple(entries))


def count_sqrt1(n: int, modulus_kind: str) -> int:
    """Brute-force count of square roots of 1 in the stated residue system.

    "mod_d": x in [0, n) with x^2 = 1 mod n.
    "mod_2d_in_4d": x in [0, 2n) with x^2 = 1 mod 4n.
    Used as the independent oracle for :func:`orbit_census`.
    """
    if n < 1:
        raise ValueError("count_sqrt1 expects n >= 1")
    if modulus_kind == "mod_d":
        span, mod = n, n
    elif modulus_kind == "mod_2d_in_4d":
        span, mod = 2 * n, 4 * n
    else:
        raise ValueError(f"unknown modulus_kind {modulus_kind!r}")
    x = np.arange(span, dtype=np.int64)
    return int(np.count_nonzero((x * x - 1) % mod == 0))
