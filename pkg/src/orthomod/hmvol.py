"""Leading-term ingredients of the obstruction machinery.

Exact leading coefficients of modular-form dimension formulas obtained from
proportionality of volumes, together with the branch-term ingredients
E_w, b_{(-2)}, b_{(-2d)}, h_d, the common factor C_{m,d}^{k1,w}, and the
exact L-value ratios P_K, P_N used in exact mode.  Everything here is an
exact rational or a quadratic surd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import NonEvenWeight, PiResidueError, UnsupportedIndex, WOutOfRange
from .exactnum import (
    CharacterSpec,
    QuadSurd,
    bernoulli,
    format_rational,
    gen_bernoulli,
    kronecker,
    prime_divisors,
    rho,
    squarefree_part,
)

MODES = ("bound", "exact")
BRACKETS = ("sharp", "upper")
DELTA1_READINGS = ("d1", "dmod4")


def _delta1(d: int, reading: str) -> int:
    if reading == "d1":
        return 1 if d == 1 else 0
    if reading == "dmod4":
        return 1 if d % 4 == 1 else 0
    raise ValueError(f"unknown delta1 reading {reading!r}")


def double_factorial_even(n: int) -> int:
    """n!! for even n >= 0, i.e. 2 * 4 * ... * n."""
    if n % 2:
        raise ValueError("double_factorial_even expects even n")
    half = n // 2
    return (1 << half) * factorial(half)


@lru_cache(maxsize=None)
def bernoulli_product_abs(m: int) -> Fraction:
    """|B_2 B_4 ... B_{8m+2}| as an exact fraction."""
    out = Fraction(1)
    for i in range(1, 4 * m + 2):
        out *= abs(bernoulli(2 * i))
    return out


def e_w(w: int, n: int) -> Fraction:
    """The growth factor (1 + 1/w)^n, exactly."""
    if w < 1 or n < 1:
        raise ValueError("e_w expects w >= 1 and n >= 1")
    return Fraction(w + 1, w) ** n


def obstruction_weight_factor(w: int, n: int, bracket: str = "sharp") -> Fraction:
    """Coefficient of the summed obstruction series in the variable (k1 w)^n.

    "sharp" is the exact leading bracket (1 + 1/w)^n - 1 obtained by summing
    the dimension series term by term; "upper" drops the -1 and is the
    convenient upper bound.
    """
    if bracket not in BRACKETS:
        raise ValueError(f"unknown bracket {bracket!r}")
    val = e_w(w, n)
    return val - 1 if bracket == "sharp" else val


@dataclass(frozen=True)
class DimensionEstimate:
    """Leading term of a dimension formula: dim ~ coeff * k^degree."""

    coeff: QuadSurd
    degree: int

    def to_json_dict(self) -> dict:
        return {"coeff": self.coeff.to_json_dict(), "degree": self.degree}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "DimensionEstimate":
        return cls(QuadSurd.from_json_dict(obj["coeff"]), int(obj["degree"]))


def dim_mk_KII_leading(m: int) -> DimensionEstimate:
    """Leading coefficient of dim M_k for the stable group of the
    complement lattice K_II (rank 8m+3, signature (2, 8m+1)); valid for
    even weights k."""
    if m < 1:
        raise ValueError("dim_mk_KII_leading expects m >= 1")
    coeff = (
        Fraction(2) ** (1 - 4 * m)
        / factorial(8 * m + 1)
        * bernoulli_product_abs(m)
        / double_factorial_even(8 * m + 2)
    )
    return DimensionEstimate(QuadSurd.from_rational(coeff), 8 * m + 1)


def obstruction_sum_unimodular_leading(m: int) -> DimensionEstimate:
    """Leading coefficient, in k1, of the summed branch obstruction space for
    the unimodular series with cusp weight 12 + 4m (so w = 4m - 10)."""
    if m < 3:
        raise WOutOfRange("unimodular obstruction sum needs m >= 3 (w = 4m-10 >= 2)")
    w = 4 * m - 10
    coeff = (
        Fraction(2) ** (4 * m + 2)
        / factorial(8 * m + 2)
        * bernoulli_product_abs(m)
        / double_factorial_even(8 * m + 2)
        * (e_w(w, 8 * m + 2) - 1)
        * Fraction(w) ** (8 * m + 2)
    )
    return DimensionEstimate(QuadSurd.from_rational(coeff), 8 * m + 2)


def h_d(d: int) -> int:
    """+1 when d = 0 mod 8, -1 when d = 2 mod 4, else 0."""
    if d < 1:
        raise ValueError("h_d expects d >= 1")
    return (1 if d % 8 == 0 else 0) - (1 if d % 4 == 2 else 0)


def b_minus2(m: int) -> Fraction:
    """Bound-mode coefficient of the (-2)-branch terms: 2^{8m+3} - 1."""
    if m < 1:
        raise ValueError("b_minus2 expects m >= 1")
    return Fraction(2 ** (8 * m + 3) - 1)


def b_minus2d(m: int, d: int) -> QuadSurd:
    """Coefficient of the (-2d)-branch terms, of the form rational / sqrt(d).

    For d > 2 the orbit counts are halved (one divisor per +-pair); for
    d = 2 each orbit is its own divisor, so the d > 2 expression is doubled.
    """
    if m < 1:
        raise ValueError("b_minus2d expects m >= 1")
    if d < 2:
        raise UnsupportedIndex("the (-2d) branch terms require d >= 2")
    g = (
        Fraction(2) ** h_d(d) * (1 + Fraction(1, 2 ** (4 * m + 2)) - Fraction(1, 2 ** (8 * m + 3)))
        + Fraction(1, 2 ** (8 * m + 3))
    )
    flat = Fraction(2 ** rho(d), d) * Fraction(4, d) ** (4 * m) * 4 * g
    if d == 2:
        flat *= 2
    # remaining factor (4/d)^{1/2} = 2/sqrt(d)
    return QuadSurd.from_rational(2 * flat) / QuadSurd.sqrt_int(d)


def c_mdkw(m: int, d: int, k1: int, w: int, delta1_reading: str = "d1") -> QuadSurd:
    """The common leading factor C_{m,d}^{k1,w} shared by the dimension and
    obstruction leading terms; carries d^{4m + 3/2} as an exact surd.

    ``delta1_reading`` selects how delta_{1,d} is read ("d1": the Kronecker
    delta at d = 1; "dmod4": indicator of d = 1 mod 4).
    """
    if min(m, d, k1, w) < 1:
        raise ValueError("c_mdkw expects positive arguments")
    n = 4 * m + 2
    euler = Fraction(1)
    for p in prime_divisors(d):
        euler *= 1 - Fraction(1, p**n)
    flat = (
        Fraction(2) ** (4 * m + 1 + _delta1(d, delta1_reading))
        / factorial(8 * m + 3)
        * bernoulli_product_abs(m)
        / double_factorial_even(8 * m + 2)
        * abs(bernoulli(n)) / n
        * Fraction(d) ** (4 * m + 1)
        * euler
        * Fraction(k1 * w) ** (8 * m + 3)
    )
    return QuadSurd.from_rational(flat) * QuadSurd.sqrt_int(d)


# --------------------------------------------------------------------------
# exact L-value ratios

def fundamental_discriminant(n: int) -> int:
    """Fundamental discriminant of the quadratic field Q(sqrt(n)), n >= 1;
    returns 1 when n is a perfect square."""
    if n < 1:
        raise ValueError("fundamental_discriminant expects n >= 1")
    s = squarefree_part(n)
    if s == 1:
        return 1
    return s if s % 4 == 1 else 4 * s


def _l_value_over_pi_n(n: int, disc: int) -> tuple[QuadSurd, int]:
    """L(n, chi_disc) written as coeff * pi^n for an even primitive real
    character of fundamental discriminant disc > 0 (disc = 1 means zeta).

    Returns (coeff, pi_power); the caller asserts that pi powers cancel.
    """
    if n % 2:
        raise NonEvenWeight("exact L values implemented for even n only")
    if disc == 1:
        coeff = Fraction(2) ** n * abs(bernoulli(n)) / (2 * factorial(n))
        return QuadSurd.from_rational(coeff), n
    chi = CharacterSpec.quadratic(disc)
    bn_chi = gen_bernoulli(n, chi)
    sign = -1 if (1 + n // 2) % 2 else 1
    flat = sign * Fraction(2) ** n / Fraction(disc) ** n * bn_chi / (2 * factorial(n))
    return QuadSurd.from_rational(flat) * QuadSurd.sqrt_int(disc), n


def p_factors_exact(n: int, d: int, which: str) -> QuadSurd:
    """Exact value of the L-ratio factor P_K(n) or P_N(n) at index d.

    The quadratic L-value is reduced to the primitive character of the
    associated fundamental discriminant with explicit Euler-factor
    corrections; the principal-character L-value is zeta(n) times its Euler
    factors.  All pi^n factors cancel symbolically, and this cancellation is
    asserted.
    """
    if n % 2 or n < 2:
        raise NonEvenWeight(f"P factors need positive even n, got {n}")
    if d < 1:
        raise ValueError("P factors expect d >= 1")
    if which not in ("P_K", "P_N"):
        raise ValueError(f"unknown P factor {which!r}")
    top = 4 * d if which == "P_K" else d
    if top % 4 not in (0, 1):
        raise ValueError(f"({top}/.) is not a Dirichlet character; P_N needs d = 0 or 1 mod 4")
    disc = fundamental_discriminant(top)
    l_chi, pi_chi = _l_value_over_pi_n(n, disc)
    l_zeta, pi_zeta = _l_value_over_pi_n(n, 1)
    if pi_chi != pi_zeta:
        raise PiResidueError(f"pi powers {pi_chi} and {pi_zeta} do not cancel")
    ratio = l_chi / l_zeta
    # imprimitivity corrections for the quadratic character ...
    for p in prime_divisors(top):
        if disc % p != 0:
            ratio = ratio * (1 - Fraction(kronecker(disc, p), p**n))
    # ... against the principal character modulo `top`
    for p in prime_divisors(top):
        ratio = ratio / (1 - Fraction(1, p**n))
    tail = Fraction(1)
    for p in prime_divisors(d):
        tail *= (1 - Fraction(1, p**n)) / (1 + Fraction(1, p**n))
    out = ratio * tail
    if which == "P_K" and d % 2 == 0:
        out = out * (1 - Fraction(1, 2**n))
    return out


def b_minus2_exact(m: int, d: int) -> QuadSurd:
    """Exact-mode coefficient of the (-2)-branch terms,
    2^{8m+3 - delta_{4, d mod 8}} P_K(4m+2) plus P_N(4m+2) when the second
    (-2)-orbit exists (d = 1 mod 4)."""
    if m < 1 or d < 1:
        raise ValueError("b_minus2_exact expects m >= 1, d >= 1")
    n = 4 * m + 2
    shift = 8 * m + 3 - (1 if d % 8 == 4 else 0)
    out = QuadSurd.from_rational(Fraction(2) ** shift) * p_factors_exact(n, d, "P_K")
    if d % 4 == 1:
        out = out + p_factors_exact(n, d, "P_N")
    return out


# --------------------------------------------------------------------------
# ingredient inspection record

@dataclass(frozen=True)
class ObstructionIngredients:
    """Everything the branch-obstruction comparison at (m, d, w, k1) uses."""

    m: int
    d: int
    w: int
    k1: int
    mode: str
    bracket: str
    e_w: Fraction
    h_d: int
    b_minus2: QuadSurd
    b_minus2d: QuadSurd | None
    c_leading: QuadSurd
    beta: QuadSurd
    predicate: bool
    p_k: QuadSurd | None = None
    p_n: QuadSurd | None = None
    boundary_d1: bool = False

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "d": self.d,
            "w": self.w,
            "k1": self.k1,
            "mode": self.mode,
            "bracket": self.bracket,
            "e_w": format_rational(self.e_w),
            "h_d": self.h_d,
            "b_minus2": self.b_minus2.to_json_dict(),
            "b_minus2d": self.b_minus2d.to_json_dict() if self.b_minus2d else None,
            "c_leading": self.c_leading.to_json_dict(),
            "beta": self.beta.to_json_dict(),
            "predicate": self.predicate,
            "p_k": self.p_k.to_json_dict() if self.p_k else None,
            "p_n": self.p_n.to_json_dict() if self.p_n else None,
            "boundary_d1": self.boundary_d1,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ObstructionIngredients":
        surd = QuadSurd.from_json_dict
        return cls(
            m=int(obj["m"]), d=int(obj["d"]), w=int(obj["w"]), k1=int(obj["k1"]),
            mode=obj["mode"], bracket=obj["bracket"],
            e_w=Fraction(obj["e_w"]), h_d=int(obj["h_d"]),
            b_minus2=surd(obj["b_minus2"]),
            b_minus2d=surd(obj["b_minus2d"]) if obj.get("b_minus2d") else None,
            c_leading=surd(obj["c_leading"]),
            beta=surd(obj["beta"]), predicate=bool(obj["predicate"]),
            p_k=surd(obj["p_k"]) if obj.get("p_k") else None,
            p_n=surd(obj["p_n"]) if obj.get("p_n") else None,
            boundary_d1=bool(obj.get("boundary_d1", False)),
        )


def ingredients(
    m: int,
    d: int,
    w: int,
    k1: int = 1,
    mode: str = "bound",
    bracket: str = "sharp",
    delta1_reading: str = "d1",
) -> ObstructionIngredients:
    """Assemble the full ingredient record for one (m, d, w, k1) point."""
    from .verdict import beta as beta_fn, beta_predicate  # late import; no cycle at module load

    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n = 8 * m + 3
    p_k = p_n = None
    if mode == "exact" and d > 1:
        p_k = p_factors_exact(4 * m + 2, d, "P_K")
        if d % 4 == 1:
            p_n = p_factors_exact(4 * m + 2, d, "P_N")
    b2 = (
        QuadSurd.from_rational(b_minus2(m))
        if mode == "bound" or d == 1
        else b_minus2_exact(m, d)
    )
    return ObstructionIngredients(
        m=m,
        d=d,
        w=w,
        k1=k1,
        mode=mode,
        bracket=bracket,
        e_w=e_w(w, n),
        h_d=h_d(d),
        b_minus2=b2,
        b_minus2d=b_minus2d(m, d) if d >= 2 else None,
        c_leading=c_mdkw(m, d, k1, w, delta1_reading),
        beta=beta_fn(m, d, w, mode=mode, bracket=bracket),
        predicate=beta_predicate(m, d, w, mode=mode, bracket=bracket),
        p_k=p_k,
        p_n=p_n,
        boundary_d1=d == 1,
    )
