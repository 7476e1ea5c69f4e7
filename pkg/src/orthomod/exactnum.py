"""Exact scalar arithmetic.

Big rationals, quadratic surds a + b*sqrt(s), Bernoulli and generalized
Bernoulli numbers, Kronecker symbols and elementary arithmetic functions.
Every public value is exact; floating point appears only inside certified
(outward-rounded) interval brackets used to decide inequalities with
transcendental sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

import mpmath

from .errors import IndeterminatePrecision

Rational = Fraction


# --------------------------------------------------------------------------
# rational serialization ("numerator/denominator", always with the slash)

def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


# --------------------------------------------------------------------------
# elementary arithmetic functions

def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (adequate for the scanned sizes)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        # 5, 7, 11, 13, ... (wheel mod 6)
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def rho(d: int) -> int:
    """Number of distinct prime divisors of d; rho(1) = 0."""
    if d < 1:
        raise ValueError("rho expects d >= 1")
    return len(factorize(d))


def sigma0(d: int) -> int:
    """Number of divisors of d."""
    if d < 1:
        raise ValueError("sigma0 expects d >= 1")
    out = 1
    for e in factorize(d).values():
        out *= e + 1
    return out


def squarefree_split(d: int) -> tuple[int, int]:
    """Write d = k^2 * s with s squarefree; returns (k, s)."""
    k, s = 1, 1
    for p, e in factorize(d).items():
        k *= p ** (e // 2)
        if e % 2:
            s *= p
    return k, s


def squarefree_part(d: int) -> int:
    if d < 1:
        raise ValueError("squarefree_part expects d >= 1")
    return squarefree_split(d)[1]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), fully multiplicative in both arguments.

    Conventions: (a/0) is 1 for a = +-1 and 0 otherwise; (a/-1) is -1 for
    a < 0 and 1 otherwise; (a/2) depends on a mod 8.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        t = 1 if a % 8 in (1, 7) else -1
        while n % 2 == 0:
            n //= 2
            res *= t
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


# --------------------------------------------------------------------------
# Bernoulli numbers and polynomials (convention B_1 = -1/2)

@lru_cache(maxsize=None)
def _bernoulli_even(m: int) -> Fraction:
    # B_{2m} from the binomial recurrence, summing over even indices only;
    # the lone odd contribution is the B_1 term.
    if m == 0:
        return Fraction(1)
    n = 2 * m
    s = Fraction(-(n + 1), 2)  # C(n+1, 1) * B_1
    for j in range(m):
        s += comb(n + 1, 2 * j) * _bernoulli_even(j)
    return -s / (n + 1)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact fraction."""
    if n < 0:
        raise ValueError("bernoulli expects n >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return _bernoulli_even(n // 2)


def bernoulli_poly(n: int, x: Fraction | int) -> Fraction:
    """Value of the n-th Bernoulli polynomial at a rational point."""
    if n < 0:
        raise ValueError("bernoulli_poly expects n >= 0")
    x = Fraction(x)
    acc = Fraction(0)
    for k in range(n + 1):
        acc += comb(n, k) * bernoulli(k) * x ** (n - k)
    return acc


# --------------------------------------------------------------------------
# Dirichlet characters given by Kronecker symbols, and B_{n,chi}

@dataclass(frozen=True)
class CharacterSpec:
    """A real Dirichlet character presented as a Kronecker symbol or as the
    principal character.  ``modulus`` is the summation modulus used by
    :func:`gen_bernoulli`; for Kronecker kind, ``top`` is the symbol's upper
    entry and must be 0 or 1 mod 4 so that the symbol is a genuine character
    modulo |top|.
    """

    kind: str             # "kronecker" or "principal"
    modulus: int
    top: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("kronecker", "principal"):
            raise ValueError(f"unknown character kind {self.kind!r}")
        if self.modulus < 1:
            raise ValueError("character modulus must be >= 1")
        if self.kind == "kronecker":
            if self.top == 0 or self.top % 4 not in (0, 1):
                raise ValueError("Kronecker top entry must be nonzero and 0 or 1 mod 4")

    @classmethod
    def principal(cls, modulus: int) -> "CharacterSpec":
        return cls("principal", modulus)

    @classmethod
    def quadratic(cls, disc: int) -> "CharacterSpec":
        """Character a -> (disc/a) summed modulo |disc|."""
        return cls("kronecker", abs(disc), disc)

    @classmethod
    def kronecker_of_4d(cls, d: int) -> "CharacterSpec":
        return cls.quadratic(4 * d)

    @classmethod
    def kronecker_of_d(cls, d: int) -> "CharacterSpec":
        return cls.quadratic(d)

    def value(self, a: int) -> int:
        if gcd(a, self.modulus) != 1:
            return 0
        if self.kind == "principal":
            return 1
        return kronecker(self.top, a)


def gen_bernoulli(n: int, chi: CharacterSpec) -> Fraction:
    """Generalized Bernoulli number B_{n,chi} = f^{n-1} sum_a chi(a) B_n(a/f).

    The character is summed over its stated modulus; no primitivity
    reduction is applied here.
    """
    if n < 1:
        raise ValueError("gen_bernoulli expects n >= 1")
    f = chi.modulus
    # Clear denominators once: B_n(a/f) * f^n = sum_k C(n,k) B_k a^{n-k} f^k,
    # so the inner loop is pure integer Horner evaluation.
    coeffs = [comb(n, k) * bernoulli(k) * Fraction(f) ** k for k in range(n + 1)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    total = 0
    for a in range(1, f + 1):
        v = chi.value(a)
        if v == 0:
            continue
        acc = 0
        for c in ints:
            acc = acc * a + c
        total += v * acc
    return Fraction(total, den * f)


# --------------------------------------------------------------------------
# quadratic surds a + b*sqrt(s)

def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class QuadSurd:
    """Exact scalar a + b*sqrt(s) with rational a, b and squarefree s >= 1.

    Stored in canonical form: square factors of s are folded into b, b = 0
    forces s = 1, and s = 1 folds b into a.  Sums and products are defined
    when the radicals match (or one side is rational); the total order is
    decided exactly by at most two squarings.  Equality and hashing follow
    the value, so a rational surd equals (and hashes like) its Fraction.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    s: int = 1

    def __post_init__(self) -> None:
        a = _as_fraction(self.a)
        b = _as_fraction(self.b)
        s = self.s
        if not isinstance(s, int) or s < 1:
            raise ValueError("radicand s must be a positive integer")
        k, s0 = squarefree_split(s)
        b *= k
        s = s0
        if s == 1:
            a += b
            b = Fraction(0)
        if b == 0:
            s = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "s", s)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, x) -> "QuadSurd":
        return cls(_as_fraction(x), Fraction(0), 1)

    @classmethod
    def sqrt_int(cls, d: int) -> "QuadSurd":
        """Exact sqrt(d) for a positive integer d."""
        if d < 1:
            raise ValueError("sqrt_int expects d >= 1")
        k, s = squarefree_split(d)
        return cls(Fraction(0), Fraction(k), s)

    # -- helpers -----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            return other
        return QuadSurd(_as_fraction(other), Fraction(0), 1)

    def _common_radicand(self, other: "QuadSurd") -> int:
        if self.b == 0:
            return other.s
        if other.b == 0 or self.s == other.s:
            return self.s
        raise ValueError(f"incompatible radicals sqrt({self.s}) and sqrt({other.s})")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        s = self._common_radicand(o)
        return QuadSurd(self.a + o.a, self.b + o.b, s)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.s)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        s = self._common_radicand(o)
        a = self.a * o.a + self.b * o.b * s
        b = self.a * o.b + self.b * o.a
        return QuadSurd(a, b, s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("division by zero surd")
        s = self._common_radicand(o)
        # multiply by the conjugate; the norm a^2 - b^2 s is a nonzero rational
        norm = o.a * o.a - o.b * o.b * s
        conj = QuadSurd(o.a, -o.b, s)
        num = self * conj
        return QuadSurd(num.a / norm, num.b / norm, s)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("surd powers must be non-negative integers")
        out = QuadSurd(Fraction(1), Fraction(0), 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- exact order --------------------------------------------------------

    def sign(self) -> int:
        a, b, s = self.a, self.b, self.s
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 s (one squaring each side)
        lhs, rhs = a * a, b * b * s
        if a > 0:  # b < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def _cmp(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __eq__(self, other):
        if isinstance(other, (QuadSurd, int, Fraction)):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b and self.s == o.s
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.s))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    # -- output -------------------------------------------------------------

    def interval(self, ctx=None):
        """Certified enclosure of the value in an mpmath interval context."""
        ctx = ctx or mpmath.iv
        a = ctx.mpf(self.a.numerator) / ctx.mpf(self.a.denominator)
        if self.b == 0:
            return a
        b = ctx.mpf(self.b.numerator) / ctx.mpf(self.b.denominator)
        return a + b * ctx.sqrt(self.s)

    def approx_str(self, sig: int = 6) -> str:
        """Decimal approximation for human-facing tables (display only)."""
        with mpmath.workdps(sig + 25):
            val = mpmath.mpf(self.a.numerator) / self.a.denominator
            if self.b != 0:
                val += mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(self.s)
            return mpmath.nstr(val, sig)

    def to_json_dict(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b), "s": self.s}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "QuadSurd":
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]), int(obj["s"]))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadSurd({self.a})"
        return f"QuadSurd({self.a} + {self.b}*sqrt({self.s}))"


# --------------------------------------------------------------------------
# certified interval comparisons

def fraction_interval(x: Fraction | int, ctx=None):
    """Enclosure of an exact rational in the given interval context."""
    ctx = ctx or mpmath.iv
    x = Fraction(x)
    return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)


def certified_all_greater(build_pairs, start_bits: int = 64, cap_bits: int = 512) -> bool:
    """Decide whether lhs > rhs strictly for every pair produced by ``build_pairs``.

    ``build_pairs(ctx)`` must return a list of (lhs, rhs) interval pairs
    evaluated in the context ``ctx``.  Precision doubles from ``start_bits``
    until every pair separates; a certainly-violated pair returns False
    immediately.  Raises :class:`IndeterminatePrecision` at the cap.
    """
    iv = mpmath.iv
    old_prec = iv.prec
    try:
        bits = min(start_bits, cap_bits)
        while True:
            iv.prec = bits
            undecided = False
            for lhs, rhs in build_pairs(iv):
                if lhs.a > rhs.b:
                    continue  # certainly greater
                if lhs.b < rhs.a:
                    return False  # certainly not greater
                undecided = True
            if not undecided:
                return True
            if bits >= cap_bits:
                raise IndeterminatePrecision(
                    f"could not separate the inequality sides at {cap_bits} bits"
                )
            bits = min(2 * bits, cap_bits)
    finally:
        iv.prec = old_prec


def stirling_bounds_hold(n: int, cap_bits: int = 512) -> bool:
    """Check 5*sqrt(pi n)(n/(pi e))^{2n} > |B_{2n}| > 4*sqrt(pi n)(n/(pi e))^{2n}.

    The transcendental sides are evaluated with outward-rounded interval
    arithmetic, doubling precision up to ``cap_bits``.
    """
    if n < 1:
        raise ValueError("stirling_bounds_hold expects n >= 1")
    babs = abs(bernoulli(2 * n))

    def build(ctx):
        root = ctx.sqrt(ctx.pi * n)
        base = ctx.mpf(n) / (ctx.pi * ctx.e)
        power = base ** (2 * n)
        b_iv = fraction_interval(babs, ctx)
        return [(5 * root * power, b_iv), (b_iv, 4 * root * power)]

    return certified_all_greater(build, cap_bits=cap_bits)
