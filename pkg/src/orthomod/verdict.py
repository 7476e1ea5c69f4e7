"""The decision engine.

Evaluates the leading-term obstruction inequalities exactly and combines
them with cusp-weight availability into Kodaira-type verdicts for the
unimodular series, the K3-type series, and the spin double covers, plus
bulk threshold scans over the polarization index d.

Two switches matter everywhere:

``mode``
    "bound" uses the closed-form bounds for the branch coefficients (no
    L-values needed); "exact" replaces the (-2)-part bound by the exact
    L-value ratios.

``bracket``
    "sharp" uses the exact leading coefficient (1 + 1/w)^{8m+3} - 1 of the
    summed obstruction series; "upper" uses the weaker bound (1 + 1/w)^{8m+3}.
    The sharp bracket is the default: it is what the recorded general-type
    thresholds for this machinery actually satisfy.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import WOutOfRange
from .exactnum import QuadSurd, bernoulli
from .hmvol import (
    BRACKETS,
    MODES,
    b_minus2,
    b_minus2_exact,
    b_minus2d,
    e_w,
    obstruction_weight_factor,
)
from .jacobi import (
    SERIES,
    WEIGHT2_ALWAYS_POSITIVE_BOUND,
    cusp_weight_menu,
    weight2_positive_small_indices,
)

GENERAL_TYPE = "GeneralType"
NON_NEGATIVE_KODAIRA = "NonNegativeKodaira"
KODAIRA_MINUS_INFINITY = "KodairaMinusInfinity"
INCONCLUSIVE = "Inconclusive"

SOURCE_INEQUALITY = "inequality"
SOURCE_THEOREM = "theorem"
SOURCE_REMARK = "remark"

# Degrees 2d for which the degree-2d polarised K3 moduli space is already
# known to be of general type by the quasi pull-back method.
K3_DEGREE2D_KNOWN_SET = frozenset({46, 50, 54, 57, 58, 60})
K3_DEGREE2D_KNOWN_MIN = 62  # every d > 61

# Published thresholds for the fixed-w scans of the K3 series, keyed by
# (m, w).  The derived thresholds come from the sharp bracket; see the note.
LITERATURE_THRESHOLDS: dict[tuple[int, int], int] = {
    (3, 13): 1346,
    (1, 5): 1537488,
    (2, 9): 231000,
}
THRESHOLD_NOTE = (
    "derived threshold uses the exact obstruction-sum bracket (1+1/w)^n - 1; "
    "the recorded constant matches it up to rounding, while the weaker 'upper' "
    "bracket overshoots by a factor of roughly 1.2-1.4"
)


@dataclass(frozen=True)
class SeriesPoint:
    """One modular variety: series tag, E8 multiplicity m, and (for the
    K3-type and spin series) the polarization index d."""

    series: str
    m: int
    d: int = 1

    def __post_init__(self) -> None:
        if self.series not in SERIES:
            raise ValueError(f"unknown series {self.series!r}")
        if self.m < 0:
            raise ValueError("m must be >= 0")
        if self.d < 1:
            raise ValueError("d must be >= 1")

    @property
    def dimension(self) -> int:
        return 8 * self.m + 2 if self.series == "unimodular" else 8 * self.m + 3


@dataclass(frozen=True)
class Witness:
    a: int | None = None
    w: int | None = None
    beta: QuadSurd | None = None
    predicate: bool | None = None
    mode: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "a": self.a,
            "w": self.w,
            "beta": self.beta.to_json_dict() if self.beta is not None else None,
            "predicate": self.predicate,
            "mode": self.mode,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Witness":
        return cls(
            a=obj.get("a"),
            w=obj.get("w"),
            beta=QuadSurd.from_json_dict(obj["beta"]) if obj.get("beta") else None,
            predicate=obj.get("predicate"),
            mode=obj.get("mode"),
        )


@dataclass(frozen=True)
class Verdict:
    series: str
    m: int
    d: int
    status: str
    source: str | None
    witness: Witness | None = None
    citations: tuple[str, ...] = ()
    reason: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "series": self.series,
            "m": self.m,
            "d": self.d,
            "status": self.status,
            "source": self.source,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "citations": list(self.citations),
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Verdict":
        return cls(
            series=obj["series"],
            m=int(obj["m"]),
            d=int(obj["d"]),
            status=obj["status"],
            source=obj.get("source"),
            witness=Witness.from_json_dict(obj["witness"]) if obj.get("witness") else None,
            citations=tuple(obj.get("citations", ())),
            reason=obj.get("reason"),
        )


# --------------------------------------------------------------------------
# the inequalities

def bii_holds(m: int) -> bool:
    """Exact test of B_{4m+2}/(4m+2) > (1 + 1/(4m-10))^{8m+2} - 1, the
    positivity condition for the unimodular obstruction constant."""
    if m < 3:
        raise WOutOfRange("the unimodular inequality needs m >= 3 (w = 4m-10 >= 2)")
    lhs = bernoulli(4 * m + 2) / (4 * m + 2)
    rhs = e_w(4 * m - 10, 8 * m + 2) - 1
    return lhs > rhs


def beta(m: int, d: int, w: int, mode: str = "bound", bracket: str = "sharp") -> QuadSurd:
    """The branch-obstruction ratio beta^{(w)}_{m,d}, an exact surd of the
    form r1 + r2/sqrt(d); the variety passes when beta < sqrt(d).

    For d = 1 there are no (-2d)-classes and only the (-2)-coefficient
    enters (bound form in either mode).
    """
    if m < 1 or d < 1 or w < 1:
        raise ValueError("beta expects m, d, w >= 1")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    factor = abs(bernoulli(4 * m + 2) / bernoulli(8 * m + 4)) * obstruction_weight_factor(
        w, 8 * m + 3, bracket
    )
    if d == 1:
        total = QuadSurd.from_rational(b_minus2(m))
    else:
        b2 = (
            QuadSurd.from_rational(b_minus2(m))
            if mode == "bound"
            else b_minus2_exact(m, d)
        )
        total = b2 + b_minus2d(m, d)
    return QuadSurd.from_rational(factor) * total


def beta_predicate(m: int, d: int, w: int, mode: str = "bound", bracket: str = "sharp") -> bool:
    """Exact truth of beta^{(w)}_{m,d} < sqrt(d); no floating point."""
    return beta(m, d, w, mode=mode, bracket=bracket) < QuadSurd.sqrt_int(d)


def printed_closing_predicate(m: int, d: int) -> bool:
    """The closing display variant for m <= 3 kept for comparison: it uses
    B_{8m+2} in place of B_{8m+4}, the un-sharpened growth factor, and the
    blanket coefficient 2^{8m+3} + 2."""
    if m < 1 or m > 3:
        raise WOutOfRange("printed closing inequality is stated for 1 <= m <= 3")
    lhs = (
        abs(bernoulli(4 * m + 2) / bernoulli(8 * m + 2))
        * e_w(4 * m + 1, 8 * m + 3)
        * (2 ** (8 * m + 3) + 2)
    )
    return QuadSurd.from_rational(lhs) < QuadSurd.sqrt_int(d)


# --------------------------------------------------------------------------
# verdicts

def _unimodular_verdict(pt: SeriesPoint, mode: str, bracket: str) -> Verdict:
    m = pt.m
    if m <= 2:
        citations = {
            0: "the m = 0 quotient is rational (compactifies to the projective plane)",
            1: "a reflective automorphic product of weight 252 on the signature (2,10) "
               "lattice divides every candidate pluricanonical form",
            2: "a reflective automorphic product of weight 127 on the signature (2,18) "
               "lattice divides every candidate pluricanonical form",
        }
        return Verdict(
            pt.series, m, pt.d, KODAIRA_MINUS_INFINITY, SOURCE_THEOREM,
            citations=(citations[m],),
        )
    ok = bii_holds(m)
    witness = Witness(a=12 + 4 * m, w=4 * m - 10, predicate=ok, mode=mode)
    if ok:
        return Verdict(pt.series, m, pt.d, GENERAL_TYPE, SOURCE_INEQUALITY, witness)
    return Verdict(
        pt.series, m, pt.d, INCONCLUSIVE, SOURCE_INEQUALITY, witness,
        reason="leading-term obstruction inequality fails at this m",
    )


def _k3_verdict(pt: SeriesPoint, mode: str, bracket: str) -> Verdict:
    m, d, n = pt.m, pt.d, pt.dimension
    if n < 9:
        return Verdict(
            pt.series, m, d, INCONCLUSIVE, None,
            reason=f"dimension {n} < 9: no suitable compactification control",
        )
    menu = cusp_weight_menu(pt.series, m, d)
    best: Witness | None = None
    for a, ok in menu.available_weights:
        if not ok or a >= n:
            continue
        w = n - a
        val = beta(m, d, w, mode=mode, bracket=bracket)
        pred = val < QuadSurd.sqrt_int(d)
        wit = Witness(a=a, w=w, beta=val, predicate=pred, mode=mode)
        if pred:
            return Verdict(pt.series, m, d, GENERAL_TYPE, SOURCE_INEQUALITY, wit)
        if best is None:
            best = wit
    if m == 2 and (d >= K3_DEGREE2D_KNOWN_MIN or d in K3_DEGREE2D_KNOWN_SET):
        return Verdict(
            pt.series, m, d, GENERAL_TYPE, SOURCE_REMARK, best,
            citations=(
                "known general-type range for degree-2d polarised K3 moduli "
                "(quasi pull-back of the weight-12 reflective product): d > 61 "
                "or d in {46, 50, 54, 57, 58, 60}",
            ),
        )
    return Verdict(
        pt.series, m, d, INCONCLUSIVE, SOURCE_INEQUALITY, best,
        reason="no available cusp weight satisfies the obstruction inequality",
    )


def _spin_verdict(pt: SeriesPoint, mode: str, bracket: str) -> Verdict:
    m, d, n = pt.m, pt.d, pt.dimension
    if n < 9:
        return Verdict(
            pt.series, m, d, INCONCLUSIVE, None,
            reason=f"dimension {n} < 9: no suitable compactification control",
        )
    if d == 1:
        return Verdict(
            pt.series, m, d, INCONCLUSIVE, None,
            reason="the spin double cover is considered for d > 1 only",
        )
    menu = cusp_weight_menu(pt.series, m, d)
    for a, ok in menu.available_weights:
        if ok and a % 2 == 1 and a < n:
            return Verdict(
                pt.series, m, d, GENERAL_TYPE, SOURCE_THEOREM,
                Witness(a=a, w=n - a, predicate=True, mode=mode),
                citations=(
                    f"an odd-weight cusp form (weight {a}) vanishes along the whole "
                    "branch divisor of the spin cover, so no reflective obstruction "
                    "remains below the dimension",
                ),
            )
    if m == 1 and d in (4, 6):
        return Verdict(
            pt.series, m, d, NON_NEGATIVE_KODAIRA, SOURCE_THEOREM,
            Witness(a=11, w=0, predicate=True, mode=mode),
            citations=(
                "a cusp form of weight 11 equal to the variety dimension gives a "
                "canonical form (Freitag's criterion)",
            ),
        )
    return Verdict(
        pt.series, m, d, INCONCLUSIVE, SOURCE_INEQUALITY,
        reason="no odd cusp weight below the dimension is available",
    )


def verdict(pt: SeriesPoint, mode: str = "bound", bracket: str = "sharp") -> Verdict:
    """Kodaira-type verdict for one series point; deterministic and pure."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if bracket not in BRACKETS:
        raise ValueError(f"unknown bracket {bracket!r}")
    if pt.series == "unimodular":
        return _unimodular_verdict(pt, mode, bracket)
    if pt.series == "k3":
        return _k3_verdict(pt, mode, bracket)
    return _spin_verdict(pt, mode, bracket)


def verdict_for(series: str, m: int, d: int = 1, mode: str = "bound",
                bracket: str = "sharp") -> Verdict:
    return verdict(SeriesPoint(series, m, d), mode=mode, bracket=bracket)


# --------------------------------------------------------------------------
# threshold scans

@dataclass(frozen=True)
class ScanReport:
    """Result of a fixed-w predicate scan over 2 <= d <= d_max.

    ``bits`` holds one byte per scanned d (1 = the gated predicate holds);
    it is omitted from the JSON summary.  The report is range-relative: no
    claim is made beyond d_max.
    """

    series: str
    m: int
    w: int
    a: int
    d_max: int
    mode: str
    bracket: str
    last_failure_d: int | None
    first_stable_d: int | None
    literature_threshold: int | None
    note: str | None
    bits: bytes | None = None

    def to_json_dict(self) -> dict:
        return {
            "series": self.series,
            "m": self.m,
            "w": self.w,
            "a": self.a,
            "d_max": self.d_max,
            "mode": self.mode,
            "bracket": self.bracket,
            "last_failure_d": self.last_failure_d,
            "first_stable_d": self.first_stable_d,
            "literature_threshold": self.literature_threshold,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ScanReport":
        return cls(
            series=obj["series"], m=int(obj["m"]), w=int(obj["w"]), a=int(obj["a"]),
            d_max=int(obj["d_max"]), mode=obj["mode"], bracket=obj["bracket"],
            last_failure_d=obj.get("last_failure_d"),
            first_stable_d=obj.get("first_stable_d"),
            literature_threshold=obj.get("literature_threshold"),
            note=obj.get("note"), bits=None,
        )


def omega_sieve(n: int) -> np.ndarray:
    """Number of distinct prime factors for every integer in [0, n]."""
    omega = np.zeros(n + 1, dtype=np.uint8)
    for p in range(2, n + 1):
        if omega[p] == 0:  # p is prime: nothing smaller has marked it
            omega[p::p] += 1
    return omega


def _availability_gate(m: int, a: int, d_max: int) -> np.ndarray:
    """Boolean gate over d in [0, d_max]: the cusp weight a exists at (m, d)."""
    d = np.arange(d_max + 1)
    if a == 11 + 4 * m:
        gate = d > 1
    elif a == 10 + 4 * m:
        gate = np.ones(d_max + 1, dtype=bool)
    elif a == 7 + 4 * m:
        gate = d >= 4
    elif a == 6 + 4 * m:
        gate = (d == 3) | (d >= 5)
    elif a == 5 + 4 * m:
        gate = (d == 5) | (d >= 7)
    elif a == 2 + 4 * m:
        gate = d > WEIGHT2_ALWAYS_POSITIVE_BOUND
        for small in weight2_positive_small_indices():
            if small <= d_max:
                gate[small] = True
    else:
        raise ValueError(f"weight {a} (= 8m+3-w) is not on the cusp-weight menu")
    return gate


def _scan_constants(m: int, w: int, bracket: str):
    """Integer constants for the fast fixed-w predicate loop (bound mode)."""
    factor = abs(bernoulli(4 * m + 2) / bernoulli(8 * m + 4)) * obstruction_weight_factor(
        w, 8 * m + 3, bracket
    )
    r1 = factor * (2 ** (8 * m + 3) - 1)
    p1, q1 = r1.numerator, r1.denominator
    fp, fq = factor.numerator, factor.denominator
    big = 2 ** (8 * m + 3)
    base = big + 2 ** (4 * m + 1) - 1
    # b_{(-2d)} = 2^{rho} * gnum_h / (gden_h * d^{4m+1} * sqrt(d)); the factor
    # 2^{8m+3} cancels against the denominator of G_h.
    gnum = {-1: base + 2, 0: base + 1, 1: 2 * base + 1}
    gden = {-1: 2, 0: 1, 1: 1}
    consts = {}
    for h in (-1, 0, 1):
        num2 = fp * gnum[h]           # R2(d) = num2 * 2^rho / (den2 * d^{4m+1})
        den2 = fq * gden[h]
        consts[h] = (num2, den2, p1 * p1 * den2 * den2)
    return consts, q1 * q1


def _scan_chunk(args) -> bytes:
    m, w, bracket, d_lo, d_hi, omega_chunk, h_exp = args
    consts, q1sq = _scan_constants(m, w, bracket)
    out = bytearray(d_hi - d_lo)
    for idx in range(d_hi - d_lo):
        d = d_lo + idx
        h = (1 if d % 8 == 0 else 0) - (1 if d % 4 == 2 else 0)
        num2, den2, a_h = consts[h]
        pw = d ** h_exp
        t = den2 * pw * d - num2 * (1 << int(omega_chunk[idx]))
        if t <= 0:
            continue
        if a_h * pw * pw * d < q1sq * t * t:
            out[idx] = 1
    return bytes(out)


def scan_threshold(
    series: str,
    m: int,
    w: int,
    d_max: int,
    mode: str = "bound",
    bracket: str = "sharp",
    threads: int = 1,
) -> ScanReport:
    """Evaluate the gated predicate for all 2 <= d <= d_max at fixed w.

    Reports the largest failing d and the first d after which no failure
    occurs within the scanned range, together with the recorded constant for
    the scans that have one.  Bulk rho(d) comes from a factor sieve.
    """
    if series != "k3":
        raise ValueError("threshold scans are defined for the k3 series")
    if d_max < 2:
        raise ValueError("d_max must be >= 2")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 8 * m + 3
    a = n - w
    if not (1 <= w < n):
        raise ValueError("need 1 <= w < 8m+3")
    gate = _availability_gate(m, a, d_max)

    bits = bytearray(d_max + 1)
    if mode == "exact":
        for d in range(2, d_max + 1):
            if beta_predicate(m, d, w, mode=mode, bracket=bracket):
                bits[d] = 1
    else:
        omega = omega_sieve(d_max)
        h_exp = 4 * m + 1
        if threads > 1:
            bounds = np.linspace(2, d_max + 1, threads + 1, dtype=int)
            jobs = [
                (m, w, bracket, int(lo), int(hi), omega[int(lo):int(hi)].copy(), h_exp)
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                chunks = list(zip((j[3] for j in jobs), pool.map(_scan_chunk, jobs)))
        else:
            chunks = [(2, _scan_chunk((m, w, bracket, 2, d_max + 1, omega[2:], h_exp)))]
        for lo, chunk in chunks:
            bits[lo:lo + len(chunk)] = chunk
        # d = 2 carries the doubled (-4) coefficient; recompute it exactly
        bits[2] = 1 if beta_predicate(m, 2, w, mode=mode, bracket=bracket) else 0
    masked = np.frombuffer(bytes(bits), dtype=np.uint8).astype(bool) & gate
    bits = bytearray(masked.astype(np.uint8).tobytes())

    last_failure = None
    for d in range(d_max, 1, -1):
        if not bits[d]:
            last_failure = d
            break
    if last_failure is None:
        first_stable = 2
    elif last_failure < d_max:
        first_stable = last_failure + 1
    else:
        first_stable = None

    lit = LITERATURE_THRESHOLDS.get((m, w))
    return ScanReport(
        series=series, m=m, w=w, a=a, d_max=d_max, mode=mode, bracket=bracket,
        last_failure_d=last_failure, first_stable_d=first_stable,
        literature_threshold=lit, note=THRESHOLD_NOTE if lit is not None else None,
        bits=bytes(bits[2:]),
    )
