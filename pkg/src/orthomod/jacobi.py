"""Dimension formulas for cusp forms.

The elliptic cusp-form dimension in closed form, the two-variable Jacobi
cusp-form dimension dim J_{k,d} for k >= 2, and the menu of cusp weights
available to the verdict engine for each lattice series.  Dimensions only:
no forms are constructed here.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnsupportedWeight
from .exactnum import sigma0

SERIES = ("unimodular", "k3", "spin")

# Weight-2 index-d Jacobi cusp forms are guaranteed for every d above this
# bound; below it the exact dimension decides.
WEIGHT2_ALWAYS_POSITIVE_BOUND = 180


def braces12(l: int) -> int:
    """floor(l/12), shifted down by one when l = 2 mod 12."""
    if l < 1:
        raise ValueError("braces12 expects l >= 1")
    return l // 12 - (1 if l % 12 == 2 else 0)


def dim_cusp_sl2(k: int) -> int:
    """Dimension of weight-k elliptic cusp forms for the full modular group."""
    if k < 12 or k % 2:
        return 0
    return braces12(k)


def dim_jacobi_cusp(k: int, d: int) -> int:
    """Dimension of the space of Jacobi cusp forms of weight k and index d.

    Even k > 2 sums braces12(k + 2j) - floor(j^2/4d) over j = 0..d; odd k
    sums braces12(k - 1 + 2j) - floor(j^2/4d) over j = 1..d-1; k = 2 adds
    the correction ceil(sigma0(d)/2) to the even-k sum.  A negative raw sum
    (possible at tiny weights) is clamped to zero with a warning.  k = 3 is
    evaluated by the odd-weight sum as printed even though nothing downstream
    consumes it; treat those values as experimental.
    """
    if k < 2:
        raise UnsupportedWeight(f"Jacobi dimension formula needs k >= 2, got {k}")
    if d < 1:
        raise ValueError("index d must be >= 1")
    if k % 2 == 0:
        raw = sum(braces12(k + 2 * j) - (j * j) // (4 * d) for j in range(d + 1))
        if k == 2:
            raw += -(-sigma0(d) // 2)
    else:
        raw = sum(braces12(k - 1 + 2 * j) - (j * j) // (4 * d) for j in range(1, d))
    if raw < 0:
        warnings.warn(
            f"raw Jacobi dimension sum {raw} < 0 at (k={k}, d={d}); clamped to 0",
            RuntimeWarning,
        )
        return 0
    return raw


@lru_cache(maxsize=1)
def weight2_positive_small_indices() -> tuple[int, ...]:
    """Indices d <= 180 with dim J_{2,d} > 0 (the sporadic small cases)."""
    return tuple(
        d for d in range(1, WEIGHT2_ALWAYS_POSITIVE_BOUND + 1) if dim_jacobi_cusp(2, d) > 0
    )


def weight2_positive(d: int) -> bool:
    if d > WEIGHT2_ALWAYS_POSITIVE_BOUND:
        return True
    return dim_jacobi_cusp(2, d) > 0


@dataclass(frozen=True)
class CuspWeightMenu:
    """Existence flags for the cusp weights that the verdict engine may use."""

    series: str
    m: int
    d: int
    available_weights: tuple[tuple[int, bool], ...]

    def available(self) -> tuple[int, ...]:
        return tuple(a for a, ok in self.available_weights if ok)

    def is_available(self, a: int) -> bool:
        return any(w == a and ok for w, ok in self.available_weights)

    def to_json_dict(self) -> dict:
        return {
            "series": self.series,
            "m": self.m,
            "d": self.d,
            "weights": [{"a": a, "exists": ok} for a, ok in self.available_weights],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "CuspWeightMenu":
        return cls(
            series=obj["series"],
            m=int(obj["m"]),
            d=int(obj["d"]),
            available_weights=tuple((int(w["a"]), bool(w["exists"])) for w in obj["weights"]),
        )


def cusp_weight_menu(series: str, m: int, d: int = 1) -> CuspWeightMenu:
    """Cusp weights with existence flags for the given series point.

    The unimodular series always has weight 12 + 4m.  The K3-type series and
    its spin cover share one menu; the flags restate positivity of the
    index-d Jacobi dimension at weight a - 4m.  All weights are listed, not
    only the single one a minimal proof would pick.
    """
    if series not in SERIES:
        raise ValueError(f"unknown series {series!r}")
    if m < 0:
        raise ValueError("m must be >= 0")
    if series == "unimodular":
        return CuspWeightMenu(series, m, d, ((12 + 4 * m, True),))
    if d < 1:
        raise ValueError("d must be >= 1")
    flags = (
        (11 + 4 * m, d > 1),
        (10 + 4 * m, True),
        (7 + 4 * m, d >= 4),
        (6 + 4 * m, d == 3 or d >= 5),
        (5 + 4 * m, d == 5 or d >= 7),
        (2 + 4 * m, weight2_positive(d)),
    )
    return CuspWeightMenu(series, m, d, flags)
