"""Center densities, closed-form predictions, and reference comparisons.

Center density is (sqrt(min_norm)/2)^n / |det G|: scale-invariant, so the
solver's pinned scale never matters.  Closed forms: 2^(-gcd(r0,n)-n/2) in
the a^2 = 4b regime, 2^(-n/2) 3^(-n/4) for the r0 = n/2 constructions.
The classical references are 2^(-1-n/2) (checkerboard family) and
2^(-n/2) (n+1)^(-1/2) (zero-sum-root family).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import SpecError
from .solver import r0_optimal


class ReportMethod(Enum):
    A2_EQ_4B = "a2eq4b"
    HALF_MINUS_2B = "half-minus-2b"
    HALF_6B = "half-6b"
    RAW = "raw"


# Best known lattice center densities by dimension, from the standard
# sphere-packing tables (Conway & Sloane); proven optimal for n <= 8 and
# n = 24.  Read-only reference data, not computed here.
BEST_KNOWN_CENTER_DENSITY: dict[int, float] = {
    1: 0.5,
    2: 0.28868,
    3: 0.17678,
    4: 0.12500,
    5: 0.08839,
    6: 0.07217,
    7: 0.06250,
    8: 0.06250,
    9: 0.04419,
    10: 0.03608,
    11: 0.03208,
    12: 0.03704,
    13: 0.03208,
    14: 0.03608,
    15: 0.04419,
    16: 0.06250,
    17: 0.06250,
    18: 0.07217,
    19: 0.08839,
    20: 0.12500,
    21: 0.17678,
    22: 0.28868,
    23: 0.5,
    24: 1.0,
    25: 0.70711,
    26: 0.57735,
    27: 0.57735,
    28: 0.66667,
    29: 0.57735,
    30: 0.65838,
    31: 1.20952,
    32: 2.56578,
    33: 2.22203,
    34: 2.22203,
    35: 2.82843,
}


def center_density(min_norm_sq: float, abs_det: float, n: int) -> float:
    """(sqrt(min_norm_sq)/2)^n / abs_det."""
    if not min_norm_sq > 0.0:
        raise ValueError(f"minimum squared norm must be positive, got {min_norm_sq!r}")
    if not abs_det > 0.0:
        raise ValueError(f"absolute determinant must be positive, got {abs_det!r}")
    return (math.sqrt(min_norm_sq) / 2.0) ** n / abs_det


def delta_closed_a4b(n: int, r0: int) -> float:
    """Predicted center density 2^(-gcd(r0,n) - n/2) for the a^2 = 4b regime."""
    if not 1 <= r0 <= (n - 1) // 2:
        raise SpecError(f"r0 must satisfy 1 <= r0 <= {(n - 1) // 2}, got {r0}")
    g = math.gcd(r0, n)
    if (n // g) % 2 == 0:
        raise SpecError(f"n/gcd(r0,n) = {n // g} is even: no nonsingular lattice in this regime")
    return 2.0 ** (-g - n / 2.0)


def delta_closed_half(n: int) -> float:
    """Predicted center density 2^(-n/2) 3^(-n/4) for the r0 = n/2 regime."""
    if n % 2 != 0:
        raise SpecError(f"the r0 = n/2 construction needs even n, got {n}")
    return 2.0 ** (-n / 2.0) * 3.0 ** (-n / 4.0)


def ref_Dn(n: int) -> float:
    """Center density 2^(-1-n/2) of the n-dimensional checkerboard lattice."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 2.0 ** (-1.0 - n / 2.0)


def ref_An(n: int) -> float:
    """Center density 2^(-n/2) (n+1)^(-1/2) of the n-dimensional zero-sum lattice."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 2.0 ** (-n / 2.0) / math.sqrt(n + 1.0)


@dataclass(frozen=True)
class TableRow:
    n: int
    method: str
    delta_ours: float
    delta_Dn: float
    delta_An: float
    best_known: float | None


def density_table(n_max: int) -> list[TableRow]:
    """Achievable center density per dimension 2..n_max, with references.

    Odd n uses the a^2 = 4b regime at r0 = 1; even n not a power of two
    uses it at the gcd-minimizing r0; powers of two fall back to the
    r0 = n/2 construction (tagged "half-n").
    """
    if n_max < 2:
        raise ValueError(f"need n_max >= 2, got {n_max}")
    rows = []
    for n in range(2, n_max + 1):
        if n % 2 == 1:
            method = "a2eq4b-r0=1"
            delta = delta_closed_a4b(n, 1)
        elif n & (n - 1) == 0:
            method = "half-n"
            delta = delta_closed_half(n)
        else:
            r0 = r0_optimal(n)
            method = f"a2eq4b-r0={r0}"
            delta = delta_closed_a4b(n, r0)
        rows.append(
            TableRow(
                n=n,
                method=method,
                delta_ours=delta,
                delta_Dn=ref_Dn(n),
                delta_An=ref_An(n),
                best_known=BEST_KNOWN_CENTER_DENSITY.get(n),
            )
        )
    return rows


@dataclass(frozen=True)
class LatticeReport:
    """Summary of one lattice: enumerated quantities, determinant, center
    density, the applicable closed-form prediction, and references."""

    n: int
    r0: int
    method: ReportMethod
    min_norm_sq: float | None
    kissing: int | None
    abs_det: float
    delta: float | None
    delta_closed: float | None
    ref_Dn: float
    ref_An: float


def make_report(
    n: int,
    r0: int,
    method: ReportMethod,
    abs_det: float,
    min_norm_sq: float | None,
    kissing: int | None,
    delta_closed: float | None,
) -> LatticeReport:
    delta = None
    if min_norm_sq is not None and min_norm_sq > 0.0 and abs_det > 0.0:
        delta = center_density(min_norm_sq, abs_det, n)
    return LatticeReport(
        n=n,
        r0=r0,
        method=method,
        min_norm_sq=min_norm_sq,
        kissing=kissing,
        abs_det=abs_det,
        delta=delta,
        delta_closed=delta_closed,
        ref_Dn=ref_Dn(n),
        ref_An=ref_An(n),
    )
