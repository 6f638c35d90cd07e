"""Squared-norm expansions and the associated integer quadratic forms.

For w = sum_i x_i rot^{i-1}(u) the squared norm expands into pair sums of u
weighted by pair sums of x.  When every wrapped pair sum of u vanishes
except the one at a distinguished distance r0, the expansion collapses to a
two-term quadratic form in x with coefficients built from a and b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import CirculantLattice, pair_sum_wrapped
from .errors import DimensionError, IndexRangeError, SpecError

# minimum circulant eigenvalue must exceed this times (a^2 - 2b) to count
# as positive definite in the numeric fallback
_PD_EIGEN_RTOL = 1e-9


class FormKind(Enum):
    D_FORM = "D-form"
    Q_FORM = "Q-form"


@dataclass(frozen=True)
class QuadForm:
    """Coefficients of the quadratic form acting on integer vectors.

    The D-form is (a^2-2b) * sum(x_i^2) + 2b * wrapped_pair_sum(r0, x),
    with 4b replacing 2b when r0 = n/2.  The Q-form is the unit-coefficient
    companion sum(x_i^2) + wrapped_pair_sum(r0, x), evaluated exactly over
    the integers.
    """

    n: int
    r0: int
    kind: FormKind
    a_sq: float | None = None
    b: float | None = None

    def __post_init__(self):
        if not 1 <= self.r0 <= self.n // 2:
            raise SpecError(f"r0 must satisfy 1 <= r0 <= {self.n // 2}, got {self.r0}")
        if self.kind is FormKind.Q_FORM and (self.a_sq is not None or self.b is not None):
            raise SpecError("the Q-form carries no real coefficients")
        if self.kind is FormKind.D_FORM and (self.a_sq is None or self.b is None):
            raise SpecError("the D-form requires a_sq and b")

    @property
    def half_case(self) -> bool:
        return self.n % 2 == 0 and self.r0 == self.n // 2

    def evaluate(self, x):
        if self.kind is FormKind.Q_FORM:
            return q_form_eval(self.n, self.r0, x)
        if self.half_case:
            return norm_simplified(self.a_sq, self.b, self.r0, x)
        return d_form_eval(self.a_sq, self.b, self.n, self.r0, x)


def norm_full(lat: CirculantLattice, x) -> float:
    """Squared norm of sum_i x_i rot^{i-1}(u) for arbitrary u, via pair sums.

    Equals the direct ||x . G||^2; valid with no conditions on u.
    """
    xv = np.asarray(x, dtype=float)
    n = lat.n
    if xv.shape != (n,):
        raise DimensionError(f"coefficient vector must have shape ({n},), got {xv.shape}")
    total = lat.vieta.norm_sq * float(np.dot(xv, xv))
    for r in range(1, (n - 1) // 2 + 1):
        total += 2.0 * pair_sum_wrapped(r, lat.u.entries) * pair_sum_wrapped(r, xv)
    if n % 2 == 0:
        half = n // 2
        total += 4.0 * pair_sum_wrapped(half, lat.u.entries) * pair_sum_wrapped(half, xv)
    return total


def norm_simplified(a_sq: float, b: float, r0: int, x) -> float:
    """Collapsed squared norm, valid when all pair sums of u vanish off r0.

    Uses the 4b coefficient when r0 = n/2 (the wrapped sum counts those
    pairs once), 2b otherwise.
    """
    xv = np.asarray(x, dtype=float)
    n = xv.shape[0]
    if not 1 <= r0 <= n // 2:
        raise IndexRangeError(f"r0 must satisfy 1 <= r0 <= {n // 2}, got {r0}")
    coeff = 4.0 * b if 2 * r0 == n else 2.0 * b
    return (a_sq - 2.0 * b) * float(np.dot(xv, xv)) + coeff * pair_sum_wrapped(r0, xv)


def _wrapped_pair_sum_int(r: int, x: np.ndarray) -> int:
    n = x.shape[0]
    total = int(np.dot(x[:-r], x[r:]))
    if 2 * r != n:
        s = n - r
        total += int(np.dot(x[:-s], x[s:]))
    return total


def q_form_eval(n: int, r0: int, x) -> int:
    """Unit-coefficient form sum(x_i^2) + wrapped_pair_sum(r0, x), exact."""
    if not 1 <= r0 <= (n - 1) // 2:
        raise IndexRangeError(f"r0 must satisfy 1 <= r0 <= {(n - 1) // 2}, got {r0}")
    xv = np.asarray(x, dtype=np.int64)
    if xv.shape != (n,):
        raise DimensionError(f"expected shape ({n},), got {xv.shape}")
    return int(np.dot(xv, xv)) + _wrapped_pair_sum_int(r0, xv)


def d_form_eval(a_sq: float, b: float, n: int, r0: int, x) -> float:
    """Two-term form (a_sq - 2b) sum(x_i^2) + 2b * wrapped_pair_sum(r0, x).

    Rejects r0 = n/2 (that case uses the 4b coefficient, see
    norm_simplified).  When a_sq = 4b this equals (a_sq/2) times the
    Q-form.
    """
    if not 1 <= r0 <= (n - 1) // 2:
        raise IndexRangeError(f"r0 must satisfy 1 <= r0 <= {(n - 1) // 2}, got {r0}")
    xv = np.asarray(x, dtype=float)
    if xv.shape != (n,):
        raise DimensionError(f"expected shape ({n},), got {xv.shape}")
    return (a_sq - 2.0 * b) * float(np.dot(xv, xv)) + 2.0 * b * pair_sum_wrapped(r0, xv)


def form_eigenvalues(a_sq: float, b: float, n: int, r0: int) -> np.ndarray:
    """Eigenvalues of the circulant coefficient matrix of the collapsed form.

    (a_sq - 2b) + 2b cos(2 pi r0 j / n) for j = 0..n-1; covers the r0 = n/2
    case as well, where the single offset carries coefficient 2b.
    """
    j = np.arange(n)
    return (a_sq - 2.0 * b) + 2.0 * b * np.cos(2.0 * np.pi * r0 * j / n)


@dataclass(frozen=True)
class DefinitenessCheck:
    definite: bool
    certificate: str | float


def is_positive_definite(a_sq: float, b: float, n: int, r0: int) -> DefinitenessCheck:
    """Decide positive definiteness of the collapsed quadratic form.

    Fast path: n/gcd(r0, n) odd with 0 != a_sq >= 4b is sufficient
    (certificate "sufficient-condition").  Otherwise decides numerically
    from the circulant eigenvalues, returning the minimum eigenvalue as
    certificate.
    """
    if not 1 <= r0 <= n // 2:
        raise SpecError(f"r0 must satisfy 1 <= r0 <= {n // 2}, got {r0}")
    if (
        r0 <= (n - 1) // 2
        and (n // math.gcd(r0, n)) % 2 == 1
        and a_sq != 0.0
        and a_sq >= 4.0 * b
    ):
        return DefinitenessCheck(definite=True, certificate="sufficient-condition")
    min_eig = float(np.min(form_eigenvalues(a_sq, b, n, r0)))
    return DefinitenessCheck(definite=min_eig > _PD_EIGEN_RTOL * (a_sq - 2.0 * b), certificate=min_eig)


def singular_witness(n: int, r0: int) -> np.ndarray:
    """Alternating block vector annihilating the form when n/gcd(r0,n) is even.

    c = n/gcd blocks of gcd coordinates; block k starts with (-1)^k, rest
    zeros.  With a_sq = 4b the collapsed form vanishes on it.
    """
    g = math.gcd(r0, n)
    c = n // g
    if c % 2 != 0:
        raise SpecError(f"witness needs n/gcd(r0,n) even, got {c}")
    x = np.zeros(n, dtype=np.int64)
    x[::g] = (-1) ** np.arange(c)
    return x
