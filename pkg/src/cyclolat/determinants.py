"""Generator-matrix determinants computed three independent ways.

Direct elimination serves as the oracle.  The circulant structure gives the
determinant as a product of eigenvalues that are root-of-unity sums of the
entries, and under the vanishing pair-sum condition that product collapses
to closed forms in a and b alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CirculantLattice
from .errors import NumericInconsistencyError, SpecError

# |imag| of the eigenvalue product must stay below this times (1 + |real|)
_EIGEN_IMAG_RTOL = 1e-8
# |det| at or below this times (geometric mean row norm)^n counts as zero
_SINGULAR_RTOL = 1e-8
# looser factor for solver outputs of the relaxed system: on singular
# families the determinant scales like the square root of the residual
# violations, so machine-precision residuals leave |det| around 1e-7
RELAXED_SINGULAR_RTOL = 1e-6


def det_direct(lat: CirculantLattice) -> float:
    """Determinant by row elimination with partial pivoting (LU)."""
    return float(np.linalg.det(lat.generator_matrix))


def circulant_eigenvalues(lat: CirculantLattice) -> np.ndarray:
    """Eigenvalues lambda_j = sum_k u_k zeta^{k j} of the generator matrix.

    zeta is the primitive n-th root of unity; exponents are reduced mod n
    before exponentiation to keep the phases sharp.
    """
    n = lat.n
    idx = np.arange(n)
    exps = np.outer(idx, idx) % n
    roots = np.exp(2.0j * np.pi * exps / n)
    return roots @ lat.u.entries


def det_eigen(lat: CirculantLattice) -> float:
    """Determinant as the product of the circulant eigenvalues.

    The product of the full conjugate-closed eigenvalue set is real; a
    residual imaginary part beyond tolerance raises.
    """
    prod = complex(np.prod(circulant_eigenvalues(lat)))
    if abs(prod.imag) > _EIGEN_IMAG_RTOL * (1.0 + abs(prod.real)):
        raise NumericInconsistencyError(
            f"eigenvalue product has imaginary residue {prod.imag!r} (real {prod.real!r})"
        )
    return prod.real


@dataclass(frozen=True)
class ClosedFormDet:
    """Closed-form determinant value; sign_known is False for even n,
    where the closed form determines the magnitude only."""

    value: float
    sign_known: bool

    def __abs__(self) -> float:
        return abs(self.value)


def det_closed_vanishing(a: float, b: float, n: int, r0: int) -> ClosedFormDet:
    """Closed-form determinant assuming all pair sums of u vanish off r0.

    Odd n gives a signed value -a * prod(...); even n gives the magnitude
    of a^2 * prod(...) or a*sqrt(a^2-4b)*prod(...) depending on the parity
    of r0.  The sqrt branch requires a^2 >= 4b.
    """
    if not 1 <= r0 <= n // 2:
        raise SpecError(f"r0 must satisfy 1 <= r0 <= {n // 2}, got {r0}")
    if n % 2 == 1:
        j = np.arange(1, (n - 1) // 2 + 1)
    else:
        j = np.arange(1, (n - 2) // 2 + 1)
    terms = (a * a - 2.0 * b) + 2.0 * b * np.cos(2.0 * np.pi * r0 * j / n)
    prod = float(np.prod(terms)) if j.size else 1.0
    if n % 2 == 1:
        return ClosedFormDet(value=-a * prod, sign_known=True)
    if r0 % 2 == 0:
        return ClosedFormDet(value=abs(a * a * prod), sign_known=False)
    radicand = a * a - 4.0 * b
    if radicand < 0.0:
        raise SpecError(f"even n with odd r0 needs a^2 >= 4b, got a^2 - 4b = {radicand!r}")
    return ClosedFormDet(value=abs(a * math.sqrt(radicand) * prod), sign_known=False)


def det_closed_a4b(a: float, n: int, r0: int) -> float:
    """|det| = |a|^n / 2^(n - gcd(r0, n)) in the a^2 = 4b regime.

    Valid when n/gcd(r0, n) is odd; an even quotient means the lattice is
    singular and the formula does not apply.
    """
    if a == 0.0:
        raise SpecError("a must be nonzero")
    if not 1 <= r0 <= (n - 1) // 2:
        raise SpecError(f"r0 must satisfy 1 <= r0 <= {(n - 1) // 2}, got {r0}")
    g = math.gcd(r0, n)
    if (n // g) % 2 == 0:
        raise SpecError(f"n/gcd(r0,n) = {n // g} is even: generator matrix is singular")
    return abs(a) ** n / 2.0 ** (n - g)


def singularity_threshold(lat: CirculantLattice, rtol: float = _SINGULAR_RTOL) -> float:
    """Scale-aware zero threshold: rtol * (geometric mean of row norms)^n."""
    norms = np.linalg.norm(lat.generator_matrix, axis=1)
    if np.any(norms == 0.0):
        return 0.0
    gm = float(np.exp(np.mean(np.log(norms))))
    return rtol * gm ** lat.n


def is_singular(
    lat: CirculantLattice,
    det_value: float | None = None,
    rtol: float = _SINGULAR_RTOL,
) -> bool:
    """Whether |det| falls at or below the scale-aware zero threshold.

    Pass rtol=RELAXED_SINGULAR_RTOL when classifying solver outputs of the
    relaxed system.
    """
    d = det_direct(lat) if det_value is None else det_value
    return abs(d) <= singularity_threshold(lat, rtol)


@dataclass(frozen=True)
class DetReport:
    """Cross-checked determinant values; det_closed is None when no closed
    form applies to the lattice at hand."""

    det_direct: float
    det_eigen_product: float
    det_closed: float | None
    abs_agreement: float


def make_det_report(lat: CirculantLattice, det_closed: float | None = None) -> DetReport:
    """Compute direct and eigenvalue determinants and their agreement.

    abs_agreement is the spread of the absolute values relative to the
    largest of them (0 when all coincide or everything is zero).
    """
    d_dir = det_direct(lat)
    d_eig = det_eigen(lat)
    vals = [abs(d_dir), abs(d_eig)]
    if det_closed is not None:
        vals.append(abs(det_closed))
    scale = max(vals)
    agreement = 0.0 if scale == 0.0 else (max(vals) - min(vals)) / scale
    return DetReport(
        det_direct=d_dir,
        det_eigen_product=d_eig,
        det_closed=det_closed,
        abs_agreement=agreement,
    )
