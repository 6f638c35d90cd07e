"""Exact minimum-norm and kissing-number computation by complete scans.

Any coefficient vector x with ||x.G||^2 <= T satisfies
||x||^2 <= T / mu_min, with mu_min the smallest Gram eigenvalue, so
scanning the integer points of that ball (a subset of the box of
half-width B = ceil(sqrt(T/mu_min))) is complete.  The same bound applied
to the unit-coefficient quadratic form counts its level-1 set exactly in
integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import CirculantLattice
from .determinants import circulant_eigenvalues, is_singular
from .errors import BudgetExceededError, SingularLatticeError, SpecError

DEFAULT_DIM_CAP = 14
DEFAULT_BOX_CAP = 6

# norms within this relative distance of the smallest are grouped as minimal
_MIN_GROUP_RTOL = 1e-9
# slack applied to the real ball radius before integer truncation
_RADIUS_SLACK = 1e-9


@dataclass(frozen=True)
class EnumResult:
    """Minimum squared norm, its multiplicity, and the coefficient vectors
    achieving it (sorted lexicographically; closed under negation)."""

    min_norm_sq: float
    kissing: int
    minimal_coeff_vectors: np.ndarray
    bound_used: int


def _integer_ball(n: int, radius_sq: int) -> np.ndarray:
    """All integer vectors of dimension n with squared norm <= radius_sq,
    origin included, built coordinate by coordinate."""
    half = math.isqrt(radius_sq)
    vals = np.arange(-half, half + 1, dtype=np.int64)
    pts = np.zeros((1, 0), dtype=np.int64)
    sq = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        m = pts.shape[0]
        rep = np.repeat(pts, vals.shape[0], axis=0)
        col = np.tile(vals, m)
        nsq = np.repeat(sq, vals.shape[0]) + col * col
        keep = nsq <= radius_sq
        pts = np.hstack([rep[keep], col[keep, None]])
        sq = nsq[keep]
    return pts


def _lex_sorted(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def enumerate_short(
    lat: CirculantLattice,
    target: float | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
    box_cap: int = DEFAULT_BOX_CAP,
) -> EnumResult:
    """Exact minimum norm and full minimal set of the lattice.

    target bounds the norms of interest; it defaults to the smallest basis
    row norm, which always dominates the minimum.  Raises when the Gram
    matrix is singular or the implied scan exceeds the dimension/box caps.
    """
    n = lat.n
    gram_eigs = np.abs(circulant_eigenvalues(lat)) ** 2
    if is_singular(lat):
        raise SingularLatticeError("Gram matrix is singular within tolerance; no finite minimum set")
    mu_min = float(np.min(gram_eigs))
    row_min = float(np.min(np.einsum("ij,ij->i", lat.generator_matrix, lat.generator_matrix)))
    t = row_min if target is None else float(target)
    radius_sq = t / mu_min
    # ceil(sqrt(radius_sq)) without floating sqrt fuzz
    bound = math.isqrt(int(radius_sq))
    if bound * bound < radius_sq:
        bound += 1
    if n > dim_cap or bound > box_cap:
        raise BudgetExceededError(
            f"scan of box half-width {bound} in dimension {n} exceeds caps "
            f"(dim_cap={dim_cap}, box_cap={box_cap})"
        )
    pts = _integer_ball(n, int(radius_sq * (1.0 + _RADIUS_SLACK)))
    pts = pts[np.any(pts != 0, axis=1)]
    if pts.shape[0] == 0:
        raise ValueError(f"target {t!r} admits no nonzero coefficient vector")
    x = pts.astype(float)
    norms = np.einsum("ij,ij->i", x @ lat.gram, x)
    min_norm = float(np.min(norms))
    if min_norm > t * (1.0 + _MIN_GROUP_RTOL):
        raise ValueError(f"target {t!r} lies below the minimum norm {min_norm!r}")
    minimal = pts[norms <= min_norm * (1.0 + _MIN_GROUP_RTOL)]
    return EnumResult(
        min_norm_sq=min_norm,
        kissing=int(minimal.shape[0]),
        minimal_coeff_vectors=_lex_sorted(minimal),
        bound_used=bound,
    )


def kissing_by_qform(n: int, r0: int) -> int:
    """Count integer vectors where sum(x_i^2) + wrapped_pair_sum(r0, x) = 1.

    This equals the kissing number of any lattice from the a^2 = 4b regime
    at (n, r0).  The count is exact: the form's smallest eigenvalue bounds
    the candidates to a finite ball, and evaluation is integer arithmetic.
    """
    if not 1 <= r0 <= (n - 1) // 2:
        raise SpecError(f"r0 must satisfy 1 <= r0 <= {(n - 1) // 2}, got {r0}")
    if (n // math.gcd(r0, n)) % 2 == 0:
        raise SpecError(f"n/gcd(r0,n) = {n // math.gcd(r0, n)} must be odd")
    nu = 1.0 + np.cos(2.0 * np.pi * r0 * np.arange(n) / n)
    nu_min = float(np.min(nu))
    radius_sq = int((1.0 / nu_min) * (1.0 + _RADIUS_SLACK))
    pts = _integer_ball(n, radius_sq)
    s = n - r0
    values = (
        np.einsum("ij,ij->i", pts, pts)
        + np.einsum("ij,ij->i", pts[:, :-r0], pts[:, r0:])
        + np.einsum("ij,ij->i", pts[:, :-s], pts[:, s:])
    )
    return int(np.count_nonzero(values == 1))


def oracle_min(lat: CirculantLattice, box: int) -> float:
    """Plain exhaustive minimum of ||x.G||^2 over nonzero x with |x_i| <= box.

    No eigenvalue bound is used; this is the independent check of the
    ball-scan completeness argument on small instances.
    """
    if box < 1:
        raise ValueError(f"box must be >= 1, got {box}")
    n = lat.n
    gram = lat.gram
    vals = np.arange(-box, box + 1, dtype=np.int64)
    # split coordinates so the materialized tail grid stays small
    tail_len = n
    while tail_len > 1 and (2 * box + 1) ** tail_len > 4_000_000:
        tail_len -= 1
    head_len = n - tail_len
    grids = np.meshgrid(*([vals] * tail_len), indexing="ij")
    tails = np.stack([g.ravel() for g in grids], axis=1).astype(float)
    tail_quad = np.einsum("ij,ij->i", tails @ gram[head_len:, head_len:], tails)
    best = math.inf
    for head in product(vals.tolist(), repeat=head_len):
        h = np.array(head, dtype=float)
        norms = tail_quad
        if head_len:
            head_quad = float(h @ gram[:head_len, :head_len] @ h)
            norms = norms + 2.0 * (tails @ (gram[head_len:, :head_len] @ h)) + head_quad
            if not any(head):
                norms = norms.copy()
                norms[np.all(tails == 0, axis=1)] = math.inf
        else:
            norms = norms.copy()
            norms[np.all(tails == 0, axis=1)] = math.inf
        m = float(np.min(norms))
        if m < best:
            best = m
    return best
