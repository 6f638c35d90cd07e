"""Generating vectors, circular shifts, pair sums and circulant matrices.

A generating vector u of dimension n defines the lattice spanned by u and
its n-1 right circular shifts.  Its generator matrix is circulant, and all
inner products between shifted copies of u reduce to pair sums over index
pairs at a fixed circular distance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, IndexRangeError, NumericInconsistencyError

# b = sum of wrapped pair sums must hold to this relative tolerance.
_VIETA_CHECK_RTOL = 1e-10


def _as_vector(x) -> np.ndarray:
    if isinstance(x, GeneratorVector):
        return x.entries
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"expected a 1-d vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class GeneratorVector:
    """A real n-vector, n >= 2, with all entries finite."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 1 or arr.shape[0] < 2:
            raise DimensionError(f"generating vector needs n >= 2 entries, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("generating vector entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class VietaCoefficients:
    """Second-highest and third-highest coefficients of prod(t - u_i).

    a = -sum(u_i), b = sum_{i<j} u_i u_j, and norm_sq = a^2 - 2b = sum(u_i^2).
    """

    a: float
    b: float
    norm_sq: float


def rot(x, k: int = 1) -> np.ndarray:
    """Apply k right circular shifts: (x_1,...,x_n) -> (x_n,x_1,...,x_{n-1})."""
    v = _as_vector(x)
    if v.shape[0] < 2:
        raise DimensionError("rot needs dimension >= 2")
    if k < 0:
        raise IndexRangeError("shift count must be non-negative")
    return np.roll(v, k % v.shape[0])


def pair_sum_plain(r: int, x) -> float:
    """Sum of x_i * x_j over pairs i < j at exact index distance j - i = r."""
    v = _as_vector(x)
    n = v.shape[0]
    if not 1 <= r <= n - 1:
        raise IndexRangeError(f"plain pair-sum distance must satisfy 1 <= r <= {n - 1}, got {r}")
    return float(np.dot(v[:-r], v[r:]))


def pair_sum_wrapped(r: int, x) -> float:
    """Sum of x_i * x_j over pairs i < j with j - i in {r, n-r}, each pair once.

    For r = n/2 the two offsets coincide, so the pairs are counted once and
    the result equals the plain pair sum at distance n/2.
    """
    v = _as_vector(x)
    n = v.shape[0]
    if not 1 <= r <= n // 2:
        raise IndexRangeError(f"wrapped pair-sum distance must satisfy 1 <= r <= {n // 2}, got {r}")
    if 2 * r == n:
        return pair_sum_plain(r, v)
    return pair_sum_plain(r, v) + pair_sum_plain(n - r, v)


def shift_inner(u, k1: int, k2: int) -> float:
    """Inner product of the k1-th and k2-th shifts of u, via pair sums.

    Requires 0 <= k1 < k2 <= n-1; equals the plain pair sum at distance
    k2 - k1 plus the one at distance n - (k2 - k1).
    """
    v = _as_vector(u)
    n = v.shape[0]
    if not 0 <= k1 < k2 <= n - 1:
        raise IndexRangeError(f"need 0 <= k1 < k2 <= {n - 1}, got k1={k1}, k2={k2}")
    d = k2 - k1
    return pair_sum_plain(d, v) + pair_sum_plain(n - d, v)


def vieta(u) -> VietaCoefficients:
    """Coefficients a, b of prod(t - u_i) plus the squared norm a^2 - 2b.

    Cross-checks that b equals the sum of all wrapped pair sums before
    returning; a failure indicates numeric corruption, not bad input.
    """
    v = _as_vector(u)
    n = v.shape[0]
    if n < 2:
        raise DimensionError("need n >= 2")
    a = -float(np.sum(v))
    # group the pair products by index distance; exact up to rounding
    b = sum(pair_sum_plain(r, v) for r in range(1, n))
    norm_sq = a * a - 2.0 * b
    wrapped = [pair_sum_wrapped(r, v) for r in range(1, n // 2 + 1)]
    scale = max(1.0, abs(b), sum(abs(p) for p in wrapped))
    if abs(b - sum(wrapped)) > _VIETA_CHECK_RTOL * scale:
        raise NumericInconsistencyError(
            f"pair-sum decomposition of b failed: b={b!r}, wrapped sum={sum(wrapped)!r}"
        )
    return VietaCoefficients(a=a, b=b, norm_sq=norm_sq)


@dataclass(frozen=True)
class CirculantLattice:
    """A lattice given by a vector u and its circular shifts.

    generator_matrix row i is rot^i(u); gram is generator * generator^T.
    """

    u: GeneratorVector
    generator_matrix: np.ndarray
    gram: np.ndarray
    vieta: VietaCoefficients

    @property
    def n(self) -> int:
        return self.u.n

    def wrapped_pair_sums(self) -> list[float]:
        """All wrapped pair sums of u for distances 1..floor(n/2)."""
        return [pair_sum_wrapped(r, self.u.entries) for r in range(1, self.n // 2 + 1)]


def build_lattice(u) -> CirculantLattice:
    """Assemble the circulant generator matrix and Gram matrix for u."""
    gv = u if isinstance(u, GeneratorVector) else GeneratorVector(np.asarray(u, dtype=float))
    n = gv.n
    gen = np.empty((n, n), dtype=float)
    for i in range(n):
        gen[i] = np.roll(gv.entries, i)
    gram = gen @ gen.T
    gen.setflags(write=False)
    gram.setflags(write=False)
    return CirculantLattice(u=gv, generator_matrix=gen, gram=gram, vieta=vieta(gv))
