import math

import numpy as np
import pytest

from cyclolat import (
    RELAXED_SINGULAR_RTOL,
    SpecError,
    SystemSpec,
    Variant,
    build_lattice,
    det_direct,
    is_singular,
    pair_sum_wrapped,
    r0_optimal,
    residual,
    solve,
)
from test_core import NUMERIC_U5


def test_residual_hand_values():
    spec = SystemSpec(n=3, r0=1)
    assert residual(spec, [1.0, 1.0, 0.0]) == 0.0
    # zero vector is rejected by the pin: (0 - (-2))^2
    assert residual(spec, [0.0, 0.0, 0.0]) == 4.0
    # n=2 half system at u=(1,1): a=-2 so the pin term vanishes, a^2-6b = -2
    spec = SystemSpec(n=2, r0=1, variant=Variant.HALF_6B)
    assert residual(spec, [1.0, 1.0]) == 4.0


def test_residual_numeric_vector_unpinned():
    spec = SystemSpec(n=5, r0=1, scale_pin=None)
    assert residual(spec, NUMERIC_U5) < 1e-4


def test_solve_n5_converges(solved):
    res = solved(5, 1)
    assert res.converged
    assert res.residual < 1e-16
    assert abs(res.a - (-2.0)) <= 1e-6
    assert math.isclose(res.b, 1.0, rel_tol=1e-6)


def test_solve_determinism():
    spec = SystemSpec(n=7, r0=1, rng_seed=42)
    r1, r2 = solve(spec), solve(spec)
    assert np.array_equal(r1.u.entries, r2.u.entries)
    assert r1.residual == r2.residual
    assert r1.a == r2.a and r1.b == r2.b
    assert r1.starts_used == r2.starts_used


def test_converged_bounds(solved):
    eps = 1e-16
    for n, r0 in [(5, 1), (9, 1), (12, 4)]:
        res = solved(n, r0)
        assert res.converged
        for r in range(1, n // 2 + 1):
            if r != r0:
                assert abs(pair_sum_wrapped(r, res.u.entries)) <= math.sqrt(eps)
        # pinned |a| = 2 turns the constraint into |a^2 - 4b| <= 4 sqrt(eps)
        assert abs(res.a ** 2 - 4.0 * res.b) <= 4.0 * math.sqrt(eps)


def test_unpinned_residual_homogeneity():
    rng = np.random.Generator(np.random.Philox(key=30))
    for n, r0 in [(5, 1), (7, 2), (12, 4)]:
        spec = SystemSpec(n=n, r0=r0, scale_pin=None)
        for _ in range(20):
            u = rng.uniform(-2, 2, n)
            base = residual(spec, u)
            for c in (0.5, 2.0):
                scaled = residual(spec, c * u)
                assert math.isclose(scaled, c ** 4 * base, rel_tol=1e-9)


def test_negative_control_singular_instance(solved):
    res = solved(4, 1, allow_singular=True, seed=5)
    assert res.converged
    lat = build_lattice(res.u)
    assert is_singular(lat, det_value=det_direct(lat), rtol=RELAXED_SINGULAR_RTOL)


def test_half_variants(solved):
    res = solved(2, 1, variant=Variant.HALF_6B)
    assert res.converged
    ratio = res.u.entries[0] / res.u.entries[1]
    assert min(abs(ratio - (2 + math.sqrt(3))), abs(ratio - (2 - math.sqrt(3)))) <= 1e-7
    assert abs(res.a ** 2 - 6.0 * res.b) <= 1e-7

    res = solved(2, 1, variant=Variant.HALF_MINUS_2B)
    assert res.converged
    assert res.b < 0.0
    assert abs(res.a ** 2 + 2.0 * res.b) <= 1e-7


def test_r0_optimal():
    assert r0_optimal(5) == 1
    assert r0_optimal(12) == 4
    assert r0_optimal(6) == 2
    assert r0_optimal(24) == 8
    for bad in (2, 4, 8, 16, 32):
        with pytest.raises(SpecError):
            r0_optimal(bad)
    for n in range(3, 65):
        if n & (n - 1) == 0:
            continue
        r0 = r0_optimal(n)
        assert 1 <= r0 <= (n - 1) // 2
        assert (n // math.gcd(r0, n)) % 2 == 1


def test_spec_validation():
    with pytest.raises(SpecError):
        SystemSpec(n=1, r0=1)
    with pytest.raises(SpecError):
        SystemSpec(n=6, r0=3)  # r0 = n/2 not allowed in the a2eq4b variant
    with pytest.raises(SpecError):
        SystemSpec(n=4, r0=1)  # singular without the override
    SystemSpec(n=4, r0=1, allow_singular=True)
    with pytest.raises(SpecError):
        SystemSpec(n=5, r0=2, variant=Variant.HALF_6B)  # needs r0 = n/2
    with pytest.raises(SpecError):
        SystemSpec(n=5, r0=1, epsilon=0.0)
    with pytest.raises(SpecError):
        SystemSpec(n=5, r0=1, max_starts=0)


def test_non_convergence_reported_not_raised():
    res = solve(SystemSpec(n=12, r0=4, epsilon=1e-60, max_starts=2, rng_seed=0))
    assert not res.converged
    assert res.starts_used == 2
    assert res.residual > 0.0
