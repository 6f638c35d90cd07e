import pytest

from cyclolat import SystemSpec, Variant, solve


@pytest.fixture(scope="session")
def solved():
    """Memoized solver runs shared across the suite (fixed seeds)."""
    cache = {}

    def get(n, r0, variant=Variant.A2_EQ_4B, seed=7, **kwargs):
        key = (n, r0, variant, seed, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = solve(SystemSpec(n=n, r0=r0, variant=variant, rng_seed=seed, **kwargs))
        return cache[key]

    return get
