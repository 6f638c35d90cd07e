import math

import pytest

from cyclolat import (
    BEST_KNOWN_CENTER_DENSITY,
    SpecError,
    center_density,
    delta_closed_a4b,
    delta_closed_half,
    density_table,
    ref_An,
    ref_Dn,
)


def test_center_density_examples():
    # sqrt(2)^3 / 8 / 2
    assert math.isclose(center_density(2.0, 2.0, 3), 0.176777, rel_tol=1e-5)
    for n in (2, 4, 9):
        assert math.isclose(center_density(1.0, 1.0, n), 2.0 ** (-n), rel_tol=1e-12)
    with pytest.raises(ValueError):
        center_density(0.0, 1.0, 3)
    with pytest.raises(ValueError):
        center_density(1.0, 0.0, 3)
    with pytest.raises(ValueError):
        center_density(1.0, -2.0, 3)


def test_center_density_scale_invariance():
    base = center_density(2.0, 2.0, 3)
    for c in (0.5, 3.0):
        scaled = center_density(c * c * 2.0, abs(c) ** 3 * 2.0, 3)
        assert math.isclose(scaled, base, rel_tol=1e-12)


def test_delta_closed_a4b_values():
    for n in (3, 5, 7, 9, 35):
        assert delta_closed_a4b(n, 1) == ref_Dn(n)
    assert math.isclose(delta_closed_a4b(18, 2), 2.0 ** -11, rel_tol=1e-12)
    assert math.isclose(delta_closed_a4b(6, 2), 1.0 / 32.0, rel_tol=1e-12)
    assert math.isclose(delta_closed_a4b(12, 4), 1.0 / 1024.0, rel_tol=1e-12)


def test_delta_closed_a4b_errors():
    with pytest.raises(SpecError):
        delta_closed_a4b(4, 1)  # even quotient
    with pytest.raises(SpecError):
        delta_closed_a4b(6, 3)  # r0 beyond (n-1)/2
    with pytest.raises(SpecError):
        delta_closed_a4b(5, 0)


def test_delta_closed_half_values():
    assert math.isclose(delta_closed_half(2), 1.0 / (2.0 * math.sqrt(3.0)), rel_tol=1e-12)
    assert math.isclose(delta_closed_half(2), 0.288675, rel_tol=1e-5)
    assert math.isclose(delta_closed_half(4), 1.0 / 12.0, rel_tol=1e-12)
    assert delta_closed_half(4) < ref_An(4)
    with pytest.raises(SpecError):
        delta_closed_half(3)


def test_reference_densities():
    assert math.isclose(ref_Dn(5), 0.08839, rel_tol=1e-4)
    assert math.isclose(ref_An(2), 0.28868, rel_tol=1e-4)
    assert math.isclose(ref_An(18), 2.0 ** -9 / math.sqrt(19.0), rel_tol=1e-12)
    assert ref_An(18) < 1.0 / 2048.0


def test_crossover_against_zero_sum_family():
    for n in (6, 10, 14):
        assert delta_closed_a4b(n, 2) < ref_An(n)
    for n in (18, 22, 26, 30, 34):
        assert delta_closed_a4b(n, 2) > ref_An(n)


def test_density_table_rows():
    rows = {row.n: row for row in density_table(35)}
    assert len(rows) == 34
    assert math.isclose(rows[22].delta_ours, 1.0 / 8192.0, rel_tol=1e-12)
    assert math.isclose(rows[24].delta_ours, 1.0 / 1048576.0, rel_tol=1e-12)
    assert math.isclose(rows[7].delta_ours, 2.0 ** -4.5, rel_tol=1e-12)
    assert math.isclose(rows[35].delta_ours, 2.0 ** -18.5, rel_tol=1e-12)
    for n in range(3, 36, 2):
        assert rows[n].delta_ours == ref_Dn(n)
        assert rows[n].method == "a2eq4b-r0=1"
    for n in (2, 4, 8, 16, 32):
        assert rows[n].method == "half-n"
    assert rows[12].method == "a2eq4b-r0=4"
    assert rows[24].method == "a2eq4b-r0=8"
    with pytest.raises(ValueError):
        density_table(1)


def test_best_known_reference_data():
    assert BEST_KNOWN_CENTER_DENSITY[24] == 1.0
    assert BEST_KNOWN_CENTER_DENSITY[12] == 0.03704
    assert BEST_KNOWN_CENTER_DENSITY[7] == 0.0625
    rows = {row.n: row for row in density_table(40)}
    assert rows[36].best_known is None
