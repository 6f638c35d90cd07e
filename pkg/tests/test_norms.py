import math

import numpy as np
import pytest

from cyclolat import (
    DimensionError,
    FormKind,
    IndexRangeError,
    QuadForm,
    SpecError,
    build_lattice,
    d_form_eval,
    is_positive_definite,
    norm_full,
    norm_simplified,
    q_form_eval,
    singular_witness,
)


def direct_norm_sq(lat, x):
    """Oracle: multiply out x . G and take the squared Euclidean norm."""
    w = np.asarray(x, dtype=float) @ lat.generator_matrix
    return float(np.dot(w, w))


def test_norm_full_examples():
    rng = np.random.Generator(np.random.Philox(key=10))
    for n in (2, 3, 5, 8):
        lat = build_lattice(rng.uniform(-2, 2, n))
        e1 = np.eye(n, dtype=int)[0]
        assert math.isclose(norm_full(lat, e1), lat.vieta.norm_sq, rel_tol=1e-12)
        assert norm_full(lat, np.zeros(n, dtype=int)) == 0.0
    lat = build_lattice([1, 1, 0])
    # x.G = (1, 0, -1)
    assert math.isclose(norm_full(lat, [1, -1, 0]), 2.0, rel_tol=1e-12)


def test_norm_full_matches_direct_200():
    rng = np.random.Generator(np.random.Philox(key=11))
    for _ in range(200):
        n = int(rng.integers(2, 13))
        lat = build_lattice(rng.uniform(-2, 2, n))
        x = rng.integers(-5, 6, n)
        direct = direct_norm_sq(lat, x)
        assert math.isclose(norm_full(lat, x), direct, rel_tol=1e-9, abs_tol=1e-9)


def test_norm_full_dimension_mismatch():
    lat = build_lattice([1, 1, 0])
    with pytest.raises(DimensionError):
        norm_full(lat, [1, 0])


def test_norm_simplified_examples():
    # matches norm_full for u = (1,1,0): a^2 = 4b = 4
    assert norm_simplified(4.0, 1.0, 1, [1, 0, 0]) == 2.0
    assert norm_simplified(4.0, 1.0, 1, [0, 0, 0]) == 0.0
    # half distance uses the 4b coefficient: (a^2-2b)*2 + 4b = 12 at a^2 = 6b = 6
    assert norm_simplified(6.0, 1.0, 1, [1, 1]) == 12.0
    with pytest.raises(IndexRangeError):
        norm_simplified(4.0, 1.0, 2, [1, 0, 0])


def test_norm_simplified_on_solver_solutions(solved):
    rng = np.random.Generator(np.random.Philox(key=12))
    for n, r0 in [(3, 1), (5, 1), (6, 2), (9, 1)]:
        res = solved(n, r0)
        lat = build_lattice(res.u)
        for _ in range(40):
            x = rng.integers(-3, 4, n)
            full = norm_full(lat, x)
            simple = norm_simplified(res.a ** 2, res.b, r0, x)
            assert abs(full - simple) <= 1e-7 * max(1.0, abs(full))


def test_q_form_examples():
    assert q_form_eval(3, 1, [1, 0, 0]) == 1
    assert q_form_eval(3, 1, [1, -1, 0]) == 1
    # all ten wrapped pairs contribute 1
    assert q_form_eval(5, 2, [1, 1, 1, 1, 1]) == 10
    assert isinstance(q_form_eval(5, 2, [1, 1, 1, 1, 1]), int)


def test_q_form_range():
    with pytest.raises(IndexRangeError):
        q_form_eval(6, 3, [1, 0, 0, 0, 0, 0])
    with pytest.raises(DimensionError):
        q_form_eval(4, 1, [1, 0, 0])


def test_d_form_examples():
    rng = np.random.Generator(np.random.Philox(key=13))
    for _ in range(50):
        n = int(rng.integers(3, 10))
        r0 = int(rng.integers(1, (n - 1) // 2 + 1))
        a_sq = float(rng.uniform(0.5, 6.0))
        b = a_sq / 4.0
        x = rng.integers(-4, 5, n)
        dval = d_form_eval(a_sq, b, n, r0, x)
        assert math.isclose(dval, (a_sq / 2.0) * q_form_eval(n, r0, x), rel_tol=1e-12, abs_tol=1e-12)
    assert d_form_eval(4.0, 1.0, 5, 2, [0, 0, 0, 0, 0]) == 0.0
    with pytest.raises(IndexRangeError):
        d_form_eval(4.0, 1.0, 6, 3, [1, 0, 0, 0, 0, 0])


def test_d_form_square_decomposition_exact():
    # with a^2 = 4b the form is (a^2/4) * sum (x_i + x_j)^2 over the pairs
    rng = np.random.Generator(np.random.Philox(key=14))
    for n, r0 in [(3, 1), (5, 2), (7, 3), (9, 3)]:
        for _ in range(40):
            x = rng.integers(-4, 5, n)
            lhs = d_form_eval(4.0, 1.0, n, r0, x)
            pairs = [
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if j - i in (r0, n - r0)
            ]
            rhs = sum(float(x[i] + x[j]) ** 2 for i, j in pairs)
            assert lhs == rhs


def test_singular_witness_annihilates_form():
    for n, r0 in [(4, 1), (6, 1), (8, 1)]:
        x = singular_witness(n, r0)
        assert abs(d_form_eval(4.0, 1.0, n, r0, x)) <= 1e-9
    # half distance with gcd 3: two blocks of three coordinates
    x = singular_witness(6, 3)
    assert x.tolist() == [1, 0, 0, -1, 0, 0]
    assert abs(norm_simplified(4.0, 1.0, 3, x)) <= 1e-9
    with pytest.raises(SpecError):
        singular_witness(5, 1)


def test_q_form_positivity_exhaustive():
    # odd quotient n/gcd: the form is >= 1 away from the origin
    for n, r0 in [(3, 1), (5, 1), (5, 2), (6, 2)]:
        vals = np.arange(-4, 5, dtype=np.int64)
        grids = np.meshgrid(*([vals] * n), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        pts = pts[np.any(pts != 0, axis=1)]
        s = n - r0
        q = (
            np.einsum("ij,ij->i", pts, pts)
            + np.einsum("ij,ij->i", pts[:, :-r0], pts[:, r0:])
            + np.einsum("ij,ij->i", pts[:, :-s], pts[:, s:])
        )
        assert int(q.min()) >= 1
        spot = pts[len(pts) // 3]
        assert q_form_eval(n, r0, spot) == int(q[len(pts) // 3])


def test_q_form_positivity_sampled():
    rng = np.random.Generator(np.random.Philox(key=15))
    for n, r0 in [(7, 1), (9, 1), (9, 3), (15, 5)]:
        for _ in range(400):
            x = rng.integers(-4, 5, n)
            if np.any(x != 0):
                assert q_form_eval(n, r0, x) >= 1


def test_is_positive_definite_sufficient_and_numeric():
    chk = is_positive_definite(4.0, 1.0, 5, 1)
    assert chk.definite and chk.certificate == "sufficient-condition"
    chk = is_positive_definite(4.0, 1.0, 6, 2)
    assert chk.definite and chk.certificate == "sufficient-condition"
    # even quotient: singular at a^2 = 4b
    chk = is_positive_definite(4.0, 1.0, 4, 1)
    assert not chk.definite
    assert isinstance(chk.certificate, float) and abs(chk.certificate) <= 1e-12
    # half distance decided numerically: definite iff a^2 > 4b
    assert is_positive_definite(6.0, 1.0, 6, 3).definite
    assert not is_positive_definite(4.0, 1.0, 6, 3).definite
    assert is_positive_definite(2.0, -1.0, 4, 2).definite  # a^2 = -2b case


def test_quadform_type():
    q = QuadForm(n=5, r0=2, kind=FormKind.Q_FORM)
    assert q.evaluate([1, 0, 0, 0, 0]) == 1
    assert not q.half_case
    d = QuadForm(n=6, r0=3, kind=FormKind.D_FORM, a_sq=6.0, b=1.0)
    assert d.half_case
    assert d.evaluate([1, 1, 0, 0, 0, 0]) == norm_simplified(6.0, 1.0, 3, [1, 1, 0, 0, 0, 0])
    with pytest.raises(SpecError):
        QuadForm(n=5, r0=3, kind=FormKind.Q_FORM)
    with pytest.raises(SpecError):
        QuadForm(n=5, r0=2, kind=FormKind.Q_FORM, a_sq=4.0)
    with pytest.raises(SpecError):
        QuadForm(n=5, r0=2, kind=FormKind.D_FORM)
