"""Self-contained invariant suite behind the `verify` subcommand.

Each check replays one of the library's mathematical guarantees at fixed
seeds and returns the first counterexample on failure.  `quick` skips the
scans that enumerate lattices above dimension 8.  `tamper` flips the sign
of one wrapped pair sum inside the Vieta decomposition check; it exists so
the harness itself can be shown to catch errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import density, determinants, enumeration, norms, solver
from .core import build_lattice, pair_sum_plain, pair_sum_wrapped, rot, shift_inner, vieta
from .solver import SystemSpec, Variant

_SEED = 2024


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


class VerifyContext:
    def __init__(self, quick: bool = False, tamper: bool = False):
        self.quick = quick
        self.tamper = tamper
        self._solves: dict[tuple, solver.SolveResult] = {}

    def solved(self, n: int, r0: int, variant: Variant = Variant.A2_EQ_4B, **kw) -> solver.SolveResult:
        key = (n, r0, variant, tuple(sorted(kw.items())))
        if key not in self._solves:
            self._solves[key] = solver.solve(SystemSpec(n=n, r0=r0, variant=variant, rng_seed=7, **kw))
        return self._solves[key]


def _rel(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def _pairs_oracle(x: np.ndarray, offsets: set[int]) -> float:
    n = x.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if j - i in offsets:
                total += x[i] * x[j]
    return total


def check_pair_sum_identities(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED))
    for _ in range(100):
        n = int(rng.integers(2, 11))
        u = rng.uniform(-2, 2, n)
        for r in range(1, n // 2 + 1):
            expect = _pairs_oracle(u, {r, n - r})
            got = pair_sum_wrapped(r, u)
            if abs(got - expect) > 1e-10 * max(1.0, abs(expect)):
                return CheckResult("pair-sum-identities", False, f"n={n} r={r}: {got} != {expect}")
            if 2 * r != n and _rel(got, pair_sum_plain(r, u) + pair_sum_plain(n - r, u)) > 1e-10:
                return CheckResult("pair-sum-identities", False, f"plain split broke at n={n} r={r}")
            # symmetry under r -> n-r, checked against the set oracle
            if abs(expect - _pairs_oracle(u, {n - r, n - (n - r)})) > 1e-12 * max(1.0, abs(expect)):
                return CheckResult("pair-sum-identities", False, f"symmetry broke at n={n} r={r}")
    return CheckResult("pair-sum-identities", True)


def check_shift_inner(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 1))
    for _ in range(100):
        n = int(rng.integers(2, 11))
        u = rng.uniform(-2, 2, n)
        k1 = int(rng.integers(0, n - 1))
        k2 = int(rng.integers(k1 + 1, n))
        got = shift_inner(u, k1, k2)
        expect = float(np.dot(rot(u, k1), rot(u, k2)))
        if abs(got - expect) > 1e-10 * max(1.0, abs(expect)):
            return CheckResult("shift-inner-lemma", False, f"n={n} k1={k1} k2={k2}: {got} != {expect}")
    return CheckResult("shift-inner-lemma", True)


def check_vieta_decomposition(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 2))
    for _ in range(100):
        n = int(rng.integers(2, 11))
        u = rng.uniform(-2, 2, n)
        coeffs = vieta(u)
        wrapped = [pair_sum_wrapped(r, u) for r in range(1, n // 2 + 1)]
        if ctx.tamper:
            wrapped[0] = -wrapped[0]
        scale = max(1.0, abs(coeffs.b))
        if abs(coeffs.b - sum(wrapped)) > 1e-10 * scale:
            return CheckResult(
                "vieta-pair-sum-decomposition", False,
                f"n={n} u={u.tolist()}: b={coeffs.b} vs sum={sum(wrapped)}",
            )
        if abs(coeffs.norm_sq - float(np.dot(u, u))) > 1e-10 * max(1.0, coeffs.norm_sq):
            return CheckResult("vieta-pair-sum-decomposition", False, f"norm identity broke at n={n}")
    return CheckResult("vieta-pair-sum-decomposition", True)


def check_gram_structure(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 3))
    for _ in range(50):
        n = int(rng.integers(2, 11))
        lat = build_lattice(rng.uniform(-2, 2, n))
        g = lat.gram
        if not np.allclose(g, g.T, rtol=0, atol=1e-12):
            return CheckResult("gram-circulant-symmetry", False, f"asymmetric at n={n}")
        for i in range(n):
            for j in range(n):
                if abs(g[i, j] - g[0, (j - i) % n]) > 1e-10 * max(1.0, abs(g[0, 0])):
                    return CheckResult("gram-circulant-symmetry", False, f"not circulant at n={n}")
        for k in range(1, n):
            expect = pair_sum_plain(k, lat.u.entries) + pair_sum_plain(n - k, lat.u.entries)
            if abs(g[0, k] - expect) > 1e-10 * max(1.0, abs(expect)):
                return CheckResult("gram-circulant-symmetry", False, f"pair-sum row broke at n={n} k={k}")
    return CheckResult("gram-circulant-symmetry", True)


def check_norm_expansion(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 4))
    for _ in range(200):
        n = int(rng.integers(2, 13))
        lat = build_lattice(rng.uniform(-2, 2, n))
        x = rng.integers(-5, 6, n)
        w = x @ lat.generator_matrix
        direct = float(np.dot(w, w))
        got = norms.norm_full(lat, x)
        if abs(got - direct) > 1e-9 * max(1.0, direct):
            return CheckResult("norm-expansion", False, f"n={n} x={x.tolist()}: {got} != {direct}")
    return CheckResult("norm-expansion", True)


def check_norm_simplified(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 5))
    for n, r0, variant in [(3, 1, Variant.A2_EQ_4B), (5, 2, Variant.A2_EQ_4B),
                           (6, 2, Variant.A2_EQ_4B), (4, 2, Variant.HALF_6B)]:
        res = ctx.solved(n, r0, variant)
        lat = build_lattice(res.u)
        for _ in range(40):
            x = rng.integers(-3, 4, n)
            full = norms.norm_full(lat, x)
            simple = norms.norm_simplified(res.a * res.a, res.b, r0, x)
            if abs(full - simple) > 1e-7 * max(1.0, abs(full)):
                return CheckResult("norm-simplified-on-solutions", False,
                                   f"(n={n},r0={r0}): {full} vs {simple} at x={x.tolist()}")
    return CheckResult("norm-simplified-on-solutions", True)


def check_d_form_decomposition(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 6))
    for n, r0 in [(3, 1), (5, 1), (5, 2), (7, 2), (9, 3)]:
        a_sq, b = 4.0, 1.0
        for _ in range(40):
            x = rng.integers(-4, 5, n)
            lhs = norms.d_form_eval(a_sq, b, n, r0, x)
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if (j - i) % n in (r0, n - r0)]
            rhs = (a_sq / 4.0) * sum(float(x[i] + x[j]) ** 2 for i, j in pairs)
            if lhs != rhs:
                return CheckResult("d-form-square-decomposition", False,
                                   f"(n={n},r0={r0}) x={x.tolist()}: {lhs} != {rhs}")
    return CheckResult("d-form-square-decomposition", True)


def check_kernel_witness(ctx: VerifyContext) -> CheckResult:
    a_sq, b = 4.0, 1.0
    for n, r0 in [(4, 1), (6, 1), (8, 1), (6, 3)]:
        x = norms.singular_witness(n, r0)
        if 2 * r0 == n:
            value = norms.norm_simplified(a_sq, b, r0, x)
        else:
            value = norms.d_form_eval(a_sq, b, n, r0, x)
        if abs(value) > 1e-9:
            return CheckResult("singular-kernel-witness", False, f"(n={n},r0={r0}): D x = {value}")
    return CheckResult("singular-kernel-witness", True)


def _integer_box(n: int, half: int) -> np.ndarray:
    vals = np.arange(-half, half + 1, dtype=np.int64)
    grids = np.meshgrid(*([vals] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def check_q_form_positivity(ctx: VerifyContext) -> CheckResult:
    for n, r0 in [(3, 1), (5, 1), (5, 2), (6, 2)]:
        pts = _integer_box(n, 4)
        pts = pts[np.any(pts != 0, axis=1)]
        s = n - r0
        values = (
            np.einsum("ij,ij->i", pts, pts)
            + np.einsum("ij,ij->i", pts[:, :-r0], pts[:, r0:])
            + np.einsum("ij,ij->i", pts[:, :-s], pts[:, s:])
        )
        if int(values.min()) < 1:
            bad = pts[int(np.argmin(values))]
            return CheckResult("q-form-positivity", False,
                               f"(n={n},r0={r0}) x={bad.tolist()} gives {int(values.min())}")
        # spot-check the vectorized evaluation against the scalar one
        for idx in (0, len(pts) // 2, len(pts) - 1):
            if norms.q_form_eval(n, r0, pts[idx]) != int(values[idx]):
                return CheckResult("q-form-positivity", False, f"vectorized mismatch at (n={n},r0={r0})")
    rng = np.random.Generator(np.random.Philox(key=_SEED + 7))
    for n, r0 in [(7, 1), (9, 1), (9, 3), (15, 5)]:
        for _ in range(500):
            x = rng.integers(-4, 5, n)
            if np.any(x != 0) and norms.q_form_eval(n, r0, x) < 1:
                return CheckResult("q-form-positivity", False, f"(n={n},r0={r0}) x={x.tolist()}")
    return CheckResult("q-form-positivity", True)


def check_positive_definiteness(ctx: VerifyContext) -> CheckResult:
    cases = [
        (5, 1, 4.0, 1.0, True),
        (6, 2, 4.0, 1.0, True),
        (4, 1, 4.0, 1.0, False),
        (6, 3, 6.0, 1.0, True),   # half distance, a^2 = 6b > 4b
        (6, 3, 4.0, 1.0, False),  # half distance at a^2 = 4b is singular
    ]
    for n, r0, a_sq, b, expect in cases:
        got = norms.is_positive_definite(a_sq, b, n, r0).definite
        if got != expect:
            return CheckResult("positive-definiteness", False,
                               f"(n={n},r0={r0},a^2={a_sq},b={b}): got {got}, expected {expect}")
    return CheckResult("positive-definiteness", True)


def check_det_direct_vs_eigen(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 8))
    for _ in range(200):
        n = int(rng.integers(2, 17))
        lat = build_lattice(rng.uniform(-2, 2, n))
        dd, de = determinants.det_direct(lat), determinants.det_eigen(lat)
        if _rel(abs(dd), abs(de)) > 1e-9:
            return CheckResult("det-direct-vs-eigen", False,
                               f"n={n}: direct {dd} vs eigen {de}")
    return CheckResult("det-direct-vs-eigen", True)


def check_det_closed_forms(ctx: VerifyContext) -> CheckResult:
    for n, r0 in [(3, 1), (5, 1), (5, 2), (6, 2), (7, 1), (9, 1), (10, 2), (12, 4)]:
        res = ctx.solved(n, r0)
        lat = build_lattice(res.u)
        dd = determinants.det_direct(lat)
        closed = determinants.det_closed_a4b(res.a, n, r0)
        if _rel(abs(dd), closed) > 1e-6:
            return CheckResult("det-closed-forms", False,
                               f"(n={n},r0={r0}): |direct|={abs(dd)} vs a4b={closed}")
        vanish = determinants.det_closed_vanishing(res.a, res.b, n, r0)
        if _rel(abs(dd), abs(vanish.value)) > 1e-6:
            return CheckResult("det-closed-forms", False,
                               f"(n={n},r0={r0}): |direct|={abs(dd)} vs vanishing={vanish.value}")
    return CheckResult("det-closed-forms", True)


def check_singularity_criterion(ctx: VerifyContext) -> CheckResult:
    res = ctx.solved(4, 1, allow_singular=True)
    lat = build_lattice(res.u)
    dd = determinants.det_direct(lat)
    bound = determinants.singularity_threshold(lat, determinants.RELAXED_SINGULAR_RTOL)
    if abs(dd) > bound:
        return CheckResult("singularity-criterion", False,
                           f"(4,1) relaxed solution has |det|={abs(dd)} > {bound}")
    for n, r0 in [(5, 1), (6, 2), (9, 3)]:
        res = ctx.solved(n, r0)
        lat = build_lattice(res.u)
        dd = determinants.det_direct(lat)
        closed = determinants.det_closed_a4b(res.a, n, r0)
        if abs(dd) < 0.5 * closed:
            return CheckResult("singularity-criterion", False,
                               f"(n={n},r0={r0}): |det|={abs(dd)} collapsed below formula {closed}")
    return CheckResult("singularity-criterion", True)


def check_det_invariances(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 9))
    for _ in range(30):
        n = int(rng.integers(2, 11))
        u = rng.uniform(-2, 2, n)
        base = determinants.det_direct(build_lattice(u))
        for k in range(1, n):
            dk = determinants.det_direct(build_lattice(rot(u, k)))
            if _rel(abs(dk), abs(base)) > 1e-9:
                return CheckResult("det-invariances", False, f"rotation changed |det| at n={n} k={k}")
        for c in (0.5, 3.0):
            dc = determinants.det_direct(build_lattice(c * u))
            if _rel(dc, c ** n * base) > 1e-9:
                return CheckResult("det-invariances", False, f"scaling broke at n={n} c={c}")
    return CheckResult("det-invariances", True)


def check_solver_determinism(ctx: VerifyContext) -> CheckResult:
    spec = SystemSpec(n=5, r0=1, rng_seed=11)
    r1, r2 = solver.solve(spec), solver.solve(spec)
    if not (np.array_equal(r1.u.entries, r2.u.entries) and r1.residual == r2.residual
            and r1.starts_used == r2.starts_used):
        return CheckResult("solver-determinism", False, "two identical runs disagreed")
    return CheckResult("solver-determinism", True)


def check_solver_bounds(ctx: VerifyContext) -> CheckResult:
    eps = 1e-16
    for n, r0 in [(5, 1), (9, 1), (12, 4)]:
        res = ctx.solved(n, r0)
        if not res.converged or res.residual >= eps:
            return CheckResult("solver-converged-bounds", False, f"(n={n},r0={r0}) did not converge")
        for r in range(1, n // 2 + 1):
            if r != r0 and abs(pair_sum_wrapped(r, res.u.entries)) > math.sqrt(eps):
                return CheckResult("solver-converged-bounds", False,
                                   f"(n={n},r0={r0}): pair sum at r={r} above sqrt(eps)")
        if abs(res.a ** 2 - 4.0 * res.b) > 4.0 * math.sqrt(eps):
            return CheckResult("solver-converged-bounds", False,
                               f"(n={n},r0={r0}): a^2-4b = {res.a ** 2 - 4 * res.b}")
        if abs(res.a - (-2.0)) > 1e-6:
            return CheckResult("solver-converged-bounds", False, f"(n={n},r0={r0}): pin violated")
    return CheckResult("solver-converged-bounds", True)


def check_solver_homogeneity(ctx: VerifyContext) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=_SEED + 10))
    for n, r0 in [(5, 1), (7, 2), (12, 4)]:
        spec = SystemSpec(n=n, r0=r0, scale_pin=None)
        for _ in range(20):
            u = rng.uniform(-2, 2, n)
            base = solver.residual(spec, u)
            for c in (0.5, 2.0):
                scaled = solver.residual(spec, c * u)
                if _rel(scaled, c ** 4 * base) > 1e-9:
                    return CheckResult("solver-homogeneity", False,
                                       f"(n={n},r0={r0},c={c}): {scaled} != c^4 * {base}")
    return CheckResult("solver-homogeneity", True)


def _enum_instances(ctx: VerifyContext) -> list[tuple[int, int]]:
    cases = [(3, 1), (5, 1), (5, 2), (6, 2), (7, 1)]
    if not ctx.quick:
        cases += [(9, 1), (10, 2), (12, 4)]
    return cases


def check_min_norm_and_kissing(ctx: VerifyContext) -> CheckResult:
    for n, r0 in _enum_instances(ctx):
        res = ctx.solved(n, r0)
        lat = build_lattice(res.u)
        got = enumeration.enumerate_short(lat)
        predicted = res.a ** 2 / 2.0
        if _rel(got.min_norm_sq, predicted) > 1e-6:
            return CheckResult("min-norm-and-kissing", False,
                               f"(n={n},r0={r0}): min {got.min_norm_sq} vs a^2/2 {predicted}")
        expected = enumeration.kissing_by_qform(n, r0)
        if got.kissing != expected:
            return CheckResult("min-norm-and-kissing", False,
                               f"(n={n},r0={r0}): kissing {got.kissing} != {expected}")
    return CheckResult("min-norm-and-kissing", True)


def check_minimal_set_structure(ctx: VerifyContext) -> CheckResult:
    res = ctx.solved(5, 1)
    lat = build_lattice(res.u)
    got = enumeration.enumerate_short(lat)
    vecs = {tuple(v) for v in got.minimal_coeff_vectors.tolist()}
    if got.kissing % 2 != 0:
        return CheckResult("minimal-set-structure", False, "odd kissing count")
    for v in vecs:
        if tuple(-c for c in v) not in vecs:
            return CheckResult("minimal-set-structure", False, f"negation of {v} missing")
        if tuple(np.roll(np.array(v), 1)) not in vecs:
            return CheckResult("minimal-set-structure", False, f"rotation of {v} missing")
    loose = enumeration.enumerate_short(lat, target=2.0 * float(np.dot(res.u.entries, res.u.entries)))
    if loose.kissing != got.kissing or _rel(loose.min_norm_sq, got.min_norm_sq) > 1e-12:
        return CheckResult("minimal-set-structure", False, "result changed under loosened target")
    return CheckResult("minimal-set-structure", True)


def check_oracle_agreement(ctx: VerifyContext) -> CheckResult:
    fixtures = [build_lattice([1.0, 1.0, 0.0]), build_lattice([1.0, 0.0, 0.0, 0.0])]
    fixtures += [build_lattice(ctx.solved(n, r0, v).u)
                 for n, r0, v in [(3, 1, Variant.A2_EQ_4B), (5, 1, Variant.A2_EQ_4B),
                                  (6, 2, Variant.A2_EQ_4B), (2, 1, Variant.HALF_6B),
                                  (4, 2, Variant.HALF_6B)]]
    if not ctx.quick:
        fixtures += [build_lattice(ctx.solved(7, 1).u),
                     build_lattice(ctx.solved(8, 4, Variant.HALF_6B).u)]
    for lat in fixtures:
        got = enumeration.enumerate_short(lat)
        oracle = enumeration.oracle_min(lat, got.bound_used + 1)
        if _rel(oracle, got.min_norm_sq) > 1e-12:
            return CheckResult("oracle-agreement", False,
                               f"n={lat.n}: oracle {oracle} vs scan {got.min_norm_sq}")
    return CheckResult("oracle-agreement", True)


def check_density_scale_invariance(ctx: VerifyContext) -> CheckResult:
    base = density.center_density(2.0, 2.0, 3)
    for c in (0.5, 3.0):
        scaled = density.center_density(c * c * 2.0, abs(c) ** 3 * 2.0, 3)
        if _rel(scaled, base) > 1e-12:
            return CheckResult("density-scale-invariance", False, f"c={c}: {scaled} != {base}")
    return CheckResult("density-scale-invariance", True)


def check_density_end_to_end(ctx: VerifyContext) -> CheckResult:
    for n, r0 in _enum_instances(ctx):
        res = ctx.solved(n, r0)
        lat = build_lattice(res.u)
        got = enumeration.enumerate_short(lat)
        delta = density.center_density(got.min_norm_sq, abs(determinants.det_direct(lat)), n)
        predicted = density.delta_closed_a4b(n, r0)
        if abs(delta - predicted) > 1e-4 * predicted:
            return CheckResult("density-end-to-end", False,
                               f"(n={n},r0={r0}): delta {delta} vs prediction {predicted}")
    dual = ctx.solved(2, 1, Variant.HALF_6B)
    lat = build_lattice(dual.u)
    got = enumeration.enumerate_short(lat)
    delta = density.center_density(got.min_norm_sq, abs(determinants.det_direct(lat)), 2)
    if abs(delta - density.delta_closed_half(2)) > 1e-4 * delta:
        return CheckResult("density-end-to-end", False, f"half-distance n=2: delta {delta}")
    return CheckResult("density-end-to-end", True)


def check_density_comparisons(ctx: VerifyContext) -> CheckResult:
    for n in (6, 10, 14):
        if not density.delta_closed_a4b(n, 2) < density.ref_An(n):
            return CheckResult("density-comparisons", False, f"n={n}: expected ours < A-ref")
    for n in (18, 22, 26, 30, 34):
        if not density.delta_closed_a4b(n, 2) > density.ref_An(n):
            return CheckResult("density-comparisons", False, f"n={n}: expected ours > A-ref")
    return CheckResult("density-comparisons", True)


def check_density_table(ctx: VerifyContext) -> CheckResult:
    rows = {row.n: row for row in density.density_table(35)}
    for n in range(3, 36, 2):
        if rows[n].delta_ours != density.ref_Dn(n):
            return CheckResult("density-table", False, f"odd n={n} row differs from D-reference")
    spot = {6: 1 / 32, 10: 1 / 128, 12: 1 / 1024, 18: 1 / 2048,
            20: 1 / 16384, 22: 1 / 8192, 24: 1 / 1048576}
    for n, expect in spot.items():
        if _rel(rows[n].delta_ours, expect) > 1e-12:
            return CheckResult("density-table", False, f"n={n}: {rows[n].delta_ours} != {expect}")
    for n in (2, 4, 8, 16, 32):
        if rows[n].method != "half-n":
            return CheckResult("density-table", False, f"n={n} not tagged half-n")
    return CheckResult("density-table", True)


ALL_CHECKS: list[Callable[[VerifyContext], CheckResult]] = [
    check_pair_sum_identities,
    check_shift_inner,
    check_vieta_decomposition,
    check_gram_structure,
    check_norm_expansion,
    check_norm_simplified,
    check_d_form_decomposition,
    check_kernel_witness,
    check_q_form_positivity,
    check_positive_definiteness,
    check_det_direct_vs_eigen,
    check_det_closed_forms,
    check_singularity_criterion,
    check_det_invariances,
    check_solver_determinism,
    check_solver_bounds,
    check_solver_homogeneity,
    check_min_norm_and_kissing,
    check_minimal_set_structure,
    check_oracle_agreement,
    check_density_scale_invariance,
    check_density_end_to_end,
    check_density_comparisons,
    check_density_table,
]


def run_all(quick: bool = False, tamper: bool = False) -> list[CheckResult]:
    ctx = VerifyContext(quick=quick, tamper=tamper)
    return [check(ctx) for check in ALL_CHECKS]
