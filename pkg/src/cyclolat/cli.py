"""Command-line front end: solve, analyze, table, verify.

Data goes to stdout (or --output-path); diagnostics go to stderr.  Exit
codes: 0 success/convergence, 1 invalid input, 2 non-convergence,
3 failed verification.  All numbers in JSON documents carry 17 significant
digits so reported vectors round-trip losslessly.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import verify as verify_suite
from .core import build_lattice, pair_sum_wrapped, vieta
from .density import delta_closed_a4b, delta_closed_half, density_table, ref_An, ref_Dn
from .determinants import (
    RELAXED_SINGULAR_RTOL,
    det_closed_a4b,
    det_closed_vanishing,
    det_direct,
    det_eigen,
    is_singular,
)
from .density import center_density
from .enumeration import DEFAULT_DIM_CAP, enumerate_short
from .errors import BudgetExceededError, SingularLatticeError, SpecError
from .solver import SystemSpec, Variant, solve

# |pair sum| below this times max(1, ||u||^2) counts as vanishing when
# classifying a literal vector from `analyze`
_ANALYZE_VANISH_RTOL = 1e-3
_DEGENERATE_A_RTOL = 1e-12


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _emit_json(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_emit_json(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _document(
    n: int,
    r0: int,
    variant: str,
    u: np.ndarray,
    a: float,
    b: float,
    residual_value: float,
    p_values: list[float],
    det_direct_value: float,
    det_eigen_value: float,
    det_closed_value: float | None,
    min_norm_sq: float | None,
    kissing: int | None,
    delta: float | None,
    delta_closed: float | None,
    flags: list[str],
) -> dict:
    return {
        "n": n,
        "r0": r0,
        "variant": variant,
        "u": [float(v) for v in u],
        "a": a,
        "b": b,
        "residual": residual_value,
        "p_values": p_values,
        "det": {"direct": det_direct_value, "eigen": det_eigen_value, "closed": det_closed_value},
        "min_norm_sq": min_norm_sq,
        "kissing": kissing,
        "delta": delta,
        "delta_closed": delta_closed,
        "refs": {"Dn": ref_Dn(n), "An": ref_An(n)},
        "flags": flags,
    }


def _closed_forms(variant: Variant, n: int, r0: int, a: float, b: float):
    """Closed-form determinant magnitude and density prediction for the
    regime, or None where the formulas do not apply."""
    det_closed = None
    delta_closed = None
    try:
        if variant is Variant.A2_EQ_4B:
            det_closed = det_closed_a4b(a, n, r0)
            delta_closed = delta_closed_a4b(n, r0)
        else:
            det_closed = abs(det_closed_vanishing(a, b, n, r0).value)
            delta_closed = delta_closed_half(n)
    except SpecError:
        pass
    return det_closed, delta_closed


def cmd_solve(args) -> int:
    variant = Variant(args.variant)
    r0 = args.r0
    if r0 is None:
        if variant is Variant.A2_EQ_4B:
            raise SpecError("--r0 is required for the a2eq4b variant")
        r0 = args.n // 2
    spec = SystemSpec(
        n=args.n,
        r0=r0,
        variant=variant,
        epsilon=args.epsilon,
        scale_pin=args.scale_pin,
        max_starts=args.max_starts,
        rng_seed=args.seed,
        allow_singular=args.allow_singular,
    )
    result = solve(spec)
    lat = build_lattice(result.u)
    p_values = lat.wrapped_pair_sums()
    d_dir = det_direct(lat)
    d_eig = det_eigen(lat)
    flags: list[str] = []
    if not result.converged:
        flags.append("not-converged")
    singular = is_singular(lat, det_value=d_dir, rtol=RELAXED_SINGULAR_RTOL)
    if singular:
        flags.append("singular-lattice")
    det_closed, delta_closed = _closed_forms(variant, spec.n, r0, result.a, result.b)
    min_norm_sq = kissing = delta = None
    if result.converged and not singular:
        try:
            enum = enumerate_short(lat)
            min_norm_sq = enum.min_norm_sq
            kissing = enum.kissing
            delta = center_density(min_norm_sq, abs(d_dir), spec.n)
        except (BudgetExceededError, SingularLatticeError):
            flags.append("enumeration:skipped")
    else:
        flags.append("enumeration:skipped")
    doc = _document(
        spec.n, r0, variant.value, result.u.entries, result.a, result.b, result.residual,
        p_values, d_dir, d_eig, det_closed, min_norm_sq, kissing, delta, delta_closed, flags,
    )
    _write(_emit_json(doc) + "\n", args.output_path)
    return 0 if result.converged else 2


def _parse_vector(text: str) -> np.ndarray:
    tokens = text.split(",")
    values = []
    for pos, token in enumerate(tokens, start=1):
        try:
            v = float(token)
        except ValueError:
            raise SpecError(f"invalid vector entry at position {pos}: {token.strip()!r}")
        if not math.isfinite(v):
            raise SpecError(f"non-finite vector entry at position {pos}: {token.strip()!r}")
        values.append(v)
    if len(values) < 2:
        raise SpecError(f"need at least 2 entries, got {len(values)}")
    return np.array(values)


def cmd_analyze(args) -> int:
    u = _parse_vector(args.u)
    n = u.shape[0]
    lat = build_lattice(u)
    coeffs = lat.vieta
    a, b = coeffs.a, coeffs.b
    p_values = lat.wrapped_pair_sums()
    r0 = 1 + int(np.argmax(np.abs(p_values)))
    residual_value = sum(p * p for i, p in enumerate(p_values, start=1) if i != r0)
    d_dir = det_direct(lat)
    d_eig = det_eigen(lat)
    flags: list[str] = []
    norm_sq = coeffs.norm_sq
    if abs(a) <= _DEGENERATE_A_RTOL * max(1.0, math.sqrt(max(norm_sq, 0.0))):
        flags.append("degenerate: a=0")
    singular = is_singular(lat, det_value=d_dir)
    if singular:
        flags.append("singular-lattice")
    vanish_scale = _ANALYZE_VANISH_RTOL * max(1.0, abs(norm_sq))
    vanishing = all(abs(p) <= vanish_scale for i, p in enumerate(p_values, start=1) if i != r0)
    det_closed = None
    delta_closed = None
    if vanishing:
        try:
            det_closed = det_closed_vanishing(a, b, n, r0).value
        except SpecError:
            pass
        a_sq = a * a
        a4b_regime = 2 * r0 < n and abs(a_sq - 4.0 * b) <= _ANALYZE_VANISH_RTOL * max(1.0, a_sq)
        half_regime = 2 * r0 == n and (
            abs(a_sq + 2.0 * b) <= _ANALYZE_VANISH_RTOL * max(1.0, a_sq)
            or abs(a_sq - 6.0 * b) <= _ANALYZE_VANISH_RTOL * max(1.0, a_sq)
        )
        try:
            if a4b_regime:
                delta_closed = delta_closed_a4b(n, r0)
            elif half_regime:
                delta_closed = delta_closed_half(n)
        except SpecError:
            pass
    min_norm_sq = kissing = delta = None
    if not singular:
        try:
            enum = enumerate_short(lat)
            min_norm_sq = enum.min_norm_sq
            kissing = enum.kissing
            delta = center_density(min_norm_sq, abs(d_dir), n)
        except (BudgetExceededError, SingularLatticeError):
            flags.append("enumeration:skipped")
    else:
        flags.append("enumeration:skipped")
    doc = _document(
        n, r0, "raw", u, a, b, residual_value, p_values,
        d_dir, d_eig, det_closed, min_norm_sq, kissing, delta, delta_closed, flags,
    )
    _write(_emit_json(doc) + "\n", args.output_path)
    return 0


def cmd_table(args) -> int:
    if not 2 <= args.n_max <= 64:
        raise SpecError(f"--n-max must lie in [2, 64], got {args.n_max}")
    lines = ["n,method,delta_ours,delta_Dn,delta_An,best_known"]
    for row in density_table(args.n_max):
        best = "" if row.best_known is None else format(row.best_known, ".6g")
        lines.append(
            f"{row.n},{row.method},{format(row.delta_ours, '.6g')},"
            f"{format(row.delta_Dn, '.6g')},{format(row.delta_An, '.6g')},{best}"
        )
    _write("\n".join(lines) + "\n", args.output_path)
    return 0


def cmd_verify(args) -> int:
    results = verify_suite.run_all(quick=args.quick, tamper=args.tamper)
    lines = []
    for res in results:
        lines.append(f"PASS {res.name}" if res.ok else f"FAIL {res.name}: {res.detail}")
    failed = [res for res in results if not res.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} properties hold")
    _write("\n".join(lines) + "\n", args.output_path)
    return 0 if not failed else 3


def _build_parser() -> _Parser:
    parser = _Parser(prog="cyclolat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve the orthogonality system and report the lattice")
    p_solve.add_argument("--n", type=int, required=True, help="lattice dimension (>= 2)")
    p_solve.add_argument("--r0", type=int, default=None, help="distinguished shift distance")
    p_solve.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.A2_EQ_4B.value)
    p_solve.add_argument("--epsilon", type=float, default=1e-16, help="residual convergence threshold")
    p_solve.add_argument("--seed", type=int, default=0, help="seed for the multi-start initial vectors")
    p_solve.add_argument("--max-starts", type=int, default=64)
    p_solve.add_argument("--scale-pin", type=float, default=-2.0, help="target value pinned for a")
    p_solve.add_argument("--allow-singular", action="store_true",
                         help="permit (n, r0) pairs whose lattice is provably singular")
    p_solve.add_argument("--output-format", choices=["json"], default="json")
    p_solve.add_argument("--output-path", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_an = sub.add_parser("analyze", help="report a lattice built from a literal vector")
    p_an.add_argument("--u", required=True, help="comma-separated real entries, e.g. 1,1,0")
    p_an.add_argument("--output-format", choices=["json"], default="json")
    p_an.add_argument("--output-path", default=None)
    p_an.set_defaults(func=cmd_analyze)

    p_tab = sub.add_parser("table", help="emit the center-density comparison table as CSV")
    p_tab.add_argument("--n-max", type=int, default=35)
    p_tab.add_argument("--output-format", choices=["csv"], default="csv")
    p_tab.add_argument("--output-path", default=None)
    p_tab.set_defaults(func=cmd_table)

    p_ver = sub.add_parser("verify", help="run the full invariant suite at fixed seeds")
    p_ver.add_argument("--quick", action="store_true", help="skip enumeration above dimension 8")
    p_ver.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p_ver.add_argument("--output-path", default=None)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def _fold_vector_flag(argv: list[str]) -> list[str]:
    """Join `--u <value>` into `--u=<value>` so vectors with a leading
    minus sign are not mistaken for option strings."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--u" and i + 1 < len(argv):
            out.append(f"--u={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(_fold_vector_flag(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args)
    except (SpecError, ValueError) as exc:
        sys.stderr.write(f"cyclolat: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
