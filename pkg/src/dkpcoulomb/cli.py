"""Command-line interface: spectra, wavefunction export, verification, scans.

Four subcommands. `spectrum` tabulates closed-form levels (optionally with
shooting-oracle cross-checks), `scan` does the same over a set of coupling
strengths in parallel, `wavefn` exports the reconstructed 6-component
profile on a radial grid, and `verify` runs the acceptance-criteria engine.
Delimited output is deterministic: shortest round-trip float serialization,
LF endings, fixed key order. Whenever a command writes a file it drops a
PNG figure next to it.

Exit codes: 0 success, 2 validation error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .fields import lorentz_residual, reconstruct, system_residuals
from .nonrel import nonrel_effective_equation, nonrel_spectrum
from .oracle import ShootingConfig, integrate_decaying, shoot_eigenvalue
from .params import CoulombParams, ParitySign
from .plots import save_level_diagram, save_profile_figure, save_residual_chart
from .radialeq import build_jzero, build_main_type1, build_scalar_like
from .spectra import Branch, spectrum_heun, spectrum_jzero, spectrum_scalar_like

SCHEMA_VERSION = 1

__all__ = ["main"]


class _Validation(Exception):
    pass


def _parse_int_range(text: str):
    """Quantum-number ranges: "2", "0..3", or "0,2,5"."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise _Validation(f"empty range {chunk!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(chunk))
    if not out:
        raise _Validation("empty range")
    return out


def _parse_float_list(text: str):
    vals = [float(c) for c in text.split(",") if c.strip()]
    if not vals:
        raise _Validation("empty value list")
    return vals


def _params_for(alpha: float, j: int, mass: float) -> CoulombParams:
    parity = ParitySign.MINUS_TO_J_PLUS_1 if j == 0 else ParitySign.MINUS_TO_J
    return CoulombParams(alpha=alpha, j=j, parity=parity, mass=mass)


def _closed_form_level(branch: Branch, alpha: float, j: int, n: int, mass: float):
    if branch is Branch.SCALAR_LIKE:
        return spectrum_scalar_like(alpha, j, n, mass)
    if branch is Branch.JZERO:
        if j != 0:
            raise _Validation("the j=0 trio exists only at j=0")
        return spectrum_jzero(alpha, n, mass)
    if branch is Branch.HEUN:
        return spectrum_heun(alpha, j, n, mass)
    if branch is Branch.NONREL_MINUS:
        if j < 1:
            raise _Validation("the 6-component sector needs j >= 1")
        return nonrel_spectrum(alpha, mass, float(j - 1), n, j=j, branch=branch)
    if branch is Branch.NONREL_PLUS:
        if j < 1:
            raise _Validation("the 6-component sector needs j >= 1")
        return nonrel_spectrum(alpha, mass, float(j + 1), n, j=j, branch=branch)
    raise _Validation(f"unknown branch {branch}")


def _oracle_family(branch: Branch, alpha: float, j: int, mass: float):
    if branch is Branch.SCALAR_LIKE:
        p = _params_for(alpha, j, mass)
        return lambda eps: build_scalar_like(p, eps)
    if branch is Branch.JZERO:
        p = _params_for(alpha, 0, mass)
        return lambda eps: build_jzero(p, eps)
    if branch is Branch.HEUN:
        p = _params_for(alpha, j, mass)
        return lambda eps: build_main_type1(p, eps)
    nu = float(j - 1) if branch is Branch.NONREL_MINUS else float(j + 1)
    return lambda eps: nonrel_effective_equation(alpha, mass, nu, eps)


def _level_row(branch: Branch, alpha: float, j: int, n: int, mass: float,
               with_oracle: bool):
    level = _closed_form_level(branch, alpha, j, n, mass)
    row = {
        "branch": branch.value,
        "alpha": alpha,
        "j": level.j,
        "n": n,
        "e_over_mc2": level.e_over_mc2,
        "n_effective": level.n_effective,
    }
    if with_oracle:
        tower = [
            _closed_form_level(branch, alpha, j, m, mass).e_over_mc2 * mass
            for m in range(n + 2)
        ]
        try:
            res = shoot_eigenvalue(
                _oracle_family(branch, alpha, j, mass),
                ShootingConfig(bracket=verify_mod.tower_bracket(tower, n),
                               tol_ode=1e-10, tol_eig=1e-12, node_target=n),
            )
            row["oracle"] = res.epsilon
            row["rel_deviation"] = abs(res.epsilon - level.e_over_mc2 * mass) / abs(
                level.e_over_mc2 * mass
            )
        except ValueError as exc:
            row["oracle"] = None
            row["oracle_error"] = str(exc)
    return level, row


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(rows, columns) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def _header(alpha, mass, branch, j, n) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "alpha": alpha,
        "M": mass,
        "branch": branch,
        "j": j,
        "n": n,
    }


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _columns(rows):
    cols = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    return cols


def _spectrum_like(args, alphas):
    branch = Branch(args.branch)
    j_list = _parse_int_range(args.j) if args.j is not None else (
        [0] if branch is Branch.JZERO else [1]
    )
    n_list = _parse_int_range(args.n)
    tuples = [(a, j, n) for a in alphas for j in j_list for n in n_list]

    def work(tup):
        a, j, n = tup
        return _level_row(branch, a, j, n, args.mass, args.oracle)

    if args.command == "scan":
        workers = int(os.environ.get("DKP_THREADS", "0")) or (os.cpu_count() or 1)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, tuples))
    else:
        results = [work(t) for t in tuples]

    levels = [lv for lv, _ in results]
    rows = [row for _, row in results]
    header = _header(
        alphas[0] if len(alphas) == 1 else alphas,
        args.mass, branch.value, j_list, n_list,
    )
    if args.format == "json":
        text = _json_text({**header, "rows": rows})
    else:
        text = _csv_text(rows, _columns(rows))
    _emit(text, args.out)
    if args.out is not None:
        save_level_diagram(levels, Path(args.out).with_suffix(".png"))
    return 0


def cmd_spectrum(args) -> int:
    return _spectrum_like(args, [args.alpha])


def cmd_scan(args) -> int:
    return _spectrum_like(args, _parse_float_list(args.alpha))


def cmd_wavefn(args) -> int:
    branch = Branch(args.branch)
    if branch is not Branch.HEUN:
        raise _Validation(
            "wavefn exports the reconstructed 6-component profile, which only "
            "the heun branch carries"
        )
    if args.points < 2:
        raise _Validation(f"grid needs at least 2 points, got {args.points}")
    if not 0.0 < args.rmin < args.rmax:
        raise _Validation("0 < rmin < rmax required")
    level = spectrum_heun(args.alpha, args.j, args.n, args.mass)
    params = _params_for(args.alpha, args.j, args.mass)
    eps = level.e_over_mc2 * args.mass
    grid = np.geomspace(args.rmin, args.rmax, args.points)
    sol = integrate_decaying(build_main_type1(params, eps), grid)
    profile = reconstruct(params, eps, grid, sol["u"], sol["du"])

    k = eps + args.alpha / grid
    vmax = np.max(np.abs(profile.matrix()), axis=0)
    dmax = np.max(np.abs(profile.deriv_matrix()), axis=0)
    scale = dmax + (args.mass + np.abs(k) + 6.0 / grid) * vmax
    sys_res = np.max(np.abs(system_residuals(params, eps, profile)), axis=0) / scale
    lor_res = np.abs(lorentz_residual(params, eps, profile)) / scale

    v = profile.values
    rows = [
        {
            "r": float(grid[i]),
            "Phi0": float(v["Phi0"][i]),
            "E1": float(v["E1"][i]),
            "E2": float(v["E2"][i]),
            "Phi1": float(v["phi1"][i]),
            "Phi2": float(v["phi2"][i]),
            "H1": float(v["H1"][i]),
            "system_residual": float(sys_res[i]),
            "lorentz_residual": float(lor_res[i]),
        }
        for i in range(len(grid))
    ]
    header = _header(args.alpha, args.mass, branch.value, args.j, args.n)
    if args.format == "json":
        text = _json_text({**header, "rows": rows})
    else:
        text = _csv_text(rows, _columns(rows))
    _emit(text, args.out)
    if args.out is not None:
        save_profile_figure(
            grid,
            {name: rows_col for name, rows_col in (
                ("Phi0", v["Phi0"]), ("E1", v["E1"]), ("E2", v["E2"]),
                ("Phi1", v["phi1"]), ("Phi2", v["phi2"]), ("H1", v["H1"]),
            )},
            sys_res,
            Path(args.out).with_suffix(".png"),
        )
    return 0


def cmd_verify(args) -> int:
    if args.list:
        for cid, title in verify_mod.list_criteria():
            sys.stdout.write(f"{cid}: {title}\n")
        return 0
    ids = [c.strip() for c in args.criteria.split(",")] if args.criteria else None
    try:
        results = verify_mod.run_all(ids, perturb=args.perturb)
    except ValueError as exc:
        raise _Validation(str(exc)) from exc

    rows = [
        {
            "criterion": r.cid,
            "title": r.title,
            "measured": r.measured,
            "tolerance": r.tolerance,
            "passed": r.passed,
            "seconds": round(r.seconds, 3),
            "notes": r.notes,
        }
        for r in results
    ]
    for r in results:
        verdict = "PASS" if r.passed else "FAIL"
        sys.stdout.write(
            f"[{verdict}] criterion {r.cid}: {r.title} "
            f"(measured {r.measured:.3e}, tolerance {r.tolerance:.1e})\n"
        )
        if r.notes:
            sys.stdout.write(f"       {r.notes}\n")

    header = _header(None, 1.0, None, None, None)
    if args.out is not None:
        if args.format == "json":
            detail = [
                {**row, "rows": list(res.rows)}
                for row, res in zip(rows, results)
            ]
            text = _json_text({**header, "command": "verify",
                               "perturb": args.perturb, "rows": detail})
        else:
            text = _csv_text(rows, _columns(rows))
        _emit(text, args.out)
        save_residual_chart(
            [r.cid for r in results],
            [r.measured for r in results],
            [r.tolerance for r in results],
            Path(args.out).with_suffix(".png"),
        )
    return 0 if all(r.passed for r in results) else 3


def _add_common_output(sub) -> None:
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--mass", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dkpcoulomb",
        description="Bound states of a vector particle in a Coulomb field",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    branches = tuple(b.value for b in Branch)

    sp = subs.add_parser("spectrum", help="closed-form levels, optional oracle check")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--branch", choices=branches, required=True)
    sp.add_argument("--j", default=None, help="range, e.g. 1 or 1..3")
    sp.add_argument("--n", default="0..3", help="range, e.g. 0..2")
    sp.add_argument("--oracle", action="store_true",
                    help="add shooting-oracle column and relative deviation")
    _add_common_output(sp)
    sp.set_defaults(func=cmd_spectrum)

    sc = subs.add_parser("scan", help="spectrum over several coupling strengths")
    sc.add_argument("--alpha", required=True,
                    help="comma-separated list, e.g. 0.05,0.1,0.3")
    sc.add_argument("--branch", choices=branches, required=True)
    sc.add_argument("--j", default=None)
    sc.add_argument("--n", default="0..3")
    sc.add_argument("--oracle", action="store_true")
    _add_common_output(sc)
    sc.set_defaults(func=cmd_scan)

    wf = subs.add_parser("wavefn", help="export the 6-component radial profile")
    wf.add_argument("--alpha", type=float, required=True)
    wf.add_argument("--branch", choices=branches, default=Branch.HEUN.value)
    wf.add_argument("--j", type=int, default=1)
    wf.add_argument("--n", type=int, default=0)
    wf.add_argument("--rmin", type=float, default=0.5)
    wf.add_argument("--rmax", type=float, default=20.0)
    wf.add_argument("--points", type=int, default=400)
    _add_common_output(wf)
    wf.set_defaults(func=cmd_wavefn)

    vf = subs.add_parser("verify", help="run the acceptance criteria")
    vf.add_argument("--criteria", default=None,
                    help="comma-separated ids, e.g. 1,3a,7 (default: all)")
    vf.add_argument("--perturb", type=float, default=0.0,
                    help="relative detuning injected into the polynomial-condition check")
    vf.add_argument("--list", action="store_true",
                    help="enumerate criteria without running")
    _add_common_output(vf)
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_Validation, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
