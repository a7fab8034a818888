"""Command-line front end: energies, reference tables, wavefunctions, potentials, oracle reports.

Exit codes: 0 success, 1 numeric failure, 2 usage error. Output is CSV with
a header row or JSON ``{"meta": ..., "rows": [...]}``; both carry the same
formatted numbers, so identical input gives identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, gmp_spectra, kratzer_spectra, oracle, tables, wavefunctions
from .errors import GMPError
from .model import NonRelContext, PotentialParams, RelativisticContext, Symmetry, parse_state
from .potentials import DEFAULT_D0, ApproximationConfig, centrifugal_approx, sample_curve

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "mode": "spin", "potential": "gmp", "alpha": 0.1, "re": 0.4, "M": 1.0, "D": 15.0,
    "Cs": 0.0, "Cps": 0.0, "mu": 1.0, "hbar": 1.0, "c": 1.0, "state": [], "d0": None,
    "output": "csv",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# formatting ---------------------------------------------------------------


def fixed7(x) -> str:
    if x is None or not math.isfinite(x):
        return ""
    text = f"{x:.7f}"
    return "0.0000000" if text == "-0.0000000" else text


def sig6(x) -> str:
    """Six significant digits with trailing zeros kept, as in the non-relativistic tables."""
    return "" if x is None or not math.isfinite(x) else f"{x:#.6g}"


def sci(x) -> str:
    return "" if x is None or not math.isfinite(x) else f"{x:.3e}"


def _json_value(v):
    if isinstance(v, str):
        if v == "":
            return None
        try:
            return int(v) if v.lstrip("-").isdigit() else float(v)
        except ValueError:
            return v
    return v


def emit(out, fmt: str, columns: list[str], rows: list[list], meta: dict):
    if fmt == "json":
        payload = {"meta": meta, "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]}
        out.write(json.dumps(payload, indent=1) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    out.write(buf.getvalue())


# configuration --------------------------------------------------------------


def _d0_value(text: str) -> float:
    if text == "table":
        return tables.TABLE_D0
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid d0 {text!r}") from None


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON run config; flags given on the command line win")
    parser.add_argument("--mode", choices=["spin", "pseudospin", "nonrel"])
    parser.add_argument("--potential", choices=["gmp", "kratzer"])
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--re", type=float, help="equilibrium distance r_e")
    parser.add_argument("--M", type=float, help="Dirac mass")
    parser.add_argument("--D", type=float, help="dissociation energy")
    parser.add_argument("--Cs", type=float, help="spin-symmetry constant")
    parser.add_argument("--Cps", type=float, help="pseudospin-symmetry constant")
    parser.add_argument("--mu", type=float, help="reduced mass (nonrel)")
    parser.add_argument("--hbar", type=float)
    parser.add_argument("--c", type=float)
    parser.add_argument("--state", action="append", help="label (0p3/2, 2p) or n,kappa (n,l for nonrel)")
    parser.add_argument("--d0", type=_d0_value, help="centrifugal shift (default 1/12; 'table' for the fitted table value)")
    parser.add_argument("--output", choices=["csv", "json"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmpdirac", description="Generalized Morse / Kratzer bound states")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("energy", help="solve for one row per --state")
    _common(p)

    p = sub.add_parser("table", help="regenerate a reference table with golden diffs")
    p.add_argument("table_id", type=int)
    _common(p)

    p = sub.add_parser("wavefunction", help="sample normalized radial components")
    _common(p)
    p.add_argument("--points", type=int, default=200, help="number of samples")
    p.add_argument("--rmin", type=float)
    p.add_argument("--rmax", type=float)

    p = sub.add_parser("potential", help="sample the potential and the centrifugal approximation")
    _common(p)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--rmin", type=float, default=0.05)
    p.add_argument("--rmax", type=float, default=10.0)

    p = sub.add_parser("verify", help="closed form against the exact-centrifugal oracle")
    _common(p)
    p.add_argument("--table", type=int, choices=[3], help="run the Table 3 grid with printed-gap bounds")
    p.add_argument("--mesh", type=int, default=oracle.DEFAULT_POINTS, help="oracle interior mesh points")
    return parser


def resolve(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, ValueError) as err:
            raise UsageError(f"cannot read config {args.config}: {err}") from None
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if isinstance(loaded.get("d0"), str):
            try:
                loaded["d0"] = _d0_value(loaded["d0"])
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
        cfg.update(loaded)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if isinstance(cfg["state"], str):
        cfg["state"] = [cfg["state"]]
    return cfg


def _symmetry(cfg) -> Symmetry:
    try:
        return Symmetry(cfg["mode"])
    except ValueError:
        raise UsageError(f"unknown mode {cfg['mode']!r}") from None


def _params(cfg) -> PotentialParams:
    alpha = 0.0 if cfg["potential"] == "kratzer" else cfg["alpha"]
    return PotentialParams(cfg["D"], alpha, cfg["re"])


def _context(cfg, symmetry):
    if symmetry is Symmetry.NONREL:
        return NonRelContext(cfg["mu"], cfg["hbar"])
    C = cfg["Cs"] if symmetry is Symmetry.SPIN else cfg["Cps"]
    return RelativisticContext(cfg["M"], C, cfg["hbar"], cfg["c"])


def _states(cfg, symmetry, required=True):
    if required and not cfg["state"]:
        raise UsageError("at least one --state is required")
    try:
        return [(token, parse_state(token, symmetry)) for token in cfg["state"]]
    except GMPError as err:
        raise UsageError(str(err)) from None


def _approx(cfg, default=DEFAULT_D0) -> ApproximationConfig:
    return ApproximationConfig(default if cfg["d0"] is None else cfg["d0"])


def _meta(command, cfg, **extra):
    keys = ["mode", "potential", "alpha", "re", "M", "D", "Cs", "Cps", "mu", "hbar", "c", "d0"]
    meta = {"command": command, **{k: cfg[k] for k in keys}}
    if meta["d0"] is None:
        meta["d0"] = DEFAULT_D0
    meta.update(extra)
    return meta


# commands -------------------------------------------------------------------


def _solve_state(p, ctx, q, potential, approx):
    """(energy, residual, aux columns) for one state."""
    if q.symmetry is Symmetry.NONREL:
        if potential == "kratzer":
            return kratzer_spectra.kratzer_nonrel_energy(p, ctx, q.n, q.l), None, [kratzer_spectra.kratzer_L(p, ctx, q.l), None]
        aux = gmp_spectra.nonrel_aux(p, ctx, q.n, q.l)
        return gmp_spectra.nonrel_energy(p, ctx, q.n, q.l, approx), None, [aux.delta, aux.eta]
    spin = q.symmetry is Symmetry.SPIN
    if potential == "kratzer":
        solver = kratzer_spectra.kratzer_spin_energy if spin else kratzer_spectra.kratzer_pseudospin_energy
        sol = solver(p, ctx, q)
        return sol.energy, sol.residual, [sol.aux.K, sol.aux.epsilon]
    solver = gmp_spectra.spin_energy if spin else gmp_spectra.pseudospin_energy
    sol = solver(p, ctx, q, approx)
    a = sol.aux
    eps = a.epsilon if spin else a.epsilon_tilde
    delta = a.delta1 if spin else a.delta2
    return sol.energy, sol.residual, [delta, eps]


def cmd_energy(cfg, out, err) -> int:
    symmetry = _symmetry(cfg)
    p, ctx = _params(cfg), _context(cfg, symmetry)
    approx = _approx(cfg)
    aux_names = ["L", ""] if (symmetry is Symmetry.NONREL and cfg["potential"] == "kratzer") else (
        ["K", "epsilon"] if cfg["potential"] == "kratzer" else ["delta", "epsilon"])
    columns = ["state", "n", "kappa", "energy", "residual"] + [a for a in aux_names if a] + ["error"]
    rows, status = [], EXIT_OK
    for token, q in _states(cfg, symmetry):
        try:
            E, residual, aux = _solve_state(p, ctx, q, cfg["potential"], approx)
            row = [token, q.n, q.kappa if symmetry is not Symmetry.NONREL else q.l, fixed7(E), sci(residual)]
            row += [fixed7(v) for v, name in zip(aux, aux_names) if name] + [""]
        except GMPError as exc:
            status = EXIT_NUMERIC
            err.write(f"state {token}: {exc}\n")
            row = [token, q.n, q.kappa, "", ""] + ["" for name in aux_names if name] + [str(exc)]
        rows.append(row)
    if symmetry is Symmetry.NONREL:
        columns[2] = "l"
    emit(out, cfg["output"], columns, rows, _meta("energy", cfg))
    return status


def cmd_table(table_id, cfg, out, err) -> int:
    if table_id not in tables.TABLE_IDS:
        raise UsageError(f"unknown table {table_id}; choose from {list(tables.TABLE_IDS)}")
    d0 = tables.TABLE_D0 if cfg["d0"] is None else cfg["d0"]
    cells = tables.regenerate(table_id, d0)
    fmt = sig6 if table_id in (3, 4) else fixed7
    columns = ["state", "alpha", "r_e", "C_ps", "n", "kappa", "golden", "value", "diff"]
    rows = [[c.state, f"{c.alpha:.2f}", f"{c.r_e:.2f}", f"{c.C:.1f}", c.n, c.kappa, c.golden_text,
             fmt(c.value), sci(c.diff)] for c in cells]
    if table_id != 6:
        drop = columns.index("C_ps")
        columns.pop(drop)
        for row in rows:
            row.pop(drop)
    bad = tables.failures(cells)
    emit(out, cfg["output"], columns, rows,
         {"command": "table", "table": table_id, "d0": d0, "tolerance": tables.TOLERANCE[table_id],
          "cells": len(cells), "failures": len(bad)})
    for c in bad:
        err.write(f"cell {c.state} alpha={c.alpha} r_e={c.r_e} C={c.C}: value {c.value} vs {c.golden_text} {c.error}\n")
    return EXIT_NUMERIC if bad else EXIT_OK


def _wavefunction(p, ctx, q, potential, approx, grid):
    if q.symmetry is Symmetry.NONREL:
        return None, wavefunctions.nonrel_wavefunction(p, ctx, q.n, q.l, grid)
    E, _, _ = _solve_state(p, ctx, q, potential, approx)
    return E, wavefunctions.components(p, ctx, q, E, potential, grid, approx)


def cmd_wavefunction(args, cfg, out, err) -> int:
    if args.points < 1:
        raise UsageError("--points must be positive")
    symmetry = _symmetry(cfg)
    p, ctx = _params(cfg), _context(cfg, symmetry)
    approx = _approx(cfg)
    states = _states(cfg, symmetry)
    solved = []
    try:
        for token, q in states:
            E, wf = _wavefunction(p, ctx, q, cfg["potential"], approx, None)
            solved.append((token, q, E, wf))
    except GMPError as exc:
        err.write(f"{exc}\n")
        return EXIT_NUMERIC
    rmin = args.rmin if args.rmin is not None else max(float(wf.grid[0]) for *_, wf in solved)
    rmax = args.rmax if args.rmax is not None else max(float(wf.grid[-1]) for *_, wf in solved)
    if not 0 < rmin < rmax:
        raise UsageError("need 0 < rmin < rmax")
    r = np.linspace(rmin, rmax, args.points) if args.points > 1 else np.array([rmin])
    columns, data, norms = ["r"], [[fixed7(x) for x in r]], {}
    for token, q, E, wf in solved:
        columns += [f"F[{token}]", f"G[{token}]"]
        data.append([fixed7(x) for x in wf.upper_fn(r)])
        data.append([fixed7(x) for x in wf.lower_fn(r)])
        norms[token] = {"energy": None if E is None else float(fixed7(E)), "normalized": wf.normalized,
                        "norm_constant": wf.norm_constant, "norm_check": float(fixed7(wf.norm_check()))}
        err.write(f"state {token}: norm_check {fixed7(wf.norm_check())}\n")
    rows = [list(row) for row in zip(*data)]
    emit(out, cfg["output"], columns, rows, _meta("wavefunction", cfg, states=norms))
    return EXIT_OK


def cmd_potential(args, cfg, out, err) -> int:
    if args.points < 1:
        raise UsageError("--points must be positive")
    if not 0 < args.rmin < args.rmax:
        raise UsageError("need 0 < rmin < rmax")
    p = _params(cfg)
    r = np.linspace(args.rmin, args.rmax, args.points) if args.points > 1 else np.array([args.rmin])
    curve = sample_curve(cfg["potential"], p, r)
    columns = ["r", "V", "inv_r2"]
    rows = [[fixed7(x), fixed7(v), fixed7(1 / x**2)] for x, v in curve]
    if p.alpha > 0:
        columns.append("inv_r2_approx")
        approx = np.atleast_1d(centrifugal_approx(r, p.alpha, _approx(cfg)))
        for row, a in zip(rows, approx):
            row.append(fixed7(a))
    emit(out, cfg["output"], columns, rows, _meta("potential", cfg))
    return EXIT_OK


def cmd_verify(args, cfg, out, err) -> int:
    if args.table == 3:
        d0 = DEFAULT_D0 if cfg["d0"] is None else cfg["d0"]
        cells = tables.table3_oracle_check(d0, points=args.mesh)
        columns = ["state", "alpha", "r_e", "closed_form", "oracle", "delta", "printed_gap", "bound", "ok"]
        rows = [[c.state, f"{c.alpha:.2f}", f"{c.r_e:.2f}", fixed7(c.closed_form), fixed7(c.oracle),
                 sci(c.delta), sci(c.printed_gap), sci(c.bound), int(c.within)] for c in cells]
        bad = [c for c in cells if not c.within]
        emit(out, cfg["output"], columns, rows, {"command": "verify", "table": 3, "d0": d0, "failures": len(bad)})
        return EXIT_NUMERIC if bad else EXIT_OK
    symmetry = _symmetry(cfg)
    p, ctx = _params(cfg), _context(cfg, symmetry)
    states = [q for _, q in _states(cfg, symmetry)]
    report = oracle.approximation_report(p, ctx, states, _approx(cfg), cfg["potential"], args.mesh)
    columns = ["state", "closed_form", "oracle", "delta", "error"]
    rows = [[r.state, fixed7(r.closed_form), fixed7(r.oracle), sci(r.delta), r.error] for r in report]
    emit(out, cfg["output"], columns, rows, _meta("verify", cfg))
    return EXIT_NUMERIC if any(r.error for r in report) else EXIT_OK


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("choose a command: energy, table, wavefunction, potential, verify")
        cfg = resolve(args)
        if args.command == "energy":
            return cmd_energy(cfg, out, err)
        if args.command == "table":
            return cmd_table(args.table_id, cfg, out, err)
        if args.command == "wavefunction":
            return cmd_wavefunction(args, cfg, out, err)
        if args.command == "potential":
            return cmd_potential(args, cfg, out, err)
        return cmd_verify(args, cfg, out, err)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except GMPError as exc:
        # invalid parameters (D <= 0, M <= 0, ...) are usage problems
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
