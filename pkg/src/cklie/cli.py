"""Command-line front-end.

Subcommands ``integrate``, ``verify``, ``superpose``, ``tables`` and
``contract`` each write CSV data plus a ``<command>.json`` summary into the
``--out`` directory.  Exit status: 0 pass, 1 verification failure,
2 usage or config error, 3 numerical abort.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import verify
from .ck_space import CANONICAL_SPACES
from .config import DEFAULT_TOLERANCES, ConfigError, ExperimentConfig, load_config
from .errors import CKError, IntegrationAbort
from .integrator import integrate
from .tables import compare

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ABORT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path, data):
    path.write_text(json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([f"{v:.17g}" if isinstance(v, (float, np.floating)) else v for v in row])


def _parse_tol(items):
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects name=value, got {item!r}")
        if name not in DEFAULT_TOLERANCES:
            raise UsageError(f"unknown tolerance {name!r}; known: {', '.join(sorted(DEFAULT_TOLERANCES))}")
        try:
            out[name] = float(value)
        except ValueError:
            raise UsageError(f"tolerance {name!r} needs a number, got {value!r}") from None
    return out


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return v


def _load(args):
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    return cfg.with_overrides(seed=args.seed, tolerances=_parse_tol(args.tol))


def _header(cfg, command):
    return {
        "command": command,
        "seed": cfg.seed,
        "space": cfg.kp.name,
        "kappa": [float(cfg.kp.kappa1), float(cfg.kp.kappa2)],
    }


# -- subcommands ------------------------------------------------------------------

def cmd_integrate(cfg, out):
    if not cfg.initial_points:
        raise UsageError("integrate needs at least one entry in initial_points")
    report = _header(cfg, "integrate")
    report.update(step=cfg.step, t0=cfg.t0, t1=cfg.t1, trajectories=[])
    for i, p in enumerate(cfg.initial_points):
        traj = integrate(cfg.kp, cfg.coefficients, p, cfg.t0, cfg.t1, cfg.step)
        csv_path, meta = traj.write(out / f"trajectory_{i}.csv")
        report["trajectories"].append(
            {"initial": list(p), "end": list(traj.end), "csv": csv_path.name, "meta": meta.name}
        )
        print(f"trajectory {i}: {tuple(p)} -> ({traj.end.x:.12g}, {traj.end.y:.12g})")
    write_json(out / "integrate.json", report)
    return EXIT_OK


def cmd_verify(cfg, out, spaces=None):
    results = verify.run_all(cfg, spaces)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.suite:<22} {r.space:<15} residual={r.max_residual:.3e} tol={r.tolerance:.1e}")
    report = _header(cfg, "verify")
    report.update(
        spaces=list(spaces or cfg.spaces),
        tolerances=cfg.tolerances,
        passed=not failed,
        failures=[f"{r.suite}:{r.space}" for r in failed],
        suites=[r.to_dict() for r in results],
    )
    write_json(out / "verify.json", report)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_superpose(cfg, out):
    if len(cfg.initial_points) != 3:
        raise UsageError(f"superpose needs exactly three initial_points, got {len(cfg.initial_points)}")
    if len(set(cfg.initial_points)) != 3:
        raise UsageError("superpose needs three distinct initial_points")
    trajs = [integrate(cfg.kp, cfg.coefficients, p, cfg.t0, cfg.t1, cfg.step) for p in cfg.initial_points]
    inv, rows = verify.reconstruct(cfg.kp, trajs, cfg.samples)
    nan = (math.nan, math.nan)
    write_csv(
        out / "reconstruction.csv",
        ["t", "x1", "y1", "plus_x", "plus_y", "minus_x", "minus_y", "err_plus", "err_minus"],
        [(t, *q1, *(plus or nan), *(minus or nan), ep, em) for t, q1, plus, minus, ep, em in rows],
    )
    best = max(min(r[4], r[5]) for r in rows)
    tol = cfg.tolerances["superposition"]
    report = _header(cfg, "superpose")
    report.update(
        sides=[inv.s1, inv.s2, inv.s3],
        area=inv.area,
        degenerate=inv.degenerate,
        samples=len(rows),
        max_error_plus=max(r[4] for r in rows),
        max_error_minus=max(r[5] for r in rows),
        max_error_best=best,
        tolerance=tol,
        passed=best < tol,
    )
    write_json(out / "superpose.json", report)
    flag = " (degenerate triangle)" if inv.degenerate else ""
    print(f"superposition max error {best:.3e} over {len(rows)} samples{flag}")
    return EXIT_OK if best < tol else EXIT_FAIL


def cmd_tables(cfg, out, spaces=None):
    names = list(spaces or cfg.spaces)
    tol = cfg.tolerances["tables"]
    table = compare(names)
    rows = []
    summary = {}
    for name in names:
        data, worst = table[name]
        summary[name] = worst
        rows += [(name, q, label, g, t, abs(g - t)) for q, label, g, t in data]
        print(f"{name:<15} max discrepancy {worst:.3e}")
    write_csv(out / "tables.csv", ["space", "quantity", "sample", "generic", "table", "abs_diff"], rows)
    report = _header(cfg, "tables")
    report.update(spaces=names, max_discrepancy=summary, tolerance=tol, passed=max(summary.values()) < tol)
    write_json(out / "tables.json", report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_contract(cfg, out):
    rows = verify.contraction_report()
    tol = cfg.tolerances["contraction"]
    write_csv(
        out / "contraction.csv",
        ["direction", "kappa1", "kappa2", "max_abs_diff"],
        [(d, float(kp.kappa1), float(kp.kappa2), v) for d, kp, v in rows],
    )
    worst = max(r[2] for r in rows)
    for d, kp, v in rows:
        print(f"{d} -> 0 at ({kp.kappa1:+g}, {kp.kappa2:+g}): {v:.3e}")
    report = _header(cfg, "contract")
    report.update(epsilon=verify.CONTRACTION_EPS, max_abs_diff=worst, tolerance=tol, passed=worst < tol)
    write_json(out / "contract.json", report)
    return EXIT_OK if worst < tol else EXIT_FAIL


# -- entry point ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML experiment file")
    common.add_argument("--seed", type=_seed, help="override the random seed")
    common.add_argument("--out", default="cklie-out", help="output directory (default: %(default)s)")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance; repeatable")

    parser = argparse.ArgumentParser(prog="cklie", description="Lie-Hamilton systems on Cayley-Klein spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("integrate", parents=[common], help="integrate each initial point")
    for name, text in (("verify", "run the invariant suites"), ("tables", "compare generic and per-space closed forms")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--space", action="append", choices=sorted(CANONICAL_SPACES),
                       help="restrict to this space; repeatable (default: config 'spaces')")
    sub.add_parser("superpose", parents=[common], help="reconstruct solution 1 from solutions 2 and 3")
    sub.add_parser("contract", parents=[common], help="continuity report as kappa1 or kappa2 -> 0")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "integrate":
            return cmd_integrate(cfg, out)
        if args.command == "verify":
            return cmd_verify(cfg, out, args.space)
        if args.command == "superpose":
            return cmd_superpose(cfg, out)
        if args.command == "tables":
            return cmd_tables(cfg, out, args.space)
        return cmd_contract(cfg, out)
    except (UsageError, ConfigError, OSError) as exc:
        print(f"cklie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationAbort as exc:
        print(f"cklie: integration aborted at t={exc.t!r}, point={tuple(exc.point)}: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except CKError as exc:
        print(f"cklie: numerical error: {exc}", file=sys.stderr)
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
