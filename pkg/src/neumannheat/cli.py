"""Command-line front end.

Subcommands:

    homog     1D homogeneous convergence study (trigpoly | polybump | hat)
    steady1d  steady-state solve of the catalog or a constant-source problem
    steady2d  2D Gaussian steady-state study (centered | offset)
    spectra   dump eigenvalues, per-step amplification factors and envelopes
    bounds    run the full spectral/quadrature bound sweep
    sweep     run experiments batch-listed in a config file

Exit codes: 0 success, 1 failed bound check, 2 bad flags, 3 CFL violation,
4 I/O failure, 5 incompatible steady problem.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import harness, scheme1d, spectral
from .errors import CflViolationError, IncompatibleProblemError
from .exact import steady_1d
from .grid import Field1D, Grid1D, mean, norm_l2, project

EXIT_OK = 0
EXIT_BOUND_FAIL = 1
EXIT_USAGE = 2
EXIT_CFL = 3
EXIT_IO = 4
EXIT_INCOMPATIBLE = 5


def parse_j_list(text: str) -> list[int]:
    """Comma list ("17,33,65") or inclusive range ("2..512")."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(tok) for tok in text.split(",") if tok]


def parse_t_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def read_config(path: str) -> dict:
    """Plain key=value lines; blank lines and #-comments ignored."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _apply_config_defaults(args, config: dict, keys) -> None:
    for key in keys:
        if getattr(args, key, None) is None and key in config:
            setattr(args, key, config[key])


def _write_or_print(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records_csv_text(records) -> str:
    lines = ["experiment,J,dx,dt,t_target,t_realized,n,abs_err,rel_err,wall_ms"]
    for r in sorted(records, key=lambda r: (r.experiment, r.J, r.t_target)):
        lines.append(",".join([
            r.experiment, str(r.J), repr(r.dx), repr(r.dt), repr(r.t_target),
            repr(r.t_realized), str(r.n), repr(r.abs_err), repr(r.rel_err),
            repr(r.wall_ms)]))
    return "\n".join(lines) + "\n"


def _print_slope_table(records, checkpoints) -> None:
    print("slope summary (error ~ J^-slope):")
    for t in checkpoints:
        recs = harness.records_at(records, t)
        if len(recs) >= 3:
            fit = harness.estimate_slope(recs)
            print(f"  t={t:g}: slope={fit.slope:.3f} over J={fit.J_used}")
        else:
            print(f"  t={t:g}: <3 grids, no fit")


def cmd_homog(args) -> int:
    experiment = f"homog-{args.datum}"
    if experiment not in harness.EXPERIMENT_IDS:
        print(f"unknown datum {args.datum!r}", file=sys.stderr)
        return EXIT_USAGE
    cfg = harness.default_config(
        experiment,
        J_list=parse_j_list(args.J) if args.J else None,
        checkpoints=parse_t_list(args.t) if args.t else None,
        cfl=args.cfl,
        threads=args.threads,
    )
    records = harness.run_convergence(cfg)
    if args.out:
        harness.emit_csv(records, args.out, cfg)
    else:
        sys.stdout.write(_records_csv_text(records))
    _print_slope_table(records, cfg.checkpoints)
    return EXIT_OK


def _steady_problem(args):
    if args.problem == "sec52":
        ss = steady_1d()
        problem = scheme1d.NonhomogProblem(ss.source, ss.beta, ss.gamma, ss.L,
                                           f_integral=ss.source_integral)
        return problem, ss
    if args.f_const is None:
        raise ValueError("custom problems need --f-const, --beta, --gamma, --L")
    c = args.f_const
    L = args.L or 1.0
    problem = scheme1d.NonhomogProblem(
        lambda x: np.full_like(np.asarray(x, dtype=float), c),
        args.beta, args.gamma, L, f_integral=c * L)
    return problem, None


def cmd_steady1d(args) -> int:
    problem, ss = _steady_problem(args)
    residual = scheme1d.check_compatibility(problem)
    if abs(residual) > 1e-8:
        print(f"incompatible problem: flux/source balance residual {residual:.3e}",
              file=sys.stderr)
        return EXIT_INCOMPATIBLE
    for J in parse_j_list(args.J):
        g = Grid1D(J, problem.L)
        if args.solver == "laplace":
            v = scheme1d.solve_steady_laplace(problem, g, args.s)
            rhs = scheme1d.build_rhs(problem, g)
            op = spectral.NeumannLaplacian1D(g)
            resid = norm_l2(Field1D(g, args.s * v.values
                                    - op.apply(v).values - rhs.b.values))
            line = (f"steady1d J={J} solver=laplace s={args.s:g} "
                    f"residual={resid:.3e} mean={mean(v):.12g}")
            sol = v
        else:
            dt = args.cfl * g.dx ** 2
            target_mean = ss.mean_value if ss is not None else 0.0
            v0 = Field1D(g, np.full(J, target_mean))
            res = scheme1d.solve_steady_iterative(problem, g, dt, v0, tol=args.tol)
            line = (f"steady1d J={J} solver=iterate tol={args.tol:g} "
                    f"iterations={res.iterations} residual={res.residual:.3e} "
                    f"mean={mean(res.field):.12g}")
            sol = res.field
        if ss is not None:
            exact = project(g, ss.solution)
            err = norm_l2(Field1D(g, exact.values - (
                sol.values + (mean(exact) - mean(sol)))))
            line += f" err_vs_exact={err:.6e}"
        print(line)
    return EXIT_OK


def cmd_steady2d(args) -> int:
    experiment = f"steady2d-{args.case}"
    if experiment not in harness.EXPERIMENT_IDS:
        print(f"unknown case {args.case!r}", file=sys.stderr)
        return EXIT_USAGE
    cfg = harness.default_config(
        experiment,
        J_list=parse_j_list(args.J) if args.J else None,
        checkpoints=parse_t_list(args.t) if args.t else None,
        cfl=args.cfl,
        threads=args.threads,
    )
    records = harness.run_convergence(cfg)
    if args.out:
        harness.emit_csv(records, args.out, cfg)
    else:
        sys.stdout.write(_records_csv_text(records))
    _print_slope_table(records, cfg.checkpoints)
    return EXIT_OK


def cmd_spectra(args) -> int:
    g = Grid1D(int(args.J), args.L or 1.0)
    dt = args.dt if args.dt is not None else args.cfl * g.dx ** 2
    lines = ["ell,lambda,amplification,envelope"]
    for ell in range(g.J):
        lam = spectral.eigenvalue(g, ell)
        amp = 1.0 + dt * lam
        env = math.exp(-(dt / g.dx ** 2) * math.sin(ell * math.pi / g.J) ** 2)
        lines.append(f"{ell},{lam!r},{amp!r},{env!r}")
    _write_or_print("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    J_list = parse_j_list(args.J) if args.J else list(range(2, 513))
    cfls = parse_t_list(args.cfl_list) if args.cfl_list else [0.5, 0.25, 0.1]
    ms = [int(m) for m in parse_t_list(args.m)] if args.m else [1, 10, 100, 1000]
    ns = [1, 10, 1000, 1_000_000]
    perturb = args.perturb or 0.0
    worst = {"amplification": math.inf, "eta_sum": -math.inf,
             "resolvent": -math.inf, "kernel": -math.inf, "quadrature": -math.inf}
    failed = None
    for J in J_list:
        for c in cfls:
            g = Grid1D(J, args.L or 1.0)
            dt = c * g.dx ** 2
            rep = spectral.amplification_bound_check(g, dt)
            margin = rep.worst_margin - perturb
            worst["amplification"] = min(worst["amplification"], margin)
            if margin < 0 and failed is None:
                failed = ("amplification", J, c, rep.worst_index)
            for n in ns:
                v = spectral.eta_geometric_sum(g, dt, n) / (2.0 * g.L ** 2)
                worst["eta_sum"] = max(worst["eta_sum"], v)
                if v > 1.0 and failed is None:
                    failed = ("eta_sum", J, c, n)
                v = (spectral.resolvent_power_sum(g, dt, n)
                     / spectral.resolvent_power_sum_bound(g.L))
                worst["resolvent"] = max(worst["resolvent"], v)
                if v > 1.0 and failed is None:
                    failed = ("resolvent", J, c, n)
            for m in ms:
                value, bound = spectral.heat_kernel_spectrum_sum(g, c, m)
                v = value / bound
                worst["kernel"] = max(worst["kernel"], v)
                if v > 1.0 and failed is None:
                    failed = ("kernel", J, c, m)
    L = args.L or 1.0
    for h1 in (harness.h1_constant(), harness.h1_linear(L), harness.h1_cosine_mode(1, L)):
        rep = harness.quadrature_inequality_check(h1, J_list, L)
        worst["quadrature"] = max(worst["quadrature"], rep.max_ratio)
        if not rep.ok and failed is None:
            failed = ("quadrature", rep.worst_J, h1.label, None)
    print("bound suite worst figures (amplification: min margin; others: max value/bound):")
    for k, v in worst.items():
        print(f"  {k}: {v:.6g}")
    if failed is not None:
        print(f"FAILED: {failed}", file=sys.stderr)
        return EXIT_BOUND_FAIL
    print("all bounds hold")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.config:
        print("sweep requires --config", file=sys.stderr)
        return EXIT_USAGE
    config = read_config(args.config)
    experiments = [e.strip() for e in config.get("experiments", "").split(",") if e.strip()]
    if not experiments:
        print("config must list experiments=<id,id,...>", file=sys.stderr)
        return EXIT_USAGE
    out_prefix = config.get("out_prefix", "sweep")
    threads = int(config.get("threads", args.threads))
    for exp in experiments:
        cfg = harness.default_config(
            exp,
            J_list=parse_j_list(config[f"{exp}.J"]) if f"{exp}.J" in config else None,
            checkpoints=parse_t_list(config[f"{exp}.t"]) if f"{exp}.t" in config else None,
            cfl=float(config.get(f"{exp}.cfl", config.get("cfl", 0.5))),
            threads=threads,
        )
        records = harness.run_convergence(cfg)
        path = f"{out_prefix}-{exp}.csv"
        harness.emit_csv(records, path, cfg)
        print(f"{exp}: {len(records)} records -> {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="neumannheat", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--J", help="comma list (17,33,65) or range (2..512)")
        p.add_argument("--L", type=float, help="interval length override")
        p.add_argument("--cfl", type=float, default=0.5,
                       help="dt = cfl * dx^2 (default 0.5)")
        p.add_argument("--t", help="comma list of checkpoint times")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--config", help="key=value config file (flags win)")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("homog", help="homogeneous 1D convergence study")
    add_common(p)
    p.add_argument("--datum", required=True, choices=["trigpoly", "polybump", "hat"])
    p.set_defaults(fn=cmd_homog)

    p = sub.add_parser("steady1d", help="1D steady-state solve")
    add_common(p)
    p.add_argument("--problem", default="sec52", choices=["sec52", "custom"])
    p.add_argument("--solver", default="iterate", choices=["iterate", "laplace"])
    p.add_argument("--s", type=float, default=1e-3, help="laplace shift")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--f-const", dest="f_const", type=float,
                   help="constant source value for --problem custom")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.set_defaults(fn=cmd_steady1d)

    p = sub.add_parser("steady2d", help="2D Gaussian steady-state study")
    add_common(p)
    p.add_argument("--case", required=True, choices=["centered", "offset"])
    p.set_defaults(fn=cmd_steady2d)

    p = sub.add_parser("spectra", help="dump the discrete spectrum")
    add_common(p)
    p.add_argument("--dt", type=float, help="time step (default cfl*dx^2)")
    p.set_defaults(fn=cmd_spectra)

    p = sub.add_parser("bounds", help="run the bound-verification sweep")
    add_common(p)
    p.add_argument("--cfl-list", dest="cfl_list", help="comma list of CFL ratios")
    p.add_argument("--m", help="comma list of kernel-sum step counts")
    p.add_argument("--perturb", type=float, help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("sweep", help="batch experiments from a config file")
    add_common(p)
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "config", None) and args.command != "sweep":
        try:
            config = read_config(args.config)
        except OSError as exc:
            print(f"cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
        _apply_config_defaults(args, config, ["J", "t", "out"])
        if "cfl" in config and "--cfl" not in (argv or sys.argv):
            args.cfl = float(config["cfl"])
    try:
        return args.fn(args)
    except CflViolationError as exc:
        print(f"CFL violation: {exc}", file=sys.stderr)
        return EXIT_CFL
    except IncompatibleProblemError as exc:
        print(f"incompatible problem: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
