"""
Command-line front end.

Subcommands write deterministic CSV: floats use 17 significant digits,
lines end in ``\\n``. Exit codes: 0 success, 2 usage error, 1 runtime error.
Every flag can also come from a ``key = value`` file given with ``--config``;
command-line flags win.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from pathlib import Path

from . import scan
from .domain import EffectiveDrive, LevelTriple, PathwaySet, PhaseControlError, Relaxation
from .drive import DENOMINATOR_TOL, three_photon_moment


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    # + 0.0 turns -0.0 into 0.0
    return format(float(x) + 0.0, ".17g")


def _tag(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _float_list(text: str) -> list[float]:
    try:
        return [float(eval_number(tok)) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


_CONSTANTS = {"pi": math.pi, "tau": 2 * math.pi}


def eval_number(text: str) -> float:
    """Parse a float, allowing ``pi`` multiples such as ``2pi``, ``pi/5``, ``0.5*pi``."""
    t = text.strip().lower().replace(" ", "")
    try:
        return float(t)
    except ValueError:
        pass
    for name, value in _CONSTANTS.items():
        if name in t:
            head, _, tail = t.partition(name)
            head = head.rstrip("*")
            coef = 1.0 if head in ("", "+") else -1.0 if head == "-" else float(head)
            if tail.startswith("/"):
                return coef * value / float(tail[1:])
            if tail.startswith("*"):
                return coef * value * float(tail[1:])
            if tail == "":
                return coef * value
    raise ValueError(f"not a number: {text!r}")


def number(text: str) -> float:
    try:
        x = eval_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return x


def read_config(path: str) -> dict[str, str]:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _add_relaxation(p: argparse.ArgumentParser):
    p.add_argument("--gamma-p", type=number, default=0.0, help="pure dephasing rate")
    p.add_argument("--gamma-d", type=number, default=0.0, help="population decay rate")
    p.add_argument("--delta", type=number, default=0.0, help="detuning")
    p.add_argument("--sigma-2e", type=number, default=0.0,
                   help="equilibrium excited population (ground gets the rest)")


def _add_method(p: argparse.ArgumentParser):
    p.add_argument("--method", choices=scan.METHODS, default="analytic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasecontrol",
        description="Two-pathway phase control of a dephasing two-level system.")
    parser.add_argument("--config", help="key = value file supplying defaults for any flag")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evolve", help="excited population versus time (CSV t,u,v,w,rho22)")
    ev.add_argument("--omega-eff", type=number, help="effective Rabi frequency (skips pathway data)")
    ev.add_argument("--omega-h", type=number, help="one-photon pathway magnitude |Omega_h|")
    ev.add_argument("--theta-h", type=number, default=0.0)
    ev.add_argument("--omega-f", type=number, help="three-photon pathway magnitude |Omega_f|")
    ev.add_argument("--theta-f", type=number, default=0.0)
    ev.add_argument("--phi", type=number, default=0.0, help="relative laser phase phi_h - 3 phi_f")
    _add_relaxation(ev)
    ev.add_argument("--t-end", type=number, help="final time (required)")
    ev.add_argument("--samples", type=int, default=101)
    _add_method(ev)
    ev.add_argument("--step", type=number, help="RK4 step for --method ode")
    ev.add_argument("--out", help="output file (default: stdout)")

    pr = sub.add_parser("profile", help="population at turn-off versus phase (CSV phi_cap,omega_eff,rho22)")
    pr.add_argument("--mag", type=number, help="equal pathway magnitude |Omega_h| = |Omega_f| (required)")
    _add_relaxation(pr)
    pr.add_argument("--t-off", type=number, help="pulse turn-off time (required)")
    pr.add_argument("--n-phi", type=int, default=scan.DEFAULT_N_PHI)
    _add_method(pr)
    pr.add_argument("--mu-sign", choices=("+", "-"), default="+",
                    help="sign of mu * mu3; '-' sets theta_h - theta_f = pi")
    pr.add_argument("--out", help="output file (default: stdout)")

    sw = sub.add_parser("sweep", help="write the figure parameter grids as CSV files")
    sw.add_argument("--preset", help="fig1 or fig2 (required)")
    sw.add_argument("--out-dir", help="output directory (required)")
    sw.add_argument("--omega-eff", type=number, default=scan.FIG1_OMEGA_EFF, help="fig1 only")
    sw.add_argument("--gammas", type=_float_list, help="comma-separated dephasing rates")
    sw.add_argument("--t-end", type=number, default=scan.FIG1_T_END, help="fig1 only")
    sw.add_argument("--samples", type=int, default=scan.FIG1_SAMPLES, help="fig1 only")
    sw.add_argument("--mags", type=_float_list, help="fig2 only: comma-separated magnitudes")
    sw.add_argument("--t-offs", type=_float_list, help="fig2 only: comma-separated turn-off times")
    sw.add_argument("--n-phi", type=int, default=scan.DEFAULT_N_PHI, help="fig2 only")

    mu = sub.add_parser(
        "mu3", help="three-photon matrix element from a level CSV",
        description="Rows: mu1n_re,mu1n_im,munm_re,munm_im,mum2_re,mum2_im,omega_n1,omega_2m. "
                    f"Energy denominators with magnitude <= {DENOMINATOR_TOL:g} are rejected.")
    mu.add_argument("--levels", help="CSV of intermediate-level rows (required)")
    mu.add_argument("--omega-f", type=number, help="fundamental frequency (required)")
    return parser


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _relaxation(args) -> Relaxation:
    return Relaxation(gamma_p=args.gamma_p, gamma_d=args.gamma_d, delta=args.delta,
                      sigma_1e=1.0 - args.sigma_2e, sigma_2e=args.sigma_2e)


def _check_analytic(args):
    if args.method == "analytic" and (args.delta != 0 or args.gamma_d != 0):
        raise UsageError("--method analytic requires --delta 0 and --gamma-d 0")


def _write(text: str, out: str | None, stdout):
    if out is None:
        stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def evolve_csv(ts) -> str:
    buf = io.StringIO()
    buf.write("t,u,v,w,rho22\n")
    for t, (u, v, w), r in zip(ts.times, ts.states, ts.rho22):
        buf.write(",".join(fmt(x) for x in (t, u, v, w, r)) + "\n")
    return buf.getvalue()


def profile_csv(prof) -> str:
    buf = io.StringIO()
    buf.write("phi_cap,omega_eff,rho22\n")
    for row in zip(prof.cap_phis, prof.omega_eff, prof.rho22):
        buf.write(",".join(fmt(x) for x in row) + "\n")
    buf.write(f"# C={fmt(scan.degree_of_control(prof))}\n")
    return buf.getvalue()


def cmd_evolve(args, stdout):
    _require(args, "t_end")
    _check_analytic(args)
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if args.omega_eff is not None:
        if args.omega_h is not None or args.omega_f is not None:
            raise UsageError("give either --omega-eff or --omega-h/--omega-f, not both")
        drive = EffectiveDrive(args.omega_eff)
    else:
        _require(args, "omega_h", "omega_f")
        drive = PathwaySet(args.omega_h, args.theta_h, args.omega_f, args.theta_f, args.phi)
    ts = scan.time_series(drive, _relaxation(args), args.t_end, args.samples,
                          args.method, step=args.step)
    _write(evolve_csv(ts), args.out, stdout)


def cmd_profile(args, stdout):
    _require(args, "mag", "t_off")
    _check_analytic(args)
    if args.n_phi < 2:
        raise UsageError("--n-phi must be >= 2")
    theta_diff = 0.0 if args.mu_sign == "+" else math.pi
    prof = scan.phase_profile(args.mag, args.mag, theta_diff, _relaxation(args),
                              args.t_off, args.n_phi, args.method)
    _write(profile_csv(prof), args.out, stdout)


def cmd_sweep(args, stdout):
    _require(args, "preset", "out_dir")
    if args.preset not in ("fig1", "fig2"):
        raise UsageError(f"unknown preset {args.preset!r}; expected fig1 or fig2")
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise PhaseControlError(f"cannot create {out_dir}: {exc}") from exc
    if not os.access(out_dir, os.W_OK):
        raise PhaseControlError(f"output directory {out_dir} is not writable")

    index = []
    if args.preset == "fig1":
        gammas = sorted(args.gammas if args.gammas is not None else scan.FIG1_GAMMAS)
        for ts in scan.sweep_fig1(args.omega_eff, gammas, args.t_end, args.samples):
            name = f"fig1_oe{_tag(args.omega_eff)}_gp{_tag(ts.meta['gamma_p'])}.csv"
            (out_dir / name).write_text(evolve_csv(ts), encoding="utf-8")
            index.append((name, args.omega_eff, ts.meta["gamma_p"], ts.rho22[-1]))
        header = "file,omega_eff,gamma_p,rho22_end\n"
    else:
        mags = sorted(args.mags if args.mags is not None else scan.FIG2_MAGS)
        gammas = sorted(args.gammas if args.gammas is not None else scan.FIG2_GAMMAS)
        t_offs = sorted(args.t_offs if args.t_offs is not None else scan.FIG2_T_OFFS)
        for prof in scan.sweep_fig2(mags, gammas, t_offs, args.n_phi):
            mag, gamma_p, t_off = prof.meta["params"]
            name = f"fig2_mag{_tag(mag)}_gp{_tag(gamma_p)}_toff{_tag(t_off)}.csv"
            (out_dir / name).write_text(profile_csv(prof), encoding="utf-8")
            index.append((name, mag, gamma_p, t_off, scan.degree_of_control(prof)))
        header = "file,mag,gamma_p,t_off,C\n"
    lines = [header] + [",".join([row[0]] + [fmt(x) for x in row[1:]]) + "\n" for row in index]
    (out_dir / "index.csv").write_text("".join(lines), encoding="utf-8")
    stdout.write(f"wrote {len(index)} files and index.csv to {out_dir}\n")


def read_levels(path: str) -> tuple[list[LevelTriple], list[int]]:
    """Parse a level CSV into triples and their source line numbers."""
    triples, lines = [], []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 8:
                raise PhaseControlError(f"{path}: line {lineno}: expected 8 columns, got {len(row)}")
            try:
                x = [float(c) for c in row]
            except ValueError:
                raise PhaseControlError(f"{path}: line {lineno}: non-numeric value in {row}") from None
            triples.append(LevelTriple(complex(x[0], x[1]), complex(x[2], x[3]),
                                       complex(x[4], x[5]), x[6], x[7]))
            lines.append(lineno)
    return triples, lines


def cmd_mu3(args, stdout):
    _require(args, "levels", "omega_f")
    triples, lines = read_levels(args.levels)
    try:
        mu3 = three_photon_moment(triples, args.omega_f)
    except PhaseControlError as exc:
        if hasattr(exc, "index"):
            raise PhaseControlError(
                f"{args.levels}: line {lines[exc.index]}: singular denominator ({exc})") from exc
        raise
    stdout.write(f"{fmt(mu3.real)},{fmt(mu3.imag)}\n")


COMMANDS = {"evolve": cmd_evolve, "profile": cmd_profile, "sweep": cmd_sweep, "mu3": cmd_mu3}


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    values = read_config(known.config)
    # defaults go onto the subparser so explicit flags still override them
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in subparsers.choices.values():
        defaults = {}
        for action in sp._actions:
            if action.dest in values:
                raw = values[action.dest]
                defaults[action.dest] = action.type(raw) if action.type else raw
        sp.set_defaults(**defaults)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, UsageError, argparse.ArgumentTypeError) as exc:
        stderr.write(f"phasecontrol: error: config: {exc}\n")
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        stderr.write(f"phasecontrol {args.command}: error: {exc}\n")
        return 2
    except (PhaseControlError, OSError) as exc:
        stderr.write(f"phasecontrol {args.command}: error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
