"""Command-line entry point.

Subcommands:

    run        advance a configured initial state and run trajectory checks
    verify     run one seeded inequality ensemble and write its ratio CSV
    norms      report the norm table of a checkpointed state
    stability  two-trajectory separation experiment in the weak metric

Exit codes: 0 success, 1 a check failed (or the run blew up), 2 usage or
configuration error.  BQ_OUTPUT_DIR overrides the configured output
directory unless --output-dir is given explicitly.
"""

from __future__ import annotations

import argparse
import inspect
import math
import os
import sys
from pathlib import Path

from .config import initial_norms, parse_config
from .diagnostics import (
    check_energy,
    check_gamma_smoothing,
    check_lipschitz,
    check_max_principle,
)
from .errors import BlowUpError, CheckpointError, ConfigurationError, InvalidInputError
from .littlewood_paley import BesovSpec, besov_norm, build_filter_bank
from .runner import resolve_output_dir, run, stability_experiment
from .simio import read_checkpoint
from .spectral import biot_savart, inverse_transform, lp_norm
from .verify import SUITES, EnsembleSpec, suite_passes


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bqsim",
        description="Pseudo-spectral Boussinesq solver and inequality verifier on the torus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="advance a configured run to t_end")
    p_run.add_argument("--config", required=True, help="path to a key=value config file")
    p_run.add_argument("--output-dir", default=None, help="override the output directory")
    p_run.add_argument(
        "--resume", default=None, help="checkpoint file to continue from instead of t=0"
    )

    p_verify = sub.add_parser("verify", help="run one inequality ensemble suite")
    p_verify.add_argument("--suite", required=True, choices=sorted(SUITES))
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--count", type=int, default=64)
    p_verify.add_argument("--n", type=int, default=128)
    p_verify.add_argument("--spectrum-gamma", type=float, default=2.5)
    p_verify.add_argument("--amplitude", type=float, default=1.0)
    p_verify.add_argument("--output-dir", default=None)
    p_verify.add_argument("--s", type=float, default=None, help="regularity index")
    p_verify.add_argument("--p", type=float, default=None, help="Lebesgue exponent")
    p_verify.add_argument("--q", type=int, default=None, help="dyadic block index")
    p_verify.add_argument("--beta", type=float, default=None, help="power-map exponent")
    p_verify.add_argument("--r", type=float, default=None, help="Lebesgue exponent r")
    p_verify.add_argument("--variant", choices=("binf", "b2a"), default=None)

    p_norms = sub.add_parser("norms", help="print the norm table of a checkpoint")
    p_norms.add_argument("--checkpoint", required=True)
    p_norms.add_argument(
        "--besov",
        default=None,
        metavar="s,p,r",
        help="additionally report this Besov norm of vorticity and temperature",
    )

    p_stab = sub.add_parser("stability", help="perturbed-trajectory separation experiment")
    p_stab.add_argument("--config", required=True)
    p_stab.add_argument("--delta", type=float, required=True)
    return parser


def _print_check(report) -> bool:
    verdict = "PASS" if report.passed else "FAIL"
    details = ", ".join(
        f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
        for k, v in report.details.items()
        if isinstance(v, (int, float, str))
    )
    print(f"{verdict} {report.name}: {details}")
    return report.passed


def _cmd_run(args) -> int:
    config = parse_config(Path(args.config).read_text())
    initial = read_checkpoint(args.resume) if args.resume else None
    if initial is not None:
        if initial.grid.n != config.n:
            raise ConfigurationError(
                f"resume checkpoint has n={initial.grid.n}, config has n={config.n}"
            )
        if initial.alpha != config.alpha:
            raise ConfigurationError(
                f"resume checkpoint has alpha={initial.alpha}, config has alpha={config.alpha}"
            )
    try:
        result = run(config, output_dir=args.output_dir, initial_state=initial)
    except BlowUpError as err:
        print(f"blow-up detected at t={err.state.t:.6g}; forensic checkpoint written")
        return 1
    final = result.records[-1]
    print(
        f"advanced to t={result.final_state.t:.6g} in {result.steps_taken} steps"
        f" (n={config.n}, alpha={config.alpha:g})"
    )
    print(f"artifacts in {result.output_dir}")
    checks = [
        check_max_principle(result.records, 2),
        check_max_principle(result.records, 4),
        check_max_principle(result.records, math.inf),
        check_energy(result.records),
        check_gamma_smoothing(result.records),
        check_lipschitz(result.records),
    ]
    passed = all([_print_check(c) for c in checks])
    print(
        f"final norms: l2_v={final.l2_v:.6g} l2_theta={final.l2_theta:.6g}"
        f" l2_omega={final.l2_omega:.6g} l2_gamma={final.l2_gamma:.6g}"
    )
    return 0 if passed else 1


def _cmd_verify(args) -> int:
    ens = EnsembleSpec(
        seed=args.seed,
        count=args.count,
        n=args.n,
        spectrum_gamma=args.spectrum_gamma,
        amplitude=args.amplitude,
    )
    suite_fn = SUITES[args.suite]
    accepted = set(inspect.signature(suite_fn).parameters) - {"ens"}
    kwargs = {}
    for name in ("s", "p", "q", "beta", "r", "variant"):
        value = getattr(args, name)
        if value is None:
            continue
        if name not in accepted:
            raise ConfigurationError(
                f"suite '{args.suite}' does not take parameter --{name}"
            )
        kwargs[name] = value
    report = suite_fn(ens, **kwargs)

    out = Path(
        args.output_dir
        if args.output_dir is not None
        else os.environ.get("BQ_OUTPUT_DIR") or "out"
    )
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{args.suite}.csv"
    report.write_csv(csv_path, [f"seed = {ens.seed}", f"n = {ens.n}", f"count = {ens.count}"])
    print(report.summary())
    print(f"ratio table written to {csv_path}")
    ok = suite_passes(report)
    print(("PASS" if ok else "FAIL") + f" {args.suite}")
    return 0 if ok else 1


def _parse_besov(raw: str) -> BesovSpec:
    parts = raw.split(",")
    if len(parts) != 3:
        raise ConfigurationError(f"--besov expects 's,p,r', got {raw!r}")
    try:
        s = float(parts[0])
        p = math.inf if parts[1].strip() in ("inf", "Inf") else float(parts[1])
        r = math.inf if parts[2].strip() in ("inf", "Inf") else float(parts[2])
    except ValueError:
        raise ConfigurationError(f"--besov expects numbers 's,p,r', got {raw!r}") from None
    return BesovSpec(s, p, r)


def _cmd_norms(args) -> int:
    state = read_checkpoint(args.checkpoint)
    print(f"checkpoint: n={state.grid.n} alpha={state.alpha:g} t={state.t:.12g}")
    table = initial_norms(state)
    omega_phys = inverse_transform(state.omega_hat)
    table["l2_omega"] = lp_norm(omega_phys, 2)
    table["linf_omega"] = lp_norm(omega_phys, math.inf)
    for key, value in table.items():
        print(f"{key} = {value:.12g}")
    if args.besov:
        spec = _parse_besov(args.besov)
        bank = build_filter_bank(state.grid)
        label = f"besov({spec.s:g},{spec.p:g},{spec.r:g})"
        print(f"{label}_omega = {besov_norm(state.omega_hat, spec, bank):.12g}")
        print(f"{label}_theta = {besov_norm(state.theta_hat, spec, bank):.12g}")
        print(
            f"{label}_v = "
            f"{besov_norm(biot_savart(state.omega_hat), spec, bank):.12g}"
        )
    return 0


def _cmd_stability(args) -> int:
    config = parse_config(Path(args.config).read_text())
    report = stability_experiment(config, args.delta)
    print(
        f"delta={report.delta:g} -> X_delta(T)={report.x_delta[-1]:.6g},"
        f" X_delta/4(T)={report.x_quarter[-1]:.6g}"
    )
    print(f"separation exponent gamma_fit = {report.gamma_fit:.6g}")
    ok = report.gamma_fit > 0
    print(("PASS" if ok else "FAIL") + " stability")
    return 0 if ok else 1


_COMMANDS = {
    "run": _cmd_run,
    "verify": _cmd_verify,
    "norms": _cmd_norms,
    "stability": _cmd_stability,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except (ConfigurationError, InvalidInputError, CheckpointError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
