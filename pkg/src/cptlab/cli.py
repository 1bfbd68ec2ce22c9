"""``cpt-lab`` command-line front end.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 estimation-domain error.
"""

from __future__ import annotations

import argparse
import functools
import math
import sys
from pathlib import Path

import numpy as np

from . import config as cfg
from .analysis import cpt_spectrum, dip_curve, estimate_tau2
from .dynamics import moving_average, propagate
from .errors import (
    ConfigError,
    ConsistencyError,
    DomainError,
    EstimationError,
    IntegrationError,
    NonConvergenceError,
    NonUniqueSteadyStateError,
)
from .generator import GeneratorSpec
from .io import format_number, line_chart, write_metadata
from .model import basis_state, dark_state, projector
from .noise import NOISELESS, CorrelationModel, NoiseStrength, markov_strength, model_from_tau2
from .state_prep import (
    fidelity_g,
    fidelity_vs_omega2,
    fidelity_vs_ratio,
    fidelity_vs_tau2,
    minimal_adequate_omega2,
)
from .sweep import map_grid

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_ESTIMATE = 0, 1, 2, 3


def _label(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:g}"


def _write(path: Path, text: str):
    path.write_text(text, encoding="utf-8")


def _grid(lo, hi, n, log):
    if n == 1:
        return np.array([lo])
    return np.geomspace(lo, hi, n) if log else np.linspace(lo, hi, n)


def _run_bath(params, values, tau_c):
    c0 = values["gamma_e_c0"] / params.gamma_e
    spec = GeneratorSpec(params, CorrelationModel(c0=c0, tau_c=tau_c))
    n = values["n_points"]
    grid = np.linspace(0.0, values["t_end"], n) if n > 1 else np.array([values["t_end"]])
    if values["initial_state"].lower() == "dark":
        rho0 = projector(dark_state(params.omega1, params.omega2, params.phi))
    else:
        rho0 = basis_state(values["initial_state"])
    return propagate(spec, rho0, values["t_end"], grid, values["rtol"], values["atol"],
                     backend=values["backend"] or None)


def cmd_dynamics(values: dict, out: Path, jobs: int = 1, svg: bool = False) -> int:
    params = cfg.system_params(values)
    try:
        rho0_label = values["initial_state"]
        if rho0_label.lower() != "dark":
            basis_state(rho0_label)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    baths = values["tau_c"]
    trajectories = map_grid(functools.partial(_run_bath, params, values), baths, jobs)

    window = values["smooth_window"]
    series = []
    for tau_c, traj in zip(baths, trajectories):
        c0 = values["gamma_e_c0"] / params.gamma_e
        strength = markov_strength(CorrelationModel(c0=c0, tau_c=tau_c), params.gamma_e)
        tau2 = math.inf if strength is NOISELESS else strength.tau2
        meta = {f"param.{k}": float(v) for k, v in params.as_dict().items()}
        meta.update({"tau_c": float(tau_c), "gamma_e_c0": float(values["gamma_e_c0"]),
                     "tau2": float(tau2), "initial_state": rho0_label,
                     "rtol": float(values["rtol"]), "atol": float(values["atol"])})
        path = out / f"dynamics_tau_c-{_label(tau_c)}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            traj.to_csv(fh, meta)
        rho00 = moving_average(traj.observables["rho00"], window)
        series.append((f"tau_c={_label(tau_c)} us (tau2={_label(tau2)} us)", traj.times, rho00))
        print(f"tau_c = {_label(tau_c)} us  tau2 = {_label(tau2)} us  "
              f"rho00(t_end) = {traj.observables['rho00'][-1]:.6e}  "
              f"max trace defect = {traj.observables['trace_defect'].max():.2e}")

    with open(out / "dynamics_rho00.csv", "w", encoding="utf-8", newline="") as fh:
        write_metadata(fh, {"observable": "rho00", "smooth_window": window})
        fh.write(",".join(["t"] + [f"rho00_tau_c-{_label(tc)}" for tc in baths]) + "\n")
        times = trajectories[0].times
        for k, t in enumerate(times):
            fh.write(",".join([format_number(t)] + [format_number(s[2][k]) for s in series]) + "\n")
    if svg:
        _write(out / "dynamics.svg", line_chart(series, title="Excited-state population",
                                                xlabel="t (us)", ylabel="rho00"))
    return EXIT_OK


def cmd_spectrum(values: dict, out: Path, jobs: int = 1, svg: bool = False) -> int:
    params = cfg.system_params(values)
    if values["mode"] == "dip_curve":
        grid = np.geomspace(values["tau2_min"], values["tau2_max"], values["n_tau2"])
        result = dip_curve(params, grid, jobs=jobs)
        _write(out / "dip_curve.csv", result.to_csv())
        print(f"dip height: {result.values[0]:.6e} at tau2={_label(grid[0])} us -> "
              f"{result.values[-1]:.6e} at tau2={_label(grid[-1])} us")
        print("strictly decreasing: true")
        if svg:
            _write(out / "dip_curve.svg", line_chart(
                [("dip height", result.grid, result.values)], title="CPT dip height",
                xlabel="tau2 (us)", ylabel="rho00 at delta=0", logx=True))
        return EXIT_OK

    deltas = _grid(values["delta_min"], values["delta_max"], values["n_delta"], False)
    series = []
    for tau2 in values["tau2"]:
        noise = NOISELESS if math.isinf(tau2) else NoiseStrength.from_tau2(tau2, params.gamma_e)
        result = cpt_spectrum(params, noise, deltas, jobs=jobs)
        _write(out / f"spectrum_tau2-{_label(tau2)}.csv", result.to_csv())
        centre = int(np.argmin(np.abs(deltas)))
        print(f"tau2 = {_label(tau2)} us  dip rho00(delta={deltas[centre]:g}) = "
              f"{result.values[centre]:.6e}  argmin delta = {deltas[result.argmin]:g}")
        series.append((f"tau2={_label(tau2)} us", deltas, result.values))
    if svg:
        _write(out / "spectrum.svg", line_chart(series, title="CPT spectrum",
                                                xlabel="delta (MHz)", ylabel="rho00"))
    return EXIT_OK


def cmd_estimate(values: dict, out: Path, jobs: int = 1, svg: bool = False) -> int:
    params = cfg.system_params(values)
    p00 = values["measured_p00"]
    tau2 = estimate_tau2(params, p00, (values["tau2_lo"], values["tau2_hi"]), values["rel_tol"])
    strength = NoiseStrength.from_tau2(tau2, params.gamma_e)
    header = ["measured_p00", "tau2", "alpha", "gamma_e"]
    row = [p00, tau2, strength.alpha, params.gamma_e]
    print(f"measured rho00 at dip: {p00:.10g}")
    print(f"estimated tau2: {tau2:.10g} us")
    print(f"estimated alpha: {strength.alpha:.10g} (gamma_e = {params.gamma_e:g})")
    if "tau_c" in values:
        model = model_from_tau2(tau2, values["tau_c"], params.gamma_e)
        header += ["tau_c", "c0"]
        row += [values["tau_c"], model.c0]
        print(f"exponential model: tau_c = {values['tau_c']:g} us, c0 = {model.c0:.10g}")
    with open(out / "estimate.csv", "w", encoding="utf-8", newline="") as fh:
        write_metadata(fh, {f"param.{k}": float(v) for k, v in params.as_dict().items()})
        fh.write(",".join(header) + "\n")
        fh.write(",".join(format_number(v) for v in row) + "\n")
    return EXIT_OK


def cmd_fidelity(values: dict, out: Path, jobs: int = 1, svg: bool = False) -> int:
    sweep = values["sweep"]
    gamma = values["gamma"]
    grid = _grid(values["grid_min"], values["grid_max"], values["n_grid"], values["log_grid"])
    noise = NoiseStrength.from_tau2(values["tau2"])
    logx = values["log_grid"]
    report = []
    if sweep == "ratio":
        result = fidelity_vs_ratio(values["omega2"], grid, noise, gamma, jobs=jobs)
        report.append(f"argmin ratio: {result.grid[result.argmin]:.6g}")
        report.append(f"min fidelity: {result.values.min():.8f}")
        xlabel = "omega1/omega2"
    elif sweep == "omega2":
        result = fidelity_vs_omega2(values["ratio"], grid, noise, gamma, jobs=jobs)
        report.append(f"saturated: {str(result.metadata.get('saturated', False)).lower()}")
        report.append(f"plateau fidelity: {result.values[-1]:.8f}")
        w = minimal_adequate_omega2(values["ratio"], noise, gamma, values["threshold_defect"],
                                    omega2_range=(grid[0], grid[-1]))
        report.append(f"smallest adequate omega2: {w:.6g} MHz "
                      f"(threshold defect {values['threshold_defect']:g})")
        xlabel = "omega2 (MHz)"
    else:
        result = fidelity_vs_tau2(values["ratio"], values["omega2"], grid, gamma, jobs=jobs)
        f_ref = fidelity_g(values["ratio"], values["omega2"], values["report_tau2"], gamma)
        target = values["target_fidelity"]
        report.append("strictly increasing: true")
        report.append(f"fidelity at tau2={values['report_tau2']:g} us: {f_ref:.8f} "
                      f"({'below' if f_ref < target else 'at or above'} {target:g})")
        xlabel = "tau2 (us)"
    _write(out / f"fidelity_{sweep}.csv", result.to_csv())
    _write(out / f"fidelity_{sweep}_report.txt", "\n".join(report) + "\n")
    print("\n".join(report))
    if svg:
        _write(out / f"fidelity_{sweep}.svg", line_chart(
            [("fidelity", result.grid, result.values)], title="Dark-state fidelity",
            xlabel=xlabel, ylabel="fidelity", logx=logx))
    return EXIT_OK


def cmd_selfcheck(perturb=None) -> int:
    from . import selfcheck
    from .generator import perturbed_coefficient

    if perturb is not None:
        row, col = perturb
        with perturbed_coefficient(row, col, 1e-3):
            results = selfcheck.run()
    else:
        results = selfcheck.run()
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("selfcheck: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_NUMERIC


COMMANDS = {
    "dynamics": cmd_dynamics,
    "spectrum": cmd_spectrum,
    "estimate": cmd_estimate,
    "fidelity": cmd_fidelity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpt-lab",
        description="Noisy coherent population trapping: dynamics, spectra, "
                    "noise estimation and dark-state fidelity.",
    )
    parser.add_argument("command", choices=[*COMMANDS, "selfcheck"])
    parser.add_argument("--config", type=Path, help="INI config with a section for the command")
    parser.add_argument("--preset", help="built-in parameter set (fig2, fig3a, fig3b, fig4a, fig4b, fig4c)")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    parser.add_argument("--svg", action="store_true", help="also write SVG line charts")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    parser.add_argument("--perturb-coefficient", nargs=2, type=int, metavar=("ROW", "COL"),
                        help="selfcheck only: corrupt one generator entry by 1e-3")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selfcheck":
        return cmd_selfcheck(args.perturb_coefficient)
    try:
        if args.config is None and args.preset is None:
            raise ConfigError("either --config or --preset is required")
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        values = cfg.load(args.command, args.config, args.preset)
        args.out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](values, args.out, args.jobs, args.svg)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EstimationError as exc:
        print(f"estimation error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATE
    except (IntegrationError, NonConvergenceError, NonUniqueSteadyStateError, ConsistencyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
