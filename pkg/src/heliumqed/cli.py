"""Command-line entry point.

Subcommands: feasibility, rabi, prepare, validate, sweep. Runs are driven
by a YAML config validated against a JSON schema (docs/config.schema.json
documents it); every run writes a manifest.json next to its artifacts.

Times are accepted in Rabi units tau = Omega_c * t. CSV output is
comma-separated, header row, LF endings, 17 significant digits.

Exit codes: 0 success, 2 config error, 3 numerical-tolerance failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from . import dynamics as dyn
from . import feasibility as fz
from . import hamiltonians as ham
from . import hydrogen as hy
from . import operators as ops
from . import states as st

TWO_PI = 2.0 * np.pi

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "params": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                name: {"type": "number"}
                for name in (
                    "lambda_image", "epsilon_he", "e_perp", "depth_h",
                    "cavity_len", "finesse", "waist", "temperature",
                    "atom_decay", "laser_amp", "laser_phase", "standing_phase",
                )
            },
        },
        "truncation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n_cavity": {"type": "integer", "minimum": 2},
                "n_vibration": {"type": "integer", "minimum": 2},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "z_max_bohr": {"type": "number", "minimum": 20},
                "n_points": {"type": "integer", "minimum": 2000},
            },
        },
        "time": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "t_max_rabi": {"type": "number", "exclusiveMinimum": 0},
                "n_samples": {"type": "integer", "minimum": 2},
            },
        },
        "rabi": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "initial_m": {"type": "integer", "minimum": 0},
                "initial_qubit": {"enum": ["g", "e"]},
            },
        },
        "prepare": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "target": {"enum": ["coherent", "cat"]},
                "t_rabi": {"type": "number", "minimum": 0},
                "measure": {"enum": ["g", "e"]},
                "wigner": {"type": "boolean"},
                "wigner_resolution": {"type": "integer", "minimum": 11},
            },
        },
        "validate": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "which": {"enum": ["ld", "rwa", "strong-drive"]},
                "eta_values": {"type": "array", "items": {"type": "number"}},
                "coupling_ratios": {"type": "array", "items": {"type": "number"}},
                "drive_ratios": {"type": "array", "items": {"type": "number"}},
                "t_final_rabi": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "parameter": {"type": "string"},
                "values": {"type": "array", "items": {"type": "number"}},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"directory": {"type": "string"}},
        },
        "seed": {"type": "integer"},
    },
}

DEFAULTS = {
    "truncation": {"n_cavity": 32, "n_vibration": 8},
    "grid": {"z_max_bohr": 40.0, "n_points": 8000},
    "time": {"t_max_rabi": 10.0, "n_samples": 201},
    "rabi": {"initial_m": 0, "initial_qubit": "e"},
    "prepare": {"target": "cat", "t_rabi": 1.5, "wigner": False,
                "wigner_resolution": 81},
    "validate": {
        "which": "ld",
        "eta_values": [1e-4, 1e-3, 1e-2],
        "coupling_ratios": [1e-2, 5e-3],
        "drive_ratios": [100.0, 1000.0],
        "t_final_rabi": 1.0,
    },
    "sweep": {"parameter": "e_perp", "values": []},
    "output": {"directory": "out"},
    "seed": 0,
}


class ConfigError(Exception):
    pass


class ToleranceFailure(Exception):
    pass


def fmt(x) -> str:
    """Fixed 17-significant-digit float formatting for reproducible output."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if not isinstance(v, str) else v for v in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")


def load_config(path: str | None) -> dict:
    raw = {}
    if path is not None:
        try:
            raw = yaml.safe_load(Path(path).read_text()) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    import jsonschema

    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config key {where!r}: {exc.message}") from exc
    cfg = {k: dict(v) if isinstance(v, dict) else v for k, v in DEFAULTS.items()}
    for key, val in raw.items():
        if isinstance(val, dict):
            cfg.setdefault(key, {}).update(val)
        else:
            cfg[key] = val
    try:
        cfg["params"] = fz.PhysicalParams(**raw.get("params", {}))
    except (TypeError, fz.ParameterError) as exc:
        raise ConfigError(f"params: {exc}") from exc
    return cfg


def n_workers() -> int:
    try:
        return max(1, int(os.environ.get("HELIUMQED_WORKERS", "1")))
    except ValueError:
        return 1


class Run:
    """Output directory + manifest bookkeeping for one CLI invocation."""

    def __init__(self, cfg: dict, out_dir: str | None, quiet: bool):
        self.cfg = cfg
        self.quiet = quiet
        self.out = Path(out_dir or cfg["output"]["directory"])
        self.out.mkdir(parents=True, exist_ok=True)
        self.checks: list[dict] = []
        self.extras: dict = {}
        self.t0 = time.monotonic()

    def check(self, name: str, value: float, passed: bool, threshold: str) -> None:
        self.checks.append(
            {"name": name, "value": value, "passed": bool(passed),
             "threshold": threshold}
        )

    def say(self, msg: str) -> None:
        if not self.quiet:
            print(msg)

    def finish(self, command: str) -> None:
        cfg_echo = dict(self.cfg)
        cfg_echo["params"] = {
            k: v for k, v in vars(self.cfg["params"]).items()
        }
        manifest = {
            "tool": "heliumqed",
            "version": __version__,
            "command": command,
            "config": cfg_echo,
            "wall_time_s": time.monotonic() - self.t0,
            "checks": self.checks,
            **self.extras,
        }
        (self.out / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True, default=float) + "\n"
        )
        if any(not c["passed"] for c in self.checks):
            raise ToleranceFailure(
                "; ".join(c["name"] for c in self.checks if not c["passed"])
            )


def _solve_hydrogen(cfg: dict, stark: bool = True) -> hy.HydrogenSolution:
    p = cfg["params"]
    r_b = hy.bohr_radius(p.lambda_image)
    return hy.stark_solve(
        p.lambda_image,
        p.e_perp if stark else 0.0,
        z_max=cfg["grid"]["z_max_bohr"] * r_b,
        n_points=cfg["grid"]["n_points"],
    )


def cmd_feasibility(cfg: dict, run: Run, no_stark: bool = False) -> None:
    p = cfg["params"]
    if no_stark:
        e1 = hy.energy_unperturbed(1, p.lambda_image)
        e2 = hy.energy_unperturbed(2, p.lambda_image)
        from .constants import HBAR

        omega_a = (e2 - e1) / HBAR
        r_b = hy.bohr_radius(p.lambda_image)
        z_gg, z_ee, z_ge = hy.dipole_elements_unperturbed(r_b)
    else:
        sol = _solve_hydrogen(cfg)
        omega_a, r_b = sol.omega_a, sol.bohr_radius
        z_gg, z_ee, z_ge = sol.z_gg, sol.z_ee, sol.z_ge
        write_csv(
            run.out / "wavefunctions.csv",
            ["z_m", "psi_g", "psi_e"],
            sol.wavefunction_rows(),
        )
    report = fz.build_report(p, omega_a, z_ge, z_ee - z_gg, r_b)
    flat = report.as_dict()
    notes = flat.pop("notes")
    (run.out / "report.json").write_text(
        json.dumps({k: float(v) for k, v in flat.items()},
                   indent=2, sort_keys=True) + "\n"
    )
    provenance = {
        "bohr_radius": "r_B = hbar^2/(m_e e^2 Lambda)",
        "nu": "nu = sqrt(e E_perp/(m_e h))",
        "omega_a": "two lowest Stark-shifted eigenvalues"
        if not no_stark else "unperturbed 1/n^2 spectrum",
        "omega_c": "resonant with omega_a",
        "eta_c": "eta = omega_c sqrt(hbar/(2 m_e nu))/c",
        "eta_l": "eta = omega_l sqrt(hbar/(2 m_e nu))/c",
        "omega_rabi_c": "e z_ge sqrt(omega_c/(8 hbar eps0 V))",
        "omega_rabi_c_tilde": "e (z_ee - z_gg) sqrt(omega_c/(32 hbar eps0 V))",
        "omega_rabi_l": "e z_ge E_z/(2 hbar)",
        "omega_rabi_l_tilde": "e (z_ee - z_gg) E_z/(4 hbar)",
        "g0": "g0 = 2 Omega_c",
        "kappa": "kappa = c pi/(2 F L)",
        "n0": "n0 = gamma^2/(2 g0^2)",
        "cap_n0": "N0 = 2 kappa gamma/g0^2",
        "p0": "P0 = 1 - exp(-hbar omega_c/(k_B T))",
        "mode_volume": "V = pi (w/2)^2 L",
        "loc_length": "L_par = sqrt(hbar/(m_e nu))",
    }
    lines = [f"{'quantity':<22}{'value (rad/s or SI)':>24}{'value/2pi (Hz)':>24}  formula"]
    for key, value in sorted(flat.items()):
        per2pi = fmt(value / TWO_PI) if "omega" in key or key in (
            "nu", "g0", "kappa") else ""
        lines.append(f"{key:<22}{fmt(value):>24}{per2pi:>24}  {provenance[key]}")
    for note in notes:
        lines.append(f"note: {note}")
    (run.out / "report.txt").write_text("\n".join(lines) + "\n")
    run.extras["report"] = {k: float(v) for k, v in flat.items()}
    run.extras["notes"] = notes
    run.say(f"g0 = {fmt(report.g0)} rad/s ({fmt(report.g0 / TWO_PI)} Hz)")


def cmd_rabi(cfg: dict, run: Run) -> None:
    n_c = cfg["truncation"]["n_cavity"]
    m0 = cfg["rabi"]["initial_m"]
    q0 = cfg["rabi"]["initial_qubit"]
    taus = np.linspace(0.0, cfg["time"]["t_max_rabi"],
                       cfg["time"]["n_samples"])
    # under h_jc only Omega_c * t matters; work at Omega_c = 1
    space = ops.qubit_cavity_space(n_c)
    freqs = ham.ModelFrequencies(omega_a=1.0, omega_c=1.0, omega_rabi_c=1.0)
    hjc = ham.h_jc(freqs, space)
    init = st.joint(q0, st.fock(m0, n_c).vector, space)
    times = taus
    res = dyn.propagate(hjc, init, times)
    numeric = res.observables["excited_population"]
    exact = np.array([
        float(np.sum(np.abs(
            dyn.jc_exact(m0, q0, 1.0, t, n_c).vector.reshape(2, n_c)[1]
        ) ** 2))
        for t in times
    ])
    dev = float(np.max(np.abs(numeric - exact)))
    run.check("rabi_exact_vs_numeric", dev, dev < 1e-8, "< 1e-8")
    write_csv(
        run.out / "rabi.csv",
        ["tau", "excited_population_exact", "excited_population_numeric"],
        zip(taus, exact, numeric),
    )
    run.say(f"rabi trace written; exact-vs-numeric deviation {dev:.2e}")


def cmd_prepare(cfg: dict, run: Run) -> None:
    n_c = cfg["truncation"]["n_cavity"]
    target = cfg["prepare"]["target"]
    t_rabi = cfg["prepare"]["t_rabi"]
    alpha = -1j * t_rabi
    if not ops.displacement_headroom_ok(alpha, n_c):
        raise ConfigError(
            f"|alpha| = {abs(alpha):.3g} exceeds truncation headroom for "
            f"n_cavity = {n_c}; raise truncation.n_cavity"
        )
    if target == "coherent":
        cavity = st.prepare_coherent_dynamically(1.0, t_rabi, n_c)
        reference = st.coherent(alpha, n_c)
        fid = reference.fidelity(cavity)
        joint_state = None
    else:
        joint_state = st.prepare_cat(1.0, t_rabi, n_c)
        reference = st.cat_reference(alpha, joint_state.space)
        fid = joint_state.fidelity(reference)
        cavity = joint_state.reduced(ops.CAVITY)
    run.check("fidelity_vs_target", fid, fid > 1 - 1e-8, "> 1 - 1e-8")
    analysis = st.analyze(cavity)
    write_csv(
        run.out / "photon_distribution.csv",
        ["m", "p_m"],
        enumerate(analysis.photon_distribution),
    )
    parity_rows = [("prepared", analysis.parity)]
    run.extras["prepare"] = {
        "target": target, "alpha_abs": abs(alpha), "fidelity": fid,
        "parity": analysis.parity, "mean_n": analysis.mean_n,
    }
    # the Wigner grid shows the post-measurement cavity when a measurement
    # is requested (the unmeasured reduced cat is a near-classical mixture)
    wigner_state = cavity
    measure = cfg["prepare"].get("measure")
    if measure and target == "cat":
        collapsed, prob = st.measure_qubit(joint_state, measure)
        m_analysis = st.analyze(collapsed)
        write_csv(
            run.out / f"photon_distribution_{measure}.csv",
            ["m", "p_m"],
            enumerate(m_analysis.photon_distribution),
        )
        parity_rows.append((f"measured_{measure}", m_analysis.parity))
        run.extras["prepare"][f"p_{measure}"] = prob
        wigner_state = collapsed
    write_csv(run.out / "parity.csv", ["state", "parity"], parity_rows)
    if cfg["prepare"]["wigner"]:
        w_analysis = st.analyze(
            wigner_state,
            wigner_range=(abs(alpha) + 4.0, abs(alpha) + 4.0),
            wigner_resolution=cfg["prepare"]["wigner_resolution"],
        )
        rows = [
            (x, p, w_analysis.wigner[j, i])
            for j, p in enumerate(w_analysis.wigner_p)
            for i, x in enumerate(w_analysis.wigner_x)
        ]
        write_csv(run.out / "wigner.csv", ["x", "p", "w"], rows)
    run.say(f"{target} prepared at tau = {t_rabi}; fidelity {fid:.12f}")


def _validate_rows(cfg: dict):
    which = cfg["validate"]["which"]
    n_c = cfg["truncation"]["n_cavity"]
    n_v = cfg["truncation"]["n_vibration"]
    t_rabi = cfg["validate"]["t_final_rabi"]
    if which == "ld":
        freqs = ham.ModelFrequencies(
            omega_a=1.0, omega_c=1.0, nu=0.06,
            omega_rabi_c=0.01, omega_rabi_c_tilde=0.004,
        )
        points = cfg["validate"]["eta_values"]

        def job(eta):
            return dyn.ld_check(freqs, [eta], t_rabi / 0.01,
                                min(n_c, 12), n_v)[0]

        header = ["eta", "infidelity"]
    elif which == "rwa":
        points = cfg["validate"]["coupling_ratios"]

        def job(ratio):
            return _rwa_infidelity(ratio, t_rabi, min(n_c, 16))

        header = ["coupling_ratio", "infidelity"]
    else:
        points = cfg["validate"]["drive_ratios"]

        def job(ratio):
            return dyn.strong_driving_check(
                0.05, 0.05 * ratio, t_rabi / 0.05, n_c
            )

        header = ["drive_ratio", "infidelity"]
    with ThreadPoolExecutor(max_workers=n_workers()) as pool:
        values = list(pool.map(job, points))
    return header, list(zip(points, values))


def _rwa_infidelity(coupling_ratio: float, t_rabi: float, n_c: int) -> float:
    """Worst-case infidelity of the exact-RWA JC evolution against the full
    interaction-picture model, sampled over t_rabi Rabi periods."""
    rc = coupling_ratio  # omega_c = 1
    space = ops.qubit_cavity_space(n_c)
    freqs = ham.ModelFrequencies(omega_a=1.0, omega_c=1.0, omega_rabi_c=rc)
    h_int = ham.h_interaction(freqs, space)
    init = st.joint("e", st.fock(0, n_c).vector, space)
    times = np.linspace(0.0, t_rabi * np.pi / rc, 33)
    res = dyn.propagate(h_int, init, times)
    worst = 0.0
    for t, state in zip(times[1:], res.states[1:]):
        exact = dyn.jc_exact(0, "e", rc, t, n_c)
        v = state.vector / np.linalg.norm(state.vector)
        worst = max(worst, 1.0 - abs(np.vdot(v, exact.vector)) ** 2)
    return worst


def cmd_validate(cfg: dict, run: Run) -> None:
    header, rows = _validate_rows(cfg)
    which = cfg["validate"]["which"]
    write_csv(run.out / f"validate_{which}.csv", header, rows)
    run.extras["validate"] = {"which": which, "n_points": len(rows)}
    run.say(f"{which} sweep: {len(rows)} points")


def cmd_sweep(cfg: dict, run: Run) -> None:
    """Closed-form feasibility figures swept over one PhysicalParams field."""
    param = cfg["sweep"]["parameter"]
    values = cfg["sweep"]["values"]
    base = vars(cfg["params"]).copy()
    if param not in base:
        raise ConfigError(f"sweep parameter {param!r} is not a PhysicalParams field")

    def figures(value):
        from .constants import C_LIGHT

        p = fz.PhysicalParams(**{**base, param: value})
        nu = fz.trap_frequency(p.e_perp, p.depth_h)
        r_b = hy.bohr_radius(p.lambda_image)
        kappa = np.pi * C_LIGHT / (2.0 * p.finesse * p.cavity_len)
        volume = fz.mode_volume(p.waist, p.cavity_len)
        return (value, nu, kappa, volume, r_b)

    with ThreadPoolExecutor(max_workers=n_workers()) as pool:
        rows = list(pool.map(figures, values))
    write_csv(
        run.out / "sweep.csv",
        [param, "nu", "kappa", "mode_volume", "bohr_radius"],
        rows,
    )
    run.say(f"sweep over {param}: {len(rows)} points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heliumqed",
        description="Electron-on-helium THz cavity QED simulator",
    )
    parser.add_argument("--config", help="YAML run configuration")
    parser.add_argument("--out-dir", help="output directory override")
    parser.add_argument("--truncation", type=int,
                        help="cavity Fock truncation override")
    parser.add_argument("--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p_feas = sub.add_parser("feasibility", help="figures of merit report")
    p_feas.add_argument("--no-stark", action="store_true",
                        help="use the unperturbed spectrum for omega_a")
    sub.add_parser("rabi", help="vacuum/photon Rabi oscillation traces")
    p_prep = sub.add_parser("prepare", help="coherent/cat state preparation")
    p_prep.add_argument("--target", choices=["coherent", "cat"])
    p_prep.add_argument("--t-rabi", type=float, dest="t_rabi")
    p_val = sub.add_parser("validate", help="approximation validity sweeps")
    p_val.add_argument("--which", choices=["ld", "rwa", "strong-drive"])
    sub.add_parser("sweep", help="feasibility figures over a parameter list")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.truncation is not None:
        cfg["truncation"]["n_cavity"] = args.truncation
    if getattr(args, "target", None):
        cfg["prepare"]["target"] = args.target
    if getattr(args, "t_rabi", None) is not None:
        cfg["prepare"]["t_rabi"] = args.t_rabi
    if getattr(args, "which", None):
        cfg["validate"]["which"] = args.which

    run = Run(cfg, args.out_dir, args.quiet)
    handlers = {
        "feasibility": lambda: cmd_feasibility(
            cfg, run, no_stark=getattr(args, "no_stark", False)
        ),
        "rabi": lambda: cmd_rabi(cfg, run),
        "prepare": lambda: cmd_prepare(cfg, run),
        "validate": lambda: cmd_validate(cfg, run),
        "sweep": lambda: cmd_sweep(cfg, run),
    }
    try:
        handlers[args.command]()
        run.finish(args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (hy.ConvergenceError, dyn.AccuracyError, ToleranceFailure) as exc:
        print(f"numerical tolerance failure: {exc}", file=sys.stderr)
        try:
            run.finish(args.command)
        except ToleranceFailure:
            pass
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
