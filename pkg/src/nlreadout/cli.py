"""Command-line front end.

Subcommands
-----------
spectrum      transformed frequencies, detunings and lambdas as CSV
sweep         hysteresis drive sweep for one state (response data)
bifurcation   per-state bistability report at one detuning
borders       critical drive vs detuning per state (threshold maps)
parity-plan   drive tones and windows for a parity measurement
decoherence   channel coefficients vs n and leakage-dephasing tables
oracle-check  brute-force Lindblad validation suite
repro         report pipelines reproducing the reference data sets

Every run writes its outputs into --out (default ``.``) together with a
``run_manifest.json`` recording the subcommand, configuration and
parameter grids; data files carry a ``# manifest:`` comment line pointing
back at it.  Exit codes: 0 success, 1 bad input/validation, 2 numeric
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .device import (
    ConfigError,
    DeviceSpec,
    DriveSpec,
    LogicalState,
    ValidationError,
    load_device,
)
from .decoherence import (
    dephasing_coefficients,
    leakage_chis,
    leakage_dephasing_rate,
    relaxation_coefficients,
)
from .parity import PlanningError, all_states, parity_plan, stability_border
from .presets import four_qubit_device, two_qubit_device
from .spectrum import DispersiveError, detunings_and_lambdas
from .stability import bifurcation
from .steadystate import SolverError, solve_branch, sweep_drive
from . import figures, lindblad

# Published reference values for the report pipelines (critical drives of
# the two-qubit device in 20 log10(eps/MHz), and the leakage-dephasing
# magnitude in kHz).
REFERENCE_TABLE1_DB = {"00": 41.4, "01": 38.7, "10": 37.6, "11": 33.4}
REFERENCE_GAMMA_PHI_KHZ = 9.0

MANIFEST_NAME = "run_manifest.json"


class _Run:
    """Output directory + manifest bookkeeping for one CLI invocation."""

    def __init__(self, outdir: Path, subcommand: str, config, parameters: dict):
        self.outdir = outdir
        outdir.mkdir(parents=True, exist_ok=True)
        self.manifest = {
            "subcommand": subcommand,
            "config": str(config) if config else None,
            "parameters": parameters,
            "outputs": [],
            "version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        }

    def write_csv(self, name: str, header: list[str], rows) -> Path:
        path = self.outdir / name
        buf = io.StringIO()
        buf.write(f"# manifest: {MANIFEST_NAME}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)
        path.write_text(buf.getvalue(), encoding="utf-8")
        self.manifest["outputs"].append(name)
        return path

    def write_text(self, name: str, text: str) -> Path:
        path = self.outdir / name
        path.write_text(text, encoding="utf-8")
        self.manifest["outputs"].append(name)
        return path

    def write_json(self, name: str, payload) -> Path:
        return self.write_text(name, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def register(self, path: Path):
        self.manifest["outputs"].append(path.name)

    def finish(self) -> Path:
        path = self.outdir / MANIFEST_NAME
        path.write_text(json.dumps(self.manifest, indent=2, sort_keys=True) + "\n")
        return path


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".10g")
    return str(x)


def _device_from_args(args) -> DeviceSpec:
    if getattr(args, "config", None):
        device = load_device(args.config)
    else:
        raise ConfigError("--config is required for this subcommand")
    if getattr(args, "kappa_mhz", None) is not None:
        device = DeviceSpec(
            cavity=type(device.cavity)(device.cavity.omega_c, args.kappa_mhz),
            qubits=device.qubits,
            levels=device.levels,
        )
    return device


def _parse_grid_db(spec: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        grid = 10 ** (np.linspace(float(lo), float(hi), int(n)) / 20.0)
    except Exception as exc:
        raise ConfigError(f"bad dB grid {spec!r}, expected lo:hi:npoints") from exc
    return grid


# --- subcommands -------------------------------------------------------------


def cmd_spectrum(args) -> int:
    device = _device_from_args(args)
    params = detunings_and_lambdas(device)
    run = _Run(Path(args.out), "spectrum", args.config, {"kappa_mhz": device.cavity.kappa})
    rows = []
    for j in range(params.n_qubits):
        for i in range(device.levels - 1):
            rows.append(
                [
                    j,
                    i + 1,
                    _fmt(params.g[j, i]),
                    _fmt(params.tilde_omega[j, i]),
                    _fmt(params.delta[j, i]),
                    _fmt(params.lam[j, i]),
                ]
            )
    run.write_csv(
        "spectrum.csv",
        ["qubit", "transition", "g_ghz", "tilde_omega_ghz", "delta_ghz", "lambda"],
        rows,
    )
    if args.json:
        run.write_json(
            "spectrum.json",
            {
                "tilde_omega_ghz": params.tilde_omega.tolist(),
                "delta_ghz": params.delta.tolist(),
                "lambda": params.lam.tolist(),
                "g_ghz": params.g.tolist(),
            },
        )
    run.finish()
    return 0


def _sweep_rows(result):
    rows = []
    for e, r in zip(result.epsilon, result.results):
        rows.append(
            [
                _fmt(e),
                _fmt(20 * np.log10(e)),
                _fmt(r.n),
                _fmt(1e3 * r.chi),
                _fmt(1e3 * r.chi),
                r.branch,
            ]
        )
    return rows


SWEEP_HEADER = ["epsilon_mhz", "epsilon_db", "n", "chi_mhz", "eff_freq_minus_bare_mhz", "branch"]


def cmd_sweep(args) -> int:
    device = _device_from_args(args)
    params = detunings_and_lambdas(device)
    state = LogicalState.from_string(args.state)
    if args.grid_mhz:
        grid = np.linspace(*_parse_linear(args.grid_mhz))
    else:
        grid = _parse_grid_db(args.grid_db or "25:45:400")
    if args.direction == "down":
        grid = grid[::-1]
    run = _Run(
        Path(args.out),
        "sweep",
        args.config,
        {
            "state": args.state,
            "delta_c_mhz": args.delta_c_mhz,
            "direction": args.direction,
            "grid_mhz": args.grid_mhz,
            "grid_db": None if args.grid_mhz else (args.grid_db or "25:45:400"),
            "kappa_mhz": device.cavity.kappa,
        },
    )
    result = sweep_drive(
        grid, args.direction, state, params, device.cavity.kappa, args.delta_c_mhz
    )
    run.write_csv(f"sweep_{args.state}_{args.direction}.csv", SWEEP_HEADER, _sweep_rows(result))
    if args.json:
        run.write_json(
            f"sweep_{args.state}_{args.direction}.json",
            {
                "epsilon_mhz": result.epsilon.tolist(),
                "n": result.n.tolist(),
                "jump_epsilon_mhz": result.jump_epsilon,
            },
        )
    run.finish()
    if result.jump_epsilon is not None:
        print(f"jump at epsilon = {result.jump_epsilon:.6g} MHz")
    else:
        print("no jump detected (smooth response)")
    return 0


def _parse_linear(spec: str):
    try:
        lo, hi, n = spec.split(":")
        return float(lo), float(hi), int(n)
    except (ValueError, AttributeError) as exc:
        raise ConfigError(f"bad grid {spec!r}, expected lo:hi:npoints") from exc


BIF_HEADER = [
    "state",
    "exists",
    "delta_omega_mhz",
    "chi_nl_mhz",
    "n1",
    "n2",
    "epsilon1_mhz",
    "epsilon2_mhz",
    "epsilon2_db",
]


def _bif_rows(device, params, delta_c):
    rows = []
    for s in all_states(device.n_qubits):
        rep = bifurcation(s, params, device.cavity.kappa, delta_c)
        rows.append(
            [
                str(s),
                int(rep.exists),
                _fmt(rep.delta_omega),
                _fmt(rep.chi_nl),
                _fmt(rep.n1),
                _fmt(rep.n2),
                _fmt(rep.epsilon1),
                _fmt(rep.epsilon2),
                _fmt(20 * np.log10(rep.epsilon2) if rep.exists else None),
            ]
        )
    return rows


def cmd_bifurcation(args) -> int:
    device = _device_from_args(args)
    params = detunings_and_lambdas(device)
    run = _Run(
        Path(args.out),
        "bifurcation",
        args.config,
        {"delta_c_mhz": args.delta_c_mhz, "kappa_mhz": device.cavity.kappa},
    )
    rows = _bif_rows(device, params, args.delta_c_mhz)
    run.write_csv("bifurcation.csv", BIF_HEADER, rows)
    if args.json:
        run.write_json(
            "bifurcation.json",
            [dict(zip(BIF_HEADER, row)) for row in rows],
        )
    run.finish()
    for row in rows:
        print(", ".join(str(c) for c in row))
    return 0


def _border_column(packed):
    """Worker: epsilon_2 over a delta_c grid for one state (NaN if none)."""
    state_bits, params, kappa, grid = packed
    state = LogicalState(state_bits)
    col = np.full(len(grid), np.nan)
    for k, dc in enumerate(grid):
        rep = bifurcation(state, params, kappa, dc)
        if rep.exists:
            col[k] = rep.epsilon2
    return col


def _borders_data(device, params, grid, workers=1):
    states = all_states(device.n_qubits)
    packed = [(s.bits, params, device.cavity.kappa, grid) for s in states]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cols = list(pool.map(_border_column, packed))
    else:
        cols = [_border_column(p) for p in packed]
    return states, cols


def cmd_borders(args) -> int:
    device = _device_from_args(args)
    params = detunings_and_lambdas(device)
    grid = np.linspace(args.delta_c_from, args.delta_c_to, args.points)
    run = _Run(
        Path(args.out),
        "borders",
        args.config,
        {
            "delta_c_from": args.delta_c_from,
            "delta_c_to": args.delta_c_to,
            "points": args.points,
            "kappa_mhz": device.cavity.kappa,
            "workers": args.workers,
        },
    )
    states, cols = _borders_data(device, params, grid, args.workers)
    header = ["delta_c_mhz"] + [f"epsilon2_mhz_{s}" for s in states]
    rows = []
    for k, dc in enumerate(grid):
        rows.append([_fmt(dc)] + [_fmt(c[k]) if np.isfinite(c[k]) else "" for c in cols])
    run.write_csv("borders.csv", header, rows)
    if args.json:
        run.write_json(
            "borders.json",
            {
                "delta_c_mhz": grid.tolist(),
                "epsilon2_mhz": {
                    str(s): [v if np.isfinite(v) else None for v in c]
                    for s, c in zip(states, cols)
                },
            },
        )
    brows = []
    for s in states:
        try:
            b = stability_border(s, device, params)
            brows.append([str(s), _fmt(b.delta_c), _fmt(b.proxy)])
        except PlanningError:
            brows.append([str(s), "", ""])
    run.write_csv("border_summary.csv", ["state", "border_mhz", "proxy_mhz"], brows)
    run.finish()
    return 0


def _plan_text(device, plan) -> str:
    lines = ["parity readout plan", "==================="]
    lines.append(f"qubits: {device.n_qubits}, cavity {device.cavity.omega_c} GHz, "
                 f"kappa {device.cavity.kappa} MHz")
    for k, d in enumerate(plan.drives, start=1):
        lo, hi = d.epsilon_window
        lines.append(
            f"tone {k}: omega_d = {d.omega_d:.6f} GHz  (delta_c = {d.delta_c:+.3f} MHz), "
            f"lights excitation class {d.bright_class}, "
            f"window {lo:.3f}..{hi:.3f} MHz"
        )
    lo, hi = plan.epsilon_window
    lines.append(
        f"common drive window: {lo:.3f}..{hi:.3f} MHz "
        f"({20 * np.log10(lo):.2f}..{20 * np.log10(hi):.2f} dB)"
    )
    lines.append("")
    lines.append("state   per-tone outcome        parity")
    for s in sorted(plan.overall, key=str):
        tones = " ".join(f"{f:>6}" for f in plan.predicted[s])
        lines.append(f"|{s}>  {tones}   {plan.overall[s]}")
    return "\n".join(lines) + "\n"


def cmd_parity_plan(args) -> int:
    device = _device_from_args(args)
    plan = parity_plan(device)
    run = _Run(Path(args.out), "parity-plan", args.config, {"kappa_mhz": device.cavity.kappa})
    text = _plan_text(device, plan)
    run.write_text("parity_plan.txt", text)
    run.write_json(
        "parity_plan.json",
        {
            "drives": [
                {
                    "omega_d_ghz": d.omega_d,
                    "delta_c_mhz": d.delta_c,
                    "epsilon_window_mhz": list(d.epsilon_window),
                    "bright_class": d.bright_class,
                }
                for d in plan.drives
            ],
            "epsilon_window_mhz": list(plan.epsilon_window),
            "outcomes": {str(s): plan.overall[s] for s in plan.overall},
            "predicted": {str(s): list(plan.predicted[s]) for s in plan.predicted},
        },
    )
    run.finish()
    print(text, end="")
    return 0


def cmd_decoherence(args) -> int:
    device = _device_from_args(args)
    params = detunings_and_lambdas(device)
    q = device.qubits[args.qubit]
    lam1, lam2 = abs(params.lam[args.qubit, 0]), abs(params.lam[args.qubit, 1])
    gamma1 = q.gamma1 or 1.0
    gamma_phi = q.gamma_phi or 1.0
    run = _Run(
        Path(args.out),
        "decoherence",
        args.config,
        {"qubit": args.qubit, "kappa_mhz": device.cavity.kappa},
    )
    ns = np.logspace(-2, 8, args.points)
    rows = []
    for n in ns:
        rel = relaxation_coefficients(n, lam1, lam2, gamma1)
        dep = dephasing_coefficients(n, lam1, lam2, gamma_phi)
        rows.append(
            [_fmt(n)]
            + [_fmt(rel.extra[k]) for k in ("sx1", "sx2", "sz1", "sz2", "s1s2", "s2")]
            + [_fmt(dep.extra[k]) for k in ("z1", "z2", "x1", "x2")]
        )
    run.write_csv(
        "channel_coefficients.csv",
        ["n", "relax_sx1_mhz", "relax_sx2_mhz", "relax_sz1_mhz", "relax_sz2_mhz",
         "relax_s1s2_mhz", "relax_s2_mhz", "deph_z1_mhz", "deph_z2_mhz",
         "deph_x1_mhz", "deph_x2_mhz"],
        rows,
    )
    chi1, chi2 = leakage_chis(q, device.cavity.omega_c)
    grows = []
    for dc in np.linspace(args.delta_c_from, args.delta_c_to, 9):
        for eps in (5.0, 10.0, 20.0):
            for kap in np.linspace(1.0, 5.0, 9):
                rate = leakage_dephasing_rate(eps, dc, kap, chi1, chi2)
                grows.append(
                    [_fmt(dc), _fmt(eps), _fmt(kap), _fmt(rate.khz),
                     _fmt(rate.closed_form), _fmt(rate.definitional)]
                )
    run.write_csv(
        "gamma_phi.csv",
        ["delta_c_mhz", "epsilon_mhz", "kappa_mhz", "gamma_phi_khz",
         "closed_form_mhz", "definitional_mhz"],
        grows,
    )
    if args.json:
        run.write_json(
            "gamma_phi.json",
            [
                dict(zip(
                    ("delta_c_mhz", "epsilon_mhz", "kappa_mhz", "gamma_phi_khz",
                     "closed_form_mhz", "definitional_mhz"),
                    [float(v) for v in row],
                ))
                for row in grows
            ],
        )
    run.finish()
    return 0


def cmd_oracle_check(args) -> int:
    device = _device_from_args(args)
    run = _Run(Path(args.out), "oracle-check", args.config, {})
    lines = []
    ok = True

    def report(name, passed, detail=""):
        nonlocal ok
        ok &= passed
        line = f"{'PASS' if passed else 'FAIL'}  {name}  {detail}"
        lines.append(line)
        print(line)

    single = DeviceSpec(cavity=device.cavity, qubits=device.qubits[:1], levels=min(device.levels, 3))
    ground = LogicalState((0,))
    params = detunings_and_lambdas(single)

    sys_ = lindblad.build_system(single, ground, DriveSpec(5.0, 0.0), fock_cutoff=12)
    report("hamiltonian hermitian", sys_.hermiticity_defect() < 1e-12,
           f"defect {sys_.hermiticity_defect():.2e}")

    lv = lindblad.liouvillian(sys_)
    d = sys_.dimension
    diag = np.zeros(d * d)
    diag[np.arange(d) * d + np.arange(d)] = 1.0
    trace_defect = float(np.max(np.abs(diag @ lv)))
    report("liouvillian conserves trace", trace_defect < 1e-10, f"defect {trace_defect:.2e}")

    rows = lindblad.commutator_check(device)
    worst = max(abs(r.coefficient - r.expected) / abs(r.expected) for r in rows)
    report("commutator coefficients = transition detunings", worst < 1e-8,
           f"worst rel err {worst:.2e}")

    ratio = lindblad.uniqueness_ratio(
        lindblad.build_system(single, ground, DriveSpec(2.0, 0.0), fock_cutoff=6)
    )
    report("steady state unique", ratio > 1e6, f"singular-value ratio {ratio:.2e}")

    devs = []
    for eps in np.linspace(2.0, 14.0, 5):
        drive = DriveSpec(float(eps), 0.0)
        semi = solve_branch(drive, ground, params, single.cavity.kappa, 0.0)
        rho = lindblad.steady_state(lindblad.build_system(single, ground, drive, 24))
        n_q = lindblad.photon_number(
            lindblad.build_system(single, ground, drive, 24), rho
        )
        devs.append(abs(semi.n - n_q) / max(n_q, 1e-12))
    report("semiclassical low branch vs Lindblad (n <= 0.5)", max(devs) < 0.10,
           f"max rel dev {max(devs):.3f}")
    run.write_text("oracle_check.txt", "\n".join(lines) + "\n")
    run.finish()
    return 0 if ok else 2


def cmd_repro(args) -> int:
    fig = args.figure
    outdir = Path(args.out)
    kap = args.kappa_mhz
    if args.config:
        base = load_device(args.config)
        if kap is not None:
            base = DeviceSpec(
                cavity=type(base.cavity)(base.cavity.omega_c, kap),
                qubits=base.qubits, levels=base.levels,
            )
    elif fig in ("fig4", "fig5"):
        base = four_qubit_device(kappa=kap or 1.0)
    else:
        base = two_qubit_device(kappa=kap or 1.0)
    params = detunings_and_lambdas(base)
    run = _Run(outdir, f"repro {fig}", args.config,
               {"kappa_mhz": base.cavity.kappa, "figure": fig})

    if fig in ("fig2", "fig4"):
        grid = _parse_grid_db("25:45:400")
        states = all_states(base.n_qubits)
        if fig == "fig4":
            # identical qubits: one representative per excitation class
            reps = {}
            for s in states:
                reps.setdefault(s.excitations, s)
            states = [reps[m] for m in sorted(reps)]
        curves = {}
        for s in states:
            res = sweep_drive(grid, "up", s, params, base.cavity.kappa, 0.0)
            run.write_csv(f"{fig}_sweep_{s}.csv", SWEEP_HEADER, _sweep_rows(res))
            curves[str(s)] = (
                20 * np.log10(res.epsilon),
                res.n,
                1e3 * np.array([r.chi for r in res.results]),
            )
        if not args.no_plot:
            run.register(figures.render_sweep(outdir / f"{fig}.png", curves, 0.0,
                                              base.cavity.kappa))
    elif fig in ("fig3", "fig5"):
        grid = np.linspace(-70.0 if fig == "fig5" else -35.0, 5.0, args.points)
        states, cols = _borders_data(base, params, grid, args.workers)
        if fig == "fig5":
            reps = {}
            for s, c in zip(states, cols):
                reps.setdefault(s.excitations, (s, c))
            states = [reps[m][0] for m in sorted(reps)]
            cols = [reps[m][1] for m in sorted(reps)]
        header = ["delta_c_mhz"] + [f"epsilon2_mhz_{s}" for s in states]
        rows = [
            [_fmt(dc)] + [_fmt(c[k]) if np.isfinite(c[k]) else "" for c in cols]
            for k, dc in enumerate(grid)
        ]
        run.write_csv(f"{fig}_borders.csv", header, rows)
        borders = {}
        for s in states:
            try:
                borders[str(s)] = stability_border(s, base, params).delta_c
            except PlanningError:
                pass
        if not args.no_plot:
            run.register(
                figures.render_borders(
                    outdir / f"{fig}.png",
                    {str(s): (grid, c) for s, c in zip(states, cols)},
                    borders,
                    base.cavity.kappa,
                )
            )
    elif fig == "table1":
        rows = _bif_rows(base, params, 0.0)
        for row in rows:
            row.append(_fmt(REFERENCE_TABLE1_DB.get(row[0])))
        run.write_csv("table1.csv", BIF_HEADER + ["reference_db"], rows)
        labels = [r[0] for r in rows]
        ours = [float(r[8]) if r[8] else np.nan for r in rows]
        ref = [REFERENCE_TABLE1_DB[l] for l in labels]
        if not args.no_plot:
            run.register(figures.render_table(outdir / "table1.png", labels, ours, ref))
        for row in rows:
            print(f"|{row[0]}>  epsilon2 = {row[7]} MHz  ({row[8]} dB, reference {row[9]})")
    elif fig == "gamma-phi":
        chi1, chi2 = leakage_chis(base.qubits[0], base.cavity.omega_c)
        kgrid = np.linspace(1.0, 5.0, 41)
        closed, defin = [], []
        rows = []
        for kapv in kgrid:
            rate = leakage_dephasing_rate(10.0, -20.0, float(kapv), chi1, chi2)
            closed.append(rate.khz)
            defin.append(1e3 * abs(rate.definitional))
            rows.append([_fmt(kapv), _fmt(rate.khz), _fmt(rate.closed_form),
                         _fmt(rate.definitional)])
        run.write_csv(
            "gamma_phi_scan.csv",
            ["kappa_mhz", "gamma_phi_khz", "closed_form_mhz", "definitional_mhz"],
            rows,
        )
        if not args.no_plot:
            run.register(
                figures.render_gamma_phi(outdir / "gamma_phi.png", kgrid,
                                         np.array(closed), np.array(defin),
                                         REFERENCE_GAMMA_PHI_KHZ)
            )
    else:
        raise ConfigError(f"unknown figure id {fig!r}")
    run.finish()
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nlreadout",
        description="nonlinear dispersive-readout simulation toolkit",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand")

    def common(sp, config_required=True):
        sp.add_argument("--config", required=config_required,
                        help="device config (TOML)")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--json", action="store_true", help="also write JSON mirrors")
        sp.add_argument("--kappa-mhz", type=float, default=None,
                        help="override the cavity decay rate")

    sp = sub.add_parser("spectrum", help="transformed frequencies and detunings")
    common(sp)

    sp = sub.add_parser("sweep", help="hysteresis drive sweep for one state")
    common(sp)
    sp.add_argument("--state", required=True, help="bit string, e.g. 00")
    sp.add_argument("--delta-c-mhz", type=float, default=0.0)
    sp.add_argument("--direction", choices=("up", "down"), default="up")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--grid-db", default=None,
                   help="drive grid in dB, lo:hi:npoints (default 25:45:400)")
    g.add_argument("--grid-mhz", default=None, help="linear drive grid, lo:hi:npoints")

    sp = sub.add_parser("bifurcation", help="per-state bistability report")
    common(sp)
    sp.add_argument("--delta-c-mhz", type=float, default=0.0)

    sp = sub.add_parser("borders", help="critical drive vs detuning per state")
    common(sp)
    sp.add_argument("--delta-c-from", type=float, default=-35.0)
    sp.add_argument("--delta-c-to", type=float, default=5.0)
    sp.add_argument("--points", type=int, default=201)
    sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("parity-plan", help="parity-readout drive plan")
    common(sp)

    sp = sub.add_parser("decoherence", help="back-action coefficient tables")
    common(sp)
    sp.add_argument("--qubit", type=int, default=0)
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--delta-c-from", type=float, default=-30.0)
    sp.add_argument("--delta-c-to", type=float, default=-10.0)

    sp = sub.add_parser("oracle-check", help="brute-force Lindblad validation")
    common(sp)

    sp = sub.add_parser("repro", help="reference report pipelines")
    sp.add_argument("figure", choices=("fig2", "fig3", "fig4", "fig5", "table1", "gamma-phi"))
    common(sp, config_required=False)
    sp.add_argument("--points", type=int, default=161)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    return p


_DISPATCH = {
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "bifurcation": cmd_bifurcation,
    "borders": cmd_borders,
    "parity-plan": cmd_parity_plan,
    "decoherence": cmd_decoherence,
    "oracle-check": cmd_oracle_check,
    "repro": cmd_repro,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; map to the validation exit code
        return 0 if exc.code in (0, None) else 1
    if not args.subcommand:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _DISPATCH[args.subcommand](args)
    except (ConfigError, ValidationError, DispersiveError, PlanningError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SolverError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
