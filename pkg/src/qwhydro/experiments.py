"""Named experiments: deterministic runs emitting plot-ready CSV data.

Every experiment writes long-format CSV (`t,x,value` or `t,x,re,im`,
17 significant digits, LF endings, t-major order) plus a JSON manifest
carrying the config echo, conservation diagnostics and the only timestamp
of the run.  Identical configs produce byte-identical data files.
"""

from __future__ import annotations

import datetime
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from ._spectral import TWO_PI
from .asymptotics import ShockChart, classify_zone, pearcey_shock_approx, shock_map
from .config import SimConfig
from .hydro import current_identity_gap, phases, spinor_from_hydro, currents
from .initial import ShockInitSpec, phase_modulated_state, plane_wave, schrodinger_initial
from .nonrel import nonrel_compare
from .schrodinger import spectral_propagate
from .walk import SpinorField, Trajectory, build_walk, dirac_residual, evolve, \
    step_walk, total_norm


@dataclass
class SpacetimeGrid:
    """Values on the outer product of a time list and the spatial grid."""

    x: np.ndarray
    t: np.ndarray
    values: np.ndarray  # shape (len(t), len(x))

    def __post_init__(self):
        if self.values.shape != (len(self.t), len(self.x)):
            raise ValueError("grid dimensions inconsistent")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def emit_spacetime_csv(grid: SpacetimeGrid, path: Path | str) -> Path:
    """Write the grid in long format, deterministically ordered."""
    path = Path(path)
    complex_data = np.iscomplexobj(grid.values)
    header = "t,x,re,im" if complex_data else "t,x,value"
    lines = [header]
    for i, t in enumerate(grid.t):
        for j, x in enumerate(grid.x):
            v = grid.values[i, j]
            if complex_data:
                lines.append(f"{_fmt(t)},{_fmt(x)},{_fmt(v.real)},{_fmt(v.imag)}")
            else:
                lines.append(f"{_fmt(t)},{_fmt(x)},{_fmt(v)}")
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


@dataclass
class RunResult:
    """Output files, diagnostics, and whether all enforced tolerances held."""

    paths: list[Path]
    diagnostics: dict
    ok: bool


def _worker_count() -> int:
    env = os.environ.get("QWHYDRO_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parallel_map(fn, items: list) -> list:
    workers = _worker_count()
    if workers <= 1 or len(items) < 4:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def _steps_for_times(times, params) -> list[int]:
    # snapshot times round down to whole steps (t = j·ε)
    return [int(np.floor(t / params.dt + 1e-9)) for t in times]


def _collect_walk(state: SpinorField, params, step_indices: list[int]):
    """March the walk once, keeping the states at the requested steps."""
    wanted = sorted(set(step_indices))
    out = {}
    cur = state
    if wanted and wanted[0] == 0:
        out[0] = cur.copy()
    last = wanted[-1] if wanted else 0
    for j in range(1, last + 1):
        cur = step_walk(cur, params)
        if j in wanted:
            out[j] = cur.copy()
    return [out[j] for j in wanted], cur


def _walk_shock_setup(cfg: SimConfig):
    params = build_walk(cfg.n_sites, cfg.mass)
    spec = ShockInitSpec(modes=cfg.modes, q_max=cfg.q_max, mass=cfg.mass)
    return params, spec


def _manifest(cfg: SimConfig, name: str, diagnostics: dict, extra: dict | None = None):
    doc = {
        "experiment": name,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": {
            "experiment": cfg.experiment,
            "n_sites": cfg.n_sites,
            "mass": cfg.mass,
            "q_max": cfg.q_max,
            "q": cfg.q,
            "modes": [[m.amplitude, m.wavenumber, m.phase_offset] for m in cfg.modes],
            "t_final": cfg.t_final,
            "n_steps": cfg.n_steps,
            "snapshot_times": list(cfg.snapshot_times),
            "tolerances": dict(sorted(cfg.tolerances.items())),
        },
        "diagnostics": diagnostics,
    }
    if extra:
        doc.update(extra)
    return doc


def _write_manifest(doc: dict, cfg: SimConfig, name: str) -> Path:
    path = Path(cfg.output_dir) / f"{name}_manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _check_tolerances(cfg: SimConfig, diagnostics: dict,
                      enforced: dict[str, str]) -> tuple[bool, dict]:
    """Compare diagnostics against configured tolerances.

    `enforced` maps tolerance names to diagnostic keys; a tolerance is
    checked when present in the config or in the defaults below.
    """
    defaults = {"norm_drift": 1e-10}
    verdicts = {}
    ok = True
    for tol_name, diag_key in enforced.items():
        limit = cfg.tolerances.get(tol_name, defaults.get(tol_name))
        if limit is None or diag_key not in diagnostics:
            continue
        passed = bool(diagnostics[diag_key] <= limit)
        verdicts[tol_name] = {"limit": limit, "value": diagnostics[diag_key],
                              "passed": passed}
        ok = ok and passed
    return ok, verdicts


# ---------------------------------------------------------------------------
# Individual experiments.
# ---------------------------------------------------------------------------

def run_dtqw_shock(cfg: SimConfig) -> RunResult:
    params, spec = _walk_shock_setup(cfg)
    state = phase_modulated_state(params, spec)
    n0 = total_norm(state, params)

    steps = _steps_for_times(cfg.snapshot_times, params)
    snaps, final = _collect_walk(state, params, steps)
    realized = [j * params.dt for j in sorted(set(steps))]

    density = np.array([currents(s).j0 for s in snaps])
    grid = SpacetimeGrid(x=params.x, t=np.array(realized), values=density)
    out = Path(cfg.output_dir)
    csv_path = emit_spacetime_csv(grid, out / "dtqw_shock_density.csv")

    drift = abs(total_norm(final, params) - n0) / n0
    diagnostics = {"norm_drift": float(drift), "initial_norm": float(n0)}
    ok, verdicts = _check_tolerances(cfg, diagnostics, {"norm_drift": "norm_drift"})
    doc = _manifest(cfg, "dtqw_shock", diagnostics,
                    {"requested_times": list(cfg.snapshot_times),
                     "realized_times": realized,
                     "tolerance_verdicts": verdicts, "ok": ok})
    man = _write_manifest(doc, cfg, "dtqw_shock")
    return RunResult(paths=[csv_path, man], diagnostics=diagnostics, ok=ok)


def run_dtqw_planewave(cfg: SimConfig) -> RunResult:
    params = build_walk(cfg.n_sites, cfg.mass)
    state = plane_wave(params, cfg.q)
    n_steps = cfg.n_steps
    if n_steps is None:
        n_steps = int(np.floor(cfg.t_final / params.dt)) if cfg.t_final else 10000
    n0 = total_norm(state, params)
    cur = state
    max_drift = 0.0
    check_every = max(1, n_steps // 16)
    for j in range(1, n_steps + 1):
        cur = step_walk(cur, params)
        if j % check_every == 0 or j == n_steps:
            max_drift = max(max_drift, abs(total_norm(cur, params) - n0) / n0)

    density = np.array([currents(state).j0, currents(cur).j0])
    grid = SpacetimeGrid(x=params.x,
                         t=np.array([0.0, n_steps * params.dt]),
                         values=density)
    out = Path(cfg.output_dir)
    csv_path = emit_spacetime_csv(grid, out / "dtqw_planewave_density.csv")

    diagnostics = {"norm_drift": float(max_drift), "n_steps": n_steps}
    ok, verdicts = _check_tolerances(cfg, diagnostics, {"norm_drift": "norm_drift"})
    doc = _manifest(cfg, "dtqw_planewave", diagnostics,
                    {"tolerance_verdicts": verdicts, "ok": ok})
    man = _write_manifest(doc, cfg, "dtqw_planewave")
    return RunResult(paths=[csv_path, man], diagnostics=diagnostics, ok=ok)


def run_schrodinger_shock(cfg: SimConfig) -> RunResult:
    params, spec = _walk_shock_setup(cfg)
    psi0 = schrodinger_initial(params, spec)
    from .schrodinger import schrodinger_hydro

    times = list(cfg.snapshot_times)
    densities, velocities = [], []
    for t in times:
        psi_t = spectral_propagate(psi0, cfg.mass, t)
        n, v = schrodinger_hydro(psi_t, cfg.mass)
        densities.append(n)
        velocities.append(v)

    out = Path(cfg.output_dir)
    t_arr = np.array(times)
    p_n = emit_spacetime_csv(SpacetimeGrid(params.x, t_arr, np.array(densities)),
                             out / "schrodinger_shock_density.csv")
    p_v = emit_spacetime_csv(SpacetimeGrid(params.x, t_arr, np.array(velocities)),
                             out / "schrodinger_shock_velocity.csv")

    norm0 = float(np.linalg.norm(psi0.values))
    norm1 = float(np.linalg.norm(spectral_propagate(psi0, cfg.mass, times[-1]).values))
    diagnostics = {"norm_drift": abs(norm1 - norm0) / norm0}
    ok, verdicts = _check_tolerances(cfg, diagnostics, {"norm_drift": "norm_drift"})
    doc = _manifest(cfg, "schrodinger_shock", diagnostics,
                    {"requested_times": times, "realized_times": times,
                     "tolerance_verdicts": verdicts, "ok": ok})
    man = _write_manifest(doc, cfg, "schrodinger_shock")
    return RunResult(paths=[p_n, p_v, man], diagnostics=diagnostics, ok=ok)


def _pearcey_row(args) -> list[float]:
    t, xs, mass, tol = args
    chart = ShockChart.from_mass(mass)
    row = []
    for x in xs:
        psi = pearcey_shock_approx(float(x), float(t), chart, tol)
        row.append(abs(psi) ** 2)
    return row


def run_pearcey_map(cfg: SimConfig) -> RunResult:
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.nx)
    ts = np.linspace(cfg.t_min, cfg.t_max, cfg.nt)
    rows = _parallel_map(_pearcey_row,
                         [(float(t), xs.tolist(), cfg.mass, cfg.pearcey_tol)
                          for t in ts])
    grid = SpacetimeGrid(x=xs, t=ts, values=np.array(rows))
    out = Path(cfg.output_dir)
    csv_path = emit_spacetime_csv(grid, out / "pearcey_map.csv")
    diagnostics = {"grid": [int(cfg.nt), int(cfg.nx)],
                   "max_intensity": float(np.max(rows))}
    doc = _manifest(cfg, "pearcey_map", diagnostics, {"ok": True})
    man = _write_manifest(doc, cfg, "pearcey_map")
    return RunResult(paths=[csv_path, man], diagnostics=diagnostics, ok=True)


def run_asymptotic_zones(cfg: SimConfig) -> RunResult:
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.nx)
    ts = np.linspace(cfg.t_min, cfg.t_max, cfg.nt)
    chart = ShockChart.from_mass(cfg.mass)
    values = np.empty((len(ts), len(xs)))
    for i, t in enumerate(ts):
        for j, x in enumerate(xs):
            T, X, _ = shock_map(float(x), float(t), chart)
            values[i, j] = int(classify_zone(T, X).zone)
    grid = SpacetimeGrid(x=xs, t=ts, values=values)
    out = Path(cfg.output_dir)
    csv_path = emit_spacetime_csv(grid, out / "asymptotic_zones.csv")
    counts = {f"zone_{z}": int(np.sum(values == z)) for z in (1, 2, 3)}
    doc = _manifest(cfg, "asymptotic_zones", counts, {"ok": True})
    man = _write_manifest(doc, cfg, "asymptotic_zones")
    return RunResult(paths=[csv_path, man], diagnostics=counts, ok=True)


def run_nonrel_compare(cfg: SimConfig) -> RunResult:
    params, spec = _walk_shock_setup(cfg)
    state = phase_modulated_state(params, spec)
    psi0 = schrodinger_initial(params, spec)

    steps = _steps_for_times(cfg.snapshot_times, params)
    snaps, _ = _collect_walk(state, params, steps)
    traj = Trajectory(params=params, snapshots=snaps, cadence=max(1, steps[-1] or 1))

    def oracle(t: float):
        return spectral_propagate(psi0, cfg.mass, t)

    records = nonrel_compare(traj, oracle, cfg.mass)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    rec_path = out / "nonrel_compare.json"
    with open(rec_path, "w", newline="\n") as fh:
        json.dump(records, fh, indent=2, sort_keys=True)
        fh.write("\n")

    final_err = records[-1]["density_l2"] if records else 0.0
    diagnostics = {"final_density_l2": float(final_err),
                   "records": len(records)}
    ok, verdicts = _check_tolerances(cfg, diagnostics,
                                     {"density_l2": "final_density_l2"})
    doc = _manifest(cfg, "nonrel_compare", diagnostics,
                    {"requested_times": list(cfg.snapshot_times),
                     "realized_times": [r["time"] for r in records],
                     "tolerance_verdicts": verdicts, "ok": ok})
    man = _write_manifest(doc, cfg, "nonrel_compare")
    return RunResult(paths=[rec_path, man], diagnostics=diagnostics, ok=ok)


def _fit_order(spacings, residuals) -> float:
    """Least-squares slope of log(residual) vs log(spacing)."""
    lx = np.log(np.asarray(spacings, dtype=float))
    ly = np.log(np.asarray(residuals, dtype=float))
    slope = np.polyfit(lx, ly, 1)[0]
    return float(slope)


def run_validation(cfg: SimConfig) -> RunResult:
    rng = np.random.default_rng(20260810)
    n_sites = cfg.n_sites or 4096
    mass = cfg.mass or 512.0
    n_steps = cfg.n_steps if cfg.n_steps is not None else 10000

    # unitarity
    params = build_walk(n_sites, mass)
    state = plane_wave(params, 0.0)
    n0 = total_norm(state, params)
    cur = state
    for _ in range(n_steps):
        cur = step_walk(cur, params)
    drift = abs(total_norm(cur, params) - n0) / n0

    # Madelung roundtrip + current identity on randomized smooth states
    small = build_walk(256, 16.0)
    worst_rt, worst_id = 0.0, 0.0
    for _ in range(20):
        comps = []
        for _c in range(2):
            coeff = np.zeros(small.n_sites, dtype=complex)
            for k in range(-4, 5):
                coeff[k % small.n_sites] = 0.4 * (rng.normal() + 1j * rng.normal())
            comps.append(np.fft.ifft(coeff * small.n_sites) + 4.0)
        st = SpinorField(comps[0], comps[1])
        rec = spinor_from_hydro(currents(st), phases(st))
        worst_rt = max(worst_rt,
                       float(np.max(np.abs(rec.left - st.left)
                                    + np.abs(rec.right - st.right))))
        worst_id = max(worst_id, current_identity_gap(st))

    # Dirac residual refinement with walk data (fixed mass, plane wave q=1)
    refine_res = []
    refine_eps = []
    for n in (512, 1024, 2048):
        p = build_walk(n, 16.0)
        traj = evolve(plane_wave(p, 1.0), p, 4, cadence=1)
        refine_res.append(dirac_residual(traj, p))
        refine_eps.append(p.spacing)
    dirac_monotone = all(b < a for a, b in zip(refine_res, refine_res[1:]))
    dirac_order = _fit_order(refine_eps, refine_res)

    diagnostics = {
        "norm_drift": float(drift),
        "roundtrip_max_error": worst_rt,
        "current_identity_gap": worst_id,
        "dirac_residuals": [float(r) for r in refine_res],
        "dirac_monotone": bool(dirac_monotone),
        "dirac_fitted_order": dirac_order,
    }
    enforced = {"norm_drift": "norm_drift",
                "roundtrip": "roundtrip_max_error",
                "current_identity": "current_identity_gap"}
    cfg_tols = dict(cfg.tolerances)
    cfg_tols.setdefault("norm_drift", 1e-12)
    cfg_tols.setdefault("roundtrip", 1e-12)
    cfg_tols.setdefault("current_identity", 1e-12)
    cfg2 = SimConfig(**{**cfg.__dict__, "tolerances": cfg_tols})
    ok, verdicts = _check_tolerances(cfg2, diagnostics, enforced)
    ok = ok and dirac_monotone

    doc = _manifest(cfg, "validation", diagnostics,
                    {"tolerance_verdicts": verdicts, "ok": ok})
    man = _write_manifest(doc, cfg, "validation")
    return RunResult(paths=[man], diagnostics=diagnostics, ok=ok)


EXPERIMENTS = {
    "dtqw_shock": run_dtqw_shock,
    "dtqw_planewave": run_dtqw_planewave,
    "schrodinger_shock": run_schrodinger_shock,
    "pearcey_map": run_pearcey_map,
    "asymptotic_zones": run_asymptotic_zones,
    "nonrel_compare": run_nonrel_compare,
    "validation": run_validation,
}


def run_experiment(cfg: SimConfig) -> RunResult:
    """Execute the configured experiment; outputs land in cfg.output_dir."""
    try:
        runner = EXPERIMENTS[cfg.experiment]
    except KeyError:
        raise ValueError(f"unknown experiment {cfg.experiment!r}") from None
    return runner(cfg)
