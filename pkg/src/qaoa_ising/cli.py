"""Command-line front end: every pipeline as a seeded, file-emitting command.

Commands
--------
phase-diagram   exhaustive ground-state scan over (h, J2)  -> CSV + JSON
qaoa-grid       one-layer (gamma, beta) grid search        -> surface CSV + JSON
qaoa-sweep      grid search per (h, J2) cell               -> two heatmap CSVs
finite-size     annealed grids, RMSE vs largest size, fit  -> per-size CSVs + JSON
sample          evolve -> sample -> (noise) -> mitigate    -> counts + report CSVs
mitigate        correct a counts file for readout error    -> distribution CSV

Every run writes exactly one manifest.json (command, parameters, seed,
version, outputs, wall time) into its output directory. Exit codes:
0 success, 2 usage error, 3 domain error (bad physics/sizes/inputs).

Ranges are `lo:hi:step` with inclusive endpoints when the step divides the
span, or `lo:hi` plus an explicit `--*-points` count (linspace semantics);
a bare number denotes a single value. Angles accept multiples of pi
("0.143pi", "-0.046pi") or plain radians ("0.45").

The default worker count comes from QAOA_ISING_THREADS when set.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import pi
from pathlib import Path

import numpy as np

from . import __version__
from .anneal import AnnealConfig, finite_size_scan
from .errors import DomainError
from .ising import (
    IsingModel,
    SpinConfig,
    enumerate_ground_states,
    phase_diagram,
)
from .lattice import LatticeKind, build_unit_cell
from .qaoa import (
    GridSpec,
    Objective,
    QaoaAngles,
    evolve,
    grid_search,
    sample,
    sem_probability,
)
from .spam import (
    SpamModel,
    apply_channel,
    counts_to_distribution,
    mitigate_clipped,
    mitigate_inverse,
    uniform_symmetric,
)

THREADS_ENV = "QAOA_ISING_THREADS"

_KIND_ALIASES = {
    "square": LatticeKind.SQUARE,
    "ss": LatticeKind.SHASTRY_SUTHERLAND,
    "shastry_sutherland": LatticeKind.SHASTRY_SUTHERLAND,
    "shastry-sutherland": LatticeKind.SHASTRY_SUTHERLAND,
    "triangular": LatticeKind.TRIANGULAR,
}


def _parse_kind(text: str) -> LatticeKind:
    try:
        return _KIND_ALIASES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown lattice kind {text!r}; choose from "
            f"{sorted(set(_KIND_ALIASES))}"
        ) from None


def _parse_range(text: str) -> np.ndarray:
    """`lo:hi:step` (inclusive when step divides span), `lo:hi`, or `x`."""
    parts = text.split(":")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if len(values) == 1:
        return np.array(values)
    if len(values) == 2:
        lo, hi = values
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r} (hi < lo)")
        return np.array([lo, hi])
    if len(values) == 3:
        lo, hi, step = values
        if step <= 0 or hi < lo:
            raise argparse.ArgumentTypeError(f"empty or backwards range {text!r}")
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        return lo + step * np.arange(count)
    raise argparse.ArgumentTypeError(f"bad range {text!r}; use lo:hi:step")


def _resolve_axis(text_range: np.ndarray, points: int | None, flag: str) -> np.ndarray:
    """Apply a `--*-points` override: linspace over the range's endpoints."""
    if points is None:
        return text_range
    if points < 1:
        raise argparse.ArgumentTypeError(f"{flag} must be >= 1")
    return np.linspace(text_range[0], text_range[-1], points)


def _parse_angle(text: str) -> float:
    t = text.strip().lower().replace(" ", "")
    if t.endswith("pi"):
        head = t[:-2]
        if head in ("", "+"):
            factor = 1.0
        elif head == "-":
            factor = -1.0
        else:
            try:
                factor = float(head)
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad angle {text!r}") from None
        return factor * pi
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad angle {text!r}") from None


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if len(sizes) < 2:
        raise argparse.ArgumentTypeError(
            "need at least two comma-separated sizes (scan plus reference)"
        )
    if any(s < 2 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be >= 2")
    return sizes


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    version: str
    outputs: list[str]
    wall_time_s: float


def _jsonable(value):
    if isinstance(value, LatticeKind):
        return value.value
    if isinstance(value, np.ndarray):
        return [float(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _write_manifest(outdir: Path, args: argparse.Namespace, outputs: list[Path], t0: float) -> None:
    params = {
        k: _jsonable(v)
        for k, v in sorted(vars(args).items())
        if k not in ("func", "command")
    }
    manifest = RunManifest(
        command=args.command,
        parameters=params,
        seed=getattr(args, "seed", None),
        version=__version__,
        outputs=[p.name for p in outputs],
        wall_time_s=round(time.perf_counter() - t0, 3),
    )
    path = outdir / "manifest.json"
    path.write_text(json.dumps(manifest.__dict__, indent=2) + "\n")


def _outdir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------- commands


def cmd_phase_diagram(args) -> int:
    t0 = time.perf_counter()
    outdir = _outdir(args)
    h_axis = _resolve_axis(args.h, args.h_points, "--h-points")
    j2_axis = _resolve_axis(args.j2, args.j2_points, "--j2-points")
    diagram = phase_diagram(
        args.kind, args.n, h_axis, j2_axis, j1=args.j1, threads=args.threads
    )
    rows = []
    cells_json = []
    for i, h in enumerate(diagram.h_axis):
        for j, j2 in enumerate(diagram.j2_axis):
            c = diagram.cells[i][j]
            rows.append(
                [
                    _fmt(h),
                    _fmt(j2),
                    _fmt(float(c.mean_field_aligned_m)),
                    c.region_id,
                    c.degeneracy,
                    _fmt(c.energy),
                ]
            )
            cells_json.append(
                {
                    "h": float(h),
                    "j2": float(j2),
                    "mean_M": str(c.mean_field_aligned_m),
                    "region_id": c.region_id,
                    "degeneracy": c.degeneracy,
                    "energy": c.energy,
                }
            )
    csv_path = outdir / "phase_diagram.csv"
    _write_csv(csv_path, ["h", "j2", "mean_M", "region_id", "degeneracy", "energy"], rows)
    json_path = outdir / "phase_diagram.json"
    json_path.write_text(
        json.dumps(
            {
                "kind": args.kind.value,
                "n": args.n,
                "j1": args.j1,
                "h_axis": [float(v) for v in diagram.h_axis],
                "j2_axis": [float(v) for v in diagram.j2_axis],
                "cells": cells_json,
            },
            indent=2,
        )
        + "\n"
    )
    _write_manifest(outdir, args, [csv_path, json_path], t0)
    print(f"wrote {csv_path} ({len(rows)} cells)")
    return 0


def _model_from_args(args) -> IsingModel:
    cell = build_unit_cell(args.kind, args.n)
    return IsingModel(cell=cell, j1=args.j1, j2=args.j2, h=args.h)


def cmd_qaoa_grid(args) -> int:
    t0 = time.perf_counter()
    outdir = _outdir(args)
    model = _model_from_args(args)
    spec = GridSpec(
        n_beta=args.n_beta,
        n_gamma=args.n_gamma,
        gamma_halfwidth_factor=args.gamma_halfwidth_factor,
    )
    objective = Objective(args.objective)
    result = grid_search(model, spec, objective)
    csv_path = outdir / "surface.csv"
    rows = (
        [
            _fmt(result.gamma_axis[g]),
            _fmt(result.beta_axis[b]),
            _fmt(result.energy_surface[g, b]),
            _fmt(result.p_ground_surface[g, b]),
        ]
        for g in range(len(result.gamma_axis))
        for b in range(len(result.beta_axis))
    )
    _write_csv(csv_path, ["gamma", "beta", "energy", "p_ground"], rows)

    def point_json(p):
        return {
            "gamma": p.gamma,
            "beta": p.beta,
            "gamma_over_pi": p.gamma / pi,
            "beta_over_pi": p.beta / pi,
            "energy": p.energy,
            "p_ground": p.p_ground,
        }

    json_path = outdir / "grid_result.json"
    json_path.write_text(
        json.dumps(
            {
                "kind": args.kind.value,
                "n": args.n,
                "j1": args.j1,
                "j2": args.j2,
                "h": args.h,
                "objective": objective.value,
                "n_evaluations": result.n_evaluations,
                "best_energy_point": point_json(result.best_energy_point),
                "best_prob_point": point_json(result.best_prob_point),
                "selected_point": point_json(result.selected_point),
            },
            indent=2,
        )
        + "\n"
    )
    _write_manifest(outdir, args, [csv_path, json_path], t0)
    best = result.selected_point
    print(
        f"best ({objective.value}): gamma = {best.gamma / pi:+.4f} pi, "
        f"beta = {best.beta / pi:+.4f} pi, <H> = {best.energy:.6f}, "
        f"P_ground = {best.p_ground:.6f} "
        f"[{result.n_evaluations} evaluations]"
    )
    return 0


def cmd_qaoa_sweep(args) -> int:
    t0 = time.perf_counter()
    outdir = _outdir(args)
    h_axis = _resolve_axis(args.h, args.h_points, "--h-points")
    j2_axis = _resolve_axis(args.j2, args.j2_points, "--j2-points")
    cell = build_unit_cell(args.kind, args.n)
    spec = GridSpec(
        n_beta=args.n_beta, n_gamma=args.n_gamma, keep_surfaces=False
    )
    cells = [(float(h), float(j2)) for h in h_axis for j2 in j2_axis]
    results: list = [None] * len(cells)

    def run(idx: int) -> None:
        h, j2 = cells[idx]
        model = IsingModel(cell=cell, j1=args.j1, j2=j2, h=h)
        results[idx] = grid_search(model, spec)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            list(pool.map(run, range(len(cells))))
    else:
        for idx in range(len(cells)):
            run(idx)

    header = ["h", "j2", "gamma", "beta", "energy", "p_ground"]
    paths = {}
    for name, picker in (
        ("energy_objective.csv", lambda r: r.best_energy_point),
        ("pground_objective.csv", lambda r: r.best_prob_point),
    ):
        rows = []
        for (h, j2), result in zip(cells, results):
            p = picker(result)
            rows.append(
                [_fmt(h), _fmt(j2), _fmt(p.gamma), _fmt(p.beta), _fmt(p.energy), _fmt(p.p_ground)]
            )
        path = outdir / name
        _write_csv(path, header, rows)
        paths[name] = path
    _write_manifest(outdir, args, list(paths.values()), t0)
    print(f"wrote {len(cells)} cells to {outdir}")
    return 0


def cmd_finite_size(args) -> int:
    t0 = time.perf_counter()
    outdir = _outdir(args)
    h_axis = _resolve_axis(args.h, args.h_points, "--h-points")
    j2_axis = _resolve_axis(args.j2, args.j2_points, "--j2-points")
    config = AnnealConfig(sweeps=args.sweeps, restarts=args.restarts, seed=args.seed)
    scan = finite_size_scan(
        args.kind,
        args.sizes,
        config,
        h_axis=h_axis,
        j2_axis=j2_axis,
        j1=args.j1,
        threads=args.threads,
        keep_grids=True,
    )
    outputs = []
    for grid in scan.grids:
        path = outdir / f"magnetization_n{grid.n}.csv"
        rows = (
            [_fmt(grid.h_axis[i]), _fmt(grid.j2_axis[j]), _fmt(grid.values[i, j])]
            for i in range(grid.h_axis.size)
            for j in range(grid.j2_axis.size)
        )
        _write_csv(path, ["h", "j2", "M"], rows)
        outputs.append(path)
    json_path = outdir / "scan.json"
    json_path.write_text(
        json.dumps(
            {
                "kind": args.kind.value,
                "sizes": list(scan.sizes),
                "reference_n": scan.reference_n,
                "rmse": [{"n": s, "rmse": r} for s, r in scan.rmse_points],
                "fit": {
                    "prefactor": scan.fit.prefactor,
                    "exponent": scan.fit.exponent,
                    "exponent_stderr": scan.fit.exponent_stderr,
                    "r_squared": scan.fit.r_squared,
                },
            },
            indent=2,
        )
        + "\n"
    )
    outputs.append(json_path)
    _write_manifest(outdir, args, outputs, t0)
    print(
        f"exponent = {scan.fit.exponent:.3f} +/- {scan.fit.exponent_stderr:.3f} "
        f"(r^2 = {scan.fit.r_squared:.4f}), reference n = {scan.reference_n}"
    )
    return 0


def _spam_from_args(args, n_qubits: int) -> SpamModel | None:
    given = [
        args.spam_file is not None,
        args.spam_q is not None,
        args.spam_retention is not None,
    ]
    if sum(given) > 1:
        raise DomainError(
            "give at most one of --spam-file, --spam-q, --spam-retention"
        )
    if args.spam_file is not None:
        model = SpamModel.from_json(Path(args.spam_file).read_text())
        if model.n_qubits != n_qubits:
            raise DomainError(
                f"SPAM model is for {model.n_qubits} qubits, register has {n_qubits}"
            )
        return model
    if args.spam_q is not None:
        return SpamModel(p01=(args.spam_q,) * n_qubits, p10=(args.spam_q,) * n_qubits)
    if args.spam_retention is not None:
        return uniform_symmetric(n_qubits, args.spam_retention)
    return None


def cmd_sample(args) -> int:
    t0 = time.perf_counter()
    outdir = _outdir(args)
    model = _model_from_args(args)
    n = model.n_sites
    ground = enumerate_ground_states(model)
    state = evolve(model, QaoaAngles.single(args.gamma1, args.beta1))
    true_probs = np.abs(state) ** 2

    spam_model = _spam_from_args(args, n)
    if spam_model is None and (args.noise or args.variant != "none"):
        spam_model = uniform_symmetric(n)
    sample_probs = true_probs
    if args.noise:
        sample_probs = apply_channel(true_probs, spam_model)
    noisy_state = np.sqrt(sample_probs).astype(complex)
    counts = sample(noisy_state, args.shots, args.seed)

    observed = counts_to_distribution(counts.counts, n)
    clamped_mass = None
    if args.variant == "inverse":
        mitigated = mitigate_inverse(observed, spam_model)
    elif args.variant == "clipped":
        mitigated, clamped_mass = mitigate_clipped(observed, spam_model)
    else:
        mitigated = observed

    counts_path = outdir / "counts.csv"
    _write_csv(
        counts_path,
        ["config", "count"],
        (
            [cfg.to01(), c]
            for cfg, c in sorted(counts.counts.items(), key=lambda kv: kv[0].bits)
        ),
    )
    report_path = outdir / "report.csv"
    report_rows = []
    for cfg in ground.configs:
        z = cfg.bits
        raw = float(observed[z])
        report_rows.append(
            [
                cfg.to01(),
                _fmt(float(true_probs[z])),
                _fmt(raw),
                _fmt(float(mitigated[z])),
                _fmt(sem_probability(raw, args.shots)),
            ]
        )
    _write_csv(
        report_path,
        ["config", "true_prob", "raw_freq", "mitigated_prob", "sem"],
        report_rows,
    )
    outputs = [counts_path, report_path]
    if spam_model is not None:
        spam_path = outdir / "spam.json"
        spam_path.write_text(spam_model.to_json() + "\n")
        outputs.append(spam_path)
    summary_path = outdir / "summary.json"
    summary = {
        "ground_energy": ground.energy,
        "degeneracy": ground.degeneracy,
        "shots": args.shots,
        "variant": args.variant,
        "noise_applied": bool(args.noise),
        "p_ground_true": float(true_probs[[c.bits for c in ground.configs]].sum())
        / ground.degeneracy,
        "p_ground_raw": float(observed[[c.bits for c in ground.configs]].sum())
        / ground.degeneracy,
        "p_ground_mitigated": float(mitigated[[c.bits for c in ground.configs]].sum())
        / ground.degeneracy,
    }
    if clamped_mass is not None:
        summary["clamped_mass"] = clamped_mass
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    outputs.append(summary_path)
    _write_manifest(outdir, args, outputs, t0)
    print(
        f"{args.shots} shots, {ground.degeneracy} ground state(s); "
        f"P_ground raw = {summary['p_ground_raw']:.6f}, "
        f"mitigated = {summary['p_ground_mitigated']:.6f}"
    )
    return 0


def cmd_mitigate(args) -> int:
    t0 = time.perf_counter()
    outdir = _outdir(args)
    counts: dict[SpinConfig, int] = {}
    with Path(args.counts).open() as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(("config", "count")) - set(reader.fieldnames):
            raise DomainError(
                f"{args.counts} must be a CSV with 'config' and 'count' columns"
            )
        for row in reader:
            cfg = SpinConfig.from01(row["config"])
            counts[cfg] = counts.get(cfg, 0) + int(row["count"])
    if not counts:
        raise DomainError(f"no rows in {args.counts}")
    n = next(iter(counts)).width
    spam_model = _spam_from_args(args, n)
    if spam_model is None:
        raise DomainError(
            "need a SPAM model: one of --spam-file, --spam-q, --spam-retention"
        )
    observed = counts_to_distribution(counts, n)
    clamped_mass = None
    if args.variant == "inverse":
        mitigated = mitigate_inverse(observed, spam_model)
    else:
        mitigated, clamped_mass = mitigate_clipped(observed, spam_model)

    out_path = outdir / "mitigated.csv"
    rows = (
        [SpinConfig(z, n).to01(), _fmt(float(p))]
        for z, p in enumerate(mitigated)
        if p != 0.0
    )
    _write_csv(out_path, ["config", "probability"], rows)
    summary_path = outdir / "summary.json"
    summary = {
        "variant": args.variant,
        "n_qubits": n,
        "total_shots": int(sum(counts.values())),
        "min_probability": float(mitigated.min()),
        "sum": float(mitigated.sum()),
    }
    if clamped_mass is not None:
        summary["clamped_mass"] = clamped_mass
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    _write_manifest(outdir, args, [out_path, summary_path], t0)
    print(f"wrote {out_path}")
    return 0


# ---------------------------------------------------------------- parser


def _add_model_flags(p: argparse.ArgumentParser, with_h: bool = True) -> None:
    p.add_argument("--kind", type=_parse_kind, required=True, help="square | ss | triangular")
    p.add_argument("--n", type=int, default=3, help="lattice side length (default 3)")
    p.add_argument("--j1", type=float, default=1.0, help="NN coupling (default 1)")
    if with_h:
        p.add_argument("--j2", type=float, default=0.0, help="NNN coupling (default 0)")
        p.add_argument("--h", type=float, default=0.0, help="longitudinal field (default 0)")


def _add_axis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h", type=_parse_range, required=True, help="h range lo:hi:step")
    p.add_argument("--j2", type=_parse_range, required=True, help="J2 range lo:hi:step")
    p.add_argument("--h-points", type=int, default=None, help="override: h point count")
    p.add_argument("--j2-points", type=int, default=None, help="override: J2 point count")


def _add_common_flags(p: argparse.ArgumentParser, seed: bool = True) -> None:
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--threads",
        type=int,
        default=_default_threads(),
        help=f"worker threads (default ${THREADS_ENV} or 1)",
    )
    if seed:
        p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")


def _add_spam_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spam-file", default=None, help="JSON file with p01/p10 lists")
    p.add_argument("--spam-q", type=float, default=None, help="uniform symmetric flip probability")
    p.add_argument(
        "--spam-retention",
        type=float,
        default=None,
        help="derive q from an error-free register retention probability",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-ising",
        description="Frustrated Ising unit cells: exact scans, QAOA, annealing, readout mitigation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-diagram", help="exhaustive ground-state scan over (h, J2)")
    _add_model_flags(p, with_h=False)
    _add_axis_flags(p)
    _add_common_flags(p, seed=False)
    p.set_defaults(func=cmd_phase_diagram)

    p = sub.add_parser("qaoa-grid", help="one-layer (gamma, beta) grid search")
    _add_model_flags(p)
    p.add_argument("--n-beta", type=int, default=201, help="beta grid points (default 201)")
    p.add_argument("--n-gamma", type=int, default=300, help="gamma grid points (default 300)")
    p.add_argument(
        "--gamma-halfwidth-factor",
        type=float,
        default=0.55,
        help="gamma window halfwidth in units of pi/iota (default 0.55)",
    )
    p.add_argument(
        "--objective",
        choices=[o.value for o in Objective],
        default=Objective.ENERGY.value,
        help="which optimum to report as selected (default energy)",
    )
    _add_common_flags(p, seed=False)
    p.set_defaults(func=cmd_qaoa_grid)

    p = sub.add_parser("qaoa-sweep", help="grid search per (h, J2) cell")
    _add_model_flags(p, with_h=False)
    _add_axis_flags(p)
    p.add_argument("--n-beta", type=int, default=201)
    p.add_argument("--n-gamma", type=int, default=300)
    _add_common_flags(p, seed=False)
    p.set_defaults(func=cmd_qaoa_sweep)

    p = sub.add_parser("finite-size", help="annealed magnetization scaling scan")
    p.add_argument("--kind", type=_parse_kind, required=True)
    p.add_argument("--sizes", type=_parse_sizes, required=True, help="e.g. 3,5,7,10,15,20")
    p.add_argument("--j1", type=float, default=1.0)
    _add_axis_flags(p)
    p.add_argument("--sweeps", type=int, default=None, help="flip proposals per restart (default 200*N)")
    p.add_argument("--restarts", type=int, default=50)
    _add_common_flags(p)
    p.set_defaults(func=cmd_finite_size)

    p = sub.add_parser("sample", help="evolve, sample shots, optionally corrupt and mitigate")
    _add_model_flags(p)
    p.add_argument("--gamma1", type=_parse_angle, required=True, help='e.g. "-0.05pi" or radians')
    p.add_argument("--beta1", type=_parse_angle, required=True)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--noise", action="store_true", help="sample through the readout channel")
    _add_spam_flags(p)
    p.add_argument(
        "--variant",
        choices=["none", "inverse", "clipped"],
        default="none",
        help="mitigation applied to the sampled frequencies; a default "
        "calibration model is derived when none of the --spam-* flags is given",
    )
    _add_common_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("mitigate", help="correct a counts CSV for readout error")
    p.add_argument("--counts", required=True, help="CSV with config,count columns")
    _add_spam_flags(p)
    p.add_argument("--variant", choices=["inverse", "clipped"], default="clipped")
    _add_common_flags(p, seed=False)
    p.set_defaults(func=cmd_mitigate)

    return parser


_ANGLE_FLAGS = ("--gamma1", "--beta1")


def _fuse_angle_flags(argv: list[str]) -> list[str]:
    """Join angle flags with their values so argparse accepts "-0.05pi"."""
    fused = []
    it = iter(argv)
    for token in it:
        if token in _ANGLE_FLAGS:
            value = next(it, None)
            fused.append(token if value is None else f"{token}={value}")
        else:
            fused.append(token)
    return fused


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_fuse_angle_flags(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
