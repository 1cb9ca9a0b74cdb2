"""Configuration-driven command line front end.

Commands: ``fidelity`` (per-photon fidelity and success-probability
curves), ``sweep`` (beta over a 2D parameter grid), ``schedule`` (switch
timeline and validation), ``oracle-check`` (dense identity suite) and
``reflection`` (reflection coefficient samples).  Configs are JSON; every
CSV starts with a comment line recording the resolved configuration.

Exit codes: 0 success, 1 config error, 2 validation failure, 3 resource
limit.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import cavity, lattice, metrics, oracle, scheduler, tensornet
from .errors import ResourceLimitError


class ConfigError(ValueError):
    pass


def _fmt(x):
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    return str(x)


def _write_csv(path, config, header, rows):
    lines = ["# config: " + json.dumps(config, sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _get(cfg, path, kind=None, default=KeyError):
    node = cfg
    walked = []
    for part in path.split("."):
        walked.append(part)
        if not isinstance(node, dict) or part not in node:
            if default is not KeyError:
                return default
            raise ConfigError(f"missing config field '{'.'.join(walked)}'")
        node = node[part]
    if kind is not None and not isinstance(node, kind):
        names = kind.__name__ if not isinstance(kind, tuple) else \
            "/".join(k.__name__ for k in kind)
        raise ConfigError(f"config field '{path}' must be {names}")
    return node


def _load_config(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc


def _dims(cfg):
    raw = _get(cfg, "dims", list)
    photons = _get(cfg, "photons", int, 0)
    try:
        return lattice.LatticeDims(tuple(raw), photons)
    except ValueError as exc:
        raise ConfigError(f"config field 'dims'/'photons': {exc}") from exc


def _error_model(cfg):
    block = _get(cfg, "error_model", dict)
    try:
        return metrics.ErrorModel(
            _get(block, "p", (int, float)),
            _get(block, "t2_ns", (int, float)),
            _get(block, "t_cycle_ns", (int, float)),
            _get(block, "eta", (int, float)))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"config field 'error_model': {exc}") from exc


def _magnetic_params(cfg):
    block = _get(cfg, "physics", dict)
    try:
        return cavity.CavityParams.from_ghz(
            _get(block, "g_over_2pi_ghz", (int, float)),
            _get(block, "kappa_over_2pi_ghz", (int, float)),
            _get(block, "gamma_over_2pi_ghz", (int, float)),
            _get(block, "b_field_tesla", (int, float), 0.0),
            _get(block, "g_e", (int, float), 0.0),
            _get(block, "g_h", (int, float), 0.0))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"config field 'physics': {exc}") from exc


def _spin_photon_gate(cfg):
    mode = _get(cfg, "mode", str)
    if mode == "magnetic":
        return metrics.magnetic_spin_photon_gate(_magnetic_params(cfg))
    if mode == "chiral":
        block = _get(cfg, "physics", dict)
        c = _get(block, "cooperativity", (int, float))
        kappa_ghz = _get(block, "kappa_over_2pi_ghz", (int, float), 0.3)
        try:
            return metrics.chiral_spin_photon_gate(c, cavity.from_ghz(kappa_ghz))
        except ValueError as exc:
            raise ConfigError(f"config field 'physics': {exc}") from exc
    raise ConfigError(f"config field 'mode' must be 'magnetic' or 'chiral', got {mode!r}")


def _axis_values(block, path):
    if "values" in block:
        vals = _get(block, "values", list)
        return [float(v) for v in vals]
    start = _get(block, "start", (int, float),
                 default=None)
    if start is None:
        raise ConfigError(f"config field '{path}' needs 'values' or 'start/stop/points'")
    stop = _get(block, "stop", (int, float))
    points = _get(block, "points", int)
    if points < 2:
        raise ConfigError(f"config field '{path}.points' must be >= 2")
    if _get(block, "log", bool, False):
        return list(np.geomspace(start, stop, points))
    return list(np.linspace(start, stop, points))


def cmd_fidelity(cfg, out):
    dims = _dims(cfg)
    e = _error_model(cfg)
    gate = _spin_photon_gate(cfg)
    edge_gates = tensornet.photon_edge_gates(gate, dims)
    reports = metrics.fidelity_curve(dims, edge_gates, e)
    fit = metrics.fit_beta(metrics.scaling_points(reports, dims))
    rows = [(r.k_photons, r.f0, r.f1, r.p_success) for r in reports]
    resolved = {**cfg, "dims": list(dims.dims), "photons": dims.photon_count}
    _write_csv(out, resolved, ["k_photons", "f0", "f1", "p_success"], rows)
    print(f"fitted beta = {fit.beta:.6f} (amplitude {fit.amplitude:.6f}, "
          f"log-residual {fit.residual:.2e})", file=sys.stderr)
    return 0


def _sweep_axes(cfg, mode):
    sweep = _get(cfg, "sweep", dict)
    ax2_name = "b_field_tesla" if mode == "magnetic" else "spin_error"
    ax1 = _axis_values(_get(sweep, "cooperativity", dict), "sweep.cooperativity")
    ax2 = _axis_values(_get(sweep, ax2_name, dict), f"sweep.{ax2_name}")
    return ax1, ax2, ax2_name


def _sweep_point(args):
    a1, a2, mode, dims, e, base = args
    return metrics.sweep_cell(a1, a2, mode, dims, e, base)


def cmd_sweep(cfg, out, jobs):
    dims = _dims(cfg)
    mode = _get(cfg, "mode", str)
    if mode not in ("magnetic", "chiral"):
        raise ConfigError(f"config field 'mode' must be 'magnetic' or 'chiral', got {mode!r}")
    e = _error_model(cfg) if mode == "magnetic" else None
    base = _magnetic_params(cfg) if mode == "magnetic" else None
    ax1, ax2, ax2_name = _sweep_axes(cfg, mode)
    tasks = [(a1, a2, mode, dims, e, base) for a1 in ax1 for a2 in ax2]
    if jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            cells = pool.map(_sweep_point, tasks)
    else:
        cells = [_sweep_point(t) for t in tasks]
    rows = [(c.axis1, c.axis2, c.beta, c.amplitude, c.residual,
             c.status.replace(",", ";")) for c in cells]
    _write_csv(out, cfg, ["cooperativity", ax2_name, "beta", "amplitude",
                          "residual", "status"], rows)
    return 0


def cmd_schedule(cfg, out):
    dims = _dims(cfg)
    block = _get(cfg, "schedule", dict)
    t_cycle = _get(block, "t_cycle_ns", (int, float))
    tau1 = _get(block, "tau1_ns", (int, float), None)
    tau2 = _get(block, "tau2_ns", (int, float), None)
    horizon = _get(block, "horizon_cycles", int, 0)
    try:
        sched = scheduler.build_schedule(dims, t_cycle, tau1, tau2)
    except ValueError as exc:
        print(f"schedule infeasible: {exc}", file=sys.stderr)
        return 2
    if horizon <= 0:
        horizon = sched.horizon_cycles
    rows = scheduler.timeline_events(sched, horizon)
    resolved = {**cfg,
                "schedule": {**block, "t_cycle_ns": t_cycle, "tau1_ns": sched.tau1,
                             "tau2_ns": sched.tau2, "horizon_cycles": horizon},
                "delays_ns": sched.delays}
    _write_csv(out, resolved, ["time_ns", "entity", "event"], rows)
    report = scheduler.validate_schedule(sched, dims, horizon)
    print(f"delays_ns = [{', '.join(_fmt(x) for x in sched.delays)}]",
          file=sys.stderr)
    if report.ok:
        print(f"schedule valid over {horizon} cycles: "
              f"{report.arrivals_checked} cavity arrivals, no violations",
              file=sys.stderr)
        return 0
    for v in report.violations[:20]:
        print(f"violation[{v.kind}] t={v.time:.4f} ns photons={v.photons}: "
              f"{v.detail}", file=sys.stderr)
    print(f"schedule INVALID: {len(report.violations)} violations", file=sys.stderr)
    return 2


def cmd_oracle_check():
    results = oracle.identity_suite()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        mark = "pass" if r.passed else "FAIL"
        print(f"[{mark}] {r.name:<{width}}  {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def cmd_reflection(cfg, out):
    mode = _get(cfg, "mode", str)
    block = _get(cfg, "scan", dict, {})
    span = _get(block, "span_over_2pi_ghz", (int, float), 40.0)
    points = _get(block, "points", int, 201)
    detunings = np.linspace(-span, span, points)
    rows = []
    if mode == "magnetic":
        p = _magnetic_params(cfg)
        dz = cavity.zeeman_detuning(p)
        for dg in detunings:
            w = cavity.from_ghz(dg)
            r_up = cavity.reflection_general(w, 0.0, 0.0, p)
            r_dn = cavity.reflection_general(w, 0.0, dz, p)
            rows.append((dg, r_up.real, r_up.imag, abs(r_up),
                         r_dn.real, r_dn.imag, abs(r_dn)))
        header = ["detuning_over_2pi_ghz", "r_up_re", "r_up_im", "r_up_abs",
                  "r_down_re", "r_down_im", "r_down_abs"]
    elif mode == "chiral":
        phys = _get(cfg, "physics", dict)
        c = _get(phys, "cooperativity", (int, float))
        kappa = cavity.from_ghz(_get(phys, "kappa_over_2pi_ghz", (int, float), 0.3))
        gamma = cavity.from_ghz(_get(phys, "gamma_over_2pi_ghz", (int, float), 40.0))
        g = math.sqrt(c * gamma * kappa) / 2.0
        params = cavity.CavityParams(g, kappa, gamma)
        _, r1, delta_s = cavity.chiral_reflection(
            cavity.ChiralParams(cooperativity=c, kappa=kappa))
        for dg in detunings:
            w = cavity.from_ghz(dg)
            r = cavity.reflection_general(w, 0.0, delta_s, params)
            rows.append((dg, r.real, r.imag, abs(r)))
        header = ["detuning_over_2pi_ghz", "r_re", "r_im", "r_abs"]
        print(f"working point: delta_s/2pi = {delta_s / cavity.TWO_PI:.6g} GHz, "
              f"r1 = {r1:.6f}", file=sys.stderr)
    else:
        raise ConfigError(f"config field 'mode' must be 'magnetic' or 'chiral', got {mode!r}")
    resolved = {**cfg, "scan": {"span_over_2pi_ghz": span, "points": points}}
    _write_csv(out, resolved, header, rows)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="photoncluster",
        description="Simulate cavity-fed multidimensional photonic cluster states.")
    parser.add_argument("command",
                        choices=["fidelity", "sweep", "schedule",
                                 "oracle-check", "reflection"])
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--out", help="output CSV path (default: config 'output' or stdout)")
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallel workers for sweeps")
    args = parser.parse_args(argv)

    try:
        if args.command == "oracle-check":
            return cmd_oracle_check()
        if not args.config:
            raise ConfigError(f"command '{args.command}' requires --config")
        cfg = _load_config(args.config)
        out = args.out or cfg.get("output")
        if args.command == "fidelity":
            return cmd_fidelity(cfg, out)
        if args.command == "sweep":
            return cmd_sweep(cfg, out, max(1, args.jobs))
        if args.command == "schedule":
            return cmd_schedule(cfg, out)
        if args.command == "reflection":
            return cmd_reflection(cfg, out)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


def run_main():
    sys.exit(main())


if __name__ == "__main__":
    run_main()
