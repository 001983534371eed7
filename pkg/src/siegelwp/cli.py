"""Batch front-end: run named experiments from JSON configs and emit artifacts.

Each subcommand writes CSV artifacts plus a ``report.json`` of the form

    {"command": ..., "config": ..., "seed": ..., "checks": [...], "artifacts": [...]}

where every check carries {name, value, tol, pass}.  Exit status: 0 when all
checks pass, 1 when a tolerance fails (failures are listed on stderr), and 2
for configuration errors.  Identical configs and seeds reproduce identical
artifact bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import beltrami as bel
from .artifacts import (
    fmt_float,
    write_complex_matrix_csv,
    write_csv,
    write_json_report,
    write_svg_line_plot,
)
from .circlemaps import map_from_spec, qs_grid, qs_profile
from .composition import block_decompose, composition_matrix, hs_offdiag, symplectic_defect
from .errors import ConfigError, IllConditionedError
from .siegel import (
    DEFAULT_COND_CAP,
    SiegelPoint,
    disc_membership,
    hyperbolic_metric,
    moebius_action,
    period_point,
    su11_block,
    su11_orbit,
)
from .wp import pullback_study

CONFIG_KEYS = {"N", "M", "eps", "tolerances", "out", "map", "map_path"}


@dataclass
class ExperimentConfig:
    """Resolved experiment parameters; M defaults to 4N."""

    N: int = 64
    M: int | None = None
    eps: float = 1e-3
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    map_spec: dict | None = None

    def __post_init__(self):
        if self.M is None:
            self.M = 4 * self.N

    def tol(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def summary(self) -> dict:
        return {
            "N": self.N,
            "M": self.M,
            "eps": self.eps,
            "tolerances": dict(self.tolerances),
            "map": self.map_spec,
        }


def parse_config(text: str, strict: bool = False) -> ExperimentConfig:
    """Parse a JSON config; validates types and the sampling bound M >= 4N.

    Unknown keys are rejected in strict mode and warned about otherwise.
    """
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(raw) - CONFIG_KEYS)
    if unknown:
        if strict:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        print(f"warning: ignoring unknown config keys: {', '.join(unknown)}", file=sys.stderr)

    N = raw.get("N", 64)
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ConfigError("N must be a positive integer")
    M = raw.get("M")
    if M is not None and (not isinstance(M, int) or isinstance(M, bool)):
        raise ConfigError("M must be an integer")
    if M is not None and M < 4 * N:
        raise ConfigError(f"M={M} undersamples N={N}; need M >= 4N = {4 * N}")
    eps = raw.get("eps", 1e-3)
    if not isinstance(eps, (int, float)) or isinstance(eps, bool) or eps <= 0:
        raise ConfigError("eps must be a positive number")
    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError("tolerances must be an object of name -> bound")
    for key, val in tolerances.items():
        if not isinstance(val, (int, float)) or isinstance(val, bool) or val <= 0:
            raise ConfigError(f"tolerance {key!r} must be a positive number")
    out = raw.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("out must be a path string")

    map_spec = raw.get("map")
    map_path = raw.get("map_path")
    if map_spec is not None and map_path is not None:
        raise ConfigError("give either an inline map or map_path, not both")
    if map_path is not None:
        try:
            with open(map_path, "r", encoding="utf-8") as handle:
                map_spec = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read map_path: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"map file is not valid JSON: {exc}") from exc
    if map_spec is not None and not isinstance(map_spec, dict):
        raise ConfigError("map specification must be a JSON object")

    return ExperimentConfig(
        N=N, M=M, eps=float(eps), tolerances=dict(tolerances), out=out, map_spec=map_spec
    )


@dataclass(frozen=True)
class Check:
    """One report line: a measured value against its bound."""

    name: str
    value: float
    tol: float | None
    passed: bool

    def as_json(self) -> dict:
        return {"name": self.name, "value": self.value, "tol": self.tol, "pass": self.passed}


def check_le(name: str, value: float, tol: float) -> Check:
    return Check(name, float(value), float(tol), bool(value <= tol))


def check_ge(name: str, value: float, tol: float) -> Check:
    return Check(name, float(value), float(tol), bool(value >= tol))


def check_info(name: str, value: float) -> Check:
    return Check(name, float(value), None, True)


def _require_map(cfg: ExperimentConfig):
    if cfg.map_spec is None:
        raise ConfigError("this command needs a map (config key 'map' or 'map_path')")
    return map_from_spec(cfg.map_spec)


def run_period_map(cfg: ExperimentConfig, seed: int, outdir: str):
    m = _require_map(cfg)
    mat = composition_matrix(m, cfg.N, cfg.M)
    write_complex_matrix_csv(os.path.join(outdir, "composition_matrix.csv"), mat.A)
    artifacts = ["composition_matrix.csv"]

    _, _, reality = block_decompose(mat)
    checks = [
        check_le("reality_defect", reality, cfg.tol("reality_defect", 1e-10)),
        check_le("symplectic_defect", symplectic_defect(mat), cfg.tol("symplectic_defect", 1e-6)),
        check_info("hs_offdiag", hs_offdiag(mat)),
    ]
    try:
        point = period_point(mat, cond_cap=cfg.tol("cond_cap", DEFAULT_COND_CAP))
    except IllConditionedError:
        checks.append(Check("g_condition", float("inf"),
                            cfg.tol("cond_cap", DEFAULT_COND_CAP), False))
        return checks, artifacts
    write_complex_matrix_csv(os.path.join(outdir, "period_point.csv"), point.Z)
    artifacts.append("period_point.csv")
    diag = disc_membership(point)
    checks.append(check_le("period_symmetry", diag.symmetry_defect,
                           cfg.tol("period_symmetry", 1e-6)))
    checks.append(check_ge("contraction_margin", diag.min_eigenvalue,
                           cfg.tol("contraction_margin", 1e-10)))
    checks.append(check_info("period_hs_norm", diag.hs_norm))
    return checks, artifacts


def run_wp_pullback(cfg: ExperimentConfig, seed: int, outdir: str):
    study = pullback_study(eps=cfg.eps, N=cfg.N, M=cfg.M)
    rows = [
        [n, fmt_float(h), fmt_float(r * h), fmt_float(r)]
        for n, h, r in zip(study.modes, study.h_values, study.ratios)
    ]
    write_csv(os.path.join(outdir, "pullback_table.csv"),
              ["mode", "h_metric", "trace_pullback", "ratio"], rows)
    write_svg_line_plot(
        os.path.join(outdir, "pullback_ratio.svg"),
        study.modes,
        study.ratios,
        title="Pullback ratio across cosine modes",
        xlabel="mode n",
        ylabel="trace / h",
    )
    checks = [
        check_le("pairwise_deviation", study.max_pairwise_deviation,
                 cfg.tol("pairwise_deviation", 0.02)),
        check_le("refinement_drift", study.refinement_drift,
                 cfg.tol("refinement_drift", 0.01)),
        check_info("measured_constant", study.constant),
    ]
    return checks, ["pullback_table.csv", "pullback_ratio.svg"]


def run_qs_estimate(cfg: ExperimentConfig, seed: int, outdir: str):
    m = _require_map(cfg)
    x, ts = qs_grid()
    profile = qs_profile(m, x, ts)
    bound = float(np.max(profile))
    rows = [[fmt_float(t), fmt_float(v)] for t, v in zip(ts, profile)]
    write_csv(os.path.join(outdir, "qs_profile.csv"), ["t", "max_ratio"], rows)
    checks = [check_ge("qs_lower_bound", bound, 1.0 - 1e-12)]
    if "qs_bound" in cfg.tolerances:
        checks.append(check_le("qs_bound", bound, cfg.tol("qs_bound", math.inf)))
    else:
        checks.append(check_info("qs_bound", bound))
    return checks, ["qs_profile.csv"]


def run_beltrami_norms(cfg: ExperimentConfig, seed: int, outdir: str):
    grid = bel.DiscGrid.polar()
    degrees = list(range(7))
    fields = [bel.harmonic_beltrami(bel.HolomorphicPolynomial.monomial(k), grid) for k in degrees]
    rows = []
    worst_rel = 0.0
    for k, f in zip(degrees, fields):
        computed = bel.hyperbolic_l2(f)
        exact = bel.monomial_norm_exact(k)
        rel = abs(computed - exact) / exact
        worst_rel = max(worst_rel, rel)
        rows.append([k, fmt_float(computed), fmt_float(exact), fmt_float(rel)])
    write_csv(os.path.join(outdir, "monomial_norms.csv"),
              ["degree", "computed", "exact", "rel_err"], rows)
    worst_cross = 0.0
    for i in range(len(degrees)):
        for j in range(i):
            worst_cross = max(worst_cross, abs(bel.wp_pairing(fields[i], fields[j])))
    checks = [
        check_le("norm_rel_err", worst_rel, cfg.tol("norm_rel_err", 1e-6)),
        check_le("orthogonality", worst_cross, cfg.tol("orthogonality", 1e-10)),
    ]
    return checks, ["monomial_norms.csv"]


def run_siegel_demo(cfg: ExperimentConfig, seed: int, outdir: str):
    rng = np.random.default_rng(seed)
    count = 1000
    t = rng.uniform(0.0, 1.5, size=count)
    phase_a = rng.uniform(0.0, 2.0 * math.pi, size=count)
    phase_b = rng.uniform(0.0, 2.0 * math.pi, size=count)
    a = np.cosh(t) * np.exp(1j * phase_a)
    b = np.sinh(t) * np.exp(1j * phase_b)
    z = np.sqrt(rng.uniform(0.0, 1.0, size=count)) * 0.98 * np.exp(
        1j * rng.uniform(0.0, 2.0 * math.pi, size=count)
    )
    u = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    v = rng.standard_normal(count) + 1j * rng.standard_normal(count)

    agree = 0.0
    invariance = 0.0
    containment = 0.0
    rows = []
    for i in range(count):
        w_matrix = moebius_action(su11_block(a[i], b[i]), SiegelPoint(1, [[z[i]]])).Z[0, 0]
        w_scalar = su11_orbit(a[i], b[i], z[i])
        agree = max(agree, abs(w_matrix - w_scalar))
        containment = max(containment, abs(w_scalar))
        dphi = 1.0 / (np.conj(b[i]) * z[i] + np.conj(a[i])) ** 2
        before = hyperbolic_metric(z[i], u[i], v[i])
        after = hyperbolic_metric(w_scalar, dphi * u[i], dphi * v[i])
        invariance = max(invariance, abs(after - before) / max(1.0, abs(before)))
        rows.append([
            fmt_float(a[i].real), fmt_float(a[i].imag),
            fmt_float(b[i].real), fmt_float(b[i].imag),
            fmt_float(z[i].real), fmt_float(z[i].imag),
            fmt_float(w_scalar.real), fmt_float(w_scalar.imag),
        ])
    write_csv(os.path.join(outdir, "orbit_samples.csv"),
              ["a_re", "a_im", "b_re", "b_im", "z_re", "z_im", "w_re", "w_im"], rows)
    checks = [
        check_le("rank_one_agreement", agree, cfg.tol("rank_one_agreement", 1e-12)),
        check_le("metric_invariance", invariance, cfg.tol("metric_invariance", 1e-10)),
        check_le("orbit_containment", containment, 1.0),
    ]
    return checks, ["orbit_samples.csv"]


RUNNERS = {
    "period-map": run_period_map,
    "wp-pullback": run_wp_pullback,
    "qs-estimate": run_qs_estimate,
    "beltrami-norms": run_beltrami_norms,
    "siegel-demo": run_siegel_demo,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelwp",
        description="Experiments on circle-map composition operators and disc geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, runner in RUNNERS.items():
        p = sub.add_parser(name, help=runner.__doc__)
        p.add_argument("--config", help="path to a JSON config file")
        p.add_argument("--out", help="artifact directory (default <command>-artifacts)")
        p.add_argument("--seed", type=int, default=0, help="seed for any sampling (recorded)")
        p.add_argument("--strict", action="store_true",
                       help="reject unknown config keys instead of warning")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.config is not None:
            try:
                with open(args.config, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from exc
        else:
            text = ""
        cfg = parse_config(text, strict=args.strict)
        outdir = args.out or cfg.out or f"{args.command}-artifacts"
        os.makedirs(outdir, exist_ok=True)
        checks, artifacts = RUNNERS[args.command](cfg, args.seed, outdir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = {
        "command": args.command,
        "config": cfg.summary(),
        "seed": args.seed,
        "checks": [c.as_json() for c in checks],
        "artifacts": artifacts,
    }
    write_json_report(os.path.join(outdir, "report.json"), report)

    failures = [c for c in checks if not c.passed]
    for c in checks:
        bound = "" if c.tol is None else f" (tol {c.tol:g})"
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} = {c.value:.6e}{bound}")
    if failures:
        print("failed checks: " + ", ".join(c.name for c in failures), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
