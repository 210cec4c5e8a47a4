"""Command line front end.

Three subcommands: `analyze` runs the Darboux pipeline on a configured
surface and writes a JSON report; `offset` constructs a Mannheim offset
(optionally adjudicating the closed forms into a second report); `export`
writes an OBJ mesh of the surface or its offset.

Exit codes: 0 success, 2 validation problem (bad config, non-timelike
data), 3 numeric degeneracy (stalled indicatrix, null axis, vanishing
window). A DISCREPANT verdict in the consistency report is a finding, not
a failure; it exits 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .dual_algebra import DualScalar
from .errors import ConfigError, DegeneracyError, ValidationError
from .fixtures import cone_curves, hyperbola_curves
from .mannheim_offset import (
    construct_offset,
    consistency_report,
    offset_angle_profile,
)
from .numerics import SampledCurve
from .serialize import dumps_canonical
from .surface_kernel import (
    RuledSurfaceModel,
    build_surface,
    classify,
    dual_apparatus,
    dual_frame_residuals,
    frame_residuals,
    study_residual,
    synth_constant_invariant,
)

DEFAULT_SAMPLES = 1024
SAMPLES_ENV = "DUALRULED_SAMPLES"

KINDS = ("constant_invariant", "planar_hyperbola", "cone", "sampled")


@dataclass
class SurfaceConfig:
    name: str
    kind: str
    params: dict
    s_range: tuple
    samples: int


def _default_samples() -> int:
    raw = os.environ.get(SAMPLES_ENV)
    if raw is None:
        return DEFAULT_SAMPLES
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{SAMPLES_ENV} must be an integer, got {raw!r}")
    if n < 9:
        raise ConfigError(f"{SAMPLES_ENV} must be at least 9, got {n}")
    return n


def parse_config(data: dict, samples_override=None) -> SurfaceConfig:
    if not isinstance(data, dict):
        raise ConfigError("surface config must be a JSON object")
    try:
        name = data["name"]
        kind = data["kind"]
    except KeyError as missing:
        raise ConfigError(f"config missing required field {missing}")
    if kind not in KINDS:
        raise ConfigError(f"unknown kind {kind!r}; expected one of {KINDS}")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")

    if kind == "sampled":
        for key in ("u", "director", "base"):
            if key not in params:
                raise ConfigError(f"sampled surface needs params.{key}")
        u = np.asarray(params["u"], dtype=float)
        if u.ndim != 1 or np.any(np.diff(u) <= 0):
            raise ConfigError("params.u must be strictly increasing")
        if len(params["director"]) != len(u) or len(params["base"]) != len(u):
            raise ConfigError("u/director/base arrays must have equal length")
        s_range = (float(u[0]), float(u[-1]))
        samples = int(data.get("samples", len(u)))
    else:
        s_range = tuple(float(x) for x in data.get("s_range", (0.0, 2.0)))
        if len(s_range) != 2 or not s_range[0] < s_range[1]:
            raise ConfigError(f"s_range must be [lo, hi] with lo < hi, got {list(s_range)}")
        samples = int(data.get("samples", _default_samples()))
    if samples_override is not None:
        samples = int(samples_override)
    if samples < 9:
        raise ConfigError(f"samples must be at least 9, got {samples}")
    return SurfaceConfig(name=str(name), kind=str(kind), params=params,
                         s_range=s_range, samples=samples)


def config_to_dict(cfg: SurfaceConfig) -> dict:
    return {
        "name": cfg.name,
        "kind": cfg.kind,
        "params": cfg.params,
        "s_range": [cfg.s_range[0], cfg.s_range[1]],
        "samples": cfg.samples,
    }


def load_config(path: str, samples_override=None) -> SurfaceConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}")
    return parse_config(data, samples_override)


def build_model(cfg: SurfaceConfig) -> RuledSurfaceModel:
    if cfg.kind == "constant_invariant":
        p = cfg.params
        try:
            gamma0, delta0, Delta0 = float(p["gamma"]), float(p["delta"]), float(p["Delta"])
        except KeyError as missing:
            raise ConfigError(f"constant_invariant needs params.{missing.args[0]}")
        return synth_constant_invariant(gamma0, delta0, Delta0, cfg.s_range, cfg.samples)
    if cfg.kind == "planar_hyperbola":
        director, base = hyperbola_curves(cfg.s_range, cfg.samples)
        return build_surface(director, base)
    if cfg.kind == "cone":
        apex = cfg.params.get("apex", (1.0, 2.0, 3.0))
        if len(apex) != 3:
            raise ConfigError("cone apex must be a 3-vector")
        director_values = cfg.params.get("director")
        if director_values is not None:
            director_values = np.asarray(director_values, dtype=float)
            if director_values.shape != (cfg.samples, 3):
                raise ConfigError(
                    f"cone director must be samples x 3 = {cfg.samples} x 3, "
                    f"got {list(director_values.shape)}"
                )
        director, base = cone_curves(apex, cfg.s_range, cfg.samples, director_values)
        return build_surface(director, base)
    # sampled
    u = np.asarray(cfg.params["u"], dtype=float)
    director = np.asarray(cfg.params["director"], dtype=float)
    base = np.asarray(cfg.params["base"], dtype=float)
    if director.shape != (len(u), 3) or base.shape != (len(u), 3):
        raise ConfigError("director/base must be N x 3 arrays")
    grid = np.linspace(u[0], u[-1], cfg.samples)
    uniform = len(u) == cfg.samples and np.allclose(u, grid, rtol=0, atol=1e-12 * max(1.0, abs(u[-1])))
    if not uniform:
        director = np.stack([PchipInterpolator(u, director[:, k])(grid) for k in range(3)], axis=-1)
        base = np.stack([PchipInterpolator(u, base[:, k])(grid) for k in range(3)], axis=-1)
        u = grid
    return build_surface(SampledCurve(u, director), SampledCurve(u, base))


def _dual_json(x: DualScalar) -> dict:
    return {"du": np.asarray(x.du), "re": np.asarray(x.re)}


def _analyze_payload(cfg: SurfaceConfig, model: RuledSurfaceModel, tol: float) -> dict:
    app = dual_apparatus(model)
    residuals = dict(frame_residuals(model))
    residuals.update({f"dual_{k}": v for k, v in dual_frame_residuals(model).items()})
    residuals["study_decode"] = study_residual(model)
    return {
        "classification": classify(model, tol),
        "dual_apparatus": {
            "branch": list(app.darboux_branch),
            "curvature_radius": _dual_json(app.R_bar),
            "gamma_bar": _dual_json(app.gamma_bar),
            "rho_cosh": _dual_json(app.rho_cosh),
            "rho_sinh": _dual_json(app.rho_sinh),
            "s_bar": _dual_json(app.s_bar),
        },
        "name": cfg.name,
        "residual_maxima": residuals,
        "samples": {
            "Delta": model.Delta,
            "c": model.c,
            "delta": model.delta,
            "e": model.e,
            "g": model.g,
            "gamma": model.gamma,
            "s": model.s_grid,
            "t": model.t,
        },
        "tolerance": tol,
    }


def cmd_analyze(args) -> int:
    cfg = load_config(args.input, args.samples)
    model = build_model(cfg)
    payload = _analyze_payload(cfg, model, args.tol)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(payload))
    return 0


def _offset_pieces(args):
    cfg = load_config(args.input, args.samples)
    model = build_model(cfg)
    window = None
    if (args.s_lo is None) != (args.s_hi is None):
        raise ConfigError("--s-lo and --s-hi must be given together")
    if args.s_lo is not None:
        window = (args.s_lo, args.s_hi)
    spec = offset_angle_profile(model, args.c, args.cstar, window)
    offset = construct_offset(model, spec)
    return cfg, model, spec, offset


def cmd_offset(args) -> int:
    cfg, model, spec, offset = _offset_pieces(args)
    payload = {
        "c_const": spec.c_const,
        "cstar_const": spec.cstar_const,
        "mannheim": {
            "dual_max": float(np.max(offset.mannheim_dual_residual)),
            "real_max": float(np.max(offset.mannheim_real_residual)),
        },
        "name": cfg.name,
        "orientation": offset.orientation,
        "profile": {
            "s": spec.s,
            "theta": spec.theta,
            "theta_star": spec.theta_star,
        },
        "recovered": {
            "Delta1": offset.Delta1,
            "branch": list(offset.branch1),
            "delta1": offset.delta1,
            "ds1_ds": offset.ds1_ds,
            "gamma1": offset.gamma1,
            "s1": offset.s1_grid,
        },
        "striction_shift_maxima": {
            "along_director": float(np.max(np.abs(offset.striction_shift_e))),
            "along_normal": float(np.max(np.abs(offset.striction_shift_g))),
            "along_tangent": float(np.max(np.abs(offset.striction_shift_t))),
        },
        "window": {
            "hi": float(spec.s[-1]),
            "lo": float(spec.s[0]),
            "samples": int(len(spec.s)),
        },
    }
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(payload))
    if args.verify:
        report = consistency_report(model, spec, offset, args.tol)
        verify_payload = {
            "formulas": {k: (_dual_json(v) if isinstance(v, DualScalar) else v)
                         for k, v in report.formulas.items()},
            "mannheim": {
                "dual_max": report.mannheim_dual_max,
                "real_max": report.mannheim_real_max,
            },
            "max_residual": report.max_residual,
            "mean_residual": report.mean_residual,
            "name": cfg.name,
            "oracle": {k: (_dual_json(v) if isinstance(v, DualScalar) else v)
                       for k, v in report.oracle.items()},
            "residuals": report.residuals,
            "s": report.s,
            "striction_shift": report.striction_shift,
            "theta": report.theta,
            "theta_star": report.theta_star,
            "tol": report.tol,
            "verdicts": report.verdicts,
        }
        with open(args.verify, "w", encoding="utf-8") as fh:
            fh.write(dumps_canonical(verify_payload))
    return 0


def _write_obj(path: str, points: np.ndarray, e: np.ndarray,
               v_min: float, v_max: float, v_samples: int) -> None:
    if not v_min < v_max:
        raise ConfigError(f"need v-min < v-max, got [{v_min}, {v_max}]")
    if v_samples < 2:
        raise ConfigError(f"need at least 2 ruling samples, got {v_samples}")
    vs = np.linspace(v_min, v_max, v_samples)
    lines = []
    for i in range(len(points)):
        for v in vs:
            p = points[i] + v * e[i]
            lines.append(f"v {p[0]:.9f} {p[1]:.9f} {p[2]:.9f}")
    m = v_samples
    for i in range(len(points) - 1):
        for j in range(m - 1):
            a = i * m + j + 1
            b = (i + 1) * m + j + 1
            cidx = (i + 1) * m + j + 2
            d = i * m + j + 2
            lines.append(f"f {a} {b} {cidx}")
            lines.append(f"f {a} {cidx} {d}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_export(args) -> int:
    if args.format != "obj":
        raise ConfigError(f"unsupported format {args.format!r}")
    if args.offset:
        if args.c is None or args.cstar is None:
            raise ConfigError("--offset export needs --c and --cstar")
        _, _, _, offset = _offset_pieces(args)
        points, e = offset.c1, offset.e1_dual.re
    else:
        cfg = load_config(args.input, args.samples)
        model = build_model(cfg)
        points, e = model.c, model.e
    _write_obj(args.output, points, e, args.v_min, args.v_max, args.v_samples)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualruled",
        description="Darboux apparatus and Mannheim offsets of timelike ruled surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="build the surface and write a JSON report")
    pa.add_argument("--input", required=True, help="surface config JSON")
    pa.add_argument("--output", required=True, help="report JSON path")
    pa.add_argument("--samples", type=int, default=None, help="override sample count")
    pa.add_argument("--tol", type=float, default=1e-6, help="classification tolerance")
    pa.set_defaults(fn=cmd_analyze)

    po = sub.add_parser("offset", help="construct a Mannheim offset (optionally verify formulas)")
    po.add_argument("--input", required=True)
    po.add_argument("--c", type=float, required=True, help="offset angle constant")
    po.add_argument("--cstar", type=float, required=True, help="offset distance constant")
    po.add_argument("--output", required=True, help="offset summary JSON path")
    po.add_argument("--verify", default=None, help="also write the consistency report here")
    po.add_argument("--tol", type=float, default=1e-3, help="verdict tolerance")
    po.add_argument("--s-lo", type=float, default=None, help="window lower bound in s")
    po.add_argument("--s-hi", type=float, default=None, help="window upper bound in s")
    po.add_argument("--samples", type=int, default=None)
    po.set_defaults(fn=cmd_offset)

    pe = sub.add_parser("export", help="write an OBJ mesh of the surface or its offset")
    pe.add_argument("--input", required=True)
    pe.add_argument("--format", default="obj")
    pe.add_argument("--v-min", type=float, required=True)
    pe.add_argument("--v-max", type=float, required=True)
    pe.add_argument("--v-samples", type=int, required=True)
    pe.add_argument("--output", required=True)
    pe.add_argument("--offset", action="store_true", help="export the Mannheim offset instead")
    pe.add_argument("--c", type=float, default=None)
    pe.add_argument("--cstar", type=float, default=None)
    pe.add_argument("--s-lo", type=float, default=None)
    pe.add_argument("--s-hi", type=float, default=None)
    pe.add_argument("--samples", type=int, default=None)
    pe.set_defaults(fn=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except DegeneracyError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
