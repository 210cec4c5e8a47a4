"""Mannheim offsets of timelike ruled surfaces, with a formula-free oracle.

An offset surface is generated by tilting each ruling line by a dual
hyperbolic angle (theta, theta_star) inside the frame of the base surface.
The Mannheim condition (offset central tangent parallel to base central
normal) pins the angle law: theta drops linearly in arc length, theta_star
follows the accumulated distribution parameter.

Everything labeled "oracle" here is computed WITHOUT the closed-form
offset identities: the tilted dual director is decoded back to points and
lines, and the offset's frame/invariants are rebuilt from scratch by
surface_kernel. The closed forms are then evaluated separately and
adjudicated against the oracle in a consistency report. Agreement and
disagreement are both findings; the report never reconciles them.

Orientation gauge: the offset indicatrix is traversed so that its arc
length runs against gamma*sinh(theta) (ds1/ds = -gamma*sinh(theta)). In
this gauge the recovered tangent satisfies t1 = -g exactly and the oracle
conical curvature comes out as -coth(theta), matching the confirmed
closed forms sign for sign. Sign-sensitive comparisons elsewhere use
orientation-insensitive residuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dual_algebra import DualScalar, apply_function
from .dual_lorentz import DualVec3, decode_line_point
from .errors import (
    DegenerateOffsetIndicatrix,
    DegeneratePoint,
    DegenerateWindow,
    GridTooCoarse,
    MismatchedInputs,
)
from .minkowski3 import lcross, linner
from .numerics import MIN_SAMPLES, grid_derivative, integrate_cumulative, SampledCurve
from .surface_kernel import (
    DualApparatus,
    RuledSurfaceModel,
    _curvature_elements,
    _darboux_fields,
    _model_from_fields,
    dual_apparatus,
    dual_frame,
)

SINH_GUARD = 1e-6
GAMMA_GUARD = 1e-6


@dataclass
class OffsetSpec:
    """Offset angle law for one base model, restricted to a working window."""

    c_const: float
    cstar_const: float
    s: np.ndarray
    theta: np.ndarray
    theta_star: np.ndarray
    lo_index: int
    hi_index: int
    source_model: RuledSurfaceModel


@dataclass
class OffsetModel:
    """Oracle reconstruction of a Mannheim offset, sampled at the base grid."""

    e1_dual: DualVec3
    line_points: np.ndarray
    recovered: RuledSurfaceModel
    apparatus1: DualApparatus
    s1_grid: np.ndarray
    ds1_ds: np.ndarray
    orientation: int
    t1: np.ndarray
    g1: np.ndarray
    c1: np.ndarray
    gamma1: np.ndarray
    delta1: np.ndarray
    Delta1: np.ndarray
    gamma1_bar: DualScalar
    R1_bar: DualScalar
    rho1_cosh: DualScalar
    rho1_sinh: DualScalar
    rho1_star: np.ndarray
    branch1: np.ndarray
    mannheim_real_residual: np.ndarray
    mannheim_dual_residual: np.ndarray
    striction_shift_e: np.ndarray
    striction_shift_t: np.ndarray
    striction_shift_g: np.ndarray
    source_model: RuledSurfaceModel
    spec: OffsetSpec


@dataclass
class OffsetReport:
    """Per-sample adjudication of the closed-form offset identities."""

    s: np.ndarray
    theta: np.ndarray
    theta_star: np.ndarray
    oracle: dict
    formulas: dict
    residuals: dict
    max_residual: dict
    mean_residual: dict
    verdicts: dict
    striction_shift: dict
    mannheim_real_max: float
    mannheim_dual_max: float
    tol: float


def offset_angle_profile(m: RuledSurfaceModel, c_const: float, cstar_const: float,
                         window: Optional[tuple] = None) -> OffsetSpec:
    """Mannheim angle law on a model: theta = -s + c, theta_star = int(Delta) + c*.

    The distance integral is anchored at the model's grid origin. `window`
    narrows the working range to [lo, hi] in s; the profile must keep
    sinh(theta) away from zero on that range.
    """
    s_full = m.s_grid
    theta_full = -s_full + float(c_const)
    theta_star_full = integrate_cumulative(s_full, m.Delta) + float(cstar_const)
    if window is None:
        lo_i, hi_i = 0, len(s_full)
    else:
        lo, hi = float(window[0]), float(window[1])
        lo_i = int(np.searchsorted(s_full, lo - 1e-12, side="left"))
        hi_i = int(np.searchsorted(s_full, hi + 1e-12, side="right"))
        if hi_i - lo_i < MIN_SAMPLES:
            raise GridTooCoarse(
                f"window [{lo}, {hi}] holds {hi_i - lo_i} samples; need {MIN_SAMPLES}"
            )
    theta = theta_full[lo_i:hi_i]
    # theta = 0 anywhere in the window kills the offset: catch samples inside
    # the guard band and sign changes that straddle the zero between samples
    small = np.abs(np.sinh(theta)) <= SINH_GUARD
    crosses = (theta.min() < -SINH_GUARD) and (theta.max() > SINH_GUARD)
    if np.any(small) or crosses:
        idx = int(np.argmin(np.abs(theta)))
        raise DegenerateWindow(
            f"theta = 0 crossing: sinh(theta) = {np.sinh(theta[idx]):.3e} near "
            f"s = {s_full[lo_i + idx]:.6g}; shrink the window or change the angle constant"
        )
    return OffsetSpec(
        c_const=float(c_const), cstar_const=float(cstar_const),
        s=s_full[lo_i:hi_i], theta=theta, theta_star=theta_star_full[lo_i:hi_i],
        lo_index=lo_i, hi_index=hi_i, source_model=m,
    )


def transfer_dual_director(m: RuledSurfaceModel, spec: OffsetSpec) -> DualVec3:
    """Tilt the base ruling lines by the dual angle: e1 = cosh(tb) e + sinh(tb) t."""
    sl = slice(spec.lo_index, spec.hi_index)
    e_d, t_d, _ = dual_frame(m)
    e_d = DualVec3(e_d.re[sl], e_d.du[sl])
    t_d = DualVec3(t_d.re[sl], t_d.du[sl])
    theta_bar = DualScalar(spec.theta, spec.theta_star)
    ch = apply_function("cosh", theta_bar)
    sh = apply_function("sinh", theta_bar)
    return ch * e_d + sh * t_d


def construct_offset(m: RuledSurfaceModel, spec: OffsetSpec) -> OffsetModel:
    """Reconstruct the offset surface from its ruling lines alone.

    The tilted dual director is decoded to a point curve, and the full
    Darboux apparatus of the offset is rebuilt numerically. No closed-form
    offset identity enters this function; its outputs are the oracle.
    """
    if spec.source_model is not m:
        raise MismatchedInputs("spec was built for a different model")
    sl = slice(spec.lo_index, spec.hi_index)
    s = m.s_grid[sl]
    e, t, g, c = m.e[sl], m.t[sl], m.g[sl], m.c[sl]
    e1_dual = transfer_dual_director(m, spec)
    pts = decode_line_point(e1_dual)

    de1 = grid_derivative(s, e1_dual.re)
    sig2 = linner(de1, de1)
    if np.any(sig2 <= 1e-16):
        idx = int(np.argmax(sig2 <= 1e-16))
        raise DegenerateOffsetIndicatrix(
            f"gamma = {m.gamma[sl][idx]:.3e}, sinh(theta) = {np.sinh(spec.theta[idx]):.3e} "
            f"at s = {s[idx]:.6g}: offset indicatrix speed |gamma*sinh(theta)| vanishes"
        )

    # traverse against gamma*sinh(theta) so the Mannheim frame lands on t1 = -g
    mid = len(s) // 2
    drive = m.gamma[sl] * np.sinh(spec.theta)
    orient = -1 if drive[mid] > 0 else 1
    if orient < 0:
        u_feed = -s[::-1]
        fields = _darboux_fields(u_feed, e1_dual.re[::-1], pts[::-1])
        back = slice(None, None, -1)
    else:
        u_feed = s
        fields = _darboux_fields(u_feed, e1_dual.re, pts)
        back = slice(None)
    recovered = _model_from_fields(
        fields, SampledCurve(u_feed, pts[::-1] if orient < 0 else pts)
    )

    t1 = fields["t"][back]
    g1 = fields["g"][back]
    c1 = fields["c"][back]
    gamma1 = fields["gamma"][back]
    delta1 = fields["delta"][back]
    Delta1 = fields["Delta"][back]
    s1_grid = fields["s"][back]
    ds1_ds = orient * fields["sigma"][back]

    gamma1_bar = DualScalar(gamma1, delta1 + gamma1 * Delta1)
    R1, C1, S1, branch1 = _curvature_elements(gamma1_bar)
    rho1_star = C1.du / S1.re

    mann_re = np.minimum(
        np.sqrt(np.sum((t1 - g) ** 2, axis=-1)),
        np.sqrt(np.sum((t1 + g) ** 2, axis=-1)),
    )
    t1_moment = lcross(c1, t1)
    g_moment = lcross(c, g)
    mann_du = np.minimum(
        np.sqrt(np.sum((t1_moment - g_moment) ** 2, axis=-1)),
        np.sqrt(np.sum((t1_moment + g_moment) ** 2, axis=-1)),
    )

    v = c1 - c
    return OffsetModel(
        e1_dual=e1_dual, line_points=pts, recovered=recovered,
        apparatus1=dual_apparatus(recovered),
        s1_grid=s1_grid, ds1_ds=ds1_ds, orientation=orient,
        t1=t1, g1=g1, c1=c1, gamma1=gamma1, delta1=delta1, Delta1=Delta1,
        gamma1_bar=gamma1_bar, R1_bar=R1, rho1_cosh=C1, rho1_sinh=S1,
        rho1_star=rho1_star, branch1=branch1,
        mannheim_real_residual=mann_re, mannheim_dual_residual=mann_du,
        striction_shift_e=-linner(v, e), striction_shift_t=linner(v, t),
        striction_shift_g=linner(v, g),
        source_model=m, spec=spec,
    )


def _formula_fields(gamma, delta, Delta, theta, theta_star) -> dict:
    """Closed-form offset quantities, evaluated verbatim from base data.

    Works on scalars or arrays. K is the shared bracket of the dual-part
    formulas. No reconciliation happens here.
    """
    coth = np.cosh(theta) / np.sinh(theta)
    sinh = np.sinh(theta)
    cosh = np.cosh(theta)
    K = (delta - theta_star) * coth + Delta * (1.0 + coth * coth)
    out = {
        "arc_rate": np.abs(gamma * sinh),
        "arc_rate_dual": DualScalar(
            gamma * sinh, gamma * theta_star * cosh + (delta + gamma * Delta) * sinh
        ),
        "conical_curvature": -coth,
        "conical_curvature_dual_re": -coth,
        "conical_curvature_dual_du": (1.0 / gamma) * (2.0 * (delta - theta_star) * coth
                                                      + Delta * (1.0 + coth * coth)),
        "drift": (1.0 / gamma) * ((delta - theta_star) * coth + Delta),
        "dist_param_rate_route": -(theta_star * coth + delta / gamma),
        "dist_param_det_route": (1.0 / gamma) * (theta_star - delta - Delta * coth),
        "curvature_radius_re": sinh,
        "curvature_radius_du": -(cosh * sinh * sinh / gamma) * K,
        "sph_radius_cosh_re": cosh,
        "sph_radius_cosh_du": -(sinh ** 3 / gamma) * K,
        "sph_radius_sinh": -sinh,
        "sph_radius_sinh_du": (cosh * sinh * sinh / gamma) * K,
        "sph_radius_shift": (sinh * sinh / gamma) * K,
        "offset_distance_constraint": Delta * coth / (1.0 + gamma * coth),
    }
    return out


def offset_closed_forms(m: RuledSurfaceModel, spec: OffsetSpec, idx: int) -> dict:
    """Formula bundle at one window sample (floats keyed like the report rows)."""
    sl = slice(spec.lo_index, spec.hi_index)
    gamma = m.gamma[sl][idx]
    delta = m.delta[sl][idx]
    Delta = m.Delta[sl][idx]
    theta = spec.theta[idx]
    theta_star = spec.theta_star[idx]
    if abs(np.sinh(theta)) <= SINH_GUARD or abs(gamma) <= GAMMA_GUARD:
        raise DegeneratePoint(
            f"formulas degenerate at sample {idx}: gamma = {gamma:.3e}, theta = {theta:.6g}"
        )
    raw = _formula_fields(gamma, delta, Delta, theta, theta_star)
    out = {}
    for k, v in raw.items():
        if isinstance(v, DualScalar):
            out[k] = DualScalar(float(v.re), float(v.du))
        else:
            out[k] = float(v)
    return out


def consistency_report(m: RuledSurfaceModel, spec: OffsetSpec, offset: OffsetModel,
                       tol: float = 1e-3) -> OffsetReport:
    """Adjudicate every closed-form offset identity against the oracle.

    Residuals are absolute; `arc_rate` compares magnitudes and
    `arc_rate_dual` is compared up to one global orientation sign. A key is
    CONFIRMED when its max residual stays within tol, else DISCREPANT.
    """
    if offset.source_model is not m or offset.spec is not spec:
        raise MismatchedInputs("report inputs must be the model/spec pair the offset was built from")
    sl = slice(spec.lo_index, spec.hi_index)
    gamma, delta, Delta = m.gamma[sl], m.delta[sl], m.Delta[sl]
    small = (np.abs(np.sinh(spec.theta)) <= SINH_GUARD) | (np.abs(gamma) <= GAMMA_GUARD)
    if np.any(small):
        idx = int(np.argmax(small))
        raise DegeneratePoint(f"formulas degenerate inside the window at sample {idx}")
    F = _formula_fields(gamma, delta, Delta, spec.theta, spec.theta_star)

    ds1 = offset.ds1_ds
    arc_dual_oracle = DualScalar(ds1, ds1 * (Delta - offset.Delta1))
    oracle = {
        "arc_rate": np.abs(ds1),
        "arc_rate_dual": arc_dual_oracle,
        "conical_curvature": offset.gamma1,
        "conical_curvature_dual_re": offset.gamma1_bar.re,
        "conical_curvature_dual_du": offset.gamma1_bar.du,
        "drift": offset.delta1,
        "dist_param_rate_route": offset.Delta1,
        "dist_param_det_route": offset.Delta1,
        "curvature_radius_re": offset.R1_bar.re,
        "curvature_radius_du": offset.R1_bar.du,
        "sph_radius_cosh_re": offset.rho1_cosh.re,
        "sph_radius_cosh_du": offset.rho1_cosh.du,
        "sph_radius_sinh": offset.rho1_sinh.re,
        "sph_radius_sinh_du": offset.rho1_sinh.du,
        "sph_radius_shift": offset.rho1_star,
        "offset_distance_constraint": spec.theta_star,
    }

    residuals = {}
    for key, f in F.items():
        if key == "arc_rate_dual":
            o = oracle[key]
            plus = np.maximum(np.abs(f.re - o.re), np.abs(f.du - o.du))
            minus = np.maximum(np.abs(f.re + o.re), np.abs(f.du + o.du))
            # one orientation sign for the whole window, whichever fits
            residuals[key] = plus if np.max(plus) <= np.max(minus) else minus
        else:
            residuals[key] = np.abs(f - oracle[key])

    max_residual = {k: float(np.max(v)) for k, v in residuals.items()}
    mean_residual = {k: float(np.mean(v)) for k, v in residuals.items()}
    verdicts = {k: ("CONFIRMED" if max_residual[k] <= tol else "DISCREPANT")
                for k in residuals}
    return OffsetReport(
        s=spec.s, theta=spec.theta, theta_star=spec.theta_star,
        oracle=oracle, formulas=F, residuals=residuals,
        max_residual=max_residual, mean_residual=mean_residual, verdicts=verdicts,
        striction_shift={
            "along_director": offset.striction_shift_e,
            "along_tangent": offset.striction_shift_t,
            "along_normal": offset.striction_shift_g,
        },
        mannheim_real_max=float(np.max(offset.mannheim_real_residual)),
        mannheim_dual_max=float(np.max(offset.mannheim_dual_residual)),
        tol=float(tol),
    )


def developability_predicates(m: RuledSurfaceModel, spec: OffsetSpec, idx: int,
                              tol: float = 1e-6) -> dict:
    """Developability conditions at one window sample.

    Flags: base surface developable; offset developable (distance matches
    -(delta/gamma) tanh(theta), target exposed); base and offset jointly
    developable (theta_star = delta, both locally constant); conical
    curvature matching -tanh(theta).
    """
    sl = slice(spec.lo_index, spec.hi_index)
    gamma = m.gamma[sl][idx]
    delta = m.delta[sl][idx]
    Delta = m.Delta[sl][idx]
    theta = spec.theta[idx]
    theta_star = spec.theta_star[idx]
    if abs(np.sinh(theta)) <= SINH_GUARD or abs(gamma) <= GAMMA_GUARD:
        raise DegeneratePoint(
            f"predicates degenerate at sample {idx}: gamma = {gamma:.3e}, theta = {theta:.6g}"
        )
    ddelta = grid_derivative(m.s_grid, m.delta)[sl][idx]
    target = -(delta / gamma) * np.tanh(theta)
    return {
        "base_developable": bool(abs(Delta) <= tol),
        "offset_developable": bool(abs(theta_star - target) <= tol),
        "offset_developable_target": float(target),
        "joint_developable": bool(
            abs(theta_star - delta) <= tol and abs(Delta) <= tol and abs(ddelta) <= tol
        ),
        "gamma_matches_neg_tanh": bool(abs(gamma + np.tanh(theta)) <= tol),
    }


def transfer_derivative_components(m: RuledSurfaceModel, spec: OffsetSpec) -> dict:
    """Components of d(e1_dual)/ds_bar along the base dual frame.

    The Mannheim angle law is equivalent to this derivative being parallel
    to the central normal line: components along the director and tangent
    must vanish. Returned as DualScalar arrays keyed by frame leg.
    """
    sl = slice(spec.lo_index, spec.hi_index)
    sub = RuledSurfaceModel(
        s_grid=m.s_grid[sl], e=m.e[sl], t=m.t[sl], g=m.g[sl], c=m.c[sl],
        gamma=m.gamma[sl], delta=m.delta[sl], Delta=m.Delta[sl],
        lambda0=m.lambda0[sl],
        base_curve=m.base_curve,
    )
    e_d, t_d, g_d = dual_frame(sub)
    e1 = transfer_dual_director(m, spec)
    s = sub.s_grid
    recip = DualScalar(np.ones_like(s), sub.Delta)
    de1 = DualVec3(grid_derivative(s, e1.re), grid_derivative(s, e1.du)) * recip

    def dual_dot(x: DualVec3, y: DualVec3) -> DualScalar:
        return DualScalar(linner(x.re, y.re), linner(x.re, y.du) + linner(x.du, y.re))

    return {
        "along_director": -1.0 * dual_dot(de1, e_d),
        "along_tangent": dual_dot(de1, t_d),
        "along_normal": dual_dot(de1, g_d),
    }
