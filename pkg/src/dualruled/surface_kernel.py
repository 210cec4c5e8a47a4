"""Darboux apparatus of timelike ruled surfaces.

A surface is swept by a timelike unit director e along a base curve p. The
kernel recovers the striction curve c (the tightest base curve), the frame
{e, t, g} with t = de/ds and g = -e x t, and the three scalar invariants:
gamma (conical curvature: rotation speed of the frame about the ruling),
delta (drift: striction motion along the ruling), Delta (distribution
parameter; zero exactly on developables).

Numerically, every derivative is taken on the caller's pristine uniform
grid in the original parameter and converted to arc-length derivatives by
the chain rule. Only after all invariants exist are the fields resampled
onto the uniform arc-length grid the model promises. Interpolating first
and differentiating the interpolant would amplify the interpolation error
by 1/h per derivative order, which is fatal for reconstructed curves with
large moments; values, by contrast, survive resampling at full accuracy.
A consequence worth knowing: re-differentiating a *resampled* model's
fields on its own grid is noisy. Derivative-level residual checks belong
on fixtures whose resampling step is the identity (unit-speed input).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .dual_algebra import DualScalar, apply_function
from .dual_lorentz import DualVec3, decode_line_point, dinner, dnorm
from .errors import (
    DegenerateIndicatrix,
    FrameDriftExceeded,
    GammaOutOfRange,
    MismatchedInputs,
    NotTimelikeDirector,
    NullDarbouxAxis,
)
from .minkowski3 import det3, lcross, linner
from .numerics import SampledCurve, grid_derivative, integrate_cumulative

TIMELIKE_AXIS = "TimelikeAxis"
SPACELIKE_AXIS = "SpacelikeAxis"
NULL_AXIS = "NullAxis"

NULL_AXIS_GUARD = 1e-6


@dataclass(frozen=True)
class RuledSurfaceModel:
    """Sampled Darboux data of one timelike ruled surface on an arc-length grid."""

    s_grid: np.ndarray
    e: np.ndarray
    t: np.ndarray
    g: np.ndarray
    c: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    Delta: np.ndarray
    lambda0: np.ndarray
    base_curve: SampledCurve

    def __len__(self):
        return len(self.s_grid)


@dataclass(frozen=True)
class DualApparatus:
    """Dual-number layer over a model: dual arc length, dual conical curvature,
    curvature radius, and the (cosh, sinh) pair of the dual spherical radius."""

    s_bar: DualScalar
    gamma_bar: DualScalar
    R_bar: DualScalar
    rho_cosh: DualScalar
    rho_sinh: DualScalar
    darboux_branch: np.ndarray
    darboux_axis: DualVec3
    darboux_axis_unit: DualVec3


def _renormalize_director(e: np.ndarray) -> np.ndarray:
    q = linner(e, e)
    bad = q >= -1e-12
    if np.any(bad):
        idx = int(np.argmax(bad))
        raise NotTimelikeDirector(
            f"director sample {idx} is not timelike: <e,e> = {q[idx]:.3e} (need < 0)"
        )
    return e / np.sqrt(-q)[:, None]


def _darboux_fields(u: np.ndarray, e_raw: np.ndarray, p_raw: np.ndarray,
                    drift_tol: float = 1e-4) -> dict:
    """Frame and invariants per input sample, derivatives via chain rule.

    All fields are indexed by the input grid; 'sigma' is the indicatrix
    speed |de/du| and 's' the running arc length (origin u[0]).
    """
    e = _renormalize_director(np.asarray(e_raw, dtype=float))
    de = grid_derivative(u, e)
    sig2 = linner(de, de)
    if np.any(sig2 <= 1e-16):
        idx = int(np.argmax(sig2 <= 1e-16))
        if sig2[idx] < -1e-12:
            raise FrameDriftExceeded(
                f"indicatrix tangent is not spacelike at sample {idx} (<e',e'> = {sig2[idx]:.3e})"
            )
        raise DegenerateIndicatrix(
            f"indicatrix speed vanishes at sample {idx} (<e',e'> = {sig2[idx]:.3e})"
        )
    sigma = np.sqrt(sig2)
    t = de / sigma[:, None]
    ortho = np.abs(linner(e, t))
    if np.max(ortho) > drift_tol:
        idx = int(np.argmax(ortho))
        raise FrameDriftExceeded(
            f"<e,t> = {linner(e, t)[idx]:.3e} at sample {idx} exceeds {drift_tol:.0e}"
        )
    g = -lcross(e, t)
    dp = grid_derivative(u, np.asarray(p_raw, dtype=float))
    lam = -linner(dp, de) / sig2
    c = p_raw + lam[:, None] * e
    dt_ds = grid_derivative(u, t) / sigma[:, None]
    gamma = linner(dt_ds, g)
    dc_ds = grid_derivative(u, c) / sigma[:, None]
    delta = linner(dc_ds, e)
    Delta = det3(dc_ds, e, t)
    s = u[0] + integrate_cumulative(u, sigma)
    return {
        "u": np.asarray(u, dtype=float), "s": s, "sigma": sigma,
        "e": e, "t": t, "g": g, "c": c, "lambda0": lam,
        "gamma": gamma, "delta": delta, "Delta": Delta,
    }


def _model_from_fields(fields: dict, base: SampledCurve, drift_tol: float = 1e-4) -> RuledSurfaceModel:
    """Resample chain-rule fields onto the uniform arc-length grid."""
    u = fields["u"]
    s = fields["s"]
    s_uniform = np.linspace(s[0], s[-1], len(u))
    u_at_s = np.clip(PchipInterpolator(s, u)(s_uniform), u[0], u[-1])

    def vec(name):
        f = fields[name]
        return np.stack([PchipInterpolator(u, f[:, k])(u_at_s) for k in range(3)], axis=-1)

    def scal(name):
        return PchipInterpolator(u, fields[name])(u_at_s)

    e = vec("e")
    drift = np.abs(linner(e, e) + 1.0)
    if np.max(drift) > drift_tol:
        idx = int(np.argmax(drift))
        raise FrameDriftExceeded(
            f"director norm drifted by {drift[idx]:.3e} after resampling at sample {idx}"
        )
    e = e / np.sqrt(-linner(e, e))[:, None]
    t = vec("t")
    tdrift = np.abs(linner(t, t) - 1.0)
    xdrift = np.abs(linner(e, t))
    if max(np.max(tdrift), np.max(xdrift)) > drift_tol:
        idx = int(np.argmax(np.maximum(tdrift, xdrift)))
        raise FrameDriftExceeded(f"frame orthonormality drift at sample {idx} exceeds {drift_tol:.0e}")
    g = -lcross(e, t)  # closure kept exact on the resampled frame
    return RuledSurfaceModel(
        s_grid=s_uniform, e=e, t=t, g=g, c=vec("c"),
        gamma=scal("gamma"), delta=scal("delta"), Delta=scal("Delta"),
        lambda0=scal("lambda0"), base_curve=base,
    )


def build_surface(director: SampledCurve, base: SampledCurve, *, drift_tol: float = 1e-4) -> RuledSurfaceModel:
    """Build the Darboux model of the ruled surface p(u) + v e(u).

    Both curves must share one uniform grid. Directors may carry any
    timelike magnitude; they are renormalized per sample.
    """
    if len(director) != len(base) or not np.array_equal(director.params, base.params):
        raise MismatchedInputs("director and base curve must share one parameter grid")
    fields = _darboux_fields(director.params, director.values, base.values, drift_tol)
    return _model_from_fields(fields, base, drift_tol)


def synth_constant_invariant(gamma0: float, delta0: float, Delta0: float,
                             s_range=(0.0, 2.0), samples: int = 1024) -> RuledSurfaceModel:
    """Closed-form surface family with constant invariants (needs |gamma0| < 1).

    Director runs on a hyperbola at Lorentz-latitude B = -gamma0*A with
    A = 1/sqrt(1 - gamma0^2); the striction curve mixes a congruent
    hyperbola arc with a linear sweep so that dc/ds = -delta0 e + Delta0 g
    holds identically.
    """
    if not abs(gamma0) < 1.0:
        raise GammaOutOfRange(f"constant-invariant family needs |gamma0| < 1, got {gamma0}")
    A = 1.0 / np.sqrt(1.0 - gamma0 * gamma0)
    B = -gamma0 * A
    k = 1.0 / A
    s = np.linspace(float(s_range[0]), float(s_range[1]), samples)
    zeros = np.zeros_like(s)
    ones = np.ones_like(s)
    e = np.stack([A * np.cosh(k * s), A * np.sinh(k * s), B * ones], axis=-1)
    t = np.stack([np.sinh(k * s), np.cosh(k * s), zeros], axis=-1)
    g = np.stack([B * np.cosh(k * s), B * np.sinh(k * s), A * ones], axis=-1)
    alpha = -delta0 * A + Delta0 * B
    beta = -delta0 * B + Delta0 * A
    c = (alpha / k) * np.stack([np.sinh(k * s), np.cosh(k * s) - 1.0, zeros], axis=-1) \
        + beta * np.stack([zeros, zeros, s], axis=-1)
    return RuledSurfaceModel(
        s_grid=s, e=e, t=t, g=g, c=c,
        gamma=np.full_like(s, gamma0), delta=np.full_like(s, delta0),
        Delta=np.full_like(s, Delta0), lambda0=zeros,
        base_curve=SampledCurve(s, c),
    )


def _curvature_elements(gamma_bar: DualScalar):
    """Curvature radius and (cosh, sinh) spherical-radius pair from gamma_bar.

    Branch splits on |gamma_bar.re| vs 1: the Darboux axis is timelike
    outside the unit band, spacelike inside. Returns (R, C, S, branch).
    """
    gre = np.asarray(gamma_bar.re, dtype=float)
    margin = np.abs(1.0 - gre * gre)
    if np.any(margin < NULL_AXIS_GUARD):
        idx = int(np.argmax(margin < NULL_AXIS_GUARD))
        raise NullDarbouxAxis(
            f"|1 - gamma_bar^2| = {margin.flat[idx]:.3e} at sample {idx} "
            f"(guard {NULL_AXIS_GUARD:.0e}); Darboux axis is null"
        )
    one_minus = 1.0 - gamma_bar * gamma_bar
    R = 1.0 / apply_function("sqrt", abs(one_minus))
    mgR = -gamma_bar * R
    mR = -R
    timelike = np.abs(gre) > 1.0
    if gre.ndim == 0:
        C, S = (mgR, mR) if bool(timelike) else (mR, mgR)
        branch = np.asarray(TIMELIKE_AXIS if bool(timelike) else SPACELIKE_AXIS)
    else:
        C = DualScalar(np.where(timelike, mgR.re, mR.re), np.where(timelike, mgR.du, mR.du))
        S = DualScalar(np.where(timelike, mR.re, mgR.re), np.where(timelike, mR.du, mgR.du))
        branch = np.where(timelike, TIMELIKE_AXIS, SPACELIKE_AXIS)
    return R, C, S, branch


def dual_frame(m: RuledSurfaceModel):
    """Line coordinates of the moving frame: x -> (x, c x x)."""
    return (
        DualVec3(m.e, lcross(m.c, m.e)),
        DualVec3(m.t, lcross(m.c, m.t)),
        DualVec3(m.g, lcross(m.c, m.g)),
    )


def dual_apparatus(m: RuledSurfaceModel) -> DualApparatus:
    """Dual arc length, dual conical curvature, and curvature elements."""
    s_bar = DualScalar(m.s_grid, -integrate_cumulative(m.s_grid, m.Delta))
    gamma_bar = DualScalar(m.gamma, m.delta + m.gamma * m.Delta)
    R, C, S, branch = _curvature_elements(gamma_bar)
    e_d, _, g_d = dual_frame(m)
    axis = -1.0 * (gamma_bar * e_d) - g_d
    axis_unit = R * axis
    return DualApparatus(
        s_bar=s_bar, gamma_bar=gamma_bar, R_bar=R,
        rho_cosh=C, rho_sinh=S, darboux_branch=branch,
        darboux_axis=axis, darboux_axis_unit=axis_unit,
    )


def classify(m: RuledSurfaceModel, tol: float = 1e-6) -> dict:
    """Developability flags: Delta == 0 flattens; adding delta == 0 gives a cone."""
    developable = bool(np.max(np.abs(m.Delta)) <= tol)
    cone = developable and bool(np.max(np.abs(m.delta)) <= tol)
    return {"developable": developable, "cone": cone}


def frame_residuals(m: RuledSurfaceModel) -> dict:
    """Max residuals of the frame ODEs and striction properties on the model grid.

    Meaningful on models whose resampling step was the identity (closed-form
    fixtures, unit-speed input); see the module docstring.
    """
    s = m.s_grid
    de = grid_derivative(s, m.e)
    dt = grid_derivative(s, m.t)
    dg = grid_derivative(s, m.g)
    dc = grid_derivative(s, m.c)
    def mx(v):
        return float(np.max(np.sqrt(np.sum(v * v, axis=-1))))
    return {
        "unit_director": float(np.max(np.abs(linner(m.e, m.e) + 1.0))),
        "unit_tangent": float(np.max(np.abs(linner(m.t, m.t) - 1.0))),
        "unit_normal": float(np.max(np.abs(linner(m.g, m.g) - 1.0))),
        "orthogonality": float(np.max(np.abs([linner(m.e, m.t), linner(m.e, m.g), linner(m.t, m.g)]))),
        "frame_closure": mx(m.g + lcross(m.e, m.t)),
        "director_ode": mx(de - m.t),
        "tangent_ode": mx(dt - m.e - m.gamma[:, None] * m.g),
        "normal_ode": mx(dg + m.gamma[:, None] * m.t),
        "striction": float(np.max(np.abs(linner(dc, m.t)))),
        "striction_decomposition": mx(dc + m.delta[:, None] * m.e - m.Delta[:, None] * m.g),
    }


def _dual_fd(x: DualVec3, s: np.ndarray) -> DualVec3:
    return DualVec3(grid_derivative(s, x.re), grid_derivative(s, x.du))


def _dual_vec_norms(x: DualVec3) -> float:
    re = float(np.max(np.sqrt(np.sum(x.re * x.re, axis=-1))))
    du = float(np.max(np.sqrt(np.sum(x.du * x.du, axis=-1))))
    return max(re, du)


def dual_frame_residuals(m: RuledSurfaceModel) -> dict:
    """Residuals of the dual frame ODEs, differentiating in dual arc length.

    d/ds_bar = (d/ds) / (1 - eps*Delta); the reciprocal is (1, Delta).
    """
    e_d, t_d, g_d = dual_frame(m)
    s = m.s_grid
    gamma_bar = DualScalar(m.gamma, m.delta + m.gamma * m.Delta)
    recip = DualScalar(np.ones_like(s), m.Delta)
    de = _dual_fd(e_d, s) * recip
    dt = _dual_fd(t_d, s) * recip
    dg = _dual_fd(g_d, s) * recip
    raw = _dual_fd(e_d, s)
    speed = dnorm(raw)
    return {
        "director_ode": _dual_vec_norms(de - t_d),
        "tangent_ode": _dual_vec_norms(dt - e_d - gamma_bar * g_d),
        "normal_ode": _dual_vec_norms(dg + gamma_bar * t_d),
        "director_speed_re": float(np.max(np.abs(speed.re - 1.0))),
        "director_speed_du": float(np.max(np.abs(speed.du + m.Delta))),
    }


def study_residual(m: RuledSurfaceModel) -> float:
    """Max Euclidean distance from decoded ruling points to the model rulings."""
    e_d, _, _ = dual_frame(m)
    q = decode_line_point(e_d)
    rel = q - m.c
    cr = np.cross(rel, m.e)
    dist = np.sqrt(np.sum(cr * cr, axis=-1)) / np.sqrt(np.sum(m.e * m.e, axis=-1))
    return float(np.max(dist))
