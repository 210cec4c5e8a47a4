"""Built-in sample surfaces used by tests and the CLI fixture kinds."""

from __future__ import annotations

import numpy as np

from .numerics import SampledCurve


def hyperbola_curves(s_range=(0.0, 2.0), samples: int = 1024):
    """Planar unit-speed hyperbolic director with a straight base curve.

    Gives gamma = delta = 0 and distribution parameter 1 everywhere; the
    striction curve coincides with the base axis.
    """
    u = np.linspace(float(s_range[0]), float(s_range[1]), samples)
    zeros = np.zeros_like(u)
    director = SampledCurve(u, np.stack([np.cosh(u), np.sinh(u), zeros], axis=-1))
    base = SampledCurve(u, np.stack([zeros, zeros, u], axis=-1))
    return director, base


def cone_curves(apex=(1.0, 2.0, 3.0), s_range=(0.0, 2.0), samples: int = 1024,
                director_values=None):
    """All rulings through one fixed apex point (delta = Delta = 0)."""
    u = np.linspace(float(s_range[0]), float(s_range[1]), samples)
    if director_values is None:
        zeros = np.zeros_like(u)
        director_values = np.stack([np.cosh(u), np.sinh(u), zeros], axis=-1)
    director = SampledCurve(u, director_values)
    base = SampledCurve(u, np.tile(np.asarray(apex, dtype=float), (samples, 1)))
    return director, base
