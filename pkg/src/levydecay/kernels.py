"""Band-limited smoothing kernels.

The default deconvolution kernel is flat-top: its Fourier transform equals
1 on [-0.8, 0.8] and tapers smoothly to 0 at +-1 through the standard
C-infinity transition built from exp(-1/t).  Exact spectral flatness means
zero bias for targets whose spectrum fits inside the flat band.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["smooth_step", "FlatTopKernel"]


def smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, strictly rising between.

    Built as g(t) / (g(t) + g(1-t)) with g(t) = exp(-1/t); evaluation is
    closed-form and deterministic, so every run reproduces identical
    partition and kernel values bit for bit.
    """
    ts = np.asarray(t, dtype=float)
    out = np.zeros_like(ts)
    out[ts >= 1.0] = 1.0
    mid = (ts > 0.0) & (ts < 1.0)
    tm = ts[mid]
    g1 = np.exp(-1.0 / tm)
    g2 = np.exp(-1.0 / (1.0 - tm))
    out[mid] = g1 / (g1 + g2)
    return out if np.ndim(t) else float(out)


@dataclass(frozen=True)
class FlatTopKernel:
    """Kernel with F K = 1 on [-flat, flat], smooth taper, 0 beyond +-1."""

    flat: float = 0.8

    def __post_init__(self):
        if not 0.0 < self.flat < 1.0:
            raise ValueError("flat must lie in (0, 1)")

    def ft(self, v):
        """Fourier transform F K at v; supported exactly in [-1, 1]."""
        a = np.abs(np.asarray(v, dtype=float))
        out = 1.0 - smooth_step((a - self.flat) / (1.0 - self.flat))
        out = np.where(a >= 1.0, 0.0, out)
        return out if np.ndim(v) else float(out)
