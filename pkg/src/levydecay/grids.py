"""Uniform grids and the discrete Fourier pairing.

Conventions: F[f](u) = int e^{iux} f(x) dx and f(x) = (2 pi)^{-1}
int e^{-iux} F(u) du.  A GridFunction of length N (a power of two) with
step dx pairs with a frequency grid of step du = 2 pi / (N dx) centered at
0; both transforms are realized as phase-corrected FFTs and round-trip to
machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["GridFunction", "grid_for_interval", "fourier", "inverse_fourier"]


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridFunction:
    """Sampled complex- or real-valued function on a uniform grid."""

    origin: float
    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        v = np.asarray(self.values)
        if v.ndim != 1 or not _is_pow2(v.size):
            raise ValueError("values must be 1-d with power-of-two length")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    def x(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.n)

    @property
    def real(self) -> np.ndarray:
        return np.real(self.values)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.origin, self.step, np.asarray(values))

    def integral(self) -> complex | float:
        """Trapezoid integral over the grid."""
        val = np.trapezoid(self.values, dx=self.step)
        return float(val.real) if np.isrealobj(self.values) else complex(val)

    def lp_norm(self, p: float) -> float:
        """Grid L^p norm; p = inf is the max of |values|."""
        a = np.abs(self.values)
        if np.isinf(p):
            return float(a.max())
        if p <= 0:
            raise ValueError("p must be >= 1 or inf")
        return float((np.sum(a ** p) * self.step) ** (1.0 / p))

    def at(self, x: np.ndarray) -> np.ndarray:
        """Linear interpolation of the real part at arbitrary points."""
        return np.interp(x, self.x(), self.real, left=0.0, right=0.0)

    @classmethod
    def sample(cls, fn: Callable, origin: float, step: float,
               n: int) -> "GridFunction":
        x = origin + step * np.arange(n)
        return cls(origin, step, np.asarray(fn(x)))


def grid_for_interval(half_width: float, n: int) -> tuple[float, float]:
    """(origin, step) of the symmetric grid [-L, L) with n points."""
    step = 2.0 * half_width / n
    return -half_width, step


def _freq_grid(f: GridFunction) -> tuple[float, float]:
    n = f.n
    du = 2.0 * np.pi / (n * f.step)
    return -0.5 * n * du, du


def fourier(f: GridFunction) -> GridFunction:
    """F[f](u) = int e^{iux} f(x) dx on the paired frequency grid.

    Writing u_m = u0 + m du and x_k = x0 + k dx with du dx = 2 pi / N, the
    Riemann sum factors into an inverse FFT with boundary phases.
    """
    n = f.n
    u0, du = _freq_grid(f)
    k = np.arange(n)
    u = u0 + du * k
    inner = f.values * np.exp(1j * u0 * f.step * k)
    spec = f.step * np.exp(1j * u * f.origin) * n * np.fft.ifft(inner)
    return GridFunction(u0, du, spec)


def inverse_fourier(spec: GridFunction) -> GridFunction:
    """f(x) = (2 pi)^{-1} int e^{-iux} F(u) du on the paired space grid."""
    n = spec.n
    x0, dx = _freq_grid(spec)   # the pairing is symmetric in both directions
    k = np.arange(n)
    u = spec.x()
    inner = spec.values * np.exp(-1j * u * x0)
    vals = spec.step / (2.0 * np.pi) \
        * np.exp(-1j * spec.origin * dx * k) * np.fft.fft(inner)
    return GridFunction(x0, dx, vals)
