"""Fourier inversion of characteristic functions and smoothness probes.

A law with integrable CF has the density f(x) = (2 pi)^{-1}
int e^{-iux} phi(u) du, discretized by the trapezoid rule on [-u_max,
u_max] and realized as an FFT.  The neglected tail is estimated from a
decay fit; a CF that does not vanish at infinity (atoms in the law) raises
instead of silently producing garbage.

The sharp smoothness order is diagnosed twice: spectrally, from the tail
exponent (f is C^n iff n < alpha - 1), and spatially, from the growth of
finite-difference quotients under grid refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import comb

from .decay import DecayFit, estimate_decay_exponent, log_abs_values
from .errors import NonIntegrableCF
from .grids import GridFunction
from .triplets import CharFunction

__all__ = [
    "DensityGrid", "invert_cf", "tail_integral_estimate",
    "SmoothnessOrder", "spectral_smoothness_order",
    "ProbeRecord", "spatial_smoothness_probe",
]


@dataclass(frozen=True)
class DensityGrid:
    """Inverted density: raw values plus a nonnegative sanitized view."""

    grid: GridFunction
    sanitized: np.ndarray = field(repr=False)
    mass: float
    min_value: float
    tail_estimate: float
    u_max: float
    n_points: int

    def x(self) -> np.ndarray:
        return self.grid.x()

    @property
    def values(self) -> np.ndarray:
        return self.grid.real


def tail_integral_estimate(cf_like, u_max: float) -> float:
    """(2 pi)^{-1} int_{|u| > u_max} |phi| du, from the local decay exponent.

    The local exponent is the log-log slope over the last two octaves; for
    convex (accelerating) decay it underestimates the decay beyond u_max,
    so the bound end * u_max / (alpha_loc - 1) / pi stays valid.  Raises
    NonIntegrableCF when |phi| shows no decay toward u_max (a law with
    atoms, or alpha <= 1).
    """
    us = np.array([u_max / 4.0, u_max / 2.0, u_max])
    ys = log_abs_values(cf_like, us)
    if ys[-1] < math.log(1e-300):
        return 0.0
    end = math.exp(float(ys[-1]))
    alpha_loc = -(ys[2] - ys[0]) / math.log(4.0)
    if alpha_loc <= 1.05:
        raise NonIntegrableCF(
            f"|phi| decays like u^-{alpha_loc:.3f} near u_max={u_max:g}; "
            "the CF is not integrable there (atoms, or decay exponent <= 1)")
    return end * u_max / (alpha_loc - 1.0) / math.pi


def invert_cf(cf_like, u_max: float, n_points: int,
              tail_tol: float = 1e-8, inv_tol: float = 1e-6) -> DensityGrid:
    """Density grid from phi by trapezoid-FFT inversion.

    ``n_points`` must be a power of two; the space grid inherits
    dx = pi / u_max from the pairing, so the half-width is
    n_points pi / (2 u_max).  The estimated spectral tail must stay below
    ``tail_tol`` (pass a larger tolerance explicitly for slowly decaying
    CFs and read the achieved value off the result).
    """
    tail = tail_integral_estimate(cf_like, u_max)
    if tail > tail_tol:
        raise ValueError(
            f"neglected tail {tail:.2e} exceeds tail_tol={tail_tol:.2e}; "
            "increase u_max or relax tail_tol")
    du = 2.0 * u_max / n_points
    u0 = -u_max
    u = u0 + du * np.arange(n_points)
    phi = np.asarray(cf_like(u), dtype=complex) if _vectorized(cf_like) \
        else np.array([complex(cf_like(float(x))) for x in u])
    from .grids import inverse_fourier
    dens = inverse_fourier(GridFunction(u0, du, phi))
    raw = dens.real.copy()
    grid = GridFunction(dens.origin, dens.step, raw)
    mass = float(np.trapezoid(raw, dx=dens.step))
    return DensityGrid(
        grid=grid, sanitized=np.clip(raw, 0.0, None),
        mass=mass, min_value=float(raw.min()), tail_estimate=tail,
        u_max=float(u_max), n_points=n_points)


def _vectorized(cf_like) -> bool:
    if isinstance(cf_like, CharFunction):
        return True
    try:
        out = cf_like(np.array([0.0, 1.0]))
        return np.shape(out) == (2,)
    except Exception:
        return False


# --------------------------------------------------------------------------
# smoothness order from the spectral side
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SmoothnessOrder:
    """Largest n with int |phi(u)| |u|^n du < inf, by exponent arithmetic."""

    n_max: int | None         # None: no n >= 0 works, or undetermined
    undetermined: bool
    capped: bool               # super-polynomial decay, all tested n finite
    alpha_used: float
    guard_band: float

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "undetermined": self.undetermined,
                "capped": self.capped, "alpha_used": self.alpha_used,
                "guard_band": self.guard_band}


def spectral_smoothness_order(cf_like, alpha_hint: float | None = None,
                              n_cap: int = 6, guard: float = 0.1,
                              u_fit: tuple[float, float] = (1e2, 1e4)
                              ) -> SmoothnessOrder:
    """n_max = largest integer n >= 0 with n < alpha - 1.

    Within ``guard`` of an integer boundary the verdict is undetermined
    (the boundary case is genuinely open).  Super-polynomial decay reports
    n_max = n_cap with ``capped`` set.
    """
    if alpha_hint is not None:
        alpha = float(alpha_hint)
        curvature_super = False
    else:
        fit = estimate_decay_exponent(cf_like, *u_fit)
        curvature_super = fit.curvature_flag and fit.curvature < 0
        alpha = fit.alpha_hat
    if curvature_super:
        return SmoothnessOrder(n_max=n_cap, undetermined=False, capped=True,
                               alpha_used=float("inf"), guard_band=guard)
    boundary = alpha - 1.0
    if abs(boundary - round(boundary)) <= guard:
        return SmoothnessOrder(n_max=None, undetermined=True, capped=False,
                               alpha_used=alpha, guard_band=guard)
    n_max = math.floor(boundary) if boundary > 0 else None
    if n_max is not None and boundary <= 0:
        n_max = None
    return SmoothnessOrder(n_max=n_max, undetermined=False, capped=False,
                           alpha_used=alpha, guard_band=guard)


# --------------------------------------------------------------------------
# smoothness probe from the spatial side
# --------------------------------------------------------------------------

def _difference_quotient(f: GridFunction, order: int, step_cells: int
                         ) -> np.ndarray:
    """Centered order-th difference quotient with step = step_cells * dx.

    step_cells must be even so that half-integer offsets for odd orders
    land on grid points.
    """
    v = f.real
    s = step_cells * f.step
    half = step_cells // 2
    offsets = [int(round((order / 2.0 - i) * step_cells)) for i in range(order + 1)]
    coeff = [(-1) ** i * comb(order, i, exact=True) for i in range(order + 1)]
    pad = max(abs(o) for o in offsets) if offsets else 0
    n = v.size
    out = np.zeros(n - 2 * pad)
    for c, o in zip(coeff, offsets):
        out += c * v[pad + o: n - pad + o if n - pad + o != 0 else None]
    return out / s ** order


@dataclass(frozen=True)
class ProbeRecord:
    """Spatial smoothness probe at order n across two resolutions.

    ``derivative_sup`` bounds the n-th finite-difference derivative;
    ``roughness_sup`` is the (n+1)-st difference quotient, the local
    modulus of that derivative.  A jump in f^(n) doubles the roughness per
    refinement and a power blow-up grows it faster, while Hoelder-smooth
    derivatives grow it by strictly less than 2; the flag fires between
    those regimes.
    """

    order: int
    derivative_sup_coarse: float
    derivative_sup_fine: float
    roughness_sup_coarse: float
    roughness_sup_fine: float
    growth_ratio: float
    divergence_flag: bool
    argmax_x: float

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "derivative_sup_coarse": self.derivative_sup_coarse,
            "derivative_sup_fine": self.derivative_sup_fine,
            "roughness_sup_coarse": self.roughness_sup_coarse,
            "roughness_sup_fine": self.roughness_sup_fine,
            "growth_ratio": self.growth_ratio,
            "divergence_flag": self.divergence_flag,
            "argmax_x": self.argmax_x,
        }


def spatial_smoothness_probe(coarse: GridFunction, fine: GridFunction,
                             n: int, step_cells: int = 4,
                             growth_threshold: float = 1.8) -> ProbeRecord:
    """Probe whether the density is C^n by refinement of difference quotients.

    ``fine`` must sample the same function at twice the resolution (the
    physical differencing step halves with the grid).  The divergence flag
    fires when the roughness sup grows by at least ``growth_threshold``
    under refinement; 2x is the discontinuous-derivative signature, sqrt(2)
    the worst smooth case, and the default sits between them.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    if fine.step > 0.75 * coarse.step:
        raise ValueError("fine grid must refine the coarse grid (half step)")
    d_c = _difference_quotient(coarse, n, step_cells) if n > 0 else coarse.real
    d_f = _difference_quotient(fine, n, step_cells) if n > 0 else fine.real
    r_c = _difference_quotient(coarse, n + 1, step_cells)
    r_f = _difference_quotient(fine, n + 1, step_cells)
    sup_rc = float(np.abs(r_c).max())
    sup_rf = float(np.abs(r_f).max())
    pad = (fine.n - r_f.size) // 2
    arg = fine.origin + fine.step * (pad + int(np.abs(r_f).argmax()))
    growth = sup_rf / sup_rc if sup_rc > 0 else np.inf if sup_rf > 0 else 1.0
    return ProbeRecord(
        order=n,
        derivative_sup_coarse=float(np.abs(d_c).max()),
        derivative_sup_fine=float(np.abs(d_f).max()),
        roughness_sup_coarse=sup_rc,
        roughness_sup_fine=sup_rf,
        growth_ratio=float(growth),
        divergence_flag=bool(growth >= growth_threshold),
        argmax_x=float(arg))
