"""Finite signed measures: atoms plus a grid density.

The Jordan decomposition splits a signed measure into nonnegative parts
mu+ and mu- with ||mu||_TV = mu+(R) + mu-(R); here atoms and density
values decompose by sign.  Convolution is exact between atoms, shifts the
density for atom-density products (grid-aligned shifts roll the array,
fractional shifts go through the spectral phase), and uses zero-padded FFT
convolution between densities.  Mass pushed past the working grid is
tracked and raises GridOverflow once it matters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from .errors import GridOverflow
from .grids import GridFunction

__all__ = ["SignedMeasure", "dirac", "convolve_measures", "convolve_grid_with_measure"]

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class SignedMeasure:
    """atoms: (location, signed mass) pairs; density: real grid function."""

    atoms: tuple[tuple[float, float], ...] = ()
    density: GridFunction | None = None
    mass_leaked: float = 0.0   # convolution mass lost past the grid edge

    def atom_masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms]) if self.atoms \
            else np.zeros(0)

    def total_mass(self) -> float:
        total = float(self.atom_masses().sum())
        if self.density is not None:
            total += float(np.sum(self.density.real) * self.density.step)
        return total

    def tv_norm(self) -> float:
        tv = float(np.abs(self.atom_masses()).sum())
        if self.density is not None:
            tv += float(np.sum(np.abs(self.density.real)) * self.density.step)
        return tv

    def jordan(self) -> tuple["SignedMeasure", "SignedMeasure"]:
        """Nonnegative views (mu+, mu-)."""
        plus_atoms = tuple((x, m) for x, m in self.atoms if m > 0)
        minus_atoms = tuple((x, -m) for x, m in self.atoms if m < 0)
        dplus = dminus = None
        if self.density is not None:
            v = self.density.real
            dplus = self.density.with_values(np.clip(v, 0.0, None))
            dminus = self.density.with_values(np.clip(-v, 0.0, None))
        return (SignedMeasure(plus_atoms, dplus),
                SignedMeasure(minus_atoms, dminus))

    def cf_on(self, u: np.ndarray) -> np.ndarray:
        """F[mu](u) = sum m e^{iux} + int e^{iux} density; direct evaluation."""
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape, dtype=complex)
        for x, m in self.atoms:
            out += m * np.exp(1j * u * x)
        if self.density is not None:
            x = self.density.x()
            vals = self.density.real * self.density.step
            # chunk to keep the outer-product memory bounded
            for i in range(0, x.size, 4096):
                out += np.exp(1j * np.outer(u, x[i:i + 4096])) @ vals[i:i + 4096]
        return out

    def scaled(self, c: float) -> "SignedMeasure":
        dens = None if self.density is None \
            else self.density.with_values(self.density.values * c)
        return SignedMeasure(tuple((x, c * m) for x, m in self.atoms), dens,
                             self.mass_leaked * abs(c))


def dirac(location: float = 0.0, mass: float = 1.0) -> SignedMeasure:
    return SignedMeasure(atoms=((location, mass),))


def _merge_atoms(atoms, tol=1e-12):
    out: list[tuple[float, float]] = []
    for x, m in sorted(atoms):
        if out and abs(x - out[-1][0]) <= tol * max(1.0, abs(x)):
            out[-1] = (out[-1][0], out[-1][1] + m)
        else:
            out.append((x, m))
    return tuple((x, m) for x, m in out if m != 0.0)


def _shift_density(g: GridFunction, delta_x: float) -> tuple[GridFunction, float]:
    """Translate a grid density by delta_x; returns (shifted, mass lost).

    Integer-cell shifts move values exactly with zero fill; fractional
    shifts apply the spectral phase e^{iu delta_x} (exact for content the
    grid resolves).
    """
    cells = delta_x / g.step
    near = round(cells)
    if abs(cells - near) <= _ALIGN_TOL:
        v = g.real
        out = np.zeros_like(v)
        n = v.size
        if near >= 0:
            out[near:] = v[:n - near] if near else v
            lost = float(np.abs(v[n - near:]).sum() * g.step) if near else 0.0
        else:
            out[:n + near] = v[-near:]
            lost = float(np.abs(v[:-near]).sum() * g.step)
        return g.with_values(out), lost
    from .grids import fourier, inverse_fourier
    spec = fourier(g)
    shifted = inverse_fourier(spec.with_values(
        spec.values * np.exp(1j * spec.x() * delta_x)))
    return g.with_values(np.real(shifted.values)), 0.0


def _embed_linear_convolution(d1: GridFunction, d2: GridFunction
                              ) -> tuple[GridFunction, float]:
    """Linear convolution of two grid densities, cropped to d1's grid."""
    if abs(d1.step - d2.step) > 1e-12 * d1.step:
        raise ValueError("density grids must share the step")
    conv = fftconvolve(d1.real, d2.real) * d1.step
    origin = d1.origin + d2.origin
    offset = (origin - d1.origin) / d1.step
    m0 = round(offset)
    if abs(offset - m0) > 1e-6:
        raise ValueError("convolution origins are not grid-aligned")
    out = np.zeros(d1.n)
    lost = 0.0
    for j in range(conv.size):
        idx = j + m0
        if 0 <= idx < d1.n:
            out[idx] += conv[j]
        else:
            lost += abs(conv[j])
    return d1.with_values(out), float(lost * d1.step)


def convolve_measures(a: SignedMeasure, b: SignedMeasure,
                      overflow_tol: float = 1e-9) -> SignedMeasure:
    """a * b on a's density grid (when densities are present).

    Raises GridOverflow once the cumulative mass pushed outside the working
    grid exceeds overflow_tol.
    """
    atoms = []
    for x1, m1 in a.atoms:
        for x2, m2 in b.atoms:
            atoms.append((x1 + x2, m1 * m2))
    dens_parts: list[GridFunction] = []
    lost = a.mass_leaked + b.mass_leaked
    for meas, other in ((a, b), (b, a)):
        if meas.density is not None:
            for x, m in other.atoms:
                shifted, lost_i = _shift_density(meas.density, x)
                dens_parts.append(shifted.with_values(shifted.values * m))
                lost += lost_i * abs(m)
    if a.density is not None and b.density is not None:
        conv, lost_i = _embed_linear_convolution(a.density, b.density)
        dens_parts.append(conv)
        lost += lost_i
    density = None
    if dens_parts:
        base = dens_parts[0]
        total = np.zeros(base.n)
        for p in dens_parts:
            if abs(p.origin - base.origin) > 1e-9 or p.n != base.n:
                raise ValueError("density parts live on different grids")
            total += p.real
        density = base.with_values(total)
    if lost > overflow_tol:
        raise GridOverflow(
            f"convolution pushed mass {lost:.2e} past the working grid")
    return SignedMeasure(_merge_atoms(atoms), density, lost)


def convolve_grid_with_measure(f: GridFunction, mu: SignedMeasure
                               ) -> GridFunction:
    """(f * mu)(x) = sum_j m_j f(x - x_j) + (f * density)(x) in real space."""
    out = np.zeros(f.n)
    for x, m in mu.atoms:
        shifted, _ = _shift_density(f.with_values(f.real), x)
        out += m * shifted.real
    if mu.density is not None:
        conv, _ = _embed_linear_convolution(f.with_values(f.real), mu.density)
        out += conv.real
    return f.with_values(out)
