"""Jump measures: atoms plus an absolutely continuous part.

A jump measure nu lives on R\\{0} and must satisfy int min(1, x^2) nu(dx)
< infinity.  The absolutely continuous part is a nonnegative density with
declared support intervals; well-known families (gamma, bilateral gamma,
stable, tempered stable) are registered by name so configuration files can
reference them without shipping code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gamma as gamma_fn

from .errors import ConfigError, InvalidMeasure
from .quadrature import QuadratureConfig, tail_mass

__all__ = [
    "JumpMeasure", "SymmetrizedMeasure", "symmetrize",
    "density_family", "stable_intensity",
]

_INF = float("inf")


def stable_intensity(beta: float) -> float:
    """Intensity c with nu(dx) = c |x|^{-1-beta} dx giving |phi| = e^{-|u|^beta}."""
    return gamma_fn(1.0 + beta) * math.sin(math.pi * beta / 2.0) / math.pi


@dataclass(frozen=True)
class JumpMeasure:
    """Atoms plus an optional a.c. density on declared support intervals.

    ``atoms`` are (location, mass) pairs with nonzero locations and positive
    masses.  ``density`` evaluates the a.c. part pointwise (ndarray-safe);
    ``support`` lists open intervals (lo, hi) not containing 0 on which the
    density lives.  ``integrability_order`` declares a p with
    int (|x|^p ∧ 1) nu(dx) < inf near the origin (2.0 always works).
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: Callable[[float], float] | None = None
    support: tuple[tuple[float, float], ...] = ()
    integrability_order: float = 2.0

    def __post_init__(self):
        for x, m in self.atoms:
            if x == 0.0:
                raise InvalidMeasure("atom at 0 is not allowed")
            if m <= 0.0:
                raise InvalidMeasure(f"atom mass must be positive, got {m}")
        if (self.density is None) != (len(self.support) == 0):
            raise InvalidMeasure("density and support must be given together")
        for lo, hi in self.support:
            if lo >= hi or (lo < 0.0 < hi):
                raise InvalidMeasure(f"bad support interval ({lo}, {hi})")

    @property
    def is_atomic(self) -> bool:
        return self.density is None

    def positive_intervals(self) -> list[tuple[float, float]]:
        return [(lo, hi) for lo, hi in self.support if lo >= 0.0]

    def negative_intervals(self) -> list[tuple[float, float]]:
        """Negative-side support, mirrored to the positive half-line."""
        return [(-hi, -lo) for lo, hi in self.support if hi <= 0.0]

    def mirrored_density(self) -> Callable[[float], float] | None:
        if self.density is None:
            return None
        d = self.density
        return lambda x: d(-x)

    def mass_outside(self, r: float, cfg: QuadratureConfig | None = None) -> float:
        """nu(R \\ [-r, r]); finite for every admissible measure."""
        cfg = cfg or QuadratureConfig()
        total = sum(m for x, m in self.atoms if abs(x) > r)
        if self.density is not None:
            for lo, hi in self.support:
                a, b = max(lo, r), hi
                if b > a:
                    total += tail_mass(self.density, a, b, cfg)
                a, b = lo, min(hi, -r)
                if b > a:
                    total += tail_mass(self.density, a, b, cfg)
        return total

    def check_integrability(self, cfg: QuadratureConfig | None = None) -> float:
        """Numerically verify int min(1, x^2) nu(dx) < inf; returns the value.

        Raises InvalidMeasure when the integral diverges (detected by a
        non-stabilizing ladder toward the origin).
        """
        cfg = cfg or QuadratureConfig()
        total = sum(min(1.0, x * x) * m for x, m in self.atoms)
        if self.density is None:
            return total
        # integrate min(1, x^2) * g on each one-sided interval with an
        # origin ladder to detect divergence
        for intervals, g in ((self.positive_intervals(), self.density),
                             (self.negative_intervals(), self.mirrored_density())):
            for lo, hi in intervals:
                b1 = min(hi, 1.0)
                if b1 > lo:
                    if lo > 0.0:
                        total += tail_mass(lambda x: x * x * g(x), lo, b1, cfg)
                    else:
                        # ladder eps -> 0
                        vals = []
                        eps = b1
                        acc = 0.0
                        for _ in range(40):
                            nxt = eps / 4.0
                            acc += tail_mass(lambda x: x * x * g(x), nxt, eps, cfg)
                            vals.append(acc)
                            eps = nxt
                            if len(vals) >= 2 and vals[-1] - vals[-2] < cfg.tol:
                                break
                        else:
                            raise InvalidMeasure(
                                "int x^2 nu(dx) near 0 does not converge")
                        total += acc
                if hi > 1.0:
                    total += tail_mass(g, max(lo, 1.0), hi, cfg)
        return total


@dataclass(frozen=True)
class SymmetrizedMeasure:
    """One-sided measure nu_s(A) = nu(A) + nu(-A) on (0, inf).

    Controls |phi| through int (cos(ux) - 1) nu_s(dx); the k-function
    k_s(x) = x * (density of nu_s at x) drives the decay exponent.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: Callable[[float], float] | None = None
    support: tuple[tuple[float, float], ...] = ()

    def k_at(self, x):
        """k_s(x) = x * density(x); 0 where no a.c. part lives."""
        if self.density is None:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        xs = np.asarray(x, dtype=float)
        out = xs * self.density(xs)
        mask = np.zeros(xs.shape, dtype=bool)
        for lo, hi in self.support:
            mask |= (xs > lo) & (xs <= hi)
        out = np.where(mask, out, 0.0)
        return out if np.ndim(x) else float(out)


def symmetrize(m: JumpMeasure) -> SymmetrizedMeasure:
    """Fold a jump measure onto the positive half-line, adding masses."""
    folded: dict[float, float] = {}
    for x, mass in m.atoms:
        folded[abs(x)] = folded.get(abs(x), 0.0) + mass
    atoms = tuple(sorted(folded.items()))
    if m.density is None:
        return SymmetrizedMeasure(atoms=atoms)
    pos = m.positive_intervals()
    neg = m.negative_intervals()
    d = m.density

    def density_s(x):
        xs = np.asarray(x, dtype=float)
        out = np.zeros_like(xs)
        for lo, hi in pos:
            sel = (xs > lo) & (xs <= hi)
            if np.any(sel):
                out = np.where(sel, out + d(xs), out)
        for lo, hi in neg:
            sel = (xs > lo) & (xs <= hi)
            if np.any(sel):
                out = np.where(sel, out + d(-xs), out)
        return out if np.ndim(x) else float(out)

    # merge overlapping one-sided support intervals
    ivs = sorted(pos + neg)
    merged: list[tuple[float, float]] = []
    for lo, hi in ivs:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return SymmetrizedMeasure(atoms=atoms, density=density_s,
                              support=tuple(merged))


# --------------------------------------------------------------------------
# named density families (configuration-friendly: no code in config files)
# --------------------------------------------------------------------------

def _gamma_family(params: dict) -> JumpMeasure:
    a, lam = float(params["a"]), float(params["lam"])
    if a <= 0 or lam <= 0:
        raise ConfigError("gamma family needs a > 0 and lam > 0")
    return JumpMeasure(
        density=lambda x: a * np.exp(-lam * x) / x,
        support=((0.0, _INF),),
        integrability_order=1.0,
    )


def _bilateral_gamma_family(params: dict) -> JumpMeasure:
    ap, lp = float(params["a_plus"]), float(params["lam_plus"])
    am, lm = float(params["a_minus"]), float(params["lam_minus"])
    if min(ap, lp, am, lm) <= 0:
        raise ConfigError("bilateral_gamma family needs positive parameters")

    def dens(x):
        xs = np.asarray(x, dtype=float)
        out = np.where(xs > 0, ap * np.exp(-lp * np.abs(xs)) / np.abs(xs),
                       am * np.exp(-lm * np.abs(xs)) / np.abs(xs))
        return out if np.ndim(x) else float(out)

    return JumpMeasure(density=dens,
                       support=((-_INF, 0.0), (0.0, _INF)),
                       integrability_order=1.0)


def _stable_family(params: dict) -> JumpMeasure:
    beta = float(params["beta"])
    if not 0.0 < beta < 2.0:
        raise ConfigError("stable family needs 0 < beta < 2")
    c = stable_intensity(beta)
    return JumpMeasure(
        density=lambda x: c * np.abs(x) ** (-1.0 - beta),
        support=((-_INF, 0.0), (0.0, _INF)),
        integrability_order=beta + 1e-9,
    )


def _tempered_stable_family(params: dict) -> JumpMeasure:
    c, lam, beta = float(params["c"]), float(params["lam"]), float(params["beta"])
    if c <= 0 or lam <= 0 or beta >= 1.0:
        raise ConfigError("tempered_stable family needs c, lam > 0 and beta < 1")
    return JumpMeasure(
        density=lambda x: c * np.exp(-lam * np.abs(x)) * np.abs(x) ** (-1.0 - beta),
        support=((-_INF, 0.0), (0.0, _INF)),
        integrability_order=max(beta, 0.0) + 1e-9,
    )


_FAMILIES = {
    "gamma": _gamma_family,
    "bilateral_gamma": _bilateral_gamma_family,
    "stable": _stable_family,
    "cauchy": lambda params: _stable_family({"beta": 1.0}),
    "tempered_stable": _tempered_stable_family,
}


def density_family(name: str, params: dict | None = None) -> JumpMeasure:
    """Instantiate a registered a.c. jump-measure family by name."""
    try:
        builder = _FAMILIES[name]
    except KeyError:
        raise ConfigError(
            f"unknown density family {name!r}; known: {sorted(_FAMILIES)}")
    return builder(params or {})
