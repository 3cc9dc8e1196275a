"""Discrete Littlewood-Paley analysis and Besov-multiplier certificates.

A dyadic partition of unity chi + sum_j psi_j with psi_j supported in the
annulus {2^{j-1} <= |u| <= 2^{j+1}} splits a grid function into frequency
blocks Delta_j f = F^{-1}[psi_j F f].  The discrete Besov norm weights
block L^p norms by 2^{js} and sums in l^q; it is equivalent, not equal, to
the continuum norm, so all certificates here are ratio and trend
statements on a fixed ladder of test functions.

Division by a characteristic function runs in the log domain
(log|F f| - Re psi), so even Gaussian noise -- where 1/|phi| overflows any
float at moderate frequencies -- yields finite logarithmic ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SpectrumClipped, UnderflowGuard
from .grids import GridFunction, fourier, grid_for_interval, inverse_fourier
from .kernels import smooth_step
from .triplets import CharFunction

__all__ = [
    "BesovParams", "DyadicPartition", "lp_blocks", "besov_norm",
    "log_besov_norm_divided", "modulated_gaussian_ladder",
    "MultiplierRow", "MultiplierReport", "multiplier_ratio",
]

PARTITION_TOL = 1e-10


@dataclass(frozen=True)
class BesovParams:
    """Smoothness s, integrability p, summability q (p, q in [1, inf])."""

    s: float
    p: float
    q: float

    def __post_init__(self):
        if not (self.p >= 1.0 and self.q >= 1.0):
            raise ValueError("p and q must be >= 1 (inf allowed)")

    def label(self) -> str:
        def fmt(v):
            return "inf" if math.isinf(v) else f"{v:g}"
        return f"B^{self.s:g}_{{{fmt(self.p)},{fmt(self.q)}}}"


def _chi(u: np.ndarray) -> np.ndarray:
    """Base cutoff: 1 for |u| <= 1, smooth fall to exactly 0 at |u| >= 2."""
    return 1.0 - smooth_step(np.abs(u) - 1.0)


@dataclass(frozen=True)
class DyadicPartition:
    """Symbols psi_0 = chi, psi_j = chi(u/2^j) - chi(u/2^{j-1}), j >= 1.

    By telescoping, sum_{j<=j_max} psi_j(u) = chi(u / 2^{j_max}), which is
    identically 1 on |u| <= 2^{j_max}; every psi_j is nonnegative and
    vanishes exactly outside its annulus.
    """

    j_max: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.j_max < 1:
            raise ValueError("j_max must be >= 1")

    def symbol(self, j: int, u: np.ndarray) -> np.ndarray:
        if j == 0:
            return _chi(u)
        return _chi(u / 2.0 ** j) - _chi(u / 2.0 ** (j - 1))

    def symbols_on(self, grid: GridFunction) -> list[np.ndarray]:
        key = (grid.origin, grid.step, grid.n)
        if key not in self._cache:
            u = grid.x()
            self._cache[key] = [self.symbol(j, u)
                                for j in range(self.j_max + 1)]
        return self._cache[key]

    @property
    def ceiling(self) -> float:
        """Partition of unity holds exactly for |u| <= this."""
        return 2.0 ** self.j_max


def lp_blocks(f: GridFunction, part: DyadicPartition,
              clip_tol: float = PARTITION_TOL) -> list[GridFunction]:
    """Delta_j f = F^{-1}[psi_j F f] for j = 0..j_max.

    Raises SpectrumClipped when f carries relative spectral mass beyond the
    partition ceiling (those frequencies would be silently lost).
    """
    spec = fourier(f)
    u = spec.x()
    mag = np.abs(spec.values)
    total = float(mag.sum())
    outside = float(mag[np.abs(u) > part.ceiling].sum())
    if total > 0 and outside > clip_tol * total:
        raise SpectrumClipped(
            f"relative spectral mass {outside / total:.2e} beyond "
            f"|u| = {part.ceiling:g}")
    blocks = []
    for sym in part.symbols_on(spec):
        piece = inverse_fourier(spec.with_values(spec.values * sym))
        blocks.append(piece)
    return blocks


def _lq(weighted: np.ndarray, q: float) -> float:
    if math.isinf(q):
        return float(weighted.max()) if weighted.size else 0.0
    return float(np.sum(weighted ** q) ** (1.0 / q))


def besov_norm(f: GridFunction, params: BesovParams,
               part: DyadicPartition) -> float:
    """|| (2^{js} ||Delta_j f||_p)_j ||_{l^q} on the grid."""
    blocks = lp_blocks(f, part)
    lp = np.array([b.lp_norm(params.p) for b in blocks])
    weights = 2.0 ** (params.s * np.arange(len(blocks)))
    return _lq(weights * lp, params.q)


def block_lp_table(f: GridFunction, part: DyadicPartition,
                   ps: tuple[float, ...]) -> dict[float, np.ndarray]:
    """||Delta_j f||_p for each requested p, sharing one block decomposition."""
    blocks = lp_blocks(f, part)
    return {p: np.array([b.lp_norm(p) for b in blocks]) for p in ps}


def _besov_from_table(table: dict[float, np.ndarray],
                      params: BesovParams) -> float:
    lp = table[params.p]
    weights = 2.0 ** (params.s * np.arange(lp.size))
    return _lq(weights * lp, params.q)


# --------------------------------------------------------------------------
# log-domain spectral division
# --------------------------------------------------------------------------

def divide_by_cf(f: GridFunction, noise_cf: CharFunction,
                 spectrum_floor: float = 1e-13) -> tuple[GridFunction, float]:
    """F^{-1}[F f / phi] as (scaled grid function, log scale factor).

    The quotient spectrum is renormalized by its peak magnitude so the
    inverse transform stays inside double range; the true function is
    e^{log_scale} times the returned one.  Spectrum entries below
    ``spectrum_floor`` relative to the peak are FFT roundoff, not signal,
    and are treated as exact zeros -- without this, dividing the roundoff
    floor by a rapidly decaying phi would dominate everything.
    """
    spec = fourier(f)
    u = spec.x()
    psi = np.asarray(noise_cf.psi(u), dtype=complex)
    mag = np.abs(spec.values)
    nz = mag > spectrum_floor * mag.max()
    if not np.any(nz):
        return f.with_values(np.zeros(f.n)), 0.0
    logmag = np.full(u.shape, -np.inf)
    logmag[nz] = np.log(mag[nz]) - psi.real[nz]
    scale = float(np.max(logmag[nz]))
    phase = np.zeros(u.shape)
    phase[nz] = np.angle(spec.values[nz]) - psi.imag[nz]
    quotient = np.zeros(u.shape, dtype=complex)
    quotient[nz] = np.exp(logmag[nz] - scale + 1j * phase[nz])
    out = inverse_fourier(spec.with_values(quotient))
    return out, scale


def log_besov_norm_divided(f: GridFunction, noise_cf: CharFunction,
                           params: BesovParams, part: DyadicPartition
                           ) -> float:
    """log of || F^{-1}[F f / phi] ||_{B^s_{p,q}}, overflow-safe."""
    scaled, log_scale = divide_by_cf(f, noise_cf)
    return math.log(besov_norm(scaled, params, part)) + log_scale


# --------------------------------------------------------------------------
# multiplier certificates on the modulated-Gaussian ladder
# --------------------------------------------------------------------------

def modulated_gaussian_ladder(levels: range | list[int],
                              half_width: float = 10.0,
                              n_points: int = 1 << 16) -> list[tuple[int, GridFunction]]:
    """g_j(x) = cos(2^j x) exp(-x^2/2): spectrum bumps at +-2^j."""
    origin, step = grid_for_interval(half_width, n_points)
    x = origin + step * np.arange(n_points)
    env = np.exp(-0.5 * x * x)
    return [(j, GridFunction(origin, step, np.cos(2.0 ** j * x) * env))
            for j in levels]


@dataclass(frozen=True)
class MultiplierRow:
    s: float
    p: float
    q: float
    level: int
    log_ratio: float

    @property
    def ratio(self) -> float:
        try:
            return math.exp(self.log_ratio)
        except OverflowError:
            return float("inf")


@dataclass(frozen=True)
class MultiplierReport:
    """Operator-norm evidence for f -> F^{-1}[F f / phi].

    Any finite test set only bounds the operator norm from below: the
    ladder can refute boundedness (monotone blow-up) or accumulate
    evidence for it (stable sup), never prove it.
    """

    rows: tuple[MultiplierRow, ...]
    loss_exponent: float

    def sup_log_ratio(self, s: float, p: float, q: float) -> float:
        return max(r.log_ratio for r in self.rows
                   if (r.s, r.p, r.q) == (s, p, q))

    def level_log_ratios(self, s: float, p: float, q: float
                         ) -> list[tuple[int, float]]:
        out = [(r.level, r.log_ratio) for r in self.rows
               if (r.s, r.p, r.q) == (s, p, q)]
        return sorted(out)

    def growth_run(self, s: float, p: float, q: float,
                   factor: float = 2.0) -> int:
        """Longest run of consecutive levels with ratio growth >= factor."""
        seq = self.level_log_ratios(s, p, q)
        best = run = 0
        for (j0, r0), (j1, r1) in zip(seq[:-1], seq[1:]):
            if j1 == j0 + 1 and r1 - r0 >= math.log(factor):
                run += 1
                best = max(best, run)
            else:
                run = 0
        return best


def multiplier_ratio(noise_cf: CharFunction, alpha: float,
                     testset: list[tuple[int, GridFunction]],
                     params_grid: list[BesovParams],
                     part: DyadicPartition,
                     eps: float = 0.05) -> MultiplierReport:
    """Ratios ||F^{-1}[F f / phi]||_{B^s_{p,q}} / ||f||_{B^{s+alpha+eps}_{p,q}}.

    The numerator is computed in the log domain so the Gaussian-noise
    blow-up is measurable rather than an overflow.  One block decomposition
    per test function serves every (s, p, q) in the grid.
    """
    if not isinstance(noise_cf, CharFunction):
        raise UnderflowGuard(
            "multiplier analysis needs exponent (log-domain) access; wrap "
            "the noise CF in a CharFunction")
    ps = tuple(sorted({prm.p for prm in params_grid}))
    loss = alpha + eps
    rows: list[MultiplierRow] = []
    for level, f in testset:
        table_f = block_lp_table(f, part, ps)
        scaled, log_scale = divide_by_cf(f, noise_cf)
        table_t = block_lp_table(scaled, part, ps)
        for prm in params_grid:
            denom = _besov_from_table(
                table_f, BesovParams(prm.s + loss, prm.p, prm.q))
            numer_scaled = _besov_from_table(table_t, prm)
            log_ratio = math.log(numer_scaled) + log_scale - math.log(denom)
            rows.append(MultiplierRow(s=prm.s, p=prm.p, q=prm.q,
                                      level=level, log_ratio=log_ratio))
    return MultiplierReport(rows=tuple(rows), loss_exponent=loss)
