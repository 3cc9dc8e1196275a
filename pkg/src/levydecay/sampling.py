"""Samplers for infinitely divisible laws.

Exact routes exist for the Gaussian, gamma, bilateral-gamma, stable and
compound-Poisson families (and sums of a Gaussian part with an atomic
part).  Everything else goes through jump truncation: jumps with |x| below
eps_trunc are dropped and replaced by their compensating drift, with a
Gaussian surrogate for the small-jump variance once it matters.

All samplers are pure functions of (spec, n, seed).
"""

from __future__ import annotations

import numpy as np
from scipy import stats

from .errors import NoSampler
from .measures import JumpMeasure
from .quadrature import QuadratureConfig, tail_mass
from .triplets import LevyTriplet

__all__ = ["sample_triplet", "compound_poisson_draws"]

# Gaussian surrogate kicks in once the discarded small-jump variance
# exceeds this (documented default; not itself a model quantity).
GAUSS_SURROGATE_VARIANCE = 1e-4


def compound_poisson_draws(rng: np.random.Generator, n: int,
                           rate: float, jump_sampler) -> np.ndarray:
    """n draws of sum_{i<=N} J_i with N ~ Poisson(rate), J ~ jump_sampler."""
    counts = rng.poisson(rate, size=n)
    total = int(counts.sum())
    if total == 0:
        return np.zeros(n)
    jumps = jump_sampler(rng, total)
    out = np.zeros(n)
    idx = np.repeat(np.arange(n), counts)
    np.add.at(out, idx, jumps)
    return out


def _atom_jump_sampler(atoms):
    locs = np.array([x for x, _ in atoms])
    masses = np.array([m for _, m in atoms])
    probs = masses / masses.sum()

    def draw(rng, size):
        return rng.choice(locs, size=size, p=probs)

    return draw


def _ac_jump_sampler(parts, eps: float, cfg: QuadratureConfig):
    """Inverse-CDF sampler for the a.c. part restricted to |x| >= eps.

    ``parts`` lists (density, lo, hi, sign) pieces on the positive axis;
    sign mirrors the draw back to the negative side.  Quantile tables use a
    log-spaced grid (2^12 points per piece).
    """
    pieces = []
    for density, lo, hi, sign in parts:
        a = max(lo, eps)
        if hi <= a:
            continue
        b = hi if np.isfinite(hi) else _find_cutoff(density, a, cfg)
        grid = np.geomspace(a, b, 4097)
        vals = density(grid)
        cdf = np.concatenate([[0.0], np.cumsum(
            0.5 * (vals[1:] + vals[:-1]) * np.diff(grid))])
        mass = cdf[-1]
        if mass <= 0:
            continue
        pieces.append((sign, grid, cdf / mass, mass))
    total = sum(p[3] for p in pieces)
    weights = np.array([p[3] / total for p in pieces])

    def draw(rng, size):
        which = rng.choice(len(pieces), size=size, p=weights)
        u = rng.uniform(size=size)
        out = np.empty(size)
        for i, (sign, grid, cdf, _) in enumerate(pieces):
            sel = which == i
            if np.any(sel):
                out[sel] = sign * np.interp(u[sel], cdf, grid)
        return out

    return draw, total


def _find_cutoff(density, a: float, cfg: QuadratureConfig) -> float:
    b = max(2.0 * a, 1.0)
    for _ in range(60):
        if tail_mass(density, b, np.inf, cfg) < cfg.tail_mass_tol:
            return b
        b *= 2.0
    raise NoSampler("density tail mass does not truncate")


def sample_triplet(t: LevyTriplet, n: int, seed: int,
                   eps_trunc: float | None = None,
                   cfg: QuadratureConfig | None = None) -> np.ndarray:
    """i.i.d. draws from the law of the triplet; deterministic given seed.

    Exact when the measure is purely atomic (compound Poisson plus drift
    and Gaussian part).  With an a.c. part, ``eps_trunc`` must be set: jumps
    below it are replaced by their compensating drift, plus a Gaussian
    surrogate when the discarded variance exceeds the documented threshold.
    """
    cfg = cfg or QuadratureConfig()
    rng = np.random.default_rng(seed)
    m = t.measure
    out = np.zeros(n)
    drift = t.gamma
    if t.sigma2 > 0.0:
        out += rng.normal(0.0, np.sqrt(t.sigma2), size=n)

    if m.atoms:
        rate = sum(mass for _, mass in m.atoms)
        out += compound_poisson_draws(rng, n, rate, _atom_jump_sampler(m.atoms))
        drift -= sum(mass * x for x, mass in m.atoms if abs(x) <= 1.0)

    if m.density is not None:
        if eps_trunc is None or eps_trunc <= 0.0:
            raise NoSampler(
                "a.c. jump measure without eps_trunc: no exact sampler applies")
        parts = _one_sided(m)
        draw, rate = _ac_jump_sampler(parts, eps_trunc, cfg)
        out += compound_poisson_draws(rng, n, rate, draw)
        # compensator for retained jumps in [eps, 1] (both sides)
        comp = 0.0
        for dens, lo, hi, sign in parts:
            a, b = max(lo, eps_trunc), min(hi, 1.0)
            if b > a:
                comp += sign * tail_mass(lambda x: x * dens(x), a, b, cfg)
        drift -= comp
        # small-jump variance below eps
        var = 0.0
        for dens, lo, hi, _ in parts:
            a, b = lo, min(hi, eps_trunc)
            if b > a:
                var += tail_mass(lambda x: x * x * dens(x), a, b, cfg)
        if var > GAUSS_SURROGATE_VARIANCE:
            out += rng.normal(0.0, np.sqrt(var), size=n)
    return out + drift


def _one_sided(m: JumpMeasure):
    """(density, lo, hi, sign) pieces on the positive axis."""
    sides = [(m.density, lo, hi, +1.0) for lo, hi in m.positive_intervals()]
    gm = m.mirrored_density()
    sides += [(gm, lo, hi, -1.0) for lo, hi in m.negative_intervals()]
    return sides


def gaussian_sampler(sigma2: float, mean: float = 0.0):
    def draw(n, seed):
        rng = np.random.default_rng(seed)
        return mean + np.sqrt(sigma2) * rng.standard_normal(n)
    return draw


def gamma_sampler(a: float, lam: float):
    def draw(n, seed):
        rng = np.random.default_rng(seed)
        return rng.gamma(a, 1.0 / lam, size=n)
    return draw


def bilateral_gamma_sampler(ap, lp, am, lm):
    def draw(n, seed):
        rng = np.random.default_rng(seed)
        return rng.gamma(ap, 1.0 / lp, size=n) - rng.gamma(am, 1.0 / lm, size=n)
    return draw


def compound_poisson_sampler(atoms, drift: float = 0.0):
    def draw(n, seed):
        rng = np.random.default_rng(seed)
        rate = sum(m for _, m in atoms)
        return drift + compound_poisson_draws(rng, n, rate,
                                              _atom_jump_sampler(atoms))
    return draw


def stable_sampler(beta: float):
    """Symmetric beta-stable with phi(u) = exp(-|u|^beta)."""
    def draw(n, seed):
        rng = np.random.default_rng(seed)
        if beta == 1.0:
            return rng.standard_cauchy(n)
        return stats.levy_stable.rvs(alpha=beta, beta=0.0, size=n,
                                     random_state=rng)
    return draw


def tempered_stable_sampler(c: float, lam: float, beta: float):
    """Exact for beta < 0: finite activity, jump magnitudes Gamma(-beta, 1/lam).

    The one-sided jump density c x^{-1-beta} e^{-lam x} normalizes to a
    Gamma(-beta, 1/lam) law; signs are symmetric.
    """
    if beta >= 0.0:
        raise NoSampler("tempered_stable exact sampler needs beta < 0")
    from scipy.special import gamma as gamma_fn
    rate_one_side = c * gamma_fn(-beta) * lam ** beta

    def jump(rng, size):
        mag = rng.gamma(-beta, 1.0 / lam, size=size)
        sign = rng.choice([-1.0, 1.0], size=size)
        return mag * sign

    def draw(n, seed):
        rng = np.random.default_rng(seed)
        return compound_poisson_draws(rng, n, 2.0 * rate_one_side, jump)
    return draw
