"""The k-function: density of x * nu_s(dx) near the origin.

Its right limit at 0 is the polynomial decay exponent of |phi|; its
bounded-variation structure on (0, delta] decides whether that decay is
sharp.  Jumps of k may be declared explicitly so variation and
log-moment integrals can treat them exactly instead of resolving them by
refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidMeasure
from .measures import SymmetrizedMeasure

__all__ = ["KFunction", "k_from_symmetrized"]


@dataclass(frozen=True)
class KFunction:
    """k_s on (0, delta], with optional declared jumps and derivative.

    ``fn`` must accept ndarrays and return the full k_s including any jumps.
    ``jumps`` lists (location, signed size) pairs inside (0, delta);
    ``deriv`` is the derivative of the a.c. part where it exists (numeric
    differencing is used when absent).
    """

    delta: float
    fn: Callable
    jumps: tuple[tuple[float, float], ...] = ()
    deriv: Callable | None = None

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")
        for loc, _ in self.jumps:
            if not 0.0 < loc < self.delta:
                raise ValueError(f"declared jump at {loc} outside (0, delta)")

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float)) if np.ndim(x) \
            else float(self.fn(x))

    def derivative(self, x, h_rel: float = 1e-6):
        """d/dx of the a.c. part; central differences when no deriv given."""
        if self.deriv is not None:
            return self.deriv(np.asarray(x, dtype=float)) if np.ndim(x) \
                else float(self.deriv(x))
        xs = np.asarray(x, dtype=float)
        h = np.maximum(np.abs(xs) * h_rel, 1e-12)
        val = (self.fn(xs + h) - self.fn(xs - h)) / (2.0 * h)
        return val if np.ndim(x) else float(val)


def k_from_symmetrized(ms: SymmetrizedMeasure, delta: float,
                       jumps: tuple[tuple[float, float], ...] = (),
                       deriv: Callable | None = None) -> KFunction:
    """Derive k_s(x) = x * density_s(x) on (0, delta] from nu_s.

    Atoms of nu_s inside (0, delta] would make x nu_s(dx) non-a.c. there,
    so they are rejected.
    """
    for x, _ in ms.atoms:
        if 0.0 < x <= delta:
            raise InvalidMeasure(
                f"nu_s has an atom at {x} <= delta; x nu_s is not a.c. there")
    return KFunction(delta=delta, fn=lambda x: ms.k_at(x), jumps=jumps,
                     deriv=deriv)
