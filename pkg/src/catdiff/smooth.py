"""Float-backed smooth maps, for demonstration only.

D[f](u, x) is approximated by a central difference. Verdicts here are
numerical and never used by the suites or the acceptance checks.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

STEP = 1e-4
TOLERANCE = 1e-6


@dataclass(frozen=True)
class SmoothMap:
    dom_dim: int
    cod_dim: int
    fn: Callable

    def __call__(self, x):
        return tuple(self.fn(tuple(x)))


def numeric_derivative(f: SmoothMap, step: float = STEP) -> SmoothMap:
    n = f.dom_dim

    def d(ux):
        u, x = ux[:n], ux[n:]
        hi = f([xi + step * ui for xi, ui in zip(x, u)])
        lo = f([xi - step * ui for xi, ui in zip(x, u)])
        return [(a - b) / (2 * step) for a, b in zip(hi, lo)]
    return SmoothMap(2 * n, f.cod_dim, d)


def from_poly(p) -> SmoothMap:
    return SmoothMap(p.dom_dim, p.cod_dim, lambda x: [float(v) for v in p(x)])


def close(f: SmoothMap, g: SmoothMap, samples: int = 20, seed: int = 0,
          tol: float = TOLERANCE) -> bool:
    """Compare on random points in [-1, 1]^n with a relative tolerance."""
    rng = random.Random(seed)
    for _ in range(samples):
        pt = [rng.uniform(-1, 1) for _ in range(f.dom_dim)]
        for a, b in zip(f(pt), g(pt)):
            if not math.isclose(a, b, rel_tol=tol, abs_tol=tol):
                return False
    return True


def check_derivative(f: SmoothMap, df: SmoothMap, **kw) -> bool:
    """Does df agree with the central-difference derivative of f?"""
    return close(numeric_derivative(f), df, **kw)
