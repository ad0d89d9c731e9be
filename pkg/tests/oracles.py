"""Independent numerical oracles shared by the tests."""

import numpy as np
from scipy.optimize import minimize_scalar

from qtlab import hplane
from qtlab.hplane import Geodesic, HPoint


def golden_foot(beta: Geodesic, p: HPoint) -> float:
    """Arclength coordinate on ``beta`` minimizing the distance to ``p``.

    The distance along a geodesic is convex, so golden-section search from a
    fixed bracket finds the global minimum.
    """
    res = minimize_scalar(lambda t: hplane.dist(p, beta.point_at(t)), bracket=(-1.0, 1.0),
                          method="golden", tol=1e-12)
    return res.x


def sampled_projection(beta: Geodesic, alpha: Geodesic, span: float = 18.0, n: int = 1000) -> tuple[float, float]:
    """Hull of golden-section projections of 10^3 points sampled along ``alpha``.

    Samples that fall below double resolution near the boundary are dropped;
    their feet are already pinned to the end of the hull.
    """
    ts = []
    for t in np.linspace(-span, span, n):
        try:
            p = alpha.point_at(t)
        except ValueError:
            continue
        ts.append(golden_foot(beta, p))
    return min(ts), max(ts)
