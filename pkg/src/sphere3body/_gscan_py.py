"""Pure-numpy fallback for the reduced-equation scan kernel.

Same contract as the compiled extension in _gscan.pyx; selected by
kernels.py when the extension is unavailable.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def g_array(x, a: float, nu1: float, nu2: float) -> np.ndarray:
    """Reduced scalar equation g evaluated on an array of shape angles.

    The sign functions are taken from the sign of sin(x) and sin(x - a),
    which matches the per-region sign table everywhere g is used.
    """
    x = np.asarray(x, dtype=float)
    sx = np.sin(x)
    sxa = np.sin(x - a)
    al = np.where(sx >= 0.0, 1.0, -1.0)
    be = np.where(sxa >= 0.0, 1.0, -1.0)
    s2x = sx * sx
    s2xa = sxa * sxa
    sa2 = np.sin(a) ** 2
    sin2x = np.sin(2.0 * x)
    sin2xa = np.sin(2.0 * (x - a))
    return (
        al * be * s2x * s2xa * (nu1 * sin2x + nu2 * sin2xa)
        - sa2 * (al * s2x * sin2x - be * s2xa * sin2xa)
        - sa2 * np.sin(2.0 * a) * (nu2 * al * s2x + nu1 * be * s2xa)
    )


def g_scalar(x: float, a: float, nu1: float, nu2: float) -> float:
    return float(g_array(np.array([x]), a, nu1, nu2)[0])
