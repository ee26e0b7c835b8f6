"""Normalized Bessel function and the plane-wave x Bessel product kernel.

j_alpha is the entire even function with j_alpha(0) = 1 solving the radial
eigen-equation u'' + ((2*alpha+1)/r) u' = -u; it equals
2^alpha * Gamma(alpha+1) * J_alpha(x) / x^alpha.  Evaluation uses the power
series for small arguments and a large-argument expansion beyond the
switchover (the alternating series loses too many digits in float64 there).
"""

from dataclasses import dataclass

import numpy as np

from . import _accel


@dataclass(frozen=True)
class BesselEvaluator:
    """Evaluation policy for j_alpha: series cutoff and switchover argument."""

    alpha: float
    series_cutoff: int = _accel.DEFAULT_SERIES_CUTOFF
    switchover_argument: float = _accel.DEFAULT_SWITCHOVER

    def __post_init__(self):
        if not self.alpha > -0.5:
            raise ValueError(f"alpha out of range: need alpha > -1/2, got {self.alpha}")
        if self.series_cutoff < 1:
            raise ValueError("series cutoff must be positive")
        if self.switchover_argument <= 0:
            raise ValueError("switchover argument must be positive")


def bessel_j_normalized(be, x):
    """j_alpha at a float or array of floats (even in x, values in [-1, 1])."""
    arr = np.asarray(x, dtype=np.float64)
    out = _accel.j_alpha(be.alpha, arr, cutoff=be.series_cutoff,
                         switchover=be.switchover_argument)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def weinstein_kernel(params, be, lam, x):
    """Kernel value exp(-1j*<x', lam'>) * j_alpha(x_{d+1} * lam_{d+1}).

    ``lam`` and ``x`` are real points of R^{d+1} (single points or (n, d+1)
    arrays); the modulus never exceeds 1 on real arguments.
    """
    lam = np.asarray(lam, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    single = lam.ndim == 1 and x.ndim == 1
    lam = np.atleast_2d(lam)
    x = np.atleast_2d(x)
    if lam.shape[-1] != params.d + 1 or x.shape[-1] != params.d + 1:
        raise ValueError(f"points must have {params.d + 1} coordinates")
    lam, x = np.broadcast_arrays(lam, x)
    d = params.d
    phase = np.einsum("ij,ij->i", x[:, :d], lam[:, :d])
    radial = _accel.j_alpha(be.alpha, lam[:, d] * x[:, d],
                            cutoff=be.series_cutoff,
                            switchover=be.switchover_argument)
    vals = radial * np.exp(-1j * phase)
    if single:
        return complex(vals[0])
    return vals
