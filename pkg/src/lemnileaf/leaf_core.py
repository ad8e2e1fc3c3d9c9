"""Leaf functions sleaf_n and cleaf_n, their inverses and the constants pi_n.

The inverse functions are definite integrals of ``1/sqrt(1 - t**(2n))``
evaluated by tanh-sinh quadrature; the forward functions invert them with a
bracketed Brent solve on the fundamental domain ``[0, pi_n/2]`` and extend
to the real line by symmetry:

* cleaf is even, sleaf is odd;
* ``cleaf(pi_n - l) = -cleaf(l)`` and ``sleaf(pi_n - l) = sleaf(l)``;
* ``f(l + pi_n) = -f(l)``, so both have period ``2 pi_n``.

:func:`ode_trajectory` integrates ``r'' = -n r**(2n-1)`` with classical RK4
and is kept independent of the integral route so the two can be compared.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .quadrature import QuadratureConfig, integrate

__all__ = [
    "LeafKind",
    "LeafEval",
    "OdeTrajectory",
    "check_order",
    "inverse_leaf_integrand",
    "pi_n",
    "arccleaf",
    "arcsleaf",
    "cleaf",
    "sleaf",
    "leaf",
    "leaf_derivative",
    "ode_trajectory",
]

ROOT_TOL = 1e-12
_EPS = float(np.finfo(float).eps)
_QUAD = QuadratureConfig(target_abs_tol=1e-14)


class LeafKind(enum.Enum):
    SLEAF = "sleaf"
    CLEAF = "cleaf"


@dataclass(frozen=True)
class LeafEval:
    """Value and slope of a leaf function at ``phase``."""

    phase: float
    value: float
    derivative: float


@dataclass(frozen=True)
class OdeTrajectory:
    samples: list[tuple[float, float, float]]
    step: float
    order_n: int
    kind: LeafKind

    @property
    def phases(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])

    @property
    def derivatives(self) -> np.ndarray:
        return np.array([s[2] for s in self.samples])

    @property
    def final(self) -> tuple[float, float, float]:
        return self.samples[-1]


def check_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"leaf order must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"leaf order must be >= 1, got {n}")
    return int(n)


def _one_minus_pow(n, t, one_minus_t):
    # 1 - t**(2n) = (1 - t)(1 + t + ... + t**(2n-1)), exact-ish near t = 1
    acc = np.ones_like(t)
    for _ in range(2 * n - 1):
        acc = 1.0 + t * acc
    return one_minus_t * acc


def inverse_leaf_integrand(n: int, t, one_minus_t=None):
    """``1/sqrt(1 - t**(2n))``, the integrand of arcsleaf/arccleaf.

    ``one_minus_t`` may carry ``1 - |t|`` computed more accurately than the
    caller could from ``t`` itself (quadrature nodes next to ``t = 1``).
    Accepts scalars or arrays.
    """
    n = check_order(n)
    scalar = np.ndim(t) == 0
    ta = np.abs(np.asarray(t, dtype=float))
    if one_minus_t is None:
        if np.any(ta >= 1.0):
            raise ValueError(f"inverse leaf integrand needs |t| < 1, got {t!r}")
        om = 1.0 - ta
    else:
        om = np.asarray(one_minus_t, dtype=float)
        if np.any(om <= 0.0) or np.any(ta > 1.0):
            raise ValueError("inverse leaf integrand needs |t| < 1")
    out = 1.0 / np.sqrt(_one_minus_pow(n, ta, om))
    return float(out) if scalar else out


def _leaf_integral(n: int, lo: float, hi: float) -> float:
    """Integral of the inverse-leaf integrand over ``[lo, hi]``, ``0 <= lo < hi <= 1``."""
    # 1 - t from the endpoint gaps and the signed node complement; 1 - lo and
    # 1 - hi are exact for lo, hi >= 1/2, so narrow intervals near 1 stay accurate
    gap_lo = 1.0 - lo
    gap_hi = 1.0 - hi

    def f(t, tc):
        om = np.where(tc > 0, gap_hi, gap_lo) + tc
        return inverse_leaf_integrand(n, t, om)

    return integrate(f, lo, hi, _QUAD, complement=True, vectorized=True).value


_PI_CACHE: dict[int, float] = {}
_PI_LOCK = threading.Lock()


def pi_n(n: int) -> float:
    """Half period ``2 * int_0^1 dt / sqrt(1 - t**(2n))`` (pi_1 = pi)."""
    n = check_order(n)
    try:
        return _PI_CACHE[n]
    except KeyError:
        pass
    with _PI_LOCK:
        if n not in _PI_CACHE:
            _PI_CACHE[n] = 2.0 * _leaf_integral(n, 0.0, 1.0)
        return _PI_CACHE[n]


def _check_radius(r) -> float:
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"leaf inverse needs 0 <= r <= 1, got {r!r}")
    return r


def arccleaf(n: int, r: float) -> float:
    """Phase ``int_r^1 dt / sqrt(1 - t**(2n))``; decreasing from pi_n/2 to 0."""
    n = check_order(n)
    r = _check_radius(r)
    if r == 1.0:
        return 0.0
    if r == 0.0:
        return 0.5 * pi_n(n)
    return _leaf_integral(n, r, 1.0)


def arcsleaf(n: int, r: float) -> float:
    """Phase ``int_0^r dt / sqrt(1 - t**(2n))``; increasing from 0 to pi_n/2."""
    n = check_order(n)
    r = _check_radius(r)
    if r == 0.0:
        return 0.0
    if r == 1.0:
        return 0.5 * pi_n(n)
    if r <= 0.5:
        return _leaf_integral(n, 0.0, r)
    # keep the singular point on an endpoint of the integration interval
    return 0.5 * pi_n(n) - _leaf_integral(n, r, 1.0)


def _invert(inverse, n: int, l: float) -> float:
    g = lambda r: inverse(n, r) - l
    g0, g1 = g(0.0), g(1.0)
    if g0 == 0.0:
        return 0.0
    if g1 == 0.0:
        return 1.0
    if g0 * g1 > 0:
        raise ArithmeticError(f"phase {l!r} is not bracketed on [0, 1]")
    r = brentq(g, 0.0, 1.0, xtol=1e-16, rtol=4 * _EPS, maxiter=200)
    res = abs(g(r))
    if res > ROOT_TOL:
        # near r = 1 the slope dl/dr is unbounded; judge the implied error in r instead
        dr_dl = math.sqrt(max(1.0 - r ** (2 * n), 2 * n * _EPS))
        if res * dr_dl > 8 * _EPS:
            raise ArithmeticError(f"leaf inversion residual {res:.3g} at phase {l!r}")
    return r


def _reduce(n: int, kind: LeafKind, l: float):
    """Map ``l`` onto ``[0, pi_n/2]``; returns (phase, value sign, slope sign)."""
    p = pi_n(n)
    vs = ds = 1.0
    if l < 0:
        l = -l
        if kind is LeafKind.CLEAF:
            ds = -ds
        else:
            vs = -vs
    l = math.fmod(l, 2.0 * p)
    if l >= p:
        l -= p
        vs, ds = -vs, -ds
    if l > 0.5 * p:
        l = p - l
        if kind is LeafKind.CLEAF:
            vs = -vs
        else:
            ds = -ds
    return min(l, 0.5 * p), vs, ds


def leaf(n: int, kind: LeafKind, l: float) -> LeafEval:
    """Evaluate sleaf_n or cleaf_n and its slope at any real phase ``l``."""
    n = check_order(n)
    l = float(l)
    if not math.isfinite(l):
        raise ValueError(f"phase must be finite, got {l!r}")
    lr, vs, ds = _reduce(n, kind, l)
    half = 0.5 * pi_n(n)
    if kind is LeafKind.CLEAF:
        if lr == 0.0:
            r = 1.0
        elif lr == half:
            r = 0.0
        else:
            r = _invert(arccleaf, n, lr)
        slope = -math.sqrt(max(1.0 - r ** (2 * n), 0.0))
    else:
        if lr == 0.0:
            r = 0.0
        elif lr == half:
            r = 1.0
        else:
            r = _invert(arcsleaf, n, lr)
        slope = math.sqrt(max(1.0 - r ** (2 * n), 0.0))
    value = vs * r
    deriv = ds * slope
    # keep the zero unsigned so printed tables never show -0
    return LeafEval(l, value + 0.0, deriv + 0.0)


def cleaf(n: int, l: float) -> LeafEval:
    return leaf(n, LeafKind.CLEAF, l)


def sleaf(n: int, l: float) -> LeafEval:
    return leaf(n, LeafKind.SLEAF, l)


def leaf_derivative(n: int, kind: LeafKind, l: float) -> float:
    """``dr/dl = +-sqrt(1 - r**(2n))`` with the sign of the current branch."""
    return leaf(n, kind, l).derivative


def _rk4_step(n, r, v, h):
    p = 2 * n - 1

    def acc(x):
        return -n * x**p

    k1r, k1v = v, acc(r)
    k2r, k2v = v + 0.5 * h * k1v, acc(r + 0.5 * h * k1r)
    k3r, k3v = v + 0.5 * h * k2v, acc(r + 0.5 * h * k2r)
    k4r, k4v = v + h * k3v, acc(r + h * k3r)
    r_new = r + h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
    v_new = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return r_new, v_new


def ode_trajectory(n: int, kind: LeafKind, l_end: float, step: float) -> OdeTrajectory:
    """Fixed-step RK4 solution of ``r'' = -n r**(2n-1)`` from the kind's initial state.

    The step is shrunk to ``l_end / ceil(l_end / step)`` so the last sample
    lands on ``l_end`` exactly; the step actually used is stored on the result.
    """
    n = check_order(n)
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step!r}")
    if step > 1e-3:
        raise ValueError(f"step must be <= 1e-3 for the reference trajectory, got {step!r}")
    if not l_end >= 0:
        raise ValueError(f"l_end must be >= 0, got {l_end!r}")
    r, v = (1.0, 0.0) if kind is LeafKind.CLEAF else (0.0, 1.0)
    samples = [(0.0, r, v)]
    if l_end == 0:
        return OdeTrajectory(samples, float(step), n, kind)
    steps = math.ceil(l_end / step - 1e-9)
    h = l_end / steps
    for k in range(1, steps + 1):
        r, v = _rk4_step(n, r, v, h)
        samples.append((k * h, r, v))
    return OdeTrajectory(samples, h, n, kind)
