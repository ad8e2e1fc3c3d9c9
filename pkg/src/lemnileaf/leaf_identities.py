"""Relations between sleaf_2, cleaf_2, the polar angle and arc length.

Every relation is returned as a signed residual so callers pick the
tolerance.  The angle relations are only defined on the principal branch
(k = 0), i.e. for phases in ``[0, pi_2/2]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .leaf_core import LeafKind, cleaf, pi_n, sleaf
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "IdentityReport",
    "BranchError",
    "pythagorean_residual",
    "theta_from_l_cleaf",
    "theta_from_l_sleaf",
    "cumulative_leaf_integral",
    "double_angle_relation_c",
    "double_angle_relation_s",
    "tan_relations",
    "arctan_cleaf_slope_residual",
    "arctan_sleaf_slope_residual",
    "central_difference",
]

FD_STEP = 1e-6
_CUMULATIVE_QUAD = QuadratureConfig(target_abs_tol=1e-12)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    max_abs_residual: float
    sample_count: int
    domain: tuple[float, float]

    def __post_init__(self):
        if not self.max_abs_residual >= 0:
            raise ValueError("max_abs_residual must be >= 0")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")

    def passed(self, tolerance: float) -> bool:
        return self.max_abs_residual <= tolerance


class BranchError(ValueError):
    """Phase outside the principal branch of the polar angle."""


def _principal(l: float) -> float:
    l = float(l)
    upper = 0.5 * pi_n(2)
    if not 0.0 <= l <= upper:
        raise BranchError(
            f"phase {l!r} is outside [0, pi_2/2] = [0, {upper!r}]; only the k = 0 "
            "branch -pi/4 <= theta <= pi/4 (horizontal) / 0 <= theta <= pi/2 "
            "(inclined) is supported"
        )
    return l


def central_difference(f, x: float, h: float = FD_STEP) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def pythagorean_residual(l: float) -> float:
    """``s**2 + c**2 + s**2 c**2 - 1`` for sleaf_2 and cleaf_2 at any phase."""
    s = sleaf(2, l).value
    c = cleaf(2, l).value
    s2, c2 = s * s, c * c
    return s2 + c2 + s2 * c2 - 1.0


def theta_from_l_cleaf(l: float) -> float:
    """Polar angle of the point at arc length ``l`` from the vertex (horizontal curve)."""
    l = _principal(l)
    return math.atan(sleaf(2, l).value)


def theta_from_l_sleaf(l: float) -> float:
    """Polar angle of the point at arc length ``l`` from the origin (inclined curve)."""
    l = _principal(l)
    return math.pi / 4 - math.atan(cleaf(2, l).value)


def cumulative_leaf_integral(kind: LeafKind, l: float, cfg: QuadratureConfig | None = None) -> float:
    """``int_0^l sleaf_2(t) dt`` or ``int_0^l cleaf_2(t) dt`` by quadrature.

    No closed form is used here; compare against the arctan expressions of
    :func:`theta_from_l_cleaf` / :func:`theta_from_l_sleaf`.
    """
    l = _principal(l)
    if l == 0.0:
        return 0.0
    fn = cleaf if kind is LeafKind.CLEAF else sleaf
    res = integrate(lambda t: fn(2, t).value, 0.0, l, cfg or _CUMULATIVE_QUAD)
    return res.value


def double_angle_relation_c(l: float) -> float:
    """``cleaf_2(l)**2 - cos(2 arctan(sleaf_2(l)))``."""
    l = _principal(l)
    c = cleaf(2, l).value
    return c * c - math.cos(2.0 * math.atan(sleaf(2, l).value))


def double_angle_relation_s(l: float) -> float:
    """``sleaf_2(l)**2 - sin(2 theta_bar)`` with the inclined-curve angle."""
    l = _principal(l)
    s = sleaf(2, l).value
    return s * s - math.sin(2.0 * theta_from_l_sleaf(l))


def tan_relations(l: float) -> tuple[float, float]:
    """Residuals of ``tan(theta) = sleaf_2`` and ``tan(pi/4 - theta_bar) = cleaf_2``."""
    l = _principal(l)
    r1 = math.tan(theta_from_l_cleaf(l)) - sleaf(2, l).value
    r2 = math.tan(math.pi / 4 - theta_from_l_sleaf(l)) - cleaf(2, l).value
    return r1, r2


def arctan_cleaf_slope_residual(l: float, h: float = FD_STEP) -> float:
    """Finite-difference check of ``d/dl arctan(cleaf_2) = -sleaf_2``."""
    slope = central_difference(lambda x: math.atan(cleaf(2, x).value), l, h)
    return slope + sleaf(2, l).value


def arctan_sleaf_slope_residual(l: float, h: float = FD_STEP) -> float:
    """Finite-difference check of ``d/dl arctan(sleaf_2) = cleaf_2``."""
    slope = central_difference(lambda x: math.atan(sleaf(2, x).value), l, h)
    return slope - cleaf(2, l).value
