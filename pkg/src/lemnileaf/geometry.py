"""Lemniscate of Bernoulli with focal constant 1/sqrt(2), in two orientations.

``HORIZONTAL`` is ``(x**2 + y**2)**2 = x**2 - y**2`` with foci ``(+-1/sqrt2, 0)``
and vertex ``A = (1, 0)``; a point at arc length ``l`` from ``A`` lies at
radius ``cleaf_2(l)``.  ``DIAGONAL`` is the same curve turned by 45 degrees,
``(x**2 + y**2)**2 = 2xy``, foci ``(1/2, 1/2)`` and ``(-1/2, -1/2)``; a point
at arc length ``l`` from the origin lies at radius ``sleaf_2(l)``.

Only the principal branch is modelled: the arc from the vertex to the
origin (horizontal) or from the origin to the vertex (diagonal) in the
first quadrant, phases ``0 <= l <= pi_2/2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .leaf_core import arccleaf, arcsleaf, cleaf, pi_n, sleaf
from .leaf_identities import _principal, theta_from_l_cleaf, theta_from_l_sleaf
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "PlanarPoint",
    "LemniscateVariant",
    "ConstructionFrame",
    "DegenerateFrameError",
    "SQRT2",
    "foci",
    "implicit_residual",
    "polar_radius",
    "point_on_curve",
    "focal_chords",
    "focal_distances_direct",
    "arclength_from_radius",
    "arclength_polar_direct",
    "auxiliary_factor",
    "factorization_residual",
    "construction_frame_horizontal",
    "construction_frame_diagonal",
    "diagonal_radicands",
    "intersect_diagonal_line",
]

SQRT2 = math.sqrt(2.0)
_RADICAND_CLAMP = 1e-12
_POLAR_QUAD = QuadratureConfig(target_abs_tol=1e-13)


class PlanarPoint(NamedTuple):
    x: float
    y: float

    def dist(self, other: "PlanarPoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)


ORIGIN = PlanarPoint(0.0, 0.0)


class LemniscateVariant(enum.Enum):
    HORIZONTAL = "horizontal"
    DIAGONAL = "diagonal"


class DegenerateFrameError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionFrame:
    """Named points of the similar-triangle construction at one phase.

    ``residuals`` maps each verified relation to its signed residual, so a
    frame carries its own consistency evidence.
    """

    variant: LemniscateVariant
    phase: float
    theta: float
    O: PlanarPoint
    A: PlanarPoint
    B: PlanarPoint
    C: PlanarPoint
    P: PlanarPoint
    OP: float
    OC: float
    CP: float
    AB: float
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def points(self) -> dict[str, PlanarPoint]:
        return {"O": self.O, "A": self.A, "B": self.B, "C": self.C, "P": self.P}

    @property
    def segments(self) -> list[tuple[str, str]]:
        return [("O", "B"), ("O", "A"), ("A", "B"), ("C", "P"), ("O", "C")]

    @property
    def max_residual(self) -> float:
        return max(abs(v) for v in self.residuals.values())


def foci(v: LemniscateVariant) -> tuple[PlanarPoint, PlanarPoint]:
    if v is LemniscateVariant.HORIZONTAL:
        return PlanarPoint(1 / SQRT2, 0.0), PlanarPoint(-1 / SQRT2, 0.0)
    return PlanarPoint(0.5, 0.5), PlanarPoint(-0.5, -0.5)


def vertex(v: LemniscateVariant) -> PlanarPoint:
    if v is LemniscateVariant.HORIZONTAL:
        return PlanarPoint(1.0, 0.0)
    return PlanarPoint(1 / SQRT2, 1 / SQRT2)


def implicit_residual(v: LemniscateVariant, p) -> float:
    x, y = float(p[0]), float(p[1])
    q = x * x + y * y
    if v is LemniscateVariant.HORIZONTAL:
        return q * q - (x * x - y * y)
    return q * q - 2.0 * x * y


def polar_radius(v: LemniscateVariant, theta: float) -> float:
    """Nonnegative polar radius ``sqrt(cos 2theta)`` or ``sqrt(sin 2theta)``."""
    if v is LemniscateVariant.HORIZONTAL:
        rad = math.cos(2.0 * theta)
        admissible = "-pi/4 <= theta <= pi/4"
    else:
        rad = math.sin(2.0 * theta)
        admissible = "0 <= theta <= pi/2"
    if rad < -1e-15:
        raise ValueError(f"theta={theta!r} is off the curve ({v.value}); need {admissible} (mod pi)")
    return math.sqrt(max(rad, 0.0))


def _radius_angle(v: LemniscateVariant, l: float) -> tuple[float, float]:
    if v is LemniscateVariant.HORIZONTAL:
        return cleaf(2, l).value, theta_from_l_cleaf(l)
    return sleaf(2, l).value, theta_from_l_sleaf(l)


def point_on_curve(v: LemniscateVariant, l: float) -> PlanarPoint:
    """Point at arc length ``l`` along the principal branch."""
    r, th = _radius_angle(v, l)
    return PlanarPoint(r * math.cos(th), r * math.sin(th))


def focal_chords(v: LemniscateVariant, l: float) -> tuple[float, float]:
    """Closed-form focal distances ``(PF, PF')`` in terms of the leaf radius and angle."""
    r, th = _radius_angle(v, l)
    if v is LemniscateVariant.HORIZONTAL:
        cross = SQRT2 * math.cos(th) * r
    else:
        cross = (math.sin(th) + math.cos(th)) * r
    base = 0.5 + r * r
    return math.sqrt(max(base - cross, 0.0)), math.sqrt(base + cross)


def focal_distances_direct(v: LemniscateVariant, l: float) -> tuple[float, float]:
    p = point_on_curve(v, l)
    f1, f2 = foci(v)
    return p.dist(f1), p.dist(f2)


def arclength_from_radius(v: LemniscateVariant, r: float) -> float:
    """Arc length to the point at radius ``r``: from the vertex (horizontal) or the origin (diagonal)."""
    if v is LemniscateVariant.HORIZONTAL:
        return arccleaf(2, r)
    return arcsleaf(2, r)


def _acos_near_one(x: float, one_minus_x: float) -> float:
    # arccos(x) = 2 asin(sqrt((1 - x)/2)) keeps precision as x -> 1
    return 2.0 * math.asin(math.sqrt(0.5 * one_minus_x)) if x > 0.5 else math.acos(x)


def _polar_speed_horizontal(r: float, one_minus_r: float) -> float:
    # r^2 = cos(2 theta)  ->  d theta/dr = -r / sin(2 theta)
    one_minus_r2 = one_minus_r * (1.0 + r)
    two_theta = _acos_near_one(r * r, one_minus_r2)
    dtheta_dr = -r / math.sin(two_theta)
    return math.sqrt(1.0 + r * r * dtheta_dr * dtheta_dr)


def _polar_speed_diagonal(r: float, one_minus_r: float) -> float:
    # r^2 = sin(2 theta)  ->  d theta/dr = r / cos(2 theta)
    one_minus_r2 = one_minus_r * (1.0 + r)
    two_theta = 0.5 * math.pi - _acos_near_one(r * r, one_minus_r2)
    dtheta_dr = r / math.cos(two_theta)
    return math.sqrt(1.0 + r * r * dtheta_dr * dtheta_dr)


def arclength_polar_direct(v: LemniscateVariant, r: float) -> float:
    """Arc length from the polar form ``sqrt(1 + r**2 (dtheta/dr)**2)``.

    The angle is recovered from the polar equation and differentiated
    implicitly at every node; nothing here shares code with the leaf inverses.
    """
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"polar arc length needs 0 <= r < 1, got {r!r}")
    gap = 1.0 - r
    if v is LemniscateVariant.HORIZONTAL:

        def speed(t, tc):
            # 1 - t: right half measures from t = 1, left half from t = r
            return _polar_speed_horizontal(t, tc if tc > 0 else gap + tc)

        return integrate(speed, r, 1.0, _POLAR_QUAD, complement=True).value
    if r == 0.0:
        return 0.0

    def speed(t, tc):
        return _polar_speed_diagonal(t, gap + tc if tc > 0 else 1.0 + tc)

    return integrate(speed, 0.0, r, _POLAR_QUAD, complement=True).value


def auxiliary_factor(s: float, c: float) -> float:
    """Second factor of the rearranged horizontal-frame quartic relation."""
    s2, c2 = s * s, c * c
    return (
        2 * s2 + 6 * s2**2 + 4 * s2**3
        - c2 * (1 + 3 * s2 + 4 * s2**2)
        + c2**2 * (1 + s2)
    )


def _frame_sides(s: float, c: float) -> tuple[float, float]:
    oc = c * math.sqrt(max(1.0 - c * c, 0.0)) / (SQRT2 * s)
    cp = c * s / math.sqrt(1.0 + s * s)
    return oc, cp


def factorization_residual(s: float, c: float) -> float:
    """Difference between the substituted quartic and its factored form.

    Holds for any ``0 < c < 1``, ``s > 0``; it does not assume any relation
    between ``s`` and ``c``.
    """
    oc, cp = _frame_sides(s, c)
    lhs = (oc * oc + cp * cp) ** 2 - (oc * oc - cp * cp)
    pyth = -1 + s * s + c * c + s * s * c * c
    rhs = c * c * pyth * auxiliary_factor(s, c) / (4 * s**4 * (1 + s * s) ** 2)
    return lhs - rhs


def _interior(l: float) -> float:
    l = _principal(l)
    if l == 0.0 or l == 0.5 * pi_n(2):
        raise DegenerateFrameError(
            f"construction frame degenerates at l={l!r}: P or B coincides with a fixed "
            "point and a side length vanishes; need 0 < l < pi_2/2"
        )
    return l


def construction_frame_horizontal(l: float) -> ConstructionFrame:
    """Points O, A, B, C, P for the horizontal curve at phase ``0 < l < pi_2/2``.

    C is the foot of the perpendicular from P to the x-axis and B the
    intersection of ray OP with the tangent ``x = 1`` at A.
    """
    l = _interior(l)
    s = sleaf(2, l).value
    c = cleaf(2, l).value
    theta = theta_from_l_cleaf(l)
    O = ORIGIN
    A = PlanarPoint(1.0, 0.0)
    P = point_on_curve(LemniscateVariant.HORIZONTAL, l)
    C = PlanarPoint(P.x, 0.0)
    B = PlanarPoint(1.0, P.y / P.x)
    OP, OC, CP, AB, OB = P.norm, O.dist(C), C.dist(P), A.dist(B), B.norm
    oc_closed, cp_closed = _frame_sides(s, c)
    residuals = {
        "OP = |P|": OP - math.hypot(P.x, P.y),
        "OP = cleaf2": OP - c,
        "AB = sleaf2": AB - s,
        "angle OCP = 90": (O.x - C.x) * (P.x - C.x) + (O.y - C.y) * (P.y - C.y),
        "OC closed form": OC - oc_closed,
        "CP closed form": CP - cp_closed,
        "OC:OA = CP:AB": OC * AB - CP * 1.0,
        "OP:PC = OB:BA": OP * AB - CP * OB,
        "curve in OC, CP": (OC * OC + CP * CP) ** 2 - (OC * OC - CP * CP),
        "factorization": factorization_residual(s, c),
    }
    return ConstructionFrame(
        LemniscateVariant.HORIZONTAL, l, theta, O, A, B, C, P, OP, OC, CP, AB, residuals
    )


def diagonal_radicands(t: float) -> tuple[float, float]:
    """Outer radicands of the two root pairs for line ``y = -x + 2t``.

    The first, ``-1 - 4t**2 - sqrt(1 + 16t**2)``, is always negative (complex
    pair); the second, ``-1 - 4t**2 + sqrt(1 + 16t**2)``, gives the real roots.
    """
    inner = math.sqrt(1.0 + 16.0 * t * t)
    base = -1.0 - 4.0 * t * t
    return base - inner, base + inner


def _real_radicand(t: float) -> float:
    rad = diagonal_radicands(t)[1]
    if rad < 0.0:
        if rad < -_RADICAND_CLAMP:
            raise ValueError(f"line y = -x + 2t misses the curve for t={t!r}")
        rad = 0.0
    return rad


def intersect_diagonal_line(t: float) -> list[float]:
    """Real x-coordinates where ``y = -x + 2t`` meets ``(x^2+y^2)^2 = 2xy``, ascending.

    ``0 < t <= 1/sqrt(2)``; at the upper end the two roots coincide (tangency
    at the vertex).
    """
    t = float(t)
    if not 0.0 < t <= 1 / SQRT2 + 1e-15:
        raise ValueError(f"need 0 < t <= 1/sqrt(2), got {t!r}")
    complex_rad, _ = diagonal_radicands(t)
    if not complex_rad < 0.0:
        raise ArithmeticError("complex root pair has a nonnegative radicand")
    half_width = 0.5 * math.sqrt(_real_radicand(t))
    return [t - half_width, t + half_width]


def construction_frame_diagonal(l: float) -> ConstructionFrame:
    """Points O, A, B, C, P for the inclined curve at phase ``0 < l < pi_2/2``.

    C = (t, t) is the foot of the perpendicular from P onto ``y = x`` and B
    the intersection of ray OP with ``y = -x + sqrt(2)``.
    """
    l = _interior(l)
    s = sleaf(2, l).value
    c = cleaf(2, l).value
    theta = theta_from_l_sleaf(l)
    O = ORIGIN
    A = PlanarPoint(1 / SQRT2, 1 / SQRT2)
    P = point_on_curve(LemniscateVariant.DIAGONAL, l)
    t = 0.5 * (P.x + P.y)
    C = PlanarPoint(t, t)
    lam = SQRT2 / (P.x + P.y)
    B = PlanarPoint(lam * P.x, lam * P.y)
    OP, OC, CP, AB = P.norm, O.dist(C), C.dist(P), A.dist(B)
    rad = _real_radicand(t)
    x_hi = intersect_diagonal_line(t)[1]
    p_closed = PlanarPoint(t + 0.5 * math.sqrt(rad), t - 0.5 * math.sqrt(rad))
    cp_closed = math.sqrt(rad) / SQRT2
    residuals = {
        "OP = |P|": OP - math.hypot(P.x, P.y),
        "OP = sleaf2": OP - s,
        "AB = cleaf2": AB - c,
        "B on y = -x + sqrt2": B.y + B.x - SQRT2,
        "angle OCP = 90": (O.x - C.x) * (P.x - C.x) + (O.y - C.y) * (P.y - C.y),
        "angle OAB = 90": (O.x - A.x) * (B.x - A.x) + (O.y - A.y) * (B.y - A.y),
        "P.x closed form": P.x - p_closed.x,
        "P.y closed form": P.y - p_closed.y,
        "P.x larger root": P.x - x_hi,
        "CP closed form": CP - cp_closed,
        "OP^2 = CP^2 + OC^2": OP * OP - (CP * CP + OC * OC),
        "sleaf2^2 in t": s * s - (0.5 * rad + 2.0 * t * t),
        "sqrt2 t : 1 = CP : cleaf2": SQRT2 * t * c - cp_closed,
    }
    return ConstructionFrame(
        LemniscateVariant.DIAGONAL, l, theta, O, A, B, C, P, OP, OC, CP, AB, residuals
    )


def sample_phases(n_samples: int, lo: float = 0.0, hi: float | None = None) -> np.ndarray:
    """``n_samples`` evenly spaced phases on ``[lo, hi]`` (default the principal branch)."""
    hi = 0.5 * pi_n(2) if hi is None else hi
    return np.linspace(lo, hi, n_samples)
