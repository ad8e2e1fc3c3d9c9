"""Residual sweeps over the identities and the curve geometry.

Each check samples phases at the midpoints of ``samples`` equal cells of its
domain (so boundaries and finite-difference stencils stay inside) and
reports the largest absolute residual it saw.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from . import geometry as geo
from . import leaf_identities as ids
from .leaf_core import LeafKind, cleaf, leaf, ode_trajectory, pi_n, sleaf
from .leaf_identities import IdentityReport

H = geo.LemniscateVariant.HORIZONTAL
D = geo.LemniscateVariant.DIAGONAL


def midpoints(lo: float, hi: float, samples: int) -> np.ndarray:
    return lo + (np.arange(samples) + 0.5) * (hi - lo) / samples


def sweep(name: str, fn: Callable[[float], float | Iterable[float]], lo: float, hi: float,
          samples: int) -> IdentityReport:
    worst = 0.0
    for l in midpoints(lo, hi, samples):
        out = fn(float(l))
        vals = out if isinstance(out, (tuple, list)) else (out,)
        worst = max(worst, max(abs(v) for v in vals))
    return IdentityReport(name, worst, samples, (lo, hi))


def _theta_slope(l: float) -> float:
    return ids.central_difference(ids.theta_from_l_cleaf, l) - cleaf(2, l).value


def _theta_bar_slope(l: float) -> float:
    return ids.central_difference(ids.theta_from_l_sleaf, l) - sleaf(2, l).value


def _focal_product(v):
    def fn(l):
        pf, pf2 = geo.focal_chords(v, l)
        d1, d2 = geo.focal_distances_direct(v, l)
        return pf * pf2 - 0.5, d1 * d2 - 0.5, pf - d1, pf2 - d2
    return fn


def _arc_round_trip(v):
    def fn(l):
        r = (cleaf if v is H else sleaf)(2, l).value
        return geo.arclength_from_radius(v, r) - l
    return fn


def _arc_paths(v):
    def fn(l):
        r = (cleaf if v is H else sleaf)(2, l).value
        if r >= 1.0:
            return 0.0
        return geo.arclength_polar_direct(v, r) - geo.arclength_from_radius(v, r)
    return fn


def _quartic_roots(t: float):
    out = []
    for x in geo.intersect_diagonal_line(t):
        out.append(geo.implicit_residual(D, (x, -x + 2 * t)))
    return out


def _ode_check(n: int, kind: LeafKind, samples: int) -> tuple[IdentityReport, IdentityReport]:
    half = 0.5 * pi_n(n)
    traj = ode_trajectory(n, kind, half, 1e-4)
    idx = np.unique(np.linspace(1, len(traj.samples) - 2, samples).round().astype(int))
    agree = max(abs(leaf(n, kind, traj.samples[i][0]).value - traj.samples[i][1]) for i in idx)
    energy = max(abs(v * v + r ** (2 * n) - 1.0) for _, r, v in traj.samples)
    label = kind.value
    return (
        IdentityReport(f"{label}_{n} vs RK4", agree, len(idx), (0.0, half)),
        IdentityReport(f"RK4 energy {label}_{n}", energy, len(traj.samples), (0.0, half)),
    )


def run_all(samples: int = 100) -> list[IdentityReport]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    half = 0.5 * pi_n(2)
    reports = [
        sweep("s^2 + c^2 + s^2 c^2 = 1", ids.pythagorean_residual, 0.0, 4 * half, samples),
        sweep("cleaf2^2 = cos(2 theta)", ids.double_angle_relation_c, 0.0, half, samples),
        sweep("sleaf2^2 = sin(2 theta_bar)", ids.double_angle_relation_s, 0.0, half, samples),
        sweep("tan relations", ids.tan_relations, 0.0, half, samples),
        sweep("d theta/dl = cleaf2", _theta_slope, 0.0, half, samples),
        sweep("d theta_bar/dl = sleaf2", _theta_bar_slope, 0.0, half, samples),
        sweep("d/dl arctan(cleaf2) = -sleaf2", ids.arctan_cleaf_slope_residual, 0.0, half, samples),
        sweep("d/dl arctan(sleaf2) = cleaf2", ids.arctan_sleaf_slope_residual, 0.0, half, samples),
        sweep("int cleaf2 = arctan(sleaf2)",
              lambda l: ids.cumulative_leaf_integral(LeafKind.CLEAF, l) - ids.theta_from_l_cleaf(l),
              0.0, half, samples),
        sweep("int sleaf2 = pi/4 - arctan(cleaf2)",
              lambda l: ids.cumulative_leaf_integral(LeafKind.SLEAF, l) - ids.theta_from_l_sleaf(l),
              0.0, half, samples),
    ]
    for v in (H, D):
        reports += [
            sweep(f"{v.value}: point on curve",
                  lambda l, v=v: geo.implicit_residual(v, geo.point_on_curve(v, l)), 0.0, half, samples),
            sweep(f"{v.value}: focal product", _focal_product(v), 0.0, half, samples),
            sweep(f"{v.value}: arc length round trip", _arc_round_trip(v), 0.0, half, samples),
            sweep(f"{v.value}: polar arc length", _arc_paths(v), 0.0, half, samples),
        ]
    reports += [
        sweep("horizontal construction frame",
              lambda l: geo.construction_frame_horizontal(l).max_residual, 0.0, half, samples),
        sweep("diagonal construction frame",
              lambda l: geo.construction_frame_diagonal(l).max_residual, 0.0, half, samples),
        sweep("line y = -x + 2t roots on curve", _quartic_roots, 0.0, 1 / math.sqrt(2), samples),
    ]
    for kind in (LeafKind.CLEAF, LeafKind.SLEAF):
        reports += _ode_check(2, kind, samples)
    return reports
