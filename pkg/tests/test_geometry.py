import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import Polynomial

from lemnileaf import geometry as geo
from lemnileaf.geometry import (
    SQRT2,
    DegenerateFrameError,
    LemniscateVariant,
    PlanarPoint,
    arclength_from_radius,
    arclength_polar_direct,
    auxiliary_factor,
    construction_frame_diagonal,
    construction_frame_horizontal,
    diagonal_radicands,
    factorization_residual,
    focal_chords,
    focal_distances_direct,
    implicit_residual,
    intersect_diagonal_line,
    point_on_curve,
    polar_radius,
)
from lemnileaf.leaf_core import arcsleaf, cleaf, pi_n, sleaf
from lemnileaf.leaf_identities import BranchError

H, D = LemniscateVariant.HORIZONTAL, LemniscateVariant.DIAGONAL
HALF = pi_n(2) / 2
INTERIOR = np.linspace(0, HALF, 102)[1:-1]
variants = st.sampled_from([H, D])
phase = st.floats(0.0, HALF)


def test_implicit_residual_examples():
    assert implicit_residual(H, (0.0, 0.0)) == 0.0
    assert implicit_residual(H, (1.0, 0.0)) == 0.0
    assert implicit_residual(D, (1 / SQRT2, 1 / SQRT2)) == pytest.approx(0.0, abs=1e-15)
    assert implicit_residual(H, PlanarPoint(0.5, 0.5)) != 0.0


def test_diagonal_is_rotated_horizontal():
    # rotating by 45 degrees maps one implicit form onto the other
    c = s = 1 / SQRT2
    for x, y in [(0.3, 0.1), (0.6, -0.2), (1.0, 0.0)]:
        xr, yr = c * x - s * y, s * x + c * y
        assert implicit_residual(D, (xr, yr)) == pytest.approx(implicit_residual(H, (x, y)), abs=1e-15)


def test_polar_radius_examples():
    assert polar_radius(H, 0.0) == 1.0
    assert polar_radius(H, math.pi / 4) == pytest.approx(0.0, abs=1e-8)
    assert polar_radius(D, 0.12474) == pytest.approx(0.49689, abs=2e-5)


@pytest.mark.parametrize("v,theta", [(H, 0.8), (H, -1.0), (D, -0.1), (D, 1.7)])
def test_polar_radius_off_curve(v, theta):
    with pytest.raises(ValueError, match="theta"):
        polar_radius(v, theta)


def test_point_on_curve_examples():
    assert point_on_curve(H, 0.0) == (1.0, 0.0)
    p = point_on_curve(H, 0.5)
    assert p.x == pytest.approx(0.77715 * math.cos(0.46115), abs=5e-5)
    assert p.y == pytest.approx(0.77715 * math.sin(0.46115), abs=5e-5)
    q = point_on_curve(D, HALF)
    assert q.x == pytest.approx(1 / SQRT2, abs=1e-15)
    assert q.y == pytest.approx(1 / SQRT2, abs=1e-15)


@pytest.mark.parametrize("v", [H, D])
def test_curve_membership(v):
    for l in np.linspace(0, HALF, 200):
        assert abs(implicit_residual(v, point_on_curve(v, l))) < 1e-9


@pytest.mark.parametrize("v", [H, D])
def test_point_matches_polar_form(v):
    for l in INTERIOR[::7]:
        p = point_on_curve(v, l)
        theta = math.atan2(p.y, p.x)
        assert p.norm == pytest.approx(polar_radius(v, theta), abs=1e-12)


def test_point_off_branch():
    with pytest.raises(BranchError):
        point_on_curve(H, HALF + 0.1)


def test_foci():
    assert geo.foci(H) == (PlanarPoint(1 / SQRT2, 0.0), PlanarPoint(-1 / SQRT2, 0.0))
    assert geo.foci(D) == (PlanarPoint(0.5, 0.5), PlanarPoint(-0.5, -0.5))


def test_focal_chords_at_vertex():
    pf, pf2 = focal_chords(H, 0.0)
    assert pf == pytest.approx(1 - 1 / SQRT2, abs=1e-15)
    assert pf2 == pytest.approx(1 + 1 / SQRT2, abs=1e-15)
    assert pf * pf2 == pytest.approx(0.5, abs=1e-15)


@settings(max_examples=150, deadline=None)
@given(variants, phase)
def test_focal_product_and_direct_distances(v, l):
    pf, pf2 = focal_chords(v, l)
    d1, d2 = focal_distances_direct(v, l)
    assert pf >= 0 and pf2 >= 0
    assert abs(pf * pf2 - 0.5) < 1e-10
    assert abs(d1 * d2 - 0.5) < 1e-10
    assert abs(pf - d1) < 1e-10 and abs(pf2 - d2) < 1e-10


def test_printed_diagonal_far_focus_form_breaks_product():
    # with cos in both squared terms the far-focus distance is not a focal chord
    l = 0.5
    r = sleaf(2, l).value
    th = math.atan2(point_on_curve(D, l).y, point_on_curve(D, l).x)
    printed = math.sqrt((r * math.cos(th) + 0.5) ** 2 + (r * math.cos(th) + 0.5) ** 2)
    pf, pf2 = focal_chords(D, l)
    assert abs(pf * printed - 0.5) > 1e-3
    assert abs(pf * pf2 - 0.5) < 1e-12


def test_arclength_examples():
    assert arclength_from_radius(H, 1.0) == 0.0
    assert arclength_from_radius(H, 0.77715) == pytest.approx(0.5, abs=2e-5)
    assert arclength_from_radius(D, 0.84400) == pytest.approx(0.9, abs=2e-5)
    with pytest.raises(ValueError):
        arclength_from_radius(H, 1.5)


@settings(max_examples=100, deadline=None)
@given(variants, phase)
def test_arclength_round_trip(v, l):
    r = (cleaf if v is H else sleaf)(2, l).value
    assert abs(arclength_from_radius(v, r) - l) < 1e-8


def test_polar_direct_examples():
    assert arclength_polar_direct(H, 1 - 1e-9) == pytest.approx(0.0, abs=1e-4)
    assert arclength_polar_direct(H, 0.0) == pytest.approx(HALF, abs=1e-8)
    assert arclength_polar_direct(H, 0.5) == pytest.approx(arclength_from_radius(H, 0.5), abs=1e-8)
    assert arclength_polar_direct(D, 0.0) == 0.0
    with pytest.raises(ValueError):
        arclength_polar_direct(H, 1.0)


@settings(max_examples=60, deadline=None)
@given(variants, st.floats(0.0, 1 - 1e-12))
def test_polar_path_agrees(v, r):
    assert abs(arclength_polar_direct(v, r) - arclength_from_radius(v, r)) < 1e-8


def test_polar_direct_against_numeric_oracle():
    # independent oracle: chord length of a fine polyline along the polar curve
    theta = np.linspace(0.0, math.acos(0.5**2) / 2, 200001)
    r = np.sqrt(np.cos(2 * theta))
    x, y = r * np.cos(theta), r * np.sin(theta)
    poly = np.sum(np.hypot(np.diff(x), np.diff(y)))
    assert arclength_polar_direct(H, 0.5) == pytest.approx(poly, abs=1e-9)


def test_auxiliary_factor_nonzero_on_sample_grid():
    vals = [auxiliary_factor(sleaf(2, l).value, cleaf(2, l).value) for l in INTERIOR]
    assert min(abs(v) for v in vals) > 1e-6


def test_auxiliary_factor_has_a_root_on_the_curve():
    # on the curve the factor reduces to 2 s^2 (2 s^4 + 5 s^2 - 1)
    s_root = math.sqrt((math.sqrt(33) - 5) / 4)
    l_root = arcsleaf(2, s_root)
    assert l_root == pytest.approx(0.432957, abs=1e-6)
    s, c = sleaf(2, l_root).value, cleaf(2, l_root).value
    assert abs(auxiliary_factor(s, c)) < 1e-12
    left = auxiliary_factor(sleaf(2, l_root - 0.01).value, cleaf(2, l_root - 0.01).value)
    right = auxiliary_factor(sleaf(2, l_root + 0.01).value, cleaf(2, l_root + 0.01).value)
    assert left * right < 0


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 2.0), st.floats(0.05, 0.95))
def test_factorization_holds_off_curve(s, c):
    # the factored form is an algebraic rearrangement, valid for any (s, c)
    assert abs(factorization_residual(s, c)) < 1e-11


def test_frame_horizontal_examples():
    f = construction_frame_horizontal(0.5)
    assert f.A == (1.0, 0.0) and f.O == (0.0, 0.0)
    assert f.B.x == 1.0
    assert math.floor(f.B.y * 1e5) / 1e5 == 0.49689
    assert math.floor(f.OP * 1e5) / 1e5 == 0.77715
    assert f.C.y == 0.0 and f.C.x == f.P.x
    g = construction_frame_horizontal(1.2)
    assert abs(g.residuals["curve in OC, CP"]) < 1e-9
    assert abs(g.residuals["OC closed form"]) < 1e-9 and abs(g.residuals["CP closed form"]) < 1e-9
    assert g.theta == pytest.approx(math.atan(sleaf(2, 1.2).value), abs=1e-15)


def test_frame_horizontal_direct_coordinates():
    l = 1.2
    r, th = cleaf(2, l).value, math.atan(sleaf(2, l).value)
    f = construction_frame_horizontal(l)
    assert f.OC == pytest.approx(r * math.cos(th), abs=1e-12)
    assert f.CP == pytest.approx(r * math.sin(th), abs=1e-12)
    assert f.AB == pytest.approx(math.tan(th), abs=1e-12)


def test_frame_diagonal_examples():
    f = construction_frame_diagonal(0.5)
    assert f.A == pytest.approx((1 / SQRT2, 1 / SQRT2), abs=1e-16)
    assert math.floor(f.OP * 1e5) / 1e5 == 0.49689
    assert math.floor(f.AB * 1e5) / 1e5 == 0.77715
    assert f.C.x == f.C.y
    assert f.B.x + f.B.y == pytest.approx(SQRT2, abs=1e-15)
    g = construction_frame_diagonal(0.9)
    assert abs(g.residuals["sleaf2^2 in t"]) < 1e-9


def test_frame_diagonal_near_vertex():
    f = construction_frame_diagonal(HALF - 1e-6)
    assert f.CP < 1e-5
    assert f.C.x == pytest.approx(1 / SQRT2, abs=1e-6)
    assert f.max_residual < 1e-9


@pytest.mark.parametrize("build", [construction_frame_horizontal, construction_frame_diagonal])
def test_frames_on_interior_grid(build):
    worst = max(build(l).max_residual for l in INTERIOR)
    assert worst < 1e-9


@pytest.mark.parametrize("build", [construction_frame_horizontal, construction_frame_diagonal])
@pytest.mark.parametrize("l", [0.0, HALF])
def test_degenerate_frames_rejected(build, l):
    with pytest.raises(DegenerateFrameError):
        build(l)


def test_frame_interface():
    f = construction_frame_horizontal(0.7)
    assert set(f.points) == {"O", "A", "B", "C", "P"}
    assert ("O", "B") in f.segments
    assert f.OP >= 0 and f.OC >= 0 and f.CP >= 0 and f.AB >= 0
    assert abs(f.OP - math.hypot(f.P.x, f.P.y)) < 1e-12


def quartic(t):
    x = Polynomial([0.0, 1.0])
    y = 2 * t - x
    return (x * x + y * y) ** 2 - 2 * x * y


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 1 / SQRT2 - 1e-3))
def test_line_intersection_against_numpy_roots(t):
    roots = quartic(t).roots()
    real = np.sort(roots[np.abs(roots.imag) < 1e-9].real)
    cplx = roots[np.abs(roots.imag) >= 1e-9]
    assert len(real) == 2 and len(cplx) == 2
    got = intersect_diagonal_line(t)
    assert got == sorted(got)
    assert got == pytest.approx(list(real), abs=1e-9)
    neg, pos = diagonal_radicands(t)
    assert neg < 0 < pos
    # the complex pair sits at x = t +- i sqrt(-neg)/2
    assert np.sort(np.abs(cplx.imag)) == pytest.approx([math.sqrt(-neg) / 2] * 2, abs=1e-9)


def test_line_intersection_examples():
    lo, hi = intersect_diagonal_line(1 / SQRT2)
    assert lo == pytest.approx(1 / SQRT2, abs=1e-7) and hi == pytest.approx(1 / SQRT2, abs=1e-7)
    a, b = intersect_diagonal_line(0.3)
    assert (a + b) / 2 == pytest.approx(0.3, abs=1e-15)
    for x in (a, b):
        assert abs(implicit_residual(D, (x, -x + 0.6))) < 1e-9


@pytest.mark.parametrize("t", [0.0, -0.1, 0.8])
def test_line_intersection_domain(t):
    with pytest.raises(ValueError):
        intersect_diagonal_line(t)


def test_diagonal_frame_uses_larger_root():
    for l in INTERIOR[::9]:
        f = construction_frame_diagonal(l)
        t = f.C.x
        assert f.P.x == pytest.approx(max(intersect_diagonal_line(t)), abs=1e-12)
        assert f.P.x >= f.P.y
