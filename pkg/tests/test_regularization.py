import numpy as np
import pytest

from sweepdescent.errors import DegenerateDirection, OutOfReach
from sweepdescent.functions import get_function, localize, slope
from sweepdescent.regularization import (base_point, complement_projection,
                                         eval_regularized, prox_radius_estimate,
                                         regularize, semigroup_check,
                                         slope_inequality_check)
from sweepdescent.rng import split_rng


def test_regularize_norm_values(norm):
    freg = regularize(norm, 0.5)
    assert freg.eval([2.0, 0.0]) == pytest.approx(1.5, abs=1e-9)
    assert freg.eval([0.25, 0.0]) == 0.0


def test_regularize_tube_axis(tube):
    freg = regularize(tube, 0.5)
    # cross-check: min of the base over the half-radius disk around (3, 0)
    rng = split_rng(2, "grid")
    w = rng.uniform(-0.5, 0.5, size=(200000, 2))
    w = w[np.linalg.norm(w, axis=1) <= 0.5]
    brute = np.min(np.asarray(tube.eval(np.array([3.0, 0.0]) - w)))
    assert freg.eval([3.0, 0.0]) == pytest.approx(1.5, abs=1e-9)
    assert brute == pytest.approx(1.5, abs=2e-3)


def test_regularize_gauge_top(gauge):
    freg = regularize(gauge, 0.25)
    # (0, 2) is the nearest boundary point of the 4/3-level set
    assert freg.eval([0.0, 2.25]) == pytest.approx(4.0 / 3.0, abs=1e-9)


def test_eval_regularized_outside_domain(tube):
    freg = regularize(tube, 0.25)
    assert eval_regularized(freg, [4.5, 0.0]) == np.inf


def test_eval_regularized_bottom_level(norm):
    freg = regularize(norm, 0.5)
    assert eval_regularized(freg, [0.4, 0.1]) == 0.0


def test_sublevel_is_dilation(tube):
    freg = regularize(tube, 0.25)
    rng = split_rng(3, "dilation-id")
    pts = rng.uniform([-2, -2], [5, 2], size=(300, 2))
    for alpha in (0.4, 1.0, 1.6):
        base_d = np.asarray(tube.sublevel(alpha).distance(pts))
        reg_d = np.asarray(freg.sublevel(alpha).distance(pts))
        assert np.max(np.abs(reg_d - np.maximum(base_d - 0.25, 0.0))) < 1e-9


def test_pointwise_below_base(gallery):
    rng = split_rng(4, "below")
    pts = rng.uniform([-1.5, -1.5], [3.5, 2.5], size=(200, 2))
    for f in gallery.values():
        freg = regularize(f, 0.25)
        fb = np.asarray(f.eval(pts))
        fr = np.asarray(freg.eval(pts))
        assert np.all(fr <= fb + 1e-9)


def test_base_point_examples(norm, tube):
    fr = regularize(norm, 0.5)
    assert np.allclose(base_point(fr, [2.0, 0.0]), [1.5, 0.0], atol=1e-8)
    assert np.allclose(base_point(fr, [1.2, 0.0]), [0.7, 0.0], atol=1e-8)
    ft = regularize(tube, 0.5)
    assert np.allclose(base_point(ft, [3.0, 0.0]), [2.5, 0.0], atol=1e-8)


def test_base_point_consistency(gallery):
    rng = split_rng(5, "base-pt")
    for f in gallery.values():
        freg = regularize(f, 0.25)
        pts = rng.uniform([-1.0, -1.0], [2.5, 2.0], size=(150, 2))
        vals = np.asarray(freg.eval(pts))
        keep = np.isfinite(vals) & (vals > f.inf_value + 1e-6)
        z = freg.base.level_project(vals[keep], pts[keep])
        assert np.max(np.abs(np.asarray(f.eval(z)) - vals[keep])) <= 1e-6
        assert np.max(np.linalg.norm(pts[keep] - z, axis=1)) <= 0.25 + 1e-6


def test_base_point_bottom_flagged(norm):
    fr = regularize(norm, 0.5)
    with pytest.warns(UserWarning):
        z = base_point(fr, [0.2, 0.0])
    assert np.allclose(z, [0.0, 0.0], atol=1e-9)


def test_semigroup_examples(norm, tube):
    assert semigroup_check(norm, 0.25, 0.25, [2.0, 0.0])
    assert semigroup_check(norm, 0.25, 0.25, [0.3, 0.0])
    assert semigroup_check(tube, 0.1, 0.4, [3.0, 0.0])


def test_semigroup_batch(gallery):
    rng = split_rng(6, "semigroup")
    pts = rng.uniform([-1.0, -1.0], [3.0, 2.0], size=(60, 2))
    for f in gallery.values():
        for x in pts:
            assert semigroup_check(f, 0.1, 0.15, x)


def test_slope_inequality_examples(norm, tube, gauge):
    assert slope_inequality_check(norm, 0.5, [2.0, 0.0])
    assert slope_inequality_check(tube, 0.25, [2.5, 0.0])
    assert slope_inequality_check(gauge, 0.25, [0.0, 2.25])


def test_complement_projection_radial(norm):
    fr = regularize(norm, 0.5)
    assert np.allclose(complement_projection(fr, 1.0, [1.2, 0.0]), [1.5, 0.0])
    assert np.allclose(complement_projection(fr, 1.0, [0.0, 1.4]), [0.0, 1.5])


def test_complement_projection_tube(tube):
    ft = regularize(tube, 0.5)
    assert np.allclose(complement_projection(ft, 1.0, [2.4, 0.0]), [2.5, 0.0],
                       atol=1e-12)


def test_complement_projection_identity_outside(norm):
    fr = regularize(norm, 0.5)
    # already beyond the dilated interior: projection returns the point
    assert np.allclose(complement_projection(fr, 1.0, [2.0, 0.0]), [2.0, 0.0])


def test_complement_projection_out_of_reach(norm):
    fr = regularize(norm, 0.5)
    with pytest.raises((OutOfReach, DegenerateDirection)):
        complement_projection(fr, 1.0, [0.5, 0.0])


def test_prox_radius_gauge_levels(gauge):
    for level, expect in [(1.25, 0.25), (1.5, 0.5), (0.5, 0.5), (0.75, 0.75)]:
        est = prox_radius_estimate(gauge, level, seed=0)
        assert est.r_hat == pytest.approx(expect, rel=0.1)
        assert est.sample_count > 20


def test_prox_radius_norm_circle(norm):
    est = prox_radius_estimate(norm, 2.0, seed=0)
    assert est.r_hat == pytest.approx(2.0, rel=0.05)


def test_prox_radius_dilated_lower_bound(tube):
    freg = regularize(tube, 0.25)
    est = prox_radius_estimate(freg, 1.0, seed=0)
    assert est.r_hat >= 0.9 * 0.25
    # capsule caps dilate to radius 1 + eps
    assert est.r_hat == pytest.approx(1.25, rel=0.05)


def test_prox_radius_localized_regularized_sharp(tube):
    # dilated lens corners have curvature radius exactly eps
    h = localize(tube, [1.5, 0.0], 0.4)
    he = regularize(h, 0.2)
    est = prox_radius_estimate(he, 0.5, seed=0)
    assert est.r_hat >= 0.9 * 0.2
    assert est.r_hat == pytest.approx(0.2, rel=0.05)


def test_monotone_in_epsilon(gallery):
    rng = split_rng(8, "monotone")
    pts = rng.uniform([-1.0, -1.0], [3.0, 2.0], size=(100, 2))
    for f in gallery.values():
        vals = [np.asarray(regularize(f, e).eval(pts)) for e in (0.1, 0.25, 0.5)]
        assert np.all(vals[1] <= vals[0] + 1e-9)
        assert np.all(vals[2] <= vals[1] + 1e-9)


def test_eval_matches_polar_grid_oracle(gallery):
    from sweepdescent.verification import _check_eval_consistency
    windows = {"norm": (0.5, 1.5), "tube": (0.3, 1.7), "gauge": (1.2, 1.8)}
    for name, f in gallery.items():
        check = _check_eval_consistency(regularize(f, 0.25), windows[name],
                                        100, seed=9)
        assert check.passed, (name, check.details)
        assert check.details["n_points"] >= 100


def test_regularized_slope_at_cap_angle(tube):
    # on the dilated cap at angle t the slope is 1 / cos(t)
    freg = regularize(tube, 0.25)
    angle = np.pi / 6
    x = np.array([1.5 + 1.25 * np.cos(angle), 1.25 * np.sin(angle)])
    assert slope(freg, x).value == pytest.approx(1.0 / np.cos(angle), rel=1e-3)
