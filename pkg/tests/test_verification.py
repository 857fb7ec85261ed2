import numpy as np
import pytest

from sweepdescent.errors import MissingConstants
from sweepdescent.functions import get_function, localize
from sweepdescent.regularization import regularize
from sweepdescent.sweeping import SweepingConfig
from sweepdescent.verification import (hoffmann_localization_check,
                                       membership_U_epsilon,
                                       probe_steepest_descent,
                                       run_verification_suite, verify_H1_H3,
                                       verify_moving_map_lipschitz)


def test_moving_map_norm_levels(norm):
    check_s, check_u, direct = verify_moving_map_lipschitz(
        norm, 1.0, 1.5, n_levels=3, slope_floor=1.0, resolution=0.01)
    assert check_s.passed and check_u.passed
    assert direct == pytest.approx(1.0, abs=0.02)


def test_moving_map_tube_levels(tube):
    check_s, check_u, direct = verify_moving_map_lipschitz(
        tube, 0.5, 1.5, n_levels=3, slope_floor=1.0, resolution=0.01)
    assert check_s.passed and check_u.passed
    assert direct == pytest.approx(1.0, abs=0.03)


def test_moving_map_refused_without_floor(norm):
    with pytest.raises(MissingConstants):
        verify_moving_map_lipschitz(norm, 1.0, 1.5, slope_floor=0.0)


def test_H1_H3_norm(norm):
    h1, h2, h3 = verify_H1_H3(norm, (1.0, 2.0), n_levels=3)
    assert h1.passed and h2.passed and h3.passed
    assert h2.details["slope_floor"] == pytest.approx(1.0, abs=1e-2)
    # complements of balls are prox-regular at the ball radius
    assert h3.details["r_hats"][0] == pytest.approx(1.0, rel=0.05)


def test_H1_H3_gauge_degenerates(gauge):
    _, _, h3 = verify_H1_H3(gauge, (0.9, 1.1), n_levels=5)
    assert h3.passed is False
    assert min(h3.details["r_hats"]) < 0.06


def test_H1_H3_localized_regularized(tube):
    # the ball-localized tube regularized at 0.2 satisfies all three
    h = localize(tube, [1.5, 0.0], 0.4)
    he = regularize(h, 0.2)
    h1, h2, h3 = verify_H1_H3(he, he.default_window, n_levels=3)
    assert h1.passed and h2.passed and h3.passed
    assert h3.margin >= 0.18


def test_membership_U_epsilon_examples(norm, tube):
    assert membership_U_epsilon(norm, 0.5, [2.0, 0.0])
    assert not membership_U_epsilon(norm, 0.5, [0.1, 0.0])
    assert membership_U_epsilon(tube, 0.25, [2.5, 0.0])
    assert not membership_U_epsilon(tube, 0.25, [5.0, 5.0])


def test_probe_steepest_descent_norm(norm):
    freg = regularize(norm, 0.25)
    cfg = SweepingConfig(alpha2=1.5, horizon=0.4, steps=80)
    probe = probe_steepest_descent(freg, 20, cfg, window=(0.8, 1.5), seed=0)
    assert probe.details["fraction"] >= 0.95


def test_hoffmann_norm_example(norm):
    # center inside the level set makes the scaling factor exactly one
    check = hoffmann_localization_check(norm, [0.5, 0.0], 1.0, [1.2, 0.0], 0.8)
    assert check.passed
    assert check.details["factor"] == pytest.approx(1.0)
    assert check.details["lhs"] == pytest.approx(0.4, abs=1e-9)


def test_hoffmann_tube_example(tube):
    check = hoffmann_localization_check(tube, [1.5, 0.0], 0.4, [1.8, 0.0], 0.6)
    assert check.passed


def test_hoffmann_skipped_outside_regime(norm):
    # denominator delta - d(center, [f <= beta]) <= 0: check must be skipped
    check = hoffmann_localization_check(norm, [3.0, 0.0], 0.5, [3.2, 0.0], 1.0)
    assert check.passed is None
    assert "reason" in check.details


def test_report_determinism_and_requires(norm):
    rep1 = run_verification_suite(norm, eps=0.25, window=(0.5, 1.5), seed=3,
                                  n_points=40, probe_starts=5)
    rep2 = run_verification_suite(norm, eps=0.25, window=(0.5, 1.5), seed=3,
                                  n_points=40, probe_starts=5)
    assert rep1.to_json_text() == rep2.to_json_text()
    rep1.require("h2-slope-floor", "h3-complement-prox-radius")
    with pytest.raises(MissingConstants):
        rep1.require("nonexistent-check")
    probe = rep1.get("steepest-descent-probe")
    assert probe.details["fraction"] >= 0.9


def test_report_seed_changes_payload(norm):
    rep1 = run_verification_suite(norm, window=(0.5, 1.5), seed=1)
    rep2 = run_verification_suite(norm, window=(0.5, 1.5), seed=2)
    assert rep1.to_json_text() != rep2.to_json_text()


def test_suite_refuses_consumers_after_failed_prereq(gauge):
    # window straddling the degenerate level: the probe must be skipped
    rep = run_verification_suite(gauge, eps=None, window=(0.9, 1.1), seed=0)
    assert rep.get("h3-complement-prox-radius").passed is False
    with pytest.raises(MissingConstants):
        rep.require("h3-complement-prox-radius")


def test_full_suite_tube_regularized(tube):
    rep = run_verification_suite(tube, eps=0.25, window=(0.3, 1.7), seed=0,
                                 n_points=60, probe_starts=10)
    assert rep.passed_all(), rep.failed_names()
    assert rep.constants["slope_floor"] >= 0.99
    assert rep.constants["prox_radius"] >= 0.9 * 0.25
    assert rep.get("semigroup-identity").passed
    assert rep.get("dilation-prox-lower-bound").passed
