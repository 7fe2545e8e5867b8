import math

import numpy as np
import pytest

from ballmoduli import (BallConstructionError, Budget, DomainError,
                        SeparatingBall, Slice, construct_separating_ball,
                        f_eps_radius, norm, pairing, preset, slice_diameter)


class TestSliceDiameter:
    def test_euclidean_dual_slice_chord(self):
        alpha = 0.9365
        b = slice_diameter(preset("l2-2"), Slice.of((1.0, 0.0), alpha, "dual"),
                           Budget(resolution=5e-4))
        assert b.contains(2.0 * math.sqrt(1.0 - alpha * alpha), slack=1e-12)
        assert b.width <= 5e-3

    def test_square_dual_slice_in_own_norm(self):
        # X = l1, dual ball the square; the slice {g1 >= 1/2} spans the
        # full vertical edge range, diameter 2 in the sup norm
        b = slice_diameter(preset("l1-2d"), Slice.of((1.0, 0.0), 0.5, "dual"))
        assert b.contains(2.0, slack=1e-9)

    def test_empty_slice_convention(self):
        b = slice_diameter(preset("l2-2"), Slice.of((1.0, 0.0), 1.0))
        assert (b.lower, b.upper) == (0.0, 0.0)

    def test_monotone_in_threshold(self):
        space = preset("l2-2")
        b1 = slice_diameter(space, Slice.of((1.0, 0.0), 0.5))
        b2 = slice_diameter(space, Slice.of((1.0, 0.0), 0.8))
        assert b2.midpoint <= b1.midpoint + b1.width + b2.width

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            Slice.of((1.0, 0.0), 0.0)
        with pytest.raises(DomainError):
            slice_diameter(preset("l2-2"), Slice.of((2.0, 0.0), 0.5))


class TestFEpsRadius:
    def test_euclidean_upper_bound(self):
        b = f_eps_radius(preset("l2-2"), 1.0)
        # 1 - 2 delta(1/2) = sqrt(1 - 1/16) for the disk
        assert b.upper <= math.sqrt(1.0 - 1.0 / 16.0) + 1e-3
        assert b.lower <= b.upper

    def test_square_face_midpoints_never_witnessed(self):
        b = f_eps_radius(preset("l1-2d"), 0.5)
        assert b.lower >= 1.0 - 1e-6

    def test_large_eps_convention(self):
        b = f_eps_radius(preset("l2-2"), 2.0)
        assert (b.lower, b.upper) == (0.0, 0.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            f_eps_radius(preset("l2-2"), 0.0)


class TestSeparatingBall:
    def test_euclidean_instance_satisfies_postconditions(self):
        space = preset("l2-2")
        C = [(0.5, -0.2), (0.5, 0.2)]
        eps, M = 0.5, 1.0
        ball = construct_separating_ball(space, C, (1.0, 0.0), eps, M)
        assert isinstance(ball, SeparatingBall)
        center = np.asarray(ball.center.coords)
        for v in C:
            assert norm(space, np.asarray(v) - center) <= ball.radius + 1e-6
        assert pairing((1.0, 0.0), center) - ball.radius >= eps / 2.0 - 1e-6
        assert ball.radius <= ball.K + 1e-6

    def test_degenerate_single_point(self):
        ball = construct_separating_ball(
            preset("l2-2"), [(0.5, 0.0)], (1.0, 0.0), 0.5, 1.0)
        assert ball.radius > 0.0

    def test_flat_dual_ball_fails_structurally(self):
        with pytest.raises(BallConstructionError) as err:
            construct_separating_ball(
                preset("l1-2d"), [(0.5, -0.2), (0.5, 0.2)], (1.0, 0.0),
                0.5, 1.0)
        assert err.value.condition == "no-small-slice-witness"

    def test_metadata_consistency(self):
        ball = construct_separating_ball(
            preset("l2-2"), [(0.5, 0.0)], (1.0, 0.0), 0.5, 1.0)
        assert ball.eta == pytest.approx(1.0 - 2.0 * ball.k * (1.0 - ball.gamma))
        assert ball.lam == pytest.approx(ball.M1 / (1.0 - ball.eta))

    def test_rejects_bad_inputs(self):
        space = preset("l2-2")
        with pytest.raises(DomainError):  # C escapes the M-ball
            construct_separating_ball(space, [(2.0, 0.0)], (1.0, 0.0), 0.5, 1.0)
        with pytest.raises(DomainError):  # inf f over C below eps
            construct_separating_ball(space, [(0.1, 0.0)], (1.0, 0.0), 0.5, 1.0)
        with pytest.raises(DomainError):  # f not unit
            construct_separating_ball(space, [(0.5, 0.0)], (2.0, 0.0), 0.5, 1.0)
