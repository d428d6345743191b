"""Tests for the PID primitive, heading and cascade controllers and thrust mixing"""

import math

import pytest

from usv_agent.control.controllers import (
    action_to_thrust,
    cascade_position_control,
    heading_control,
    mix_thrust,
)
from usv_agent.control.pid import pid_reset, pid_step
from usv_agent.errors import InputDomainError
from usv_agent.models.agent_models import DiscreteAction
from usv_agent.models.control_models import CascadeState, ControllerGains, PIDGains, PIDState
from usv_agent.models.vessel_models import Pose2D


@pytest.fixture
def gains():
    return ControllerGains()


@pytest.fixture
def cascade_state(gains):
    return CascadeState(outer=PIDState(gains=gains.outer), inner=PIDState(gains=gains.inner))


class TestPID:
    """PID update rule"""

    def test_zero_error_zero_output(self):
        output, _ = pid_step(pid_reset(PIDGains(kp=1.0, ki=1.0, kd=1.0)), 0.0, 0.1)
        assert output == 0.0

    def test_proportional_arithmetic(self):
        output, _ = pid_step(PIDState(gains=PIDGains(kp=2.0, out_limit=5.0)), 0.5, 0.1)
        assert output == pytest.approx(1.0)

    def test_integral_pinned_at_limit(self):
        state = PIDState(gains=PIDGains(ki=1.0, i_limit=5.0, out_limit=10.0))
        for _ in range(100):
            output, state = pid_step(state, 1.0, 0.1)
        assert state.integral == pytest.approx(5.0)
        assert output == pytest.approx(5.0)

    def test_no_derivative_kick_on_first_step(self):
        output, state = pid_step(PIDState(gains=PIDGains(kd=1.0)), 0.5, 0.1)
        assert output == 0.0
        output, _ = pid_step(state, 0.6, 0.1)
        assert output == pytest.approx(1.0)

    def test_zero_gains_output_zero(self):
        state = PIDState(gains=PIDGains())
        for error in (3.0, -7.5, 0.1, 100.0):
            output, state = pid_step(state, error, 0.1)
            assert output == 0.0

    def test_output_clamped(self):
        output, _ = pid_step(PIDState(gains=PIDGains(kp=10.0, out_limit=1.0)), 5.0, 0.1)
        assert output == 1.0

    def test_non_finite_error_rejected(self):
        with pytest.raises(InputDomainError):
            pid_step(PIDState(), float("nan"), 0.1)

    def test_state_is_explicit(self):
        """Same state and inputs give the same result"""
        state = PIDState(gains=PIDGains(kp=0.5, ki=0.2, kd=0.1))
        assert pid_step(state, 0.3, 0.1) == pid_step(state, 0.3, 0.1)


class TestHeadingControl:
    """Heading loop on the wrapped error"""

    def test_on_heading_zero_effort(self, gains):
        effort, _ = heading_control(0.7, 0.7, PIDState(gains=gains.heading), 0.1)
        assert effort == 0.0

    def test_short_arc_across_seam(self, gains):
        effort, state = heading_control(0.99 * math.pi, -0.99 * math.pi, PIDState(gains=gains.heading), 0.1)
        assert state.prev_error == pytest.approx(0.02 * math.pi)
        assert 0.0 < effort < 0.1

    @pytest.mark.parametrize("reference", [-2.0, -0.3, 0.4, 2.5])
    def test_effort_sign_follows_error(self, reference):
        state = PIDState(gains=PIDGains(kp=0.8))
        effort, _ = heading_control(0.0, reference, state, 0.1)
        assert math.copysign(1.0, effort) == math.copysign(1.0, reference)
        assert -1.0 <= effort <= 1.0


class TestCascade:
    """Position -> speed -> surge effort cascade"""

    def test_at_target_at_rest(self, cascade_state):
        effort, _ = cascade_position_control(Pose2D(x=3.0, y=4.0), (3.0, 4.0), 0.0, cascade_state, 0.1)
        assert effort == 0.0

    def test_outer_setpoint_capped_at_v_max(self, gains):
        setpoint, _ = pid_step(PIDState(gains=gains.outer), 100.0, 0.1)
        assert setpoint == gains.v_max

    @pytest.mark.parametrize("target, sign", [((50.0, 0.0), 1.0), ((-50.0, 0.0), -1.0)])
    def test_far_target_saturates_effort(self, cascade_state, target, sign):
        effort, _ = cascade_position_control(Pose2D(), target, 0.0, cascade_state, 0.1)
        assert effort == sign * 1.0


class TestMixing:
    """Differential thrust mixing"""

    @pytest.mark.parametrize("surge, turn, expected", [
        (0.5, 0.0, (0.5, 0.5)),
        (0.0, 0.5, (-0.5, 0.5)),
        (1.0, 1.0, (0.0, 1.0)),
    ])
    def test_mix(self, surge, turn, expected):
        cmd = mix_thrust(surge, turn)
        assert (cmd.left, cmd.right) == pytest.approx(expected)

    def test_non_finite_rejected(self):
        with pytest.raises(InputDomainError):
            mix_thrust(float("inf"), 0.0)

    @pytest.mark.parametrize("action, expected", [
        (DiscreteAction.GO_STRAIGHT, (0.5, 0.5)),
        (DiscreteAction.TURN_LEFT, (0.0, 1.0)),
        (DiscreteAction.TURN_RIGHT, (1.0, 0.0)),
    ])
    def test_action_thrust_pairs(self, action, expected):
        cmd = action_to_thrust(action)
        assert (cmd.left, cmd.right) == expected
