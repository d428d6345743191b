"""Controller gains and explicit controller state records"""

from pydantic import BaseModel, ConfigDict, Field


class PIDGains(BaseModel):
    kp: float = Field(default=0.0, ge=0.0)
    ki: float = Field(default=0.0, ge=0.0)
    kd: float = Field(default=0.0, ge=0.0)
    i_limit: float = Field(default=1.0, gt=0.0)
    out_limit: float = Field(default=1.0, gt=0.0)


class PIDState(BaseModel):
    """Integrator and last error; first step has no derivative history"""
    model_config = ConfigDict(frozen=True)

    gains: PIDGains = Field(default_factory=PIDGains)
    integral: float = 0.0
    prev_error: float = 0.0
    initialized: bool = False


class CascadeState(BaseModel):
    """Outer position->speed loop and inner speed->thrust loop"""
    model_config = ConfigDict(frozen=True)

    outer: PIDState
    inner: PIDState


class ControllerGains(BaseModel):
    """Default gains, tuned by step response in the simulator"""
    heading: PIDGains = Field(default_factory=lambda: PIDGains(kp=1.2, ki=0.0, kd=0.3, i_limit=1.0, out_limit=1.0))
    outer: PIDGains = Field(default_factory=lambda: PIDGains(kp=0.5, ki=0.0, kd=0.0, i_limit=1.0, out_limit=2.0))
    inner: PIDGains = Field(default_factory=lambda: PIDGains(kp=1.0, ki=0.2, kd=0.0, i_limit=5.0, out_limit=1.0))
    circle_d: PIDGains = Field(default_factory=lambda: PIDGains(kp=0.3, ki=0.0, kd=0.0, i_limit=1.0, out_limit=1.0))
    circle_phi: PIDGains = Field(default_factory=lambda: PIDGains(kp=2.0, ki=0.0, kd=0.0, i_limit=1.0, out_limit=2.0))

    @property
    def v_max(self) -> float:
        return self.outer.out_limit


class ControlStates(BaseModel):
    """All loop states a behavior carries from tick to tick"""
    model_config = ConfigDict(frozen=True)

    heading: PIDState
    cascade: CascadeState
    circle_d: PIDState
    circle_phi: PIDState

    @classmethod
    def from_gains(cls, gains: ControllerGains) -> "ControlStates":
        return cls(
            heading=PIDState(gains=gains.heading),
            cascade=CascadeState(outer=PIDState(gains=gains.outer), inner=PIDState(gains=gains.inner)),
            circle_d=PIDState(gains=gains.circle_d),
            circle_phi=PIDState(gains=gains.circle_phi),
        )
