"""Exception hierarchy for the USV autonomy stack"""

from typing import Any, Optional


class UsvAgentError(Exception):
    """Base class for all errors raised by usv_agent"""

    exit_code = 1


class InputDomainError(UsvAgentError, ValueError):
    """Non-finite or out-of-domain input to a numerical operation"""


class ConfigError(UsvAgentError):
    """Invalid or unreadable configuration document"""

    exit_code = 2


class MissionFailure(UsvAgentError):
    """Mission ended without meeting its goal (timeout, collision, planner stop)"""

    exit_code = 3

    def __init__(self, message: str, result: Optional[Any] = None):
        super().__init__(message)
        self.result = result


class PlannerError(UsvAgentError):
    """No collision-free path found within the iteration budget"""

    exit_code = 4


class EnvironmentContractError(UsvAgentError):
    """Environment used outside its contract, e.g. stepped after done"""


class TrainingDataError(UsvAgentError):
    """Training set does not cover every class"""


class GeometryError(UsvAgentError, ValueError):
    """Geometric quantity is undefined for the given configuration"""
