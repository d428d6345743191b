"""USV agent utilities package"""

from usv_agent.utils.logging_config import setup_logging
from usv_agent.utils.geometry import wrap_angle, angle_diff, wrap_angles

__all__ = ["setup_logging", "wrap_angle", "angle_diff", "wrap_angles"]
