from usv_agent.estimation.fusion import PoseEstimator, fuse_heading, fuse_position

__all__ = ["fuse_position", "fuse_heading", "PoseEstimator"]
