"""Tri-planar projection of object clouds into 3-channel occupancy images"""

import numpy as np

from usv_agent.models.perception_models import FlatImage, ImageParams, PointCloud

# (horizontal axis, vertical axis) per channel: X-Y, Y-Z, X-Z
CHANNEL_AXES = ((0, 1), (1, 2), (0, 2))


def flatten(cloud: PointCloud, params: ImageParams = ImageParams()) -> FlatImage:
    """Bin each point into the three projection grids.

    The window is fixed and centred on the object-frame origin; pixel index is
    floor((v + half_extent) / meters_per_pixel). Each channel is scaled by its
    own maximum count, so values lie in [0, 1].
    """
    channels = np.zeros((3, params.height, params.width))
    if cloud.is_empty:
        return FlatImage(channels=channels, meters_per_pixel=params.meters_per_pixel, empty=True)

    half = (params.half_extent_x, params.half_extent_y)
    limits = (params.width, params.height)
    for channel, (u_axis, v_axis) in enumerate(CHANNEL_AXES):
        cols = np.floor((cloud.points[:, u_axis] + half[0]) / params.meters_per_pixel).astype(int)
        rows = np.floor((cloud.points[:, v_axis] + half[1]) / params.meters_per_pixel).astype(int)
        inside = (cols >= 0) & (cols < limits[0]) & (rows >= 0) & (rows < limits[1])
        np.add.at(channels[channel], (rows[inside], cols[inside]), 1.0)
        peak = channels[channel].max()
        if peak > 0.0:
            channels[channel] /= peak

    empty = not channels.any()
    return FlatImage(channels=channels, meters_per_pixel=params.meters_per_pixel, empty=empty)


def image_difference(a: FlatImage, b: FlatImage) -> float:
    """Mean absolute pixel difference over pixels non-zero in either image"""
    if a.channels.shape != b.channels.shape:
        raise ValueError(f"image shapes differ: {a.channels.shape} vs {b.channels.shape}")
    union = (a.channels > 0.0) | (b.channels > 0.0)
    if not union.any():
        return 0.0
    return float(np.abs(a.channels - b.channels)[union].mean())
