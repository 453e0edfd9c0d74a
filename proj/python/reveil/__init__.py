"""Reversible de-identification of image sequences.

Images cross the boundary as ``numpy.uint8`` arrays of shape ``(height, width, 3)``
in RGB order, top row first.
"""

from ._reveil import (
    CameraIntrinsics,
    ReveilError,
    SkeletonPose,
    __version__,
    bounding_rect,
    box_blur,
    combine_channel,
    crc32,
    decode_bmp,
    deidentify_frame,
    embed,
    encode_bmp,
    extract,
    joint_names,
    parse_pose,
    pixelize,
    project,
    psnr,
    recover_carrier_channel,
    recover_secret_channel,
    reidentify_frame,
    render_avatar,
    serialize_pose,
    synth_frame,
    synth_pose,
)

__all__ = [
    "CameraIntrinsics",
    "ReveilError",
    "SkeletonPose",
    "__version__",
    "bounding_rect",
    "box_blur",
    "combine_channel",
    "crc32",
    "decode_bmp",
    "deidentify_frame",
    "embed",
    "encode_bmp",
    "extract",
    "joint_names",
    "parse_pose",
    "pixelize",
    "project",
    "psnr",
    "recover_carrier_channel",
    "recover_secret_channel",
    "reidentify_frame",
    "render_avatar",
    "serialize_pose",
    "synth_frame",
    "synth_pose",
]
