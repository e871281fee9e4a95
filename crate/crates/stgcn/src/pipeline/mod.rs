//! Data pipeline: pose-estimation JSON in, fixed-shape clip tensors out.
//!
//! The stages mirror the preprocessing contract of the training recipe:
//! parse per-frame keypoints, keep at most two people per frame, pad or
//! trim every clip to a fixed duration, gate on joint recognition quality,
//! normalize pixel coordinates, and serialize tensors plus a dataset
//! manifest.

mod clip;
mod manifest;
mod openpose;
mod tensor_io;

pub use clip::{
    assemble_clip, joint_recognition_rate, normalize_coordinates, pad_or_trim, quality_filter,
    QualityVerdict, RejectReason, SkeletonClip, CLIP_CHANNELS, CLIP_PERSONS, DEFAULT_CLIP_LEN,
    DEFAULT_IMAGE_HEIGHT, DEFAULT_IMAGE_WIDTH, DEFAULT_MAX_PERSONS, DEFAULT_RECOGNITION_THRESHOLD,
};
pub use manifest::{split_dataset, DatasetManifest, ManifestEntry, Split};
pub use openpose::{parse_openpose_clip, parse_openpose_frame, Keypoint, PersonPose, SkeletonFrame};
pub use tensor_io::{export_tensor, import_tensor};
