//! Training-set skeleton statistics: the center of gravity and per-joint
//! mean distances that drive the distance-based partition strategies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NUM_JOINTS;
use crate::pipeline::SkeletonClip;

/// Aggregate geometry of a training set.
///
/// `cg` is the mean (x, y) position over every detected joint observation;
/// `r[i]` is the mean Euclidean distance from joint `i` to `cg`, averaged
/// over the frames where joint `i` was detected. Undetected joints are
/// stored as (0, 0, 0) in clips and never contribute to either statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonTemplate {
    pub cg: [f64; 2],
    pub r: [f64; NUM_JOINTS],
    pub mean_pos: [[f64; 2]; NUM_JOINTS],
}

impl SkeletonTemplate {
    /// A template with uniform geometry; every joint sits on the center of
    /// gravity. Useful as a neutral stand-in when no training data exists.
    pub fn degenerate() -> Self {
        SkeletonTemplate {
            cg: [0.0, 0.0],
            r: [0.0; NUM_JOINTS],
            mean_pos: [[0.0, 0.0]; NUM_JOINTS],
        }
    }

    /// Checks that every per-joint distance is finite.
    pub fn validate(&self) -> Result<()> {
        for (joint, value) in self.r.iter().enumerate() {
            if !value.is_finite() || *value < 0.0 {
                return Err(Error::Config(format!(
                    "template distance r[{joint}] is not a finite non-negative value: {value}"
                )));
            }
        }
        if !self.cg.iter().all(|v| v.is_finite()) {
            return Err(Error::Config("template center of gravity is not finite".into()));
        }
        Ok(())
    }
}

/// Computes template statistics from training clips.
///
/// Averages run over all detected joints (confidence > 0) of both person
/// slots across the un-padded source frames of every clip, accumulated in
/// double precision. A joint that is never detected anywhere has no
/// defined distance and is reported as a configuration error.
pub fn compute_template(training_clips: &[SkeletonClip]) -> Result<SkeletonTemplate> {
    let mut sum_x = 0.0f64;
    let mut sum_y = 0.0f64;
    let mut count = 0u64;

    for clip in training_clips {
        clip.for_each_source_detection(|_, x, y| {
            sum_x += x;
            sum_y += y;
            count += 1;
        });
    }
    if count == 0 {
        return Err(Error::Input(
            "cannot compute a template: no detected joints in the training clips".into(),
        ));
    }
    let cg = [sum_x / count as f64, sum_y / count as f64];

    let mut dist_sum = [0.0f64; NUM_JOINTS];
    let mut pos_sum = [[0.0f64; 2]; NUM_JOINTS];
    let mut joint_count = [0u64; NUM_JOINTS];
    for clip in training_clips {
        clip.for_each_source_detection(|joint, x, y| {
            let dx = x - cg[0];
            let dy = y - cg[1];
            dist_sum[joint] += (dx * dx + dy * dy).sqrt();
            pos_sum[joint][0] += x;
            pos_sum[joint][1] += y;
            joint_count[joint] += 1;
        });
    }

    let mut r = [0.0f64; NUM_JOINTS];
    let mut mean_pos = [[0.0f64; 2]; NUM_JOINTS];
    for joint in 0..NUM_JOINTS {
        if joint_count[joint] == 0 {
            return Err(Error::Config(format!(
                "joint {joint} was never detected in the training set; its template distance is undefined"
            )));
        }
        let n = joint_count[joint] as f64;
        r[joint] = dist_sum[joint] / n;
        mean_pos[joint] = [pos_sum[joint][0] / n, pos_sum[joint][1] / n];
    }

    Ok(SkeletonTemplate { cg, r, mean_pos })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::SkeletonClip;

    fn clip_from_joint_positions(positions: &[(usize, f32, f32)]) -> SkeletonClip {
        // One frame, one person; listed joints detected with c = 1.
        let mut clip = SkeletonClip::empty("t", 0, 1);
        for &(joint, x, y) in positions {
            clip.set_joint(0, 0, joint, x, y, 1.0);
        }
        clip
    }

    #[test]
    fn degenerate_point_skeleton_has_zero_distances() {
        let all = (0..NUM_JOINTS).map(|j| (j, 0.1f32, 0.2f32)).collect::<Vec<_>>();
        let t = compute_template(&[clip_from_joint_positions(&all)]).unwrap();
        assert!((t.cg[0] - 0.1).abs() < 1e-6);
        assert!((t.cg[1] - 0.2).abs() < 1e-6);
        for j in 0..NUM_JOINTS {
            assert!(t.r[j].abs() < 1e-6, "r[{j}] = {}", t.r[j]);
        }
    }

    #[test]
    fn symmetric_pair_averages_to_origin() {
        // Joints 0 and 1 at (-1, 0) and (1, 0); all others never detected.
        let clip = clip_from_joint_positions(&[(0, -1.0, 0.0), (1, 1.0, 0.0)]);
        let err = compute_template(&[clip.clone()]).unwrap_err();
        // Joints 2..17 are undetected, so the full template is undefined.
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("joint 2"));

        // With every joint detected somewhere, the symmetric pair statistics hold.
        let mut rest = (2..NUM_JOINTS)
            .map(|j| (j, 0.0f32, 0.0f32))
            .collect::<Vec<_>>();
        rest.push((0, -1.0, 0.0));
        rest.push((1, 1.0, 0.0));
        let t = compute_template(&[clip_from_joint_positions(&rest)]).unwrap();
        assert!(t.cg[0].abs() < 1e-9 && t.cg[1].abs() < 1e-9);
        assert!((t.r[0] - 1.0).abs() < 1e-9);
        assert!((t.r[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn undetected_joints_do_not_move_the_center() {
        let all = (0..NUM_JOINTS).map(|j| (j, 0.3f32, 0.4f32)).collect::<Vec<_>>();
        let clean = compute_template(&[clip_from_joint_positions(&all)]).unwrap();

        // Inject an extra clip whose joints are all (0, 0, 0): no detections.
        let outlier = SkeletonClip::empty("zeros", 0, 5);
        let with_outlier =
            compute_template(&[clip_from_joint_positions(&all), outlier]).unwrap();
        assert_eq!(clean.cg, with_outlier.cg);
        assert_eq!(clean.r, with_outlier.r);
    }

    #[test]
    fn no_detections_anywhere_is_an_input_error() {
        let err = compute_template(&[SkeletonClip::empty("z", 0, 3)]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
