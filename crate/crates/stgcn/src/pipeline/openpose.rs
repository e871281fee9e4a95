//! Parsing of OpenPose 2D keypoint JSON.
//!
//! A frame is `{"people": [{"pose_keypoints_2d": [x0,y0,c0, ..., x17,y17,c17]}]}`
//! and a clip file wraps a frame sequence as `{"frames": [frame, ...]}`.
//! An undetected joint is encoded as the (0, 0, 0) triple.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::NUM_JOINTS;

/// One detected joint: image coordinates plus detection confidence.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Keypoint {
    pub x: f64,
    pub y: f64,
    pub c: f64,
}

impl Keypoint {
    /// A joint counts as detected when its confidence is positive.
    pub fn is_detected(&self) -> bool {
        self.c > 0.0
    }
}

/// The 18 keypoints of one person in one frame.
pub type PersonPose = [Keypoint; NUM_JOINTS];

/// All people detected in a single video frame.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SkeletonFrame {
    pub persons: Vec<PersonPose>,
}

impl SkeletonFrame {
    /// Mean confidence over the 18 joints of one person.
    pub fn mean_confidence(person: &PersonPose) -> f64 {
        person.iter().map(|k| k.c).sum::<f64>() / NUM_JOINTS as f64
    }
}

#[derive(Deserialize)]
struct RawFrame {
    people: Vec<RawPerson>,
}

#[derive(Deserialize)]
struct RawPerson {
    pose_keypoints_2d: Vec<f64>,
}

#[derive(Deserialize)]
struct RawClip {
    frames: Vec<RawFrame>,
}

fn convert_frame(raw: RawFrame) -> Result<SkeletonFrame> {
    let mut persons = Vec::with_capacity(raw.people.len());
    for (person_index, person) in raw.people.into_iter().enumerate() {
        let values = person.pose_keypoints_2d;
        if values.len() != 3 * NUM_JOINTS {
            return Err(Error::Format(format!(
                "person {person_index}: pose_keypoints_2d holds {} numbers, expected {}",
                values.len(),
                3 * NUM_JOINTS
            )));
        }
        let mut pose: PersonPose = [Keypoint::default(); NUM_JOINTS];
        for (joint, triple) in values.chunks_exact(3).enumerate() {
            pose[joint] = Keypoint {
                x: triple[0],
                y: triple[1],
                c: triple[2],
            };
        }
        persons.push(pose);
    }
    Ok(SkeletonFrame { persons })
}

/// Parses a single frame of OpenPose output.
pub fn parse_openpose_frame(json_text: &str) -> Result<SkeletonFrame> {
    let raw: RawFrame = serde_json::from_str(json_text).map_err(|source| Error::Json {
        context: "openpose frame".into(),
        source,
    })?;
    convert_frame(raw)
}

/// Parses a per-clip export: a JSON object with a `frames` array.
pub fn parse_openpose_clip(json_text: &str) -> Result<Vec<SkeletonFrame>> {
    let raw: RawClip = serde_json::from_str(json_text).map_err(|source| Error::Json {
        context: "openpose clip".into(),
        source,
    })?;
    raw.frames.into_iter().map(convert_frame).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_person_all_zero_keypoints() {
        let zeros = vec!["0"; 54].join(",");
        let frame =
            parse_openpose_frame(&format!(r#"{{"people":[{{"pose_keypoints_2d":[{zeros}]}}]}}"#))
                .unwrap();
        assert_eq!(frame.persons.len(), 1);
        assert!(frame.persons[0].iter().all(|k| !k.is_detected()));
        assert!(frame.persons[0].iter().all(|k| k.x == 0.0 && k.y == 0.0));
    }

    #[test]
    fn empty_people_array_gives_empty_frame() {
        let frame = parse_openpose_frame(r#"{"people":[]}"#).unwrap();
        assert!(frame.persons.is_empty());
    }

    #[test]
    fn wrong_keypoint_count_is_a_format_error_naming_the_person() {
        let fiftythree = vec!["0"; 53].join(",");
        let err = parse_openpose_frame(&format!(
            r#"{{"people":[{{"pose_keypoints_2d":[{fiftythree}]}}]}}"#
        ))
        .unwrap_err();
        assert!(matches!(err, Error::Format(_)));
        assert!(err.to_string().contains("person 0"));
        assert!(err.to_string().contains("53"));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            parse_openpose_frame("{nope"),
            Err(Error::Json { .. })
        ));
    }

    #[test]
    fn clip_wrapper_parses_frame_sequence() {
        let mut triples = vec![0.0; 54];
        triples[0] = 12.0;
        triples[1] = 34.0;
        triples[2] = 0.9;
        let frame = format!(
            r#"{{"people":[{{"pose_keypoints_2d":{}}}]}}"#,
            serde_json::to_string(&triples).unwrap()
        );
        let clip = parse_openpose_clip(&format!(r#"{{"frames":[{frame},{frame}]}}"#)).unwrap();
        assert_eq!(clip.len(), 2);
        assert_eq!(clip[0].persons[0][0].x, 12.0);
        assert_eq!(clip[0].persons[0][0].c, 0.9);
    }
}
