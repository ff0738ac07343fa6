//! JSON file format for balls.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ball::{FiniteBall, LabeledBall};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// On-disk ball. Every collection is sorted, so serialization is
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SerializedBall {
    pub format_version: u32,
    pub family: String,
    pub vertices: Vec<usize>,
    pub labels: BTreeMap<usize, String>,
    pub arcs: Vec<(usize, usize)>,
    pub center: usize,
    pub radius: usize,
    pub interior: Vec<usize>,
}

impl SerializedBall {
    pub fn from_labeled(b: &LabeledBall, family: &str) -> Self {
        let g = b.ball.graph();
        SerializedBall {
            format_version: FORMAT_VERSION,
            family: family.to_string(),
            vertices: g.vertices().collect(),
            labels: b.labels.clone(),
            arcs: g.arcs().collect(),
            center: b.ball.center(),
            radius: b.ball.radius(),
            interior: b.ball.interior().iter().copied().collect(),
        }
    }

    /// Validates the digraph and ball invariants.
    pub fn to_labeled(&self) -> Result<LabeledBall> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::input(format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        let graph = Digraph::new(self.vertices.iter().copied(), self.arcs.iter().copied())?;
        let interior: BTreeSet<usize> = self.interior.iter().copied().collect();
        let ball = FiniteBall::from_parts(graph, self.center, self.radius, interior)?;
        LabeledBall::new(ball, self.labels.clone())
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ball serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("corrupt ball file: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_j_segment;

    #[test]
    fn round_trip_is_identity() {
        let j = make_j_segment(2, 3).unwrap();
        let s = SerializedBall::from_labeled(&j, "j:2@m3");
        let text = s.to_json();
        let back = SerializedBall::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_labeled().unwrap(), j);
        assert_eq!(SerializedBall::from_labeled(&back.to_labeled().unwrap(), "j:2@m3").to_json(), text);
    }

    #[test]
    fn loops_rejected_on_load() {
        let j = make_j_segment(1, 1).unwrap();
        let mut s = SerializedBall::from_labeled(&j, "j:1@m1");
        s.arcs.push((s.vertices[0], s.vertices[0]));
        assert!(s.to_labeled().is_err());
    }
}
