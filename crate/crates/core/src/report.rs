//! Outcome type shared by the symmetry and structure checks.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::digraph::Digraph;
use crate::iso::{extend_isomorphism, IsoMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every instance examined inside the ball passed. Evidence, not proof.
    VerifiedAtScale,
    /// A witness inside fully interior data refutes the claim for the
    /// parent graph.
    Refuted,
    ExactTrue,
    ExactFalse,
    /// The ball was too small to examine anything.
    Inconclusive,
}

impl Verdict {
    /// Exit-code style grouping: `Some(true)` for success verdicts,
    /// `Some(false)` for refutations, `None` when inconclusive.
    pub fn holds(self) -> Option<bool> {
        match self {
            Verdict::VerifiedAtScale | Verdict::ExactTrue => Some(true),
            Verdict::Refuted | Verdict::ExactFalse => Some(false),
            Verdict::Inconclusive => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `map` has no extension to an isomorphism defined on `domain`.
    NonExtendable { map: IsoMap, domain: BTreeSet<usize> },
    /// The coordinate map between these k-arcs is not an isomorphism of the
    /// subdigraphs they induce.
    KArcPair { first: Vec<usize>, second: Vec<usize> },
    /// A part-preserving isomorphism between induced subgraphs with no
    /// part-preserving extension to the whole graph.
    PartPreserving { map: IsoMap },
    /// Closed walk, first vertex repeated at the end.
    Cycle { vertices: Vec<usize> },
    /// Two directed walks with the same ends and different lengths.
    Walks { first: Vec<usize>, second: Vec<usize> },
    /// Closed walk with orientation signs (+1 along an arc, -1 against).
    Unbalanced { walk: Vec<usize>, signs: Vec<i8>, sum: i64 },
}

impl Witness {
    /// Re-checks an extension witness with an independent exhaustive search.
    /// Other witness kinds have their own checkers and return `None`.
    pub fn replay_extension(&self, d: &Digraph) -> Option<bool> {
        match self {
            Witness::NonExtendable { map, domain } => {
                Some(matches!(extend_isomorphism(d, map, domain), Ok(None)))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_sub_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckStats {
    /// Subsets, k-arcs or vertex pairs examined.
    pub instances: usize,
    /// Isomorphism classes (or orbits) the instances fell into.
    pub classes: usize,
    /// Maps whose extension was attempted.
    pub maps: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub parameters: CheckParams,
    pub stats: CheckStats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, verdict: Verdict, parameters: CheckParams) -> Self {
        CheckReport {
            check: check.into(),
            verdict,
            witness: None,
            parameters,
            stats: CheckStats::default(),
            notes: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_stats(mut self, stats: CheckStats) -> Self {
        self.stats = stats;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}
