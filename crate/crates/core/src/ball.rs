//! Finite truncations of infinite digraphs.
//!
//! A ball keeps track of which vertices are *interior*, meaning every
//! neighbour they have in the parent graph is present. Checks only draw
//! conclusions from interior data.

use std::collections::{BTreeMap, BTreeSet};

use crate::digraph::{Digraph, MixedGraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBall {
    graph: Digraph,
    center: usize,
    radius: usize,
    interior: BTreeSet<usize>,
    depth: BTreeMap<usize, usize>,
}

impl FiniteBall {
    /// Assembles a ball, recomputing depths from the center. Vertices
    /// unreachable from the center get no depth entry.
    pub fn from_parts(
        graph: Digraph,
        center: usize,
        radius: usize,
        interior: BTreeSet<usize>,
    ) -> Result<Self> {
        if !graph.contains(center) {
            return Err(Error::UnknownVertex(center));
        }
        if let Some(&v) = interior.iter().find(|&&v| !graph.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        if radius >= 1 && !interior.contains(&center) {
            return Err(Error::Invariant("center must be interior".into()));
        }
        let depth = graph.bfs_distances([center]);
        if let Some((&v, &dv)) = depth.iter().find(|(_, &dv)| dv > radius) {
            return Err(Error::Invariant(format!(
                "vertex {v} at depth {dv} exceeds radius {radius}"
            )));
        }
        Ok(FiniteBall {
            graph,
            center,
            radius,
            interior,
            depth,
        })
    }

    /// A finite digraph viewed as a ball that is complete everywhere.
    pub fn whole(graph: Digraph, center: usize) -> Result<Self> {
        if !graph.contains(center) {
            return Err(Error::UnknownVertex(center));
        }
        let radius = graph.bfs_distances([center]).values().copied().max().unwrap_or(0);
        let interior = graph.vertex_set();
        FiniteBall::from_parts(graph, center, radius, interior)
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn interior(&self) -> &BTreeSet<usize> {
        &self.interior
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior.contains(&v)
    }

    pub fn depth(&self, v: usize) -> Option<usize> {
        self.depth.get(&v).copied()
    }

    pub fn depths(&self) -> &BTreeMap<usize, usize> {
        &self.depth
    }

    /// True when every vertex within distance `t - 1` of `set` is interior,
    /// so the distance-`t` neighbourhood of `set` is exactly as in the parent.
    pub fn is_deep(&self, set: &BTreeSet<usize>, t: usize) -> bool {
        if t == 0 {
            return true;
        }
        self.graph
            .neighbourhood(set, t - 1)
            .iter()
            .all(|v| self.interior.contains(v))
    }

    /// Vertices `v` with `{v}` deep at radius `t`.
    pub fn deep_vertices(&self, t: usize) -> BTreeSet<usize> {
        if t == 0 {
            return self.graph.vertex_set();
        }
        let boundary: Vec<usize> = self
            .graph
            .vertices()
            .filter(|v| !self.interior.contains(v))
            .collect();
        let dist = self.graph.bfs_distances(boundary);
        self.graph
            .vertices()
            .filter(|v| dist.get(v).is_none_or(|&d| d >= t))
            .collect()
    }

    /// Sub-ball of radius `r` around `v`. A vertex is interior when it was
    /// interior before and lies at distance at most `r - 1` from `v`.
    pub fn sub_ball(&self, v: usize, r: usize) -> Result<FiniteBall> {
        if !self.graph.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let inner = ball(&self.graph, v, r)?;
        let interior = inner
            .interior
            .intersection(&self.interior)
            .copied()
            .collect::<BTreeSet<_>>();
        if r >= 1 && !interior.contains(&v) {
            return Err(Error::input(format!("vertex {v} is not interior")));
        }
        FiniteBall::from_parts(inner.graph, v, r, interior)
    }
}

/// Ball of radius `r` around `v` in `d`. Vertices at distance at most
/// `r - 1` are interior, since their whole neighbourhood is included.
pub fn ball(d: &Digraph, v: usize, r: usize) -> Result<FiniteBall> {
    if !d.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let depth = d.bfs_distances([v]);
    let keep: BTreeSet<usize> = depth.iter().filter(|(_, &dv)| dv <= r).map(|(&u, _)| u).collect();
    let interior = depth
        .iter()
        .filter(|(_, &dv)| r > 0 && dv < r)
        .map(|(&u, _)| u)
        .collect();
    FiniteBall::from_parts(d.induced_subdigraph(&keep)?, v, r, interior)
}

/// A ball whose vertices carry construction-native names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledBall {
    pub ball: FiniteBall,
    pub labels: BTreeMap<usize, String>,
}

impl LabeledBall {
    pub fn new(ball: FiniteBall, labels: BTreeMap<usize, String>) -> Result<Self> {
        let distinct: BTreeSet<&String> = labels.values().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Invariant("labels are not injective".into()));
        }
        if labels.len() != ball.graph().vertex_count()
            || ball.graph().vertices().any(|v| !labels.contains_key(&v))
        {
            return Err(Error::Invariant("every vertex needs exactly one label".into()));
        }
        Ok(LabeledBall { ball, labels })
    }

    /// Labels every vertex by its id.
    pub fn unlabeled(ball: FiniteBall) -> Self {
        let labels = ball.graph().vertices().map(|v| (v, v.to_string())).collect();
        LabeledBall { ball, labels }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(&v, _)| v)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }
}

/// Ball of a relation that may contain symmetric pairs (kept as undirected
/// edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMixedBall {
    pub graph: MixedGraph,
    pub center: usize,
    pub radius: usize,
    pub interior: BTreeSet<usize>,
    pub labels: BTreeMap<usize, String>,
}

/// Raw output of [`grow`]: ids in BFS discovery order, the relation among
/// them, depths and labels.
pub(crate) struct Grown<K> {
    pub keys: Vec<K>,
    pub depth: Vec<usize>,
    pub relation: BTreeSet<(usize, usize)>,
}

impl<K> Grown<K> {
    pub fn interior(&self, radius: usize) -> BTreeSet<usize> {
        (0..self.keys.len())
            .filter(|&i| radius > 0 && self.depth[i] < radius)
            .collect()
    }

    pub fn into_digraph_ball(self, radius: usize, label: impl Fn(&K) -> String) -> Result<LabeledBall> {
        let interior = self.interior(radius);
        let graph = Digraph::new(0..self.keys.len(), self.relation.iter().copied())?;
        let ball = FiniteBall::from_parts(graph, 0, radius, interior)?;
        let labels = self.keys.iter().enumerate().map(|(i, k)| (i, label(k))).collect();
        LabeledBall::new(ball, labels)
    }

    pub fn into_mixed_ball(self, radius: usize, label: impl Fn(&K) -> String) -> Result<LabeledMixedBall> {
        let interior = self.interior(radius);
        let graph = MixedGraph::from_relation(0..self.keys.len(), self.relation.iter().copied())?;
        let labels = self.keys.iter().enumerate().map(|(i, k)| (i, label(k))).collect();
        Ok(LabeledMixedBall {
            graph,
            center: 0,
            radius,
            interior,
            labels,
        })
    }
}

/// Breadth-first growth of the radius-`radius` ball around `root` in a
/// graph given by a neighbour oracle returning `(successors, predecessors)`.
/// The oracle must be consistent: `b` is a successor of `a` iff `a` is a
/// predecessor of `b`.
pub(crate) fn grow<K, F>(root: K, radius: usize, oracle: F) -> Grown<K>
where
    K: Ord + Clone,
    F: Fn(&K) -> (Vec<K>, Vec<K>),
{
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    let mut keys = vec![root.clone()];
    let mut depth = vec![0];
    ids.insert(root, 0);
    let mut head = 0;
    while head < keys.len() {
        let i = head;
        head += 1;
        if depth[i] >= radius {
            continue;
        }
        let (succ, pred) = oracle(&keys[i]);
        for k in succ.into_iter().chain(pred) {
            if !ids.contains_key(&k) {
                ids.insert(k.clone(), keys.len());
                keys.push(k);
                depth.push(depth[i] + 1);
            }
        }
    }
    let mut relation = BTreeSet::new();
    for (i, key) in keys.iter().enumerate() {
        let (succ, _) = oracle(key);
        for k in succ {
            if let Some(&j) = ids.get(&k) {
                relation.insert((i, j));
            }
        }
    }
    Grown {
        keys,
        depth,
        relation,
    }
}
