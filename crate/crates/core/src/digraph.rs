//! Digraphs and mixed graphs on integer vertex ids.
//!
//! A [`Digraph`] is an irreflexive antisymmetric arc relation. A
//! [`MixedGraph`] additionally carries undirected edges, which stand for a
//! pair of arcs running in both directions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Adjacency {
    out: Vec<usize>,
    inn: Vec<usize>,
}

/// Irreflexive antisymmetric digraph. Neighbour lists are kept sorted so
/// every traversal is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ArcListRepr", try_from = "ArcListRepr")]
pub struct Digraph {
    adj: BTreeMap<usize, Adjacency>,
    arc_count: usize,
}

#[derive(Serialize, Deserialize)]
struct ArcListRepr {
    vertices: Vec<usize>,
    arcs: Vec<(usize, usize)>,
}

impl From<Digraph> for ArcListRepr {
    fn from(d: Digraph) -> Self {
        ArcListRepr {
            vertices: d.vertices().collect(),
            arcs: d.arcs().collect(),
        }
    }
}

impl TryFrom<ArcListRepr> for Digraph {
    type Error = Error;
    fn try_from(r: ArcListRepr) -> Result<Self> {
        Digraph::new(r.vertices, r.arcs)
    }
}

const NO_NEIGHBOURS: &[usize] = &[];

impl Digraph {
    /// Builds a digraph, rejecting loops, symmetric pairs and arcs whose
    /// endpoints are missing from `vertices`. Duplicate arcs collapse.
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut adj: BTreeMap<usize, Adjacency> = vertices
            .into_iter()
            .map(|v| (v, Adjacency::default()))
            .collect();
        let arcs: BTreeSet<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u == v {
                return Err(Error::Invariant(format!("loop at vertex {u}")));
            }
            if arcs.contains(&(v, u)) {
                return Err(Error::Invariant(format!(
                    "arcs ({u}, {v}) and ({v}, {u}) violate antisymmetry"
                )));
            }
            if !adj.contains_key(&u) {
                return Err(Error::UnknownVertex(u));
            }
            if !adj.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        for &(u, v) in &arcs {
            adj.get_mut(&u).unwrap().out.push(v);
            adj.get_mut(&v).unwrap().inn.push(u);
        }
        for a in adj.values_mut() {
            a.out.sort_unstable();
            a.inn.sort_unstable();
        }
        Ok(Digraph {
            adj,
            arc_count: arcs.len(),
        })
    }

    /// Digraph whose vertex set is exactly the arc endpoints.
    pub fn from_arcs(arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let vertices: BTreeSet<usize> = arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
        Digraph::new(vertices, arcs)
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`, for `n >= 3`.
    pub fn directed_cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::input(format!(
                "directed cycle needs at least 3 vertices, got {n}"
            )));
        }
        Digraph::new(0..n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Directed path `0 -> 1 -> ... -> len`.
    pub fn directed_path(len: usize) -> Self {
        Digraph::new(0..=len, (0..len).map(|i| (i, i + 1))).expect("paths are valid digraphs")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.adj.keys().copied().collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj
            .get(&u)
            .is_some_and(|a| a.out.binary_search(&v).is_ok())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, a)| a.out.iter().map(move |&v| (u, v)))
    }

    /// Sorted out-neighbours; empty for unknown vertices.
    pub fn out(&self, v: usize) -> &[usize] {
        self.adj.get(&v).map_or(NO_NEIGHBOURS, |a| &a.out)
    }

    /// Sorted in-neighbours; empty for unknown vertices.
    pub fn inn(&self, v: usize) -> &[usize] {
        self.adj.get(&v).map_or(NO_NEIGHBOURS, |a| &a.inn)
    }

    /// `(D⁺(v), D⁻(v))`.
    pub fn neighbors(&self, v: usize) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        let a = self.adj.get(&v).ok_or(Error::UnknownVertex(v))?;
        Ok((
            a.out.iter().copied().collect(),
            a.inn.iter().copied().collect(),
        ))
    }

    /// Neighbours in the underlying graph, sorted and deduplicated.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self.out(v).iter().chain(self.inn(v)).copied().collect();
        n.sort_unstable();
        n.dedup();
        n
    }

    /// `d(v) = |D⁺(v) ∪ D⁻(v)|`.
    pub fn degree(&self, v: usize) -> usize {
        self.out(v).len() + self.inn(v).len()
    }

    pub fn induced_subdigraph(&self, subset: &BTreeSet<usize>) -> Result<Digraph> {
        if let Some(&v) = subset.iter().find(|v| !self.contains(**v)) {
            return Err(Error::UnknownVertex(v));
        }
        let arcs = subset.iter().flat_map(|&u| {
            self.out(u)
                .iter()
                .filter(|v| subset.contains(v))
                .map(move |&v| (u, v))
        });
        Digraph::new(subset.iter().copied(), arcs)
    }

    /// Subdigraph spanned by an arc set: its vertices are the endpoints.
    pub fn spanned_by_arcs(&self, arcs: &[(usize, usize)]) -> Result<Digraph> {
        for &(u, v) in arcs {
            if !self.has_arc(u, v) {
                return Err(Error::UnknownArc(u, v));
            }
        }
        Digraph::from_arcs(arcs.iter().copied())
    }

    /// Every arc turned into an undirected edge.
    pub fn underlying_graph(&self) -> MixedGraph {
        MixedGraph::new(
            self.vertices(),
            std::iter::empty(),
            self.arcs(),
        )
        .expect("a digraph's underlying graph is a valid mixed graph")
    }

    pub fn reversed(&self) -> Digraph {
        Digraph::new(self.vertices(), self.arcs().map(|(u, v)| (v, u)))
            .expect("reversal preserves digraph invariants")
    }

    /// Renames vertices through an injective map defined on every vertex.
    pub fn relabel(&self, map: &BTreeMap<usize, usize>) -> Result<Digraph> {
        let image = |v: usize| map.get(&v).copied().ok_or(Error::UnknownVertex(v));
        let vertices = self.vertices().map(image).collect::<Result<Vec<_>>>()?;
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::input("relabelling map is not injective"));
        }
        let arcs = self
            .arcs()
            .map(|(u, v)| Ok((image(u)?, image(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Digraph::new(vertices, arcs)
    }

    /// Multi-source BFS distances in the underlying graph.
    pub fn bfs_distances(&self, sources: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for s in sources {
            if self.contains(s) && !dist.contains_key(&s) {
                dist.insert(s, 0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for &w in self.out(u).iter().chain(self.inn(u)) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices within underlying distance `radius` of `sources`.
    pub fn neighbourhood(&self, sources: &BTreeSet<usize>, radius: usize) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = sources.iter().copied().filter(|v| self.contains(*v)).collect();
        let mut frontier: Vec<usize> = seen.iter().copied().collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for u in frontier {
                for &w in self.out(u).iter().chain(self.inn(u)) {
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Shortest-path distance in the underlying graph.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        if !self.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.bfs_distances([u]).get(&v).copied())
    }

    /// Weak components, each sorted, listed by smallest member.
    pub fn weak_components(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp: BTreeSet<usize> = self.bfs_distances([v]).into_keys().collect();
            seen.extend(comp.iter().copied());
            comps.push(comp);
        }
        comps
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct MixedAdjacency {
    out: Vec<usize>,
    inn: Vec<usize>,
    und: Vec<usize>,
}

/// Graph with both directed arcs and undirected edges. An undirected edge
/// `{u, v}` is the same as a symmetric pair of arcs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MixedGraph {
    adj: BTreeMap<usize, MixedAdjacency>,
    arcs: BTreeSet<(usize, usize)>,
    edges: BTreeSet<(usize, usize)>,
}

impl MixedGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut adj: BTreeMap<usize, MixedAdjacency> = vertices
            .into_iter()
            .map(|v| (v, MixedAdjacency::default()))
            .collect();
        let arcs: BTreeSet<(usize, usize)> = arcs.into_iter().collect();
        let edges: BTreeSet<(usize, usize)> =
            edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        for &(u, v) in arcs.iter().chain(&edges) {
            if u == v {
                return Err(Error::Invariant(format!("loop at vertex {u}")));
            }
            for w in [u, v] {
                if !adj.contains_key(&w) {
                    return Err(Error::UnknownVertex(w));
                }
            }
        }
        for &(u, v) in &arcs {
            if arcs.contains(&(v, u)) {
                return Err(Error::Invariant(format!(
                    "directed arcs ({u}, {v}) and ({v}, {u}) must be an undirected edge"
                )));
            }
            if edges.contains(&(u.min(v), u.max(v))) {
                return Err(Error::Invariant(format!(
                    "pair {{{u}, {v}}} is both an arc and an edge"
                )));
            }
        }
        for &(u, v) in &arcs {
            adj.get_mut(&u).unwrap().out.push(v);
            adj.get_mut(&v).unwrap().inn.push(u);
        }
        for &(u, v) in &edges {
            adj.get_mut(&u).unwrap().und.push(v);
            adj.get_mut(&v).unwrap().und.push(u);
        }
        for a in adj.values_mut() {
            a.out.sort_unstable();
            a.inn.sort_unstable();
            a.und.sort_unstable();
        }
        Ok(MixedGraph { adj, arcs, edges })
    }

    /// Symmetric pairs of `relation` become undirected edges, the rest arcs.
    pub fn from_relation(
        vertices: impl IntoIterator<Item = usize>,
        relation: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let rel: BTreeSet<(usize, usize)> = relation.into_iter().collect();
        let arcs = rel.iter().copied().filter(|&(u, v)| !rel.contains(&(v, u)));
        let edges = rel.iter().copied().filter(|&(u, v)| u < v && rel.contains(&(v, u)));
        MixedGraph::new(vertices, arcs.collect::<Vec<_>>(), edges.collect::<Vec<_>>())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Undirected edges as `(min, max)` pairs.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        self.adj.get(&v).map_or(NO_NEIGHBOURS, |a| &a.out)
    }

    pub fn in_arcs(&self, v: usize) -> &[usize] {
        self.adj.get(&v).map_or(NO_NEIGHBOURS, |a| &a.inn)
    }

    pub fn edge_neighbors(&self, v: usize) -> &[usize] {
        self.adj.get(&v).map_or(NO_NEIGHBOURS, |a| &a.und)
    }

    /// `u -> v` either as an arc or as one orientation of an edge.
    pub fn relates(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v)) || self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// The arc relation with each edge expanded into both orientations.
    pub fn relation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs
            .iter()
            .copied()
            .chain(self.edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]))
    }

    /// Successors under [`MixedGraph::relation`], sorted.
    pub fn successors(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.out_arcs(v).iter().chain(self.edge_neighbors(v)).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.in_arcs(v).iter().chain(self.edge_neighbors(v)).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn induced(&self, subset: &BTreeSet<usize>) -> Result<MixedGraph> {
        if let Some(&v) = subset.iter().find(|v| !self.contains(**v)) {
            return Err(Error::UnknownVertex(v));
        }
        let keep = |&(u, v): &(usize, usize)| subset.contains(&u) && subset.contains(&v);
        MixedGraph::new(
            subset.iter().copied(),
            self.arcs.iter().copied().filter(keep).collect::<Vec<_>>(),
            self.edges.iter().copied().filter(keep).collect::<Vec<_>>(),
        )
    }

    /// Converts to a [`Digraph`] when there are no undirected edges.
    pub fn to_digraph(&self) -> Result<Digraph> {
        if let Some(&(u, v)) = self.edges.iter().next() {
            return Err(Error::Invariant(format!(
                "undirected edge {{{u}, {v}}} has no digraph representation"
            )));
        }
        Digraph::new(self.vertices(), self.arcs.iter().copied())
    }

    pub fn bfs_distances(&self, sources: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for s in sources {
            if self.contains(s) && !dist.contains_key(&s) {
                dist.insert(s, 0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            let a = &self.adj[&u];
            for &w in a.out.iter().chain(&a.inn).chain(&a.und) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl From<&Digraph> for MixedGraph {
    fn from(d: &Digraph) -> Self {
        MixedGraph::new(d.vertices(), d.arcs(), std::iter::empty())
            .expect("digraphs are valid mixed graphs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Digraph {
        Digraph::directed_cycle(3).unwrap()
    }

    #[test]
    fn rejects_loops_and_symmetric_pairs() {
        assert!(matches!(Digraph::new([0], [(0, 0)]), Err(Error::Invariant(_))));
        assert!(matches!(
            Digraph::new([0, 1], [(0, 1), (1, 0)]),
            Err(Error::Invariant(_))
        ));
        assert_eq!(Digraph::new([0], [(0, 1)]), Err(Error::UnknownVertex(1)));
    }

    #[test]
    fn induced_restriction_of_triangle() {
        let d = d3();
        let sub = d.induced_subdigraph(&[0, 1].into()).unwrap();
        assert_eq!(sub.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        let empty = d.induced_subdigraph(&BTreeSet::new()).unwrap();
        assert!(empty.is_empty());
        assert_eq!(
            d.induced_subdigraph(&[0, 7].into()),
            Err(Error::UnknownVertex(7))
        );
    }

    #[test]
    fn underlying_graph_forgets_orientation() {
        let g = d3().underlying_graph();
        assert!(g.arcs().is_empty());
        assert_eq!(g.edges().len(), 3);
        let single = Digraph::from_arcs([(4, 2)]).unwrap().underlying_graph();
        assert_eq!(single.edges().iter().copied().collect::<Vec<_>>(), vec![(2, 4)]);
    }

    #[test]
    fn neighbours_of_triangle_vertex() {
        let (out, inn) = d3().neighbors(0).unwrap();
        assert_eq!(out, [1].into());
        assert_eq!(inn, [2].into());
        assert_eq!(d3().neighbors(9), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn components_and_distances() {
        let two = Digraph::from_arcs([(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.weak_components().len(), 2);
        assert_eq!(two.distance(0, 3).unwrap(), None);
        let d = d3();
        assert_eq!(d.distance(0, 0).unwrap(), Some(0));
        assert_eq!(d.distance(0, 2).unwrap(), Some(1));
        assert!(d.distance(0, 5).is_err());
    }

    #[test]
    fn mixed_graph_rejects_double_pairs() {
        assert!(MixedGraph::new([0, 1], [(0, 1)], [(1, 0)]).is_err());
        let m = MixedGraph::from_relation([0, 1, 2], [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(m.edges().len(), 1);
        assert_eq!(m.arcs().len(), 1);
        assert!(m.relates(1, 0) && m.relates(0, 1) && !m.relates(2, 1));
        assert!(m.to_digraph().is_err());
    }
}
