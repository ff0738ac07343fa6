//! Finite bipartite graphs with a fixed bipartition.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::iso::{dense_isomorphisms, extend_dense, Dense, IsoMap, Matcher};

/// Undirected bipartite graph with parts `X` and `Y`. `boundary` marks
/// vertices of a finite fragment whose neighbourhood was cut off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    part_x: BTreeSet<usize>,
    part_y: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
    #[serde(default)]
    boundary: BTreeSet<usize>,
}

/// Named constructions accepted by [`make_bipartite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BipartiteKind {
    /// Cycle on the given (even) number of vertices.
    Cycle(usize),
    Complete(usize, usize),
    /// Complement of a perfect matching in `K_{n,n}`.
    Cp(usize),
    /// Semiregular tree with X-degree `a` and Y-degree `b`, truncated at
    /// `depth` from an X root.
    TreeFragment(usize, usize, usize),
}

impl BipartiteGraph {
    pub fn new(
        part_x: impl IntoIterator<Item = usize>,
        part_y: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let part_x: BTreeSet<usize> = part_x.into_iter().collect();
        let part_y: BTreeSet<usize> = part_y.into_iter().collect();
        if let Some(v) = part_x.intersection(&part_y).next() {
            return Err(Error::input(format!("vertex {v} lies in both parts")));
        }
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        for &(x, y) in &edges {
            if !part_x.contains(&x) || !part_y.contains(&y) {
                return Err(Error::input(format!("edge ({x}, {y}) does not run from X to Y")));
            }
        }
        Ok(BipartiteGraph {
            part_x,
            part_y,
            edges,
            boundary: BTreeSet::new(),
        })
    }

    pub fn with_boundary(mut self, boundary: BTreeSet<usize>) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn part_x(&self) -> &BTreeSet<usize> {
        &self.part_x
    }

    pub fn part_y(&self) -> &BTreeSet<usize> {
        &self.part_y
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn boundary(&self) -> &BTreeSet<usize> {
        &self.boundary
    }

    pub fn vertex_count(&self) -> usize {
        self.part_x.len() + self.part_y.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.part_x.iter().chain(&self.part_y).copied()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y)) || self.edges.contains(&(y, x))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| x == v || y == v).count()
    }

    /// Orientation X → Y.
    pub fn oriented(&self) -> Digraph {
        Digraph::new(self.vertices(), self.edges.iter().copied())
            .expect("bipartite edges always form a valid orientation")
    }

    /// Same graph with the roles of the parts exchanged.
    pub fn swapped(&self) -> BipartiteGraph {
        BipartiteGraph {
            part_x: self.part_y.clone(),
            part_y: self.part_x.clone(),
            edges: self.edges.iter().map(|&(x, y)| (y, x)).collect(),
            boundary: self.boundary.clone(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.oriented().is_weakly_connected()
    }

    /// Induced on `subset`, keeping the part of every vertex.
    pub fn induced(&self, subset: &BTreeSet<usize>) -> BipartiteGraph {
        BipartiteGraph {
            part_x: self.part_x.intersection(subset).copied().collect(),
            part_y: self.part_y.intersection(subset).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(x, y)| subset.contains(x) && subset.contains(y))
                .copied()
                .collect(),
            boundary: self.boundary.intersection(subset).copied().collect(),
        }
    }

    /// Relabels vertices to `0..|X|` (X, sorted) and `|X|..` (Y, sorted).
    pub fn normalized(&self) -> BipartiteGraph {
        let map: BTreeMap<usize, usize> = self.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        BipartiteGraph {
            part_x: self.part_x.iter().map(|v| map[v]).collect(),
            part_y: self.part_y.iter().map(|v| map[v]).collect(),
            edges: self.edges.iter().map(|(x, y)| (map[x], map[y])).collect(),
            boundary: self.boundary.iter().map(|v| map[v]).collect(),
        }
    }

    /// Dense view with X coloured 0 and Y coloured 1, oriented X → Y.
    pub(crate) fn dense(&self) -> Dense {
        Dense::of_digraph(&self.oriented()).with_colors(|v| u32::from(self.part_y.contains(&v)))
    }

    /// X-vertices as row bitmasks over sorted Y (at most 64 Y-vertices).
    pub fn row_masks(&self) -> Vec<u64> {
        let ys: Vec<usize> = self.part_y.iter().copied().collect();
        self.part_x
            .iter()
            .map(|&x| {
                ys.iter()
                    .enumerate()
                    .filter(|(_, &y)| self.edges.contains(&(x, y)))
                    .fold(0u64, |m, (j, _)| m | (1 << j))
            })
            .collect()
    }

    pub fn from_row_masks(rows: &[u64], ny: usize) -> BipartiteGraph {
        let nx = rows.len();
        let edges = rows.iter().enumerate().flat_map(|(i, &m)| {
            (0..ny).filter(move |j| m >> j & 1 == 1).map(move |j| (i, nx + j))
        });
        BipartiteGraph::new(0..nx, nx..nx + ny, edges.collect::<Vec<_>>()).expect("row masks are valid")
    }
}

pub fn make_bipartite(kind: BipartiteKind) -> Result<BipartiteGraph> {
    match kind {
        BipartiteKind::Cycle(len) => {
            if len < 4 || len % 2 == 1 {
                return Err(Error::input(format!(
                    "a bipartite cycle needs an even length of at least 4, got {len}"
                )));
            }
            let m = len / 2;
            let edges = (0..m).flat_map(|i| [(i, m + i), (i, m + (i + m - 1) % m)]);
            BipartiteGraph::new(0..m, m..2 * m, edges.collect::<Vec<_>>())
        }
        BipartiteKind::Complete(m, n) => {
            if m == 0 || n == 0 {
                return Err(Error::input("complete bipartite parts must be non-empty"));
            }
            let edges = (0..m).flat_map(|i| (m..m + n).map(move |j| (i, j)));
            BipartiteGraph::new(0..m, m..m + n, edges.collect::<Vec<_>>())
        }
        BipartiteKind::Cp(n) => {
            if n == 0 {
                return Err(Error::input("cp(n) needs n >= 1"));
            }
            let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)));
            BipartiteGraph::new(0..n, n..2 * n, edges.collect::<Vec<_>>())
        }
        BipartiteKind::TreeFragment(a, b, depth) => tree_fragment(a, b, depth),
    }
}

fn tree_fragment(a: usize, b: usize, depth: usize) -> Result<BipartiteGraph> {
    if a == 0 || b == 0 {
        return Err(Error::input("tree degrees must be positive"));
    }
    // Layered growth from an X root; layer parity decides the part.
    let mut xs = vec![0];
    let mut ys = Vec::new();
    let mut edges = Vec::new();
    let mut layer = vec![0usize];
    let mut next_id = 1;
    for level in 0..depth {
        let mut next = Vec::new();
        for &v in &layer {
            let in_x = level % 2 == 0;
            let want = if in_x { a } else { b };
            let children = if level == 0 { want } else { want - 1 };
            for _ in 0..children {
                let c = next_id;
                next_id += 1;
                if in_x {
                    ys.push(c);
                    edges.push((v, c));
                } else {
                    xs.push(c);
                    edges.push((c, v));
                }
                next.push(c);
            }
        }
        layer = next;
    }
    let boundary: BTreeSet<usize> = if depth == 0 { [0].into() } else { layer.into_iter().collect() };
    Ok(BipartiteGraph::new(xs, ys, edges)?.with_boundary(boundary))
}

/// Part-preserving automorphisms act transitively on edges.
pub fn is_edge_transitive(b: &BipartiteGraph) -> bool {
    let Some(&(x0, y0)) = b.edges.iter().next() else {
        return true;
    };
    let dense = b.dense();
    let idx = |v: usize| dense.index[&v];
    b.edges.iter().all(|&(x, y)| {
        let seed = [(idx(x0), idx(x)), (idx(y0), idx(y))];
        let mut found = false;
        if let Some(mut m) = Matcher::new(&dense, &dense, &seed, None, true) {
            m.run(|_| {
                found = true;
                false
            });
        }
        found
    })
}

/// All automorphisms of `b` that map each part onto itself.
pub fn part_preserving_automorphisms(b: &BipartiteGraph) -> Vec<IsoMap> {
    let d = b.dense();
    dense_isomorphisms(&d, &d, usize::MAX)
}

/// Extends a part-preserving partial map to a part-preserving automorphism.
pub fn extend_part_preserving(b: &BipartiteGraph, phi: &IsoMap) -> Result<Option<IsoMap>> {
    for (&u, &v) in phi.pairs() {
        let same = (b.part_x.contains(&u) && b.part_x.contains(&v))
            || (b.part_y.contains(&u) && b.part_y.contains(&v));
        if !same {
            return Err(Error::input(format!("map sends {u} to {v} across the bipartition")));
        }
    }
    if !phi.is_partial_automorphism(&b.oriented()) {
        return Err(Error::input("map is not an isomorphism between induced subgraphs"));
    }
    let d = b.dense();
    Ok(extend_dense(&d, &d, phi, None, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphisms;

    #[test]
    fn cp3_is_a_hexagon() {
        let cp3 = make_bipartite(BipartiteKind::Cp(3)).unwrap();
        let c6 = make_bipartite(BipartiteKind::Cycle(6)).unwrap();
        assert!(!find_isomorphisms(&cp3.oriented(), &c6.oriented(), 1).is_empty());
    }

    #[test]
    fn cp1_has_no_edges() {
        let cp1 = make_bipartite(BipartiteKind::Cp(1)).unwrap();
        assert_eq!(cp1.vertex_count(), 2);
        assert!(cp1.edges().is_empty());
    }

    #[test]
    fn odd_cycle_rejected() {
        assert!(matches!(make_bipartite(BipartiteKind::Cycle(5)), Err(Error::Input(_))));
    }

    #[test]
    fn edge_transitivity() {
        let k23 = make_bipartite(BipartiteKind::Complete(2, 3)).unwrap();
        assert!(is_edge_transitive(&k23));
        assert!(is_edge_transitive(&make_bipartite(BipartiteKind::Cycle(6)).unwrap()));
        let lopsided = BipartiteGraph::new([0, 1], [2, 3], [(0, 2), (0, 3), (1, 3)]).unwrap();
        assert!(!is_edge_transitive(&lopsided));
    }

    #[test]
    fn tree_fragment_degrees() {
        let t = make_bipartite(BipartiteKind::TreeFragment(2, 3, 3)).unwrap();
        for v in t.vertices().filter(|v| !t.boundary().contains(v)) {
            let want = if t.part_x().contains(&v) { 2 } else { 3 };
            assert_eq!(t.degree(v), want);
        }
        assert!(t.is_connected());
    }

    #[test]
    fn row_masks_round_trip() {
        let c8 = make_bipartite(BipartiteKind::Cycle(8)).unwrap();
        let back = BipartiteGraph::from_row_masks(&c8.row_masks(), 4);
        assert_eq!(back, c8.normalized());
    }
}
