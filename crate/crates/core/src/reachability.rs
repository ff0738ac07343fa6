//! The reachability relation on arcs, the digraphs `Δ` it induces, the
//! intersection digraph of its classes and the matched-pair relation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bipartite::BipartiteGraph;
use crate::digraph::{Digraph, MixedGraph};
use crate::dsu::Dsu;
use crate::error::{Error, Result};

pub type Arc = (usize, usize);

/// Arcs grouped into reachability classes. Classes are ordered by their
/// smallest arc and each class is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcClassPartition {
    classes: Vec<Vec<Arc>>,
    #[serde(skip)]
    class_of: BTreeMap<Arc, usize>,
}

impl ArcClassPartition {
    pub fn classes(&self) -> &[Vec<Arc>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, arc: Arc) -> Option<usize> {
        self.class_of.get(&arc).copied()
    }

    /// Vertices touched by the arcs of class `c`.
    pub fn class_vertices(&self, c: usize) -> BTreeSet<usize> {
        self.classes[c].iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// A class is complete in a ball when all its vertices are interior;
    /// then it coincides with the class of the parent graph.
    pub fn is_complete(&self, c: usize, interior: &BTreeSet<usize>) -> bool {
        self.classes[c].iter().all(|(u, v)| interior.contains(u) && interior.contains(v))
    }

    /// In a ball of a graph whose vertices all have in-degree `in_deg` and
    /// out-degree `out_deg`, a class whose heads and tails keep their full
    /// degrees cannot grow in the parent graph, so it equals the parent class.
    pub fn is_saturated(&self, c: usize, d: &Digraph, in_deg: usize, out_deg: usize) -> bool {
        self.classes[c]
            .iter()
            .all(|&(u, v)| d.out(u).len() == out_deg && d.inn(v).len() == in_deg)
    }
}

/// Arcs sharing a tail or a head are joined; the classes of the generated
/// equivalence are the reachability classes.
pub fn arc_classes(d: &Digraph) -> ArcClassPartition {
    let arcs: Vec<Arc> = d.arcs().collect();
    let index: BTreeMap<Arc, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut dsu = Dsu::new(arcs.len());
    for v in d.vertices() {
        for list in [
            d.out(v).iter().map(|&w| index[&(v, w)]).collect::<Vec<_>>(),
            d.inn(v).iter().map(|&u| index[&(u, v)]).collect(),
        ] {
            for pair in list.windows(2) {
                dsu.union(pair[0], pair[1]);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<Arc>> = BTreeMap::new();
    for (i, &a) in arcs.iter().enumerate() {
        by_root.entry(dsu.find(i)).or_default().push(a);
    }
    let mut classes: Vec<Vec<Arc>> = by_root.into_values().collect();
    classes.sort();
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(c, arcs)| arcs.iter().map(move |&a| (a, c)))
        .collect();
    ArcClassPartition { classes, class_of }
}

/// Shape of a reachability digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Cp(usize),
    TreeFragment(usize, usize),
    NonBipartite,
    Other,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Cycle(m) => write!(f, "cycle({m})"),
            FamilyTag::CompleteBipartite(m, n) => write!(f, "complete-bipartite({m},{n})"),
            FamilyTag::Cp(n) => write!(f, "cp({n})"),
            FamilyTag::TreeFragment(a, b) => write!(f, "tree-fragment({a},{b})"),
            FamilyTag::NonBipartite => f.write_str("non-bipartite"),
            FamilyTag::Other => f.write_str("other"),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Matches a connected bipartite graph against the named families. When
/// several apply the order is: cp, complete bipartite, cycle, tree.
pub fn classify_bipartite_shape(b: &BipartiteGraph) -> Result<FamilyTag> {
    if b.vertex_count() == 0 || !b.is_connected() {
        return Err(Error::input("shape classification needs a connected bipartite graph"));
    }
    let (nx, ny) = (b.part_x().len(), b.part_y().len());
    let e = b.edges().len();
    let deg: BTreeMap<usize, usize> = b.vertices().map(|v| (v, 0)).collect();
    let deg = b.edges().iter().fold(deg, |mut d, &(x, y)| {
        *d.get_mut(&x).unwrap() += 1;
        *d.get_mut(&y).unwrap() += 1;
        d
    });
    let max_deg = |part: &BTreeSet<usize>| part.iter().map(|v| deg[v]).max().unwrap_or(0);
    if nx == ny && nx >= 2 && deg.values().all(|&d| d == nx - 1) {
        return Ok(FamilyTag::Cp(nx));
    }
    if e == nx * ny {
        return Ok(FamilyTag::CompleteBipartite(nx, ny));
    }
    if deg.values().all(|&d| d == 2) {
        return Ok(FamilyTag::Cycle(nx + ny));
    }
    if e + 1 == nx + ny {
        return Ok(FamilyTag::TreeFragment(max_deg(b.part_x()), max_deg(b.part_y())));
    }
    Ok(FamilyTag::Other)
}

fn has_odd_cycle(d: &Digraph) -> bool {
    let mut side: BTreeMap<usize, bool> = BTreeMap::new();
    for start in d.vertices() {
        if side.contains_key(&start) {
            continue;
        }
        side.insert(start, false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let s = side[&v];
            for w in d.undirected_neighbors(v) {
                match side.get(&w) {
                    Some(&sw) if sw == s => return true,
                    Some(_) => {}
                    None => {
                        side.insert(w, !s);
                        stack.push(w);
                    }
                }
            }
        }
    }
    false
}

/// Shape of the digraph spanned by one class: bipartite with tails in X and
/// heads in Y when no vertex is both.
pub fn classify_delta(delta: &Digraph) -> FamilyTag {
    let tails: BTreeSet<usize> = delta.arcs().map(|(u, _)| u).collect();
    let heads: BTreeSet<usize> = delta.arcs().map(|(_, v)| v).collect();
    if tails.is_disjoint(&heads) {
        if let Ok(b) = BipartiteGraph::new(tails, heads, delta.arcs()) {
            if let Ok(tag) = classify_bipartite_shape(&b) {
                return tag;
            }
        }
        return FamilyTag::Other;
    }
    if has_odd_cycle(delta) {
        FamilyTag::NonBipartite
    } else {
        FamilyTag::Other
    }
}

/// `Δ` viewed as a bipartite graph (tails in X), if it is one.
pub fn delta_as_bipartite(delta: &Digraph) -> Option<BipartiteGraph> {
    let tails: BTreeSet<usize> = delta.arcs().map(|(u, _)| u).collect();
    let heads: BTreeSet<usize> = delta.arcs().map(|(_, v)| v).collect();
    if !tails.is_disjoint(&heads) {
        return None;
    }
    BipartiteGraph::new(tails, heads, delta.arcs()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Complete,
    BoundaryClipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReachabilityReport {
    pub class_index: usize,
    pub arc_count: usize,
    pub vertex_count: usize,
    pub delta: Digraph,
    pub family: FamilyTag,
    pub universal_at_scale: bool,
    pub completeness: Completeness,
}

/// `Δ` for the class of `e`, classified. Classification of a
/// boundary-clipped class is advisory only.
pub fn reachability_digraph(d: &Digraph, e: Arc, interior: &BTreeSet<usize>) -> Result<ReachabilityReport> {
    if !d.has_arc(e.0, e.1) {
        return Err(Error::UnknownArc(e.0, e.1));
    }
    let p = arc_classes(d);
    Ok(report_for_class(d, &p, p.class_of(e).unwrap(), interior))
}

pub fn report_for_class(
    d: &Digraph,
    p: &ArcClassPartition,
    c: usize,
    interior: &BTreeSet<usize>,
) -> ReachabilityReport {
    let arcs = &p.classes()[c];
    let delta = d.spanned_by_arcs(arcs).expect("class arcs come from the digraph");
    ReachabilityReport {
        class_index: c,
        arc_count: arcs.len(),
        vertex_count: delta.vertex_count(),
        family: classify_delta(&delta),
        universal_at_scale: arcs.len() == d.arc_count(),
        completeness: if p.is_complete(c, interior) {
            Completeness::Complete
        } else {
            Completeness::BoundaryClipped
        },
        delta,
    }
}

/// `ℛ(D)`: one vertex per class, `C1 → C2` when some 2-arc starts in `C1`
/// and ends in `C2`. Pairs related both ways become undirected edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionDigraph {
    pub graph: MixedGraph,
    /// One 2-arc `(x, y, z)` per related ordered pair of classes.
    pub witnesses: BTreeMap<(usize, usize), (usize, usize, usize)>,
}

impl IntersectionDigraph {
    pub fn restricted(&self, classes: &BTreeSet<usize>) -> IntersectionDigraph {
        IntersectionDigraph {
            graph: self.graph.induced(classes).expect("restriction to known classes"),
            witnesses: self
                .witnesses
                .iter()
                .filter(|((a, b), _)| classes.contains(a) && classes.contains(b))
                .map(|(&k, &w)| (k, w))
                .collect(),
        }
    }
}

impl Serialize for IntersectionDigraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Witness {
            from: usize,
            to: usize,
            witness: (usize, usize, usize),
        }
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Repr {
            vertices: Vec<usize>,
            arcs: Vec<Arc>,
            undirected_pairs: Vec<Arc>,
            witnesses: Vec<Witness>,
        }
        Repr {
            vertices: self.graph.vertices().collect(),
            arcs: self.graph.arcs().iter().copied().collect(),
            undirected_pairs: self.graph.edges().iter().copied().collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|(&(from, to), &witness)| Witness { from, to, witness })
                .collect(),
        }
        .serialize(s)
    }
}

pub fn intersection_digraph(d: &Digraph, p: &ArcClassPartition) -> IntersectionDigraph {
    let mut witnesses = BTreeMap::new();
    for (x, y) in d.arcs() {
        let c1 = p.class_of((x, y)).expect("partition of this digraph");
        for &z in d.out(y) {
            let c2 = p.class_of((y, z)).expect("partition of this digraph");
            if c1 != c2 {
                witnesses.entry((c1, c2)).or_insert((x, y, z));
            }
        }
    }
    let graph = MixedGraph::from_relation(0..p.len(), witnesses.keys().copied())
        .expect("class relation has no loops");
    IntersectionDigraph { graph, witnesses }
}

/// `x ⇒ y` when `x → z ← t → y` for some `z, t`, with `x ≠ y` and `x`, `y`
/// non-adjacent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchRelation {
    pub witnesses: BTreeMap<Arc, (usize, usize)>,
    /// Vertices whose ⇒-successors are all known.
    pub out_exact: BTreeSet<usize>,
    /// Vertices whose ⇒-predecessors are all known.
    pub in_exact: BTreeSet<usize>,
}

impl MatchRelation {
    pub fn pairs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.witnesses.keys().copied()
    }

    pub fn successors(&self, x: usize) -> Vec<usize> {
        self.witnesses.range((x, 0)..=(x, usize::MAX)).map(|(&(_, y), _)| y).collect()
    }

    pub fn predecessors(&self, y: usize) -> Vec<usize> {
        self.witnesses.keys().filter(|&&(_, b)| b == y).map(|&(a, _)| a).collect()
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl Serialize for MatchRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair {
            from: usize,
            to: usize,
            z: usize,
            t: usize,
        }
        let pairs: Vec<Pair> = self
            .witnesses
            .iter()
            .map(|(&(from, to), &(z, t))| Pair { from, to, z, t })
            .collect();
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Repr<'a> {
            pairs: Vec<Pair>,
            out_exact: &'a BTreeSet<usize>,
            in_exact: &'a BTreeSet<usize>,
        }
        Repr {
            pairs,
            out_exact: &self.out_exact,
            in_exact: &self.in_exact,
        }
        .serialize(s)
    }
}

/// All ⇒-pairs visible from interior data. A vertex is out-exact when it,
/// its out-neighbours and their in-neighbours are interior (dually for
/// in-exact); pairs are collected from both sides.
pub fn match_relation(d: &Digraph, interior: &BTreeSet<usize>) -> MatchRelation {
    let inside = |v: &usize| interior.contains(v);
    let mut rel = MatchRelation::default();
    for x in d.vertices().filter(|v| inside(v)) {
        let out_ok = d.out(x).iter().all(|z| inside(z) && d.inn(*z).iter().all(inside));
        if out_ok {
            rel.out_exact.insert(x);
            for &z in d.out(x) {
                for &t in d.inn(z) {
                    for &y in d.out(t) {
                        if y != x && !d.adjacent(x, y) {
                            rel.witnesses.entry((x, y)).or_insert((z, t));
                        }
                    }
                }
            }
        }
        let in_ok = d.inn(x).iter().all(|t| inside(t) && d.out(*t).iter().all(inside));
        if in_ok {
            rel.in_exact.insert(x);
            let y = x;
            for &t in d.inn(y) {
                for &z in d.out(t) {
                    for &w in d.inn(z) {
                        if w != y && !d.adjacent(w, y) {
                            rel.witnesses.entry((w, y)).or_insert((z, t));
                        }
                    }
                }
            }
        }
    }
    rel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::{make_bipartite, BipartiteKind};

    #[test]
    fn triangle_classes_are_singletons() {
        let p = arc_classes(&Digraph::directed_cycle(3).unwrap());
        assert_eq!(p.len(), 3);
        assert!(p.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn out_star_class() {
        // directed (1,2)-tree of depth 2: 0 -> 1,2; 1 -> 3,4; 2 -> 5,6
        let d = Digraph::from_arcs([(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let p = arc_classes(&d);
        assert_eq!(p.len(), 3);
        let r = reachability_digraph(&d, (0, 1), &d.vertex_set()).unwrap();
        assert_eq!(r.family, FamilyTag::CompleteBipartite(1, 2));
    }

    #[test]
    fn tie_breaks() {
        let c6 = make_bipartite(BipartiteKind::Cycle(6)).unwrap();
        assert_eq!(classify_bipartite_shape(&c6).unwrap(), FamilyTag::Cp(3));
        let k11 = make_bipartite(BipartiteKind::Complete(1, 1)).unwrap();
        assert_eq!(classify_bipartite_shape(&k11).unwrap(), FamilyTag::CompleteBipartite(1, 1));
        let k14 = make_bipartite(BipartiteKind::Complete(1, 4)).unwrap();
        assert_eq!(classify_bipartite_shape(&k14).unwrap(), FamilyTag::CompleteBipartite(1, 4));
        let c8 = make_bipartite(BipartiteKind::Cycle(8)).unwrap();
        assert_eq!(classify_bipartite_shape(&c8).unwrap(), FamilyTag::Cycle(8));
        let cp1 = make_bipartite(BipartiteKind::Cp(1)).unwrap();
        assert!(classify_bipartite_shape(&cp1).is_err());
    }

    #[test]
    fn k22_has_empty_match_relation() {
        let d = make_bipartite(BipartiteKind::Complete(2, 2)).unwrap().oriented();
        assert!(match_relation(&d, &d.vertex_set()).is_empty());
    }

    #[test]
    fn triangle_is_non_bipartite_and_universal() {
        let d = Digraph::from_arcs([(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = reachability_digraph(&d, (0, 1), &d.vertex_set()).unwrap();
        assert!(r.universal_at_scale);
        assert_eq!(r.family, FamilyTag::NonBipartite);
    }

    #[test]
    fn directed_triangles_give_a_tree_class() {
        // in T(r) each vertex has its r out-arcs (and r in-arcs) in distinct
        // triangles, and the triangles form a tree, so no alternating walk
        // closes up: a class is a fragment of the tree T_{r,r}
        let t = crate::families::make_t_ball(2, 3).unwrap();
        let g = t.ball.graph();
        let c = t.ball.center();
        let r = reachability_digraph(g, (c, g.out(c)[0]), t.ball.interior()).unwrap();
        assert!(!r.universal_at_scale);
        assert_eq!(r.family, FamilyTag::TreeFragment(2, 2));
    }
}
