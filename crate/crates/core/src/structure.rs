//! Descendant trees, directed cycles, walk-length uniformity, level
//! functions (property Z), triangle profiles and an ends proxy.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::FiniteBall;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::report::{CheckParams, CheckReport, CheckStats, Verdict, Witness};

/// Vertices reachable from (or reaching) a start vertex inside a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Reach {
    pub vertices: BTreeSet<usize>,
    /// Some reached vertex is not interior, so the set may be truncated.
    pub boundary_clipped: bool,
}

fn reach(ball: &FiniteBall, u: usize, forward: bool) -> Result<Reach> {
    let d = ball.graph();
    if !d.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let next = if forward { d.out(x) } else { d.inn(x) };
        for &y in next {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let boundary_clipped = seen.iter().any(|&v| !ball.is_interior(v));
    Ok(Reach {
        vertices: seen,
        boundary_clipped,
    })
}

/// desc(u) inside the ball.
pub fn descendants(ball: &FiniteBall, u: usize) -> Result<Reach> {
    reach(ball, u, true)
}

/// anc(u) inside the ball.
pub fn ancestors(ball: &FiniteBall, u: usize) -> Result<Reach> {
    reach(ball, u, false)
}

/// A cycle of the underlying graph of `⟨set⟩`, closed (first vertex
/// repeated at the end), found by BFS from the smallest vertex of each
/// component.
pub fn underlying_cycle(d: &Digraph, set: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    for &root in set {
        if depth.contains_key(&root) {
            continue;
        }
        depth.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            for b in d.undirected_neighbors(a) {
                if !set.contains(&b) || parent.get(&a) == Some(&b) {
                    continue;
                }
                if depth.contains_key(&b) {
                    return Some(close_cycle(&parent, &depth, a, b));
                }
                depth.insert(b, depth[&a] + 1);
                parent.insert(b, a);
                queue.push_back(b);
            }
        }
    }
    None
}

/// Joins the tree paths of `a` and `b` at their lowest common ancestor.
fn close_cycle(
    parent: &BTreeMap<usize, usize>,
    depth: &BTreeMap<usize, usize>,
    a: usize,
    b: usize,
) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while x != y {
        if depth[&x] >= depth[&y] {
            x = parent[&x];
            left.push(x);
        } else {
            y = parent[&y];
            right.push(y);
        }
    }
    // left ends at the lca; right ends at the lca too
    right.pop();
    let mut cycle: Vec<usize> = left.into_iter().rev().collect();
    cycle.extend(right);
    cycle.push(cycle[0]);
    cycle
}

fn tree_check(ball: &FiniteBall, u: usize, forward: bool) -> Result<CheckReport> {
    let r = reach(ball, u, forward)?;
    let name = if forward { "desc-tree" } else { "anc-tree" };
    let set: BTreeSet<usize> = r
        .vertices
        .iter()
        .copied()
        .filter(|&v| ball.is_interior(v))
        .collect();
    let stats = CheckStats {
        instances: set.len(),
        ..CheckStats::default()
    };
    let report = match underlying_cycle(ball.graph(), &set) {
        Some(cycle) => CheckReport::new(name, Verdict::ExactFalse, CheckParams::default())
            .with_witness(Witness::Cycle { vertices: cycle })
            .with_stats(CheckStats { failures: 1, ..stats }),
        None => CheckReport::new(name, Verdict::VerifiedAtScale, CheckParams::default()).with_stats(stats),
    };
    Ok(report.note(format!(
        "restricted to the {} interior vertices of the reached set",
        set.len()
    )))
}

/// Whether `⟨desc(u)⟩` is a tree, judged on its interior part. A cycle there
/// is a cycle of the parent graph, hence `exact-false`.
pub fn is_desc_tree(ball: &FiniteBall, u: usize) -> Result<CheckReport> {
    tree_check(ball, u, true)
}

/// Dual of [`is_desc_tree`].
pub fn is_anc_tree(ball: &FiniteBall, u: usize) -> Result<CheckReport> {
    tree_check(ball, u, false)
}

/// Vertices that lie on some directed cycle's strongly connected core,
/// i.e. what survives repeated removal of sources and sinks.
fn cyclic_core(d: &Digraph) -> BTreeSet<usize> {
    let mut indeg: BTreeMap<usize, usize> = d.vertices().map(|v| (v, d.inn(v).len())).collect();
    let mut outdeg: BTreeMap<usize, usize> = d.vertices().map(|v| (v, d.out(v).len())).collect();
    let mut alive = d.vertex_set();
    let mut queue: VecDeque<usize> = d
        .vertices()
        .filter(|v| indeg[v] == 0 || outdeg[v] == 0)
        .collect();
    while let Some(v) = queue.pop_front() {
        if !alive.remove(&v) {
            continue;
        }
        for &w in d.out(v) {
            let e = indeg.get_mut(&w).expect("vertex");
            *e -= 1;
            if *e == 0 && alive.contains(&w) {
                queue.push_back(w);
            }
        }
        for &w in d.inn(v) {
            let e = outdeg.get_mut(&w).expect("vertex");
            *e -= 1;
            if *e == 0 && alive.contains(&w) {
                queue.push_back(w);
            }
        }
    }
    alive
}

/// Shortest directed cycle through `s` within `allowed`, closed.
fn shortest_cycle_through(d: &Digraph, s: usize, allowed: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([s]);
    let mut seen = BTreeSet::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in d.out(x) {
            if y == s {
                let mut path = vec![x];
                let mut z = x;
                while z != s {
                    z = parent[&z];
                    path.push(z);
                }
                path.reverse();
                path.push(s);
                return Some(path);
            }
            if allowed.contains(&y) && seen.insert(y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// A shortest directed cycle (closed, first vertex repeated), or `None`
/// when `d` is acyclic. Exact.
pub fn has_directed_cycle(d: &Digraph) -> Option<Vec<usize>> {
    let core = cyclic_core(d);
    core.par_iter()
        .filter_map(|&s| shortest_cycle_through(d, s, &core))
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
}

/// Vertices on some directed walk from `u` to `v`.
fn between(d: &Digraph, u: usize, v: usize) -> BTreeSet<usize> {
    let fwd = d_reach(d, u, true);
    let bwd = d_reach(d, v, false);
    fwd.intersection(&bwd).copied().collect()
}

fn d_reach(d: &Digraph, u: usize, forward: bool) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let next = if forward { d.out(x) } else { d.inn(x) };
        for &y in next {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Shortest directed walk from `u` to `v` inside `allowed`.
fn shortest_walk(d: &Digraph, u: usize, v: usize, allowed: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            let mut path = vec![v];
            let mut z = v;
            while z != u {
                z = parent[&z];
                path.push(z);
            }
            path.reverse();
            return Some(path);
        }
        for &y in d.out(x) {
            if allowed.contains(&y) && seen.insert(y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// Longest walk from `u` to `v` in an acyclic vertex set, by dynamic
/// programming in topological order.
fn longest_walk(d: &Digraph, u: usize, v: usize, set: &BTreeSet<usize>) -> Vec<usize> {
    let order = topological_order(d, set);
    let mut best: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    best.insert(u, (0, u));
    for &x in &order {
        let Some(&(lx, _)) = best.get(&x) else { continue };
        for &y in d.out(x) {
            if set.contains(&y) && best.get(&y).is_none_or(|&(ly, _)| lx + 1 > ly) {
                best.insert(y, (lx + 1, x));
            }
        }
    }
    let mut path = vec![v];
    let mut z = v;
    while z != u {
        z = best[&z].1;
        path.push(z);
    }
    path.reverse();
    path
}

fn topological_order(d: &Digraph, set: &BTreeSet<usize>) -> Vec<usize> {
    let mut indeg: BTreeMap<usize, usize> = set
        .iter()
        .map(|&v| (v, d.inn(v).iter().filter(|w| set.contains(w)).count()))
        .collect();
    let mut queue: VecDeque<usize> = set.iter().copied().filter(|v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(set.len());
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in d.out(x) {
            if let Some(e) = indeg.get_mut(&y) {
                *e -= 1;
                if *e == 0 {
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Whether all directed walks from `u` to `v` in the ball have one length.
/// Closed walks count, so a directed cycle on the way makes the lengths
/// differ. Exact on the ball; a counterexample is a counterexample in the
/// parent graph.
pub fn path_length_uniformity(ball: &FiniteBall, u: usize, v: usize) -> Result<CheckReport> {
    let d = ball.graph();
    for x in [u, v] {
        if !d.contains(x) {
            return Err(Error::UnknownVertex(x));
        }
    }
    let set = between(d, u, v);
    let report = |verdict| CheckReport::new("path-length", verdict, CheckParams::default());
    if set.is_empty() {
        return Ok(report(Verdict::ExactTrue).note("no directed walk joins the pair"));
    }
    let sub = d.induced_subdigraph(&set)?;
    let stats = CheckStats {
        instances: 1,
        ..CheckStats::default()
    };
    if let Some(cycle) = has_directed_cycle(&sub) {
        let c = cycle[0];
        let first = shortest_walk(d, u, v, &set).expect("walk exists");
        let mut second = shortest_walk(d, u, c, &set).expect("walk exists");
        second.extend_from_slice(&cycle[1..]);
        second.extend_from_slice(&shortest_walk(d, c, v, &set).expect("walk exists")[1..]);
        return Ok(report(Verdict::ExactFalse)
            .with_witness(Witness::Walks { first, second })
            .with_stats(CheckStats { failures: 1, ..stats }));
    }
    let first = shortest_walk(d, u, v, &set).expect("walk exists");
    let second = longest_walk(d, u, v, &set);
    if first.len() == second.len() {
        Ok(report(Verdict::ExactTrue)
            .with_stats(stats)
            .note(format!("common length {}", first.len() - 1)))
    } else {
        Ok(report(Verdict::ExactFalse)
            .with_witness(Witness::Walks { first, second })
            .with_stats(CheckStats { failures: 1, ..stats }))
    }
}

/// Runs [`path_length_uniformity`] over every ordered pair of interior
/// vertices joined by a directed walk. Stops at the first failure.
pub fn path_length_uniformity_all(ball: &FiniteBall) -> Result<CheckReport> {
    let d = ball.graph();
    let name = "path-length";
    if let Some(cycle) = has_directed_cycle(d) {
        return Ok(CheckReport::new(name, Verdict::ExactFalse, CheckParams::default())
            .with_witness(Witness::Walks {
                first: vec![cycle[0]],
                second: cycle,
            })
            .with_stats(CheckStats {
                failures: 1,
                ..CheckStats::default()
            }));
    }
    // acyclic: per source, min and max distances by topological DP
    let order = topological_order(d, &d.vertex_set());
    let interior: Vec<usize> = ball.interior().iter().copied().collect();
    let failure = interior.par_iter().find_map_first(|&u| {
        let mut span: BTreeMap<usize, (usize, usize)> = BTreeMap::from([(u, (0, 0))]);
        for &x in &order {
            let Some(&(lo, hi)) = span.get(&x) else { continue };
            for &y in d.out(x) {
                let e = span.entry(y).or_insert((lo + 1, hi + 1));
                e.0 = e.0.min(lo + 1);
                e.1 = e.1.max(hi + 1);
            }
        }
        span.iter()
            .find(|(v, (lo, hi))| lo != hi && ball.is_interior(**v))
            .map(|(&v, _)| (u, v))
    });
    let pairs: usize = interior
        .par_iter()
        .map(|&u| d_reach(d, u, true).iter().filter(|&&v| v != u && ball.is_interior(v)).count())
        .sum();
    match failure {
        Some((u, v)) => {
            let single = path_length_uniformity(ball, u, v)?;
            Ok(CheckReport {
                stats: CheckStats {
                    instances: pairs,
                    failures: 1,
                    ..CheckStats::default()
                },
                ..single
            })
        }
        None => Ok(CheckReport::new(name, Verdict::ExactTrue, CheckParams::default())
            .with_stats(CheckStats {
                instances: pairs,
                ..CheckStats::default()
            })
            .note("all interior pairs joined by a directed walk")),
    }
}

/// Closed walk in the underlying graph with orientation signs: `+1` when
/// the step follows an arc, `-1` when it goes against one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedWalk {
    pub walk: Vec<usize>,
    pub signs: Vec<i8>,
    pub sum: i64,
}

impl SignedWalk {
    /// Re-checks every step against `d` and recomputes the sum.
    pub fn verify(&self, d: &Digraph) -> bool {
        if self.walk.len() != self.signs.len() + 1 || self.walk.first() != self.walk.last() {
            return false;
        }
        let steps_ok = self.walk.windows(2).zip(&self.signs).all(|(w, &s)| match s {
            1 => d.has_arc(w[0], w[1]),
            -1 => d.has_arc(w[1], w[0]),
            _ => false,
        });
        let sum: i64 = self.signs.iter().map(|&s| s as i64).sum();
        steps_ok && sum == self.sum
    }

    pub fn into_witness(self) -> Witness {
        Witness::Unbalanced {
            walk: self.walk,
            signs: self.signs,
            sum: self.sum,
        }
    }
}

/// Candidate homomorphism onto the directed line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelFunction {
    pub levels: BTreeMap<usize, i64>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict_cycle: Option<SignedWalk>,
}

struct Potential {
    level: BTreeMap<usize, i64>,
    parent: BTreeMap<usize, usize>,
    depth: BTreeMap<usize, usize>,
}

fn potential(d: &Digraph, root: usize) -> Potential {
    let mut p = Potential {
        level: BTreeMap::from([(root, 0)]),
        parent: BTreeMap::new(),
        depth: BTreeMap::from([(root, 0)]),
    };
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let (lx, dx) = (p.level[&x], p.depth[&x]);
        let steps = d.out(x).iter().map(|&y| (y, 1)).chain(d.inn(x).iter().map(|&y| (y, -1)));
        for (y, s) in steps {
            if let std::collections::btree_map::Entry::Vacant(e) = p.level.entry(y) {
                e.insert(lx + s);
                p.depth.insert(y, dx + 1);
                p.parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    p
}

fn sign(d: &Digraph, a: usize, b: usize) -> i8 {
    if d.has_arc(a, b) {
        1
    } else {
        -1
    }
}

/// Closed walk through the tree paths to `a` and `b` plus the arc between
/// them, with the shared prefix trimmed.
fn signed_cycle(d: &Digraph, p: &Potential, a: usize, b: usize) -> SignedWalk {
    let cycle = close_cycle(&p.parent, &p.depth, a, b);
    let signs: Vec<i8> = cycle.windows(2).map(|w| sign(d, w[0], w[1])).collect();
    let sum = signs.iter().map(|&s| s as i64).sum();
    SignedWalk {
        walk: cycle,
        signs,
        sum,
    }
}

fn first_conflict(d: &Digraph, p: &Potential) -> Option<(usize, usize)> {
    d.arcs()
        .filter(|(a, b)| p.level.contains_key(a) && p.level.contains_key(b))
        .filter(|(a, b)| p.level[b] != p.level[a] + 1)
        .min_by_key(|(a, b)| (p.depth[a] + p.depth[b], *a, *b))
}

/// BFS potential (+1 along arcs, -1 against) from the ball center. When an
/// arc disagrees, a short unbalanced cycle is returned; it refutes
/// property Z for the parent graph. Consistency is evidence only.
pub fn level_assignment(ball: &FiniteBall) -> Result<LevelFunction> {
    let d = ball.graph();
    if !d.is_weakly_connected() {
        return Err(Error::input("level assignment needs a weakly connected ball"));
    }
    if d.is_empty() {
        return Ok(LevelFunction {
            levels: BTreeMap::new(),
            consistent: true,
            conflict_cycle: None,
        });
    }
    let root = if d.contains(ball.center()) {
        ball.center()
    } else {
        d.vertices().next().expect("non-empty")
    };
    let p = potential(d, root);
    if first_conflict(d, &p).is_none() {
        return Ok(LevelFunction {
            levels: p.level,
            consistent: true,
            conflict_cycle: None,
        });
    }
    // Each root's BFS tree closes a conflicting arc into an unbalanced
    // cycle; keep the shortest over all roots.
    let roots: Vec<usize> = d.vertices().collect();
    let best = roots
        .par_iter()
        .filter_map(|&r| {
            let q = potential(d, r);
            let (a, b) = first_conflict(d, &q)?;
            Some(signed_cycle(d, &q, a, b))
        })
        .min_by(|x, y| x.walk.len().cmp(&y.walk.len()).then_with(|| x.walk.cmp(&y.walk)))
        .expect("a conflict exists from every root");
    Ok(LevelFunction {
        levels: p.level,
        consistent: false,
        conflict_cycle: Some(best),
    })
}

/// Property Z as a report: `refuted` with an unbalanced cycle, else
/// `verified-at-scale`.
pub fn check_property_z(ball: &FiniteBall) -> Result<CheckReport> {
    let lf = level_assignment(ball)?;
    let stats = CheckStats {
        instances: ball.graph().arc_count(),
        ..CheckStats::default()
    };
    Ok(match lf.conflict_cycle {
        Some(c) => CheckReport::new("property-z", Verdict::Refuted, CheckParams::default())
            .with_witness(c.into_witness())
            .with_stats(CheckStats { failures: 1, ..stats }),
        None => CheckReport::new("property-z", Verdict::VerifiedAtScale, CheckParams::default()).with_stats(stats),
    })
}

/// Directed triangles through a vertex and the neighbours they miss.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TriangleProfile {
    pub center: usize,
    /// `[center, out-neighbour, in-neighbour]` for each directed triangle.
    pub triangles: Vec<[usize; 3]>,
    /// Neighbours of the center in no triangle with it.
    pub residue: BTreeSet<usize>,
    /// Arcs between neighbours that are not triangle arcs.
    pub extra_arcs: Vec<(usize, usize)>,
    /// Triangles pairwise meet only in the center.
    pub pairwise_disjoint: bool,
}

pub fn triangle_profile(ball: &FiniteBall, u: usize) -> Result<TriangleProfile> {
    let d = ball.graph();
    if !d.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    if !ball.is_interior(u) {
        return Err(Error::input(format!("vertex {u} is not interior")));
    }
    let mut triangles = Vec::new();
    for &a in d.out(u) {
        for &b in d.out(a) {
            if d.has_arc(b, u) {
                triangles.push([u, a, b]);
            }
        }
    }
    let mut covered = BTreeSet::new();
    let mut pairwise_disjoint = true;
    for t in &triangles {
        for &x in &t[1..] {
            pairwise_disjoint &= covered.insert(x);
        }
    }
    let nbrs: BTreeSet<usize> = d.undirected_neighbors(u).into_iter().collect();
    let residue = nbrs.difference(&covered).copied().collect();
    let tri_arcs: BTreeSet<(usize, usize)> = triangles.iter().map(|t| (t[1], t[2])).collect();
    let extra_arcs = nbrs
        .iter()
        .flat_map(|&a| d.out(a).iter().map(move |&b| (a, b)))
        .filter(|(_, b)| nbrs.contains(b))
        .filter(|arc| !tri_arcs.contains(arc))
        .collect();
    Ok(TriangleProfile {
        center: u,
        triangles,
        residue,
        extra_arcs,
        pairwise_disjoint,
    })
}

/// Components of the ball minus `cut` that contain a non-interior vertex.
/// A lower-bound proxy for the ends separated by the cut, not an end count.
pub fn ends_probe(ball: &FiniteBall, cut: &BTreeSet<usize>) -> usize {
    let d = ball.graph();
    let rest: BTreeSet<usize> = d.vertices().filter(|v| !cut.contains(v)).collect();
    let Ok(sub) = d.induced_subdigraph(&rest) else {
        return 0;
    };
    sub.weak_components()
        .iter()
        .filter(|c| c.iter().any(|&v| !ball.is_interior(v)))
        .count()
}
