//! `Y_n`: alternating `2n`-cycles glued at antipodal vertex pairs so that
//! every vertex lies in exactly two cycles with opposite roles.

use std::collections::{BTreeMap, BTreeSet};

use crate::ball::{ball, FiniteBall, LabeledBall};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Where the fresh vertices of a glued cycle go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum YGluing {
    /// The parent's `u` sits at position 0, `v` at `n`, fresh vertices fill
    /// the positions in increasing order.
    #[default]
    Standard,
    /// As `Standard`, with positions read in the opposite direction.
    Reflected,
}

struct Cycle {
    vertices: Vec<usize>,
    /// Position `p` is a source iff `p % 2 == source_parity`.
    source_parity: usize,
}

impl Cycle {
    fn is_source(&self, p: usize) -> bool {
        p % 2 == self.source_parity
    }
}

struct Built {
    graph: Digraph,
    interior: BTreeSet<usize>,
    labels: BTreeMap<usize, String>,
}

fn build(n: usize, generations: usize, gluing: YGluing) -> Result<Built> {
    let len = 2 * n;
    let mut next_id = 0;
    let mut fresh = |k: usize| {
        let v: Vec<usize> = (next_id..next_id + k).collect();
        next_id += k;
        v
    };
    let mut cycles = vec![Cycle {
        vertices: fresh(len),
        source_parity: 0,
    }];
    // (cycle, first free pair index)
    let mut frontier = vec![(0usize, 0usize)];
    for _ in 0..generations {
        let mut next = Vec::new();
        for &(ci, first_pair) in &frontier {
            for j in first_pair..n {
                let (u, v) = (cycles[ci].vertices[j], cycles[ci].vertices[j + n]);
                let u_was_source = cycles[ci].is_source(j);
                let f = fresh(len - 2);
                let mut vs = Vec::with_capacity(len);
                vs.push(u);
                vs.extend_from_slice(&f[..n - 1]);
                vs.push(v);
                vs.extend_from_slice(&f[n - 1..]);
                if gluing == YGluing::Reflected {
                    vs = (0..len).map(|p| vs[(len - p) % len]).collect();
                }
                next.push((cycles.len(), 1));
                cycles.push(Cycle {
                    vertices: vs,
                    source_parity: usize::from(u_was_source),
                });
            }
        }
        frontier = next;
    }
    let mut arcs = Vec::new();
    let mut count = vec![0usize; next_id];
    let mut labels = BTreeMap::new();
    for (ci, c) in cycles.iter().enumerate() {
        for (p, &w) in c.vertices.iter().enumerate() {
            count[w] += 1;
            labels.entry(w).or_insert_with(|| format!("c{ci}p{p}"));
            if c.is_source(p) {
                arcs.push((w, c.vertices[(p + 1) % len]));
                arcs.push((w, c.vertices[(p + len - 1) % len]));
            }
        }
    }
    let graph = Digraph::new(0..next_id, arcs)?;
    let interior = (0..next_id).filter(|&v| count[v] == 2).collect();
    Ok(Built {
        graph,
        interior,
        labels,
    })
}

/// `Y_n` after `depth` gluing generations, centred at the first vertex of
/// the initial cycle. Interior vertices are those lying in two cycles.
pub fn make_y_ball(n: usize, depth: usize) -> Result<LabeledBall> {
    make_y_ball_with(n, depth, YGluing::Standard)
}

pub fn make_y_ball_with(n: usize, depth: usize, gluing: YGluing) -> Result<LabeledBall> {
    if n < 3 {
        return Err(Error::input("y(n) needs n >= 3"));
    }
    if depth == 0 {
        return Err(Error::input("y(n) needs at least one gluing generation"));
    }
    let b = build(n, depth, gluing)?;
    let radius = b.graph.bfs_distances([0]).values().copied().max().unwrap_or(0);
    LabeledBall::new(FiniteBall::from_parts(b.graph, 0, radius, b.interior)?, b.labels)
}

/// Radius-`r` ball of `Y_n` around the same center, grown until every
/// vertex at distance `< r` is complete.
pub fn make_y_ball_radius(n: usize, r: usize) -> Result<LabeledBall> {
    if n < 3 {
        return Err(Error::input("y(n) needs n >= 3"));
    }
    for generations in 1..=2 * r + 2 {
        let b = build(n, generations, YGluing::Standard)?;
        let inner = ball(&b.graph, 0, r)?;
        if inner.interior().is_subset(&b.interior) {
            let keep = inner.graph().vertex_set();
            let labels = b.labels.into_iter().filter(|(v, _)| keep.contains(v)).collect();
            return LabeledBall::new(inner, labels);
        }
    }
    Err(Error::Construction(format!("y({n}) ball of radius {r} did not stabilise")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn interior_degrees_are_two() {
        let y = make_y_ball(5, 2).unwrap();
        assert!(!y.ball.interior().is_empty());
        for &v in y.ball.interior() {
            assert_eq!(y.ball.graph().out(v).len(), 2);
            assert_eq!(y.ball.graph().inn(v).len(), 2);
        }
    }

    #[test]
    fn vertex_count() {
        // 2n + n(2n-2) + n(n-1)(2n-2)
        let y = make_y_ball(3, 2).unwrap();
        assert_eq!(y.ball.graph().vertex_count(), 6 + 12 + 24);
    }

    #[test]
    fn gluing_convention_does_not_matter() {
        for n in [3, 4] {
            let a = make_y_ball_with(n, 2, YGluing::Standard).unwrap();
            let b = make_y_ball_with(n, 2, YGluing::Reflected).unwrap();
            assert!(are_isomorphic(a.ball.graph(), b.ball.graph()));
        }
    }

    #[test]
    fn radius_ball_is_complete_inside() {
        let y = make_y_ball_radius(4, 3).unwrap();
        for v in y.ball.graph().vertices() {
            if y.ball.depth(v).unwrap() < 3 {
                assert!(y.ball.is_interior(v));
                assert_eq!(y.ball.graph().degree(v), 4);
            }
        }
    }
}
