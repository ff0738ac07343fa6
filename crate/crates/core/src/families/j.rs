//! `J(r)`: vertex set `Z × {1..r}` with arcs `(i,x) → (i+1,y)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::ball::{FiniteBall, LabeledBall};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Id of `(level, x)` in a segment with extent `m` and fibre size `r`
/// (`x` is 1-based).
pub fn j_vertex(r: usize, m: usize, level: i64, x: usize) -> usize {
    (level + m as i64) as usize * r + (x - 1)
}

/// Levels `-m..=m`; levels strictly inside are interior. The center is
/// `(0,1)`.
pub fn make_j_segment(r: usize, m: usize) -> Result<LabeledBall> {
    if r == 0 || m == 0 {
        return Err(Error::input("j segment needs r >= 1 and m >= 1"));
    }
    let mi = m as i64;
    let vertices = (0..(2 * m + 1) * r).collect::<Vec<_>>();
    let mut arcs = Vec::new();
    for level in -mi..mi {
        for x in 1..=r {
            for y in 1..=r {
                arcs.push((j_vertex(r, m, level, x), j_vertex(r, m, level + 1, y)));
            }
        }
    }
    let graph = Digraph::new(vertices, arcs)?;
    let mut labels = BTreeMap::new();
    let mut interior = BTreeSet::new();
    for level in -mi..=mi {
        for x in 1..=r {
            let v = j_vertex(r, m, level, x);
            labels.insert(v, format!("({level},{x})"));
            if level.abs() < mi {
                interior.insert(v);
            }
        }
    }
    let center = j_vertex(r, m, 0, 1);
    let radius = graph.bfs_distances([center]).values().copied().max().unwrap_or(0);
    LabeledBall::new(FiniteBall::from_parts(graph, center, radius, interior)?, labels)
}
