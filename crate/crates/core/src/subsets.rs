//! Enumeration of connected vertex subsets (ESU-style, no duplicates).

use std::collections::{BTreeSet, HashMap};

use crate::digraph::Digraph;

struct Frame {
    subset: Vec<usize>,
    ext: Vec<usize>,
}

/// Iterator over connected vertex sets of size at most `max_size` that
/// meet a set of allowed roots. Each set is produced once, from its
/// smallest vertex in an order that ranks the allowed roots first.
pub struct ConnectedSubsets<'a> {
    d: &'a Digraph,
    max_size: usize,
    rank: HashMap<usize, usize>,
    roots: Vec<usize>,
    next_root: usize,
    stack: Vec<Frame>,
}

impl<'a> ConnectedSubsets<'a> {
    fn rank(&self, v: usize) -> usize {
        self.rank[&v]
    }

    fn root_of(&self, subset: &[usize]) -> usize {
        subset[0]
    }
}

impl Iterator for ConnectedSubsets<'_> {
    type Item = BTreeSet<usize>;

    fn next(&mut self) -> Option<BTreeSet<usize>> {
        loop {
            if let Some(top) = self.stack.last_mut() {
                let Some(w) = top.ext.pop() else {
                    self.stack.pop();
                    continue;
                };
                let subset = top.subset.clone();
                let mut ext = top.ext.clone();
                let root_rank = self.rank(self.root_of(&subset));
                for u in self.d.undirected_neighbors(w) {
                    if self.rank(u) > root_rank
                        && !subset.contains(&u)
                        && u != w
                        && !ext.contains(&u)
                        && !subset.iter().any(|&s| self.d.adjacent(s, u))
                    {
                        ext.push(u);
                    }
                }
                let mut grown = subset;
                grown.push(w);
                let out: BTreeSet<usize> = grown.iter().copied().collect();
                if grown.len() < self.max_size {
                    self.stack.push(Frame { subset: grown, ext });
                }
                return Some(out);
            }
            let &v = self.roots.get(self.next_root)?;
            self.next_root += 1;
            if self.max_size > 1 {
                let rv = self.rank(v);
                let mut ext: Vec<usize> = self
                    .d
                    .undirected_neighbors(v)
                    .into_iter()
                    .filter(|&u| self.rank(u) > rv)
                    .collect();
                ext.reverse();
                self.stack.push(Frame {
                    subset: vec![v],
                    ext,
                });
            }
            return Some(BTreeSet::from([v]));
        }
    }
}

/// Connected induced subdigraphs (as vertex sets) with at most `max_size`
/// vertices meeting `allowed_roots`. Roots outside `d` are ignored.
pub fn enumerate_connected_subdigraphs<'a>(
    d: &'a Digraph,
    max_size: usize,
    allowed_roots: &BTreeSet<usize>,
) -> ConnectedSubsets<'a> {
    let roots: Vec<usize> = allowed_roots.iter().copied().filter(|&v| d.contains(v)).collect();
    let mut rank = HashMap::new();
    for &v in &roots {
        let next = rank.len();
        rank.insert(v, next);
    }
    for v in d.vertices() {
        let next = rank.len();
        rank.entry(v).or_insert(next);
    }
    ConnectedSubsets {
        d,
        max_size,
        rank,
        roots: if max_size == 0 { Vec::new() } else { roots },
        next_root: 0,
        stack: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(d: &Digraph, k: usize) -> usize {
        enumerate_connected_subdigraphs(d, k, &d.vertex_set()).count()
    }

    #[test]
    fn triangle_counts() {
        let d3 = Digraph::directed_cycle(3).unwrap();
        assert_eq!(count(&d3, 2), 6);
        assert_eq!(count(&d3, 3), 7);
    }

    #[test]
    fn k22_pairs() {
        let k22 = Digraph::from_arcs([(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(count(&k22, 2), 8);
    }

    #[test]
    fn restricted_roots_only_yield_meeting_sets() {
        let p = Digraph::directed_path(4);
        let roots = BTreeSet::from([2]);
        let sets: Vec<_> = enumerate_connected_subdigraphs(&p, 5, &roots).collect();
        assert!(sets.iter().all(|s| s.contains(&2)));
        // intervals of 0..=4 containing 2: 3 choices of left end * 3 of right
        assert_eq!(sets.len(), 9);
    }
}
