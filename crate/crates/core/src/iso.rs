//! Backtracking isomorphism search.
//!
//! Plain depth-first matching with degree and orientation pruning. Pattern
//! vertices are matched in a connectivity-first order so that, past the
//! first vertex of each component, candidates always come from the
//! neighbourhood of an already matched vertex. Everything iterates in
//! sorted id order, so results are reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, MixedGraph};
use crate::error::{Error, Result};

const UNMAPPED: u32 = u32::MAX;

/// Injective vertex map that preserves and reflects arcs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IsoMap {
    pairs: BTreeMap<usize, usize>,
}

impl IsoMap {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        IsoMap {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn identity(vertices: impl IntoIterator<Item = usize>) -> Self {
        IsoMap::new(vertices.into_iter().map(|v| (v, v)))
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.pairs.get(&v).copied()
    }

    pub fn pairs(&self) -> &BTreeMap<usize, usize> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.pairs.keys().copied().collect()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.pairs.values().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.pairs.len()
    }

    pub fn inverse(&self) -> IsoMap {
        IsoMap::new(self.pairs.iter().map(|(&a, &b)| (b, a)))
    }

    /// `other ∘ self`, defined where `self`'s image meets `other`'s domain.
    pub fn then(&self, other: &IsoMap) -> IsoMap {
        IsoMap::new(
            self.pairs
                .iter()
                .filter_map(|(&a, &b)| other.get(b).map(|c| (a, c))),
        )
    }

    /// Checks that the map is an isomorphism `⟨domain⟩_from → ⟨image⟩_to`.
    pub fn is_isomorphism_between(&self, from: &Digraph, to: &Digraph) -> bool {
        if !self.is_injective() {
            return false;
        }
        self.pairs.iter().all(|(&a, &b)| from.contains(a) && to.contains(b))
            && self.pairs.iter().all(|(&a, &fa)| {
                self.pairs
                    .iter()
                    .all(|(&c, &fc)| from.has_arc(a, c) == to.has_arc(fa, fc))
            })
    }

    /// Isomorphism between two induced subdigraphs of the same digraph.
    pub fn is_partial_automorphism(&self, d: &Digraph) -> bool {
        self.is_isomorphism_between(d, d)
    }
}

/// Dense-index view of a relation used by the searches. Undirected edges
/// appear as arcs in both directions.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub ids: Vec<usize>,
    pub index: HashMap<usize, u32>,
    pub out: Vec<Vec<u32>>,
    pub inn: Vec<Vec<u32>>,
    pub color: Vec<u32>,
}

impl Dense {
    fn from_relation(
        vertices: impl IntoIterator<Item = usize>,
        succ: impl Fn(usize) -> Vec<usize>,
    ) -> Dense {
        let ids: Vec<usize> = vertices.into_iter().collect();
        let index: HashMap<usize, u32> = ids.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let n = ids.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (i, &v) in ids.iter().enumerate() {
            for w in succ(v) {
                if let Some(&j) = index.get(&w) {
                    out[i].push(j);
                    inn[j as usize].push(i as u32);
                }
            }
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        Dense {
            ids,
            index,
            out,
            inn,
            color: vec![0; n],
        }
    }

    pub fn of_digraph(d: &Digraph) -> Dense {
        Dense::from_relation(d.vertices(), |v| d.out(v).to_vec())
    }

    /// Induced on `subset` (ids absent from `d` are ignored).
    pub fn of_induced(d: &Digraph, subset: &BTreeSet<usize>) -> Dense {
        Dense::from_relation(subset.iter().copied().filter(|&v| d.contains(v)), |v| {
            d.out(v).to_vec()
        })
    }

    pub fn of_mixed(m: &MixedGraph) -> Dense {
        Dense::from_relation(m.vertices(), |v| m.successors(v))
    }

    pub fn with_colors(mut self, color: impl Fn(usize) -> u32) -> Dense {
        self.color = self.ids.iter().map(|&v| color(v)).collect();
        self
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    fn has(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    fn degree_profile(&self) -> Vec<(u32, usize, usize)> {
        let mut p: Vec<_> = (0..self.len())
            .map(|i| (self.color[i], self.out[i].len(), self.inn[i].len()))
            .collect();
        p.sort_unstable();
        p
    }
}

#[derive(Clone, Copy)]
enum Anchor {
    Root,
    /// Candidate images are successors of the image of this pattern vertex.
    Out(u32),
    /// Candidate images are predecessors of the image of this pattern vertex.
    In(u32),
}

/// Match every pattern vertex into the target.
///
/// With `bijective`, the pattern and the allowed target set must have equal
/// size and in/out degrees must agree exactly; otherwise the search looks for
/// induced embeddings and only requires the target degree to dominate.
pub(crate) struct Matcher<'a> {
    p: &'a Dense,
    t: &'a Dense,
    allowed: Option<&'a [bool]>,
    bijective: bool,
    order: Vec<u32>,
    anchors: Vec<Anchor>,
    fixed: usize,
    map: Vec<u32>,
    inv: Vec<u32>,
}

impl<'a> Matcher<'a> {
    /// Returns `None` when the seed itself is inconsistent.
    pub fn new(
        p: &'a Dense,
        t: &'a Dense,
        seed: &[(u32, u32)],
        allowed: Option<&'a [bool]>,
        bijective: bool,
    ) -> Option<Self> {
        let n = p.len();
        let mut m = Matcher {
            p,
            t,
            allowed,
            bijective,
            order: Vec::with_capacity(n),
            anchors: Vec::with_capacity(n),
            fixed: 0,
            map: vec![UNMAPPED; n],
            inv: vec![UNMAPPED; t.len()],
        };
        for &(a, b) in seed {
            if m.map[a as usize] != UNMAPPED || !m.feasible(a, b) {
                return None;
            }
            m.assign(a, b);
            m.order.push(a);
            m.anchors.push(Anchor::Root);
        }
        m.fixed = m.order.len();
        m.build_order();
        Some(m)
    }

    fn build_order(&mut self) {
        let n = self.p.len();
        let mut placed = vec![false; n];
        for &v in &self.order {
            placed[v as usize] = true;
        }
        // links[v] = number of placed neighbours; the unplaced vertex with
        // most placed neighbours goes next, ties by index.
        let mut links = vec![0usize; n];
        for &v in &self.order {
            for &w in self.p.out[v as usize].iter().chain(&self.p.inn[v as usize]) {
                links[w as usize] += 1;
            }
        }
        while self.order.len() < n {
            let next = (0..n as u32)
                .filter(|&v| !placed[v as usize])
                .max_by_key(|&v| (links[v as usize], std::cmp::Reverse(v)))
                .unwrap();
            let anchor = if links[next as usize] == 0 {
                Anchor::Root
            } else {
                let pi = next as usize;
                if let Some(&q) = self.p.inn[pi].iter().find(|&&q| placed[q as usize]) {
                    Anchor::Out(q)
                } else {
                    let &q = self.p.out[pi].iter().find(|&&q| placed[q as usize]).unwrap();
                    Anchor::In(q)
                }
            };
            placed[next as usize] = true;
            for &w in self.p.out[next as usize].iter().chain(&self.p.inn[next as usize]) {
                links[w as usize] += 1;
            }
            self.order.push(next);
            self.anchors.push(anchor);
        }
    }

    fn assign(&mut self, a: u32, b: u32) {
        self.map[a as usize] = b;
        self.inv[b as usize] = a;
    }

    fn unassign(&mut self, a: u32) {
        let b = self.map[a as usize];
        self.map[a as usize] = UNMAPPED;
        self.inv[b as usize] = UNMAPPED;
    }

    fn feasible(&self, a: u32, b: u32) -> bool {
        let (ai, bi) = (a as usize, b as usize);
        if self.inv[bi] != UNMAPPED || self.p.color[ai] != self.t.color[bi] {
            return false;
        }
        if let Some(allowed) = self.allowed {
            if !allowed[bi] {
                return false;
            }
        }
        let (po, pi, to, ti) = (&self.p.out[ai], &self.p.inn[ai], &self.t.out[bi], &self.t.inn[bi]);
        if self.bijective {
            if self.allowed.is_none() && (po.len() != to.len() || pi.len() != ti.len()) {
                return false;
            }
        } else if po.len() > to.len() || pi.len() > ti.len() {
            return false;
        }
        let mut mapped_out = 0;
        for &q in po {
            let fq = self.map[q as usize];
            if fq != UNMAPPED {
                if !self.t.has(b, fq) {
                    return false;
                }
                mapped_out += 1;
            }
        }
        let mut mapped_in = 0;
        for &q in pi {
            let fq = self.map[q as usize];
            if fq != UNMAPPED {
                if !self.t.has(fq, b) {
                    return false;
                }
                mapped_in += 1;
            }
        }
        let used_out = to.iter().filter(|&&w| self.inv[w as usize] != UNMAPPED).count();
        let used_in = ti.iter().filter(|&&w| self.inv[w as usize] != UNMAPPED).count();
        used_out == mapped_out && used_in == mapped_in
    }

    fn candidates(&self, pos: usize) -> Vec<u32> {
        match self.anchors[pos] {
            Anchor::Root => (0..self.t.len() as u32).collect(),
            Anchor::Out(q) => self.t.out[self.map[q as usize] as usize].clone(),
            Anchor::In(q) => self.t.inn[self.map[q as usize] as usize].clone(),
        }
    }

    /// Runs the search, calling `visit` on each complete map (pattern index
    /// to target index). `visit` returns `false` to stop.
    pub fn run(&mut self, mut visit: impl FnMut(&[u32]) -> bool) {
        let n = self.p.len();
        if self.fixed == n {
            visit(&self.map);
            return;
        }
        let start = self.fixed;
        let mut cand: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut next = vec![0usize; n];
        let mut pos = start;
        cand[pos] = self.candidates(pos);
        loop {
            let p = self.order[pos];
            let mut advanced = false;
            while next[pos] < cand[pos].len() {
                let c = cand[pos][next[pos]];
                next[pos] += 1;
                if self.feasible(p, c) {
                    self.assign(p, c);
                    advanced = true;
                    break;
                }
            }
            if advanced {
                if pos + 1 == n {
                    if !visit(&self.map) {
                        return;
                    }
                    self.unassign(p);
                    continue;
                }
                pos += 1;
                cand[pos] = self.candidates(pos);
                next[pos] = 0;
                continue;
            }
            if pos == start {
                return;
            }
            pos -= 1;
            self.unassign(self.order[pos]);
        }
    }
}

fn to_isomap(p: &Dense, t: &Dense, map: &[u32]) -> IsoMap {
    IsoMap::new(
        map.iter()
            .enumerate()
            .map(|(i, &j)| (p.ids[i], t.ids[j as usize])),
    )
}

/// All isomorphisms `p -> t` up to `limit`, in search order.
pub(crate) fn dense_isomorphisms(p: &Dense, t: &Dense, limit: usize) -> Vec<IsoMap> {
    if limit == 0 || p.len() != t.len() || p.degree_profile() != t.degree_profile() {
        return Vec::new();
    }
    let mut found = Vec::new();
    if let Some(mut m) = Matcher::new(p, t, &[], None, true) {
        m.run(|map| {
            found.push(to_isomap(p, t, map));
            found.len() < limit
        });
    }
    found
}

/// Up to `limit` isomorphisms `d1 -> d2`. With `limit >= 1` an empty
/// result means the digraphs are not isomorphic.
pub fn find_isomorphisms(d1: &Digraph, d2: &Digraph, limit: usize) -> Vec<IsoMap> {
    if d1.arc_count() != d2.arc_count() {
        return Vec::new();
    }
    dense_isomorphisms(&Dense::of_digraph(d1), &Dense::of_digraph(d2), limit)
}

pub fn are_isomorphic(d1: &Digraph, d2: &Digraph) -> bool {
    !find_isomorphisms(d1, d2, 1).is_empty()
}

/// Isomorphisms of mixed graphs (undirected edges map to undirected edges).
pub fn find_mixed_isomorphisms(g1: &MixedGraph, g2: &MixedGraph, limit: usize) -> Vec<IsoMap> {
    if g1.arcs().len() != g2.arcs().len() || g1.edges().len() != g2.edges().len() {
        return Vec::new();
    }
    dense_isomorphisms(&Dense::of_mixed(g1), &Dense::of_mixed(g2), limit)
}

/// Induced embeddings of `pattern` into `host` (mixed graphs), extending
/// nothing. Used to recognise fragments of infinite graphs.
pub fn find_mixed_embedding(pattern: &MixedGraph, host: &MixedGraph) -> Option<IsoMap> {
    let p = Dense::of_mixed(pattern);
    let t = Dense::of_mixed(host);
    let mut found = None;
    if let Some(mut m) = Matcher::new(&p, &t, &[], None, false) {
        m.run(|map| {
            found = Some(to_isomap(&p, &t, map));
            false
        });
    }
    found
}

/// All automorphisms of `d`.
pub fn automorphisms(d: &Digraph) -> Vec<IsoMap> {
    find_isomorphisms(d, d, usize::MAX)
}

fn check_partial(d: &Digraph, phi: &IsoMap) -> Result<()> {
    for (&a, &b) in phi.pairs() {
        for v in [a, b] {
            if !d.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
    }
    if !phi.is_partial_automorphism(d) {
        return Err(Error::input(
            "map is not an isomorphism between induced subdigraphs",
        ));
    }
    Ok(())
}

/// Extends `phi` to an isomorphism defined on all of `domain_target` whose
/// image is any vertex set of `d`. The search is exhaustive.
pub fn extend_isomorphism(
    d: &Digraph,
    phi: &IsoMap,
    domain_target: &BTreeSet<usize>,
) -> Result<Option<IsoMap>> {
    extend_isomorphism_within(d, phi, domain_target, None)
}

/// Like [`extend_isomorphism`], but the image must lie in `codomain`. When
/// `codomain` has the size of `domain_target` the result is a bijection
/// between the two induced subdigraphs.
pub fn extend_isomorphism_within(
    d: &Digraph,
    phi: &IsoMap,
    domain_target: &BTreeSet<usize>,
    codomain: Option<&BTreeSet<usize>>,
) -> Result<Option<IsoMap>> {
    check_partial(d, phi)?;
    if let Some(&v) = domain_target.iter().find(|v| !d.contains(**v)) {
        return Err(Error::UnknownVertex(v));
    }
    if !phi.domain().is_subset(domain_target) {
        return Err(Error::input("domain of the map is not inside the target domain"));
    }
    if let Some(cod) = codomain {
        if !phi.image().is_subset(cod) || cod.len() < domain_target.len() {
            return Ok(None);
        }
    }
    let p = Dense::of_induced(d, domain_target);
    Ok(match codomain {
        Some(cod) => {
            let t = Dense::of_induced(d, cod);
            extend_dense(&p, &t, phi, None, cod.len() == domain_target.len())
        }
        None => {
            let t = Dense::of_digraph(d);
            extend_dense(&p, &t, phi, None, false)
        }
    })
}

pub(crate) fn extend_dense(
    p: &Dense,
    t: &Dense,
    phi: &IsoMap,
    allowed: Option<&[bool]>,
    bijective: bool,
) -> Option<IsoMap> {
    let mut seed = Vec::with_capacity(phi.len());
    for (&a, &b) in phi.pairs() {
        seed.push((*p.index.get(&a)?, *t.index.get(&b)?));
    }
    if bijective && p.len() == t.len() {
        // Degrees within the two induced subgraphs must agree exactly.
        let pd = p.degree_profile();
        let td = t.degree_profile();
        if pd != td {
            return None;
        }
    }
    let mut m = Matcher::new(p, t, &seed, allowed, false)?;
    let mut found = None;
    m.run(|map| {
        found = Some(to_isomap(p, t, map));
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Digraph {
        Digraph::directed_cycle(3).unwrap()
    }

    fn all_bijections(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..n {
                if !cur.contains(&v) {
                    cur.push(v);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn triangle_has_three_automorphisms() {
        assert_eq!(automorphisms(&d3()).len(), 3);
    }

    #[test]
    fn triangle_to_reversed_triangle_brute_force() {
        let d = d3();
        let r = d.reversed();
        let brute = all_bijections(3)
            .into_iter()
            .filter(|p| d.arcs().all(|(u, v)| r.has_arc(p[u], p[v])))
            .count();
        assert_eq!(brute, 3);
        assert_eq!(find_isomorphisms(&d, &r, usize::MAX).len(), brute);
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let k22 = Digraph::from_arcs([(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(find_isomorphisms(&k22, &d3(), 5).is_empty());
    }

    #[test]
    fn limit_caps_output() {
        let k22 = Digraph::from_arcs([(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(automorphisms(&k22).len(), 4);
        assert_eq!(find_isomorphisms(&k22, &k22, 2).len(), 2);
        assert!(find_isomorphisms(&k22, &k22, 0).is_empty());
    }

    #[test]
    fn identity_extends_in_vertex_transitive_graph() {
        let d = d3();
        let ext = extend_isomorphism(&d, &IsoMap::identity([0]), &[0, 1, 2].into())
            .unwrap()
            .unwrap();
        assert!(ext.is_partial_automorphism(&d));
        assert_eq!(ext.get(0), Some(0));
    }

    #[test]
    fn path_edge_swap_has_no_part_preserving_extension() {
        // P4 a-b-c-d oriented X -> Y with X = {a, c}, Y = {b, d}.
        let (a, b, c, dd) = (0, 1, 2, 3);
        let p4 = Digraph::from_arcs([(a, b), (c, b), (c, dd)]).unwrap();
        let phi = IsoMap::new([(c, c), (b, dd)]);
        assert!(phi.is_partial_automorphism(&p4));
        let all = p4.vertex_set();
        let ext = extend_isomorphism_within(&p4, &phi, &all, Some(&all)).unwrap();
        assert_eq!(ext, None);
    }

    #[test]
    fn extension_rejects_non_isomorphism() {
        let d = d3();
        let bad = IsoMap::new([(0, 0), (1, 2)]);
        assert!(matches!(
            extend_isomorphism(&d, &bad, &d.vertex_set()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn mixed_isomorphism_respects_edge_type() {
        let a = MixedGraph::new([0, 1, 2], [(0, 1)], [(1, 2)]).unwrap();
        let b = MixedGraph::new([5, 6, 7], [(7, 6)], [(5, 6)]).unwrap();
        let c = MixedGraph::new([5, 6, 7], [(7, 6), (5, 6)], []).unwrap();
        assert_eq!(find_mixed_isomorphisms(&a, &b, 5).len(), 1);
        assert!(find_mixed_isomorphisms(&a, &c, 5).is_empty());
    }
}
