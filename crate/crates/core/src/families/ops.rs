//! Digraph operators: line digraph, tensor product, matching contraction
//! and the clique expansion of a free-product Cayley graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::ball::{FiniteBall, LabeledBall, LabeledMixedBall};
use crate::digraph::{Digraph, MixedGraph};
use crate::error::{Error, Result};
use crate::families::cayley::Word;

/// `L(D)`: one vertex per arc (numbered in lexicographic arc order) and an
/// arc `(u,v) → (v,w)` for every 2-arc.
pub fn line_digraph(d: &Digraph) -> Digraph {
    line_digraph_indexed(d).0
}

fn line_digraph_indexed(d: &Digraph) -> (Digraph, Vec<(usize, usize)>) {
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    let index: BTreeMap<(usize, usize), usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut line_arcs = Vec::new();
    for (i, &(_, v)) in arcs.iter().enumerate() {
        for &w in d.out(v) {
            line_arcs.push((i, index[&(v, w)]));
        }
    }
    let g = Digraph::new(0..arcs.len(), line_arcs).expect("line digraph of a digraph is a digraph");
    (g, arcs)
}

/// Line digraph of a ball. An arc-vertex `(u,v)` is interior when both `u`
/// and `v` are; the center is the first arc leaving the old center.
pub fn line_ball(b: &LabeledBall) -> Result<LabeledBall> {
    let (g, arcs) = line_digraph_indexed(b.ball.graph());
    let c = b.ball.center();
    let center = arcs
        .iter()
        .position(|&(u, v)| u == c && b.ball.is_interior(v))
        .or_else(|| arcs.iter().position(|&(u, _)| u == c))
        .ok_or_else(|| Error::Construction("the center has no out-arc".into()))?;
    let interior = arcs
        .iter()
        .enumerate()
        .filter(|(_, (u, v))| b.ball.is_interior(*u) && b.ball.is_interior(*v))
        .map(|(i, _)| i)
        .collect();
    let labels = arcs
        .iter()
        .enumerate()
        .map(|(i, (u, v))| (i, format!("{}->{}", b.labels[u], b.labels[v])))
        .collect();
    let radius = g.bfs_distances([center]).values().copied().max().unwrap_or(0);
    LabeledBall::new(FiniteBall::from_parts(g, center, radius, interior)?, labels)
}

/// `G ⊗ H`: vertex `(a,b)` gets id `pos(a) * |H| + pos(b)` (positions in
/// sorted order); arcs `(a,b) → (c,d)` whenever `a → c` in `G` (an
/// undirected edge counts both ways) and `b → d` in `H`.
pub fn tensor_product(g: &MixedGraph, h: &Digraph) -> Digraph {
    let gv: Vec<usize> = g.vertices().collect();
    let hv: Vec<usize> = h.vertices().collect();
    let gpos: BTreeMap<usize, usize> = gv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let hpos: BTreeMap<usize, usize> = hv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nh = hv.len();
    let id = |a: usize, b: usize| gpos[&a] * nh + hpos[&b];
    let mut arcs = Vec::new();
    for (a, c) in g.relation() {
        for (b, d) in h.arcs() {
            arcs.push((id(a, b), id(c, d)));
        }
    }
    Digraph::new(0..gv.len() * nh, arcs).expect("tensor product with a digraph is antisymmetric")
}

/// Merges the ends of each listed arc into its tail. Returns the contracted
/// digraph and the map from old to new ids.
pub fn contract_matching(
    g: &Digraph,
    arcs_to_contract: &[(usize, usize)],
) -> Result<(Digraph, BTreeMap<usize, usize>)> {
    let mut seen = BTreeSet::new();
    for &(u, v) in arcs_to_contract {
        if !g.has_arc(u, v) {
            return Err(Error::UnknownArc(u, v));
        }
        if !seen.insert(u) || !seen.insert(v) {
            return Err(Error::Contract(format!("arc ({u}, {v}) overlaps another contracted arc")));
        }
    }
    let mut rep: BTreeMap<usize, usize> = g.vertices().map(|v| (v, v)).collect();
    for &(u, v) in arcs_to_contract {
        rep.insert(v, u);
    }
    let contracted: BTreeSet<(usize, usize)> = arcs_to_contract.iter().copied().collect();
    let mut new_arcs = BTreeSet::new();
    for (u, v) in g.arcs() {
        if contracted.contains(&(u, v)) {
            continue;
        }
        let (a, b) = (rep[&u], rep[&v]);
        if a == b {
            return Err(Error::Contract(format!("arc ({u}, {v}) becomes a loop")));
        }
        if new_arcs.contains(&(b, a)) {
            return Err(Error::Contract(format!("arc ({u}, {v}) creates a symmetric pair")));
        }
        new_arcs.insert((a, b));
    }
    let vertices: BTreeSet<usize> = rep.values().copied().collect();
    Ok((Digraph::new(vertices, new_arcs)?, rep))
}

/// `T*_{n,k}` from a Cayley ball of `Z_k^{*n}`: vertex `g` becomes the
/// clique `{(g,0),...,(g,n-1)}` (id `g*n + i`), and the `i`-th cycle
/// through `g` is attached at `(g,i)`: `(g,i) → (g·a_i, i)`, which is an
/// undirected edge when `k = 2`.
pub fn star_expand(t: &LabeledMixedBall, n: usize, k: usize) -> Result<MixedGraph> {
    if n == 0 || k < 2 || n > u8::MAX as usize || k > u8::MAX as usize {
        return Err(Error::input("star expansion needs n >= 1 and k >= 2"));
    }
    let mut by_word = BTreeMap::new();
    for (&v, l) in &t.labels {
        by_word.insert(Word::parse(l, n as u8, k as u8)?, v);
    }
    let mut arcs = Vec::new();
    let mut edges = Vec::new();
    for (w, &g) in &by_word {
        for i in 0..n {
            for j in i + 1..n {
                edges.push((g * n + i, g * n + j));
            }
            let step = w.times(i as u8, 1, k as u8);
            let Some(&h) = by_word.get(&step) else { continue };
            if !t.graph.relates(g, h) {
                return Err(Error::input(format!("labels of {g} and {h} disagree with the graph")));
            }
            if k == 2 {
                if g < h {
                    edges.push((g * n + i, h * n + i));
                }
            } else {
                arcs.push((g * n + i, h * n + i));
            }
        }
    }
    let vertices = t.graph.vertices().flat_map(|g| (0..n).map(move |i| g * n + i));
    MixedGraph::new(vertices.collect::<Vec<_>>(), arcs, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cayley::make_cayley_free_product_mixed;
    use crate::iso::are_isomorphic;

    fn k2() -> Digraph {
        Digraph::from_arcs([(0, 1)]).unwrap()
    }

    #[test]
    fn line_of_triangle_is_triangle() {
        let d3 = Digraph::directed_cycle(3).unwrap();
        assert!(are_isomorphic(&line_digraph(&d3), &d3));
    }

    #[test]
    fn line_of_two_path_is_an_arc() {
        let l = line_digraph(&Digraph::directed_path(2));
        assert_eq!(l.vertex_count(), 2);
        assert_eq!(l.arc_count(), 1);
    }

    #[test]
    fn triangle_times_k2() {
        let d3 = Digraph::directed_cycle(3).unwrap();
        let t = tensor_product(&MixedGraph::from(&d3), &k2());
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.arc_count(), 3);
        assert!(t.arcs().all(|(u, v)| u % 2 == 0 && v % 2 == 1));
    }

    #[test]
    fn contract_path() {
        let p = Digraph::directed_path(2);
        let (c, rep) = contract_matching(&p, &[(0, 1)]).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.arc_count(), 1);
        assert_eq!(rep[&1], 0);
    }

    #[test]
    fn contract_triangle_arc_rejected() {
        let d3 = Digraph::directed_cycle(3).unwrap();
        assert!(matches!(contract_matching(&d3, &[(0, 1)]), Err(Error::Contract(_))));
        let p = Digraph::directed_path(3);
        assert!(matches!(contract_matching(&p, &[(0, 1), (1, 2)]), Err(Error::Contract(_))));
    }

    #[test]
    fn star_expansion_shape() {
        let t = make_cayley_free_product_mixed(3, 2, 2).unwrap();
        let s = star_expand(&t, 3, 2).unwrap();
        assert_eq!(s.vertex_count(), 3 * t.graph.vertex_count());
        // center clique with its three pendant matching edges
        let center: Vec<usize> = (0..3).collect();
        for &c in &center {
            assert_eq!(s.edge_neighbors(c).len(), 3);
        }
        let t = make_cayley_free_product_mixed(4, 3, 2).unwrap();
        let s = star_expand(&t, 4, 3).unwrap();
        for &g in &t.interior {
            for i in 0..4 {
                let v = g * 4 + i;
                assert_eq!(s.out_arcs(v).len(), 1);
                assert_eq!(s.in_arcs(v).len(), 1);
                assert_eq!(s.edge_neighbors(v).len(), 3);
            }
        }
    }
}
