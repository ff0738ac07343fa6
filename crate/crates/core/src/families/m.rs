//! `M(n,k)`: clique-expand the Cayley graph of `Z_k^{*n}`, take the tensor
//! product with a single arc, then contract the arcs coming from the
//! directed `k`-cycles.

use std::collections::BTreeMap;

use crate::ball::{ball, grow, FiniteBall, LabeledBall};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::families::cayley::{make_cayley_free_product_mixed, Word};
use crate::families::ops::{contract_matching, star_expand, tensor_product};

fn check(n: usize, k: usize) -> Result<()> {
    if n < 3 || k < 2 || n > u8::MAX as usize || k > u8::MAX as usize {
        return Err(Error::input(format!("m(n,k) needs n >= 3 and k >= 2, got n={n}, k={k}")));
    }
    Ok(())
}

/// Radius-`r` ball of `M(n,k)` around the vertex coming from the first
/// clique vertex at the identity.
pub fn make_m_ball(n: usize, k: usize, r: usize) -> Result<LabeledBall> {
    check(n, k)?;
    // An M-step moves the group element by one generator, so a Cayley ball
    // one larger than `r` holds every vertex and arc of the M-ball.
    let cay = make_cayley_free_product_mixed(n, k, r + 1)?;
    let star = star_expand(&cay, n, k)?;
    let level = Digraph::from_arcs([(0, 1)])?;
    let doubled = tensor_product(&star, &level);

    let mut word_of = BTreeMap::new();
    let mut by_word = BTreeMap::new();
    for (&g, l) in &cay.labels {
        let w = Word::parse(l, n as u8, k as u8)?;
        by_word.insert(w.clone(), g);
        word_of.insert(g, w);
    }
    let mut matching = Vec::new();
    for (&g, w) in &word_of {
        for i in 0..n {
            if let Some(&h) = by_word.get(&w.times(i as u8, 1, k as u8)) {
                let (x, succ) = (g * n + i, h * n + i);
                matching.push((2 * x, 2 * succ + 1));
            }
        }
    }
    let (merged, _) = contract_matching(&doubled, &matching)?;
    let center = 2 * (by_word[&Word::identity()] * n);
    let b = ball(&merged, center, r)?;

    let dense: BTreeMap<usize, usize> = b.graph().vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let graph = b.graph().relabel(&dense)?;
    let interior = b.interior().iter().map(|v| dense[v]).collect();
    let labels = dense
        .iter()
        .map(|(&old, &new)| {
            let x = old / 2;
            (new, format!("{}.{}", word_of[&(x / n)].label(), x % n + 1))
        })
        .collect();
    LabeledBall::new(FiniteBall::from_parts(graph, dense[&center], r, interior)?, labels)
}

/// The same ball from the closed form `(g,i) → (g·a_j^{-1}, j)` for `j ≠ i`.
pub fn make_m_ball_direct(n: usize, k: usize, r: usize) -> Result<LabeledBall> {
    check(n, k)?;
    let (n8, k8) = (n as u8, k as u8);
    let grown = grow((Word::identity(), 0u8), r, |(g, i)| {
        let succ = (0..n8).filter(|j| j != i).map(|j| (g.times(j, k8 - 1, k8), j)).collect();
        let step = g.times(*i, 1, k8);
        let pred = (0..n8).filter(|j| j != i).map(|j| (step.clone(), j)).collect();
        (succ, pred)
    });
    grown.into_digraph_ball(r, |(g, i)| format!("{}.{}", g.label(), i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn pipeline_matches_closed_form() {
        for (n, k) in [(3, 2), (4, 3), (3, 3)] {
            let a = make_m_ball(n, k, 3).unwrap();
            let b = make_m_ball_direct(n, k, 3).unwrap();
            assert_eq!(a.ball.graph().vertex_count(), b.ball.graph().vertex_count());
            assert!(are_isomorphic(a.ball.graph(), b.ball.graph()), "M({n},{k})");
            assert_eq!(a.ball.interior().len(), b.ball.interior().len());
        }
    }

    #[test]
    fn interior_degrees() {
        let m = make_m_ball(4, 3, 3).unwrap();
        for &v in m.ball.interior() {
            assert_eq!(m.ball.graph().out(v).len(), 3);
            assert_eq!(m.ball.graph().inn(v).len(), 3);
        }
    }
}
