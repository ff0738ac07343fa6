//! Directed Cayley graphs of free products of cyclic groups `Z_k * ... * Z_k`.

use crate::ball::{grow, LabeledBall, LabeledMixedBall};
use crate::error::{Error, Result};

/// Normal-form word: consecutive letters use different factors, exponents
/// lie in `1..k`. Factors are 0-based internally and 1-based in labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<(u8, u8)>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// `self · a_factor^exp` in `Z_k^{*n}`.
    pub fn times(&self, factor: u8, exp: u8, k: u8) -> Word {
        let mut w = self.0.clone();
        let exp = exp % k;
        if exp == 0 {
            return Word(w);
        }
        match w.last_mut() {
            Some((f, e)) if *f == factor => {
                let ne = (*e + exp) % k;
                if ne == 0 {
                    w.pop();
                } else {
                    *e = ne;
                }
            }
            _ => w.push((factor, exp)),
        }
        Word(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        let mut s = String::new();
        for &(f, e) in &self.0 {
            s.push_str(&format!("a{}", f + 1));
            if e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }

    /// Inverse of [`Word::label`]; `k` bounds the exponents.
    pub fn parse(label: &str, n: u8, k: u8) -> Result<Word> {
        let bad = || Error::input(format!("malformed group word `{label}`"));
        if label == "e" {
            return Ok(Word::identity());
        }
        let mut out: Vec<(u8, u8)> = Vec::new();
        for part in label.split('a').skip(1) {
            let (f, e) = match part.split_once('^') {
                Some((f, e)) => (f, e.parse::<u8>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let f: u8 = f.parse().map_err(|_| bad())?;
            if f == 0 || f > n || e == 0 || e >= k || out.last().is_some_and(|&(g, _)| g == f - 1) {
                return Err(bad());
            }
            out.push((f - 1, e));
        }
        if out.is_empty() || !label.starts_with('a') {
            return Err(bad());
        }
        Ok(Word(out))
    }
}

fn check(n: usize, k: usize) -> Result<(u8, u8)> {
    if n == 0 || k < 2 || n > u8::MAX as usize || k > u8::MAX as usize {
        return Err(Error::input(format!("free product needs n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    Ok((n as u8, k as u8))
}

fn grow_cayley(n: u8, k: u8, r: usize) -> crate::ball::Grown<Word> {
    grow(Word::identity(), r, |g| {
        let succ = (0..n).map(|i| g.times(i, 1, k)).collect();
        let pred = (0..n).map(|i| g.times(i, k - 1, k)).collect();
        (succ, pred)
    })
}

/// Ball of radius `r` around the identity, arcs `g → g·a_i`. For `k = 2`
/// the relation is symmetric, so use [`make_cayley_free_product_mixed`].
pub fn make_cayley_free_product_ball(n: usize, k: usize, r: usize) -> Result<LabeledBall> {
    let (n, k) = check(n, k)?;
    if k == 2 {
        return Err(Error::Construction(
            "for k = 2 every arc has its reverse; build the mixed-graph version instead".into(),
        ));
    }
    grow_cayley(n, k, r).into_digraph_ball(r, Word::label)
}

/// Same ball as a mixed graph; symmetric pairs become undirected edges.
pub fn make_cayley_free_product_mixed(n: usize, k: usize, r: usize) -> Result<LabeledMixedBall> {
    let (n, k) = check(n, k)?;
    grow_cayley(n, k, r).into_mixed_ball(r, Word::label)
}

/// `T(r)`: free product of `r` copies of `Z_3`.
pub fn make_t_ball(r: usize, radius: usize) -> Result<LabeledBall> {
    if r == 0 {
        return Err(Error::input("t(r) needs r >= 1"));
    }
    make_cayley_free_product_ball(r, 3, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::iso::are_isomorphic;

    #[test]
    fn words_reduce() {
        let w = Word::identity().times(0, 1, 3).times(0, 2, 3);
        assert!(w.is_empty());
        let w = Word::identity().times(0, 2, 3).times(2, 1, 3);
        assert_eq!(w.label(), "a1^2a3");
        assert_eq!(Word::parse("a1^2a3", 3, 3).unwrap(), w);
        assert!(Word::parse("a1a1", 3, 3).is_err());
        assert!(Word::parse("a4", 3, 3).is_err());
        assert!(Word::parse("x", 3, 3).is_err());
    }

    #[test]
    fn single_factor_is_a_directed_cycle() {
        let b = make_cayley_free_product_ball(1, 3, 2).unwrap();
        assert!(are_isomorphic(b.ball.graph(), &Digraph::directed_cycle(3).unwrap()));
    }

    #[test]
    fn t3_unit_ball() {
        let b = make_t_ball(3, 1).unwrap();
        assert_eq!(b.ball.graph().vertex_count(), 7);
        assert_eq!(b.ball.graph().arc_count(), 9);
    }

    #[test]
    fn k2_needs_mixed_graph() {
        assert!(make_cayley_free_product_ball(3, 2, 2).is_err());
        let m = make_cayley_free_product_mixed(3, 2, 2).unwrap();
        assert!(m.graph.arcs().is_empty());
        // trivalent tree: 1 + 3 + 6
        assert_eq!(m.graph.vertex_count(), 10);
    }

    #[test]
    fn interior_vertices_lie_on_n_cycles() {
        let b = make_cayley_free_product_ball(3, 4, 3).unwrap();
        let g = b.ball.graph();
        for &v in b.ball.interior() {
            assert_eq!(g.out(v).len(), 3);
            assert_eq!(g.inn(v).len(), 3);
        }
    }
}
