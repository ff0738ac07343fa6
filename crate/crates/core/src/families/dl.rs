//! `DL(B)`: a directed tree with every vertex replaced by a copy of `B`.
//!
//! The tree has in-valency `|X|` and out-valency `|Y|`. DL vertices are tree
//! arcs `(a, b)`; there is an arc `(a, b) → (b, d)` when the X-vertex
//! labelling `a` at `b` is adjacent in `B` to the Y-vertex labelling `d`.

use crate::ball::{grow, LabeledBall};
use crate::bipartite::{is_edge_transitive, BipartiteGraph};
use crate::error::{Error, Result};

/// Tree move: `F(j)` steps to an out-neighbour, `B(i)` to an in-neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Mv {
    F(u16),
    B(u16),
}

type TreeVertex = Vec<Mv>;

/// The directed tree with the given valencies, addressed by reduced move
/// words from a root. Each neighbour carries a raw local label; the parent
/// always has label 0.
#[derive(Clone, Copy, Debug)]
struct Tree {
    in_valency: u16,
    out_valency: u16,
}

impl Tree {
    fn out(&self, t: &TreeVertex) -> Vec<(TreeVertex, u16)> {
        let mut res = Vec::new();
        let from = match t.last() {
            Some(Mv::B(_)) => {
                res.push((t[..t.len() - 1].to_vec(), 0));
                1
            }
            _ => 0,
        };
        for j in from..self.out_valency {
            let mut w = t.clone();
            w.push(Mv::F(j));
            res.push((w, j));
        }
        res
    }

    fn inn(&self, t: &TreeVertex) -> Vec<(TreeVertex, u16)> {
        let mut res = Vec::new();
        let from = match t.last() {
            Some(Mv::F(_)) => {
                res.push((t[..t.len() - 1].to_vec(), 0));
                1
            }
            _ => 0,
        };
        for i in from..self.in_valency {
            let mut w = t.clone();
            w.push(Mv::B(i));
            res.push((w, i));
        }
        res
    }

    /// Raw label of in-neighbour `a` at `b`.
    fn in_label(&self, b: &TreeVertex, a: &TreeVertex) -> u16 {
        match a.last() {
            Some(&Mv::B(i)) if a.len() == b.len() + 1 => i,
            _ => 0,
        }
    }

    /// Raw label of out-neighbour `d` at `b`.
    fn out_label(&self, b: &TreeVertex, d: &TreeVertex) -> u16 {
        match d.last() {
            Some(&Mv::F(j)) if d.len() == b.len() + 1 => j,
            _ => 0,
        }
    }
}

fn word_label(t: &TreeVertex) -> String {
    if t.is_empty() {
        return "e".into();
    }
    t.iter()
        .map(|m| match m {
            Mv::F(j) => format!("F{j}"),
            Mv::B(i) => format!("B{i}"),
        })
        .collect()
}

/// How raw local labels are turned into vertices of `B` at each tree vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Bijections {
    /// Raw label `i` is the `i`-th vertex of the part.
    #[default]
    Lexicographic,
    /// A rotation or reflection chosen from a hash of the tree vertex.
    Permuted,
}

fn permute(t: &TreeVertex, salt: u64, raw: u16, n: u16) -> u16 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ salt;
    for m in t {
        let x = match *m {
            Mv::F(j) => 2 * j as u64,
            Mv::B(i) => 2 * i as u64 + 1,
        };
        h = (h ^ x).wrapping_mul(0x0100_0000_01b3);
    }
    let n64 = n as u64;
    let rot = (h % n64) as u16;
    if (h / n64) % 2 == 1 {
        (n - 1 - raw + rot) % n
    } else {
        (raw + rot) % n
    }
}

fn validate(b: &BipartiteGraph) -> Result<()> {
    if b.edges().is_empty() || !b.is_connected() {
        return Err(Error::input("DL base must be connected with at least one edge"));
    }
    if !is_edge_transitive(b) {
        return Err(Error::input(
            "DL base is not edge-transitive; different bijection choices can lead to non-isomorphic digraphs",
        ));
    }
    Ok(())
}

/// Ball of radius `r` in `DL(b)` around the arc-vertex `(root, root·F0)`.
pub fn make_dl_ball(b: &BipartiteGraph, r: usize) -> Result<LabeledBall> {
    make_dl_ball_with(b, r, Bijections::Lexicographic)
}

pub fn make_dl_ball_with(b: &BipartiteGraph, r: usize, bij: Bijections) -> Result<LabeledBall> {
    validate(b)?;
    let xs: Vec<usize> = b.part_x().iter().copied().collect();
    let ys: Vec<usize> = b.part_y().iter().copied().collect();
    let adj: Vec<Vec<bool>> = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| b.edges().contains(&(x, y))).collect())
        .collect();
    let (nx, ny) = (xs.len() as u16, ys.len() as u16);
    let tree = Tree {
        in_valency: nx,
        out_valency: ny,
    };
    let phi = |t: &TreeVertex, raw: u16| match bij {
        Bijections::Lexicographic => raw,
        Bijections::Permuted => permute(t, 1, raw, nx),
    } as usize;
    let psi = |t: &TreeVertex, raw: u16| match bij {
        Bijections::Lexicographic => raw,
        Bijections::Permuted => permute(t, 2, raw, ny),
    } as usize;
    let root: (TreeVertex, TreeVertex) = (Vec::new(), vec![Mv::F(0)]);
    let grown = grow(root, r, |(a, bv)| {
        let x = phi(bv, tree.in_label(bv, a));
        let succ = tree
            .out(bv)
            .into_iter()
            .filter(|(_, j)| adj[x][psi(bv, *j)])
            .map(|(d, _)| (bv.clone(), d))
            .collect();
        let y = psi(a, tree.out_label(a, bv));
        let pred = tree
            .inn(a)
            .into_iter()
            .filter(|(_, i)| adj[phi(a, *i)][y])
            .map(|(c, _)| (c, a.clone()))
            .collect();
        (succ, pred)
    });
    grown.into_digraph_ball(r, |(a, bv)| format!("{}>{}", word_label(a), word_label(bv)))
}

/// `DL(T_{a,b})` for the infinite semiregular tree: the directed tree with
/// out-degree `a` and in-degree `b`.
pub fn make_dl_tree_ball(a: usize, b: usize, r: usize) -> Result<LabeledBall> {
    if a == 0 || b == 0 || a > u16::MAX as usize || b > u16::MAX as usize {
        return Err(Error::input("tree degrees must be positive"));
    }
    let tree = Tree {
        in_valency: b as u16,
        out_valency: a as u16,
    };
    let grown = grow(Vec::new(), r, |t: &TreeVertex| {
        (
            tree.out(t).into_iter().map(|(w, _)| w).collect(),
            tree.inn(t).into_iter().map(|(w, _)| w).collect(),
        )
    });
    grown.into_digraph_ball(r, word_label)
}
