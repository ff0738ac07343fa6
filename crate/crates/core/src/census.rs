//! Exhaustive census of small connected bipartite graphs that are
//! C-homogeneous with the bipartition preserved.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite::{make_bipartite, BipartiteGraph, BipartiteKind};
use crate::error::{Error, Result};
use crate::reachability::{classify_bipartite_shape, FamilyTag};
use crate::report::Verdict;
use crate::symmetry::check_bipartite_c_homogeneity;

/// Default guard on the census size.
pub const CENSUS_DEFAULT_MAX: usize = 8;

/// Canonical code of a bipartite graph up to part-preserving isomorphism,
/// with the parts ordered so `|X| <= |Y|` (both orders when equal).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalCode {
    pub nx: usize,
    pub ny: usize,
    pub rows: Vec<u64>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(&mut p, n, &mut out);
    out
}

fn heap(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(p, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        p.swap(j, k - 1);
    }
}

fn transpose(rows: &[u64], ny: usize) -> Vec<u64> {
    (0..ny)
        .map(|j| {
            rows.iter()
                .enumerate()
                .fold(0u64, |m, (i, &r)| m | ((r >> j & 1) << i))
        })
        .collect()
}

/// Minimum sorted row list over all column permutations.
fn min_over_columns(rows: &[u64], ny: usize, perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| {
            let mut r: Vec<u64> = rows
                .iter()
                .map(|&m| (0..ny).fold(0u64, |acc, j| acc | ((m >> j & 1) << p[j])))
                .collect();
            r.sort_unstable();
            r
        })
        .min()
        .unwrap_or_default()
}

fn canonical_rows(rows: &[u64], ny: usize, perms: &BTreeMap<usize, Vec<Vec<usize>>>) -> CanonicalCode {
    let nx = rows.len();
    let (rows, nx, ny) = if nx > ny {
        (transpose(rows, ny), ny, nx)
    } else {
        (rows.to_vec(), nx, ny)
    };
    let mut best = min_over_columns(&rows, ny, &perms[&ny]);
    if nx == ny {
        best = best.min(min_over_columns(&transpose(&rows, ny), ny, &perms[&ny]));
    }
    CanonicalCode { nx, ny, rows: best }
}

/// Canonical code of `b` (parts are swapped when `|X| > |Y|`).
pub fn canonical_code(b: &BipartiteGraph) -> CanonicalCode {
    let ny = b.part_y().len();
    let nx = b.part_x().len();
    let perms = BTreeMap::from([(ny.max(nx), permutations(ny.max(nx)))]);
    canonical_rows(&b.row_masks(), ny, &perms)
}

fn connected_rows(rows: &[u64], ny: usize) -> bool {
    let all_y = (1u64 << ny) - 1;
    let mut seen_rows = 1u64;
    let mut seen_cols = rows[0];
    loop {
        let mut grew = false;
        for (i, &r) in rows.iter().enumerate() {
            if seen_rows >> i & 1 == 0 && r & seen_cols != 0 {
                seen_rows |= 1 << i;
                seen_cols |= r;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    seen_rows.count_ones() as usize == rows.len() && seen_cols == all_y
}

/// Multisets of `len` non-zero masks below `1 << ny`, non-decreasing.
fn row_multisets(len: usize, ny: usize) -> Vec<Vec<u64>> {
    let top = 1u64 << ny;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(cur: &mut Vec<u64>, from: u64, top: u64, len: usize, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for m in from..top {
            cur.push(m);
            go(cur, m, top, len, out);
            cur.pop();
        }
    }
    go(&mut cur, 1, top, len, &mut out);
    out
}

/// Every connected bipartite graph on at most `n_max` vertices, once per
/// part-preserving isomorphism class, with `|X| <= |Y|`. Sorted by
/// canonical code.
pub fn enumerate_connected_bipartite(n_max: usize) -> Result<Vec<BipartiteGraph>> {
    if n_max < 2 {
        return Err(Error::input("census needs at least 2 vertices"));
    }
    if n_max > 10 {
        return Err(Error::input("census is limited to 10 vertices"));
    }
    let perms: BTreeMap<usize, Vec<Vec<usize>>> = (1..n_max).map(|n| (n, permutations(n))).collect();
    let mut codes: Vec<CanonicalCode> = Vec::new();
    for nx in 1..=n_max / 2 {
        for ny in nx..=n_max - nx {
            let found: Vec<CanonicalCode> = row_multisets(nx, ny)
                .into_par_iter()
                .filter(|rows| connected_rows(rows, ny))
                .map(|rows| canonical_rows(&rows, ny, &perms))
                .collect();
            codes.extend(found);
        }
    }
    codes.sort();
    codes.dedup();
    Ok(codes
        .iter()
        .map(|c| BipartiteGraph::from_row_masks(&c.rows, c.ny))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusEntry {
    pub tag: FamilyTag,
    pub nx: usize,
    pub ny: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CensusEntry {
    fn of(b: &BipartiteGraph, tag: FamilyTag) -> Self {
        CensusEntry {
            tag,
            nx: b.part_x().len(),
            ny: b.part_y().len(),
            edges: b.edges().iter().copied().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusResult {
    pub max_vertices: usize,
    pub examined: usize,
    pub found: Vec<CensusEntry>,
    /// C-homogeneous graphs matching no family of the classification.
    pub unexpected: Vec<CensusEntry>,
}

impl CensusResult {
    /// One line per C-homogeneous graph, unexpected ones flagged `false`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("tag,nx,ny,edges,expected\n");
        let rows = self
            .found
            .iter()
            .map(|e| (e, true))
            .chain(self.unexpected.iter().map(|e| (e, false)));
        for (e, ok) in rows {
            let edges: Vec<String> = e.edges.iter().map(|(x, y)| format!("{x}-{y}")).collect();
            s.push_str(&format!("{},{},{},{},{}\n", e.tag, e.nx, e.ny, edges.join(" "), ok));
        }
        s
    }
}

/// Whether a tag names a family in the classification of connected
/// C-homogeneous bipartite graphs (stars are reported as complete).
pub fn is_classified_family(tag: &FamilyTag) -> bool {
    match tag {
        FamilyTag::Cycle(m) => m % 2 == 0,
        FamilyTag::CompleteBipartite(..) | FamilyTag::Cp(_) => true,
        _ => false,
    }
}

/// Filters the enumeration through the exact check and tags the survivors.
pub fn census_c_homogeneous(n_max: usize) -> Result<CensusResult> {
    let graphs = enumerate_connected_bipartite(n_max)?;
    let verdicts: Vec<Result<Option<FamilyTag>>> = graphs
        .par_iter()
        .map(|b| {
            let rep = check_bipartite_c_homogeneity(b)?;
            if rep.verdict == Verdict::ExactTrue {
                Ok(Some(classify_bipartite_shape(b)?))
            } else {
                Ok(None)
            }
        })
        .collect();
    let mut found = Vec::new();
    let mut unexpected = Vec::new();
    for (b, v) in graphs.iter().zip(verdicts) {
        if let Some(tag) = v? {
            let entry = CensusEntry::of(b, tag);
            if is_classified_family(&entry.tag) {
                found.push(entry);
            } else {
                unexpected.push(entry);
            }
        }
    }
    Ok(CensusResult {
        max_vertices: n_max,
        examined: graphs.len(),
        found,
        unexpected,
    })
}

/// Connected members of the classification with at most `n_max`
/// vertices, one per isomorphism class, with their tags.
pub fn classified_members(n_max: usize) -> Result<Vec<(BipartiteGraph, FamilyTag)>> {
    let mut kinds = Vec::new();
    for m in 1..=n_max / 2 {
        for n in m..=n_max - m {
            kinds.push(BipartiteKind::Complete(m, n));
        }
    }
    kinds.extend((4..=n_max).step_by(2).map(BipartiteKind::Cycle));
    kinds.extend((3..=n_max / 2).map(BipartiteKind::Cp));
    let mut by_code: BTreeMap<CanonicalCode, (BipartiteGraph, FamilyTag)> = BTreeMap::new();
    for k in kinds {
        let b = make_bipartite(k)?.normalized();
        let tag = classify_bipartite_shape(&b)?;
        by_code.entry(canonical_code(&b)).or_insert((b, tag));
    }
    Ok(by_code.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_censuses() {
        assert_eq!(enumerate_connected_bipartite(2).unwrap().len(), 1);
        assert_eq!(enumerate_connected_bipartite(3).unwrap().len(), 2);
    }

    #[test]
    fn transpose_is_involution() {
        let rows = vec![0b011, 0b110];
        assert_eq!(transpose(&transpose(&rows, 3), 2), rows);
    }

    #[test]
    fn cp3_and_c6_share_a_code() {
        let cp3 = make_bipartite(BipartiteKind::Cp(3)).unwrap();
        let c6 = make_bipartite(BipartiteKind::Cycle(6)).unwrap();
        assert_eq!(canonical_code(&cp3), canonical_code(&c6));
    }
}
