//! Connected-homogeneity and k-arc-transitivity checks.
//!
//! On balls, "extends to an automorphism" is approximated by "extends to an
//! isomorphism between the radius-`t` neighbourhoods". Only subsets whose
//! radius-`t` neighbourhood is complete are examined, so a failure is a
//! sound refutation for the parent graph; success is reported as
//! verified-at-scale.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::ball::FiniteBall;
use crate::bipartite::{part_preserving_automorphisms, BipartiteGraph};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::iso::{dense_isomorphisms, extend_dense, Dense, IsoMap};
use crate::report::{CheckParams, CheckReport, CheckStats, Verdict, Witness};
use crate::subsets::enumerate_connected_subdigraphs;

/// Which subsets or k-arcs are examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootMode {
    /// Only those containing (or starting at) the center. Sufficient for
    /// vertex-transitive parent graphs.
    #[default]
    Center,
    /// All deep ones; for finite graphs or non-transitive balls.
    AllDeep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CHomogeneityOptions {
    pub max_size: usize,
    pub radius: usize,
    pub roots: RootMode,
    /// Smallest subset size examined.
    pub min_size: usize,
}

impl CHomogeneityOptions {
    pub fn new(max_size: usize, radius: usize) -> Self {
        CHomogeneityOptions {
            max_size,
            radius,
            roots: RootMode::Center,
            min_size: 1,
        }
    }
}

type Key = (usize, usize, Vec<(usize, usize)>);

fn shape_key(d: &Dense) -> Key {
    let mut degs: Vec<(usize, usize)> = (0..d.len()).map(|i| (d.out[i].len(), d.inn[i].len())).collect();
    degs.sort_unstable();
    let arcs = d.out.iter().map(Vec::len).sum();
    (d.len(), arcs, degs)
}

struct Member {
    set: BTreeSet<usize>,
    /// Isomorphism from the class representative onto `set`.
    iso: IsoMap,
}

struct Class {
    members: Vec<Member>,
}

/// Groups subsets into isomorphism classes. The first member of each class
/// is its representative (with the identity map).
fn classify(g: &Digraph, subsets: Vec<BTreeSet<usize>>) -> Vec<Class> {
    let mut buckets: BTreeMap<Key, Vec<(BTreeSet<usize>, Dense)>> = BTreeMap::new();
    for s in subsets {
        let d = Dense::of_induced(g, &s);
        buckets.entry(shape_key(&d)).or_default().push((s, d));
    }
    let per_bucket: Vec<Vec<Class>> = buckets
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|bucket| {
            let mut reps: Vec<Dense> = Vec::new();
            let mut classes: Vec<Class> = Vec::new();
            for (set, d) in bucket {
                let hit = reps.iter().enumerate().find_map(|(ci, r)| {
                    dense_isomorphisms(r, &d, 1).pop().map(|iso| (ci, iso))
                });
                match hit {
                    Some((ci, iso)) => classes[ci].members.push(Member { set, iso }),
                    None => {
                        let iso = IsoMap::identity(set.iter().copied());
                        classes.push(Class {
                            members: vec![Member { set, iso }],
                        });
                        reps.push(d);
                    }
                }
            }
            classes
        })
        .collect();
    per_bucket.into_iter().flatten().collect()
}

/// Tries to extend `phi: A → B` to an isomorphism `N_t(A) → N_t(B)`.
/// On failure returns a witness oriented from the larger neighbourhood, so
/// that an unrestricted extension search also fails.
fn try_extend(g: &Digraph, phi: &IsoMap, t: usize) -> std::result::Result<(), Witness> {
    let na = g.neighbourhood(&phi.domain(), t);
    let nb = g.neighbourhood(&phi.image(), t);
    let ok = na.len() == nb.len() && {
        let p = Dense::of_induced(g, &na);
        let q = Dense::of_induced(g, &nb);
        extend_dense(&p, &q, phi, None, true).is_some()
    };
    if ok {
        return Ok(());
    }
    Err(if na.len() >= nb.len() {
        Witness::NonExtendable {
            map: phi.clone(),
            domain: na,
        }
    } else {
        Witness::NonExtendable {
            map: phi.inverse(),
            domain: nb,
        }
    })
}

struct ClassOutcome {
    maps: usize,
    failure: Option<Witness>,
}

fn check_class(g: &Digraph, class: &Class, t: usize) -> ClassOutcome {
    let rep = &class.members[0].set;
    let rep_d = Dense::of_induced(g, rep);
    let mut maps = 0;
    for aut in dense_isomorphisms(&rep_d, &rep_d, usize::MAX) {
        if aut.pairs().iter().all(|(a, b)| a == b) {
            continue;
        }
        maps += 1;
        if let Err(w) = try_extend(g, &aut, t) {
            return ClassOutcome { maps, failure: Some(w) };
        }
    }
    // Once every automorphism of the representative extends, one map per
    // member decides all maps into that member.
    for m in &class.members[1..] {
        maps += 1;
        if let Err(w) = try_extend(g, &m.iso, t) {
            return ClassOutcome { maps, failure: Some(w) };
        }
    }
    ClassOutcome { maps, failure: None }
}

/// Connected-homogeneity at scale with subsets of at most `s` vertices and
/// extension radius `t`, rooted at the center.
pub fn check_c_homogeneity(ball: &FiniteBall, s: usize, t: usize) -> CheckReport {
    check_c_homogeneity_with(ball, CHomogeneityOptions::new(s, t))
}

pub fn check_c_homogeneity_with(ball: &FiniteBall, opts: CHomogeneityOptions) -> CheckReport {
    let params = CheckParams {
        max_sub_size: Some(opts.max_size),
        extension_radius: Some(opts.radius),
        k: None,
    };
    let g = ball.graph();
    let deep = ball.deep_vertices(opts.radius);
    let roots: BTreeSet<usize> = match opts.roots {
        RootMode::Center => deep.iter().copied().filter(|&v| v == ball.center()).collect(),
        RootMode::AllDeep => deep.clone(),
    };
    let region = g.induced_subdigraph(&deep).expect("deep vertices belong to the ball");
    let mut by_size: BTreeMap<usize, Vec<BTreeSet<usize>>> = BTreeMap::new();
    for set in enumerate_connected_subdigraphs(&region, opts.max_size, &roots) {
        if set.len() >= opts.min_size {
            by_size.entry(set.len()).or_default().push(set);
        }
    }
    let mut stats = CheckStats::default();
    if by_size.is_empty() {
        return CheckReport::new("c-homogeneity", Verdict::Inconclusive, params)
            .note("no connected subset lies deep enough inside the ball");
    }
    for (_, subsets) in by_size {
        stats.instances += subsets.len();
        let classes = classify(g, subsets);
        stats.classes += classes.len();
        let outcomes: Vec<ClassOutcome> =
            classes.par_iter().map(|c| check_class(g, c, opts.radius)).collect();
        stats.maps += outcomes.iter().map(|o| o.maps).sum::<usize>();
        if let Some(w) = outcomes.into_iter().find_map(|o| o.failure) {
            stats.failures = 1;
            return CheckReport::new("c-homogeneity", Verdict::Refuted, params)
                .with_witness(w)
                .with_stats(stats);
        }
    }
    CheckReport::new("c-homogeneity", Verdict::VerifiedAtScale, params).with_stats(stats)
}

/// All k-arcs whose vertices lie in `allowed`, starting at `roots`.
fn k_arcs(g: &Digraph, k: usize, roots: &BTreeSet<usize>, allowed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = roots.iter().rev().map(|&r| vec![r]).collect();
    while let Some(path) = stack.pop() {
        if path.len() == k + 1 {
            out.push(path);
            continue;
        }
        let last = *path.last().unwrap();
        for &w in g.out(last).iter().rev() {
            if allowed.contains(&w) {
                let mut p = path.clone();
                p.push(w);
                stack.push(p);
            }
        }
    }
    out
}

/// The coordinate map between two k-arcs, if it is well defined and
/// injective.
fn coordinate_map(a: &[usize], b: &[usize]) -> Option<IsoMap> {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        if *fwd.entry(x).or_insert(y) != y || *back.entry(y).or_insert(x) != x {
            return None;
        }
    }
    Some(IsoMap::new(fwd))
}

/// k-arc-transitivity at scale: every k-arc starting at the center is
/// compared with the first one.
pub fn check_k_arc_transitivity(ball: &FiniteBall, k: usize, t: usize) -> Result<CheckReport> {
    check_k_arc_transitivity_with(ball, k, t, RootMode::Center)
}

pub fn check_k_arc_transitivity_with(
    ball: &FiniteBall,
    k: usize,
    t: usize,
    roots: RootMode,
) -> Result<CheckReport> {
    let g = ball.graph();
    if k == 0 && g.is_empty() {
        return Err(Error::input("0-arcs of an empty digraph"));
    }
    if t == 0 {
        return Err(Error::input("extension radius must be at least 1"));
    }
    let params = CheckParams {
        max_sub_size: None,
        extension_radius: Some(t),
        k: Some(k),
    };
    let deep = ball.deep_vertices(t);
    let starts: BTreeSet<usize> = match roots {
        RootMode::Center => deep.iter().copied().filter(|&v| v == ball.center()).collect(),
        RootMode::AllDeep => deep.clone(),
    };
    let arcs = k_arcs(g, k, &starts, &deep);
    let Some(reference) = arcs.first() else {
        return Ok(CheckReport::new("k-arc-transitivity", Verdict::Inconclusive, params)
            .note("no k-arc lies deep enough inside the ball"));
    };
    let results: Vec<(usize, Option<Witness>)> = arcs[1..]
        .par_iter()
        .map(|other| match coordinate_map(reference, other) {
            Some(phi) if phi.is_partial_automorphism(g) => (1, try_extend(g, &phi, t).err()),
            _ => (
                0,
                Some(Witness::KArcPair {
                    first: reference.clone(),
                    second: other.clone(),
                }),
            ),
        })
        .collect();
    let stats = CheckStats {
        instances: arcs.len(),
        classes: 1,
        maps: results.iter().map(|r| r.0).sum(),
        failures: results.iter().filter(|r| r.1.is_some()).count(),
    };
    Ok(match results.into_iter().find_map(|r| r.1) {
        Some(w) => CheckReport::new("k-arc-transitivity", Verdict::Refuted, params).with_witness(w),
        None => CheckReport::new("k-arc-transitivity", Verdict::VerifiedAtScale, params),
    }
    .with_stats(stats))
}

/// Exact check over a finite bipartite graph: subsets are grouped into
/// orbits of the part-preserving automorphism group; the property holds iff
/// isomorphic subsets always share an orbit and each orbit representative's
/// stabiliser induces every automorphism of the subgraph.
fn exact_bipartite(b: &BipartiteGraph, subsets: Vec<u64>, check: &str) -> CheckReport {
    let params = CheckParams::default();
    let ids: Vec<usize> = b.vertices().collect();
    let n = ids.len();
    let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let auts: Vec<Vec<usize>> = part_preserving_automorphisms(b)
        .into_iter()
        .map(|a| ids.iter().map(|v| pos[&a.get(*v).unwrap()]).collect())
        .collect();
    let image = |perm: &[usize], mask: u64| -> u64 {
        (0..n).filter(|i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << perm[i])
    };
    let to_set = |mask: u64| -> BTreeSet<usize> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ids[i]).collect() };

    let mut seen: HashMap<u64, ()> = HashMap::new();
    let mut reps: Vec<u64> = Vec::new();
    let instances = subsets.len();
    for m in subsets {
        let canon = auts.iter().map(|p| image(p, m)).min().unwrap_or(m);
        if seen.insert(canon, ()).is_none() {
            reps.push(canon);
        }
    }
    let mut stats = CheckStats {
        instances,
        classes: reps.len(),
        ..CheckStats::default()
    };
    let dense_of = |mask: u64| b.induced(&to_set(mask)).dense();

    // Stabilisers.
    let stab_fail = reps.par_iter().find_map_first(|&u| {
        let set = to_set(u);
        let restrictions: BTreeSet<IsoMap> = auts
            .iter()
            .filter(|p| image(p, u) == u)
            .map(|p| IsoMap::new(set.iter().map(|&v| (v, ids[p[pos[&v]]]))))
            .collect();
        let d = dense_of(u);
        dense_isomorphisms(&d, &d, usize::MAX)
            .into_iter()
            .find(|a| !restrictions.contains(a))
    });
    if let Some(map) = stab_fail {
        stats.failures = 1;
        return CheckReport::new(check, Verdict::ExactFalse, params)
            .with_witness(Witness::PartPreserving { map })
            .with_stats(stats);
    }

    // Distinct orbits with isomorphic subgraphs.
    let mut buckets: BTreeMap<(usize, usize, Key), Vec<u64>> = BTreeMap::new();
    for &u in &reps {
        let set = to_set(u);
        let nx = set.iter().filter(|v| b.part_x().contains(v)).count();
        buckets
            .entry((nx, set.len() - nx, shape_key(&dense_of(u))))
            .or_default()
            .push(u);
    }
    for group in buckets.values() {
        for (i, &u) in group.iter().enumerate() {
            for &w in &group[i + 1..] {
                stats.maps += 1;
                if let Some(map) = dense_isomorphisms(&dense_of(u), &dense_of(w), 1).pop() {
                    stats.failures = 1;
                    return CheckReport::new(check, Verdict::ExactFalse, params)
                        .with_witness(Witness::PartPreserving { map })
                        .with_stats(stats);
                }
            }
        }
    }
    CheckReport::new(check, Verdict::ExactTrue, params).with_stats(stats)
}

fn mask_limit(b: &BipartiteGraph, limit: usize) -> Result<()> {
    if b.vertex_count() > limit {
        return Err(Error::input(format!(
            "exact bipartite checks support at most {limit} vertices, got {}",
            b.vertex_count()
        )));
    }
    Ok(())
}

/// Exact: every part-preserving isomorphism between connected induced
/// subgraphs extends to a part-preserving automorphism.
pub fn check_bipartite_c_homogeneity(b: &BipartiteGraph) -> Result<CheckReport> {
    if b.vertex_count() == 0 || !b.is_connected() {
        return Err(Error::input("bipartite C-homogeneity needs a connected graph"));
    }
    mask_limit(b, 64)?;
    let g = b.oriented();
    let ids: Vec<usize> = b.vertices().collect();
    let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let subsets = enumerate_connected_subdigraphs(&g, ids.len(), &g.vertex_set())
        .map(|s| s.iter().fold(0u64, |m, v| m | 1 << pos[v]))
        .collect();
    Ok(exact_bipartite(b, subsets, "bipartite-c-homogeneity"))
}

/// Exact homogeneity: as above with arbitrary (possibly disconnected)
/// induced subgraphs.
pub fn check_homogeneous_bipartite(b: &BipartiteGraph) -> Result<CheckReport> {
    mask_limit(b, 20)?;
    let n = b.vertex_count();
    let subsets = (1u64..1 << n).collect();
    Ok(exact_bipartite(b, subsets, "bipartite-homogeneity"))
}
