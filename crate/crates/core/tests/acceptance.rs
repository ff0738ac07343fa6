//! Acceptance run: one line per criterion with its verdict and runtime.
//!
//! Criteria known to be unattainable as stated (parameters too small, or a
//! claimed outcome the computation contradicts) are still run exactly as
//! stated; their failure is printed and does not abort the run. Any other
//! failure exits non-zero.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use homodigraph::bipartite::{make_bipartite, BipartiteKind};
use homodigraph::families::*;
use homodigraph::iso::find_mixed_isomorphisms;
use homodigraph::reachability::{delta_as_bipartite, report_for_class, Completeness};
use std::result::Result;
use homodigraph::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Classes of a ball that equal their class in the parent graph: every
/// head and tail keeps the center's degrees.
fn exact_classes(b: &FiniteBall, p: &ArcClassPartition) -> BTreeSet<usize> {
    let d = b.graph();
    let (din, dout) = (d.inn(b.center()).len(), d.out(b.center()).len());
    (0..p.len()).filter(|&c| p.is_saturated(c, d, din, dout)).collect()
}

/// Vertices keeping the center's in- and out-degree. In a ball of a
/// vertex-transitive graph their neighbourhoods are exact.
fn full_degree(b: &FiniteBall) -> BTreeSet<usize> {
    let d = b.graph();
    let deg = |v: usize| (d.inn(v).len(), d.out(v).len());
    d.vertices().filter(|&v| deg(v) == deg(b.center())).collect()
}

/// Exact classes of a ball, with their `Δ`.
fn complete_deltas(b: &FiniteBall) -> Vec<ReachabilityReport> {
    let p = arc_classes(b.graph());
    exact_classes(b, &p)
        .into_iter()
        .map(|c| report_for_class(b.graph(), &p, c, b.interior()))
        .collect()
}

fn interior_degrees(b: &FiniteBall) -> BTreeSet<(usize, usize)> {
    b.interior()
        .iter()
        .map(|&v| (b.graph().inn(v).len(), b.graph().out(v).len()))
        .collect()
}

fn c1_delta_recovery() -> Outcome {
    let bases = [
        BipartiteKind::Cycle(6),
        BipartiteKind::Cycle(8),
        BipartiteKind::Complete(2, 2),
        BipartiteKind::Complete(2, 3),
        BipartiteKind::Cp(3),
        BipartiteKind::Cp(4),
    ];
    let mut total = 0;
    for k in bases {
        let base = make_bipartite(k).map_err(e)?;
        let b = make_dl_ball(&base, 4).map_err(e)?;
        let deltas = complete_deltas(&b.ball);
        ensure(!deltas.is_empty(), || format!("{k:?}: no complete class"))?;
        for r in &deltas {
            ensure(are_isomorphic(&r.delta, &base.oriented()), || {
                format!("{k:?}: class {} is not the base graph", r.class_index)
            })?;
        }
        total += deltas.len();
    }
    Ok(format!("{total} complete classes over 6 bases, each isomorphic to its base"))
}

/// Largest `ρ` for which the `ρ`-ball of `c0` in `ℛ` is exact: classes
/// within `ρ` are exact and those within `ρ - 1` have every neighbouring
/// class present, i.e. heads keep an out-arc and tails an in-arc.
fn complete_radius(d: &Digraph, p: &ArcClassPartition, r: &MixedGraph, exact: &BTreeSet<usize>, c0: usize) -> usize {
    let dist = r.bfs_distances([c0]);
    let open = |c: usize| p.classes()[c].iter().all(|&(u, v)| !d.inn(u).is_empty() && !d.out(v).is_empty());
    let mut rho = 0;
    while dist.iter().filter(|(_, &k)| k <= rho + 1).all(|(c, _)| exact.contains(c))
        && dist.iter().filter(|(_, &k)| k <= rho).all(|(&c, _)| open(c))
        && dist.values().any(|&k| k > rho + 1)
    {
        rho += 1;
    }
    rho
}

fn c2_m_claims() -> Outcome {
    let mut lines = Vec::new();
    for (n, k) in [(3usize, 2usize), (4, 3)] {
        let m = make_m_ball(n, k, 4).map_err(e)?;
        let b = &m.ball;
        let d = b.graph();
        ensure(interior_degrees(b) == BTreeSet::from([(n - 1, n - 1)]), || {
            format!("M({n},{k}): interior degrees {:?}", interior_degrees(b))
        })?;
        let cp = make_bipartite(BipartiteKind::Cp(n)).map_err(e)?.oriented();
        let p = arc_classes(d);
        let complete = exact_classes(b, &p);
        for &c in &complete {
            let delta = d.spanned_by_arcs(&p.classes()[c]).map_err(e)?;
            ensure(are_isomorphic(&delta, &cp), || format!("M({n},{k}): class {c} is not CP_{n}"))?;
        }
        // intersection digraph against the Cayley digraph of the free product
        let rdig = intersection_digraph(d, &p);
        let c0 = p.class_of((b.center(), d.out(b.center())[0])).unwrap();
        let rho = complete_radius(d, &p, &rdig.graph, &complete, c0);
        ensure(rho >= 1, || format!("M({n},{k}): no complete neighbourhood in the intersection digraph"))?;
        let near: BTreeSet<usize> = rdig
            .graph
            .bfs_distances([c0])
            .into_iter()
            .filter(|&(_, dd)| dd <= rho)
            .map(|(c, _)| c)
            .collect();
        let frag = rdig.graph.induced(&near).map_err(e)?;
        let cayley = make_cayley_free_product_mixed(n, k, rho).map_err(e)?;
        let isos = find_mixed_isomorphisms(&frag, &cayley.graph, 1);
        ensure(!isos.is_empty(), || {
            format!("M({n},{k}): intersection fragment of radius {rho} differs from T_{{{n},{k}}}")
        })?;
        // matched-pair relation
        let rel = match_relation(d, &full_degree(b));
        ensure(rel.out_exact.contains(&b.center()), || "center not out-exact".into())?;
        for &x in &rel.out_exact {
            ensure(rel.successors(x).len() == 1, || format!("M({n},{k}): {x} has {:?}", rel.successors(x)))?;
        }
        for &y in &rel.in_exact {
            ensure(rel.predecessors(y).len() == 1, || format!("M({n},{k}): {y} has {:?}", rel.predecessors(y)))?;
        }
        // every ⇒-pair seen in the ball is a pair of the parent graph, so the
        // orbit of the center may be followed past the exact region
        let seen = |x: usize| -> BTreeSet<usize> {
            let mut ys = BTreeSet::new();
            for &z in d.out(x) {
                for &t in d.inn(z) {
                    ys.extend(d.out(t).iter().copied().filter(|&y| y != x && !d.adjacent(x, y)));
                }
            }
            ys
        };
        let mut orbit = vec![b.center()];
        loop {
            let ys = seen(*orbit.last().unwrap());
            ensure(ys.len() == 1, || format!("M({n},{k}): {} has visible successors {ys:?}", orbit.last().unwrap()))?;
            let y = *ys.iter().next().unwrap();
            if y == b.center() || orbit.len() > k {
                break;
            }
            orbit.push(y);
        }
        ensure(orbit.len() == k, || format!("M({n},{k}): center orbit {orbit:?} is not a {k}-cycle"))?;
        let cycles = orbit.len();
        lines.push(format!(
            "M({n},{k}): {} CP_{n} classes, radius-{rho} fragment ≅ T_{{{n},{k}}}, {} vertices on {k}-cycles",
            complete.len(),
            cycles
        ));
    }
    Ok(lines.join("; "))
}

fn c3_m32_is_y3() -> Outcome {
    let r = 4;
    let m = make_m_ball(3, 2, r).map_err(e)?;
    let y = make_y_ball_radius(3, r).map_err(e)?;
    let (gm, gy) = (m.ball.graph(), y.ball.graph());
    let iso = find_isomorphisms(gm, gy, 1)
        .into_iter()
        .next()
        .ok_or("no isomorphism between M(3,2) and Y_3 balls")?;
    ensure(iso.is_isomorphism_between(gm, gy), || "exhibited map is not an isomorphism".into())?;
    Ok(format!(
        "radius {r}: {} vertices, {} arcs, isomorphism verified arc by arc",
        gm.vertex_count(),
        gm.arc_count()
    ))
}

fn c4_property_z() -> Outcome {
    let mut out = Vec::new();
    for (n, k) in [(3usize, 2usize), (4, 3)] {
        let m = make_m_ball(n, k, 4).map_err(e)?;
        let lf = level_assignment(&m.ball).map_err(e)?;
        let c = lf.conflict_cycle.ok_or_else(|| format!("M({n},{k}) levels consistent"))?;
        ensure(!lf.consistent && c.sum != 0, || "zero orientation sum".into())?;
        ensure(c.verify(m.ball.graph()), || "cycle does not replay".into())?;
        // independent recount of the imbalance
        let g = m.ball.graph();
        let sum: i64 = c
            .walk
            .windows(2)
            .map(|w| if g.has_arc(w[0], w[1]) { 1 } else if g.has_arc(w[1], w[0]) { -1 } else { 99 })
            .sum();
        ensure(sum == c.sum && c.walk.first() == c.walk.last(), || "recount mismatch".into())?;
        out.push(format!("M({n},{k}): cycle length {} sum {}", c.walk.len() - 1, c.sum));
    }
    Ok(out.join("; "))
}

fn refutes(ball: &FiniteBall, s: usize, t: usize) -> Result<(CheckReport, bool), String> {
    let rep = check_c_homogeneity(ball, s, t);
    let replay = match &rep.witness {
        Some(w) => w.replay_extension(ball.graph()) == Some(true),
        None => false,
    };
    Ok((rep, replay))
}

fn c5_refutations() -> Outcome {
    let y5 = make_y_ball(5, 2).map_err(e)?;
    let lj = line_ball(&make_j_segment(2, 5).map_err(e)?).map_err(e)?;
    let (ry, oky) = refutes(&y5.ball, 7, 1)?;
    let (rl, okl) = refutes(&lj.ball, 4, 2)?;
    let mut msg = format!(
        "Y_5 (s=7,t=1): {:?}; L(J(2)) (s=4,t=2): {:?}",
        ry.verdict, rl.verdict
    );
    // the smallest sizes that do refute, reported for the record
    let (ry8, oky8) = refutes(&y5.ball, 8, 1)?;
    let (rl5, okl5) = refutes(&lj.ball, 5, 2)?;
    msg.push_str(&format!(
        " | at s=8 Y_5 is {:?} (replay {}), at s=5 L(J(2)) is {:?} (replay {})",
        ry8.verdict, oky8, rl5.verdict, okl5
    ));
    if ry.verdict == Verdict::Refuted && oky && rl.verdict == Verdict::Refuted && okl {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c6_at_scale() -> Outcome {
    let y3 = make_y_ball(3, 3).map_err(e)?;
    let j2 = make_j_segment(2, 5).map_err(e)?;
    let t3 = make_t_ball(3, 3).map_err(e)?;
    let dl = make_dl_ball(&make_bipartite(BipartiteKind::Cp(3)).map_err(e)?, 4).map_err(e)?;
    let cases = [("Y_3", &y3.ball, 5, 2), ("J(2)", &j2.ball, 4, 2), ("T(3)", &t3.ball, 4, 1), ("DL(CP_3)", &dl.ball, 4, 1)];
    let mut out = Vec::new();
    for (name, b, s, t) in cases {
        let rep = check_c_homogeneity(b, s, t);
        ensure(rep.verdict == Verdict::VerifiedAtScale && rep.stats.failures == 0, || {
            format!("{name} (s={s},t={t}): {:?} with {} failures", rep.verdict, rep.stats.failures)
        })?;
        out.push(format!("{name}: {} subsets, {} maps", rep.stats.instances, rep.stats.maps));
    }
    Ok(out.join("; "))
}

fn c7_two_ended() -> Outcome {
    for r in 1..=3 {
        let j = make_j_segment(r, 4).map_err(e)?;
        let kr = make_bipartite(BipartiteKind::Complete(r, r)).map_err(e)?.oriented();
        let deltas = complete_deltas(&j.ball);
        ensure(!deltas.is_empty(), || format!("J({r}): no complete class"))?;
        for d in &deltas {
            ensure(are_isomorphic(&d.delta, &kr), || format!("J({r}): class {} is not K_{{{r},{r}}}", d.class_index))?;
        }
        let fibre: BTreeSet<usize> = (1..=r).map(|x| j.vertex_by_label(&format!("(0,{x})")).unwrap()).collect();
        let ends = ends_probe(&j.ball, &fibre);
        ensure(ends == 2, || format!("J({r}): ends probe gave {ends}"))?;
        let lf = level_assignment(&j.ball).map_err(e)?;
        ensure(lf.consistent, || format!("J({r}): levels inconsistent"))?;
        // levels equal the first coordinate up to the shift at the center
        for (v, l) in &lf.levels {
            let label = j.label(*v).unwrap();
            let i: i64 = label[1..label.find(',').unwrap()].parse().unwrap();
            ensure(*l == i, || format!("J({r}): level of {label} is {l}"))?;
        }
    }
    Ok("Δ(J(r)) ≅ K_{r,r}, two boundary components, consistent levels for r = 1, 2, 3".into())
}

fn c8_triangles() -> Outcome {
    let t3 = make_t_ball(3, 3).map_err(e)?;
    let b = &t3.ball;
    for &u in b.interior() {
        let p = triangle_profile(b, u).map_err(e)?;
        ensure(
            p.triangles.len() == 3 && p.residue.is_empty() && p.pairwise_disjoint && p.extra_arcs.is_empty(),
            || format!("vertex {u}: {p:?}"),
        )?;
    }
    let karc = check_k_arc_transitivity(b, 2, 1).map_err(e)?;
    ensure(karc.verdict == Verdict::Refuted, || format!("2-arc transitivity {:?}", karc.verdict))?;
    let ch = check_c_homogeneity(b, 4, 1);
    ensure(ch.verdict == Verdict::VerifiedAtScale, || format!("C-homogeneity {:?}", ch.verdict))?;
    Ok(format!(
        "{} interior vertices each on 3 disjoint triangles; 2-arc refuted; C-homogeneous at scale",
        b.interior().len()
    ))
}

fn c9_desc_trees() -> Outcome {
    let k23 = make_dl_ball(&make_bipartite(BipartiteKind::Complete(2, 3)).map_err(e)?, 4).map_err(e)?;
    let cp3 = make_dl_ball(&make_bipartite(BipartiteKind::Cp(3)).map_err(e)?, 4).map_err(e)?;
    let m32 = make_m_ball(3, 2, 4).map_err(e)?;
    for (name, b) in [("DL(K_2,3)", &k23.ball), ("DL(CP_3)", &cp3.ball), ("M(3,2)", &m32.ball)] {
        for rep in [is_desc_tree(b, b.center()).map_err(e)?, is_anc_tree(b, b.center()).map_err(e)?] {
            ensure(rep.verdict == Verdict::VerifiedAtScale, || format!("{name}: {} {:?}", rep.check, rep.verdict))?;
        }
    }
    let j2 = make_j_segment(2, 4).map_err(e)?;
    let rep = is_desc_tree(&j2.ball, j2.ball.center()).map_err(e)?;
    ensure(rep.verdict == Verdict::ExactFalse, || format!("J(2): {:?}", rep.verdict))?;
    let Some(Witness::Cycle { vertices }) = rep.witness else {
        return Err("J(2): no cycle witness".into());
    };
    let desc = descendants(&j2.ball, j2.ball.center()).map_err(e)?.vertices;
    let g = j2.ball.graph();
    let ok = vertices.first() == vertices.last()
        && vertices.windows(2).all(|w| g.adjacent(w[0], w[1]))
        && vertices.iter().all(|v| desc.contains(v) && j2.ball.is_interior(*v))
        && vertices[..vertices.len() - 1].iter().collect::<BTreeSet<_>>().len() == vertices.len() - 1;
    ensure(ok, || format!("J(2): witness {vertices:?} does not replay"))?;
    let labels: Vec<&str> = vertices.iter().map(|&v| j2.label(v).unwrap()).collect();
    Ok(format!("trees at scale on DL(K_2,3), DL(CP_3), M(3,2); J(2) cycle {}", labels.join(" ")))
}

fn triangle_free_balls() -> Result<Vec<(String, LabeledBall)>, String> {
    let mut v = Vec::new();
    for k in [
        BipartiteKind::Cycle(6),
        BipartiteKind::Cycle(8),
        BipartiteKind::Complete(2, 2),
        BipartiteKind::Complete(2, 3),
        BipartiteKind::Cp(3),
        BipartiteKind::Cp(4),
    ] {
        v.push((format!("DL({k:?})"), make_dl_ball(&make_bipartite(k).map_err(e)?, 4).map_err(e)?));
    }
    v.push(("DL(T_2,3)".into(), make_dl_tree_ball(2, 3, 4).map_err(e)?));
    for r in 1..=3 {
        v.push((format!("J({r})"), make_j_segment(r, 4).map_err(e)?));
    }
    v.push(("M(3,2)".into(), make_m_ball(3, 2, 4).map_err(e)?));
    v.push(("M(4,3)".into(), make_m_ball(4, 3, 4).map_err(e)?));
    v.push(("Y_3".into(), make_y_ball_radius(3, 4).map_err(e)?));
    v.push(("Y_5".into(), make_y_ball_radius(5, 4).map_err(e)?));
    let dlc6 = make_dl_ball(&make_bipartite(BipartiteKind::Cycle(6)).map_err(e)?, 4).map_err(e)?;
    v.push(("L(DL(C_6))".into(), line_ball(&dlc6).map_err(e)?));
    v.push(("L(J(2))".into(), line_ball(&make_j_segment(2, 4).map_err(e)?).map_err(e)?));
    Ok(v)
}

fn has_triangle(g: &Digraph) -> bool {
    g.vertices().any(|a| {
        let n = g.undirected_neighbors(a);
        n.iter().any(|&b| n.iter().any(|&c| b < c && g.adjacent(b, c)))
    })
}

fn c10_no_cycles() -> Outcome {
    let mut pairs = 0;
    let balls = triangle_free_balls()?;
    for (name, b) in &balls {
        let g = b.ball.graph();
        ensure(!has_triangle(g), || format!("{name} has a triangle"))?;
        ensure(has_directed_cycle(g).is_none(), || format!("{name} has a directed cycle"))?;
        let rep = path_length_uniformity_all(&b.ball).map_err(e)?;
        ensure(rep.verdict == Verdict::ExactTrue, || format!("{name}: {:?}", rep.witness))?;
        pairs += rep.stats.instances;
    }
    Ok(format!("{} balls acyclic, {pairs} interior pairs with uniform walk lengths", balls.len()))
}

fn c11_census() -> Outcome {
    let census = census_c_homogeneous(8).map_err(e)?;
    ensure(census.unexpected.is_empty(), || format!("unexpected: {:?}", census.unexpected))?;
    let found: BTreeMap<CanonicalCode, String> = census
        .found
        .iter()
        .map(|f| {
            let b = BipartiteGraph::new(0..f.nx, f.nx..f.nx + f.ny, f.edges.iter().copied()).unwrap();
            (canonical_code(&b), f.tag.to_string())
        })
        .collect();
    let expected: BTreeMap<CanonicalCode, String> = classified_members(8)
        .map_err(e)?
        .into_iter()
        .map(|(b, t)| (canonical_code(&b), t.to_string()))
        .collect();
    ensure(found == expected, || format!("found {:?} expected {:?}", found.values(), expected.values()))?;
    let tags: Vec<&str> = found.values().map(String::as_str).collect();
    Ok(format!("{} graphs examined, {} found: {}", census.examined, tags.len(), tags.join(" ")))
}

fn c12_dichotomy() -> Outcome {
    let mut balls = triangle_free_balls()?;
    balls.push(("cayley(3,3)".into(), make_cayley_free_product_ball(3, 3, 3).map_err(e)?));
    balls.push(("cayley(2,4)".into(), make_cayley_free_product_ball(2, 4, 4).map_err(e)?));
    let mut complete = 0;
    for (name, b) in &balls {
        for r in complete_deltas(&b.ball) {
            ensure(delta_as_bipartite(&r.delta).is_some(), || format!("{name}: class {} not bipartite", r.class_index))?;
            complete += 1;
        }
    }
    // Claimed: the class of a T(r) arc is universal and non-bipartite.
    for r in [2, 3] {
        let t = make_t_ball(r, 3).map_err(e)?;
        let g = t.ball.graph();
        let arc = (t.ball.center(), g.out(t.ball.center())[0]);
        let rep = reachability_digraph(g, arc, t.ball.interior()).map_err(e)?;
        ensure(rep.universal_at_scale && rep.family == FamilyTag::NonBipartite, || {
            format!(
                "{complete} complete classes bipartite, but T({r}): class of a center arc has {} of {} arcs, family {}",
                rep.arc_count,
                g.arc_count(),
                rep.family
            )
        })?;
        ensure(rep.completeness == Completeness::BoundaryClipped || rep.universal_at_scale, || "".into())?;
    }
    Ok(format!(
        "{complete} complete classes over {} balls all bipartite; T(2), T(3) universal and non-bipartite",
        balls.len()
    ))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
    /// The stated outcome cannot be produced as stated; see README.
    known_unattainable: bool,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "delta recovery for DL bases", limit: Duration::from_secs(10), run: c1_delta_recovery, known_unattainable: false },
        Criterion { id: 2, name: "M(n,k) degrees, CP_n, intersection digraph, matched pairs", limit: Duration::from_secs(30), run: c2_m_claims, known_unattainable: false },
        Criterion { id: 3, name: "M(3,2) ball isomorphic to Y_3 ball", limit: Duration::from_secs(10), run: c3_m32_is_y3, known_unattainable: false },
        Criterion { id: 4, name: "property Z fails for M(3,2), M(4,3)", limit: Duration::from_secs(5), run: c4_property_z, known_unattainable: false },
        Criterion { id: 5, name: "non-C-homogeneity of Y_5 (s=7,t=1) and L(J(2)) (s=4,t=2)", limit: Duration::from_secs(60), run: c5_refutations, known_unattainable: true },
        Criterion { id: 6, name: "C-homogeneity at scale for Y_3, J(2), T(3), DL(CP_3)", limit: Duration::from_secs(300), run: c6_at_scale, known_unattainable: false },
        Criterion { id: 7, name: "two-ended family J(r)", limit: Duration::from_secs(5), run: c7_two_ended, known_unattainable: false },
        Criterion { id: 8, name: "triangle family T(3)", limit: Duration::from_secs(30), run: c8_triangles, known_unattainable: false },
        Criterion { id: 9, name: "descendant trees", limit: Duration::from_secs(30), run: c9_desc_trees, known_unattainable: false },
        Criterion { id: 10, name: "no directed cycles, uniform walk lengths", limit: Duration::from_secs(60), run: c10_no_cycles, known_unattainable: false },
        Criterion { id: 11, name: "bipartite census up to 8 vertices", limit: Duration::from_secs(600), run: c11_census, known_unattainable: false },
        Criterion { id: 12, name: "reachability dichotomy", limit: Duration::from_secs(60), run: c12_dichotomy, known_unattainable: true },
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut hard_failures = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit {:?}: {d}", c.limit)),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" && !c.known_unattainable {
            hard_failures += 1;
        }
        let note = if status == "FAIL" && c.known_unattainable { " [known unattainable as stated]" } else { "" };
        println!("criterion {:>2} {status} {:>8.2}s  {}{note}: {detail}", c.id, took.as_secs_f64(), c.name);
    }
    if hard_failures > 0 {
        eprintln!("{hard_failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
