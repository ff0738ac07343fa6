//! Graphviz DOT rendering of a ball.

use std::collections::BTreeSet;
use std::fmt::Write;

use homodigraph::{arc_classes, match_relation, LabeledBall};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

#[derive(Clone, Copy, Debug, Default)]
pub struct DotOptions {
    /// Colour arcs by reachability class.
    pub classes: bool,
    /// Draw matched pairs as dotted undirected edges.
    pub matched: bool,
    /// Style interior and boundary vertices differently.
    pub boundary: bool,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(b: &LabeledBall, opts: DotOptions) -> String {
    let g = b.ball.graph();
    let mut out = String::from("digraph ball {\n");
    for v in g.vertices() {
        let label = b.label(v).unwrap_or_default();
        let mut attrs = vec![format!("label={}", quote(label))];
        if opts.boundary {
            if v == b.ball.center() {
                attrs.push("shape=doublecircle".into());
            }
            if !b.ball.is_interior(v) {
                attrs.push("style=dashed".into());
                attrs.push("color=gray".into());
            }
        }
        writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
    }
    let classes = opts.classes.then(|| arc_classes(g));
    for (u, v) in g.arcs() {
        match &classes {
            Some(p) => {
                let c = p.class_of((u, v)).expect("arc of this digraph");
                writeln!(out, "  {u} -> {v} [color=\"{}\"];", PALETTE[c % PALETTE.len()]).unwrap();
            }
            None => writeln!(out, "  {u} -> {v};").unwrap(),
        }
    }
    if opts.matched {
        let rel = match_relation(g, b.ball.interior());
        let pairs: BTreeSet<(usize, usize)> = rel.pairs().map(|(x, y)| (x.min(y), x.max(y))).collect();
        for (x, y) in pairs {
            writeln!(out, "  {x} -> {y} [style=dotted, dir=none];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
