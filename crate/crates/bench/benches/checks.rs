use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use homodigraph::bipartite::{make_bipartite, BipartiteKind};
use homodigraph::families::*;
use homodigraph::*;

fn checks(c: &mut Criterion) {
    let y3 = make_y_ball(3, 3).unwrap();
    let m43 = make_m_ball(4, 3, 4).unwrap();
    let t3 = make_t_ball(3, 3).unwrap();
    let dl = make_dl_ball(&make_bipartite(BipartiteKind::Cp(3)).unwrap(), 4).unwrap();
    c.bench_function("c-homogeneity y3 s=5 t=2", |b| b.iter(|| check_c_homogeneity(black_box(&y3.ball), 5, 2)));
    c.bench_function("2-arc transitivity t(3)", |b| {
        b.iter(|| check_k_arc_transitivity(black_box(&t3.ball), 2, 1).unwrap())
    });
    c.bench_function("arc classes m(4,3)", |b| b.iter(|| arc_classes(black_box(m43.ball.graph()))));
    c.bench_function("level assignment m(4,3)", |b| b.iter(|| level_assignment(black_box(&m43.ball)).unwrap()));
    c.bench_function("path lengths dl(cp3)", |b| b.iter(|| path_length_uniformity_all(black_box(&dl.ball)).unwrap()));
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("n=6", |b| b.iter(|| census_c_homogeneous(black_box(6)).unwrap()));
    g.finish();
}

criterion_group!(benches, checks);
criterion_main!(benches);
