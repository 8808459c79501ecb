use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use trapezoid::corpus::{jaw_chains, load_corpus, JAW_ORDER};
use trapezoid::solver::{forced_disjunction, solve_poset, Mode, SolveOptions};
use trapezoid::verify::verify_corpus;
use trapezoid::verify::Corpus;

fn variants() -> [(&'static str, SolveOptions); 2] {
    [
        ("sequential", SolveOptions::sequential()),
        (
            "parallel",
            SolveOptions {
                threads: 0,
                ..SolveOptions::default()
            },
        ),
    ]
}

fn queries(c: &mut Criterion) {
    let jaw = load_corpus("jaw").unwrap().poset;
    let improper = load_corpus("improper").unwrap().poset;
    let pnu = load_corpus("pnu").unwrap().poset;
    let chains = jaw_chains(&jaw, &JAW_ORDER).unwrap();

    let mut g = c.benchmark_group("jaw-forcing");
    for (name, o) in variants() {
        g.bench_function(name, |b| {
            b.iter(|| forced_disjunction(black_box(&jaw), Mode::Any, &chains, &o).holds)
        });
    }
    g.finish();

    let mut g = c.benchmark_group("improper-proper-unsat");
    for (name, o) in variants() {
        g.bench_function(name, |b| {
            b.iter(|| solve_poset(black_box(&improper), Mode::Proper, &o).is_unsat())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("pnu-unit-unsat");
    g.sample_size(10);
    for (name, o) in variants() {
        g.bench_function(name, |b| {
            b.iter(|| solve_poset(black_box(&pnu), Mode::Unit, &o).is_unsat())
        });
    }
    g.finish();
}

fn full_run(c: &mut Criterion) {
    let corpus = Corpus::builtin().unwrap();
    let mut g = c.benchmark_group("verify-all");
    g.sample_size(10);
    for (name, o) in variants() {
        g.bench_function(name, |b| b.iter(|| verify_corpus(black_box(&corpus), &o).exit_code()));
    }
    g.finish();
}

criterion_group!(benches, queries, full_run);
criterion_main!(benches);
