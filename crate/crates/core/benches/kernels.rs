use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xfc_core::analysis::tset_table;
use xfc_core::constructions::{genl_equality_construction, split_1100_construction};
use xfc_core::designs::sts;
use xfc_core::matrix::{contains_config, max_block_multiplicity};
use xfc_core::par::with_workers;
use xfc_core::search::{
    exact_max_with, exhaustive_oracle, MultiplicityPolicy, SearchOptions, SearchProblem,
};
use xfc_core::Configuration;

/// `1` is the sequential path; `0` is the default rayon pool.
const WORKERS: [usize; 2] = [1, 0];

fn label(workers: usize) -> &'static str {
    if workers == 1 {
        "sequential"
    } else {
        "parallel"
    }
}

fn search(c: &mut Criterion) {
    let p = SearchProblem::new(
        8,
        Configuration::block(2, 2, 1),
        3..=7,
        MultiplicityPolicy::Free,
    )
    .unwrap();
    let mut g = c.benchmark_group("exact_max_m8_block221");
    g.sample_size(10);
    for w in WORKERS {
        g.bench_with_input(BenchmarkId::from_parameter(label(w)), &w, |b, &w| {
            b.iter(|| {
                exact_max_with(black_box(&p), SearchOptions { workers: w })
                    .unwrap()
                    .optimum
            })
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let p = SearchProblem::new(
        4,
        Configuration::block(2, 1, 1),
        0..=4,
        MultiplicityPolicy::Simple,
    )
    .unwrap();
    let mut g = c.benchmark_group("oracle_m4_block211");
    for w in WORKERS {
        g.bench_with_input(BenchmarkId::from_parameter(label(w)), &w, |b, &w| {
            b.iter(|| with_workers(w, || exhaustive_oracle(black_box(&p)).unwrap().optimum))
        });
    }
    g.finish();
}

fn tsets(c: &mut Criterion) {
    let a = genl_equality_construction(2, 1, &sts(43).unwrap())
        .unwrap()
        .matrix;
    let mut g = c.benchmark_group("tset_table_genl_m43");
    for w in WORKERS {
        g.bench_with_input(BenchmarkId::from_parameter(label(w)), &w, |b, &w| {
            b.iter(|| with_workers(w, || tset_table(black_box(&a), 2, 1).unwrap().sum_d()))
        });
    }
    g.finish();
}

fn containment(c: &mut Criterion) {
    let a = split_1100_construction(13, 1, 1).unwrap().matrix;
    let f = Configuration::block(5, 2, 2);
    c.bench_function("block_contains_split1100_m13", |b| {
        b.iter(|| contains_config(black_box(&f), black_box(&a)))
    });
    c.bench_function("max_block_multiplicity_split1100_m13", |b| {
        b.iter(|| max_block_multiplicity(black_box(&a), 2, 2).unwrap().count)
    });
}

criterion_group!(benches, search, oracle, tsets, containment);
criterion_main!(benches);
