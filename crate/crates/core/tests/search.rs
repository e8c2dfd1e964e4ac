use num::{BigInt, BigRational};
use xfc_core::bounds::{designconfig_bound, pigeonhole_terms, SumProfile};
use xfc_core::constructions::{exceeder_construction, q10_construction};
use xfc_core::search::{
    exact_max, exact_max_with, exhaustive_oracle, verify_witness, MultiplicityPolicy,
    SearchOptions, SearchProblem,
};
use xfc_core::{BinMatrix, Configuration};

use MultiplicityPolicy::*;

fn problem(
    m: usize,
    (q, t, l): (usize, usize, usize),
    sums: impl IntoIterator<Item = usize>,
    policy: MultiplicityPolicy,
) -> SearchProblem {
    SearchProblem::new(m, Configuration::block(q, t, l), sums, policy).unwrap()
}

/// Largest simple matrix avoiding `(2·e_i - e_j)`-style pairs, counted by hand: for
/// `2·1_1 0_1` each ordered row pair admits one supporting column.
#[test]
fn regression_fixture_three_rows() {
    let p = problem(3, (2, 1, 1), 0..=3, Simple);
    let r = exhaustive_oracle(&p).unwrap();
    assert_eq!(r.optimum, 5);
    assert_eq!(exact_max(&p).unwrap().optimum, 5);
    assert!(verify_witness(&p, &r.witness));
}

#[test]
fn optimum_independent_of_workers() {
    let cases = [
        problem(5, (3, 1, 1), 0..=5, Simple),
        problem(6, (2, 2, 1), 3..=5, Free),
        problem(7, (2, 2, 1), 3..=6, Free),
        problem(5, (3, 2, 1), 2..=4, MiddleFree),
    ];
    for p in &cases {
        let base = exact_max(p).unwrap();
        assert!(base.proof_of_optimality);
        assert!(verify_witness(p, &base.witness));
        for workers in [0, 2, 4] {
            let r = exact_max_with(p, SearchOptions { workers }).unwrap();
            assert_eq!(r.optimum, base.optimum, "{p:?} workers = {workers}");
            assert!(r.proof_of_optimality);
            assert!(verify_witness(p, &r.witness));
        }
        // the single-worker witness is the canonical one
        assert_eq!(exact_max(p).unwrap().witness, base.witness);
    }
}

#[test]
fn constructions_are_lower_bounds() {
    let c = exceeder_construction(2, 1, 1).unwrap();
    let p = problem(4, (3, 2, 1), 0..=4, Simple);
    assert!(verify_witness(&p, &c.matrix));
    assert!(exact_max(&p).unwrap().optimum >= c.matrix.ncols());

    for m in [4, 5] {
        let c = q10_construction(3, m).unwrap();
        let p = problem(m, (3, 1, 1), 0..=m, Simple);
        assert!(verify_witness(&p, &c.matrix));
        assert!(exact_max(&p).unwrap().optimum >= c.matrix.ncols());
    }
}

fn profile(a: &BinMatrix, t: usize) -> SumProfile {
    let p = a.column_profile(t);
    SumProfile {
        a_t: p.a_t as u64,
        a_t1: p.a_t1 as u64,
        a_ge_t2: p.a_ge_t2 as u64,
    }
}

#[test]
fn optimum_respects_closed_form_bounds() {
    // sum-(t+1) columns only: each t-set lies in at most lambda columns
    for m in 4..=7 {
        let p = problem(m, (2, 2, 0), [3], Free);
        let r = exact_max(&p).unwrap();
        let bound = designconfig_bound(2, 3, 1, m).unwrap();
        assert!(
            BigRational::from_integer(BigInt::from(r.optimum)) <= bound.exact,
            "m = {m}"
        );
    }
    // the pigeonhole count of the optimal witness stays within its budget
    for m in 5..=7 {
        let p = problem(m, (3, 2, 1), 2..=3, MiddleFree);
        let r = exact_max(&p).unwrap();
        let terms = pigeonhole_terms(2, 1, 1, m, profile(&r.witness, 2)).unwrap();
        assert!(terms.holds, "m = {m}");
    }
}

#[test]
fn witness_checks_reject_policy_breaches() {
    let p = problem(4, (3, 2, 1), 2..=3, MiddleFree);
    let doubled = BinMatrix::from_sets(4, [vec![0, 1], vec![0, 1]]).unwrap();
    assert!(!verify_witness(&p, &doubled));
    let heavy = BinMatrix::from_sets(4, [vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
    assert!(verify_witness(&p, &heavy));
    let out_of_range = BinMatrix::from_sets(4, [vec![0]]).unwrap();
    assert!(!verify_witness(&p, &out_of_range));
}
