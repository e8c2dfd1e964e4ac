//! Exact extremal values `max ||A||` over `m`-rowed matrices avoiding `q·1_t0_l`, with
//! restricted column sums and a per-sum multiplicity policy.
//!
//! The branch-and-bound adds candidate columns in a fixed order (sum ascending, then
//! lexicographic), never adding a column that precedes the last one added, so every
//! column multiset is visited at most once. Each row split `(T, L)` carries a residual
//! budget of `q-1` supporting columns; pruning combines the remaining multiplicity caps
//! with a fractional packing of candidate weights into the residual budgets.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::combinatorics::lex_subsets;
use crate::error::{Error, Result};
use crate::matrix::{contains_config, row_splits, BinMatrix, Column, Configuration};
use crate::par;

/// Which columns may repeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplicityPolicy {
    /// No repeated columns.
    Simple,
    /// Any column may repeat.
    Free,
    /// Sums `0..=t` and `m-l+1..=m` unrepeatable, the middle sums free. Spelled `paper`
    /// on the command line.
    #[serde(rename = "paper")]
    MiddleFree,
}

impl std::str::FromStr for MultiplicityPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Self::Simple),
            "free" => Ok(Self::Free),
            "paper" | "middle-free" => Ok(Self::MiddleFree),
            other => Err(Error::InvalidParameters(format!(
                "unknown policy {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub m: usize,
    pub config: Configuration,
    /// Allowed column sums, sorted and deduplicated.
    pub sums: Vec<usize>,
    pub policy: MultiplicityPolicy,
    pub node_budget: Option<u64>,
}

impl SearchProblem {
    pub fn new<I: IntoIterator<Item = usize>>(
        m: usize,
        config: Configuration,
        sums: I,
        policy: MultiplicityPolicy,
    ) -> Result<Self> {
        let mut sums: Vec<usize> = sums.into_iter().collect();
        sums.sort_unstable();
        sums.dedup();
        if let Some(&s) = sums.iter().find(|&&s| s > m) {
            return Err(Error::InvalidParameters(format!(
                "column sum {s} exceeds m = {m}"
            )));
        }
        Ok(SearchProblem {
            m,
            config,
            sums,
            policy,
            node_budget: None,
        })
    }

    pub fn with_budget(mut self, nodes: Option<u64>) -> Self {
        self.node_budget = nodes;
        self
    }

    /// Candidate columns in branching order.
    pub fn candidates(&self) -> Vec<Column> {
        let rows: Vec<usize> = (0..self.m).collect();
        self.sums
            .iter()
            .flat_map(|&s| {
                lex_subsets(&rows, s)
                    .map(|set| Column::from_ones(self.m, set))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    fn repeatable(&self, sum: usize) -> bool {
        match (self.policy, &self.config) {
            (MultiplicityPolicy::Simple, _) => false,
            (MultiplicityPolicy::Free, _) => true,
            (MultiplicityPolicy::MiddleFree, &Configuration::Block { t, l, .. }) => {
                sum > t && sum + l <= self.m
            }
            (MultiplicityPolicy::MiddleFree, Configuration::General(_)) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: BinMatrix,
    pub nodes: u64,
    pub proof_of_optimality: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchJson {
    pub m: usize,
    pub optimum: usize,
    pub nodes: u64,
    pub proof_of_optimality: bool,
    /// 1-based 1-sets of the witness columns.
    pub witness_columns: Vec<Vec<usize>>,
}

impl SearchResult {
    pub fn to_json(&self) -> SearchJson {
        SearchJson {
            m: self.witness.rows(),
            optimum: self.optimum,
            nodes: self.nodes,
            proof_of_optimality: self.proof_of_optimality,
            witness_columns: self
                .witness
                .columns()
                .iter()
                .map(|c| c.ones().map(|r| r + 1).collect())
                .collect(),
        }
    }
}

/// Runtime knobs for [`exact_max_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// `1` runs the sequential search; `0` uses the default thread count.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1 }
    }
}

struct Kernel {
    m: usize,
    budget: u32,
    cands: Vec<Column>,
    sums: Vec<usize>,
    weight: Vec<u32>,
    cap: Vec<u32>,
    touches: Vec<Vec<u32>>,
    nsplits: usize,
}

impl Kernel {
    fn build(p: &SearchProblem) -> Result<Kernel> {
        let Configuration::Block { q, t, l } = p.config else {
            return Err(Error::Unsupported(
                "exact_max needs a Block configuration; use exhaustive_oracle for general patterns"
                    .into(),
            ));
        };
        let m = p.m;
        if q == 0 && t + l <= m {
            return Err(Error::Infeasible(
                "an empty pattern is contained in every matrix".into(),
            ));
        }
        let splits: Vec<(Column, Column)> = row_splits(m, t, l).map(|s| s.masks(m)).collect();
        let cands = p.candidates();
        let mut touches = Vec::with_capacity(cands.len());
        let mut cap = Vec::with_capacity(cands.len());
        let mut sums = Vec::with_capacity(cands.len());
        for c in &cands {
            let tc: Vec<u32> = splits
                .iter()
                .enumerate()
                .filter(|(_, (o, z))| c.covers(o) && c.avoids(z))
                .map(|(i, _)| i as u32)
                .collect();
            let s = c.sum();
            let k = if !p.repeatable(s) {
                1
            } else if tc.is_empty() {
                return Err(Error::Unbounded(format!(
                    "column {:?} may repeat and never supports the pattern",
                    c.ones_vec()
                )));
            } else {
                // q copies of one supporting column would contain the pattern
                q.saturating_sub(1).max(1) as u32
            };
            cap.push(k);
            sums.push(s);
            touches.push(tc);
        }
        let weight = touches.iter().map(|t| t.len() as u32).collect();
        Ok(Kernel {
            m,
            budget: q.saturating_sub(1) as u32,
            cands,
            sums,
            weight,
            cap,
            touches,
            nsplits: splits.len(),
        })
    }

    fn witness(&self, chosen: &[(u32, u32)]) -> BinMatrix {
        let mut a = BinMatrix::empty(self.m);
        for &(c, k) in chosen {
            for _ in 0..k {
                a.push(self.cands[c as usize].clone());
            }
        }
        a
    }
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    node_budget: Option<u64>,
    flush: u64,
}

struct Worker<'k> {
    k: &'k Kernel,
    shared: &'k Shared,
    support: Vec<u32>,
    count: Vec<u32>,
    chosen: Vec<(u32, u32)>,
    size: usize,
    local_nodes: u64,
    best_size: Option<usize>,
    best: Vec<(u32, u32)>,
    demand: Vec<u32>,
    bucket: Vec<u64>,
}

/// `(first root index, best size seen, its columns, unflushed node count)`.
type UnitOutcome = (usize, Option<usize>, Vec<(u32, u32)>, u64);

const FLUSH: u64 = 1024;

fn flush_interval(budget: Option<u64>) -> u64 {
    budget.map_or(FLUSH, |b| (b / 16).clamp(1, FLUSH))
}

impl<'k> Worker<'k> {
    fn new(k: &'k Kernel, shared: &'k Shared) -> Self {
        Worker {
            k,
            shared,
            support: vec![0; k.nsplits],
            count: vec![0; k.cands.len()],
            chosen: Vec::new(),
            size: 0,
            local_nodes: 0,
            best_size: None,
            best: Vec::new(),
            demand: vec![0; k.nsplits],
            bucket: vec![0; k.m + 1],
        }
    }

    fn addable(&self, c: u32) -> bool {
        let c = c as usize;
        self.count[c] < self.k.cap[c]
            && self.k.touches[c]
                .iter()
                .all(|&s| self.support[s as usize] < self.k.budget)
    }

    fn push(&mut self, c: u32) {
        let ci = c as usize;
        for &s in &self.k.touches[ci] {
            self.support[s as usize] += 1;
        }
        self.count[ci] += 1;
        match self.chosen.last_mut() {
            Some((last, n)) if *last == c => *n += 1,
            _ => self.chosen.push((c, 1)),
        }
        self.size += 1;
    }

    fn pop(&mut self, c: u32) {
        let ci = c as usize;
        for &s in &self.k.touches[ci] {
            self.support[s as usize] -= 1;
        }
        self.count[ci] -= 1;
        let last = self.chosen.last_mut().expect("pop after push");
        last.1 -= 1;
        if last.1 == 0 {
            self.chosen.pop();
        }
        self.size -= 1;
    }

    fn remaining_cap(&self, c: u32) -> u64 {
        (self.k.cap[c as usize] - self.count[c as usize]) as u64
    }

    /// Upper bound on how many more columns from `avail` can be added.
    fn bound(&mut self, avail: &[u32]) -> u64 {
        let caps: u64 = avail.iter().map(|&c| self.remaining_cap(c)).sum();
        let mut free = 0u64;
        for b in self.bucket.iter_mut() {
            *b = 0;
        }
        for &c in avail {
            let r = self.remaining_cap(c);
            let ci = c as usize;
            if self.k.weight[ci] == 0 {
                free += r;
                continue;
            }
            self.bucket[self.k.sums[ci]] += r;
            for &s in &self.k.touches[ci] {
                self.demand[s as usize] += r as u32;
            }
        }
        // residual budget that some remaining candidate could still use
        let mut residual = 0u64;
        for s in 0..self.k.nsplits {
            let d = self.demand[s];
            if d > 0 {
                residual += d.min(self.k.budget - self.support[s]) as u64;
                self.demand[s] = 0;
            }
        }
        // all candidates of one sum share a weight
        let mut by_weight: Vec<(u64, u64)> = self
            .bucket
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(s, &n)| (self.weight_of_sum(s), n))
            .collect();
        by_weight.sort_unstable();
        let mut packed = free;
        for (w, n) in by_weight {
            let take = (residual / w).min(n);
            packed += take;
            residual -= take * w;
            if take < n {
                break;
            }
        }
        caps.min(packed)
    }

    fn weight_of_sum(&self, s: usize) -> u64 {
        let i = self.k.sums.partition_point(|&x| x < s);
        self.k.weight[i] as u64
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        let flush = self.shared.flush;
        if self.local_nodes.is_multiple_of(flush) {
            let total = self.shared.nodes.fetch_add(flush, Ordering::Relaxed) + flush;
            if self.shared.node_budget.is_some_and(|b| total >= b) {
                self.shared.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    fn record(&mut self) {
        let prev = self.shared.best.fetch_max(self.size, Ordering::AcqRel);
        if self.size > prev || (self.size == prev && self.best_size.is_none() && self.size == 0) {
            self.best_size = Some(self.size);
            self.best = self.chosen.clone();
        }
    }

    fn dfs(&mut self, avail: &[u32]) {
        if !self.tick() {
            return;
        }
        if self.size > self.shared.best.load(Ordering::Acquire) {
            self.record();
        }
        if avail.is_empty() {
            return;
        }
        let best = self.shared.best.load(Ordering::Acquire) as u64;
        if self.size as u64 + self.bound(avail) <= best {
            return;
        }
        let mut suffix_caps: u64 = avail.iter().map(|&c| self.remaining_cap(c)).sum();
        for idx in 0..avail.len() {
            let best = self.shared.best.load(Ordering::Acquire) as u64;
            if self.size as u64 + suffix_caps <= best {
                break;
            }
            let c = avail[idx];
            suffix_caps -= self.remaining_cap(c);
            self.push(c);
            let next: Vec<u32> = avail[idx..]
                .iter()
                .copied()
                .filter(|&x| self.addable(x))
                .collect();
            self.dfs(&next);
            self.pop(c);
            if self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Subtree whose first (smallest) column is `avail[idx]`.
    fn unit(&mut self, avail: &[u32], idx: usize) {
        let caps: u64 = avail[idx..].iter().map(|&c| self.remaining_cap(c)).sum();
        if caps <= self.shared.best.load(Ordering::Acquire) as u64 {
            return;
        }
        let c = avail[idx];
        self.push(c);
        let next: Vec<u32> = avail[idx..]
            .iter()
            .copied()
            .filter(|&x| self.addable(x))
            .collect();
        self.dfs(&next);
        self.pop(c);
    }
}

/// [`exact_max_with`] on a single worker.
pub fn exact_max(p: &SearchProblem) -> Result<SearchResult> {
    exact_max_with(p, SearchOptions::default())
}

/// Branch-and-bound optimum. The optimum and proof flag do not depend on `workers`; with
/// more than one worker the witness may be any optimal matrix.
pub fn exact_max_with(p: &SearchProblem, opts: SearchOptions) -> Result<SearchResult> {
    let kernel = Kernel::build(p)?;
    let shared = Shared {
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        node_budget: p.node_budget,
        flush: flush_interval(p.node_budget),
    };
    let root: Vec<u32> = {
        let w = Worker::new(&kernel, &shared);
        (0..kernel.cands.len() as u32)
            .filter(|&c| w.addable(c))
            .collect()
    };
    shared.nodes.fetch_add(1, Ordering::Relaxed);

    let results: Vec<UnitOutcome> = if opts.workers == 1 || !par::is_parallel() {
        let mut w = Worker::new(&kernel, &shared);
        for idx in 0..root.len() {
            w.unit(&root, idx);
            if shared.aborted.load(Ordering::Relaxed) {
                break;
            }
        }
        vec![(0, w.best_size, w.best, w.local_nodes % shared.flush)]
    } else {
        let out = Mutex::new(Vec::new());
        par::with_workers(opts.workers, || {
            par::map_range(root.len(), |idx| {
                if shared.aborted.load(Ordering::Relaxed) {
                    return;
                }
                let mut w = Worker::new(&kernel, &shared);
                w.unit(&root, idx);
                out.lock().expect("worker panicked").push((
                    idx,
                    w.best_size,
                    w.best,
                    w.local_nodes % shared.flush,
                ));
            });
        });
        out.into_inner().expect("worker panicked")
    };

    let optimum = shared.best.load(Ordering::Acquire);
    let leftover: u64 = results.iter().map(|r| r.3).sum();
    let nodes = shared.nodes.load(Ordering::Relaxed) + leftover;
    let witness = results
        .iter()
        .filter(|r| r.1 == Some(optimum))
        .min_by_key(|r| r.0)
        .map(|r| kernel.witness(&r.2))
        .unwrap_or_else(|| BinMatrix::empty(p.m));
    let proof_of_optimality = !shared.aborted.load(Ordering::Relaxed);
    Ok(SearchResult {
        optimum: witness.ncols(),
        witness,
        nodes,
        proof_of_optimality,
    })
}

/// Largest number of candidate columns enumerable by [`exhaustive_oracle`].
pub const ORACLE_MAX_CANDIDATES: usize = 24;

/// Brute force over every subset of the candidate columns. Simple policy only.
pub fn exhaustive_oracle(p: &SearchProblem) -> Result<SearchResult> {
    if p.policy != MultiplicityPolicy::Simple {
        return Err(Error::Unsupported(
            "the oracle enumerates simple matrices only".into(),
        ));
    }
    let cands = p.candidates();
    let n = cands.len();
    if n > ORACLE_MAX_CANDIDATES {
        return Err(Error::TooLarge(format!(
            "{n} candidate columns exceeds the oracle cap of {ORACLE_MAX_CANDIDATES}"
        )));
    }
    let m = p.m;
    let subset = |mask: u64| {
        BinMatrix::from_columns(
            m,
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cands[i].clone())
                .collect(),
        )
    };
    let avoids: Box<dyn Fn(u64) -> bool + Sync + Send> = match p.config {
        Configuration::Block { q, t, l } => {
            if t + l > m {
                Box::new(|_| true)
            } else {
                // one bitmask of supporting candidates per split
                let masks: Vec<u64> = row_splits(m, t, l)
                    .map(|s| {
                        let (o, z) = s.masks(m);
                        (0..n)
                            .filter(|&i| cands[i].covers(&o) && cands[i].avoids(&z))
                            .fold(0u64, |acc, i| acc | 1 << i)
                    })
                    .collect();
                Box::new(move |mask| {
                    masks
                        .iter()
                        .all(|sm| ((mask & sm).count_ones() as usize) < q)
                })
            }
        }
        Configuration::General(_) => {
            let f = p.config.clone();
            Box::new(move |mask| !contains_config(&f, &subset(mask)))
        }
    };
    // best = (size, smallest mask of that size)
    let (size, mask) = par::reduce_range(
        1u64 << n,
        (0usize, u64::MAX),
        |mask| {
            if avoids(mask) {
                (mask.count_ones() as usize, mask)
            } else {
                (0, u64::MAX)
            }
        },
        |a, b| {
            if a.0 != b.0 {
                if a.0 > b.0 {
                    a
                } else {
                    b
                }
            } else if a.1 <= b.1 {
                a
            } else {
                b
            }
        },
    );
    if mask == u64::MAX {
        return Err(Error::Infeasible(
            "no subset of the candidates avoids the pattern".into(),
        ));
    }
    Ok(SearchResult {
        optimum: size,
        witness: subset(mask),
        nodes: 1u64 << n,
        proof_of_optimality: true,
    })
}

/// `a` respects the row count, allowed sums and multiplicity policy, and avoids the pattern.
pub fn verify_witness(p: &SearchProblem, a: &BinMatrix) -> bool {
    if a.rows() != p.m {
        return false;
    }
    if !a.column_sums().all(|s| p.sums.binary_search(&s).is_ok()) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for c in a.columns() {
        if !seen.insert(c) && !p.repeatable(c.sum()) {
            return false;
        }
    }
    !contains_config(&p.config, a)
}
