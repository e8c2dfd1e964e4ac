//! Counting quantities over the t-subsets of rows, and audits of the inequalities they
//! satisfy for matrices avoiding `(lambda+2)·1_t0_l`.
//!
//! For a t-set `S`: `mu(S)` says whether `S` is a column of sum `t`, and `d(S)` counts the
//! columns of sum `t+1` containing it, with multiplicity. `E` is the set of t-sets with
//! `mu = 0`; `Y` ("typical") is the set with `mu = 1` and `d = lambda`.
//!
//! t-sets are always enumerated in colex order, and witnesses are the first failure in
//! that order. Witness rows are reported 1-based.

use std::collections::HashSet;

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::bounds::{self, fmt_ratio, per_power, SumProfile};
use crate::combinatorics::{binomial, binomial_big, colex_rank, colex_subsets};
use crate::error::{Error, Result};
use crate::matrix::{max_block_multiplicity, BinMatrix, Column};
use crate::par;

/// 0-based rows of a t-set, ascending.
pub type Tset = Vec<usize>;

/// Per-t-set `mu` and `d`, indexed by colex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsetTable {
    pub m: usize,
    pub t: usize,
    pub lambda: usize,
    pub sets: Vec<Vec<usize>>,
    pub mu: Vec<bool>,
    pub d: Vec<u64>,
}

impl TsetTable {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn rank(&self, set: &[usize]) -> usize {
        colex_rank(set)
    }

    pub fn in_e(&self, i: usize) -> bool {
        !self.mu[i]
    }

    pub fn in_y(&self, i: usize) -> bool {
        self.mu[i] && self.d[i] == self.lambda as u64
    }

    pub fn e_size(&self) -> usize {
        self.mu.iter().filter(|&&x| !x).count()
    }

    pub fn y_flags(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.in_y(i)).collect()
    }

    pub fn y_size(&self) -> usize {
        (0..self.len()).filter(|&i| self.in_y(i)).count()
    }

    pub fn sum_mu(&self) -> u64 {
        self.mu.iter().filter(|&&x| x).count() as u64
    }

    pub fn sum_d(&self) -> u64 {
        self.d.iter().sum()
    }
}

/// Builds the table; the t-sets are split across workers and each cell is written once.
pub fn tset_table(a: &BinMatrix, t: usize, lambda: usize) -> Result<TsetTable> {
    let m = a.rows();
    if t > m {
        return Err(Error::InvalidParameters(format!("t = {t} exceeds m = {m}")));
    }
    let sum_t: HashSet<&Column> = a.columns().iter().filter(|c| c.sum() == t).collect();
    let sum_t1: Vec<&Column> = a.columns().iter().filter(|c| c.sum() == t + 1).collect();
    let sets: Vec<Vec<usize>> = colex_subsets(m, t).collect();
    let cells = par::map_collect(&sets, |s| {
        let mask = Column::from_ones(m, s.iter().copied());
        let d = sum_t1.iter().filter(|c| c.covers(&mask)).count() as u64;
        (sum_t.contains(&mask), d)
    });
    let (mu, d) = cells.into_iter().unzip();
    Ok(TsetTable {
        m,
        t,
        lambda,
        sets,
        mu,
        d,
    })
}

/// Lexicographically least `k`-set of vertices all of whose `t`-subsets are edges.
/// `edge` is indexed by colex rank of t-subsets of `0..m`.
pub fn least_clique(m: usize, t: usize, k: usize, edge: &[bool]) -> Option<Vec<usize>> {
    if k > m {
        return None;
    }
    if k < t {
        return Some((0..k).collect());
    }
    if t == 0 {
        return edge
            .first()
            .copied()
            .unwrap_or(false)
            .then(|| (0..k).collect());
    }
    // a vertex of a k-clique lies in C(k-1, t-1) of its edges
    let need = binomial(k - 1, t - 1) as u64;
    let mut degree = vec![0u64; m];
    for (i, s) in colex_subsets(m, t).enumerate() {
        if edge[i] {
            for &v in &s {
                degree[v] += 1;
            }
        }
    }
    let mut chosen = Vec::with_capacity(k);
    #[allow(clippy::too_many_arguments)]
    fn grow(
        start: usize,
        chosen: &mut Vec<usize>,
        k: usize,
        t: usize,
        m: usize,
        edge: &[bool],
        degree: &[u64],
        need: u64,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in start..m {
            if m - v < k - chosen.len() {
                break;
            }
            if degree[v] < need {
                continue;
            }
            let closes = chosen.len() + 1 < t
                || itertools::Itertools::combinations(chosen.iter().copied(), t - 1).all(
                    |mut s| {
                        s.push(v);
                        edge[colex_rank(&s)]
                    },
                );
            if closes {
                chosen.push(v);
                if grow(v + 1, chosen, k, t, m, edge, degree, need) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    grow(0, &mut chosen, k, t, m, edge, &degree, need).then_some(chosen)
}

/// Least `k`-set of rows `B` with every t-subset of `B` typical. 0-based.
pub fn typical_clique(
    a: &BinMatrix,
    t: usize,
    lambda: usize,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    let table = tset_table(a, t, lambda)?;
    Ok(least_clique(a.rows(), t, k, &table.y_flags()))
}

/// `W_R`: t-subsets of sum-(t+1) columns meeting `R`; `Z_R = Y \ W_R`. Both in colex order.
pub fn w_z_sets(
    a: &BinMatrix,
    t: usize,
    lambda: usize,
    r: &[usize],
) -> Result<(Vec<Tset>, Vec<Tset>)> {
    let table = tset_table(a, t, lambda)?;
    let w = w_flags(a, t, r)?;
    let ws = table
        .sets
        .iter()
        .zip(&w)
        .filter(|(_, &x)| x)
        .map(|(s, _)| s.clone())
        .collect();
    let zs = (0..table.len())
        .filter(|&i| table.in_y(i) && !w[i])
        .map(|i| table.sets[i].clone())
        .collect();
    Ok((ws, zs))
}

fn meeting(a: &BinMatrix, t: usize, r: &[usize]) -> Result<Vec<Column>> {
    let m = a.rows();
    if let Some(&x) = r.iter().find(|&&x| x >= m) {
        return Err(Error::RowOutOfRange { row: x, rows: m });
    }
    let rmask = Column::from_ones(m, r.iter().copied());
    Ok(a.columns()
        .iter()
        .filter(|c| c.sum() == t + 1 && !c.avoids(&rmask))
        .cloned()
        .collect())
}

fn w_flags(a: &BinMatrix, t: usize, r: &[usize]) -> Result<Vec<bool>> {
    let mut w = vec![false; binomial(a.rows(), t) as usize];
    for c in meeting(a, t, r)? {
        let ones = c.ones_vec();
        for s in itertools::Itertools::combinations(ones.iter().copied(), t) {
            w[colex_rank(&s)] = true;
        }
    }
    Ok(w)
}

/// A concrete object certifying a failed check. Rows are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Tset { rows: Vec<usize> },
    Row { row: usize },
    Column { index: usize, ones: Vec<usize> },
    RowSet { rows: Vec<usize> },
    Split { ones: Vec<usize>, zeros: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub holds: bool,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn new(id: &str, statement: impl Into<String>, holds: bool) -> Self {
        Check {
            id: id.into(),
            statement: statement.into(),
            holds,
            lhs: None,
            rhs: None,
            witness: None,
        }
    }

    fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        self
    }

    fn witness(mut self, w: Option<Witness>) -> Self {
        self.witness = w;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowSetReport {
    /// 1-based.
    pub rows: Vec<usize>,
    pub a_t1_r: u64,
    pub w_size: usize,
    pub z_size: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub m: usize,
    pub t: usize,
    pub l: usize,
    pub lambda: usize,
    /// Columns with sums in `t..=m-l`; only these enter the audits.
    pub audited_columns: usize,
    pub excluded_columns: usize,
    pub profile: SumProfile,
    pub tsets: usize,
    pub e_size: usize,
    pub y_size: usize,
    pub hypotheses: Vec<Check>,
    pub verdicts: Vec<Check>,
    /// `a_{t+1}^r` for every row `r`.
    pub row_counts: Vec<u64>,
    pub rowsets: Vec<RowSetReport>,
    pub empirical: Vec<Ratio>,
    pub all_pass: bool,
}

impl AnalysisReport {
    pub fn verdict(&self, id: &str) -> Option<&Check> {
        self.verdicts.iter().find(|c| c.id == id)
    }

    pub fn strip_witnesses(&mut self) {
        for c in self.verdicts.iter_mut().chain(self.hypotheses.iter_mut()) {
            c.witness = None;
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Computes every counting quantity and audits each inequality on `a`.
///
/// Columns with sums outside `t..=m-l` are set aside (they cannot host `1_t0_l`); standing
/// hypotheses that fail are reported under `hypotheses` rather than rejected.
pub fn lemma_audit(
    a: &BinMatrix,
    t: usize,
    l: usize,
    lambda: usize,
    rowsets: &[Vec<usize>],
) -> Result<AnalysisReport> {
    let m = a.rows();
    if t == 0 || t + l > m {
        return Err(Error::InvalidParameters(
            "need t >= 1 and t + l <= m".into(),
        ));
    }
    let core = a.filter_sums(|s| s >= t && s + l <= m);
    let p = core.column_profile(t);
    let profile = SumProfile {
        a_t: p.a_t as u64,
        a_t1: p.a_t1 as u64,
        a_ge_t2: p.a_ge_t2 as u64,
    };
    let table = tset_table(&core, t, lambda)?;
    let ct = binomial(m, t) as u64;
    let e_size = table.e_size();
    let y_size = table.y_size();
    let (lambda_i, t_i) = (lambda as i64, t as i64);

    let mut hypotheses = Vec::new();
    hypotheses.push(Check::new("t-gt-l", "t > l", t > l));
    hypotheses.push(
        Check::new(
            "sums-in-range",
            "every column sum lies in t..=m-l",
            core.ncols() == a.ncols(),
        )
        .sides(a.ncols() - core.ncols(), 0),
    );
    let sum_t = core.filter_sums(|s| s == t);
    hypotheses.push(Check::new(
        "sum-t-unrepeated",
        "no column of sum t is repeated",
        sum_t.is_simple(),
    ));
    let mult = max_block_multiplicity(a, t, l)?;
    let avoids = mult.count < lambda + 2;
    hypotheses.push(
        Check::new(
            "avoids-block",
            format!("A avoids {}·1_{t}0_{l}", lambda + 2),
            avoids,
        )
        .sides(mult.count, lambda + 1)
        .witness((!avoids).then(|| Witness::Split {
            ones: one_based(&mult.split.ones),
            zeros: one_based(&mult.split.zeros),
        })),
    );
    hypotheses.push(Check::new(
        "m-regime",
        "m >= t + l + lambda + 2",
        m >= t + l + lambda + 2,
    ));
    let design_total = (rat(1) + BigRational::new(lambda.into(), (t + 1).into())) * rat(ct);
    let exceeds = rat(core.ncols()) > design_total;
    hypotheses.push(
        Check::new(
            "exceeds-design-total",
            "a_t + a_{t+1} + a_{>=t+2} > (1 + lambda/(t+1))·C(m,t)",
            exceeds,
        )
        .sides(core.ncols(), fmt_ratio(&design_total)),
    );

    let mut verdicts = Vec::new();

    let bad = (0..table.len()).find(|&i| table.d[i] + table.mu[i] as u64 > lambda as u64 + 1);
    verdicts.push(
        Check::new(
            "degree-bound",
            "d(S) + mu(S) <= lambda + 1 for every t-set S",
            bad.is_none(),
        )
        .sides(
            bad.map(|i| table.d[i] + table.mu[i] as u64)
                .unwrap_or_else(|| {
                    (0..table.len())
                        .map(|i| table.d[i] + table.mu[i] as u64)
                        .max()
                        .unwrap_or(0)
                }),
            lambda + 1,
        )
        .witness(bad.map(|i| Witness::Tset {
            rows: one_based(&table.sets[i]),
        })),
    );

    let ph = bounds::pigeonhole_terms(t, l, lambda, m, profile)?;
    verdicts.push(
        Check::new(
            "placement-count",
            "placement count of 1_t0_l <= C(m,t+l)·C(t+l,l)·(lambda+1)",
            ph.holds,
        )
        .sides(&ph.lhs, &ph.rhs),
    );

    let counts_agree = table.sum_mu() == profile.a_t && profile.a_t == ct - e_size as u64;
    verdicts.push(
        Check::new(
            "tset-count",
            "sum of mu(S) = a_t = C(m,t) - |E|",
            counts_agree,
        )
        .sides(table.sum_mu(), profile.a_t),
    );

    let degrees_agree = table.sum_d() == (t as u64 + 1) * profile.a_t1;
    verdicts.push(
        Check::new("degree-sum", "sum of d(S) = (t+1)·a_{t+1}", degrees_agree)
            .sides(table.sum_d(), (t as u64 + 1) * profile.a_t1),
    );

    let rest = ct as i64 - y_size as i64 - e_size as i64;
    let partition_rhs =
        lambda_i * y_size as i64 + (lambda_i + 1) * e_size as i64 + (lambda_i - 1) * rest;
    let partition_lhs = (t_i + 1) * profile.a_t1 as i64;
    verdicts.push(
        Check::new(
            "partition-bound",
            "(t+1)·a_{t+1} <= lambda|Y| + (lambda+1)|E| + (lambda-1)(C(m,t) - |Y| - |E|)",
            partition_lhs <= partition_rhs,
        )
        .sides(partition_lhs, partition_rhs),
    );

    let per_row_bound = BigRational::new(
        BigInt::from(lambda + 1) * binomial_big(m as i64 - 1, t_i - 1),
        BigInt::from(t),
    );
    let row_counts: Vec<u64> = (0..m)
        .map(|r| {
            core.columns()
                .iter()
                .filter(|c| c.sum() == t + 1 && c.get(r))
                .count() as u64
        })
        .collect();
    let bad_row = (0..m).find(|&r| rat(row_counts[r]) > per_row_bound);
    verdicts.push(
        Check::new(
            "row-degree",
            "a_{t+1}^r <= (lambda+1)/t·C(m-1,t-1) for every row r",
            bad_row.is_none(),
        )
        .sides(
            row_counts.iter().max().copied().unwrap_or(0),
            fmt_ratio(&per_row_bound),
        )
        .witness(bad_row.map(|r| Witness::Row { row: r + 1 })),
    );

    let mut rowset_reports = Vec::new();
    let mut rowdeg_ok = true;
    let mut rowdeg_bad = None;
    let mut cover_ok = true;
    let mut cover_bad = None;
    for r in rowsets {
        let mut r = r.clone();
        r.sort_unstable();
        r.dedup();
        let a_r = meeting(&core, t, &r)?.len() as u64;
        let w = w_flags(&core, t, &r)?;
        let w_size = w.iter().filter(|&&x| x).count();
        let z_size = (0..table.len()).filter(|&i| table.in_y(i) && !w[i]).count();
        if rat(a_r) > rat(r.len()) * per_row_bound.clone() {
            rowdeg_ok = false;
            rowdeg_bad.get_or_insert_with(|| r.clone());
        }
        if w_size as u64 > (t as u64 + 1) * a_r {
            cover_ok = false;
            cover_bad.get_or_insert_with(|| r.clone());
        }
        let mut notes = Vec::new();
        if r.len() >= lambda + l {
            notes.push("|R| >= lambda + l: beyond the regime where |R| is used".into());
        }
        if z_size == 0 {
            notes.push("Z_R is empty".into());
        }
        rowset_reports.push(RowSetReport {
            rows: one_based(&r),
            a_t1_r: a_r,
            w_size,
            z_size,
            notes,
        });
    }
    if !rowsets.is_empty() {
        verdicts.push(
            Check::new(
                "rowset-degree",
                "a_{t+1}^R <= |R|·(lambda+1)/t·C(m-1,t-1)",
                rowdeg_ok,
            )
            .witness(rowdeg_bad.map(|r| Witness::RowSet {
                rows: one_based(&r),
            })),
        );
        verdicts.push(
            Check::new("rowset-cover", "|W_R| <= (t+1)·a_{t+1}^R", cover_ok).witness(
                cover_bad.map(|r| Witness::RowSet {
                    rows: one_based(&r),
                }),
            ),
        );
    }

    let few_zeros = core.columns().iter().position(|c| m - c.sum() < lambda + l);
    verdicts.push(
        Check::new(
            "zero-count",
            "every column has at least lambda + l zeros",
            few_zeros.is_none(),
        )
        .sides(
            core.columns()
                .iter()
                .map(|c| m - c.sum())
                .min()
                .unwrap_or(m),
            lambda + l,
        )
        .witness(few_zeros.map(|j| Witness::Column {
            index: j + 1,
            ones: one_based(&core.columns()[j].ones_vec()),
        })),
    );

    verdicts.push(
        Check::new(
            "total-bound",
            "||A|| <= (1 + lambda/(t+1))·C(m,t)",
            !exceeds,
        )
        .sides(core.ncols(), fmt_ratio(&design_total)),
    );

    let e = t - 1;
    let empirical = vec![
        Ratio {
            name: format!("|E|/m^{e}"),
            value: fmt_ratio(&per_power(e_size as u64, m, e)),
        },
        Ratio {
            name: format!("a_(>=t+2)/m^{e}"),
            value: fmt_ratio(&per_power(profile.a_ge_t2, m, e)),
        },
        Ratio {
            name: format!("(C(m,t)-|Y|)/m^{e}"),
            value: fmt_ratio(&per_power(ct - y_size as u64, m, e)),
        },
    ];

    let all_pass = verdicts.iter().all(|c| c.holds);
    Ok(AnalysisReport {
        m,
        t,
        l,
        lambda,
        audited_columns: core.ncols(),
        excluded_columns: a.ncols() - core.ncols(),
        profile,
        tsets: table.len(),
        e_size,
        y_size,
        hypotheses,
        verdicts,
        row_counts,
        rowsets: rowset_reports,
        empirical,
        all_pass,
    })
}
