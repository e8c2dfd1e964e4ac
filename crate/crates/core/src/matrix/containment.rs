//! Containment of configurations.
//!
//! Block patterns `q·1_t0_l` reduce to support counting over row splits; general patterns
//! go through a depth-first row assignment with multiset pruning.

use std::collections::HashMap;

use super::{BinMatrix, Column, Configuration, RowSplit};
use crate::combinatorics::lex_subsets;
use crate::error::{Error, Result};

/// Columns (with multiplicity) that are all-1 on `split.ones` and all-0 on `split.zeros`.
pub fn block_support_count(a: &BinMatrix, split: &RowSplit) -> Result<usize> {
    let rows = a.rows();
    let _ = RowSplit::new(split.ones.clone(), split.zeros.clone(), rows)?;
    let (ones, zeros) = split.masks(rows);
    Ok(support(a, &ones, &zeros))
}

#[inline]
fn support(a: &BinMatrix, ones: &Column, zeros: &Column) -> usize {
    a.columns()
        .iter()
        .filter(|c| c.covers(ones) && c.avoids(zeros))
        .count()
}

/// All row splits with `|T| = t` and `|L| = l`, in lexicographic `(T, L)` order.
pub fn row_splits(rows: usize, t: usize, l: usize) -> impl Iterator<Item = RowSplit> {
    let all: Vec<usize> = (0..rows).collect();
    let ts: Vec<Vec<usize>> = if t + l <= rows {
        lex_subsets(&all, t).collect()
    } else {
        Vec::new()
    };
    ts.into_iter().flat_map(move |ones| {
        let rest: Vec<usize> = (0..rows).filter(|r| !ones.contains(r)).collect();
        let zs: Vec<Vec<usize>> = lex_subsets(&rest, l).collect();
        zs.into_iter().map(move |zeros| RowSplit {
            ones: ones.clone(),
            zeros,
        })
    })
}

/// Result of [`max_block_multiplicity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMultiplicity {
    pub count: usize,
    /// The lexicographically least split attaining `count`.
    pub split: RowSplit,
}

/// The largest `q` with `q·1_t0_l` contained in `a`, with its least maximizing split.
pub fn max_block_multiplicity(a: &BinMatrix, t: usize, l: usize) -> Result<BlockMultiplicity> {
    let rows = a.rows();
    if t + l > rows {
        return Err(Error::InvalidParameters(format!(
            "t + l = {} exceeds {rows} rows",
            t + l
        )));
    }
    let mut best: Option<BlockMultiplicity> = None;
    for split in row_splits(rows, t, l) {
        let (ones, zeros) = split.masks(rows);
        let count = support(a, &ones, &zeros);
        if best.as_ref().is_none_or(|b| count > b.count) {
            let full = count == a.ncols();
            best = Some(BlockMultiplicity { count, split });
            if full {
                break;
            }
        }
    }
    Ok(best.expect("at least one split exists when t + l <= rows"))
}

/// True iff some submatrix of `a` is a row and column permutation of the configuration.
pub fn contains_config(f: &Configuration, a: &BinMatrix) -> bool {
    if f.rows() > a.rows() || f.ncols() > a.ncols() {
        return false;
    }
    if f.ncols() == 0 {
        return true;
    }
    match f {
        &Configuration::Block { q, t, l } => max_block_multiplicity(a, t, l)
            .map(|b| b.count >= q)
            .unwrap_or(false),
        Configuration::General(pattern) => contains_general(pattern, a),
    }
}

fn contains_general(f: &BinMatrix, a: &BinMatrix) -> bool {
    // a column of A can host a column of F only if it has at least as many ones
    let mut fs: Vec<usize> = f.column_sums().collect();
    let mut as_: Vec<usize> = a.column_sums().collect();
    fs.sort_unstable_by(|x, y| y.cmp(x));
    as_.sort_unstable_by(|x, y| y.cmp(x));
    if fs.iter().zip(&as_).any(|(x, y)| x > y) {
        return false;
    }
    let mut search = GeneralSearch {
        f,
        a,
        used: vec![false; a.rows()],
        f_keys: vec![0; f.ncols()],
        a_keys: vec![0; a.ncols()],
    };
    search.assign(0)
}

struct GeneralSearch<'x> {
    f: &'x BinMatrix,
    a: &'x BinMatrix,
    used: Vec<bool>,
    // pattern class ids of the prefixes over the rows assigned so far
    f_keys: Vec<u32>,
    a_keys: Vec<u32>,
}

impl GeneralSearch<'_> {
    fn assign(&mut self, frow: usize) -> bool {
        if frow == self.f.rows() {
            return true;
        }
        for arow in 0..self.a.rows() {
            if self.used[arow] {
                continue;
            }
            let saved_f = self.f_keys.clone();
            let saved_a = self.a_keys.clone();
            if self.refine(frow, arow) {
                self.used[arow] = true;
                if self.assign(frow + 1) {
                    return true;
                }
                self.used[arow] = false;
            }
            self.f_keys = saved_f;
            self.a_keys = saved_a;
        }
        false
    }

    /// Extends every prefix by one row and checks that F's prefix multiset fits in A's.
    fn refine(&mut self, frow: usize, arow: usize) -> bool {
        let mut ids: HashMap<(u32, bool), u32> = HashMap::new();
        let mut count: Vec<i64> = Vec::new();
        for (j, key) in self.a_keys.iter_mut().enumerate() {
            let next = ids.len() as u32;
            let id = *ids.entry((*key, self.a.get(arow, j))).or_insert(next);
            if id as usize == count.len() {
                count.push(0);
            }
            count[id as usize] += 1;
            *key = id;
        }
        for (j, key) in self.f_keys.iter_mut().enumerate() {
            let Some(&id) = ids.get(&(*key, self.f.get(frow, j))) else {
                return false;
            };
            count[id as usize] -= 1;
            if count[id as usize] < 0 {
                return false;
            }
            *key = id;
        }
        true
    }
}
