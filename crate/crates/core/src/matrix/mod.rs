//! (0,1)-matrices as ordered multisets of columns, and configuration containment.

mod column;
mod containment;
mod text;

pub use column::Column;
pub use containment::{
    block_support_count, contains_config, max_block_multiplicity, row_splits, BlockMultiplicity,
};
pub use text::{parse_matrix, write_matrix};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// An `m`-rowed (0,1)-matrix stored as an ordered multiset of columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    rows: usize,
    cols: Vec<Column>,
}

impl BinMatrix {
    /// The `rows x 0` matrix.
    pub fn empty(rows: usize) -> Self {
        BinMatrix {
            rows,
            cols: Vec::new(),
        }
    }

    /// Builds a matrix from columns given as 0-based 1-position sets.
    pub fn from_sets<I, S>(rows: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut m = BinMatrix::empty(rows);
        for s in sets {
            m.push_set(s.as_ref())?;
        }
        Ok(m)
    }

    pub fn from_columns(rows: usize, cols: Vec<Column>) -> Self {
        BinMatrix { rows, cols }
    }

    pub fn push_set(&mut self, ones: &[usize]) -> Result<()> {
        if let Some(&r) = ones.iter().find(|&&r| r >= self.rows) {
            return Err(Error::RowOutOfRange {
                row: r,
                rows: self.rows,
            });
        }
        self.cols
            .push(Column::from_ones(self.rows, ones.iter().copied()));
        Ok(())
    }

    pub fn push(&mut self, col: Column) {
        self.cols.push(col);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns counted with multiplicity.
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cols[col].get(row)
    }

    pub fn column_sums(&self) -> impl Iterator<Item = usize> + '_ {
        self.cols.iter().map(Column::sum)
    }

    /// Flips every entry.
    pub fn complement(&self) -> BinMatrix {
        BinMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.flipped(self.rows)).collect(),
        }
    }

    /// `[self | other]`.
    pub fn concat(&self, other: &BinMatrix) -> Result<BinMatrix> {
        if self.rows != other.rows {
            return Err(Error::RowMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(BinMatrix {
            rows: self.rows,
            cols,
        })
    }

    /// `A|_S`: the rows in `rows_kept`, taken in ascending order, for every column.
    pub fn restrict_rows(&self, rows_kept: &[usize]) -> Result<BinMatrix> {
        let mut kept: Vec<usize> = rows_kept.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&r) = kept.iter().find(|&&r| r >= self.rows) {
            return Err(Error::RowOutOfRange {
                row: r,
                rows: self.rows,
            });
        }
        let new_rows = kept.len();
        let cols = self
            .cols
            .iter()
            .map(|c| {
                Column::from_ones(
                    new_rows,
                    kept.iter()
                        .enumerate()
                        .filter(|(_, &r)| c.get(r))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Ok(BinMatrix {
            rows: new_rows,
            cols,
        })
    }

    /// The columns whose sums satisfy `keep`, in their original order.
    pub fn filter_sums<F: Fn(usize) -> bool>(&self, keep: F) -> BinMatrix {
        BinMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .filter(|c| keep(c.sum()))
                .cloned()
                .collect(),
        }
    }

    pub fn column_profile(&self, t: usize) -> ColumnProfile {
        let mut histogram = vec![0usize; self.rows + 1];
        for s in self.column_sums() {
            histogram[s] += 1;
        }
        let at = |s: usize| histogram.get(s).copied().unwrap_or(0);
        ColumnProfile {
            a_t: at(t),
            a_t1: at(t + 1),
            a_ge_t2: histogram.iter().skip(t + 2).sum(),
            histogram,
        }
    }

    /// No two columns are equal.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.cols.len());
        self.cols.iter().all(|c| seen.insert(c))
    }

    /// Columns sorted into a canonical order; equal vectors iff equal column multisets.
    pub fn sorted_columns(&self) -> Vec<Column> {
        let mut v = self.cols.clone();
        v.sort_by(|a, b| a.lex_cmp(b));
        v
    }

    pub fn same_multiset(&self, other: &BinMatrix) -> bool {
        self.rows == other.rows && self.sorted_columns() == other.sorted_columns()
    }

    /// Applies a row permutation: row `r` of `self` becomes row `perm[r]`.
    pub fn permute_rows(&self, perm: &[usize]) -> BinMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| Column::from_ones(self.rows, c.ones().map(|r| perm[r])))
            .collect();
        BinMatrix {
            rows: self.rows,
            cols,
        }
    }

    /// Reorders columns: column `j` of the result is column `order[j]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> BinMatrix {
        BinMatrix {
            rows: self.rows,
            cols: order.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }
}

impl std::fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BinMatrix({}x{}, {:?})",
            self.rows,
            self.cols.len(),
            self.cols
        )
    }
}

/// Column-sum counts of a matrix relative to a threshold `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnProfile {
    pub a_t: usize,
    pub a_t1: usize,
    pub a_ge_t2: usize,
    /// `histogram[s]` is the number of columns of sum `s`, for `s` in `0..=m`.
    pub histogram: Vec<usize>,
}

/// A forbidden pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Configuration {
    General(BinMatrix),
    /// `q` copies of a column of `t` ones above `l` zeros.
    Block {
        q: usize,
        t: usize,
        l: usize,
    },
}

impl Configuration {
    pub fn block(q: usize, t: usize, l: usize) -> Self {
        Configuration::Block { q, t, l }
    }

    pub fn rows(&self) -> usize {
        match self {
            Configuration::General(f) => f.rows(),
            Configuration::Block { t, l, .. } => t + l,
        }
    }

    pub fn ncols(&self) -> usize {
        match self {
            Configuration::General(f) => f.ncols(),
            Configuration::Block { q, .. } => *q,
        }
    }

    /// The explicit `(t+l) x q` matrix.
    pub fn to_matrix(&self) -> BinMatrix {
        match self {
            Configuration::General(f) => f.clone(),
            &Configuration::Block { q, t, l } => {
                let col = Column::from_ones(t + l, 0..t);
                BinMatrix::from_columns(t + l, vec![col; q])
            }
        }
    }

    pub fn complement(&self) -> Configuration {
        match self {
            Configuration::General(f) => Configuration::General(f.complement()),
            &Configuration::Block { q, t, l } => {
                // q·0_t1_l, which is q·1_l0_t after a row permutation
                Configuration::Block { q, t: l, l: t }
            }
        }
    }

    /// Compact `q,t,l` label for Block patterns.
    pub fn label(&self) -> String {
        match self {
            Configuration::General(f) => format!("general {}x{}", f.rows(), f.ncols()),
            Configuration::Block { q, t, l } => format!("{q},{t},{l}"),
        }
    }
}

/// A disjoint pair of row sets: `ones` (size `t`) and `zeros` (size `l`), 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowSplit {
    pub ones: Vec<usize>,
    pub zeros: Vec<usize>,
}

impl RowSplit {
    pub fn new(mut ones: Vec<usize>, mut zeros: Vec<usize>, rows: usize) -> Result<Self> {
        ones.sort_unstable();
        zeros.sort_unstable();
        let mut all: Vec<usize> = ones.iter().chain(&zeros).copied().collect();
        all.sort_unstable();
        if let Some(&r) = all.iter().find(|&&r| r >= rows) {
            return Err(Error::RowOutOfRange { row: r, rows });
        }
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameters(
                "row split must use distinct rows".into(),
            ));
        }
        Ok(RowSplit { ones, zeros })
    }

    pub(crate) fn masks(&self, rows: usize) -> (Column, Column) {
        (
            Column::from_ones(rows, self.ones.iter().copied()),
            Column::from_ones(rows, self.zeros.iter().copied()),
        )
    }
}

/// Number of (T, L) placements of `1_t 0_l` inside a column of sum `s` on `m` rows.
pub fn placements(m: usize, s: usize, t: usize, l: usize) -> u128 {
    if s > m {
        return 0;
    }
    binomial(s, t) * binomial(m - s, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_layer;

    fn k(m: usize) -> BinMatrix {
        let mut a = BinMatrix::empty(m);
        for s in 0..=m {
            a = a.concat(&complete_layer(m, s).unwrap()).unwrap();
        }
        a
    }

    #[test]
    fn complement_of_layers() {
        let a = complete_layer(5, 2).unwrap();
        assert!(a.complement().same_multiset(&complete_layer(5, 3).unwrap()));
        assert_eq!(a.complement().complement(), a);
        let z = complete_layer(6, 0).unwrap().complement();
        assert_eq!(z.columns()[0], Column::ones_column(6));
    }

    #[test]
    fn concat_counts_and_identity() {
        let a = complete_layer(3, 0)
            .unwrap()
            .concat(&complete_layer(3, 1).unwrap())
            .unwrap();
        assert_eq!(a.ncols(), 4);
        assert_eq!(a.concat(&BinMatrix::empty(3)).unwrap(), a);
        assert_eq!(
            a.concat(&BinMatrix::empty(4)),
            Err(Error::RowMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn restrict_rows_cases() {
        let a = complete_layer(3, 1).unwrap();
        let r = a.restrict_rows(&[0, 1]).unwrap();
        let expect = BinMatrix::from_sets(2, [vec![0], vec![1], vec![]]).unwrap();
        assert_eq!(r, expect);
        assert_eq!(a.restrict_rows(&[0, 1, 2]).unwrap(), a);
        let ones = BinMatrix::from_columns(5, vec![Column::ones_column(5)]);
        assert_eq!(
            ones.restrict_rows(&[1, 3]).unwrap().columns()[0],
            Column::ones_column(2)
        );
        assert!(a.restrict_rows(&[3]).is_err());
    }

    #[test]
    fn profile_of_k4() {
        let p = k(4).column_profile(2);
        assert_eq!((p.a_t, p.a_t1, p.a_ge_t2), (6, 4, 1));
        let z = complete_layer(5, 0).unwrap().column_profile(2);
        assert_eq!(z.histogram, vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn simplicity() {
        assert!(k(4).is_simple());
        let twice = BinMatrix::from_sets(3, [vec![], vec![]]).unwrap();
        assert!(!twice.is_simple());
    }

    #[test]
    fn push_rejects_out_of_range() {
        let mut a = BinMatrix::empty(3);
        assert_eq!(
            a.push_set(&[0, 3]),
            Err(Error::RowOutOfRange { row: 3, rows: 3 })
        );
    }

    #[test]
    fn row_split_validation() {
        assert!(RowSplit::new(vec![0, 1], vec![1], 3).is_err());
        assert!(RowSplit::new(vec![0], vec![4], 3).is_err());
        assert!(RowSplit::new(vec![1, 0], vec![2], 3).is_ok());
    }
}
