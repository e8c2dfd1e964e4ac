use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A (0,1)-column packed into 64-bit words. Bit `i` is the entry in row `i`.
///
/// All columns of one matrix share the same word count, so equality and hashing
/// agree with equality of the 1-position sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column {
    words: Vec<u64>,
}

pub(crate) fn words_for(rows: usize) -> usize {
    rows.div_ceil(WORD)
}

impl Column {
    pub fn zeros(rows: usize) -> Self {
        Column {
            words: vec![0; words_for(rows)],
        }
    }

    /// Builds a column from its 1-positions. Callers guarantee `ones` lie below `rows`.
    pub fn from_ones<I: IntoIterator<Item = usize>>(rows: usize, ones: I) -> Self {
        let mut c = Column::zeros(rows);
        for r in ones {
            debug_assert!(r < rows);
            c.set(r);
        }
        c
    }

    pub fn ones_column(rows: usize) -> Self {
        Column::from_ones(rows, 0..rows)
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        self.words
            .get(row / WORD)
            .is_some_and(|w| (w >> (row % WORD)) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, row: usize) {
        self.words[row / WORD] |= 1u64 << (row % WORD);
    }

    #[inline]
    pub fn clear(&mut self, row: usize) {
        self.words[row / WORD] &= !(1u64 << (row % WORD));
    }

    pub fn sum(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1-positions in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn ones_vec(&self) -> Vec<usize> {
        self.ones().collect()
    }

    /// True iff every 1 of `mask` is a 1 here.
    #[inline]
    pub fn covers(&self, mask: &Column) -> bool {
        self.words.iter().zip(&mask.words).all(|(a, b)| a & b == *b)
    }

    /// True iff no 1 of `mask` is a 1 here.
    #[inline]
    pub fn avoids(&self, mask: &Column) -> bool {
        self.words.iter().zip(&mask.words).all(|(a, b)| a & b == 0)
    }

    /// Set complement within `rows` rows.
    pub fn flipped(&self, rows: usize) -> Column {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = rows % WORD;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Column { words }
    }

    /// Compares the sorted 1-position sets lexicographically.
    pub fn lex_cmp(&self, other: &Column) -> Ordering {
        self.ones().cmp(other.ones())
    }
}

impl fmt::Debug for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}
