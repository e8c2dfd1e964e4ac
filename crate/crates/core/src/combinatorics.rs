//! Binomial coefficients and k-subset enumeration.

use num::{BigInt, One, Zero};

/// `C(n, k)` as a `u128`, zero when `k > n`. Panics on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc.checked_mul((n - i) as u128).expect("binomial overflow") / (i as u128 + 1);
    }
    acc
}

/// `C(n, k)` over the integers, with `C(n, k) = 0` for `n < 0`, `k < 0` or `k > n`.
pub fn binomial_big(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` in colexicographic order.
///
/// Colex order compares the largest elements first, so `{0,1} < {0,2} < {1,2} < {0,3}`.
#[derive(Debug, Clone)]
pub struct Colex {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Colex { n, current }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                self.current = Some(next);
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

/// All `k`-subsets of `{0, .., n-1}` in colex order.
pub fn colex_subsets(n: usize, k: usize) -> Colex {
    Colex::new(n, k)
}

/// Position of a sorted set in the colex enumeration of subsets of the same size.
pub fn colex_rank(set: &[usize]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1) as usize)
        .sum()
}

/// All `k`-subsets of `items` in lexicographic order of positions.
pub fn lex_subsets(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    itertools::Itertools::combinations(items.iter().copied(), k)
}
