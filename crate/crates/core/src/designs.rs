//! t-designs: verification, divisibility conditions and Steiner triple system generators.
//!
//! Points are 0-based in memory and 1-based in the text format.

use num::{BigInt, BigRational, Integer, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, binomial_big, colex_rank, colex_subsets, lex_subsets};
use crate::error::{Error, Result};
use crate::matrix::BinMatrix;

/// A multiset of `k`-subsets of `[m]` with claimed strength `t` and index `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub m: usize,
    pub k: usize,
    pub t: usize,
    pub lambda: usize,
    /// Sorted 0-based blocks.
    pub blocks: Vec<Vec<usize>>,
}

/// A t-set covered the wrong number of times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageWitness {
    /// 1-based points.
    pub tset: Vec<usize>,
    pub covered: u64,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignVerdict {
    pub valid: bool,
    pub blocks: usize,
    /// `lambda·C(m,t)/C(k,t)` as `numerator/denominator`.
    pub expected_blocks: String,
    /// First t-set in colex order with the wrong coverage.
    pub witness: Option<CoverageWitness>,
}

impl Design {
    /// Sorts each block; checks sizes and point ranges but not the design property.
    pub fn new(
        m: usize,
        k: usize,
        t: usize,
        lambda: usize,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let blocks = normalize_blocks(&blocks, m, k)?;
        Ok(Design {
            m,
            k,
            t,
            lambda,
            blocks,
        })
    }

    pub fn verify(&self) -> DesignVerdict {
        coverage_verdict(&self.blocks, self.m, self.k, self.t, self.lambda)
    }

    /// `Ok(self)` if the design verifies, otherwise the witness as an error.
    pub fn verified(self) -> Result<Self> {
        let v = self.verify();
        if v.valid {
            Ok(self)
        } else {
            Err(Error::DesignCheck(format!(
                "not a {}-({},{},{}) design: {:?}",
                self.t, self.m, self.k, self.lambda, v.witness
            )))
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Incidence matrix: one column per block.
    pub fn incidence(&self) -> BinMatrix {
        BinMatrix::from_sets(self.m, &self.blocks).expect("blocks are in range")
    }

    pub fn is_simple(&self) -> bool {
        let mut b = self.blocks.clone();
        b.sort();
        b.windows(2).all(|w| w[0] != w[1])
    }
}

fn normalize_blocks(blocks: &[Vec<usize>], m: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    blocks
        .iter()
        .enumerate()
        .map(|(index, b)| {
            let mut b = b.clone();
            b.sort_unstable();
            b.dedup();
            if b.len() != k {
                return Err(Error::BlockSize {
                    index,
                    found: b.len(),
                    expected: k,
                });
            }
            if let Some(&p) = b.iter().find(|&&p| p >= m) {
                return Err(Error::PointOutOfRange {
                    index,
                    point: p + 1,
                    points: m,
                });
            }
            Ok(b)
        })
        .collect()
}

fn coverage_verdict(
    blocks: &[Vec<usize>],
    m: usize,
    k: usize,
    t: usize,
    lambda: usize,
) -> DesignVerdict {
    let expected_blocks = BigRational::new(
        BigInt::from(lambda) * binomial_big(m as i64, t as i64),
        binomial_big(k as i64, t as i64).max(BigInt::from(1)),
    );
    let mut cover = vec![0u64; binomial(m, t) as usize];
    if t <= k {
        for b in blocks {
            for s in lex_subsets(b, t) {
                cover[colex_rank(&s)] += 1;
            }
        }
    }
    let witness = colex_subsets(m, t)
        .zip(&cover)
        .find(|(_, &c)| c != lambda as u64)
        .map(|(s, &c)| CoverageWitness {
            tset: s.iter().map(|p| p + 1).collect(),
            covered: c,
            expected: lambda,
        });
    let valid = witness.is_none();
    if valid {
        // a genuine design always has the counted number of blocks
        assert!(
            expected_blocks.is_integer()
                && expected_blocks.to_integer() == BigInt::from(blocks.len()),
            "verified design with unexpected block count"
        );
    }
    DesignVerdict {
        valid,
        blocks: blocks.len(),
        expected_blocks: format!("{}/{}", expected_blocks.numer(), expected_blocks.denom()),
        witness,
    }
}

/// Verifies that `blocks` (0-based) form a `t-(m,k,lambda)` design.
pub fn verify_design(
    blocks: &[Vec<usize>],
    m: usize,
    k: usize,
    t: usize,
    lambda: usize,
) -> Result<DesignVerdict> {
    let blocks = normalize_blocks(blocks, m, k)?;
    Ok(coverage_verdict(&blocks, m, k, t, lambda))
}

/// Which indices `i` the divisibility conditions range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexRange {
    /// `i = 0, .., t-1`: the standard necessary conditions.
    #[default]
    Standard,
    /// `i = 1, .., t-1`.
    PositiveOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub range: IndexRange,
    /// `(i, C(k-i,t-i) divides lambda·C(m-i,t-i))`.
    pub per_index: Vec<(usize, bool)>,
    pub holds: bool,
}

pub fn divisibility_check(
    t: usize,
    k: usize,
    lambda: usize,
    m: usize,
    range: IndexRange,
) -> DivisibilityReport {
    let start = match range {
        IndexRange::Standard => 0,
        IndexRange::PositiveOnly => 1,
    };
    let per_index: Vec<(usize, bool)> = (start..t)
        .map(|i| {
            let (i, t) = (i as i64, t as i64);
            let d = binomial_big(k as i64 - i, t - i);
            let n = BigInt::from(lambda) * binomial_big(m as i64 - i, t - i);
            let i = i as usize;
            (i, !d.is_zero() && n.is_multiple_of(&d))
        })
        .collect();
    let holds = per_index.iter().all(|&(_, ok)| ok);
    DivisibilityReport {
        range,
        per_index,
        holds,
    }
}

/// A Steiner triple system 2-(m,3,1): Bose for `m ≡ 3 (mod 6)`, Skolem for `m ≡ 1 (mod 6)`.
pub fn sts(m: usize) -> Result<Design> {
    let blocks = match m % 6 {
        3 => bose(m / 6),             // m = 6n + 3
        1 if m >= 7 => skolem(m / 6), // m = 6n + 1
        _ => {
            return Err(Error::InvalidParameters(format!(
                "no Steiner triple system on {m} points (need 1 or 3 mod 6, m >= 3)"
            )))
        }
    };
    Design::new(m, 3, 2, 1, blocks)?.verified()
}

// Points (x, i) with x in Z_{2n+1}, i in Z_3 are numbered 3x + i.
fn bose(n: usize) -> Vec<Vec<usize>> {
    let order = 2 * n + 1;
    let half = n + 1; // inverse of 2 mod 2n+1
    let op = |a: usize, b: usize| (a + b) * half % order;
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    let mut blocks = Vec::with_capacity(order * (3 * n + 1));
    for x in 0..order {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

// Points (x, i) with x in Z_{2n}, i in Z_3 are numbered 3x + i; infinity is 6n.
fn skolem(n: usize) -> Vec<Vec<usize>> {
    let order = 2 * n;
    // half-idempotent commutative quasigroup: relabel the sums s -> s/2 (even), n + s/2 (odd)
    let op = |a: usize, b: usize| {
        let s = (a + b) % order;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            n + s / 2
        }
    };
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    let inf = 6 * n;
    let mut blocks = Vec::with_capacity(n * (6 * n + 1));
    for x in 0..n {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + n, i), pt(x, i + 1)]);
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Repeats every block `c` times.
pub fn lambda_fold(d: &Design, c: usize) -> Result<Design> {
    if c == 0 {
        return Err(Error::InvalidParameters("fold factor must be >= 1".into()));
    }
    let blocks = d
        .blocks
        .iter()
        .flat_map(|b| std::iter::repeat_n(b.clone(), c))
        .collect();
    Ok(Design {
        m: d.m,
        k: d.k,
        t: d.t,
        lambda: d.lambda * c,
        blocks,
    })
}

/// Replaces each block by its complement in `[m]`.
///
/// The strength and index of the result are carried over unchanged; they describe the
/// design the complements came from.
pub fn complement_blocks(d: &Design) -> Design {
    let blocks = d
        .blocks
        .iter()
        .map(|b| (0..d.m).filter(|p| !b.contains(p)).collect())
        .collect();
    Design {
        m: d.m,
        k: d.m - d.k,
        t: d.t,
        lambda: d.lambda,
        blocks,
    }
}

/// Design text format: `m k t lambda b`, then `b` lines of `k` sorted 1-based points.
pub fn write_design(d: &Design) -> String {
    let mut out = format!("{} {} {} {} {}\n", d.m, d.k, d.t, d.lambda, d.blocks.len());
    for b in &d.blocks {
        let line: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_design(text: &str) -> Result<Design> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let nums = parse_numbers(header, 1)?;
    let [m, k, t, lambda, b] = nums[..] else {
        return Err(Error::Parse {
            line: 1,
            message: "header must be `m k t lambda b`".into(),
        });
    };
    let mut blocks = Vec::with_capacity(b);
    for i in 0..b {
        let (idx, line) = lines.next().ok_or_else(|| Error::Parse {
            line: i + 2,
            message: format!("expected {b} blocks, found {i}"),
        })?;
        let lineno = idx + 1;
        let pts = parse_numbers(line, lineno)?;
        if pts.len() != k {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {k} points, found {}", pts.len()),
            });
        }
        if pts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line: lineno,
                message: "points must be strictly ascending".into(),
            });
        }
        if let Some(&p) = pts.iter().find(|&&p| p == 0 || p > m) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("point {p} outside 1..={m}"),
            });
        }
        blocks.push(pts.iter().map(|p| p - 1).collect());
    }
    if let Some((idx, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Parse {
            line: idx + 1,
            message: "trailing content after blocks".into(),
        });
    }
    Design::new(m, k, t, lambda, blocks)
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad integer {tok:?}"),
            })
        })
        .collect()
}
