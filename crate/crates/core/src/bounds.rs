//! Exact rational evaluation of the closed-form bounds, thresholds and gaps.
//!
//! Everything here is integer or rational arithmetic; nothing is rounded until
//! `floor_int` is taken.

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::combinatorics::binomial_big;
use crate::error::{Error, Result};

const LARGE_M: &str = "only asserted for m sufficiently large";

/// An exact right-hand side together with its floor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub exact: BigRational,
    pub floor_int: BigInt,
    pub attained_by: Option<String>,
    pub notes: Vec<String>,
}

/// Wire shape: integers as decimal strings so no precision is lost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundJson {
    pub exact_numerator: String,
    pub exact_denominator: String,
    pub floor: String,
    pub notes: Vec<String>,
}

impl BoundValue {
    pub fn new(exact: BigRational) -> Self {
        let floor_int = exact.floor().to_integer();
        BoundValue {
            exact,
            floor_int,
            attained_by: None,
            notes: Vec::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    fn attained_by(mut self, tag: &str) -> Self {
        self.attained_by = Some(tag.to_string());
        self
    }

    pub fn is_integral(&self) -> bool {
        self.exact.is_integer()
    }

    pub fn to_json(&self) -> BoundJson {
        let mut notes = self.notes.clone();
        if let Some(tag) = &self.attained_by {
            notes.push(format!("attained by: {tag}"));
        }
        BoundJson {
            exact_numerator: self.exact.numer().to_string(),
            exact_denominator: self.exact.denom().to_string(),
            floor: self.floor_int.to_string(),
            notes,
        }
    }
}

fn c(n: usize, k: usize) -> BigInt {
    binomial_big(n as i64, k as i64)
}

fn ci(n: i64, k: i64) -> BigInt {
    binomial_big(n, k)
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `lambda·C(m,t)/C(k,t)`: columns of sum `k` avoiding `(lambda+1)·1_t`.
pub fn designconfig_bound(t: usize, k: usize, lambda: usize, m: usize) -> Result<BoundValue> {
    if !(t <= k && k <= m) {
        return Err(Error::InvalidParameters("need t <= k <= m".into()));
    }
    Ok(
        BoundValue::new(int(BigInt::from(lambda) * c(m, t)) / int(c(k, t)))
            .attained_by("incidence matrix of a t-(m,k,lambda) design"),
    )
}

/// `sum_{i<t} C(m,i) + (1 + lambda/(t+1))·C(m,t) + sum_{i>m-l} C(m,i)`.
pub fn genl_bound(t: usize, l: usize, lambda: usize, m: usize) -> BoundValue {
    let low: BigInt = (0..t.min(m + 1)).map(|i| c(m, i)).sum();
    let high: BigInt = (m.saturating_sub(l) + 1..=m).map(|i| c(m, i)).sum();
    let middle = (int(1) + ratio(lambda, t + 1)) * int(c(m, t));
    let mut v = BoundValue::new(int(low) + middle + int(high))
        .attained_by("[K_m^0..K_m^t | t-(m,t+1,lambda) design | K_m^(m-l+1)..K_m^m]")
        .with_note(LARGE_M);
    if t <= l {
        v = v.with_note("warning: the bound is only established for t > l");
    }
    v
}

/// `lambda·C(m,t)/(t+1)`: column sums in `t+1..m-1` avoiding `(lambda+1)·1_t0_l`.
pub fn design_tplus1_bound(t: usize, l: usize, lambda: usize, m: usize) -> BoundValue {
    let mut v = BoundValue::new(ratio(BigInt::from(lambda) * c(m, t), t + 1))
        .attained_by("t-(m,t+1,lambda) design")
        .with_note(LARGE_M);
    if t <= l {
        v = v.with_note("warning: the bound is only established for t > l");
    }
    v
}

/// Column counts by sum class, `(a_t, a_{t+1}, a_{>=t+2})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SumProfile {
    pub a_t: u64,
    pub a_t1: u64,
    pub a_ge_t2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PigeonholeTerms {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    #[serde(skip)]
    pub lhs_int: BigInt,
    #[serde(skip)]
    pub rhs_int: BigInt,
    pub notes: Vec<String>,
}

/// The placement-counting inequality for `1_t0_l` against the forbidden `(lambda+2)` copies.
pub fn pigeonhole_terms(
    t: usize,
    l: usize,
    lambda: usize,
    m: usize,
    p: SumProfile,
) -> Result<PigeonholeTerms> {
    if m < t + l {
        return Err(Error::InvalidParameters("need m >= t + l".into()));
    }
    let (ti, li, mi) = (t as i64, l as i64, m as i64);
    let lhs = ci(ti, ti) * ci(mi - ti, li) * p.a_t
        + ci(ti + 1, ti) * ci(mi - ti - 1, li) * p.a_t1
        + ci(ti + 2, ti) * ci(mi - ti - 2, li) * p.a_ge_t2;
    let rhs = ci(mi, ti + li) * ci(ti + li, li) * (lambda as u64 + 1);
    let mut notes = Vec::new();
    if m < t + l + lambda + 2 {
        notes.push("outside the regime m >= t + l + lambda + 2".to_string());
    }
    Ok(PigeonholeTerms {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs <= rhs,
        lhs_int: lhs,
        rhs_int: rhs,
        notes,
    })
}

/// `floor((q+1)m/2) + 2`.
pub fn q10_lower(q: usize, m: usize) -> Result<BoundValue> {
    if q < 3 || m < 2 {
        return Err(Error::InvalidParameters("need q >= 3 and m >= 2".into()));
    }
    Ok(BoundValue::new(ratio((q + 1) * m, 2) + int(2))
        .attained_by("[K_m^0 K_m^1 H K_m^(m-1) K_m^m], H a (q-3)-regular graph")
        .with_note("exact value claimed for m >= max(3q+2, 8q-19)"))
}

/// `floor((q+1)m/2 + (q-3)m/(2(m-2))) + 2`.
pub fn q10_upper(q: usize, m: usize) -> Result<BoundValue> {
    if q < 3 || m < 3 {
        return Err(Error::InvalidParameters("need q >= 3 and m >= 3".into()));
    }
    let slack = ratio((q - 3) * m, 2 * (m - 2));
    let mut v = BoundValue::new(ratio((q + 1) * m, 2) + slack + int(2));
    if m + 1 == q {
        v = v.attained_by("[K_m^0 K_m^1 K_m^2 K_m^(m-1) K_m^m] at m = q-1");
    }
    Ok(v)
}

/// `2 + 2m + (2 + lambda/3)·C(m,2)` for `(lambda+3)·1_2 0_2`.
pub fn bound_1100(lambda: usize, m: usize) -> BoundValue {
    let v = int(2 + 2 * m as u64) + (int(2) + ratio(lambda, 3)) * int(c(m, 2));
    let mut v = BoundValue::new(v).with_note(LARGE_M);
    if m % 6 == 1 || m % 6 == 3 {
        v = v.attained_by("sums 0,1,2,m-2,m-1,m with a 2-(m,3,a) design and complemented 2-(m,3,b) design, a+b=lambda");
    }
    v
}

/// `(lambda/3)·C(m,2)` for column sums in `3..m-3` avoiding `(lambda+1)·1_2 0_2`.
pub fn design_1100_bound(lambda: usize, m: usize) -> BoundValue {
    BoundValue::new(ratio(BigInt::from(lambda) * c(m, 2), 3)).with_note(LARGE_M)
}

/// `C(m,t) - (m-k+1)/(m-t+1) · C(m,t)/C(k-1,t-1)`.
///
/// Only edge counts strictly above this value are treated as forcing a `k`-clique.
pub fn turan_threshold(m: usize, t: usize, k: usize) -> Result<BoundValue> {
    if !(1 <= t && t <= k && k <= m) {
        return Err(Error::InvalidParameters("need 1 <= t <= k <= m".into()));
    }
    let cm = int(c(m, t));
    let v = cm.clone() - ratio(m - k + 1, m - t + 1) * cm / int(c(k - 1, t - 1));
    Ok(BoundValue::new(v).with_note(
        "strict reading: a k-clique is forced only when the edge count exceeds this value",
    ))
}

/// Whether `edges` distinct t-sets force a k-clique under the strict reading.
pub fn turan_forces_clique(m: usize, t: usize, k: usize, edges: u64) -> Result<bool> {
    let th = turan_threshold(m, t, k)?;
    Ok(int(edges) > th.exact)
}

/// `(l/(t+1))·C(lambda+t+l, t)`: how far the small-m layer construction exceeds `genl_bound`.
pub fn exceeder_gap(t: usize, l: usize, lambda: usize) -> Result<BoundValue> {
    if !(t > l && l >= 1) {
        return Err(Error::InvalidParameters("need t > l >= 1".into()));
    }
    Ok(BoundValue::new(ratio(
        BigInt::from(l) * c(lambda + t + l, t),
        t + 1,
    )))
}

/// `x / m^e` as an exact ratio; used for reporting empirical magnitudes.
pub fn per_power(x: u64, m: usize, e: usize) -> BigRational {
    let d = num::pow(BigInt::from(m), e);
    if d.is_zero() {
        return BigRational::zero();
    }
    ratio(x, d)
}

pub fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn designconfig_examples() {
        assert_eq!(designconfig_bound(2, 3, 1, 7).unwrap().exact, r(7, 1));
        assert_eq!(designconfig_bound(2, 3, 0, 7).unwrap().exact, r(0, 1));
        assert_eq!(designconfig_bound(2, 3, 1, 9).unwrap().exact, r(12, 1));
        assert!(designconfig_bound(3, 2, 1, 9).is_err());
    }

    #[test]
    fn genl_examples() {
        assert_eq!(genl_bound(2, 1, 1, 7).exact, r(37, 1));
        assert_eq!(genl_bound(2, 1, 1, 4).exact, r(14, 1));
        assert_eq!(genl_bound(3, 1, 2, 10).exact, r(237, 1));
        assert_eq!(genl_bound(2, 1, 1, 9).exact, r(59, 1));
        assert!(genl_bound(1, 1, 1, 5)
            .notes
            .iter()
            .any(|n| n.contains("t > l")));
    }

    #[test]
    fn design_tplus1_examples() {
        assert_eq!(design_tplus1_bound(2, 1, 1, 7).exact, r(7, 1));
        assert_eq!(design_tplus1_bound(2, 1, 1, 9).exact, r(12, 1));
        assert_eq!(design_tplus1_bound(2, 1, 0, 9).exact, r(0, 1));
    }

    #[test]
    fn pigeonhole_examples() {
        let p = |a, b, c| SumProfile {
            a_t: a,
            a_t1: b,
            a_ge_t2: c,
        };
        let x = pigeonhole_terms(2, 1, 1, 7, p(21, 7, 0)).unwrap();
        assert_eq!(
            (x.lhs.as_str(), x.rhs.as_str(), x.holds),
            ("189", "210", true)
        );
        let x = pigeonhole_terms(2, 1, 1, 7, p(0, 0, 0)).unwrap();
        assert_eq!((x.lhs.as_str(), x.holds), ("0", true));
        let x = pigeonhole_terms(2, 1, 1, 7, p(21, 10, 0)).unwrap();
        assert_eq!((x.lhs.as_str(), x.holds), ("225", false));
    }

    #[test]
    fn q10_examples() {
        assert_eq!(q10_lower(3, 11).unwrap().floor_int, BigInt::from(24));
        assert_eq!(q10_upper(5, 4).unwrap().floor_int, BigInt::from(16));
        assert_eq!(q10_lower(4, 7).unwrap().floor_int, BigInt::from(19));
        assert!(q10_upper(3, 2).is_err());
        for q in 3..9 {
            for m in 3..40 {
                assert!(q10_lower(q, m).unwrap().floor_int <= q10_upper(q, m).unwrap().floor_int);
            }
        }
    }

    #[test]
    fn bound_1100_examples() {
        assert_eq!(bound_1100(2, 7).exact, r(72, 1));
        assert_eq!(design_1100_bound(2, 7).exact, r(14, 1));
        assert_eq!(bound_1100(3, 9).exact, r(128, 1));
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_threshold(6, 2, 3).unwrap().exact, r(9, 1));
        assert_eq!(turan_threshold(7, 2, 3).unwrap().exact, r(49, 4));
        assert!(!turan_forces_clique(6, 2, 3, 9).unwrap());
        assert!(turan_forces_clique(6, 2, 3, 10).unwrap());
    }

    #[test]
    fn exceeder_gap_examples() {
        assert_eq!(exceeder_gap(2, 1, 1).unwrap().exact, r(2, 1));
        assert_eq!(exceeder_gap(3, 1, 1).unwrap().exact, r(5, 2));
        assert!(exceeder_gap(2, 0, 1).is_err());
    }

    #[test]
    fn decomposition_identity() {
        for t in 1..5usize {
            for l in 0..t {
                for lambda in 0..4 {
                    for m in t + l..25 {
                        let low: BigInt = (0..t).map(|i| c(m, i)).sum();
                        let high: BigInt = (m - l + 1..=m).map(|i| c(m, i)).sum();
                        let rest =
                            genl_bound(t, l, lambda, m).exact - int(low) - int(high) - int(c(m, t));
                        assert_eq!(rest, design_tplus1_bound(t, l, lambda, m).exact);
                    }
                }
            }
        }
    }

    #[test]
    fn floor_matches_exact() {
        let v = BoundValue::new(r(-7, 2));
        assert_eq!(v.floor_int, BigInt::from(-4));
        let v = BoundValue::new(r(49, 4));
        assert_eq!(v.floor_int, BigInt::from(12));
        assert_eq!(v.to_json().exact_denominator, "4");
    }
}
