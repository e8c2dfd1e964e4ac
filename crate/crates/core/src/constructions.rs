//! Explicit matrix constructions. Every builder re-checks its avoidance and size claims
//! before returning, and fails with [`Error::ConstructionCheck`] if one does not hold.

use std::collections::BTreeSet;

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::bounds::{self, BoundValue};
use crate::combinatorics::lex_subsets;
use crate::designs::{complement_blocks, lambda_fold, sts, Design};
use crate::error::{Error, Result};
use crate::matrix::{contains_config, BinMatrix, Column, Configuration};

/// Row count plus the set of column sums to include.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSpec {
    pub m: usize,
    pub sums: BTreeSet<usize>,
}

impl LayerSpec {
    pub fn new<I: IntoIterator<Item = usize>>(m: usize, sums: I) -> Result<Self> {
        let sums: BTreeSet<usize> = sums.into_iter().collect();
        if let Some(&s) = sums.iter().find(|&&s| s > m) {
            return Err(Error::InvalidParameters(format!(
                "column sum {s} exceeds m = {m}"
            )));
        }
        Ok(LayerSpec { m, sums })
    }
}

/// A constructed matrix together with the claims it was checked against.
#[derive(Debug, Clone)]
pub struct Construction {
    pub matrix: BinMatrix,
    pub claimed_bound: Option<BoundValue>,
    pub avoided: Configuration,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionMeta {
    pub m: usize,
    pub ncols: usize,
    pub claimed_bound: Option<String>,
    pub avoided_configuration: String,
    pub verified: bool,
    pub simple: bool,
}

impl Construction {
    pub fn meta(&self) -> ConstructionMeta {
        ConstructionMeta {
            m: self.matrix.rows(),
            ncols: self.matrix.ncols(),
            claimed_bound: self
                .claimed_bound
                .as_ref()
                .map(|b| bounds::fmt_ratio(&b.exact)),
            avoided_configuration: self.avoided.label(),
            verified: self.verified,
            simple: self.matrix.is_simple(),
        }
    }
}

/// `K_m^s`: all `C(m,s)` columns of sum `s`, lexicographic in their 1-sets.
pub fn complete_layer(m: usize, s: usize) -> Result<BinMatrix> {
    if s > m {
        return Err(Error::InvalidParameters(format!(
            "column sum {s} exceeds m = {m}"
        )));
    }
    let rows: Vec<usize> = (0..m).collect();
    Ok(BinMatrix::from_columns(
        m,
        lex_subsets(&rows, s)
            .map(|set| Column::from_ones(m, set))
            .collect(),
    ))
}

/// Concatenation of `K_m^s` over the requested sums, ascending.
pub fn layer_range(spec: &LayerSpec) -> BinMatrix {
    let mut out = BinMatrix::empty(spec.m);
    for &s in &spec.sums {
        for c in complete_layer(spec.m, s).expect("sums validated").columns() {
            out.push(c.clone());
        }
    }
    out
}

fn layers(m: usize, sums: impl IntoIterator<Item = usize>) -> BinMatrix {
    layer_range(&LayerSpec::new(m, sums).expect("sums in range"))
}

fn check_avoids(f: &Configuration, a: &BinMatrix, what: &str) -> Result<()> {
    if contains_config(f, a) {
        return Err(Error::ConstructionCheck(format!(
            "{what} contains the configuration {}",
            f.label()
        )));
    }
    Ok(())
}

fn check_count(a: &BinMatrix, expected: &BigRational, what: &str) -> Result<()> {
    if BigRational::from_integer(BigInt::from(a.ncols())) != *expected {
        return Err(Error::ConstructionCheck(format!(
            "{what} has {} columns, expected {}",
            a.ncols(),
            bounds::fmt_ratio(expected)
        )));
    }
    Ok(())
}

/// `[K_m^0 .. K_m^t | design | K_m^(m-l+1) .. K_m^m]` for a `t-(m,t+1,lambda)` design.
pub fn genl_equality_construction(t: usize, l: usize, design: &Design) -> Result<Construction> {
    let m = design.m;
    let lambda = design.lambda;
    if design.t != t || design.k != t + 1 {
        return Err(Error::InvalidParameters(format!(
            "need a {t}-(m,{},lambda) design, got {}-({m},{},{lambda})",
            t + 1,
            design.t,
            design.k
        )));
    }
    if !(t > l && t + 1 + l <= m) {
        return Err(Error::InvalidParameters(
            "need t > l and m >= t + l + 1".into(),
        ));
    }
    let verdict = design.verify();
    if !verdict.valid {
        return Err(Error::DesignCheck(format!("{:?}", verdict.witness)));
    }
    let matrix = layers(m, 0..=t)
        .concat(&design.incidence())?
        .concat(&layers(m, m - l + 1..=m))?;
    let bound = bounds::genl_bound(t, l, lambda, m);
    let avoided = Configuration::block(lambda + 2, t, l);
    check_count(&matrix, &bound.exact, "design equality construction")?;
    check_avoids(&avoided, &matrix, "design equality construction")?;
    Ok(Construction {
        matrix,
        claimed_bound: Some(bound),
        avoided,
        verified: true,
    })
}

/// The `m = lambda+t+l` layer matrix `[K_m^0 .. K_m^(t+1) | K_m^(m-l+1) .. K_m^m]`,
/// which beats `genl_bound` by `exceeder_gap`.
pub fn exceeder_construction(t: usize, l: usize, lambda: usize) -> Result<Construction> {
    if !(t > l && l >= 1 && lambda >= 1) {
        return Err(Error::InvalidParameters(
            "need t > l >= 1 and lambda >= 1".into(),
        ));
    }
    let m = lambda + t + l;
    let matrix = layers(m, (0..=t + 1).chain(m - l + 1..=m));
    let avoided = Configuration::block(lambda + 2, t, l);
    check_avoids(&avoided, &matrix, "exceeder construction")?;
    let gap = bounds::exceeder_gap(t, l, lambda)?;
    let claimed = bounds::genl_bound(t, l, lambda, m).exact + gap.exact.clone();
    check_count(&matrix, &claimed, "exceeder construction")?;
    Ok(Construction {
        matrix,
        claimed_bound: Some(BoundValue::new(claimed)),
        avoided,
        verified: true,
    })
}

/// Edges of a `degree`-regular circulant on `Z_m`, or, when `m·degree` is odd, a graph with
/// one vertex (`m-1`) of degree `degree-1` and all others of degree `degree`.
pub fn near_regular_graph(m: usize, degree: usize) -> Result<Vec<(usize, usize)>> {
    if degree > 0 && degree >= m {
        return Err(Error::InvalidParameters(format!(
            "no simple graph on {m} vertices has degree {degree}"
        )));
    }
    let mut edges = Vec::new();
    for dist in 1..=degree / 2 {
        for v in 0..m {
            let w = (v + dist) % m;
            edges.push((v.min(w), v.max(w)));
        }
    }
    if degree % 2 == 1 {
        // a perfect (m even) or near-perfect (m odd) matching at distance floor(m/2),
        // which is longer than every circulant chord above
        let h = m / 2;
        for v in 0..h {
            edges.push((v, v + h));
        }
    }
    edges.sort_unstable();
    let mut deg = vec![0usize; m];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let ok_degrees = deg.iter().enumerate().all(|(v, &d)| {
        if (m * degree) % 2 == 1 && v == m - 1 {
            d + 1 == degree
        } else {
            d == degree
        }
    });
    if !ok_degrees || edges.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::ConstructionCheck(format!(
            "graph realization failed for m = {m}, degree = {degree}"
        )));
    }
    Ok(edges)
}

/// `[K_m^0 | K_m^1 | H | K_m^(m-1) | K_m^m]` with `H` the edge incidence of a
/// `(q-3)`-regular (or near-regular) graph; avoids `q·1_1 0_1`.
pub fn q10_construction(q: usize, m: usize) -> Result<Construction> {
    if q < 3 || m + 2 < q || m < 2 {
        return Err(Error::InvalidParameters(
            "need q >= 3 and m >= max(q-2, 2)".into(),
        ));
    }
    let edges = near_regular_graph(m, q - 3)?;
    let mut h = BinMatrix::empty(m);
    for (a, b) in edges {
        h.push_set(&[a, b])?;
    }
    let matrix = layers(m, [0, 1])
        .concat(&h)?
        .concat(&layers(m, [m - 1, m]))?;
    let bound = bounds::q10_lower(q, m)?;
    let avoided = Configuration::block(q, 1, 1);
    check_count(
        &matrix,
        &BigRational::from_integer(bound.floor_int.clone()),
        "q10 construction",
    )?;
    check_avoids(&avoided, &matrix, "q10 construction")?;
    Ok(Construction {
        matrix,
        claimed_bound: Some(bound),
        avoided,
        verified: true,
    })
}

/// `[K_m^0 K_m^1 K_m^2 K_m^(m-1) K_m^m]` on `m = q-1` rows, concatenated literally.
pub fn small_m_pigeonhole_witness(q: usize) -> Result<Construction> {
    if q < 3 {
        return Err(Error::InvalidParameters("need q >= 3".into()));
    }
    let m = q - 1;
    let mut matrix = BinMatrix::empty(m);
    for s in [0, 1, 2, m - 1, m] {
        matrix = matrix.concat(&complete_layer(m, s)?)?;
    }
    let avoided = Configuration::block(q, 1, 1);
    check_avoids(&avoided, &matrix, "pigeonhole witness")?;
    let claimed_bound = bounds::q10_upper(q, m).ok();
    if let Some(b) = &claimed_bound {
        check_count(
            &matrix,
            &BigRational::from_integer(b.floor_int.clone()),
            "pigeonhole witness",
        )?;
    }
    Ok(Construction {
        matrix,
        verified: claimed_bound.is_some(),
        claimed_bound,
        avoided,
    })
}

/// All columns of sums `0,1,2,m-2,m-1,m`, the blocks of a `2-(m,3,a)` design and the
/// complements of the blocks of a `2-(m,3,b)` design; avoids `(a+b+3)·1_2 0_2`.
pub fn split_1100_with(design_a: &Design, design_b: &Design) -> Result<Construction> {
    let m = design_a.m;
    for d in [design_a, design_b] {
        if d.m != m || d.k != 3 || d.t != 2 {
            return Err(Error::InvalidParameters(
                "need two 2-(m,3,*) designs on the same points".into(),
            ));
        }
        if !d.verify().valid {
            return Err(Error::DesignCheck(format!(
                "2-({m},3,{}) failed verification",
                d.lambda
            )));
        }
    }
    if m < 7 {
        return Err(Error::InvalidParameters(
            "need m >= 7 so the sum classes are distinct".into(),
        ));
    }
    let lambda = design_a.lambda + design_b.lambda;
    let matrix = layers(m, [0, 1, 2])
        .concat(&design_a.incidence())?
        .concat(&complement_blocks(design_b).incidence())?
        .concat(&layers(m, [m - 2, m - 1, m]))?;
    let mut bound = bounds::bound_1100(lambda, m);
    if design_a.lambda == 0 || design_b.lambda == 0 {
        bound
            .notes
            .push("a·b = 0 lies outside the equality characterization".into());
    }
    let avoided = Configuration::block(lambda + 3, 2, 2);
    check_count(&matrix, &bound.exact, "split 1100 construction")?;
    check_avoids(&avoided, &matrix, "split 1100 construction")?;
    Ok(Construction {
        matrix,
        claimed_bound: Some(bound),
        avoided,
        verified: true,
    })
}

/// [`split_1100_with`] using `a`- and `b`-fold copies of a Steiner triple system on `m` points.
pub fn split_1100_construction(m: usize, a: usize, b: usize) -> Result<Construction> {
    let base = sts(m)?;
    let fold = |c: usize| -> Result<Design> {
        if c == 0 {
            Ok(Design {
                blocks: Vec::new(),
                lambda: 0,
                ..base.clone()
            })
        } else {
            lambda_fold(&base, c)
        }
    };
    split_1100_with(&fold(a)?, &fold(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{block_support_count, row_splits};

    #[test]
    fn layer_sizes() {
        assert_eq!(complete_layer(4, 2).unwrap().ncols(), 6);
        assert_eq!(complete_layer(6, 0).unwrap().columns(), &[Column::zeros(6)]);
        assert_eq!(
            complete_layer(5, 5).unwrap().columns(),
            &[Column::ones_column(5)]
        );
        assert!(complete_layer(3, 4).is_err());
        let l = complete_layer(4, 2).unwrap();
        assert!(l.columns().windows(2).all(|w| w[0].lex_cmp(&w[1]).is_lt()));
        assert_eq!(layer_range(&LayerSpec::new(2, 0..=2).unwrap()).ncols(), 4);
        assert_eq!(layer_range(&LayerSpec::new(4, 0..=4).unwrap()).ncols(), 16);
        assert_eq!(
            layer_range(&LayerSpec::new(7, [0, 1, 2, 7]).unwrap()).ncols(),
            30
        );
        assert!(LayerSpec::new(3, [4]).is_err());
    }

    #[test]
    fn genl_equality_sizes() {
        let c = genl_equality_construction(2, 1, &sts(7).unwrap()).unwrap();
        assert_eq!(c.matrix.ncols(), 37);
        assert!(!contains_config(&Configuration::block(3, 2, 1), &c.matrix));
        let c = genl_equality_construction(2, 1, &sts(9).unwrap()).unwrap();
        assert_eq!(c.matrix.ncols(), 59);
    }

    #[test]
    fn genl_equality_rejects_non_designs() {
        let mut d = sts(7).unwrap();
        d.blocks.pop();
        assert!(matches!(
            genl_equality_construction(2, 1, &d),
            Err(Error::DesignCheck(_))
        ));
        assert!(genl_equality_construction(1, 1, &sts(7).unwrap()).is_err());
    }

    #[test]
    fn exceeder_small_case() {
        let c = exceeder_construction(2, 1, 1).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.ncols()), (4, 16));
        for s in row_splits(4, 2, 1) {
            assert_eq!(block_support_count(&c.matrix, &s).unwrap(), 2);
        }
        // non-integral gap is fine
        let c = exceeder_construction(3, 1, 1).unwrap();
        assert_eq!(c.matrix.rows(), 5);
        assert!(exceeder_construction(1, 1, 1).is_err());
    }

    #[test]
    fn q10_examples() {
        assert_eq!(q10_construction(3, 11).unwrap().matrix.ncols(), 24);
        let c = q10_construction(5, 10).unwrap();
        assert_eq!(c.matrix.ncols(), 32);
        assert!(!contains_config(&Configuration::block(5, 1, 1), &c.matrix));
        let c = q10_construction(4, 7).unwrap();
        assert_eq!(c.matrix.ncols(), 19);
        let h = c.matrix.filter_sums(|s| s == 2);
        let mut deg = [0; 7];
        for col in h.columns() {
            for r in col.ones() {
                deg[r] += 1;
            }
        }
        assert_eq!(deg, [1, 1, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn graph_degrees() {
        for m in 2..20 {
            for d in 0..m {
                let e = near_regular_graph(m, d).unwrap();
                assert_eq!(e.len(), m * d / 2, "m={m} d={d}");
            }
        }
        assert!(near_regular_graph(4, 4).is_err());
    }

    #[test]
    fn pigeonhole_witness_q5() {
        let c = small_m_pigeonhole_witness(5).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.ncols()), (4, 16));
        assert!(c.verified);
    }

    #[test]
    fn split_1100_m7() {
        let c = split_1100_construction(7, 1, 1).unwrap();
        assert_eq!(c.matrix.ncols(), 72);
        assert!(c.matrix.is_simple());
        assert!(!contains_config(&Configuration::block(5, 2, 2), &c.matrix));
        let swapped = split_1100_construction(7, 2, 1).unwrap();
        let back = split_1100_construction(7, 1, 2).unwrap();
        assert!(swapped.matrix.complement().same_multiset(&back.matrix));
    }

    #[test]
    fn split_1100_degenerate_fold() {
        let c = split_1100_construction(7, 1, 0).unwrap();
        let b = c.claimed_bound.unwrap();
        assert!(b.notes.iter().any(|n| n.contains("a·b = 0")));
    }
}
