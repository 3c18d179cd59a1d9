//! Betti and Hodge numbers of the stable coarse moduli space in the range
//! where they agree with those of the whole stack, plus the dimension counts
//! bounding the strictly semistable locus.
//!
//! The stack of stable bundles has the cohomology of the coarse space tensored
//! with that of `BG_m`, so the coarse numbers are the stack series multiplied by
//! `(1 - t^2)` (Hodge side: `(1 - xy)`), read off below the range bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hn::{BundleClass, CurveContext};
use crate::moduli::{bun_hodge_poincare, bun_poincare};
use crate::series::{HodgeSeries, TruncatedSeries};

/// Degree bounds below which the stable locus and the whole stack share
/// cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeBound {
    /// `2 (r - 1)(g - 1)`.
    pub paper_bound: u64,
    /// `2 (r - 1)(g - 1) - 1`, clamped at zero.
    pub conservative_bound: u64,
}

/// Which bound to read numbers below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RangeMode {
    #[default]
    Paper,
    Conservative,
}

impl RangeBound {
    pub fn select(&self, mode: RangeMode) -> u64 {
        match mode {
            RangeMode::Paper => self.paper_bound,
            RangeMode::Conservative => self.conservative_bound,
        }
    }
}

pub fn stable_range_bound(rank: u32, ctx: CurveContext) -> RangeBound {
    let paper = 2 * (rank as u64 - 1) * (ctx.genus() as u64 - 1);
    RangeBound {
        paper_bound: paper,
        conservative_bound: paper.saturating_sub(1),
    }
}

/// Betti and Hodge numbers of the stable moduli space in degrees `< bound_used`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuliNumbers {
    pub betti: BTreeMap<usize, BigInt>,
    pub hodge: BTreeMap<(usize, usize), BigInt>,
    pub bound_used: u64,
    /// `H^i` is pure of weight `i` in this range.
    pub pure: bool,
}

impl ModuliNumbers {
    /// Hodge numbers ordered by degree, then `p`.
    pub fn hodge_terms(&self) -> Vec<(usize, usize, &BigInt)> {
        let mut v: Vec<_> = self.hodge.iter().map(|(&(p, q), c)| (p, q, c)).collect();
        v.sort_by_key(|&(p, q, _)| (p + q, p));
        v
    }
}

/// `b_i = c_i - c_{i-2}` for `i < bound`, where `c` is any stack series.
pub fn betti_from_series(series: &TruncatedSeries, bound: u64) -> BTreeMap<usize, BigInt> {
    let top = (bound as usize).min(series.truncation() + 1);
    let c = series.coeffs();
    (0..top)
        .map(|i| {
            let lower = if i >= 2 { c[i - 2].clone() } else { BigInt::from(0) };
            (i, &c[i] - lower)
        })
        .collect()
}

/// `h^{p,q} = H_{p,q} - H_{p-1,q-1}` for `p + q < bound`.
pub fn hodge_from_series(series: &HodgeSeries, bound: u64) -> BTreeMap<(usize, usize), BigInt> {
    if bound == 0 {
        return BTreeMap::new();
    }
    let n = (bound as usize - 1).min(series.truncation());
    let corrected = series
        .truncate(n)
        .and_then(|s| s.mul(&HodgeSeries::from_terms(n, [(0, 0, 1.into()), (1, 1, (-1).into())])))
        .expect("truncation within range");
    corrected
        .terms()
        .into_iter()
        .map(|(p, q, c)| ((p, q), c.clone()))
        .collect()
}

/// Betti numbers of the stable moduli space in the valid range.
pub fn moduli_betti(class: BundleClass, ctx: CurveContext, mode: RangeMode) -> ModuliNumbers {
    let bound = stable_range_bound(class.rank(), ctx).select(mode);
    let betti = if bound == 0 {
        BTreeMap::new()
    } else {
        betti_from_series(&bun_poincare(class.rank(), ctx, bound as usize - 1), bound)
    };
    ModuliNumbers {
        betti,
        hodge: BTreeMap::new(),
        bound_used: bound,
        pure: true,
    }
}

/// Betti and Hodge numbers of the stable moduli space in the valid range.
pub fn moduli_hodge(class: BundleClass, ctx: CurveContext, mode: RangeMode) -> ModuliNumbers {
    let mut numbers = moduli_betti(class, ctx, mode);
    let bound = numbers.bound_used;
    if bound > 0 {
        let h = bun_hodge_poincare(class.rank(), ctx, bound as usize - 1);
        numbers.hodge = hodge_from_series(&h, bound);
    }
    numbers
}

/// Upper bound `r^2 deg D - r d - (g-1)(r-1)` on the dimension of the loci of
/// Jordan-Holder flags. The estimate holds for `deg D` large; the value is
/// reported for any `deg D`.
pub fn jh_dim_bound(class: BundleClass, ctx: CurveContext, deg_d: i64) -> i64 {
    div_dimension(class, deg_d) - complement_codim_bound(class.rank(), ctx)
}

/// Dimension `r^2 deg D - r d` of the space of matrix divisors of level `D`.
pub fn div_dimension(class: BundleClass, deg_d: i64) -> i64 {
    let r = class.rank() as i64;
    r * r * deg_d - r * class.degree()
}

/// Codimension bound `(g-1)(r-1)` of the non-stable locus.
pub fn complement_codim_bound(rank: u32, ctx: CurveContext) -> i64 {
    (ctx.genus() as i64 - 1) * (rank as i64 - 1)
}

/// Euler characteristics bounding the tangent space of a two-step flag with
/// leading rank `r1`:
/// `chi(E~_1 (x) E_1^v) = r1 (r - r1)(1 - g) + r1 r deg D - r1 d` and
/// `chi(L^v (x) E~_2) = (r - r1) r deg D + (r1 - r) d`, the second being the
/// step from `r1` to `r`.
pub fn jh_tangent_chi(
    r1: u32,
    class: BundleClass,
    ctx: CurveContext,
    deg_d: i64,
) -> Result<(i64, i64)> {
    let r = class.rank() as i64;
    let r1 = r1 as i64;
    if !(0 < r1 && r1 < r) {
        return Err(Error::InvalidArgument(format!(
            "leading rank {r1} must lie strictly between 0 and {r}"
        )));
    }
    let (g, d) = (ctx.genus() as i64, class.degree());
    let first = r1 * (r - r1) * (1 - g) + r1 * r * deg_d - r1 * d;
    let (ri, rj) = (r1, r);
    let second = (rj - ri) * r * deg_d + (r - rj) * (rj - ri) * (1 - g) + (ri - rj) * d;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(genus: u32) -> CurveContext {
        CurveContext::new(genus).unwrap()
    }

    fn c(r: u32, d: i64) -> BundleClass {
        BundleClass::new(r, d).unwrap()
    }

    fn map(v: &[(usize, i64)]) -> BTreeMap<usize, BigInt> {
        v.iter().map(|&(i, b)| (i, BigInt::from(b))).collect()
    }

    #[test]
    fn range_bound_examples() {
        let b = stable_range_bound(2, g(3));
        assert_eq!((b.paper_bound, b.conservative_bound), (4, 3));
        let b = stable_range_bound(1, g(5));
        assert_eq!((b.paper_bound, b.conservative_bound), (0, 0));
        assert_eq!(stable_range_bound(3, g(2)).paper_bound, 4);
    }

    #[test]
    fn moduli_betti_examples() {
        let m = moduli_betti(c(2, 1), g(3), RangeMode::Paper);
        assert_eq!(m.betti, map(&[(0, 1), (1, 6), (2, 16), (3, 32)]));
        assert_eq!(m.bound_used, 4);
        let m = moduli_betti(c(2, 0), g(2), RangeMode::Paper);
        assert_eq!(m.betti, map(&[(0, 1), (1, 4)]));
        assert!(moduli_betti(c(1, 0), g(2), RangeMode::Paper).betti.is_empty());
    }

    #[test]
    fn conservative_mode_drops_top_degree() {
        let m = moduli_betti(c(2, 1), g(3), RangeMode::Conservative);
        assert_eq!(m.betti, map(&[(0, 1), (1, 6), (2, 16)]));
    }

    #[test]
    fn moduli_hodge_examples() {
        let m = moduli_hodge(c(2, 1), g(3), RangeMode::Paper);
        let want: BTreeMap<(usize, usize), BigInt> = [
            ((0, 0), 1),
            ((1, 0), 3),
            ((0, 1), 3),
            ((2, 0), 3),
            ((1, 1), 10),
            ((0, 2), 3),
            ((3, 0), 1),
            ((2, 1), 15),
            ((1, 2), 15),
            ((0, 3), 1),
        ]
        .into_iter()
        .map(|(k, v)| (k, BigInt::from(v)))
        .collect();
        assert_eq!(m.hodge, want);
        assert!(moduli_hodge(c(1, 0), g(3), RangeMode::Paper).hodge.is_empty());

        let m = moduli_hodge(c(2, 1), g(2), RangeMode::Paper);
        for (&(p, q), v) in &m.hodge {
            assert_eq!(m.hodge.get(&(q, p)), Some(v));
        }
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(jh_dim_bound(c(2, 1), g(2), 5), 17);
        assert_eq!(jh_dim_bound(c(3, 0), g(2), 4), 34);
        assert_eq!(jh_dim_bound(c(1, 4), g(7), 9), 5);
        assert_eq!(div_dimension(c(2, 1), 5), 18);
        assert_eq!(complement_codim_bound(2, g(2)), 1);
        assert_eq!(complement_codim_bound(3, g(2)), 2);
        assert_eq!(complement_codim_bound(1, g(9)), 0);
    }

    #[test]
    fn tangent_chi_examples() {
        assert_eq!(jh_tangent_chi(1, c(2, 1), g(2), 5).unwrap(), (8, 9));
        let (a, b) = jh_tangent_chi(1, c(2, 1), g(2), 5).unwrap();
        assert_eq!(a + b, jh_dim_bound(c(2, 1), g(2), 5));
        assert_eq!(jh_tangent_chi(1, c(2, 0), g(2), 1).unwrap(), (1, 2));
        assert!(jh_tangent_chi(0, c(2, 0), g(2), 1).is_err());
        assert!(jh_tangent_chi(2, c(2, 0), g(2), 1).is_err());
    }
}
