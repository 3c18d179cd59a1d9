//! Poincare and Hodge-Poincare series of the moduli stack of bundles and of
//! its Harder-Narasimhan strata.
//!
//! The full stack series has a closed product form independent of the degree.
//! Semistable series come from the stratification identity
//!
//! ```text
//! P(Bun_{r,d}) = sum_P t^{2 d_P} prod_i P(Bun^{ss}_{r'_i, d'_i})
//! ```
//!
//! solved for the trivial type. A stratum with `2 d_P > N` contributes only in
//! degrees above the truncation and is dropped; this is the sole finiteness
//! mechanism. On the Hodge side the shift `t^{2 d_P}` becomes the Tate twist
//! `(xy)^{d_P}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::hn::{enumerate_hn_types, BundleClass, CurveContext, HnType};
use crate::series::{HodgeSeries, TruncatedSeries};

/// Truncated Poincare series of the stack of rank `r` bundles:
/// `prod_{j=1}^r (1+t^{2j-1})^{2g} / ((1-t^{2r}) prod_{j=1}^{r-1} (1-t^{2j})^2)`.
pub fn bun_poincare(rank: u32, ctx: CurveContext, truncation: usize) -> TruncatedSeries {
    assert!(rank >= 1, "rank must be positive");
    let r = rank as usize;
    let g = ctx.genus();
    let mut factors = Vec::with_capacity(3 * r);
    for j in 1..=r {
        factors.push(TruncatedSeries::binomial_power(2 * j - 1, 2 * g, truncation));
    }
    factors.push(TruncatedSeries::geometric_inverse(2 * r, truncation));
    for j in 1..r {
        let inv = TruncatedSeries::geometric_inverse(2 * j, truncation);
        factors.push(inv.clone());
        factors.push(inv);
    }
    TruncatedSeries::product(truncation, &factors).expect("factors share a truncation")
}

/// Truncated Hodge-Poincare series of the stack of rank `r` bundles:
/// `(1+x)^g (1+y)^g / (1-x^r y^r) * prod_{i=1}^{r-1} (1+x^{i+1}y^i)^g (1+x^i y^{i+1})^g / (1-x^i y^i)^2`.
///
/// The odd generators in degree `2i+1` carry Hodge types `(i+1, i)` and
/// `(i, i+1)`, so `x = y = t` recovers [`bun_poincare`].
pub fn bun_hodge_poincare(rank: u32, ctx: CurveContext, truncation: usize) -> HodgeSeries {
    assert!(rank >= 1, "rank must be positive");
    let r = rank as usize;
    let g = ctx.genus();
    let n = truncation;
    let mut factors = vec![
        HodgeSeries::binomial_power(1, 0, g, n),
        HodgeSeries::binomial_power(0, 1, g, n),
        HodgeSeries::geometric_inverse(r, r, n),
    ];
    for i in 1..r {
        factors.push(HodgeSeries::binomial_power(i + 1, i, g, n));
        factors.push(HodgeSeries::binomial_power(i, i + 1, g, n));
        let inv = HodgeSeries::geometric_inverse(i, i, n);
        factors.push(inv.clone());
        factors.push(inv);
    }
    HodgeSeries::product(n, &factors).expect("factors share a truncation")
}

/// Memoization key of a semistable series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SsKey {
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub truncation: usize,
}

impl SsKey {
    pub fn new(class: BundleClass, ctx: CurveContext, truncation: usize) -> Self {
        SsKey {
            rank: class.rank(),
            degree: class.degree(),
            genus: ctx.genus(),
            truncation,
        }
    }
}

/// Shared memo table for semistable series.
///
/// Lookups and inserts are atomic; two threads racing on one key may both
/// compute it, and the first stored value wins. Values are deterministic so
/// the duplicate work is harmless.
#[derive(Debug, Default)]
pub struct SsCache {
    poincare: Mutex<HashMap<SsKey, Arc<TruncatedSeries>>>,
    hodge: Mutex<HashMap<SsKey, Arc<HodgeSeries>>>,
    normalize_degree: bool,
}

impl SsCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cache that reduces the degree modulo the rank before lookup.
    /// Relies on the translation symmetry `ss(r, d) = ss(r, d + r)`.
    pub fn with_degree_normalization() -> Self {
        SsCache {
            normalize_degree: true,
            ..Self::default()
        }
    }

    fn key(&self, class: BundleClass, ctx: CurveContext, truncation: usize) -> SsKey {
        let mut key = SsKey::new(class, ctx, truncation);
        if self.normalize_degree {
            key.degree = key.degree.rem_euclid(key.rank as i64);
        }
        key
    }

    pub fn get_poincare(&self, key: &SsKey) -> Option<Arc<TruncatedSeries>> {
        self.poincare.lock().unwrap().get(key).cloned()
    }

    pub fn get_hodge(&self, key: &SsKey) -> Option<Arc<HodgeSeries>> {
        self.hodge.lock().unwrap().get(key).cloned()
    }

    /// Stores a value unless the key is already present; returns the stored one.
    pub fn insert_poincare(&self, key: SsKey, value: TruncatedSeries) -> Arc<TruncatedSeries> {
        self.poincare
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(value))
            .clone()
    }

    pub fn insert_hodge(&self, key: SsKey, value: HodgeSeries) -> Arc<HodgeSeries> {
        self.hodge
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(value))
            .clone()
    }

    /// Snapshot of the Poincare entries, sorted by key.
    pub fn poincare_entries(&self) -> Vec<(SsKey, Arc<TruncatedSeries>)> {
        let mut v: Vec<_> = self
            .poincare
            .lock()
            .unwrap()
            .iter()
            .map(|(k, s)| (*k, s.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn hodge_entries(&self) -> Vec<(SsKey, Arc<HodgeSeries>)> {
        let mut v: Vec<_> = self
            .hodge
            .lock()
            .unwrap()
            .iter()
            .map(|(k, s)| (*k, s.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn len(&self) -> usize {
        self.poincare.lock().unwrap().len() + self.hodge.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Poincare series of the semistable locus of `class`, truncated at `N`.
pub fn ss_poincare(
    class: BundleClass,
    ctx: CurveContext,
    truncation: usize,
    cache: &SsCache,
) -> Arc<TruncatedSeries> {
    let key = cache.key(class, ctx, truncation);
    if let Some(hit) = cache.get_poincare(&key) {
        return hit;
    }
    let mut series = bun_poincare(class.rank(), ctx, truncation);
    if class.rank() > 1 {
        for (ty, codim) in enumerate_hn_types(class, ctx, (truncation / 2) as u64) {
            let stratum = stratum_series(&ty, ctx, truncation, cache);
            series = series
                .sub(&stratum.shift(2 * codim as usize))
                .expect("same truncation");
        }
    }
    cache.insert_poincare(key, series)
}

/// Hodge-Poincare series of the semistable locus of `class`.
pub fn ss_hodge_poincare(
    class: BundleClass,
    ctx: CurveContext,
    truncation: usize,
    cache: &SsCache,
) -> Arc<HodgeSeries> {
    let key = cache.key(class, ctx, truncation);
    if let Some(hit) = cache.get_hodge(&key) {
        return hit;
    }
    let mut series = bun_hodge_poincare(class.rank(), ctx, truncation);
    if class.rank() > 1 {
        for (ty, codim) in enumerate_hn_types(class, ctx, (truncation / 2) as u64) {
            let stratum = stratum_hodge_series(&ty, ctx, truncation, cache);
            let c = codim as usize;
            series = series.sub(&stratum.shift(c, c)).expect("same truncation");
        }
    }
    cache.insert_hodge(key, series)
}

/// Series of a stratum: the product of the semistable series of its
/// segments, without the codimension shift.
pub fn stratum_series(
    ty: &HnType,
    ctx: CurveContext,
    truncation: usize,
    cache: &SsCache,
) -> TruncatedSeries {
    let factors: Vec<_> = ty
        .segments()
        .iter()
        .map(|s| ss_poincare(segment_class(s.rank, s.degree), ctx, truncation, cache))
        .collect();
    TruncatedSeries::product(truncation, factors.iter().map(|a| a.as_ref()))
        .expect("same truncation")
}

pub fn stratum_hodge_series(
    ty: &HnType,
    ctx: CurveContext,
    truncation: usize,
    cache: &SsCache,
) -> HodgeSeries {
    let factors: Vec<_> = ty
        .segments()
        .iter()
        .map(|s| ss_hodge_poincare(segment_class(s.rank, s.degree), ctx, truncation, cache))
        .collect();
    HodgeSeries::product(truncation, factors.iter().map(|a| a.as_ref())).expect("same truncation")
}

fn segment_class(rank: u32, degree: i64) -> BundleClass {
    BundleClass::new(rank, degree).expect("segment ranks are positive")
}

/// Outcome of reassembling the stratification identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataReport {
    pub pass: bool,
    /// `P(Bun) - sum_P t^{2 d_P} P(S^P)`; identically zero on success.
    pub residual: TruncatedSeries,
    /// Number of strata (trivial one included) that entered the sum.
    pub strata_used: usize,
}

/// Rebuilds `sum_P t^{2 d_P} P(S^P)` over all types with `2 d_P <= N` and
/// compares it with the closed formula for the whole stack.
pub fn verify_strata_identity(
    class: BundleClass,
    ctx: CurveContext,
    truncation: usize,
    cache: &SsCache,
) -> StrataReport {
    verify_strata_identity_with(class, ctx, truncation, cache, |_, c| c)
}

/// Same as [`verify_strata_identity`], with each stratum's shift taken from
/// `codim_of(type, codim)`. Used to check that perturbed codimensions are
/// detected.
pub fn verify_strata_identity_with<F>(
    class: BundleClass,
    ctx: CurveContext,
    truncation: usize,
    cache: &SsCache,
    codim_of: F,
) -> StrataReport
where
    F: Fn(&HnType, u64) -> u64,
{
    let mut strata = vec![(HnType::trivial(class), 0)];
    strata.extend(enumerate_hn_types(class, ctx, (truncation / 2) as u64));
    let mut total = TruncatedSeries::zero(truncation);
    for (ty, codim) in &strata {
        let shift = 2 * codim_of(ty, *codim) as usize;
        let term = stratum_series(ty, ctx, truncation, cache).shift(shift);
        total = total.add(&term).expect("same truncation");
    }
    let residual = bun_poincare(class.rank(), ctx, truncation)
        .sub(&total)
        .expect("same truncation");
    StrataReport {
        pass: residual.is_zero(),
        residual,
        strata_used: strata.len(),
    }
}
