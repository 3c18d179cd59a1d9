//! Exact calculator for the cohomology of moduli of vector bundles on a
//! smooth projective curve of genus at least two.
//!
//! - [`series`]: truncated one- and two-variable power series over big integers.
//! - [`hn`]: Harder-Narasimhan types, their partial order and codimensions.
//! - [`moduli`]: stack series in closed form and the semistable recursion.
//! - [`stable`]: Betti and Hodge numbers of the stable moduli space.
//! - [`cli`], [`cache_file`]: command-line front end and cache persistence.

pub mod cache_file;
pub mod cli;
pub mod error;
pub mod hn;
pub mod moduli;
pub mod series;
pub mod stable;

pub use error::{Error, Result};
pub use hn::{enumerate_hn_types, BundleClass, CurveContext, HnType, Segment};
pub use moduli::{
    bun_hodge_poincare, bun_poincare, ss_hodge_poincare, ss_poincare, stratum_hodge_series,
    stratum_series, verify_strata_identity, verify_strata_identity_with, SsCache, SsKey,
    StrataReport,
};
pub use series::{HodgeSeries, TruncatedSeries};
pub use stable::{
    complement_codim_bound, div_dimension, jh_dim_bound, jh_tangent_chi, moduli_betti,
    moduli_hodge, stable_range_bound, ModuliNumbers, RangeBound, RangeMode,
};
