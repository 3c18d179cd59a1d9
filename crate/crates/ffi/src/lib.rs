//! C ABI over the `shatz` calculator.
//!
//! Series are returned as opaque heap handles that the caller releases with
//! the matching `*_free` function. Every entry point returns a [`ShatzStatus`];
//! results are written through out-pointers. Coefficients are arbitrary
//! precision and are read back as NUL-terminated decimal strings, or as
//! `int64_t` when they fit.
//!
//! Handles are immutable once created. A `ShatzCache` may be shared between
//! threads.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shatz::{
    bun_hodge_poincare, bun_poincare, moduli_betti, ss_hodge_poincare, ss_poincare,
    stable_range_bound, verify_strata_identity, BundleClass, CurveContext, Error, HodgeSeries,
    RangeMode, SsCache, TruncatedSeries,
};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShatzStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Malformed argument (zero rank, mismatched truncation, ...).
    Usage = 2,
    /// Genus below 2.
    Domain = 3,
    /// Coefficient index beyond the truncation.
    OutOfRange = 4,
    /// Output buffer too small; the required size was reported.
    BufferTooSmall = 5,
    /// Coefficient does not fit in 64 bits.
    Overflow = 6,
    /// Internal panic caught at the boundary.
    Internal = 7,
}

/// One-variable truncated series.
pub struct ShatzSeries(TruncatedSeries);

/// Two-variable truncated series.
pub struct ShatzHodgeSeries(HodgeSeries);

/// Memo table for semistable series.
pub struct ShatzCache(SsCache);

fn status_of(e: &Error) -> ShatzStatus {
    match e {
        Error::GenusTooSmall(_) => ShatzStatus::Domain,
        Error::IndexOutOfRange { .. } => ShatzStatus::OutOfRange,
        _ => ShatzStatus::Usage,
    }
}

fn guard<F>(f: F) -> ShatzStatus
where
    F: FnOnce() -> Result<(), ShatzStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShatzStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => ShatzStatus::Internal,
    }
}

fn context(rank: u32, degree: i64, genus: u32) -> Result<(BundleClass, CurveContext), ShatzStatus> {
    let ctx = CurveContext::new(genus).map_err(|e| status_of(&e))?;
    let class = BundleClass::new(rank, degree).map_err(|e| status_of(&e))?;
    Ok((class, ctx))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), ShatzStatus> {
    if out.is_null() {
        return Err(ShatzStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_decimal(
    text: &str,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> Result<(), ShatzStatus> {
    let bytes = text.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || buf_len < bytes.len() + 1 {
        return Err(ShatzStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn shatz_status_message(status: ShatzStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        ShatzStatus::Ok => b"ok\0",
        ShatzStatus::NullPointer => b"null pointer argument\0",
        ShatzStatus::Usage => b"invalid argument\0",
        ShatzStatus::Domain => b"genus must be at least 2\0",
        ShatzStatus::OutOfRange => b"index beyond truncation\0",
        ShatzStatus::BufferTooSmall => b"buffer too small\0",
        ShatzStatus::Overflow => b"coefficient does not fit in 64 bits\0",
        ShatzStatus::Internal => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// Creates an empty cache. Never returns NULL.
#[no_mangle]
pub extern "C" fn shatz_cache_new() -> *mut ShatzCache {
    Box::into_raw(Box::new(ShatzCache(SsCache::new())))
}

/// Releases a cache. NULL is ignored.
///
/// # Safety
/// `cache` must come from [`shatz_cache_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn shatz_cache_free(cache: *mut ShatzCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Poincare series of the moduli stack of rank `rank` bundles.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn shatz_bun_poincare(
    rank: u32,
    genus: u32,
    truncation: usize,
    out: *mut *mut ShatzSeries,
) -> ShatzStatus {
    guard(|| {
        let (class, ctx) = context(rank, 0, genus)?;
        put(out, ShatzSeries(bun_poincare(class.rank(), ctx, truncation)))
    })
}

/// Hodge-Poincare series of the moduli stack of rank `rank` bundles.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn shatz_bun_hodge_poincare(
    rank: u32,
    genus: u32,
    truncation: usize,
    out: *mut *mut ShatzHodgeSeries,
) -> ShatzStatus {
    guard(|| {
        let (class, ctx) = context(rank, 0, genus)?;
        put(out, ShatzHodgeSeries(bun_hodge_poincare(class.rank(), ctx, truncation)))
    })
}

/// Poincare series of the semistable locus. `cache` may be NULL.
///
/// # Safety
/// `cache` must be NULL or a live cache handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_ss_poincare(
    cache: *const ShatzCache,
    rank: u32,
    degree: i64,
    genus: u32,
    truncation: usize,
    out: *mut *mut ShatzSeries,
) -> ShatzStatus {
    guard(|| {
        let (class, ctx) = context(rank, degree, genus)?;
        let local;
        let cache = match cache.as_ref() {
            Some(c) => &c.0,
            None => {
                local = SsCache::new();
                &local
            }
        };
        let s = ss_poincare(class, ctx, truncation, cache);
        put(out, ShatzSeries((*s).clone()))
    })
}

/// Hodge-Poincare series of the semistable locus. `cache` may be NULL.
///
/// # Safety
/// `cache` must be NULL or a live cache handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_ss_hodge_poincare(
    cache: *const ShatzCache,
    rank: u32,
    degree: i64,
    genus: u32,
    truncation: usize,
    out: *mut *mut ShatzHodgeSeries,
) -> ShatzStatus {
    guard(|| {
        let (class, ctx) = context(rank, degree, genus)?;
        let local;
        let cache = match cache.as_ref() {
            Some(c) => &c.0,
            None => {
                local = SsCache::new();
                &local
            }
        };
        let s = ss_hodge_poincare(class, ctx, truncation, cache);
        put(out, ShatzHodgeSeries((*s).clone()))
    })
}

/// Checks the stratification identity; `*pass` receives the outcome.
///
/// # Safety
/// `cache` must be NULL or a live cache handle; `pass` must be valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_verify_strata(
    cache: *const ShatzCache,
    rank: u32,
    degree: i64,
    genus: u32,
    truncation: usize,
    pass: *mut bool,
) -> ShatzStatus {
    guard(|| {
        if pass.is_null() {
            return Err(ShatzStatus::NullPointer);
        }
        let (class, ctx) = context(rank, degree, genus)?;
        let local;
        let cache = match cache.as_ref() {
            Some(c) => &c.0,
            None => {
                local = SsCache::new();
                &local
            }
        };
        *pass = verify_strata_identity(class, ctx, truncation, cache).pass;
        Ok(())
    })
}

/// Betti numbers `b_0 .. b_{bound-1}` of the stable moduli space as a series
/// truncated at `bound - 1`. When the valid range is empty (rank 1) `*out`
/// is set to NULL and `SHATZ_STATUS_OK` is returned.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_moduli_betti(
    rank: u32,
    degree: i64,
    genus: u32,
    conservative: bool,
    out: *mut *mut ShatzSeries,
) -> ShatzStatus {
    guard(|| {
        if out.is_null() {
            return Err(ShatzStatus::NullPointer);
        }
        let (class, ctx) = context(rank, degree, genus)?;
        let mode = if conservative {
            RangeMode::Conservative
        } else {
            RangeMode::Paper
        };
        let numbers = moduli_betti(class, ctx, mode);
        if numbers.betti.is_empty() {
            *out = ptr::null_mut();
            return Ok(());
        }
        let coeffs = numbers.betti.into_values().collect();
        put(out, ShatzSeries(TruncatedSeries::from_coeffs(coeffs)))
    })
}

/// Degree bound of the stable range.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_stable_range_bound(
    rank: u32,
    genus: u32,
    conservative: bool,
    out: *mut u64,
) -> ShatzStatus {
    guard(|| {
        if out.is_null() {
            return Err(ShatzStatus::NullPointer);
        }
        let (class, ctx) = context(rank, 0, genus)?;
        let bound = stable_range_bound(class.rank(), ctx);
        *out = if conservative {
            bound.conservative_bound
        } else {
            bound.paper_bound
        };
        Ok(())
    })
}

/// Truncation order of a series; 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shatz_series_truncation(series: *const ShatzSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.truncation())
}

/// Coefficient of `t^index` as an `int64_t`.
///
/// # Safety
/// `series` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_series_coefficient_i64(
    series: *const ShatzSeries,
    index: usize,
    out: *mut i64,
) -> ShatzStatus {
    guard(|| {
        let s = series.as_ref().ok_or(ShatzStatus::NullPointer)?;
        if out.is_null() {
            return Err(ShatzStatus::NullPointer);
        }
        let c = s.0.coefficient(index).map_err(|e| status_of(&e))?;
        *out = i64::try_from(c).map_err(|_| ShatzStatus::Overflow)?;
        Ok(())
    })
}

/// Coefficient of `t^index` as a NUL-terminated decimal string written to
/// `buf`. `*needed` (if not NULL) receives the required buffer size including
/// the terminator; a short or NULL buffer yields `SHATZ_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `series` must be a live handle; `buf` must hold `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn shatz_series_coefficient_str(
    series: *const ShatzSeries,
    index: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> ShatzStatus {
    guard(|| {
        let s = series.as_ref().ok_or(ShatzStatus::NullPointer)?;
        let c = s.0.coefficient(index).map_err(|e| status_of(&e))?;
        write_decimal(&c.to_string(), buf, buf_len, needed)
    })
}

/// Releases a series. NULL is ignored.
///
/// # Safety
/// `series` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn shatz_series_free(series: *mut ShatzSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Total-degree truncation of a two-variable series; 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shatz_hodge_truncation(series: *const ShatzHodgeSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.truncation())
}

/// Coefficient of `x^p y^q` as an `int64_t`.
///
/// # Safety
/// `series` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn shatz_hodge_coefficient_i64(
    series: *const ShatzHodgeSeries,
    p: usize,
    q: usize,
    out: *mut i64,
) -> ShatzStatus {
    guard(|| {
        let s = series.as_ref().ok_or(ShatzStatus::NullPointer)?;
        if out.is_null() {
            return Err(ShatzStatus::NullPointer);
        }
        let c = s.0.coefficient(p, q).map_err(|e| status_of(&e))?;
        *out = i64::try_from(&c).map_err(|_| ShatzStatus::Overflow)?;
        Ok(())
    })
}

/// Coefficient of `x^p y^q` as a decimal string; see
/// [`shatz_series_coefficient_str`] for the buffer protocol.
///
/// # Safety
/// `series` must be a live handle; `buf` must hold `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn shatz_hodge_coefficient_str(
    series: *const ShatzHodgeSeries,
    p: usize,
    q: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> ShatzStatus {
    guard(|| {
        let s = series.as_ref().ok_or(ShatzStatus::NullPointer)?;
        let c = s.0.coefficient(p, q).map_err(|e| status_of(&e))?;
        write_decimal(&c.to_string(), buf, buf_len, needed)
    })
}

/// Releases a two-variable series. NULL is ignored.
///
/// # Safety
/// `series` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn shatz_hodge_free(series: *mut ShatzHodgeSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}
