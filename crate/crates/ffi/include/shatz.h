/* C interface to the shatz moduli series calculator. */

#ifndef SHATZ_H
#define SHATZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum {
  SHATZ_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  SHATZ_STATUS_NULL_POINTER = 1,
  /**
   * Malformed argument (zero rank, mismatched truncation, ...).
   */
  SHATZ_STATUS_USAGE = 2,
  /**
   * Genus below 2.
   */
  SHATZ_STATUS_DOMAIN = 3,
  /**
   * Coefficient index beyond the truncation.
   */
  SHATZ_STATUS_OUT_OF_RANGE = 4,
  /**
   * Output buffer too small; the required size was reported.
   */
  SHATZ_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Coefficient does not fit in 64 bits.
   */
  SHATZ_STATUS_OVERFLOW = 6,
  /**
   * Internal panic caught at the boundary.
   */
  SHATZ_STATUS_INTERNAL = 7,
} ShatzStatus;

/**
 * Memo table for semistable series.
 */
typedef struct ShatzCache ShatzCache;

/**
 * Two-variable truncated series.
 */
typedef struct ShatzHodgeSeries ShatzHodgeSeries;

/**
 * One-variable truncated series.
 */
typedef struct ShatzSeries ShatzSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *shatz_status_message(ShatzStatus status);

/**
 * Creates an empty cache. Never returns NULL.
 */
ShatzCache *shatz_cache_new(void);

/**
 * Releases a cache. NULL is ignored.
 *
 * # Safety
 * `cache` must come from [`shatz_cache_new`] and not be used afterwards.
 */
void shatz_cache_free(ShatzCache *cache);

/**
 * Poincare series of the moduli stack of rank `rank` bundles.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
ShatzStatus shatz_bun_poincare(uint32_t rank, uint32_t genus, size_t truncation, ShatzSeries **out);

/**
 * Hodge-Poincare series of the moduli stack of rank `rank` bundles.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
ShatzStatus shatz_bun_hodge_poincare(uint32_t rank,
                                     uint32_t genus,
                                     size_t truncation,
                                     ShatzHodgeSeries **out);

/**
 * Poincare series of the semistable locus. `cache` may be NULL.
 *
 * # Safety
 * `cache` must be NULL or a live cache handle; `out` must be valid.
 */
ShatzStatus shatz_ss_poincare(const ShatzCache *cache,
                              uint32_t rank,
                              int64_t degree,
                              uint32_t genus,
                              size_t truncation,
                              ShatzSeries **out);

/**
 * Hodge-Poincare series of the semistable locus. `cache` may be NULL.
 *
 * # Safety
 * `cache` must be NULL or a live cache handle; `out` must be valid.
 */
ShatzStatus shatz_ss_hodge_poincare(const ShatzCache *cache,
                                    uint32_t rank,
                                    int64_t degree,
                                    uint32_t genus,
                                    size_t truncation,
                                    ShatzHodgeSeries **out);

/**
 * Checks the stratification identity; `*pass` receives the outcome.
 *
 * # Safety
 * `cache` must be NULL or a live cache handle; `pass` must be valid.
 */
ShatzStatus shatz_verify_strata(const ShatzCache *cache,
                                uint32_t rank,
                                int64_t degree,
                                uint32_t genus,
                                size_t truncation,
                                bool *pass);

/**
 * Betti numbers `b_0 .. b_{bound-1}` of the stable moduli space as a series
 * truncated at `bound - 1`. When the valid range is empty (rank 1) `*out`
 * is set to NULL and `SHATZ_STATUS_OK` is returned.
 *
 * # Safety
 * `out` must be valid.
 */
ShatzStatus shatz_moduli_betti(uint32_t rank,
                               int64_t degree,
                               uint32_t genus,
                               bool conservative,
                               ShatzSeries **out);

/**
 * Degree bound of the stable range.
 *
 * # Safety
 * `out` must be valid.
 */
ShatzStatus shatz_stable_range_bound(uint32_t rank,
                                     uint32_t genus,
                                     bool conservative,
                                     uint64_t *out);

/**
 * Truncation order of a series; 0 for NULL.
 *
 * # Safety
 * `series` must be NULL or a live handle.
 */
size_t shatz_series_truncation(const ShatzSeries *series);

/**
 * Coefficient of `t^index` as an `int64_t`.
 *
 * # Safety
 * `series` must be a live handle and `out` valid.
 */
ShatzStatus shatz_series_coefficient_i64(const ShatzSeries *series, size_t index, int64_t *out);

/**
 * Coefficient of `t^index` as a NUL-terminated decimal string written to
 * `buf`. `*needed` (if not NULL) receives the required buffer size including
 * the terminator; a short or NULL buffer yields `SHATZ_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `series` must be a live handle; `buf` must hold `buf_len` bytes.
 */
ShatzStatus shatz_series_coefficient_str(const ShatzSeries *series,
                                         size_t index,
                                         char *buf,
                                         size_t buf_len,
                                         size_t *needed);

/**
 * Releases a series. NULL is ignored.
 *
 * # Safety
 * `series` must come from this library and not be used afterwards.
 */
void shatz_series_free(ShatzSeries *series);

/**
 * Total-degree truncation of a two-variable series; 0 for NULL.
 *
 * # Safety
 * `series` must be NULL or a live handle.
 */
size_t shatz_hodge_truncation(const ShatzHodgeSeries *series);

/**
 * Coefficient of `x^p y^q` as an `int64_t`.
 *
 * # Safety
 * `series` must be a live handle and `out` valid.
 */
ShatzStatus shatz_hodge_coefficient_i64(const ShatzHodgeSeries *series,
                                        size_t p,
                                        size_t q,
                                        int64_t *out);

/**
 * Coefficient of `x^p y^q` as a decimal string; see
 * [`shatz_series_coefficient_str`] for the buffer protocol.
 *
 * # Safety
 * `series` must be a live handle; `buf` must hold `buf_len` bytes.
 */
ShatzStatus shatz_hodge_coefficient_str(const ShatzHodgeSeries *series,
                                        size_t p,
                                        size_t q,
                                        char *buf,
                                        size_t buf_len,
                                        size_t *needed);

/**
 * Releases a two-variable series. NULL is ignored.
 *
 * # Safety
 * `series` must come from this library and not be used afterwards.
 */
void shatz_hodge_free(ShatzHodgeSeries *series);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHATZ_H */
