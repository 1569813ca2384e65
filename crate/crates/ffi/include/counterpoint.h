#ifndef COUNTERPOINT_H
#define COUNTERPOINT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CpStatus {
  CP_STATUS_OK = 0,
  CP_STATUS_NULL_POINTER = 1,
  CP_STATUS_INVALID_ARGUMENT = 2,
  CP_STATUS_NOT_CONSONANT = 3,
  CP_STATUS_NOT_STRONG = 4,
  CP_STATUS_PRELIMINARY_RULE = 5,
  CP_STATUS_NO_PREIMAGE = 6,
  CP_STATUS_PANIC = 7,
} CpStatus;

typedef enum CpVerdict {
  CP_VERDICT_ALLOWED = 0,
  CP_VERDICT_FORBIDDEN = 1,
  CP_VERDICT_NON_POLARIZED = 2,
} CpVerdict;

typedef enum CpCategory {
  CP_CATEGORY_INADMISSIBLE = 0,
  CP_CATEGORY_BAD = 1,
  CP_CATEGORY_GOOD = 2,
} CpCategory;

/**
 * Sub-label of good reduced progressions; `None` otherwise.
 */
typedef enum CpRefined {
  CP_REFINED_NONE = 0,
  CP_REFINED_GOOD_GOOD = 1,
  CP_REFINED_GOOD_BAD = 2,
  CP_REFINED_AMBIGUOUS = 3,
} CpRefined;

typedef enum CpVariant {
  CP_VARIANT_CLASSICAL = 0,
  CP_VARIANT_IDEMPOTENT = 1,
  CP_VARIANT_LOCAL_GLOBAL_NILPOTENT = 2,
  CP_VARIANT_LOCAL_GLOBAL_IDEMPOTENT = 3,
} CpVariant;

typedef enum CpSemantics {
  CP_SEMANTICS_ORIGINAL = 0,
  CP_SEMANTICS_REFINED = 1,
  CP_SEMANTICS_STARRED = 2,
} CpSemantics;

/**
 * A model for one variant over one dichotomy, with the scale used to
 * enumerate progressions.
 */
typedef struct CpEngine CpEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Engine over the standard dichotomy of `Z_12` and the diatonic scale.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum CpStatus cp_engine_new_standard(uint32_t variant_code, struct CpEngine **out);

/**
 * Engine over the dichotomy of `Z_n` with the given consonances (the rest
 * are dissonances). Verdict totals range over all pitch classes unless
 * `n = 12`, where the diatonic scale is used.
 *
 * # Safety
 * `consonances` must point to `len` readable values; `out` must be valid
 * for writing a pointer.
 */
enum CpStatus cp_engine_new_custom(uint32_t n,
                                   const int64_t *consonances,
                                   size_t len,
                                   uint32_t variant_code,
                                   struct CpEngine **out);

/**
 * Releases an engine; null is ignored.
 *
 * # Safety
 * `engine` must be null or a handle from `cp_engine_new_*` not yet freed.
 */
void cp_engine_free(struct CpEngine *engine);

/**
 * # Safety
 * `engine` must be a live handle; `out` valid for a write.
 */
enum CpStatus cp_engine_modulus(const struct CpEngine *engine, uint32_t *out);

/**
 * Verdict on the reduced progression `(kτ, c' + k'τ)`.
 *
 * # Safety
 * `engine` must be a live handle; `out` valid for a write.
 */
enum CpStatus cp_engine_verdict(const struct CpEngine *engine,
                                int64_t k,
                                int64_t c_next,
                                int64_t k_next,
                                enum CpVerdict *out);

/**
 * Number of admitted successors of `kτ`.
 *
 * # Safety
 * `engine` must be a live handle; `out` valid for a write.
 */
enum CpStatus cp_engine_successor_count(const struct CpEngine *engine, int64_t k, size_t *out);

/**
 * Allowed, forbidden and non-polarized counts over the engine's
 * progressions, written to `out[0..3]`.
 *
 * # Safety
 * `engine` must be a live handle; `out` valid for three writes.
 */
enum CpStatus cp_engine_verdict_totals(const struct CpEngine *engine, size_t *out);

/**
 * Category of the strict progression `(c, d) -> (c', d')`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum CpStatus cp_classify_strict(int64_t c,
                                 int64_t d,
                                 int64_t c_next,
                                 int64_t d_next,
                                 enum CpCategory *out);

/**
 * Category and refined label of the reduced progression `(k, c', k')`.
 *
 * # Safety
 * `category` and `refined` must be valid for a write.
 */
enum CpStatus cp_classify_reduced(int64_t k,
                                  int64_t c_next,
                                  int64_t k_next,
                                  enum CpCategory *category,
                                  enum CpRefined *refined);

/**
 * Matches and mismatches of a variant against the reduced strict style.
 *
 * # Safety
 * `matches` and `mismatches` must be valid for a write.
 */
enum CpStatus cp_match_metrics(uint32_t variant_code,
                               uint32_t semantics_code,
                               size_t *matches,
                               size_t *mismatches);

/**
 * Message for the last failed call on this thread, or the empty string.
 * Valid until the next call into the library from the same thread.
 */
const char *cp_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *cp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COUNTERPOINT_H */
