#ifndef CWENUM_H
#define CWENUM_H

/* Generated by cbindgen from cwenum-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Code family selector.
 */
#define CWENUM_CODE_C1 1

/**
 * Code family selector.
 */
#define CWENUM_CODE_C2 2

/**
 * Compute the closed form only.
 */
#define CWENUM_METHOD_CLOSED 0

/**
 * Compute the enumeration oracle only.
 */
#define CWENUM_METHOD_BRUTE 1

/**
 * Compute both and include the comparison in the result.
 */
#define CWENUM_METHOD_BOTH 2

/**
 * One-coefficient sum family.
 */
#define CWENUM_SUM_S 0

/**
 * Two-coefficient sum family.
 */
#define CWENUM_SUM_T 1

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum CwenumStatus {
  CWENUM_STATUS_OK = 0,
  CWENUM_STATUS_NULL_ARGUMENT = 1,
  CWENUM_STATUS_NOT_PRIME = 2,
  CWENUM_STATUS_NOT_PRIMITIVE = 3,
  CWENUM_STATUS_CAP_EXCEEDED = 4,
  CWENUM_STATUS_MIXED_PRIMES = 5,
  CWENUM_STATUS_BAD_EXPONENT = 6,
  CWENUM_STATUS_DEGENERATE_QUADRATIC = 7,
  CWENUM_STATUS_UNCLASSIFIED_SUM_VALUE = 8,
  CWENUM_STATUS_NON_INTEGRAL_COMPOSITION = 9,
  CWENUM_STATUS_BUDGET_EXCEEDED = 10,
  CWENUM_STATUS_DEGENERACY_MISMATCH = 11,
  CWENUM_STATUS_NOT_BILINEAR = 12,
  CWENUM_STATUS_INVALID_ARGUMENT = 13,
  CWENUM_STATUS_INTERNAL = 14,
} CwenumStatus;

/**
 * Opaque handle to a built field.
 */
typedef struct CwenumField CwenumField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *cwenum_version(void);

/**
 * Builds F_{p^m}. `poly`, when non-null with `poly_len == m + 1`, is the
 * full coefficient vector (constant term first, leading 1) of a monic
 * primitive polynomial override. `cap = 0` selects the default field
 * size cap of 2^22 elements.
 *
 * # Safety
 * `out_field` must be valid; `poly` must point to `poly_len` readable
 * u32 values when non-null.
 */
enum CwenumStatus cwenum_field_build(uint32_t p,
                                     uint32_t m,
                                     const uint32_t *poly,
                                     size_t poly_len,
                                     uint64_t cap,
                                     struct CwenumField **out_field);

/**
 * Releases a field handle. Null is a no-op.
 *
 * # Safety
 * `field` must have come from `cwenum_field_build` and not be freed twice.
 */
void cwenum_field_free(struct CwenumField *field);

/**
 * Field descriptor, check-polynomial degrees and code dimensions as JSON.
 *
 * # Safety
 * `field` must be a live handle; `out_json` must be valid.
 */
enum CwenumStatus cwenum_field_info_json(const struct CwenumField *field,
                                         uint32_t l,
                                         char **out_json);

/**
 * Sum value distribution as JSON. `family` is CWENUM_SUM_S or
 * CWENUM_SUM_T; `method` selects direct sweep, closed form, or both.
 *
 * # Safety
 * `field` must be a live handle; `out_json` must be valid.
 */
enum CwenumStatus cwenum_sum_dist_json(const struct CwenumField *field,
                                       uint32_t l,
                                       uint32_t family,
                                       uint32_t method,
                                       uint64_t budget,
                                       uint32_t workers,
                                       char **out_json);

/**
 * Complete weight enumerator report as JSON. `code` is CWENUM_CODE_C1 or
 * CWENUM_CODE_C2.
 *
 * # Safety
 * `field` must be a live handle; `out_json` must be valid.
 */
enum CwenumStatus cwenum_cwe_json(const struct CwenumField *field,
                                  uint32_t l,
                                  uint32_t code,
                                  uint32_t method,
                                  uint64_t budget,
                                  uint32_t workers,
                                  char **out_json);

/**
 * The monomial text rendering of one table (closed form unless `method`
 * is CWENUM_METHOD_BRUTE).
 *
 * # Safety
 * `field` must be a live handle; `out_text` must be valid.
 */
enum CwenumStatus cwenum_cwe_monomial_text(const struct CwenumField *field,
                                           uint32_t l,
                                           uint32_t code,
                                           uint32_t method,
                                           uint64_t budget,
                                           uint32_t workers,
                                           char **out_text);

/**
 * Cross-validates the closed form against the enumeration oracle for the
 * handle's field parameters and primitive polynomial. `out_matched`
 * receives 1 on a full match and 0 otherwise.
 *
 * # Safety
 * `field` must be a live handle; `out_matched` and `out_json` must be
 * valid.
 */
enum CwenumStatus cwenum_verify_json(const struct CwenumField *field,
                                     uint32_t l,
                                     uint32_t code,
                                     uint64_t budget,
                                     uint32_t workers,
                                     int32_t *out_matched,
                                     char **out_json);

/**
 * Frees a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must have been returned by this library and not be freed twice.
 */
void cwenum_string_free(char *s);

/**
 * Static name for a status code; never null, do not free.
 */
const char *cwenum_status_name(int32_t status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CWENUM_H */
