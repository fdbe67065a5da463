#ifndef MDCYCLE_H
#define MDCYCLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MdcStatus {
  MDC_STATUS_OK = 0,
  /**
   * Search exhausted or verification failed.
   */
  MDC_STATUS_NOT_FOUND = 1,
  MDC_STATUS_INVALID_PARAMETERS = 2,
  MDC_STATUS_PARSE_ERROR = 3,
  MDC_STATUS_NULL_POINTER = 4,
  MDC_STATUS_PANIC = 5,
} MdcStatus;

/**
 * Opaque certificate handle. Free with [`mdc_certificate_free`].
 */
typedef struct MdcCertificate MdcCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Solve the theorem-mt system for genus `g` and `n` factors. `m_override`
 * of 0 starts the sweep at the smallest admissible `m`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum MdcStatus mdc_certify_theorem_mt(uint32_t g,
                                      uint32_t n,
                                      uint32_t m_override,
                                      struct MdcCertificate **out);

/**
 * Sweep `m = n+1..=m_max` for a prop-p7 certificate. Returns
 * `MDC_STATUS_NOT_FOUND` when the sweep is exhausted.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum MdcStatus mdc_certify_prop_p7(uint32_t g,
                                   uint32_t n,
                                   uint32_t i,
                                   uint32_t m_max,
                                   struct MdcCertificate **out);

/**
 * Parse a certificate from NUL-terminated UTF-8 JSON.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` as above.
 */
enum MdcStatus mdc_certificate_from_json(const char *json, struct MdcCertificate **out);

/**
 * Serialize to JSON. The returned string is owned by the caller and must be
 * released with [`mdc_string_free`]. Null on a null handle.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
char *mdc_certificate_to_json(const struct MdcCertificate *cert);

/**
 * Re-check every residual and functional value. `MDC_STATUS_NOT_FOUND` on
 * failure, with the violated check in [`mdc_last_error`].
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
enum MdcStatus mdc_certificate_verify(const struct MdcCertificate *cert);

/**
 * Number of curve factors `m` of the certified cycle; 0 on a null handle.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
uint32_t mdc_certificate_m(const struct MdcCertificate *cert);

/**
 * # Safety
 * `cert` must be null or a handle not yet freed.
 */
void mdc_certificate_free(struct MdcCertificate *cert);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void mdc_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *mdc_last_error(void);

/**
 * Static version string.
 */
const char *mdc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MDCYCLE_H */
