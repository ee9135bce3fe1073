#ifndef OTX_H
#define OTX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OtxStatus {
  OTX_STATUS_OK = 0,
  OTX_STATUS_NULL_POINTER = 1,
  OTX_STATUS_INVALID_UTF8 = 2,
  OTX_STATUS_PARSE = 3,
  OTX_STATUS_NOT_A_PERMUTATION = 4,
  OTX_STATUS_NOT_CYCLIC = 5,
  OTX_STATUS_PERIOD_TOO_SMALL = 6,
  OTX_STATUS_NON_CONVERGENT = 7,
  OTX_STATUS_NOT_GREEN = 8,
  OTX_STATUS_REJECTED = 9,
  OTX_STATUS_INVALID_ID = 10,
  OTX_STATUS_INVALID_ARGUMENT = 11,
  OTX_STATUS_LIMIT_EXCEEDED = 12,
  OTX_STATUS_INTERNAL = 13,
} OtxStatus;

typedef enum OtxVerdict {
  OTX_VERDICT_PASSED_BOUNDED = 0,
  OTX_VERDICT_REFUTED_NECESSARY = 1,
  OTX_VERDICT_REFUTED_WITNESS = 2,
} OtxVerdict;

/**
 * Opaque pattern handle.
 */
typedef struct OtxPattern OtxPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *otx_last_error(void);

/**
 * Parses a permutation such as `"2 3 1"` or `"[2,3,1]"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OtxStatus otx_pattern_parse(const char *text, struct OtxPattern **out);

/**
 * Builds a pattern from `len` 1-based images.
 *
 * # Safety
 * `images` must point to `len` readable values and `out` must be valid.
 */
enum OtxStatus otx_pattern_from_images(const size_t *images, size_t len, struct OtxPattern **out);

/**
 * # Safety
 * `pattern` must be null or a handle not yet freed.
 */
void otx_pattern_free(struct OtxPattern *pattern);

/**
 * Period of the pattern, or 0 for a null handle.
 *
 * # Safety
 * `pattern` must be null or a live handle.
 */
size_t otx_pattern_period(const struct OtxPattern *pattern);

/**
 * Copies the 1-based images into `buf`, which must hold the period.
 *
 * # Safety
 * `pattern` must be a live handle and `buf` must have room for `cap` values.
 */
enum OtxStatus otx_pattern_images(const struct OtxPattern *pattern, size_t *buf, size_t cap);

/**
 * Raw over-rotation pair `(p, q)`.
 *
 * # Safety
 * `pattern` must be a live handle; `p` and `q` must be valid pointers.
 */
enum OtxStatus otx_pattern_over_rotation(const struct OtxPattern *pattern,
                                         uint64_t *p,
                                         uint64_t *q);

/**
 * # Safety
 * `pattern` must be a live handle and `out` a valid pointer.
 */
enum OtxStatus otx_pattern_modality(const struct OtxPattern *pattern, size_t *out);

/**
 * # Safety
 * `pattern` must be a live handle and `out` a valid pointer.
 */
enum OtxStatus otx_pattern_is_convergent(const struct OtxPattern *pattern, bool *out);

/**
 * # Safety
 * `pattern` must be a live handle and `out` a valid pointer.
 */
enum OtxStatus otx_pattern_is_green(const struct OtxPattern *pattern, bool *out);

/**
 * Sharkovsky comparison: 1 if `m` comes first, -1 if `n` does, 0 if equal.
 * Zero arguments are rejected with -2.
 */
int32_t otx_sharkovsky_cmp(uint64_t m, uint64_t n);

/**
 * Bounded over-twist check up to periods `depth * q`. `json` may be null;
 * otherwise it receives the verdict as JSON.
 *
 * # Safety
 * `pattern` must be a live handle, `verdict` valid, `json` null or valid.
 */
enum OtxStatus otx_verify_overtwist(const struct OtxPattern *pattern,
                                    size_t depth,
                                    enum OtxVerdict *verdict,
                                    char **json);

/**
 * Full analysis report as JSON.
 *
 * # Safety
 * `pattern` must be a live handle and `out` a valid pointer.
 */
enum OtxStatus otx_analyze_json(const struct OtxPattern *pattern, char **out);

/**
 * Interval exchange conjugate to the pattern, as JSON. `canonical` selects
 * the canonical blocks (green convergent patterns only) over the greedy
 * ones.
 *
 * # Safety
 * `pattern` must be a live handle and `out` a valid pointer.
 */
enum OtxStatus otx_iet_json(const struct OtxPattern *pattern, bool canonical, char **out);

/**
 * The catalog pattern Γ_{r,p/q}.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum OtxStatus otx_catalog_gamma(size_t p, size_t q, size_t r, struct OtxPattern **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void otx_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OTX_H */
