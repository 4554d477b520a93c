#ifndef CIRCLIFT_H
#define CIRCLIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum CircliftStatus {
  CIRCLIFT_STATUS_OK = 0,
  CIRCLIFT_STATUS_NULL_POINTER = 1,
  CIRCLIFT_STATUS_INVALID_ARGUMENT = 2,
  CIRCLIFT_STATUS_PARSE = 3,
  CIRCLIFT_STATUS_UNSUPPORTED = 4,
  CIRCLIFT_STATUS_CONFIG = 5,
  CIRCLIFT_STATUS_NOT_SELF_DUAL = 6,
  CIRCLIFT_STATUS_IO = 7,
  CIRCLIFT_STATUS_CHECKPOINT = 8,
  CIRCLIFT_STATUS_INTERRUPTED = 9,
  CIRCLIFT_STATUS_UTF8 = 10,
  CIRCLIFT_STATUS_OUT_OF_RANGE = 11,
  CIRCLIFT_STATUS_PANIC = 12,
} CircliftStatus;

/**
 * Finished search: best distance and the witness records.
 */
typedef struct CircliftSearch CircliftSearch;

/**
 * A double or bordered code together with its ring.
 */
typedef struct CircliftSpec CircliftSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *circlift_last_error(void);

/**
 * Builds a code from a ring name (`"z4"`), a family name
 * (`"double-nega"`, `"double-circ"`, `"bordered-circ"`), comma separated
 * core digits and, for bordered families only, the border `"beta,gamma,delta"`.
 *
 * # Safety
 * String arguments must be NUL terminated; `border` may be NULL.
 */
enum CircliftStatus circlift_spec_new(const char *ring,
                                      const char *family,
                                      const char *vector,
                                      const char *border,
                                      struct CircliftSpec **out_spec);

/**
 * # Safety
 * `spec` must come from [`circlift_spec_new`] and not be used afterwards.
 */
void circlift_spec_free(struct CircliftSpec *spec);

/**
 * Code length `n`.
 *
 * # Safety
 * `spec` must be a live handle; `n` must be writable.
 */
enum CircliftStatus circlift_spec_length(const struct CircliftSpec *spec, size_t *n);

/**
 * # Safety
 * `spec` must be a live handle; `result` must be writable.
 */
enum CircliftStatus circlift_spec_is_self_dual(const struct CircliftSpec *spec, bool *result);

/**
 * Exact minimum Lee distance.
 *
 * # Safety
 * `spec` must be a live handle; `d` must be writable.
 */
enum CircliftStatus circlift_spec_min_lee_distance(const struct CircliftSpec *spec, uint32_t *d);

/**
 * Canonical representative as `"digits"` or `"digits border=b,c,d"`.
 *
 * # Safety
 * `spec` must be a live handle; the string written to `form` is freed with
 * [`circlift_string_free`].
 */
enum CircliftStatus circlift_spec_canonical_form(const struct CircliftSpec *spec, char **form);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void circlift_string_free(char *s);

/**
 * Re-checks one results line. A well-formed but wrong record gives
 * `CIRCLIFT_STATUS_OK` with `*valid = false`.
 *
 * # Safety
 * `line` must be NUL terminated; `valid` must be writable.
 */
enum CircliftStatus circlift_verify_record(const char *line, bool *valid);

/**
 * Runs a search to completion. `threads = 0` uses all cores.
 *
 * # Safety
 * String arguments must be NUL terminated; the handle written to `result`
 * is freed with [`circlift_search_free`].
 */
enum CircliftStatus circlift_search_run(const char *ring,
                                        size_t length,
                                        const char *family,
                                        size_t threads,
                                        bool no_pruning,
                                        struct CircliftSearch **result);

/**
 * # Safety
 * `search` must come from [`circlift_search_run`] and not be used afterwards.
 */
void circlift_search_free(struct CircliftSearch *search);

/**
 * Best minimum Lee distance found; 0 if the family has no self-dual lifts.
 *
 * # Safety
 * `search` must be a live handle; `d` must be writable.
 */
enum CircliftStatus circlift_search_best_distance(const struct CircliftSearch *search, uint32_t *d);

/**
 * # Safety
 * `search` must be a live handle; `count` must be writable.
 */
enum CircliftStatus circlift_search_record_count(const struct CircliftSearch *search,
                                                 size_t *count);

/**
 * Record `index` in the results-file line format.
 *
 * # Safety
 * `search` must be a live handle; the string written to `line` is freed
 * with [`circlift_string_free`].
 */
enum CircliftStatus circlift_search_record(const struct CircliftSearch *search,
                                           size_t index,
                                           char **line);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCLIFT_H */
