#ifndef BSDEFECT_H
#define BSDEFECT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BsdStatus {
  BSD_STATUS_OK = 0,
  BSD_STATUS_NULL_POINTER = 1,
  BSD_STATUS_INVALID_UTF8 = 2,
  BSD_STATUS_INVALID_ARGUMENT = 3,
  BSD_STATUS_NON_GKM_INPUT = 4,
  BSD_STATUS_NOT_REDUCED = 5,
  BSD_STATUS_NOT_APPLICABLE = 6,
  BSD_STATUS_INTERNAL = 7,
  BSD_STATUS_IO = 8,
  BSD_STATUS_PANIC = 9,
} BsdStatus;

/**
 * Opaque handle: Cartan datum, Weyl group and field.
 */
typedef struct BsdContext BsdContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a context for Cartan type `type_label` (e.g. "A") of rank `rank`
 * over the field of characteristic `characteristic` (0 or an odd prime).
 *
 * # Safety
 * `type_label` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BsdStatus bsd_context_new(const char *type_label,
                               uint32_t rank,
                               bool affine,
                               uint64_t characteristic,
                               struct BsdContext **out);

/**
 * # Safety
 * `ctx` must come from `bsd_context_new` and not be used afterwards.
 */
void bsd_context_free(struct BsdContext *ctx);

/**
 * Runs a CLI command (`"grk"`, `"defect"`, `"tree"`, ...) and writes its
 * JSON result. `word` and `x` may be null; `n < 0` means unset.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BsdStatus bsd_run(const struct BsdContext *ctx,
                       const char *command,
                       const char *word,
                       const char *x,
                       int64_t n,
                       char **out);

/**
 * Graded rank of `B(s)^x` as a Laurent polynomial JSON object.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BsdStatus bsd_graded_rank(const struct BsdContext *ctx,
                               const char *word,
                               const char *x,
                               char **out);

/**
 * Defect at `x` of `B(s)` as a Laurent polynomial JSON object.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BsdStatus bsd_defect(const struct BsdContext *ctx,
                          const char *word,
                          const char *x,
                          char **out);

/**
 * Decomposition of `B(s)` as a JSON array of `{"z", "r", "mult"}`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum BsdStatus bsd_decompose(const struct BsdContext *ctx,
                             const char *word,
                             bool allow_nonreduced,
                             char **out);

/**
 * Number of `n`-reachable elements of the (finite) Weyl group.
 *
 * # Safety
 * `ctx` and `out` must be valid pointers.
 */
enum BsdStatus bsd_census(const struct BsdContext *ctx, uint64_t n, uint64_t *out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bsd_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *bsd_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BSDEFECT_H */
