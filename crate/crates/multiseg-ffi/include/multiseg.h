#ifndef MULTISEG_H
#define MULTISEG_H

#pragma once

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MsStatus {
  MS_STATUS_OK = 0,
  MS_STATUS_NULL_POINTER = 1,
  MS_STATUS_INVALID_UTF8 = 2,
  MS_STATUS_PARSE_ERROR = 3,
  MS_STATUS_NOT_ADMISSIBLE = 4,
  MS_STATUS_PRECONDITION_FAILED = 5,
  MS_STATUS_PANIC = 6,
} MsStatus;

/**
 * Opaque multisegment handle.
 */
typedef struct MsMultiseg MsMultiseg;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `text` into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum MsStatus ms_multiseg_parse(const char *text, struct MsMultiseg **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void ms_multiseg_free(struct MsMultiseg *m);

/**
 * Canonical text of `m` in `*out`; release it with `ms_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum MsStatus ms_multiseg_format(const struct MsMultiseg *m, char **out);

/**
 * Number of entries counted with multiplicity; 0 for null.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t ms_multiseg_len(const struct MsMultiseg *m);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ms_string_free(char *s);

/**
 * `r(n, h)` as a new handle.
 *
 * # Safety
 * `n` and `h` must be live handles and `out` writable.
 */
enum MsStatus ms_remove(const struct MsMultiseg *n,
                        const struct MsMultiseg *h,
                        struct MsMultiseg **out);

/**
 * The dual removal `r^d(n, h)` as a new handle.
 *
 * # Safety
 * `n` and `h` must be live handles and `out` writable.
 */
enum MsStatus ms_dual_remove(const struct MsMultiseg *n,
                             const struct MsMultiseg *h,
                             struct MsMultiseg **out);

/**
 * Whether `n` is minimal to `h`.
 *
 * # Safety
 * `n` and `h` must be live handles and `out` writable.
 */
enum MsStatus ms_is_minimal(const struct MsMultiseg *n, const struct MsMultiseg *h, bool *out);

/**
 * The least `m` with `r(m, h) = r(n, h)`, as a new handle.
 *
 * # Safety
 * `n` and `h` must be live handles and `out` writable.
 */
enum MsStatus ms_minimal_element(const struct MsMultiseg *n,
                                 const struct MsMultiseg *h,
                                 struct MsMultiseg **out);

/**
 * `ε_[start,end](h)`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum MsStatus ms_epsilon(const struct MsMultiseg *h, int32_t start, int32_t end, size_t *out);

/**
 * The (dagger) property of `([d_start,d_end], [dp_start,dp_end], h)`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum MsStatus ms_dagger(int32_t d_start,
                        int32_t d_end,
                        int32_t dp_start,
                        int32_t dp_end,
                        const struct MsMultiseg *h,
                        bool *out);

/**
 * Essentially Speh factors of `h` as text `"(t,d,m),..."` in `*out`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum MsStatus ms_realize(const struct MsMultiseg *h, char **out);

/**
 * Message of the last failure on this thread, or null after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *ms_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTISEG_H */
