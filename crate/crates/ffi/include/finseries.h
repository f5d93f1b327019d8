#ifndef FINSERIES_H
#define FINSERIES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_UTF8 = 2,
  FS_STATUS_INVALID_ARGUMENT = 3,
  FS_STATUS_MISMATCH = 4,
  FS_STATUS_CHECK_FAILED = 5,
  FS_STATUS_PANIC = 6,
} FsStatus;

/**
 * Opaque series handle.
 */
typedef struct FsSeries FsSeries;

typedef struct FsClassification {
  bool artinian;
  bool noetherian;
  bool narrow;
  bool finite;
  bool admitted;
} FsClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Evaluates a series expression over `monoid` (a carrier name such as
 * `"nat"`) and `ring` (`"int"`, `"rat"`, `"mod:N"`, `"mat2"`).
 * `bound` tabulates `moebius` and must be at least 1 when it is used.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum FsStatus fs_series_from_expr(const char *monoid,
                                  const char *ring,
                                  const char *expr,
                                  int64_t bound,
                                  struct FsSeries **out);

/**
 * Builds a series from its JSON description.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum FsStatus fs_series_from_json(const char *json, struct FsSeries **out);

/**
 * `*out = a + b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum FsStatus fs_series_add(const struct FsSeries *a,
                            const struct FsSeries *b,
                            struct FsSeries **out);

/**
 * `*out = a · b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum FsStatus fs_series_mul(const struct FsSeries *a,
                            const struct FsSeries *b,
                            struct FsSeries **out);

/**
 * `*out = -a`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum FsStatus fs_series_neg(const struct FsSeries *a, struct FsSeries **out);

/**
 * The coefficient at `element` (textual form, e.g. `"3"`, `"1/2"`, `"xy"`).
 *
 * # Safety
 * `s` must be a live handle; `element` NUL-terminated; `out` writable.
 */
enum FsStatus fs_series_coeff(const struct FsSeries *s, const char *element, char **out);

/**
 * Renders the terms of `s` inside the window `[min, max]` (or `≤ max` when
 * `has_min` is false).
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum FsStatus fs_series_render(const struct FsSeries *s,
                               bool has_min,
                               int64_t min,
                               int64_t max,
                               char **out);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void fs_series_free(struct FsSeries *s);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void fs_string_free(char *s);

/**
 * Classifies a descriptor (JSON) on a carrier (name or JSON object).
 *
 * # Safety
 * Strings must be NUL-terminated; `out` must be writable.
 */
enum FsStatus fs_classify(const char *carrier,
                          const char *descriptor_json,
                          struct FsClassification *out);

/**
 * Runs the finite category checks on carriers of size ≤ `max_size` (at
 * most 3). Returns `CheckFailed` if any universal property fails.
 *
 * # Safety
 * `verified` must be null or writable.
 */
enum FsStatus fs_category_check(size_t max_size, uint64_t seed, bool *verified);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *fs_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINSERIES_H */
