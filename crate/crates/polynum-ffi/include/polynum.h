#ifndef POLYNUM_H
#define POLYNUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Non-zero means the out-parameters are
 * untouched; polynum_last_error() carries the detail.
 */
typedef enum {
  POLYNUM_STATUS_OK = 0,
  POLYNUM_STATUS_NULL_ARGUMENT = 1,
  POLYNUM_STATUS_PARSE_ERROR = 2,
  POLYNUM_STATUS_RANGE_ERROR = 3,
  POLYNUM_STATUS_OVERFLOW = 4,
  POLYNUM_STATUS_BUDGET_EXCEEDED = 5,
  POLYNUM_STATUS_INTERNAL_ERROR = 6,
} PolynumStatus;

/**
 * Opaque handle: a polytope together with its pointed triangulation
 * under the default (index) functional.
 */
typedef struct PolynumPolytope PolynumPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a polytope expression (e.g. "cube:3", "pyr(cross:2)",
 * "prod(simplex:1,simplex:2)") and builds the polytope. On success
 * stores a heap handle in *out; free it with polynum_polytope_free().
 *
 * # Safety
 * `expr` must be a NUL-terminated string and `out` a valid pointer.
 */
PolynumStatus polynum_polytope_new(const char *expr, PolynumPolytope **out);

/**
 * Releases a handle. Passing NULL is a no-op.
 *
 * # Safety
 * `p` must be NULL or a pointer from polynum_polytope_new() that has
 * not been freed yet.
 */
void polynum_polytope_free(PolynumPolytope *p);

/**
 * Dimension of the polytope, or -1 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
int32_t polynum_polytope_dim(const PolynumPolytope *p);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
uint64_t polynum_polytope_vertex_count(const PolynumPolytope *p);

/**
 * Number of nonempty faces including the polytope itself, or 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
uint64_t polynum_polytope_face_count(const PolynumPolytope *p);

/**
 * Writes the polytope number P(n) (or the interior variant) to *out.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
PolynumStatus polynum_number(const PolynumPolytope *p, uint32_t n, bool interior, int64_t *out);

/**
 * Fills out[0..=n_max] with P(0..=n_max) (or the interior variant).
 * `out` must have room for n_max + 1 values.
 *
 * # Safety
 * `p` must be a live handle and `out` must point to at least
 * n_max + 1 writable i64 slots.
 */
PolynumStatus polynum_sequence(const PolynumPolytope *p,
                               uint32_t n_max,
                               bool interior,
                               int64_t *out);

/**
 * Extracts a decomposition ("1", "2", "3-1", "3-2", or "4") as parallel
 * term arrays: coeffs[i] * alpha^dims[i](n - shifts[i]) summed over i
 * equals P(n) for n >= 1. Always stores the term count in *out_len;
 * writes the arrays only when `cap` is large enough (dims and shifts
 * may each be NULL to skip). Call with cap = 0 to query the length.
 *
 * # Safety
 * `p` must be a live handle, `theorem` a NUL-terminated string,
 * `out_len` a valid pointer, and the non-NULL arrays must have `cap`
 * writable slots each.
 */
PolynumStatus polynum_decompose(const PolynumPolytope *p,
                                const char *theorem,
                                int64_t *coeffs,
                                uint32_t *dims,
                                uint32_t *shifts,
                                size_t cap,
                                size_t *out_len);

/**
 * Static name for a status code.
 */
const char *polynum_status_name(PolynumStatus status);

/**
 * Copies the calling thread's last error message into `buf` (truncated
 * to cap - 1 bytes, always NUL-terminated when cap > 0) and returns the
 * full message length in bytes. Call with cap = 0 to query the length.
 *
 * # Safety
 * `buf` must be NULL only when cap is 0, otherwise it must have `cap`
 * writable bytes.
 */
size_t polynum_last_error(char *buf, size_t cap);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* POLYNUM_H */
