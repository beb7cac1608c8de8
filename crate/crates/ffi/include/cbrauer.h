#ifndef CBRAUER_H
#define CBRAUER_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Root system type of a Lie-side datum.
 */
typedef enum CbrRootType {
  CBR_ROOT_TYPE_B = 0,
  CBR_ROOT_TYPE_C = 1,
  CBR_ROOT_TYPE_D = 2,
} CbrRootType;

/**
 * Result of every fallible call.
 */
typedef enum CbrStatus {
  CBR_STATUS_OK = 0,
  CBR_STATUS_NULL_POINTER = 1,
  CBR_STATUS_INVALID_INPUT = 2,
  CBR_STATUS_BUDGET_EXCEEDED = 3,
  CBR_STATUS_VERIFICATION_FAILED = 4,
  CBR_STATUS_UNSUPPORTED = 5,
  CBR_STATUS_TRUNCATION_OVERFLOW = 6,
  CBR_STATUS_OMEGA_EXHAUSTED = 7,
  CBR_STATUS_OVERFLOW = 8,
  CBR_STATUS_PANIC = 9,
} CbrStatus;

/**
 * A cyclotomic Brauer algebra B_{a,r}(u) with admissible ω.
 */
typedef struct CbrAlgebra CbrAlgebra;

/**
 * A Lie-side datum (Φ, n, p, i, c).
 */
typedef struct CbrDatum CbrDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *cbr_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by this library.
 */
void cbr_string_free(char *s);

/**
 * Creates B_{a,r}(u) from `a` parameters u_j = u_num[j] / u_den[j]. Fails
 * with [`CbrStatus::BudgetExceeded`] when the dimension exceeds `budget`.
 *
 * # Safety
 * `u_num` and `u_den` must point to `a` values; `out` must be writable.
 */
enum CbrStatus cbr_algebra_new(size_t a,
                               size_t r,
                               const int64_t *u_num,
                               const int64_t *u_den,
                               size_t budget,
                               struct CbrAlgebra **out);

/**
 * Releases an algebra handle.
 *
 * # Safety
 * `h` must be NULL or a handle from [`cbr_algebra_new`], not used afterwards.
 */
void cbr_algebra_free(struct CbrAlgebra *h);

/**
 * Dimension of the algebra (the size of its normal-form basis).
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum CbrStatus cbr_algebra_dimension(const struct CbrAlgebra *h, size_t *out);

/**
 * ω_k of the admissible sequence, as a reduced fraction.
 *
 * # Safety
 * `h` must be a live handle; `num` and `den` writable.
 */
enum CbrStatus cbr_algebra_omega(const struct CbrAlgebra *h, size_t k, int64_t *num, int64_t *den);

/**
 * The decomposition matrix as a JSON document (release with [`cbr_string_free`]).
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum CbrStatus cbr_algebra_decomposition_json(const struct CbrAlgebra *h, char **out);

/**
 * Creates a Lie-side datum; `p` holds the k cut points and `c` the k shifts.
 *
 * # Safety
 * `p`, `c_num`, `c_den` must point to `k` values; `out` must be writable.
 */
enum CbrStatus cbr_datum_new(enum CbrRootType root_type,
                             size_t n,
                             const size_t *p,
                             size_t k,
                             size_t i,
                             const int64_t *c_num,
                             const int64_t *c_den,
                             struct CbrDatum **out);

/**
 * Releases a datum handle.
 *
 * # Safety
 * `h` must be NULL or a handle from [`cbr_datum_new`], not used afterwards.
 */
void cbr_datum_free(struct CbrDatum *h);

/**
 * The level a of the datum (the number of parameters u).
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum CbrStatus cbr_datum_level(const struct CbrDatum *h, size_t *out);

/**
 * The parameter u_j (0-based j < level) attached to the datum.
 *
 * # Safety
 * `h` must be a live handle; `num` and `den` writable.
 */
enum CbrStatus cbr_datum_u(const struct CbrDatum *h, size_t j, int64_t *num, int64_t *den);

/**
 * ω_0 of the datum's parameters (equal to ε N).
 *
 * # Safety
 * `h` must be a live handle; `num` and `den` writable.
 */
enum CbrStatus cbr_datum_omega0(const struct CbrDatum *h, int64_t *num, int64_t *den);

/**
 * Builds the algebra B_{a,r}(u) whose parameters come from the datum,
 * subject to the same dimension budget as [`cbr_algebra_new`].
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum CbrStatus cbr_datum_algebra(const struct CbrDatum *h,
                                 size_t r,
                                 size_t budget,
                                 struct CbrAlgebra **out);

/**
 * Saturation check for λ_{I,c} + 𝒦_j, j ≤ r. Writes 1 when saturated.
 *
 * # Safety
 * `h` must be a live handle and `saturated` writable.
 */
enum CbrStatus cbr_datum_saturation(const struct CbrDatum *h,
                                    size_t r,
                                    size_t budget,
                                    int32_t *saturated);

/**
 * Micro-scale verification of the explicit singular vectors for every
 * label. Writes 1 when every check passes.
 *
 * # Safety
 * `h` must be a live handle and `passed` writable.
 */
enum CbrStatus cbr_datum_verify_singular(const struct CbrDatum *h, size_t r, int32_t *passed);

/**
 * Version string of the library (static; do not free).
 */
const char *cbr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CBRAUER_H */
