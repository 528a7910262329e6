/* C interface of the mlfun Mittag-Leffler library. */

#ifndef MLFUN_H
#define MLFUN_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum MlfunStatus {
  MlfunStatus_Ok = 0,
  /**
   * A result was produced but its error estimate exceeds the target.
   */
  MlfunStatus_AccuracyDegraded = 1,
  MlfunStatus_NullPointer = 2,
  MlfunStatus_InvalidArgument = 3,
  MlfunStatus_DimensionError = 4,
  MlfunStatus_ComputeError = 5,
} MlfunStatus;

/**
 * Method tags of scalar evaluations, mirroring the library enum.
 */
typedef enum MlfunMethod {
  MlfunMethod_Series = 0,
  MlfunMethod_LaplaceInversion = 1,
  MlfunMethod_PrabhakarSf = 2,
  MlfunMethod_DjrbashianSf = 3,
  MlfunMethod_Balanced = 4,
  MlfunMethod_Exact0 = 5,
} MlfunMethod;

/**
 * Opaque matrix handle holding the argument and its Schur factorization.
 */
typedef struct MlfunMatrix MlfunMatrix;

/**
 * Result of a scalar derivative evaluation.
 */
typedef struct MlfunDerivResult {
  double value_re;
  double value_im;
  double err_estimate;
  size_t terms_or_nodes;
  enum MlfunMethod method;
} MlfunDerivResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Evaluate the k-th derivative of E_{alpha,beta} at z = z_re + i z_im.
 *
 * `tau <= 0` selects the default target accuracy. Returns `Ok` or
 * `AccuracyDegraded` with the result written to `out`; other codes leave
 * `out` untouched.
 *
 * # Safety
 * `out` must point to a writable `MlfunDerivResult`.
 */
enum MlfunStatus mlfun_eval_deriv(double alpha,
                                  double beta,
                                  double z_re,
                                  double z_im,
                                  size_t k,
                                  double tau,
                                  struct MlfunDerivResult *out);

/**
 * Create a matrix handle from row-major data. `im` may be null for a real
 * matrix. Returns null on invalid input.
 *
 * # Safety
 * `re` (and `im` when non-null) must point to `n*n` readable doubles.
 */
struct MlfunMatrix *mlfun_matrix_create(size_t n, const double *re, const double *im);

/**
 * Release a matrix handle.
 *
 * # Safety
 * `handle` must come from `mlfun_matrix_create` and not be used afterwards.
 */
void mlfun_matrix_free(struct MlfunMatrix *handle);

/**
 * Dimension of the matrix held by a handle (0 for null).
 *
 * # Safety
 * `handle` must be a live handle or null.
 */
size_t mlfun_matrix_dim(const struct MlfunMatrix *handle);

/**
 * Evaluate E_{alpha,beta}(A) into row-major buffers `out_re`/`out_im`
 * (each of length n*n; `out_im` may be null to discard imaginary parts).
 * `max_order` (optional) receives the highest Taylor order consumed.
 *
 * # Safety
 * Buffers must be writable with n*n doubles; `handle` must be live.
 */
enum MlfunStatus mlfun_matrix_ml(struct MlfunMatrix *handle,
                                 double alpha,
                                 double beta,
                                 double tau,
                                 double delta,
                                 double *out_re,
                                 double *out_im,
                                 size_t *max_order);

/**
 * Frobenius-norm condition numbers of E_{alpha,beta} at the handle's matrix.
 *
 * # Safety
 * `kappa_abs`/`kappa_rel` must be writable; `handle` must be live.
 */
enum MlfunStatus mlfun_cond_estimate(const struct MlfunMatrix *handle,
                                     double alpha,
                                     double beta,
                                     size_t probes,
                                     double *kappa_abs,
                                     double *kappa_rel);

/**
 * Version string of the library (static storage, do not free).
 */
const char *mlfun_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MLFUN_H */
