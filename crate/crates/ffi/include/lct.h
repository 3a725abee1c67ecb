#ifndef LCT_H
#define LCT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum LctStatus {
  LCT_STATUS_OK = 0,
  LCT_STATUS_NULL_POINTER = 1,
  LCT_STATUS_INVALID_ARGUMENT = 2,
  LCT_STATUS_DIMENSION_MISMATCH = 3,
  LCT_STATUS_NOT_SYMPLECTIC = 4,
  LCT_STATUS_DEGENERATE_KERNEL = 5,
  LCT_STATUS_GRID_TOO_NARROW = 6,
  LCT_STATUS_MATH_ERROR = 7,
  LCT_STATUS_PANIC = 8,
} LctStatus;

// Opaque handle to a validated block transform.
typedef struct LctBlock LctBlock;

// Residuals and class flags; every flag also requires `symplectic`.
typedef struct LctClassification {
  double symplectic_residual;
  bool symplectic;
  bool pseudo_unitary;
  double r_v;
  double r_u;
  bool isodispersion;
  double isodispersion_residual;
  bool lorentz_embedded;
  double lorentz_residual;
  bool fourier_like;
  double fourier_residual;
} LctClassification;

typedef struct LctComplex {
  double re;
  double im;
} LctComplex;

typedef struct LctMoments {
  double t_mean;
  double omega_mean;
  double big_a;
  double big_b;
} LctMoments;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next library call on the same thread.
const char *lct_last_error(void);

// Validates a row-major `2N x 2N` matrix, `N = n_plus + n_minus`.
//
// # Safety
// `matrix` must point to `4 N^2` doubles; `out` must be writable.
enum LctStatus lct_block_new(size_t n_plus,
                             size_t n_minus,
                             const double *matrix,
                             double tol,
                             struct LctBlock **out);

// # Safety
// `h` must be null or a handle not yet freed.
void lct_block_free(struct LctBlock *h);

// `N` of the handle, or 0 for null.
//
// # Safety
// `h` must be null or a live handle.
size_t lct_block_dim(const struct LctBlock *h);

// Copies the row-major matrix into `out`, which holds `len` doubles.
//
// # Safety
// `h` must be live; `out` must hold `len` doubles.
enum LctStatus lct_block_matrix(const struct LctBlock *h, double *out, size_t len);

// # Safety
// `h` must be live; `out` must be writable.
enum LctStatus lct_block_residual(const struct LctBlock *h, double *out);

// `second * first`: applies `first`, then `second`.
//
// # Safety
// Both handles must be live; `out` must be writable.
enum LctStatus lct_block_compose(const struct LctBlock *second,
                                 const struct LctBlock *first,
                                 struct LctBlock **out);

// # Safety
// `h` must be live; `out` must be writable.
enum LctStatus lct_block_inverse(const struct LctBlock *h, struct LctBlock **out);

// Maps the phase-space point `(p; x)`; all arrays have length `N`.
//
// # Safety
// `h` must be live; the four arrays must hold `N` doubles each.
enum LctStatus lct_block_apply(const struct LctBlock *h,
                               const double *p,
                               const double *x,
                               double *out_p,
                               double *out_x);

// Seeded random transform, `exp` of a random generator with entries in
// `[-scale, scale]`; restricted to the isodispersion subgroup if requested.
//
// # Safety
// `out` must be writable.
enum LctStatus lct_random(size_t n_plus,
                          size_t n_minus,
                          uint64_t seed,
                          double scale,
                          bool isodispersion,
                          struct LctBlock **out);

// # Safety
// `matrix` must hold `4 N^2` doubles; `out` must be writable.
enum LctStatus lct_symplectic_residual(size_t n_plus,
                                       size_t n_minus,
                                       const double *matrix,
                                       double *out);

// Classifies an unvalidated matrix.
//
// # Safety
// `matrix` must hold `4 N^2` doubles; `out` must be writable.
enum LctStatus lct_classify(size_t n_plus,
                            size_t n_minus,
                            const double *matrix,
                            double tol,
                            struct LctClassification *out);

// Applies the 1-D transform `[[a, b], [c, d]]` by quadrature. The input
// lives on `in_t0 + k in_dt`; the result is written to `out_len` samples
// on `out_t0 + k out_dt`.
//
// # Safety
// `input` must hold `in_len` values and `out` must hold `out_len`.
enum LctStatus lct_transform1d_apply(double a,
                                     double b,
                                     double c,
                                     double d,
                                     double in_t0,
                                     double in_dt,
                                     const struct LctComplex *input,
                                     size_t in_len,
                                     double out_t0,
                                     double out_dt,
                                     struct LctComplex *out,
                                     size_t out_len);

// Samples the normalised Hermite-Gaussian state of order `n` with
// frequency standard deviation `b_dev`.
//
// # Safety
// `out` must hold `len` values.
enum LctStatus lct_hermite_state(uint32_t n,
                                 double t_mean,
                                 double omega_mean,
                                 double b_dev,
                                 double t0,
                                 double dt,
                                 struct LctComplex *out,
                                 size_t len);

// # Safety
// `samples` must hold `len` values; `out` must be writable.
enum LctStatus lct_signal_moments(double t0,
                                  double dt,
                                  const struct LctComplex *samples,
                                  size_t len,
                                  struct LctMoments *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCT_H */
