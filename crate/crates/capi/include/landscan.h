#ifndef LANDSCAN_H
#define LANDSCAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every C-ABI call.
 */
typedef enum LsStatus {
  Ok = 0,
  /**
   * Null pointer, bad UTF-8, or an out-of-range argument.
   */
  InvalidArgument = 1,
  /**
   * Configuration rejected by validation.
   */
  InvalidConfig = 2,
  /**
   * Numerical failure (no convergence, not positive definite, ...).
   */
  NumericalFailure = 3,
  /**
   * Output buffer too small; required size is written where documented.
   */
  BufferTooSmall = 4,
} LsStatus;

/**
 * Opaque landscape scan result.
 */
typedef struct LsScan LsScan;

/**
 * Opaque assembled collocation system.
 */
typedef struct LsSystem LsSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a harmonic-potential system. `out` receives an owned handle.
 */
enum LsStatus ls_system_new_harmonic(uintptr_t n_basis,
                                     uintptr_t n_grid,
                                     double span_lo,
                                     double span_hi,
                                     double width_factor,
                                     struct LsSystem **out);

/**
 * Build a Morse-potential system with well depth `d_e` and range `a`.
 */
enum LsStatus ls_system_new_morse(uintptr_t n_basis,
                                  uintptr_t n_grid,
                                  double span_lo,
                                  double span_hi,
                                  double width_factor,
                                  double d_e,
                                  double a,
                                  struct LsSystem **out);

/**
 * Build a system from a tabulated-potential CSV path (two columns `q,V`).
 *
 * # Safety
 * `path` must be a NUL-terminated UTF-8 string.
 */
enum LsStatus ls_system_new_tabulated(uintptr_t n_basis,
                                      uintptr_t n_grid,
                                      double span_lo,
                                      double span_hi,
                                      double width_factor,
                                      const char *path,
                                      struct LsSystem **out);

/**
 * Release a system handle. Null is a no-op.
 */
void ls_system_free(struct LsSystem *sys);

/**
 * Condition number of the Gram matrix of the basis.
 */
enum LsStatus ls_system_gram_kappa(const struct LsSystem *sys, double *out);

/**
 * Matrix-inverse solve. Writes up to `cap` energies to `energies`, the
 * count actually available to `n_energies`, and the Gram condition number
 * to `kappa`. Returns `BufferTooSmall` (with `n_energies` set) when `cap`
 * cannot hold all energies.
 */
enum LsStatus ls_inverse_solve(const struct LsSystem *sys,
                               double *energies,
                               uintptr_t cap,
                               uintptr_t *n_energies,
                               double *kappa);

/**
 * Classical landscape scan over `[alpha_lo, alpha_hi]` with `k` grid
 * points. `out` receives an owned scan handle.
 */
enum LsStatus ls_scan_run(const struct LsSystem *sys,
                          double alpha_lo,
                          double alpha_hi,
                          uintptr_t k,
                          struct LsScan **out);

/**
 * Release a scan handle. Null is a no-op.
 */
void ls_scan_free(struct LsScan *scan);

/**
 * Number of grid points in a scan.
 */
uintptr_t ls_scan_len(const struct LsScan *scan);

/**
 * Read one scan point: alpha, raw sigma_min, detrended sigma_min.
 */
enum LsStatus ls_scan_point(const struct LsScan *scan,
                            uintptr_t index,
                            double *alpha,
                            double *sigma,
                            double *sigma_detrended);

/**
 * Detect dips below `threshold` (pass `threshold <= 0` for the default)
 * and write their positions. `n_dips` receives the total count; returns
 * `BufferTooSmall` when `cap` cannot hold them all.
 */
enum LsStatus ls_scan_dips(const struct LsScan *scan,
                           double threshold,
                           double *positions,
                           uintptr_t cap,
                           uintptr_t *n_dips);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LANDSCAN_H */
