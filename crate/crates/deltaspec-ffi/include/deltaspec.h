/* C interface of the deltaspec spectral library. */

#ifndef DELTASPEC_H
#define DELTASPEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every C-ABI call.
 */
typedef enum DsStatus {
  DS_STATUS_OK = 0,
  DS_STATUS_NULL_POINTER = 1,
  DS_STATUS_INVALID_ARGUMENT = 2,
  DS_STATUS_DOMAIN_ERROR = 3,
  DS_STATUS_NO_CONVERGENCE = 4,
  DS_STATUS_BUFFER_TOO_SMALL = 5,
  DS_STATUS_PARSE_ERROR = 6,
  DS_STATUS_INTERNAL_ERROR = 7,
} DsStatus;

/**
 * Opaque potential handle.
 */
typedef struct DsPotential DsPotential;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Human-readable name of a status code (static storage).
 */
const char *ds_status_name(enum DsStatus status);

/**
 * Creates a piecewise-constant potential from `n_breakpoints` strictly
 * increasing breakpoints and `n_breakpoints - 1` piece values.
 *
 * # Safety
 * `breakpoints` and `values` must point to arrays of the stated lengths;
 * `out` must be a valid pointer. The returned handle must be released with
 * [`ds_potential_free`].
 */
enum DsStatus ds_potential_new(const double *breakpoints,
                               uintptr_t n_breakpoints,
                               const double *values,
                               uintptr_t n_values,
                               struct DsPotential **out);

/**
 * Parses a potential from JSON: either a raw
 * `{"breakpoints":[...],"values":[...]}` object or a named spec such as
 * `{"kind":"square_well","params":{"depth":10.0}}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DsStatus ds_potential_from_json(const char *json, struct DsPotential **out);

/**
 * Releases a potential handle. NULL is a no-op.
 *
 * # Safety
 * `p` must be a handle returned by this library, not yet freed.
 */
void ds_potential_free(struct DsPotential *p);

/**
 * Number of negative eigenvalues of `-d²/dx² + q`.
 *
 * # Safety
 * `q` must be a live handle and `out` a valid pointer.
 */
enum DsStatus ds_count_negative(const struct DsPotential *q, uintptr_t *out);

/**
 * Decay rates ω of the negative eigenvalues (λ = -ω²), ground state first.
 *
 * # Safety
 * `q` must be a live handle; `omegas` must point to `capacity` doubles (or
 * be NULL when `capacity` is 0); `written` must be valid.
 */
enum DsStatus ds_negative_eigenvalues(const struct DsPotential *q,
                                      double tol,
                                      double *omegas,
                                      uintptr_t capacity,
                                      uintptr_t *written);

/**
 * Positive eigenvalues of the ω-dependent Robin problem on [-1, 1],
 * increasing.
 *
 * # Safety
 * As for [`ds_negative_eigenvalues`].
 */
enum DsStatus ds_regge_eigenvalues(const struct DsPotential *v,
                                   double tol,
                                   double *omegas,
                                   uintptr_t capacity,
                                   uintptr_t *written);

/**
 * Couplings α in (lo, hi) for which α·V has a zero-energy resonance.
 *
 * # Safety
 * As for [`ds_negative_eigenvalues`].
 */
enum DsStatus ds_resonance_set(const struct DsPotential *v,
                               double lo,
                               double hi,
                               double tol,
                               double *alphas,
                               uintptr_t capacity,
                               uintptr_t *written);

/**
 * θ = v₊/v₋ of the half-bound state, when `q` is resonant
 * (`DomainError` otherwise).
 *
 * # Safety
 * `q` must be a live handle and `theta` a valid pointer.
 */
enum DsStatus ds_half_bound_theta(const struct DsPotential *q, double *theta);

/**
 * Interface parameters (θ, η) of the limit point interaction for a
 * resonant `v` and first-order shape `u`.
 *
 * # Safety
 * Handles must be live; `theta_out` and `eta_out` must be valid pointers.
 */
enum DsStatus ds_theta_eta(const struct DsPotential *v,
                           const struct DsPotential *u,
                           double *theta_out,
                           double *eta_out);

/**
 * Threshold coupling α₀ of the δ interaction over a nonnegative compact
 * background `w`.
 *
 * # Safety
 * `w` must be a live handle and `alpha0` a valid pointer.
 */
enum DsStatus ds_threshold_alpha0(const struct DsPotential *w, double tol, double *alpha0);

/**
 * Negative eigenvalues of `-d²/dx² + w` with a δ interface of strength
 * `alpha` at the origin.
 *
 * # Safety
 * As for [`ds_negative_eigenvalues`].
 */
enum DsStatus ds_delta_spectrum(const struct DsPotential *w,
                                double alpha,
                                double tol,
                                double *lambdas,
                                uintptr_t capacity,
                                uintptr_t *written);

/**
 * Negative eigenvalues of `-d²/dx² + w` with the (θ, η) interface at the
 * origin.
 *
 * # Safety
 * As for [`ds_negative_eigenvalues`].
 */
enum DsStatus ds_theta_eta_spectrum(const struct DsPotential *w,
                                    double theta,
                                    double eta,
                                    double tol,
                                    double *lambdas,
                                    uintptr_t capacity,
                                    uintptr_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELTASPEC_H */
