#ifndef TROPICAL_EP_H
#define TROPICAL_EP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every fallible entry point.
 */
typedef enum TropEpStatus {
  TROP_EP_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  TROP_EP_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input could not be parsed or violates a model precondition.
   */
  TROP_EP_STATUS_INVALID_INPUT = 2,
  /**
   * Floating-point stage failed (eigenvalue non-convergence, ambiguous
   * tracking, degenerate spectrum).
   */
  TROP_EP_STATUS_NUMERIC_FAILURE = 3,
} TropEpStatus;

/**
 * Opaque handle around a parametric matrix.
 */
typedef struct TropEpMatrix TropEpMatrix;

/**
 * Opaque handle around an exact bivariate polynomial.
 */
typedef struct TropEpPoly TropEpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *trop_ep_last_error(void);

/**
 * Two-site gain/loss model.
 */
enum TropEpStatus trop_ep_model_two_site(const char *kappa,
                                         const char *gamma,
                                         struct TropEpMatrix **out);

/**
 * Three-site gain/loss trimer. `gamma` accepts exact `sqrt2` multiples.
 */
enum TropEpStatus trop_ep_model_three_site(const char *kappa,
                                           const char *gamma,
                                           const char *tan_phi,
                                           struct TropEpMatrix **out);

/**
 * Non-reciprocal open chain with a weak corner link.
 */
enum TropEpStatus trop_ep_model_ssh_chain(uintptr_t sites,
                                          const char *t1,
                                          const char *t2,
                                          const char *gamma,
                                          struct TropEpMatrix **out);

/**
 * Asymmetric-hopping chain with corner perturbations. `disorder` is either
 * NULL (clean) or an array of six scalar strings `[a, b, c, d, m, n]`.
 */
enum TropEpStatus trop_ep_model_hatano_nelson(uintptr_t sites,
                                              const char *cos_theta,
                                              const char *sin_theta,
                                              const char *cos_phi,
                                              const char *sin_phi,
                                              const char *const *disorder,
                                              struct TropEpMatrix **out);

/**
 * Parse the matrix exchange JSON `{"n": int, "entries": [[poly,..],..]}`.
 */
enum TropEpStatus trop_ep_matrix_from_json(const char *json, struct TropEpMatrix **out);

void trop_ep_matrix_free(struct TropEpMatrix *handle);

/**
 * Exact characteristic polynomial `det(lambda Id - H(v))`.
 */
enum TropEpStatus trop_ep_char_poly(const struct TropEpMatrix *matrix, struct TropEpPoly **out);

/**
 * Parse the line-based polynomial format
 * (`i k re_num/re_den im_num/im_den` per term).
 */
enum TropEpStatus trop_ep_poly_parse(const char *text, struct TropEpPoly **out);

/**
 * Serialize back to the line-based format. Fails for coefficients outside
 * the Gaussian rationals (exact sqrt(2) parts).
 */
enum TropEpStatus trop_ep_poly_to_text(const struct TropEpPoly *poly, char **out);

void trop_ep_poly_free(struct TropEpPoly *handle);

/**
 * Tropical analysis of a polynomial: tropicalization, roots with
 * multiplicities, order classification, and Newton polygon data, as a
 * JSON document.
 */
enum TropEpStatus trop_ep_analyze_json(const struct TropEpPoly *poly, char **out);

/**
 * Log-log splitting-exponent fit over `v = 10^-k`, `k` in
 * `[decade_min, decade_max]`, as a JSON document.
 */
enum TropEpStatus trop_ep_splitting_fit_json(const struct TropEpMatrix *matrix,
                                             uint32_t decade_min,
                                             uint32_t decade_max,
                                             char **out);

/**
 * Eigenvalue holonomy around a loop of the given radius with `steps`
 * sample points; `touching` non-zero traces the tangent loop through the
 * degeneracy instead of the centered circle. JSON result with the
 * permutation, its cycle notation, and the petal count when defined.
 */
enum TropEpStatus trop_ep_holonomy_json(const struct TropEpMatrix *matrix,
                                        double radius,
                                        uintptr_t steps,
                                        int32_t touching,
                                        char **out);

/**
 * Release a string returned by this library.
 */
void trop_ep_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TROPICAL_EP_H */
