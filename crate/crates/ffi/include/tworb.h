#ifndef TWORB_H
#define TWORB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TworbStatus {
  TWORB_STATUS_OK = 0,
  TWORB_STATUS_NULL_POINTER = 1,
  TWORB_STATUS_INVALID_ARGUMENT = 2,
  TWORB_STATUS_BAD_FIELD = 3,
  TWORB_STATUS_BAD_COMPOSITION = 4,
  TWORB_STATUS_GENERICITY_FAILURE = 5,
  TWORB_STATUS_BUDGET_EXCEEDED = 6,
  TWORB_STATUS_CHECK_FAILED = 7,
  TWORB_STATUS_INTERNAL = 8,
} TworbStatus;

/**
 * Opaque handle to a quadratic extension model.
 */
typedef struct TworbModel TworbModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next tworb call on the same thread.
 */
const char *tworb_last_error_message(void);

/**
 * # Safety
 * `s` must come from a tworb function and not have been freed already.
 */
void tworb_string_free(char *s);

/**
 * Builds Q(√tau)/Q.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TworbStatus tworb_model_rational(int64_t tau, struct TworbModel **out);

/**
 * Builds F_{q²}/F_q.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum TworbStatus tworb_model_finite(uint64_t q, struct TworbModel **out);

/**
 * # Safety
 * `model` must come from a model constructor and not be used afterwards.
 */
void tworb_model_free(struct TworbModel *model);

/**
 * Invariants and exponent table of the orbit with the given Jordan parts,
 * as JSON.
 *
 * # Safety
 * `parts` must point to `len` readable values; `out` must be valid for writes.
 */
enum TworbStatus tworb_orbit_invariants_json(const size_t *parts, size_t len, char **out);

/**
 * F-dimension of the centralizer of the standard representative, computed
 * by solving the bracket system over the model.
 *
 * # Safety
 * `model` must be a live handle, `parts` must point to `len` readable values
 * and `out` must be valid for writes.
 */
enum TworbStatus tworb_centralizer_dim(const struct TworbModel *model,
                                       const size_t *parts,
                                       size_t len,
                                       size_t *out);

/**
 * Induces block types along the standard parabolic of `levi`
 * ("2,1"). `types` uses ';' between blocks ("1,1;1"); NULL means zero types.
 *
 * # Safety
 * `model` must be a live handle, string arguments NUL-terminated or NULL
 * where allowed, `out` valid for writes.
 */
enum TworbStatus tworb_induce_json(const struct TworbModel *model,
                                   const char *levi,
                                   const char *types,
                                   uint64_t seed,
                                   char **out);

/**
 * Runs a verification suite on the model's field. Writes the JSON report
 * and returns `CheckFailed` if any case failed.
 *
 * # Safety
 * `model` must be a live handle, `suite` NUL-terminated, `out` valid for writes.
 */
enum TworbStatus tworb_verify_json(const struct TworbModel *model,
                                   const char *suite,
                                   size_t n_max,
                                   uint64_t seed,
                                   char **out);

/**
 * Exponent table and local zeta model for one Jordan type, as JSON with
 * `series_order` series coefficients.
 *
 * # Safety
 * `parts` must point to `len` readable values; `out` must be valid for writes.
 */
enum TworbStatus tworb_zeta_json(const size_t *parts, size_t len, size_t series_order, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWORB_H */
