#ifndef INVMULT_H
#define INVMULT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum InvmultStatus {
  INVMULT_STATUS_OK = 0,
  INVMULT_STATUS_NULL_POINTER = 1,
  INVMULT_STATUS_INVALID_ARGUMENT = 2,
  INVMULT_STATUS_PARSE = 3,
  INVMULT_STATUS_BUDGET = 4,
  INVMULT_STATUS_OUT_OF_RANGE = 5,
  INVMULT_STATUS_UTF8 = 6,
  INVMULT_STATUS_PANIC = 7,
} InvmultStatus;

/**
 * Marginal pmf of the inversion number.
 */
typedef struct InvmultPmf InvmultPmf;

/**
 * q-multinomial coefficient of a count vector.
 */
typedef struct InvmultPoly InvmultPoly;

/**
 * Probability vector, exact or floating depending on how it was parsed.
 */
typedef struct InvmultProbs InvmultProbs;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *invmult_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void invmult_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *invmult_version(void);

/**
 * Inversion number of `symbols[0..len]`, each in `1..=k`.
 */
enum InvmultStatus invmult_count_inversions(const uint32_t *symbols,
                                            size_t len,
                                            size_t k,
                                            uint64_t *out);

/**
 * `H` statistic of `symbols[0..len]`. `*defined` is false (and `*out` left
 * at 0) when every symbol is the same category.
 */
enum InvmultStatus invmult_h_statistic(const uint32_t *symbols,
                                       size_t len,
                                       size_t k,
                                       double *out,
                                       bool *defined);

/**
 * q-multinomial coefficient of the count vector `parts[0..k]`.
 */
enum InvmultStatus invmult_poly_new(const uint32_t *parts, size_t k, struct InvmultPoly **out);

void invmult_poly_free(struct InvmultPoly *poly);

/**
 * Degree of the polynomial (the maximum inversion count).
 */
enum InvmultStatus invmult_poly_degree(const struct InvmultPoly *poly, uint64_t *out);

/**
 * Coefficient of `q^power` as a decimal string.
 */
enum InvmultStatus invmult_poly_coeff(const struct InvmultPoly *poly, size_t power, char **out);

/**
 * `1 + 2q + 2q^2 + q^3` style rendering.
 */
enum InvmultStatus invmult_poly_to_string(const struct InvmultPoly *poly, char **out);

/**
 * Parses `"1/2,1/3,1/6"` (exact) or `"0.5,0.3,0.2"` (floating).
 */
enum InvmultStatus invmult_probs_parse(const char *text, struct InvmultProbs **out);

void invmult_probs_free(struct InvmultProbs *probs);

/**
 * Number of categories.
 */
size_t invmult_probs_k(const struct InvmultProbs *probs);

/**
 * True when the vector was parsed as exact rationals.
 */
bool invmult_probs_is_exact(const struct InvmultProbs *probs);

/**
 * `E(I)`, `E(I^2)` and `V(I)` for `n` trials, as doubles.
 */
enum InvmultStatus invmult_moments(const struct InvmultProbs *probs,
                                   uint32_t n,
                                   double *e_i,
                                   double *e_i2,
                                   double *v_i);

/**
 * Marginal pmf of `I` for `n` trials.
 */
enum InvmultStatus invmult_pmf_new(const struct InvmultProbs *probs,
                                   uint32_t n,
                                   struct InvmultPmf **out);

void invmult_pmf_free(struct InvmultPmf *pmf);

/**
 * Number of entries, indexed `0..len`.
 */
size_t invmult_pmf_len(const struct InvmultPmf *pmf);

/**
 * `P(I = i)` as a double.
 */
enum InvmultStatus invmult_pmf_value(const struct InvmultPmf *pmf, size_t i, double *out);

/**
 * `P(I = i)` as text: `a/b` for exact pmfs, shortest round-trip decimal
 * otherwise.
 */
enum InvmultStatus invmult_pmf_value_string(const struct InvmultPmf *pmf, size_t i, char **out);

/**
 * JSON document `{"n", "k", "mode", "pmf": [{"i", "p"}, ...]}`.
 */
enum InvmultStatus invmult_pmf_to_json(const struct InvmultPmf *pmf, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVMULT_H */
