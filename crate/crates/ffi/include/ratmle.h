#ifndef RATMLE_H
#define RATMLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum RatmleStatus {
  RATMLE_STATUS_OK = 0,
  RATMLE_STATUS_NULL_POINTER = 1,
  RATMLE_STATUS_INVALID_UTF8 = 2,
  RATMLE_STATUS_PARSE_ERROR = 3,
  RATMLE_STATUS_INVALID_INPUT = 4,
  RATMLE_STATUS_POLE_AT_INPUT = 5,
  RATMLE_STATUS_ZERO_DENOMINATOR = 6,
  RATMLE_STATUS_BUDGET_EXCEEDED = 7,
  RATMLE_STATUS_PANIC = 99,
} RatmleStatus;

/**
 * A Horn matrix with its coefficient vector.
 */
typedef struct RatmleHornPair RatmleHornPair;

/**
 * A validated staged tree.
 */
typedef struct RatmleTree RatmleTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ratmle_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *ratmle_last_error_message(void);

/**
 * Releases a string returned through an `out_json` parameter.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void ratmle_string_free(char *s);

/**
 * Parses and validates a staged tree from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum RatmleStatus ratmle_tree_from_json(const char *json, struct RatmleTree **out);

/**
 * # Safety
 * `tree` must be null or a handle from this library not yet freed.
 */
void ratmle_tree_free(struct RatmleTree *tree);

/**
 * Number of leaves, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t ratmle_tree_num_leaves(const struct RatmleTree *tree);

/**
 * Number of edge labels, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t ratmle_tree_num_labels(const struct RatmleTree *tree);

/**
 * Closed-form estimate from `len` leaf counts. Writes one `double` per leaf
 * to `out_probs` and `{"s_hat": [...], "p_hat": [...]}` to `out_json`;
 * either output may be null.
 *
 * # Safety
 * `tree` must be a live handle, `counts` must point to `len` values and
 * `out_probs`, when not null, must have room for one value per leaf.
 */
enum RatmleStatus ratmle_tree_mle(const struct RatmleTree *tree,
                                  const int64_t *counts,
                                  size_t len,
                                  double *out_probs,
                                  char **out_json);

/**
 * Horn pair of a tree, reduced when `reduced` is true.
 *
 * # Safety
 * `tree` must be a live handle and `out` a writable pointer.
 */
enum RatmleStatus ratmle_tree_horn(const struct RatmleTree *tree,
                                   bool reduced,
                                   struct RatmleHornPair **out);

/**
 * Statistical equivalence of two trees.
 *
 * # Safety
 * Both handles must be live and `out_equivalent` writable.
 */
enum RatmleStatus ratmle_tree_equivalent(const struct RatmleTree *a,
                                         const struct RatmleTree *b,
                                         bool *out_equivalent);

/**
 * Parses a Horn pair from `{"H": [[...]], "lambda": ["p/q", ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum RatmleStatus ratmle_horn_from_json(const char *json, struct RatmleHornPair **out);

/**
 * # Safety
 * `pair` must be a live handle and `out_json` writable.
 */
enum RatmleStatus ratmle_horn_to_json(const struct RatmleHornPair *pair, char **out_json);

/**
 * # Safety
 * `pair` must be null or a handle from this library not yet freed.
 */
void ratmle_horn_free(struct RatmleHornPair *pair);

/**
 * Number of rows of `H`, or 0 for a null handle.
 *
 * # Safety
 * `pair` must be null or a live handle.
 */
size_t ratmle_horn_num_rows(const struct RatmleHornPair *pair);

/**
 * Number of columns of `H` (model states), or 0 for a null handle.
 *
 * # Safety
 * `pair` must be null or a live handle.
 */
size_t ratmle_horn_num_cols(const struct RatmleHornPair *pair);

/**
 * Runs the Horn pair check. `out_is_horn` receives the overall verdict and
 * `out_json` the verdict with its sign vector; either may be null.
 *
 * # Safety
 * `pair` must be a live handle.
 */
enum RatmleStatus ratmle_horn_check(const struct RatmleHornPair *pair,
                                    bool *out_is_horn,
                                    char **out_json);

/**
 * Evaluates the Horn map at `len` counts. Writes one `double` per column
 * to `out_probs` and `{"value": [...], "sum": "p/q"}` to `out_json`.
 *
 * # Safety
 * `pair` must be a live handle, `counts` must point to `len` values and
 * `out_probs`, when not null, must have room for one value per column.
 */
enum RatmleStatus ratmle_horn_eval(const struct RatmleHornPair *pair,
                                   const int64_t *counts,
                                   size_t len,
                                   double *out_probs,
                                   char **out_json);

/**
 * Seeded verification of the Horn map as an estimator: idempotence,
 * critical point at the data and dominance over `samples` model points per
 * trial. `out_passed` is false when any check failed; `out_json` receives
 * `{"checks": [...], "seed": int, "failures": [...]}`.
 *
 * # Safety
 * `pair` must be a live handle.
 */
enum RatmleStatus ratmle_verify_horn(const struct RatmleHornPair *pair,
                                     uint64_t seed,
                                     size_t trials,
                                     size_t samples,
                                     bool *out_passed,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATMLE_H */
