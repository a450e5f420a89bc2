#ifndef WEYLTORIC_H
#define WEYLTORIC_H

/* Generated by cbindgen from weyltoric-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum WtStatus {
  WT_STATUS_OK = 0,
  WT_STATUS_NULL_ARGUMENT = 1,
  WT_STATUS_INVALID_UTF8 = 2,
  WT_STATUS_PARSE_ERROR = 3,
  WT_STATUS_RANK_MISMATCH = 4,
  WT_STATUS_LAURENT_VIOLATION = 5,
  WT_STATUS_ODD_TWIST = 6,
  WT_STATUS_INVALID_ARGUMENT = 7,
  WT_STATUS_SUITE_FAILURE = 8,
  WT_STATUS_INTERNAL_ERROR = 9,
} WtStatus;

/**
 * Ring selector for membership tests.
 */
typedef enum WtRingKind {
  WT_RING_KIND_SINGULAR_X = 0,
  WT_RING_KIND_RESOLUTION_X = 1,
  WT_RING_KIND_WEIGHTED_Y = 2,
} WtRingKind;

/**
 * Opaque Weyl-algebra element.
 */
typedef struct WtElement WtElement;

/**
 * Opaque generator realization.
 */
typedef struct WtRealization WtRealization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the most recent error on this thread.
 *
 * # Safety
 * `out` must be a valid pointer; the returned string is freed with
 * `wt_string_free`.
 */
enum WtStatus wt_last_error(char **out);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void wt_string_free(char *s);

/**
 * Parses the canonical text form `c * Q^[..] P^[..] + ...` at the given
 * rank; `laurent` permits negative exponents in the last position.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum WtStatus wt_element_parse(const char *text, size_t rank, bool laurent, struct WtElement **out);

/**
 * Parses the JSON form `{rank, laurent, terms: [{coeff, mu, nu}]}`.
 *
 * # Safety
 * As for `wt_element_parse`.
 */
enum WtStatus wt_element_from_json(const char *json, struct WtElement **out);

/**
 * Renders the canonical text form (bit-exact round trip with
 * `wt_element_parse`).
 *
 * # Safety
 * `el` must be a live element handle; `out` a valid pointer.
 */
enum WtStatus wt_element_to_text(const struct WtElement *el, char **out);

/**
 * Renders the JSON form.
 *
 * # Safety
 * As for `wt_element_to_text`.
 */
enum WtStatus wt_element_to_json(const struct WtElement *el, char **out);

/**
 * # Safety
 * `el` must be a live element handle; `out` a valid pointer.
 */
enum WtStatus wt_element_clone(const struct WtElement *el, struct WtElement **out);

/**
 * # Safety
 * `el` must come from this library and not be freed twice.
 */
void wt_element_free(struct WtElement *el);

/**
 * Ambient rank `n` (the element lives on `n + 1` variables); 0 for null.
 *
 * # Safety
 * `el` must be a live element handle or null.
 */
size_t wt_element_rank(const struct WtElement *el);

/**
 * Number of normal-ordered terms; 0 for null or zero elements.
 *
 * # Safety
 * `el` must be a live element handle or null.
 */
size_t wt_element_num_terms(const struct WtElement *el);

/**
 * # Safety
 * `a`, `b` must be live element handles; `out` a valid pointer.
 */
enum WtStatus wt_element_add(const struct WtElement *a,
                             const struct WtElement *b,
                             struct WtElement **out);

/**
 * Normal-ordered product.
 *
 * # Safety
 * As for `wt_element_add`.
 */
enum WtStatus wt_element_product(const struct WtElement *a,
                                 const struct WtElement *b,
                                 struct WtElement **out);

/**
 * Commutator `a b - b a`.
 *
 * # Safety
 * As for `wt_element_add`.
 */
enum WtStatus wt_element_commutator(const struct WtElement *a,
                                    const struct WtElement *b,
                                    struct WtElement **out);

/**
 * Common degree of all terms; fails with `WT_STATUS_INVALID_ARGUMENT` on an
 * inhomogeneous element.
 *
 * # Safety
 * `el` must be a live element handle; `out` a valid pointer.
 */
enum WtStatus wt_element_degree(const struct WtElement *el, int64_t *out);

/**
 * Membership of every term in the selected ring.
 *
 * # Safety
 * `el` must be a live element handle; `out` a valid pointer.
 */
enum WtStatus wt_element_is_member(const struct WtElement *el,
                                   enum WtRingKind kind,
                                   int64_t twist,
                                   bool *out);

/**
 * Fourier transform in the last variable (`Q -> P`, `P -> -Q`); fails on a
 * Laurent exponent in that variable.
 *
 * # Safety
 * `el` must be a live element handle; `out` a valid pointer.
 */
enum WtStatus wt_fourier_transform(const struct WtElement *el, struct WtElement **out);

/**
 * Builds the generator realization at rank `n >= 2` and the given twist.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum WtStatus wt_realization_new(size_t n, int64_t twist, struct WtRealization **out);

/**
 * Looks up a realized generator by name: `e1`, `h2`, `fn`, `z`, `z_ell`,
 * `m[i,j]`, `rplus[i,j]`, `rminus[i,j]`, `aplus[i,j]` (1-based indices).
 *
 * # Safety
 * `r` must be a live realization handle; `symbol` a valid string; `out` a
 * valid pointer.
 */
enum WtStatus wt_realization_element(const struct WtRealization *r,
                                     const char *symbol,
                                     struct WtElement **out);

/**
 * # Safety
 * `r` must come from this library and not be freed twice.
 */
void wt_realization_free(struct WtRealization *r);

/**
 * Runs verification suites from a JSON configuration (the same schema as
 * the CLI `--config` file) and returns the manifest JSON. Returns
 * `WT_STATUS_SUITE_FAILURE` when the run completes but a suite fails; the
 * manifest is still written to `out` in that case.
 *
 * # Safety
 * `config_json` must be a valid string; `out` a valid pointer.
 */
enum WtStatus wt_run_suites(const char *config_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLTORIC_H */
