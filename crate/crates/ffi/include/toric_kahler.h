#ifndef TORIC_KAHLER_H
#define TORIC_KAHLER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Surface selector: 2 or 3 blown-up points.
 */
#define TK_SURFACE_DP2 2

#define TK_SURFACE_DP3 3

/**
 * Result of every call. Zero is success.
 */
typedef enum TkStatus {
  TK_STATUS_OK = 0,
  TK_STATUS_NULL_POINTER = 1,
  TK_STATUS_INVALID_ARGUMENT = 2,
  TK_STATUS_CONE_VIOLATION = 3,
  TK_STATUS_NOT_VERIFIED = 4,
  TK_STATUS_FAILURE = 5,
  TK_STATUS_PANIC = 6,
} TkStatus;

/**
 * A Kähler class on one of the two surfaces.
 */
typedef struct TkClass TkClass;

/**
 * Outcome of the 𝓐 minimization.
 */
typedef struct TkMinimization TkMinimization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread; do not free.
 */
const char *tk_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void tk_string_free(char *s);

/**
 * Parses a class: `α,β,γ,δ` on dp3, `β,γ[,δ]` on dp2. Entries are
 * integers, fractions `p/q` or decimals.
 *
 * # Safety
 * `text` is a valid C string; `out` is a valid pointer.
 */
enum TkStatus tk_class_new(int surface_id, const char *text, struct TkClass **out);

/**
 * # Safety
 * `class` is null or came from [`tk_class_new`] and was not freed.
 */
void tk_class_free(struct TkClass *class_);

/**
 * Evaluates one quantity (`V`, `s0`, `F1`, `F2`, `calT`, `calB`, `calA`,
 * `smin`, `smax`, `corner`). `exact` receives the exact value as a string,
 * `value` its double rendering; either may be null.
 *
 * # Safety
 * Pointers are null or valid; `class` came from [`tk_class_new`].
 */
enum TkStatus tk_class_eval(const struct TkClass *class_,
                            const char *quantity,
                            char **exact,
                            double *value);

/**
 * Moment polygon as text: exact vertices, then edge normals and lattice
 * lengths.
 *
 * # Safety
 * `class` came from [`tk_class_new`]; `out` is valid.
 */
enum TkStatus tk_class_polygon(const struct TkClass *class_, char **out);

/**
 * Builds and checks a certificate: `up1`, `up2`, `pos2` or `pos3`.
 * Returns `NotVerified` when it fails; `summary` (nullable) gets a one-line
 * report either way.
 *
 * # Safety
 * `lemma` is a valid C string; `summary` is null or valid.
 */
enum TkStatus tk_verify(const char *lemma, char **summary);

/**
 * Integral classes with A² = −k and c₁·A = 2 − k, as newline-separated
 * `(n; a1,…)` coefficient tuples. `count` (nullable) receives their number.
 *
 * # Safety
 * `out` is valid; `count` is null or valid.
 */
enum TkStatus tk_enumerate_classes(int surface_id, int64_t k, char **out, size_t *count);

/**
 * Minimizes 𝓐 on the two-point blow-up to bracket width `tolerance`
 * (a rational string such as `1/100000000`).
 *
 * # Safety
 * `tolerance` is a valid C string; `out` is valid.
 */
enum TkStatus tk_minimize_dp2(const char *tolerance, struct TkMinimization **out);

/**
 * # Safety
 * `m` is null or came from [`tk_minimize_dp2`] and was not freed.
 */
void tk_minimization_free(struct TkMinimization *m);

/**
 * Witness β (= γ, with δ = 1) and 𝓐 there; outputs are nullable.
 *
 * # Safety
 * `m` came from [`tk_minimize_dp2`]; other pointers are null or valid.
 */
enum TkStatus tk_minimization_value(const struct TkMinimization *m,
                                    double *beta,
                                    double *cal_a,
                                    char **cal_a_exact);

/**
 * 1 when every check passed: 𝓐 < 29/4, inside Y, symmetry, sign change
 * of both partials, and the grid found nothing smaller.
 *
 * # Safety
 * `m` came from [`tk_minimize_dp2`]; `certified` is valid.
 */
enum TkStatus tk_minimization_certified(const struct TkMinimization *m, int *certified);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_KAHLER_H */
