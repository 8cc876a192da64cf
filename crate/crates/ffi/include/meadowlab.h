#ifndef MEADOWLAB_H
#define MEADOWLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MeadowStatus {
  MEADOW_STATUS_OK = 0,
  MEADOW_STATUS_NULL_POINTER = 1,
  MEADOW_STATUS_INVALID_UTF8 = 2,
  MEADOW_STATUS_PARSE = 3,
  MEADOW_STATUS_MODEL = 4,
  MEADOW_STATUS_CHECK = 5,
  MEADOW_STATUS_INVALID_ARGUMENT = 6,
  MEADOW_STATUS_BUFFER_TOO_SMALL = 7,
  MEADOW_STATUS_PANIC = 8,
} MeadowStatus;

/**
 * A parsed equation.
 */
typedef struct MeadowEquation MeadowEquation;

/**
 * A parsed term.
 */
typedef struct MeadowTerm MeadowTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *meadow_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *meadow_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void meadow_string_free(char *s);

/**
 * Parses a term. `extended` admits the imaginary unit `i`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MeadowStatus meadow_term_parse(const char *text, bool extended, struct MeadowTerm **out);

/**
 * # Safety
 * `term` must be NULL or a handle from [`meadow_term_parse`], not yet freed.
 */
void meadow_term_free(struct MeadowTerm *term);

/**
 * Canonical text of a term. Free the result with [`meadow_string_free`].
 *
 * # Safety
 * `term` must be a live handle; `out` must be writable.
 */
enum MeadowStatus meadow_term_print(const struct MeadowTerm *term, char **out);

/**
 * Evaluates a term in `model` ("q0", "qi" or "fp:<p>") under `bindings`, a
 * comma separated list such as "x=1/2,y=3". `bindings` may be NULL.
 * The value is written as text; free it with [`meadow_string_free`].
 *
 * # Safety
 * `term` must be a live handle, string arguments NUL-terminated, `out` writable.
 */
enum MeadowStatus meadow_eval(const struct MeadowTerm *term,
                              const char *model,
                              const char *bindings,
                              char **out);

/**
 * Parses an equation `lhs = rhs`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MeadowStatus meadow_equation_parse(const char *text,
                                        bool extended,
                                        struct MeadowEquation **out);

/**
 * # Safety
 * `eq` must be NULL or a handle from [`meadow_equation_parse`], not yet freed.
 */
void meadow_equation_free(struct MeadowEquation *eq);

/**
 * Checks an equation in a model: exhaustively in "fp:<p>", by `samples`
 * seeded draws in "q0" and "qi". Writes whether it held.
 *
 * # Safety
 * `eq` must be a live handle, `model` NUL-terminated, `satisfied` writable.
 */
enum MeadowStatus meadow_check_model(const struct MeadowEquation *eq,
                                     const char *model,
                                     size_t samples,
                                     uint64_t seed,
                                     bool *satisfied);

/**
 * Euler's criterion for `n` modulo the prime `p`; `n` must not vanish mod `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum MeadowStatus meadow_is_qr(uint64_t n, uint64_t p, bool *out);

/**
 * Distance from a prime `n` to its largest quadratic residue; 0 otherwise.
 */
uint64_t meadow_f(uint64_t n);

/**
 * Writes the sorted quadratic residues of `p` into `buf`. `len` receives the
 * count; if it exceeds `cap` nothing is written and `MEADOW_STATUS_BUFFER_TOO_SMALL`
 * is returned, so a call with `cap = 0` queries the size.
 *
 * # Safety
 * `buf` must hold `cap` elements (it may be NULL when `cap` is 0); `len` must be writable.
 */
enum MeadowStatus meadow_residue_set(uint64_t p, uint64_t *buf, size_t cap, size_t *len);

/**
 * Initial-algebra check of a set of equations against prime fields up to
 * `bound`, returned as a JSON report. `specs` is a semicolon separated list
 * of schema names ("L:2", "H:0..3", "Md") or raw equations ("x * x = 1").
 * Free the result with [`meadow_string_free`].
 *
 * # Safety
 * `specs` must be NUL-terminated; `out` must be writable.
 */
enum MeadowStatus meadow_speccheck_json(const char *specs, uint64_t bound, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MEADOWLAB_H */
