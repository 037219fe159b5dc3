#ifndef GRADUS_H
#define GRADUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum GradusStatus {
  GRADUS_STATUS_OK = 0,
  // A required pointer argument was null.
  GRADUS_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  GRADUS_STATUS_INVALID_UTF8 = 2,
  // The input was rejected (bad type, rank, field, subset, JSON, usage).
  GRADUS_STATUS_INVALID_INPUT = 3,
  // The input was well formed but failed a verification.
  GRADUS_STATUS_VERIFICATION_FAILED = 4,
  // An internal error; the library state is still usable.
  GRADUS_STATUS_INTERNAL = 5,
} GradusStatus;

// A Chevalley-basis Lie algebra over a chosen field.
typedef struct GradusLieAlgebra GradusLieAlgebra;

// A validated structurable algebra.
typedef struct GradusStructurable GradusStructurable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *gradus_version(void);

// Message for the most recent failure on this thread, or null. Valid until the next call
// into the library on the same thread.
const char *gradus_last_error(void);

// Release a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gradus_string_free(char *s);

// Build the Chevalley algebra of type `type_label` (`"A"`..`"G"`) and `rank` over `field`
// (`"Q"`, `"GF5"`, `"GF(7)"`, ...).
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum GradusStatus gradus_chevalley_new(const char *type_label,
                                       uint32_t rank,
                                       const char *field,
                                       struct GradusLieAlgebra **out);

// Dimension of the algebra, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t gradus_lie_dim(const struct GradusLieAlgebra *h);

// Check the Jacobi identity on every basis triple.
//
// # Safety
// `h` must be a live handle; `passed` must be writable.
enum GradusStatus gradus_lie_check_jacobi(const struct GradusLieAlgebra *h, bool *passed);

// Bracket table as JSON (`field`, `dim`, `labels`, `brackets`).
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum GradusStatus gradus_lie_to_json(const struct GradusLieAlgebra *h, char **out);

// The grading defined by the comma list `j` of 1-based simple roots, as JSON with the
// degree of every basis vector, the component dimensions in degrees -2..2 and the grading
// derivation.
//
// # Safety
// `h` must be a live handle; `j` NUL-terminated; `out` writable.
enum GradusStatus gradus_lie_grading_json(const struct GradusLieAlgebra *h,
                                          const char *j,
                                          char **out);

// Search for `u` of degree 1 and `v` of degree -1 with `[u, v]` acting as the grading
// derivation of the grading given by `j`. The report is written whether or not a pair is
// found.
//
// # Safety
// `h` must be a live handle; `j` NUL-terminated; `out` writable.
enum GradusStatus gradus_lie_unit_pair_json(const struct GradusLieAlgebra *h,
                                            const char *j,
                                            uint64_t attempts,
                                            uint64_t seed,
                                            char **out);

// Release an algebra handle. Null is ignored.
//
// # Safety
// `h` must be null or a live handle not used afterwards.
void gradus_lie_free(struct GradusLieAlgebra *h);

// Parse and validate a structurable algebra from its JSON form. `field` may be null to
// keep the field named in the document.
//
// # Safety
// `json_text` NUL-terminated; `field` null or NUL-terminated; `out` writable.
enum GradusStatus gradus_structurable_from_json(const char *json_text,
                                                const char *field,
                                                struct GradusStructurable **out);

// Dimension of the structurable algebra, or 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
size_t gradus_structurable_dim(const struct GradusStructurable *h);

// Build K(A) and report block dimensions, the Jacobi check, whether `[1+, 1-]` acts as the
// grading derivation, and the bracket table. Returns `VerificationFailed` (with the JSON
// still written) when either check fails.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum GradusStatus gradus_structurable_kappa_json(const struct GradusStructurable *h, char **out);

// Release a structurable handle. Null is ignored.
//
// # Safety
// `h` must be null or a live handle not used afterwards.
void gradus_structurable_free(struct GradusStructurable *h);

// Run a command-line invocation (`argv` without the program name, e.g.
// `{"verify-table", "G", "2"}`) and return its JSON report. `exit_code` receives the code
// the command-line tool would exit with. The report is written whenever the arguments
// parse, including when the command rejects its input.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; `out` and `exit_code` writable.
enum GradusStatus gradus_run(const char *const *argv, size_t argc, char **out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADUS_H */
