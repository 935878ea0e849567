#ifndef TAMEBAR_H
#define TAMEBAR_H

/* Generated by cbindgen from the tamebar-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum TamebarStatus {
  /**
   * Success.
   */
  TAMEBAR_STATUS_OK = 0,
  /**
   * Malformed or invalid input (bad JSON, bad field, shape errors).
   */
  TAMEBAR_STATUS_INVALID_INPUT = 1,
  /**
   * The analysis ran but an internal consistency check failed.
   */
  TAMEBAR_STATUS_CONSISTENCY_FAILURE = 2,
  /**
   * A NULL pointer was passed where a value was required.
   */
  TAMEBAR_STATUS_NULL_POINTER = 3,
  /**
   * Unexpected internal failure.
   */
  TAMEBAR_STATUS_INTERNAL = 4,
} TamebarStatus;

/**
 * A parsed and validated diagram file.
 */
typedef struct TamebarDiagram TamebarDiagram;

/**
 * A parsed representation file (circle or line kind).
 */
typedef struct TamebarRep TamebarRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the most recent error on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *tamebar_last_error(void);

/**
 * Parse a representation from its JSON encoding.
 *
 * # Safety
 * `json` must point to a NUL-terminated string and `out` to writable
 * storage for one pointer. The returned handle must be released with
 * [`tamebar_rep_free`].
 */
enum TamebarStatus tamebar_rep_parse(const char *json, struct TamebarRep **out);

/**
 * Release a representation handle. NULL is ignored.
 *
 * # Safety
 * `rep` must come from [`tamebar_rep_parse`] and not have been freed.
 */
void tamebar_rep_free(struct TamebarRep *rep);

/**
 * Decompose into bar codes and monodromy; writes the decomposition JSON.
 *
 * # Safety
 * `rep` must be a live handle; `json_out` receives an owned string to be
 * freed with [`tamebar_string_free`].
 */
enum TamebarStatus tamebar_rep_decompose(const struct TamebarRep *rep, char **json_out);

/**
 * Regular part of the fiber relation of a circle representation (the
 * decomposition-independent monodromy oracle); writes the monodromy JSON.
 *
 * # Safety
 * Same contracts as [`tamebar_rep_decompose`].
 */
enum TamebarStatus tamebar_rep_relation_monodromy(const struct TamebarRep *rep, char **json_out);

/**
 * Parse and validate a diagram from its JSON encoding.
 *
 * # Safety
 * Same contracts as [`tamebar_rep_parse`]; release with
 * [`tamebar_diagram_free`].
 */
enum TamebarStatus tamebar_diagram_parse(const char *json, struct TamebarDiagram **out);

/**
 * Release a diagram handle. NULL is ignored.
 *
 * # Safety
 * `diagram` must come from [`tamebar_diagram_parse`] and not have been freed.
 */
void tamebar_diagram_free(struct TamebarDiagram *diagram);

/**
 * Analyze a diagram: writes the full report JSON (bar codes, monodromy,
 * Betti and Novikov numbers, configurations, checks). Returns
 * `ConsistencyFailure` — with the report still written — when any
 * cross-validation check fails.
 *
 * # Safety
 * Same contracts as [`tamebar_rep_decompose`].
 */
enum TamebarStatus tamebar_diagram_analyze(const struct TamebarDiagram *diagram, char **json_out);

/**
 * Level-interval dimensions of the window [from, to] in one degree; writes
 * a small JSON object.
 *
 * # Safety
 * Same contracts as [`tamebar_rep_decompose`].
 */
enum TamebarStatus tamebar_diagram_interval(const struct TamebarDiagram *diagram,
                                            double from,
                                            double to,
                                            uintptr_t degree,
                                            char **json_out);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from one of the `_analyze`/`_decompose`/`_interval`
 * functions and not have been freed.
 */
void tamebar_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAMEBAR_H */
