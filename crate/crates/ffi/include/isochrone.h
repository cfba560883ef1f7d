#ifndef ISOCHRONE_H
#define ISOCHRONE_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum IsoStatus {
  ISO_STATUS_OK = 0,
  ISO_STATUS_NULL_POINTER = 1,
  ISO_STATUS_INVALID_UTF8 = 2,
  ISO_STATUS_PARSE = 3,
  ISO_STATUS_NOT_A_CENTER = 4,
  ISO_STATUS_NOT_FACTORED = 5,
  ISO_STATUS_ANALYSIS = 6,
  ISO_STATUS_PANIC = 7,
} IsoStatus;

/**
 * Opaque handle to a parsed system.
 */
typedef struct IsoSystem IsoSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or NULL. Owned by the library.
 */
const char *iso_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *iso_version(void);

/**
 * Parses a TOML or JSON system specification.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum IsoStatus iso_system_parse(const char *text, struct IsoSystem **out);

/**
 * Builds `H = Q · (a_0 + a_1 r² + …)` from a polynomial string and `len`
 * rational strings such as `"3/2"`.
 *
 * # Safety
 * `q` must be a valid string, `a` must point to `len` valid strings, `out` writable.
 */
enum IsoStatus iso_system_factored(const char *q,
                                   const char *const *a,
                                   size_t len,
                                   struct IsoSystem **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void iso_system_free(struct IsoSystem *s);

/**
 * `H` as a polynomial string; free with [`iso_string_free`]. NULL on error.
 *
 * # Safety
 * `s` must be a live handle or NULL.
 */
char *iso_system_to_string(const struct IsoSystem *s);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void iso_string_free(char *s);

/**
 * Exact center test.
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum IsoStatus iso_is_center(const struct IsoSystem *s, bool *out);

/**
 * Number of unbounded boundary trajectories of the center region.
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum IsoStatus iso_nu(const struct IsoSystem *s, uint32_t *out);

/**
 * Boundary radius of the center region along `theta`; `INFINITY` when unbounded.
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum IsoStatus iso_boundary_radius(const struct IsoSystem *s, double theta, double *out);

/**
 * `ρ(2π)` for the solution starting at `rho0` on the positive `x` axis.
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum IsoStatus iso_return_map(const struct IsoSystem *s, double rho0, double tol, double *out);

/**
 * Full JSON report with the spec's settings; free with [`iso_string_free`].
 *
 * # Safety
 * `s` must be a live handle, `out` writable.
 */
enum IsoStatus iso_analyze_json(const struct IsoSystem *s, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ISOCHRONE_H */
