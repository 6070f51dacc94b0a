#ifndef LIGHTCONE_H
#define LIGHTCONE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LcKind {
  LC_KIND_ELLIPTIC_CATENOID = 0,
  LC_KIND_HYPERBOLIC_CATENOID = 1,
  LC_KIND_PARABOLIC_CATENOID = 2,
  LC_KIND_HELICOID = 3,
  LC_KIND_CONFORMAL_HELICOID = 4,
  LC_KIND_HOROSPHERE = 5,
} LcKind;

typedef enum LcStatus {
  LC_STATUS_OK = 0,
  LC_STATUS_NULL_POINTER = 1,
  LC_STATUS_BAD_PARAMETER = 2,
  LC_STATUS_DEGENERATE = 3,
  LC_STATUS_NOT_CONVERGED = 4,
  LC_STATUS_PARSE_ERROR = 5,
  LC_STATUS_AMBIGUOUS = 6,
  LC_STATUS_NOT_UNIMODULAR = 7,
  LC_STATUS_INVALID_UTF8 = 8,
  LC_STATUS_INTERNAL = 99,
} LcStatus;

/*
 A surface of the catalog.
 */
typedef struct LcSurface LcSurface;

typedef struct LcCensus {
  size_t elliptic;
  size_t parabolic;
  size_t hyperbolic;
  size_t helicoid;
} LcCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Builds a catalog surface. `kind` is an `LcKind` value; `p0` and `p1`
 are its parameters (a, b or c) and unused ones are ignored.

 # Safety
 `out` must be a valid pointer. The handle is released with `lc_surface_free`.
 */
enum LcStatus lc_surface_new(uint32_t kind, double p0, double p1, struct LcSurface **out);

/*
 Flat surface ⟨M, X⟩ = q with `m` the four coordinates of a null M.

 # Safety
 `m` must point at 4 doubles and `out` must be valid.
 */
enum LcStatus lc_surface_new_plane(const double *m, double q, struct LcSurface **out);

/*
 # Safety
 `s` must come from `lc_surface_new*` and not be used afterwards. Null is a no-op.
 */
void lc_surface_free(struct LcSurface *s);

/*
 Parameter domain `[u0, u1, v0, v1]`.

 # Safety
 `out` must point at 4 doubles.
 */
enum LcStatus lc_surface_domain(const struct LcSurface *s, double *out);

/*
 Point X(u, v) as coordinates (x0, x1, x2, x3).

 # Safety
 `out` must point at 4 doubles.
 */
enum LcStatus lc_surface_point(const struct LcSurface *s, double u, double v, double *out);

/*
 Mean and Gaussian curvature at (u, v).

 # Safety
 `h` and `k` must be valid.
 */
enum LcStatus lc_surface_curvature(const struct LcSurface *s,
                                   double u,
                                   double v,
                                   double *h,
                                   double *k);

/*
 Lightlike Gauss map at (u, v) as four coordinates.

 # Safety
 `out` must point at 4 doubles.
 */
enum LcStatus lc_surface_gauss_map(const struct LcSurface *s, double u, double v, double *out);

/*
 δ(a) on the helicoid cardioid.

 # Safety
 `re` and `im` must be valid.
 */
enum LcStatus lc_delta_of_a(double a, double *re, double *im);

/*
 Catenoids and helicoids in the associated family at |δ| = r.

 # Safety
 `out` must be valid.
 */
enum LcStatus lc_census(double r, struct LcCensus *out);

/*
 Classifies a ruled frame written in the frame-spec language and returns
 the JSON report in `*out`, to be released with `lc_string_free`.
 `zero_tol` ≤ 0 selects the default guard band.

 # Safety
 `spec` must be a NUL-terminated string and `out` valid.
 */
enum LcStatus lc_classify_spec(const char *spec, double zero_tol, char **out);

/*
 # Safety
 `s` must come from this library. Null is a no-op.
 */
void lc_string_free(char *s);

/*
 Copies the calling thread's last error message into `buf` (truncated,
 always NUL-terminated when `len` > 0). Returns the full message length
 without the terminator, or 0 if the last call succeeded.

 # Safety
 `buf` must point at `len` writable bytes or be null.
 */
size_t lc_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIGHTCONE_H */
