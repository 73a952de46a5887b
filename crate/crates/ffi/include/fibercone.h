#ifndef FIBERCONE_H
#define FIBERCONE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_ARGUMENT = 2,
  FC_STATUS_NOT_IN_CONE = 3,
  FC_STATUS_NOT_PRIMITIVE = 4,
  FC_STATUS_PRECISION_CEILING = 5,
  FC_STATUS_VERIFICATION = 6,
  FC_STATUS_IO = 7,
  FC_STATUS_FAILED = 8,
  FC_STATUS_PANIC = 9,
} FcStatus;

/**
 * A Teichmüller polynomial with its cone.
 */
typedef struct FcProblem FcProblem;

/**
 * Analysis of one class.
 */
typedef struct FcReport FcReport;

/**
 * Results of a scan.
 */
typedef struct FcScan FcScan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *fc_version(void);

/**
 * Message for the last failed call on this thread, or NULL.
 */
const char *fc_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void fc_string_free(char *s);

/**
 * Loads a built-in example (`"hironaka1"`, `"hironaka2"`).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum FcStatus fc_problem_builtin(const char *name, struct FcProblem **out);

/**
 * Builds a problem from the polynomial and cone keys of a TOML run
 * configuration.
 *
 * # Safety
 * `toml` must be a NUL-terminated string; `out` must be writable.
 */
enum FcStatus fc_problem_from_toml(const char *toml, struct FcProblem **out);

/**
 * Dimension of the cone (number of class coordinates).
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum FcStatus fc_problem_dim(const struct FcProblem *problem, size_t *out);

/**
 * # Safety
 * `problem` must come from this library and not be freed twice.
 */
void fc_problem_free(struct FcProblem *problem);

/**
 * Analyzes the class with coordinates `coords[0..len]`. A
 * `precision_bits` of 0 keeps the default ceiling.
 *
 * # Safety
 * `problem` must be a live handle, `coords` must point to `len` values,
 * `out` must be writable.
 */
enum FcStatus fc_analyze(const struct FcProblem *problem,
                         const int64_t *coords,
                         size_t len,
                         uint32_t precision_bits,
                         struct FcReport **out);

/**
 * # Safety
 * `report` must come from this library and not be freed twice.
 */
void fc_report_free(struct FcReport *report);

/**
 * Whether the trace field of the stretch factor is totally real.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum FcStatus fc_report_totally_real(const struct FcReport *report, bool *out);

/**
 * Outward-rounded `f64` bounds of the stretch factor.
 *
 * # Safety
 * `report` must be a live handle; `lo` and `hi` must be writable.
 */
enum FcStatus fc_report_lambda(const struct FcReport *report, double *lo, double *hi);

/**
 * Outward-rounded `f64` bounds of the Mahler measure of the minimal
 * polynomial.
 *
 * # Safety
 * `report` must be a live handle; `lo` and `hi` must be writable.
 */
enum FcStatus fc_report_mahler(const struct FcReport *report, double *lo, double *hi);

/**
 * Degree of the minimal polynomial of the stretch factor.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum FcStatus fc_report_minpoly_degree(const struct FcReport *report, size_t *out);

/**
 * Minimal polynomial as text, e.g. `t^2 - 3*t + 1`.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable. Free the
 * string with `fc_string_free`.
 */
enum FcStatus fc_report_minpoly(const struct FcReport *report, char **out);

/**
 * Factorization of the specialization as text.
 *
 * # Safety
 * As for `fc_report_minpoly`.
 */
enum FcStatus fc_report_factorization(const struct FcReport *report, char **out);

/**
 * The whole report as JSON with exact rational bounds.
 *
 * # Safety
 * As for `fc_report_minpoly`.
 */
enum FcStatus fc_report_json(const struct FcReport *report, char **out);

/**
 * Scans every primitive class with `0 < height < bound`. `workers` 0
 * means available parallelism.
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum FcStatus fc_scan(const struct FcProblem *problem,
                      int64_t bound,
                      size_t workers,
                      struct FcScan **out);

/**
 * # Safety
 * `scan` must come from this library and not be freed twice.
 */
void fc_scan_free(struct FcScan *scan);

/**
 * Number of classes and the verdict counts of a scan.
 *
 * # Safety
 * `scan` must be a live handle; every out pointer must be writable.
 */
enum FcStatus fc_scan_counts(const struct FcScan *scan,
                             size_t *total,
                             size_t *totally_real,
                             size_t *not_totally_real,
                             size_t *errors);

/**
 * Scan as CSV text.
 *
 * # Safety
 * `scan` must be a live handle; `out` must be writable. Free the string
 * with `fc_string_free`.
 */
enum FcStatus fc_scan_csv(const struct FcScan *scan, char **out);

/**
 * Scan as JSON text.
 *
 * # Safety
 * As for `fc_scan_csv`.
 */
enum FcStatus fc_scan_json(const struct FcScan *scan, char **out);

/**
 * Scan plotted as SVG text (2-dimensional cones only).
 *
 * # Safety
 * As for `fc_scan_csv`.
 */
enum FcStatus fc_scan_svg(const struct FcScan *scan, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIBERCONE_H */
