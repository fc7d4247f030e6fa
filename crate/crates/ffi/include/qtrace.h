#ifndef QTRACE_H
#define QTRACE_H

#include <stdbool.h>
#include <stdint.h>

/**
 * Outcome of a call.
 */
typedef enum QtStatus {
  QT_STATUS_OK = 0,
  QT_STATUS_NULL_POINTER = 1,
  QT_STATUS_INVALID_ARGUMENT = 2,
  QT_STATUS_NOT_INVERTIBLE = 3,
  QT_STATUS_OUTSIDE_DOMAIN = 4,
  QT_STATUS_UNSUPPORTED = 5,
  QT_STATUS_BUDGET_EXCEEDED = 6,
  QT_STATUS_UNKNOWN_SUITE = 7,
  QT_STATUS_PANIC = 8,
} QtStatus;

/**
 * Opaque verification report.
 */
typedef struct QtReport QtReport;

/**
 * Opaque exact q-series.
 */
typedef struct QtSeries QtSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next qtrace call on this thread.
 */
const char *qt_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qt_string_free(char *s);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qt_series_free(struct QtSeries *s);

/**
 * Normalised Eisenstein series E_k to order `order`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QtStatus qt_series_eisenstein(uint32_t k, uint64_t order, struct QtSeries **out);

/**
 * Q_k(μ, λ) with μ = e(mu_j/mu_m), λ = e(lambda_j/lambda_m).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QtStatus qt_series_q(uint32_t k,
                          int64_t mu_j,
                          uint32_t mu_m,
                          int64_t lambda_j,
                          uint32_t lambda_m,
                          uint64_t order,
                          struct QtSeries **out);

/**
 * Dedekind η to order `order`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QtStatus qt_series_eta(uint64_t order, struct QtSeries **out);

/**
 * Trace function T(1, (x, y)) for l fermions; x, y are "1", "sigma", "g" or "gsigma".
 *
 * # Safety
 * `x` and `y` must be NUL-terminated strings and `out` a valid pointer.
 */
enum QtStatus qt_series_trace(const char *x,
                              const char *y,
                              uint32_t l,
                              uint64_t order,
                              struct QtSeries **out);

/**
 * Parses the canonical JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QtStatus qt_series_from_json(const char *json, struct QtSeries **out);

/**
 * Canonical JSON form, or NULL on failure. Free with [`qt_string_free`].
 *
 * # Safety
 * `s` must be a live series handle.
 */
char *qt_series_to_json(const struct QtSeries *s);

/**
 * Human-readable form, or NULL on failure. Free with [`qt_string_free`].
 *
 * # Safety
 * `s` must be a live series handle.
 */
char *qt_series_to_string(const struct QtSeries *s);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QtStatus qt_series_add(const struct QtSeries *a,
                            const struct QtSeries *b,
                            struct QtSeries **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QtStatus qt_series_sub(const struct QtSeries *a,
                            const struct QtSeries *b,
                            struct QtSeries **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum QtStatus qt_series_mul(const struct QtSeries *a,
                            const struct QtSeries *b,
                            struct QtSeries **out);

/**
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum QtStatus qt_series_invert(const struct QtSeries *a, struct QtSeries **out);

/**
 * 1 if the two series agree up to their common precision, 0 otherwise or on error.
 *
 * # Safety
 * `a`, `b` must be live handles.
 */
bool qt_series_equal(const struct QtSeries *a, const struct QtSeries *b);

/**
 * Evaluates at τ = re + i·im with a bound on the omitted tail.
 *
 * # Safety
 * `s` must be a live handle; the output pointers must be valid.
 */
enum QtStatus qt_series_eval(const struct QtSeries *s,
                             double re,
                             double im,
                             double *out_re,
                             double *out_im,
                             double *out_tail);

/**
 * Runs a named suite. `out_json` (optional) receives the JSON result.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `out_pass` valid, `out_json` valid or NULL.
 */
enum QtStatus qt_verify_suite(const char *name, bool *out_pass, char **out_json);

/**
 * Checks T(1,(x,y))(γτ) against T(1,(x,y)γ)(τ) with γ = (a b; c d).
 *
 * # Safety
 * `x`, `y` must be NUL-terminated strings and `out` a valid pointer.
 */
enum QtStatus qt_transform(const char *x,
                           const char *y,
                           int64_t a,
                           int64_t b,
                           int64_t c,
                           int64_t d,
                           uint32_t l,
                           double weight,
                           double tol,
                           struct QtReport **out);

/**
 * # Safety
 * `r` must be a live report handle.
 */
bool qt_report_pass(const struct QtReport *r);

/**
 * Measured constant; returns NullPointer if the report has none.
 *
 * # Safety
 * `r` must be a live report handle and the outputs valid.
 */
enum QtStatus qt_report_constant(const struct QtReport *r, double *out_re, double *out_im);

/**
 * Residual of a numeric report, or NaN.
 *
 * # Safety
 * `r` must be a live report handle.
 */
double qt_report_residual(const struct QtReport *r);

/**
 * JSON form of the report. Free with [`qt_string_free`].
 *
 * # Safety
 * `r` must be a live report handle.
 */
char *qt_report_to_json(const struct QtReport *r);

/**
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void qt_report_free(struct QtReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTRACE_H */
