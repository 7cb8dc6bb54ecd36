#ifndef SKEWBERGER_H
#define SKEWBERGER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SbArithmetic {
  SB_ARITHMETIC_AUTO = 0,
  SB_ARITHMETIC_RATIONAL = 1,
  SB_ARITHMETIC_MODULAR = 2,
} SbArithmetic;

typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_UTF8 = 2,
  SB_STATUS_SYNTAX = 3,
  SB_STATUS_SEMANTIC = 4,
  SB_STATUS_INVALID_PARAMETER = 5,
  SB_STATUS_RESOURCE_LIMIT = 6,
  SB_STATUS_CONSTRUCTION = 7,
  // The requested field was not computed.
  SB_STATUS_UNAVAILABLE = 8,
  SB_STATUS_IO = 9,
  SB_STATUS_INTERNAL = 10,
} SbStatus;

// The result of a full check.
typedef struct SbReport SbReport;

// A parsed representation spec.
typedef struct SbSpec SbSpec;

typedef struct SbOptions {
  enum SbArithmetic arithmetic;
  // Row cap per stage; 0 means none.
  size_t max_rows;
  bool timings;
} SbOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *sb_last_error(void);

// Library version as a static string.
const char *sb_version(void);

// Defaults: automatic arithmetic, no row cap, no timings.
struct SbOptions sb_options_default(void);

// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum SbStatus sb_spec_parse(const char *text, struct SbSpec **out);

// # Safety
// `spec` must come from [`sb_spec_parse`] and not be used afterwards.
void sb_spec_free(struct SbSpec *spec);

// Canonical form of the spec, or null when `spec` is null.
//
// # Safety
// `spec` must be null or a live handle.
char *sb_spec_canonical(const struct SbSpec *spec);

// # Safety
// `spec` must be null or a live handle.
size_t sb_spec_dim_v(const struct SbSpec *spec);

// # Safety
// `spec` must be null or a live handle.
size_t sb_spec_dim_g(const struct SbSpec *spec);

// Dimension of the skew-curvature space alone.
//
// # Safety
// `spec` must be a live handle, `opts` null or valid, `out` valid.
enum SbStatus sb_curvature_dim(const struct SbSpec *spec,
                               const struct SbOptions *opts,
                               size_t *out);

// Runs every stage. A stage stopped by the row cap still yields a report
// whose missing fields read as [`SbStatus::Unavailable`].
//
// # Safety
// `spec` must be a live handle, `opts` null or valid, `out` valid.
enum SbStatus sb_check(const struct SbSpec *spec,
                       const struct SbOptions *opts,
                       struct SbReport **out);

// # Safety
// `report` must come from [`sb_check`] and not be used afterwards.
void sb_report_free(struct SbReport *report);

// # Safety
// `report` must be a live handle and `out` valid.
enum SbStatus sb_report_dim_rbar(const struct SbReport *report, size_t *out);

// # Safety
// `report` must be a live handle and `out` valid.
enum SbStatus sb_report_dim_prolong1(const struct SbReport *report, size_t *out);

// # Safety
// `report` must be a live handle and `out` valid.
enum SbStatus sb_report_dim_h22(const struct SbReport *report, size_t *out);

// # Safety
// `report` must be a live handle and `out` valid.
enum SbStatus sb_report_is_skew_berger(const struct SbReport *report, bool *out);

// Number of fields that differ from the registry expectation.
//
// # Safety
// `report` must be null or a live handle.
size_t sb_report_delta_count(const struct SbReport *report);

// Whether a resource cap stopped the run.
//
// # Safety
// `report` must be null or a live handle.
bool sb_report_aborted(const struct SbReport *report);

// The report as pretty JSON, or null on failure.
//
// # Safety
// `report` must be null or a live handle.
char *sb_report_json(const struct SbReport *report);

// # Safety
// `s` must be null or a string returned by this library.
void sb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWBERGER_H */
