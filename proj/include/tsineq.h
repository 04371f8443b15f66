/* C interface to the time-scales inequality verification engine.
 *
 * All functions are thread-safe. Objects returned through out-parameters are
 * owned by the caller and must be released with the matching *_free function.
 * On any status other than TSQ_OK the out-parameter is left untouched and
 * tsq_last_error_message() returns a human-readable description; the message
 * is thread-local and valid until the next failing call on the same thread.
 */
#ifndef TSINEQ_H
#define TSINEQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TSQ_BUILD)
#define TSQ_API __declspec(dllexport)
#else
#define TSQ_API __declspec(dllimport)
#endif
#else
#if defined(TSQ_BUILD)
#define TSQ_API __attribute__((visibility("default")))
#else
#define TSQ_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsq_status {
  TSQ_OK = 0,
  TSQ_EMPTY_SCALE,
  TSQ_BAD_SEGMENT,
  TSQ_NOT_IN_SCALE,
  TSQ_EMPTY_RANGE,
  TSQ_SYNTAX_ERROR,
  TSQ_UNKNOWN_IDENTIFIER,
  TSQ_DOMAIN_ERROR,
  TSQ_OUT_OF_RANGE,
  TSQ_DEGENERATE_POINT,
  TSQ_DEPTH_EXCEEDED,
  TSQ_NON_POSITIVE_WEIGHT,
  TSQ_OUT_OF_WINDOW,
  TSQ_SHIFT_NOT_IN_SCALE,
  TSQ_NOT_CONTINUOUS_SCALE,
  TSQ_NOT_INTEGER_SCALE,
  TSQ_PARSE_ERROR,
  TSQ_VALIDATION_ERROR,
  TSQ_IO_ERROR,
  TSQ_INVALID_ARGUMENT,
  TSQ_UNEXPECTED
} tsq_status;

typedef struct tsq_scenario tsq_scenario; /* opaque */
typedef struct tsq_report tsq_report;     /* opaque */

/* Library identification and diagnostics. */
TSQ_API const char* tsq_version(void);
TSQ_API const char* tsq_status_name(tsq_status status);
TSQ_API const char* tsq_last_error_message(void);

/* Scenario lifecycle. Parse accepts the JSON scenario document directly;
 * load reads it from a file. */
TSQ_API tsq_status tsq_scenario_parse(const char* json_text, tsq_scenario** out);
TSQ_API tsq_status tsq_scenario_load(const char* path, tsq_scenario** out);
TSQ_API tsq_status tsq_scenario_id(const tsq_scenario* scenario, char** out);
TSQ_API void tsq_scenario_free(tsq_scenario* scenario);

/* Suite execution. Each call produces a report; per-scenario errors are
 * recorded as data inside the report rather than failing the call. */
TSQ_API tsq_status tsq_run_checks(const tsq_scenario* const* scenarios,
                                  size_t count, int parallelism,
                                  tsq_report** out);
TSQ_API tsq_status tsq_run_identity(const tsq_scenario* const* scenarios,
                                    size_t count, int parallelism,
                                    tsq_report** out);
TSQ_API tsq_status tsq_run_reduction(const tsq_scenario* scenario,
                                     const char* check, tsq_report** out);
TSQ_API tsq_status tsq_run_fuzz(uint64_t seed, int count, const char* profile,
                                int parallelism, tsq_report** out);

/* Report access. format is "json" (newline-delimited, one record per line,
 * closed by a summary line) or "csv". */
TSQ_API tsq_status tsq_report_render(const tsq_report* report,
                                     const char* format, char** out);
TSQ_API tsq_status tsq_report_summary(const tsq_report* report, int* total,
                                      int* passed, int* margin_failures,
                                      int* errors, double* worst_margin);
TSQ_API int tsq_report_record_count(const tsq_report* report);
TSQ_API int tsq_report_margin_failures(const tsq_report* report);
TSQ_API void tsq_report_free(tsq_report* report);

/* Releases strings returned through char** out-parameters. */
TSQ_API void tsq_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TSINEQ_H */
