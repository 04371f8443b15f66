#include "tsineq.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "tsineq/errors.hpp"
#include "tsineq/harness.hpp"
#include "tsineq/scenario.hpp"

struct tsq_scenario {
  tsineq::Scenario value;
};

struct tsq_report {
  tsineq::SuiteReport value;
};

namespace {

thread_local std::string g_last_error;

tsq_status map_code(tsineq::ErrorCode code) {
  using tsineq::ErrorCode;
  switch (code) {
    case ErrorCode::EmptyScale: return TSQ_EMPTY_SCALE;
    case ErrorCode::BadSegment: return TSQ_BAD_SEGMENT;
    case ErrorCode::NotInScale: return TSQ_NOT_IN_SCALE;
    case ErrorCode::EmptyRange: return TSQ_EMPTY_RANGE;
    case ErrorCode::SyntaxError: return TSQ_SYNTAX_ERROR;
    case ErrorCode::UnknownIdentifier: return TSQ_UNKNOWN_IDENTIFIER;
    case ErrorCode::DomainError: return TSQ_DOMAIN_ERROR;
    case ErrorCode::OutOfRange: return TSQ_OUT_OF_RANGE;
    case ErrorCode::DegeneratePoint: return TSQ_DEGENERATE_POINT;
    case ErrorCode::DepthExceeded: return TSQ_DEPTH_EXCEEDED;
    case ErrorCode::NonPositiveWeight: return TSQ_NON_POSITIVE_WEIGHT;
    case ErrorCode::OutOfWindow: return TSQ_OUT_OF_WINDOW;
    case ErrorCode::ShiftNotInScale: return TSQ_SHIFT_NOT_IN_SCALE;
    case ErrorCode::NotContinuousScale: return TSQ_NOT_CONTINUOUS_SCALE;
    case ErrorCode::NotIntegerScale: return TSQ_NOT_INTEGER_SCALE;
    case ErrorCode::ParseError: return TSQ_PARSE_ERROR;
    case ErrorCode::ValidationError: return TSQ_VALIDATION_ERROR;
    case ErrorCode::IoError: return TSQ_IO_ERROR;
    case ErrorCode::InvalidArgument: return TSQ_INVALID_ARGUMENT;
  }
  return TSQ_UNEXPECTED;
}

template <typename Fn>
tsq_status guarded(Fn&& fn) {
  try {
    fn();
    return TSQ_OK;
  } catch (const tsineq::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSQ_UNEXPECTED;
  } catch (...) {
    g_last_error = "unknown failure";
    return TSQ_UNEXPECTED;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tsq_status require(bool ok, const char* message) {
  if (ok) return TSQ_OK;
  g_last_error = message;
  return TSQ_INVALID_ARGUMENT;
}

std::vector<tsineq::Scenario> collect(const tsq_scenario* const* scenarios,
                                      size_t count) {
  std::vector<tsineq::Scenario> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (scenarios[i] == nullptr) {
      tsineq::raise(tsineq::ErrorCode::InvalidArgument,
                    "scenario array contains a null entry");
    }
    out.push_back(scenarios[i]->value);
  }
  return out;
}

}  // namespace

extern "C" {

const char* tsq_version(void) { return "0.1.0"; }

const char* tsq_status_name(tsq_status status) {
  switch (status) {
    case TSQ_OK: return "Ok";
    case TSQ_EMPTY_SCALE: return "EmptyScale";
    case TSQ_BAD_SEGMENT: return "BadSegment";
    case TSQ_NOT_IN_SCALE: return "NotInScale";
    case TSQ_EMPTY_RANGE: return "EmptyRange";
    case TSQ_SYNTAX_ERROR: return "SyntaxError";
    case TSQ_UNKNOWN_IDENTIFIER: return "UnknownIdentifier";
    case TSQ_DOMAIN_ERROR: return "DomainError";
    case TSQ_OUT_OF_RANGE: return "OutOfRange";
    case TSQ_DEGENERATE_POINT: return "DegeneratePoint";
    case TSQ_DEPTH_EXCEEDED: return "DepthExceeded";
    case TSQ_NON_POSITIVE_WEIGHT: return "NonPositiveWeight";
    case TSQ_OUT_OF_WINDOW: return "OutOfWindow";
    case TSQ_SHIFT_NOT_IN_SCALE: return "ShiftNotInScale";
    case TSQ_NOT_CONTINUOUS_SCALE: return "NotContinuousScale";
    case TSQ_NOT_INTEGER_SCALE: return "NotIntegerScale";
    case TSQ_PARSE_ERROR: return "ParseError";
    case TSQ_VALIDATION_ERROR: return "ValidationError";
    case TSQ_IO_ERROR: return "IoError";
    case TSQ_INVALID_ARGUMENT: return "InvalidArgument";
    case TSQ_UNEXPECTED: return "Unexpected";
  }
  return "Unexpected";
}

const char* tsq_last_error_message(void) { return g_last_error.c_str(); }

tsq_status tsq_scenario_parse(const char* json_text, tsq_scenario** out) {
  if (tsq_status s = require(json_text && out, "null argument")) return s;
  return guarded([&] {
    auto* handle = new tsq_scenario{tsineq::scenario_from_json(json_text)};
    *out = handle;
  });
}

tsq_status tsq_scenario_load(const char* path, tsq_scenario** out) {
  if (tsq_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    auto* handle = new tsq_scenario{tsineq::scenario_load(path)};
    *out = handle;
  });
}

tsq_status tsq_scenario_id(const tsq_scenario* scenario, char** out) {
  if (tsq_status s = require(scenario && out, "null argument")) return s;
  return guarded([&] { *out = copy_string(scenario->value.id); });
}

void tsq_scenario_free(tsq_scenario* scenario) { delete scenario; }

tsq_status tsq_run_checks(const tsq_scenario* const* scenarios, size_t count,
                          int parallelism, tsq_report** out) {
  if (tsq_status s = require(out && (count == 0 || scenarios), "null argument"))
    return s;
  if (tsq_status s = require(parallelism >= 1, "parallelism must be at least 1"))
    return s;
  return guarded([&] {
    std::vector<tsineq::Scenario> list = collect(scenarios, count);
    *out = new tsq_report{tsineq::run_suite(list, parallelism)};
  });
}

tsq_status tsq_run_identity(const tsq_scenario* const* scenarios, size_t count,
                            int parallelism, tsq_report** out) {
  if (tsq_status s = require(out && (count == 0 || scenarios), "null argument"))
    return s;
  if (tsq_status s = require(parallelism >= 1, "parallelism must be at least 1"))
    return s;
  return guarded([&] {
    std::vector<tsineq::Scenario> list = collect(scenarios, count);
    *out = new tsq_report{tsineq::run_identity(list, parallelism)};
  });
}

tsq_status tsq_run_reduction(const tsq_scenario* scenario, const char* check,
                             tsq_report** out) {
  if (tsq_status s = require(scenario && check && out, "null argument")) return s;
  return guarded([&] {
    *out = new tsq_report{tsineq::run_reduction(scenario->value, check)};
  });
}

tsq_status tsq_run_fuzz(uint64_t seed, int count, const char* profile,
                        int parallelism, tsq_report** out) {
  if (tsq_status s = require(profile && out, "null argument")) return s;
  if (tsq_status s = require(parallelism >= 1, "parallelism must be at least 1"))
    return s;
  return guarded([&] {
    std::vector<tsineq::Scenario> list =
        tsineq::generate_scenarios(seed, count, profile);
    tsineq::SuiteReport report = tsineq::run_suite(list, parallelism);
    report.summary.seed = seed;
    *out = new tsq_report{std::move(report)};
  });
}

tsq_status tsq_report_render(const tsq_report* report, const char* format,
                             char** out) {
  if (tsq_status s = require(report && format && out, "null argument")) return s;
  return guarded([&] {
    std::string rendered;
    if (std::strcmp(format, "json") == 0) {
      rendered = tsineq::report_to_ndjson(report->value);
    } else if (std::strcmp(format, "csv") == 0) {
      rendered = tsineq::report_to_csv(report->value);
    } else {
      tsineq::raise(tsineq::ErrorCode::InvalidArgument,
                    "format must be \"json\" or \"csv\"");
    }
    *out = copy_string(rendered);
  });
}

tsq_status tsq_report_summary(const tsq_report* report, int* total, int* passed,
                              int* margin_failures, int* errors,
                              double* worst_margin) {
  if (tsq_status s = require(report != nullptr, "null argument")) return s;
  const tsineq::SuiteSummary& sum = report->value.summary;
  if (total) *total = sum.total;
  if (passed) *passed = sum.passed;
  if (margin_failures) *margin_failures = sum.margin_failures;
  if (errors) *errors = sum.errors;
  if (worst_margin) *worst_margin = sum.worst_margin;
  return TSQ_OK;
}

int tsq_report_record_count(const tsq_report* report) {
  if (!report) return -1;
  return static_cast<int>(report->value.records.size());
}

int tsq_report_margin_failures(const tsq_report* report) {
  if (!report) return -1;
  return report->value.summary.margin_failures;
}

void tsq_report_free(tsq_report* report) { delete report; }

void tsq_string_free(char* text) { delete[] text; }

}  // extern "C"
