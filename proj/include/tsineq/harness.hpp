#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsineq/identity.hpp"
#include "tsineq/inequality.hpp"
#include "tsineq/scenario.hpp"

namespace tsineq {

/// One row of a suite: a verified inequality, the worst probe of an
/// identity sweep, or an error captured as data (hypothesis gaps such as
/// ShiftNotInScale land here rather than aborting the suite).
struct SuiteRecord {
  enum class Kind { inequality, identity, error };
  Kind kind = Kind::inequality;
  std::string scenario_id;
  std::string theorem_id;

  InequalityReport report;    // kind == inequality
  IdentityResidual residual;  // kind == identity: worst probe of the sweep
  int probe_count = 0;        // kind == identity

  std::string error_code;  // kind == error
  std::string error_message;
};

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  int margin_failures = 0;  // genuine pass=false verdicts
  int errors = 0;           // records that ended in an error state
  double worst_margin = 0.0;  // smallest inequality margin seen
  std::uint64_t seed = 0;     // generator seed, 0 for file-driven suites
};

struct SuiteReport {
  std::vector<SuiteRecord> records;
  SuiteSummary summary;
};

/// Deterministic scenario generation. Profiles:
///   discrete   3-12 unit-spaced isolated points;
///   continuous one run of length 0.5-4;
///   mixed      1-3 runs plus 0-4 isolated points (at least three pieces,
///              the first always a run), window ending one piece early so
///              every sigma^2 lookup stays inside the scale.
/// Functions come from a catalog of polynomials (degree <= 4, coefficients
/// in [-2, 2]), sin(ct), exp(ct) with c in (0, 1]; the weight from
/// {t, t + t^3/10, exp(t/4)}; lambda uniform; psi uniform over its catalog.
std::vector<Scenario> generate_scenarios(std::uint64_t seed, int count,
                                         const std::string& profile);

/// Every (scenario, check) pair evaluated, failures isolated per record,
/// record order independent of parallelism.
SuiteReport run_suite(const std::vector<Scenario>& scenarios, int parallelism);

/// Montgomery residual sweep: each scenario contributes one record holding
/// its worst probe.
SuiteReport run_identity(const std::vector<Scenario>& scenarios, int parallelism);

/// Reduction coherence against the classical baselines. check selects
/// "pach1.1" (general trapezoid = 2x baseline on the plain continuous
/// setup) or "pach1.2" (classic Gruss form = 2(b-a)^2 x baseline).
/// Emits the baseline record, the general record, and a coherence record
/// whose lhs is the worst deviation.
SuiteReport run_reduction(const Scenario& s, const std::string& check);

/// Newline-delimited JSON: one object per record plus a trailing summary
/// object; floats printed with 17 significant digits for byte stability.
std::string report_to_ndjson(const SuiteReport& r);

/// Header + one row per record: scenario, theorem, kind, lhs, rhs, margin,
/// slack, pass, error.
std::string report_to_csv(const SuiteReport& r);

}  // namespace tsineq
