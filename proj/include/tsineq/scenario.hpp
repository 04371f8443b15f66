#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsineq/calculus.hpp"
#include "tsineq/funcdsl.hpp"
#include "tsineq/timescale.hpp"

namespace tsineq {

/// One complete verification instance as described by a scenario file:
/// the scale, the window, the functions, the parameters, and the list of
/// checks to run against them.
struct Scenario {
  std::string id;
  std::vector<Segment> timescale;  // raw [lo, hi] pairs, normalized on build
  double window_a = 0.0;
  double window_b = 0.0;
  std::map<std::string, std::string> functions;  // name -> expression text
  double lambda = 0.0;
  ParamFunction psi = ParamFunction::identity();
  QuadratureConfig quadrature;
  std::vector<std::string> checks;  // theorem ids

  TimeScale build_scale() const { return TimeScale::normalize(timescale); }
  bool has_function(const std::string& name) const {
    return functions.find(name) != functions.end();
  }
  /// Parses the named expression; ValidationError when absent.
  DifferentiableFn function(const std::string& name) const;
};

/// Fixed vocabulary accepted in a scenario's checks list.
bool known_theorem_id(const std::string& id);

/// Parse and validate scenario JSON text. Throws ParseError (malformed
/// JSON) or ValidationError naming the offending field.
Scenario scenario_from_json(const std::string& text);

/// Read a scenario file. Throws IoError when unreadable, then as above.
Scenario scenario_load(const std::string& path);

/// Serialize back to JSON (deterministic field order and float text).
std::string scenario_to_json(const Scenario& s);

}  // namespace tsineq
