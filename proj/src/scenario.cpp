#include "tsineq/scenario.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "tsineq/detail/textio.hpp"
#include "tsineq/errors.hpp"

namespace tsineq {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) {
  raise(ErrorCode::ValidationError, what);
}

const json& require_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) invalid(std::string(name) + ": required field is missing");
  return *it;
}

double require_number(const json& j, const std::string& name) {
  if (!j.is_number()) invalid(name + ": must be a number");
  return j.get<double>();
}

std::string require_string(const json& j, const std::string& name) {
  if (!j.is_string()) invalid(name + ": must be a string");
  return j.get<std::string>();
}

ParamFunction parse_psi(const json& j) {
  if (!j.is_object()) invalid("psi: must be a tagged object");
  std::string kind = require_string(require_field(j, "kind"), "psi.kind");
  try {
    if (kind == "identity") return ParamFunction::identity();
    if (kind == "constant") {
      return ParamFunction::constant(
          require_number(require_field(j, "value"), "psi.value"));
    }
    if (kind == "power") {
      return ParamFunction::power(
          require_number(require_field(j, "exponent"), "psi.exponent"));
    }
    if (kind == "table") {
      const json& pts = require_field(j, "points");
      if (!pts.is_array()) invalid("psi.points: must be an array of [x, y] pairs");
      std::vector<std::pair<double, double>> knots;
      for (const json& p : pts) {
        if (!p.is_array() || p.size() != 2) {
          invalid("psi.points: must be an array of [x, y] pairs");
        }
        knots.emplace_back(require_number(p[0], "psi.points"),
                           require_number(p[1], "psi.points"));
      }
      return ParamFunction::table(std::move(knots));
    }
  } catch (const Error& e) {
    invalid(std::string("psi: ") + e.what());
  }
  invalid("psi.kind: must be one of identity, constant, power, table");
}

// Functions each check reads from the scenario.
const std::map<std::string, std::vector<std::string>>& required_functions() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"thm3.2", {"f", "w"}},   {"cor3.3", {"f", "w"}},
      {"cor3.4", {"f", "w"}},   {"cor3.5", {"f", "w"}},
      {"cor3.6", {"f", "w"}},   {"thm3.7", {"p", "q", "w"}},
      {"cor3.8", {"p", "q", "w"}}, {"cor3.9", {"p", "q", "w"}},
      {"cor3.10", {"p", "q", "w"}}, {"pach1.1", {"f"}},
      {"pach1.2", {"p", "q"}},
  };
  return table;
}

}  // namespace

bool known_theorem_id(const std::string& id) {
  return required_functions().count(id) > 0;
}

DifferentiableFn Scenario::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) {
    raise(ErrorCode::ValidationError,
          "functions." + name + ": required by a requested check but missing");
  }
  return DifferentiableFn::from_text(it->second);
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) invalid("scenario: top level must be an object");

  Scenario s;
  s.id = j.contains("id") ? require_string(j["id"], "id") : "unnamed";

  const json& ts = require_field(j, "timescale");
  if (!ts.is_array() || ts.empty()) {
    invalid("timescale: must be a non-empty array of [lo, hi] pairs");
  }
  for (const json& seg : ts) {
    if (!seg.is_array() || seg.size() != 2) {
      invalid("timescale: must be a non-empty array of [lo, hi] pairs");
    }
    s.timescale.push_back(Segment{require_number(seg[0], "timescale"),
                                  require_number(seg[1], "timescale")});
  }
  std::optional<TimeScale> scale;
  try {
    scale.emplace(TimeScale::normalize(s.timescale));
  } catch (const Error& e) {
    invalid(std::string("timescale: ") + e.what());
  }

  const json& win = require_field(j, "window");
  if (!win.is_array() || win.size() != 2) invalid("window: must be [a, b]");
  s.window_a = require_number(win[0], "window");
  s.window_b = require_number(win[1], "window");
  if (!scale->contains(s.window_a) || !scale->contains(s.window_b)) {
    invalid("window: endpoints must be points of the scale");
  }
  s.window_a = scale->snap(s.window_a);
  s.window_b = scale->snap(s.window_b);
  if (!(s.window_a < s.window_b)) invalid("window: a must be less than b");

  s.lambda = j.contains("lambda") ? require_number(j["lambda"], "lambda") : 0.0;
  if (!(s.lambda >= 0.0 && s.lambda <= 1.0)) invalid("lambda: must lie in [0, 1]");

  if (j.contains("psi")) s.psi = parse_psi(j["psi"]);

  const json& fns = require_field(j, "functions");
  if (!fns.is_object()) invalid("functions: must map names to expression strings");
  for (auto it = fns.begin(); it != fns.end(); ++it) {
    std::string body = require_string(it.value(), "functions." + it.key());
    try {
      (void)parse(body);
    } catch (const Error& e) {
      invalid("functions." + it.key() + ": " + e.what());
    }
    s.functions[it.key()] = body;
  }

  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    if (!q.is_object()) invalid("quadrature: must be an object");
    if (q.contains("panels_per_unit")) {
      double v = require_number(q["panels_per_unit"], "quadrature.panels_per_unit");
      s.quadrature.panels_per_unit = static_cast<int>(v);
    }
    if (q.contains("rule")) {
      s.quadrature.rule = require_string(q["rule"], "quadrature.rule");
    }
    if (q.contains("abs_tol")) {
      s.quadrature.abs_tol = require_number(q["abs_tol"], "quadrature.abs_tol");
    }
  }
  try {
    s.quadrature.validate();
  } catch (const Error& e) {
    invalid(std::string("quadrature: ") + e.what());
  }

  const json& checks = require_field(j, "checks");
  if (!checks.is_array() || checks.empty()) {
    invalid("checks: must be a non-empty array of theorem ids");
  }
  for (const json& c : checks) {
    std::string id = require_string(c, "checks");
    if (!known_theorem_id(id)) invalid("checks: unknown theorem id \"" + id + "\"");
    for (const std::string& fn : required_functions().at(id)) {
      if (!s.has_function(fn)) {
        invalid("functions." + fn + ": required by check \"" + id + "\" but missing");
      }
    }
    s.checks.push_back(id);
  }
  return s;
}

Scenario scenario_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  using detail::format_double;
  using detail::json_escape;
  std::string out = "{\"id\":\"" + json_escape(s.id) + "\",\"timescale\":[";
  for (std::size_t i = 0; i < s.timescale.size(); ++i) {
    if (i) out += ",";
    out += "[" + format_double(s.timescale[i].lo) + "," +
           format_double(s.timescale[i].hi) + "]";
  }
  out += "],\"window\":[" + format_double(s.window_a) + "," +
         format_double(s.window_b) + "],\"lambda\":" + format_double(s.lambda);
  out += ",\"psi\":{\"kind\":\"";
  switch (s.psi.kind()) {
    case ParamFunction::Kind::identity:
      out += "identity\"";
      break;
    case ParamFunction::Kind::constant:
      out += "constant\",\"value\":" + format_double(s.psi.parameter());
      break;
    case ParamFunction::Kind::power:
      out += "power\",\"exponent\":" + format_double(s.psi.parameter());
      break;
    case ParamFunction::Kind::table: {
      out += "table\",\"points\":[";
      const auto& knots = s.psi.knots();
      for (std::size_t i = 0; i < knots.size(); ++i) {
        if (i) out += ",";
        out += "[" + format_double(knots[i].first) + "," +
               format_double(knots[i].second) + "]";
      }
      out += "]";
      break;
    }
  }
  out += "},\"functions\":{";
  bool first = true;
  for (const auto& [name, body] : s.functions) {
    if (!first) out += ",";
    first = false;
    out += "\"" + json_escape(name) + "\":\"" + json_escape(body) + "\"";
  }
  out += "},\"quadrature\":{\"panels_per_unit\":" +
         std::to_string(s.quadrature.panels_per_unit) + ",\"rule\":\"" +
         json_escape(s.quadrature.rule) +
         "\",\"abs_tol\":" + format_double(s.quadrature.abs_tol) + "}";
  out += ",\"checks\":[";
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    if (i) out += ",";
    out += "\"" + json_escape(s.checks[i]) + "\"";
  }
  out += "]}";
  return out;
}

}  // namespace tsineq
