#include "tsineq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "tsineq/detail/textio.hpp"
#include "tsineq/errors.hpp"
#include "tsineq/kernel.hpp"

namespace tsineq {

namespace {

// Deterministic uniform source. The raw engine is standardized; the
// mappings below avoid std::uniform_* distributions, whose outputs vary
// across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive bounds
    int span = hi - lo + 1;
    int k = static_cast<int>(uniform() * span);
    return lo + std::min(k, span - 1);
  }

 private:
  std::mt19937_64 eng_;
};

std::string num(double v) { return detail::format_double(v); }

std::string poly_text(Rng& rng) {
  int degree = rng.integer(1, 4);
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= degree; ++k) {
    double c = rng.uniform(-2.0, 2.0);
    if (k == degree && std::abs(c) < 0.1) c = c < 0.0 ? -0.5 : 0.5;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << num(c);
    } else if (k == 1) {
      os << num(c) << " * t";
    } else {
      os << num(c) << " * t^" << k;
    }
  }
  return os.str();
}

std::string catalog_function(Rng& rng) {
  switch (rng.integer(0, 3)) {
    case 0:
    case 1:
      return poly_text(rng);
    case 2:
      return "sin(" + num(rng.uniform(0.1, 1.0)) + " * t)";
    default:
      return "exp(" + num(rng.uniform(0.1, 1.0)) + " * t)";
  }
}

std::string catalog_weight(Rng& rng) {
  switch (rng.integer(0, 2)) {
    case 0:
      return "t";
    case 1:
      return "t + t^3 / 10";
    default:
      return "exp(t / 4)";
  }
}

ParamFunction catalog_psi(Rng& rng) {
  switch (rng.integer(0, 3)) {
    case 0:
      return ParamFunction::identity();
    case 1:
      return ParamFunction::constant(rng.uniform(0.0, 1.0));
    case 2:
      return ParamFunction::power(rng.uniform(0.5, 3.0));
    default: {
      double u = rng.uniform(0.2, 0.8);
      double v = rng.uniform(0.0, 1.0);
      return ParamFunction::table({{0.0, 0.0}, {u, v}, {1.0, 1.0}});
    }
  }
}

Scenario generate_one(Rng& rng, const std::string& profile, std::uint64_t seed,
                      int index) {
  Scenario s;
  {
    std::ostringstream id;
    id << profile << "-" << seed << "-" << index;
    s.id = id.str();
  }

  if (profile == "discrete") {
    int n = rng.integer(3, 12);
    double t0 = rng.integer(-3, 3);
    for (int i = 0; i < n; ++i) {
      s.timescale.push_back({t0 + i, t0 + i});
    }
    s.window_a = t0;
    s.window_b = t0 + (n - 2);  // spare point keeps sigma^2 inside the scale
  } else if (profile == "continuous") {
    double x0 = rng.uniform(-2.0, 2.0);
    double len = rng.uniform(0.5, 4.0);
    s.timescale.push_back({x0, x0 + len});
    s.window_a = x0;
    s.window_b = x0 + len;
  } else if (profile == "mixed") {
    int n_seg = rng.integer(1, 3);
    int n_iso = rng.integer(0, 4);
    if (n_seg + n_iso < 3) n_iso = 3 - n_seg;
    std::vector<int> types(static_cast<std::size_t>(n_seg), 0);
    types.insert(types.end(), static_cast<std::size_t>(n_iso), 1);
    for (std::size_t i = types.size(); i > 1; --i) {  // Fisher-Yates
      std::size_t j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(i) - 1));
      std::swap(types[i - 1], types[j]);
    }
    // The leading piece is always a run, so the window exercises quadrature.
    auto first_seg = std::find(types.begin(), types.end(), 0);
    std::iter_swap(types.begin(), first_seg);

    double cursor = rng.uniform(-2.0, 2.0);
    std::vector<double> piece_end;
    for (int type : types) {
      if (type == 0) {
        double len = rng.uniform(0.5, 2.0);
        s.timescale.push_back({cursor, cursor + len});
        cursor += len;
      } else {
        s.timescale.push_back({cursor, cursor});
      }
      piece_end.push_back(cursor);
      cursor += rng.uniform(0.25, 1.0);
    }
    s.window_a = s.timescale.front().lo;
    s.window_b = piece_end[piece_end.size() - 2];  // one spare piece
  } else {
    raise(ErrorCode::InvalidArgument,
          "profile must be one of discrete, continuous, mixed");
  }

  s.functions["f"] = catalog_function(rng);
  s.functions["p"] = catalog_function(rng);
  s.functions["q"] = catalog_function(rng);
  s.functions["w"] = catalog_weight(rng);
  s.lambda = rng.uniform(0.0, 1.0);
  s.psi = catalog_psi(rng);
  s.checks = {"thm3.2", "thm3.7"};
  return s;
}

}  // namespace

std::vector<Scenario> generate_scenarios(std::uint64_t seed, int count,
                                         const std::string& profile) {
  if (count < 1) raise(ErrorCode::InvalidArgument, "count must be at least 1");
  if (profile != "discrete" && profile != "continuous" && profile != "mixed") {
    raise(ErrorCode::InvalidArgument,
          "profile must be one of discrete, continuous, mixed");
  }
  Rng rng(seed);
  std::vector<Scenario> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(generate_one(rng, profile, seed, i));
  }
  return out;
}

namespace {

template <typename Task>
void parallel_for(int n, int parallelism, Task task) {
  if (parallelism <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  int workers = std::min(parallelism, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

SuiteRecord error_record(const Scenario& s, const std::string& theorem_id,
                         const std::exception& e) {
  SuiteRecord rec;
  rec.kind = SuiteRecord::Kind::error;
  rec.scenario_id = s.id;
  rec.theorem_id = theorem_id;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    rec.error_code = error_code_name(err->code());
  } else {
    rec.error_code = "Unexpected";
  }
  rec.error_message = e.what();
  return rec;
}

SuiteRecord run_one_check(const Scenario& s, const std::string& check) {
  SuiteRecord rec;
  rec.scenario_id = s.id;
  rec.theorem_id = check;
  try {
    TimeScale T = s.build_scale();
    const QuadratureConfig& cfg = s.quadrature;
    if (check == "pach1.1") {
      rec.report = pachpatte_trapezoid(T, s.window_a, s.window_b, s.function("f"), cfg);
    } else if (check == "pach1.2") {
      rec.report = pachpatte_gruss(T, s.window_a, s.window_b, s.function("p"),
                                   s.function("q"), cfg);
    } else {
      KernelParams kp = KernelParams::make(T, s.window_a, s.window_b, s.lambda,
                                           s.psi, WeightPair{s.function("w")});
      if (check == "thm3.2") {
        rec.report = verify_trapezoid(kp, T, s.function("f"), cfg);
      } else if (check == "cor3.3") {
        rec.report = verify_trapezoid_continuous(kp, T, s.function("f"), cfg);
      } else if (check == "cor3.4") {
        rec.report = verify_trapezoid_unit_weight(kp, T, s.function("f"), cfg);
      } else if (check == "cor3.5") {
        rec.report = verify_trapezoid_linear_param(kp, T, s.function("f"), cfg);
      } else if (check == "cor3.6") {
        rec.report = verify_trapezoid_integer(kp, T, s.function("f"), cfg);
      } else if (check == "thm3.7") {
        rec.report = verify_gruss(kp, T, s.function("p"), s.function("q"), cfg);
      } else if (check == "cor3.8") {
        rec.report = verify_gruss_continuous(kp, T, s.function("p"), s.function("q"), cfg);
      } else if (check == "cor3.9") {
        rec.report = verify_gruss_integer(kp, T, s.function("p"), s.function("q"), cfg);
      } else if (check == "cor3.10") {
        rec.report = verify_gruss_classic(kp, T, s.function("p"), s.function("q"), cfg);
      } else {
        raise(ErrorCode::ValidationError, "checks: unknown theorem id \"" + check + "\"");
      }
    }
    rec.kind = SuiteRecord::Kind::inequality;
  } catch (const std::exception& e) {
    rec = error_record(s, check, e);
  }
  return rec;
}

void summarize(SuiteReport& r) {
  SuiteSummary& sum = r.summary;
  sum.total = static_cast<int>(r.records.size());
  sum.passed = 0;
  sum.margin_failures = 0;
  sum.errors = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const SuiteRecord& rec : r.records) {
    switch (rec.kind) {
      case SuiteRecord::Kind::inequality:
        if (rec.report.pass) {
          ++sum.passed;
        } else {
          ++sum.margin_failures;
        }
        worst = std::min(worst, rec.report.margin);
        break;
      case SuiteRecord::Kind::identity:
        if (rec.residual.pass) {
          ++sum.passed;
        } else {
          ++sum.margin_failures;
        }
        break;
      case SuiteRecord::Kind::error:
        ++sum.errors;
        break;
    }
  }
  sum.worst_margin = std::isfinite(worst) ? worst : 0.0;
}

}  // namespace

SuiteReport run_suite(const std::vector<Scenario>& scenarios, int parallelism) {
  std::vector<std::pair<const Scenario*, std::string>> tasks;
  for (const Scenario& s : scenarios) {
    for (const std::string& check : s.checks) {
      tasks.emplace_back(&s, check);
    }
  }
  SuiteReport report;
  report.records.resize(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), parallelism, [&](int i) {
    report.records[static_cast<std::size_t>(i)] =
        run_one_check(*tasks[static_cast<std::size_t>(i)].first,
                      tasks[static_cast<std::size_t>(i)].second);
  });
  summarize(report);
  return report;
}

SuiteReport run_identity(const std::vector<Scenario>& scenarios, int parallelism) {
  SuiteReport report;
  report.records.resize(scenarios.size());
  parallel_for(static_cast<int>(scenarios.size()), parallelism, [&](int i) {
    const Scenario& s = scenarios[static_cast<std::size_t>(i)];
    SuiteRecord rec;
    rec.scenario_id = s.id;
    rec.theorem_id = "lemma3.1";
    try {
      TimeScale T = s.build_scale();
      KernelParams kp = KernelParams::make(T, s.window_a, s.window_b, s.lambda,
                                           s.psi, WeightPair{s.function("w")});
      DifferentiableFn f = s.function("f");
      std::vector<double> probes = identity_probes(T, s.window_a, s.window_b);
      bool first = true;
      double worst_excess = 0.0;
      for (double t : probes) {
        IdentityResidual probe = montgomery_residual(kp, T, f, t, s.quadrature);
        double excess = std::abs(probe.residual) - probe.tolerance;
        if (first || excess > worst_excess) {
          rec.residual = probe;
          worst_excess = excess;
          first = false;
        }
      }
      rec.probe_count = static_cast<int>(probes.size());
      rec.kind = SuiteRecord::Kind::identity;
    } catch (const std::exception& e) {
      rec = error_record(s, "lemma3.1", e);
    }
    report.records[static_cast<std::size_t>(i)] = rec;
  });
  summarize(report);
  return report;
}

SuiteReport run_reduction(const Scenario& s, const std::string& check) {
  SuiteReport report;
  auto add_coherence = [&](const InequalityReport& general,
                           const InequalityReport& baseline, double factor) {
    SuiteRecord rec;
    rec.kind = SuiteRecord::Kind::inequality;
    rec.scenario_id = s.id;
    rec.theorem_id = check;
    double lhs_dev = std::abs(general.lhs - factor * baseline.lhs);
    double rhs_dev = std::abs(general.rhs - factor * baseline.rhs);
    InequalityReport& c = rec.report;
    c.theorem_id = check;
    c.lhs = std::max(lhs_dev, rhs_dev);  // worst deviation from the assembly
    c.rhs = 10.0 * s.quadrature.abs_tol;
    c.margin = c.rhs - c.lhs;
    c.slack = 0.0;
    c.pass = c.margin >= 0.0;
    c.components = {{"reduction", 1.0},
                    {"assembly_factor", factor},
                    {"lhs_general", general.lhs},
                    {"rhs_general", general.rhs},
                    {"lhs_baseline", baseline.lhs},
                    {"rhs_baseline", baseline.rhs},
                    {"lhs_dev", lhs_dev},
                    {"rhs_dev", rhs_dev}};
    report.records.push_back(std::move(rec));
  };

  try {
    if (check != "pach1.1" && check != "pach1.2") {
      raise(ErrorCode::InvalidArgument, "reduction check must be pach1.1 or pach1.2");
    }
    if (s.lambda != 0.0) {
      raise(ErrorCode::ValidationError, "lambda: reduction requires lambda = 0");
    }
    if (s.psi.kind() != ParamFunction::Kind::identity) {
      raise(ErrorCode::ValidationError, "psi: reduction requires the identity map");
    }
    TimeScale T = s.build_scale();
    KernelParams kp = KernelParams::make(T, s.window_a, s.window_b, s.lambda, s.psi,
                                         WeightPair{s.function("w")});
    double span = kp.b - kp.a;
    if (check == "pach1.1") {
      InequalityReport baseline =
          pachpatte_trapezoid(T, kp.a, kp.b, s.function("f"), s.quadrature);
      InequalityReport general = verify_trapezoid(kp, T, s.function("f"), s.quadrature);
      SuiteRecord base_rec, gen_rec;
      base_rec.kind = gen_rec.kind = SuiteRecord::Kind::inequality;
      base_rec.scenario_id = gen_rec.scenario_id = s.id;
      base_rec.theorem_id = baseline.theorem_id;
      gen_rec.theorem_id = general.theorem_id;
      base_rec.report = baseline;
      gen_rec.report = general;
      report.records.push_back(std::move(base_rec));
      report.records.push_back(std::move(gen_rec));
      add_coherence(general, baseline, 2.0);
    } else {
      InequalityReport baseline = pachpatte_gruss(T, kp.a, kp.b, s.function("p"),
                                                  s.function("q"), s.quadrature);
      InequalityReport general =
          verify_gruss_classic(kp, T, s.function("p"), s.function("q"), s.quadrature);
      SuiteRecord base_rec, gen_rec;
      base_rec.kind = gen_rec.kind = SuiteRecord::Kind::inequality;
      base_rec.scenario_id = gen_rec.scenario_id = s.id;
      base_rec.theorem_id = baseline.theorem_id;
      gen_rec.theorem_id = general.theorem_id;
      base_rec.report = baseline;
      gen_rec.report = general;
      report.records.push_back(std::move(base_rec));
      report.records.push_back(std::move(gen_rec));
      add_coherence(general, baseline, 2.0 * span * span);
    }
  } catch (const std::exception& e) {
    report.records.push_back(error_record(s, check, e));
  }
  summarize(report);
  return report;
}

namespace {

void append_record_json(std::string& out, const SuiteRecord& rec) {
  using detail::format_double;
  using detail::json_escape;
  out += "{\"kind\":\"";
  switch (rec.kind) {
    case SuiteRecord::Kind::inequality: out += "inequality"; break;
    case SuiteRecord::Kind::identity: out += "identity"; break;
    case SuiteRecord::Kind::error: out += "error"; break;
  }
  out += "\",\"scenario\":\"" + json_escape(rec.scenario_id) + "\",\"theorem\":\"" +
         json_escape(rec.theorem_id) + "\"";
  switch (rec.kind) {
    case SuiteRecord::Kind::inequality: {
      const InequalityReport& r = rec.report;
      out += ",\"lhs\":" + format_double(r.lhs) + ",\"rhs\":" + format_double(r.rhs) +
             ",\"margin\":" + format_double(r.margin) +
             ",\"slack\":" + format_double(r.slack) +
             ",\"pass\":" + (r.pass ? "true" : "false") + ",\"components\":{";
      bool first = true;
      for (const auto& [k, v] : r.components) {
        if (!first) out += ",";
        first = false;
        out += "\"" + json_escape(k) + "\":" + format_double(v);
      }
      out += "}";
      break;
    }
    case SuiteRecord::Kind::identity: {
      const IdentityResidual& r = rec.residual;
      out += ",\"t\":" + format_double(r.t) + ",\"lhs\":" + format_double(r.lhs) +
             ",\"kernel_part\":" + format_double(r.rhs_kernel_part) +
             ",\"sigma_part\":" + format_double(r.rhs_sigma_part) +
             ",\"residual\":" + format_double(r.residual) +
             ",\"tolerance\":" + format_double(r.tolerance) +
             ",\"discrete\":" + (r.discrete ? "true" : "false") +
             ",\"pass\":" + (r.pass ? "true" : "false") +
             ",\"probes\":" + std::to_string(rec.probe_count);
      break;
    }
    case SuiteRecord::Kind::error: {
      out += ",\"error\":\"" + json_escape(rec.error_code) + "\",\"message\":\"" +
             json_escape(rec.error_message) + "\"";
      break;
    }
  }
  out += "}\n";
}

}  // namespace

std::string report_to_ndjson(const SuiteReport& r) {
  std::string out;
  for (const SuiteRecord& rec : r.records) append_record_json(out, rec);
  out += "{\"kind\":\"summary\",\"total\":" + std::to_string(r.summary.total) +
         ",\"passed\":" + std::to_string(r.summary.passed) +
         ",\"margin_failures\":" + std::to_string(r.summary.margin_failures) +
         ",\"errors\":" + std::to_string(r.summary.errors) +
         ",\"worst_margin\":" + detail::format_double(r.summary.worst_margin) +
         ",\"seed\":" + std::to_string(r.summary.seed) + "}\n";
  return out;
}

std::string report_to_csv(const SuiteReport& r) {
  using detail::format_double;
  std::string out = "scenario,theorem,kind,lhs,rhs,margin,slack,pass,error\n";
  for (const SuiteRecord& rec : r.records) {
    out += rec.scenario_id + "," + rec.theorem_id + ",";
    switch (rec.kind) {
      case SuiteRecord::Kind::inequality:
        out += "inequality," + format_double(rec.report.lhs) + "," +
               format_double(rec.report.rhs) + "," + format_double(rec.report.margin) +
               "," + format_double(rec.report.slack) + "," +
               (rec.report.pass ? "true" : "false") + ",";
        break;
      case SuiteRecord::Kind::identity:
        out += "identity," + format_double(rec.residual.lhs) + ",," +
               format_double(rec.residual.residual) + "," +
               format_double(rec.residual.tolerance) + "," +
               (rec.residual.pass ? "true" : "false") + ",";
        break;
      case SuiteRecord::Kind::error:
        out += "error,,,,,," + rec.error_code;
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace tsineq
