// Command-line front end for the verification engine. Talks to the core
// exclusively through the C interface in tsineq.h.
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tsineq.h"

namespace {

struct ScenarioDeleter {
  void operator()(tsq_scenario* s) const { tsq_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(tsq_report* r) const { tsq_report_free(r); }
};
using ScenarioPtr = std::unique_ptr<tsq_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<tsq_report, ReportDeleter>;

int api_failure(tsq_status status) {
  std::cerr << "error: " << tsq_status_name(status) << ": "
            << tsq_last_error_message() << "\n";
  return 2;
}

int default_parallelism() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

int load_scenarios(const std::vector<std::string>& paths,
                   std::vector<ScenarioPtr>& out) {
  for (const std::string& path : paths) {
    tsq_scenario* handle = nullptr;
    if (tsq_status st = tsq_scenario_load(path.c_str(), &handle)) {
      std::cerr << "while loading " << path << ":\n";
      return api_failure(st);
    }
    out.emplace_back(handle);
  }
  return 0;
}

// Renders the report, writes it to --out or stdout, prints the summary to
// stderr, and turns margin failures into the process exit code.
int emit_report(const tsq_report* report, const std::string& format,
                const std::string& out_path) {
  char* text = nullptr;
  if (tsq_status st = tsq_report_render(report, format.c_str(), &text)) {
    return api_failure(st);
  }
  if (out_path.empty()) {
    std::fwrite(text, 1, std::strlen(text), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      tsq_string_free(text);
      std::cerr << "error: IoError: cannot open " << out_path << " for writing\n";
      return 2;
    }
    file << text;
  }
  tsq_string_free(text);

  int total = 0, passed = 0, failures = 0, errors = 0;
  double worst = 0.0;
  tsq_report_summary(report, &total, &passed, &failures, &errors, &worst);
  std::cerr << "total=" << total << " passed=" << passed
            << " margin_failures=" << failures << " errors=" << errors
            << " worst_margin=" << worst << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of weighted trapezoid and Gruss "
               "inequalities on finite time scales"};
  app.require_subcommand(1);

  std::vector<std::string> scenario_paths;
  std::string format = "json";
  std::string out_path;
  int parallelism = default_parallelism();
  std::uint64_t seed = 0;
  int count = 0;
  std::string profile;
  std::string check;

  auto add_output_options = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write the report to this file");
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "Evaluate every check requested by one or more scenario files");
  verify->add_option("--scenario", scenario_paths, "Scenario file (repeatable)")
      ->required();
  verify->add_option("--parallelism", parallelism, "Worker threads");
  add_output_options(verify);

  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "Generate scenarios from a seed and verify the main inequalities");
  fuzz->add_option("--seed", seed, "Generator seed")->required();
  fuzz->add_option("--count", count, "Number of scenarios")->required();
  fuzz->add_option("--profile", profile, "Scale shape profile")
      ->check(CLI::IsMember({"discrete", "continuous", "mixed"}))
      ->required();
  fuzz->add_option("--parallelism", parallelism, "Worker threads");
  add_output_options(fuzz);

  CLI::App* identity = app.add_subcommand(
      "identity", "Sweep the Montgomery identity residual over window probes");
  identity->add_option("--scenario", scenario_paths, "Scenario file (repeatable)")
      ->required();
  identity->add_option("--parallelism", parallelism, "Worker threads");
  add_output_options(identity);

  CLI::App* reduce = app.add_subcommand(
      "reduce", "Check that a general inequality collapses onto its classical form");
  reduce->add_option("--check", check, "Classical target")
      ->check(CLI::IsMember({"pach1.1", "pach1.2"}))
      ->required();
  reduce->add_option("--scenario", scenario_paths, "Scenario file")->required();
  add_output_options(reduce);

  CLI11_PARSE(app, argc, argv);

  if (parallelism < 1) {
    std::cerr << "error: InvalidArgument: parallelism must be at least 1\n";
    return 2;
  }

  std::vector<ScenarioPtr> scenarios;
  if (!scenario_paths.empty()) {
    if (int rc = load_scenarios(scenario_paths, scenarios)) return rc;
  }
  std::vector<const tsq_scenario*> raw;
  raw.reserve(scenarios.size());
  for (const ScenarioPtr& s : scenarios) raw.push_back(s.get());

  tsq_report* report_handle = nullptr;
  tsq_status st = TSQ_OK;
  if (verify->parsed()) {
    st = tsq_run_checks(raw.data(), raw.size(), parallelism, &report_handle);
  } else if (fuzz->parsed()) {
    st = tsq_run_fuzz(seed, count, profile.c_str(), parallelism, &report_handle);
  } else if (identity->parsed()) {
    st = tsq_run_identity(raw.data(), raw.size(), parallelism, &report_handle);
  } else if (reduce->parsed()) {
    if (raw.size() != 1) {
      std::cerr << "error: InvalidArgument: reduce takes exactly one scenario\n";
      return 2;
    }
    st = tsq_run_reduction(raw.front(), check.c_str(), &report_handle);
  }
  if (st != TSQ_OK) return api_failure(st);

  ReportPtr report(report_handle);
  return emit_report(report.get(), format, out_path);
}
