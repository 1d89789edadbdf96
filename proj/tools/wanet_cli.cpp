// Command-line front end: one subcommand per experiment kind.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wanet/errors.hpp"
#include "wanet/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kIo = 1, kConfig = 2, kRunFailure = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wanet::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(wanet::ExperimentKind kind, const std::string& config_path, std::optional<std::uint64_t> seed,
        std::optional<unsigned> workers, std::optional<std::string> out_dir, bool quiet) {
  std::string config_text;
  wanet::ExperimentConfig cfg = wanet::default_config(kind);
  try {
    if (!config_path.empty()) {
      config_text = read_file(config_path);
      cfg = wanet::parse_config(config_text, cfg);
      if (cfg.kind != kind) {
        std::cerr << "config error: kind: file says " << wanet::to_string(cfg.kind) << " but subcommand is "
                  << wanet::to_string(kind) << '\n';
        return kConfig;
      }
    }
    if (seed) cfg.base_seed = *seed;
    if (workers) cfg.workers = *workers;
    if (out_dir) cfg.output_dir = *out_dir;
    wanet::validate(cfg);
  } catch (const wanet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const wanet::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  }

  wanet::MetricsReport report;
  const auto start = std::chrono::steady_clock::now();
  try {
    report = wanet::run_experiment(cfg);
  } catch (const wanet::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const wanet::NumericalError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kRunFailure;
  } catch (const wanet::UndefinedRate& e) {
    std::cerr << "undefined rate: " << e.what() << '\n';
    return kRunFailure;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    wanet::write_report(cfg.output_dir, cfg, report, config_text, wall);
  } catch (const wanet::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  }

  if (!quiet) {
    std::cout << wanet::format_csv(report);
    for (const auto& f : report.fits)
      std::printf("fit %s: slope=%.4f r2=%.4f points=%zu\n", f.name.c_str(), f.fit.slope, f.fit.r2, f.fit.used);
  }
  for (const auto& note : report.notes) std::cerr << "note: " << note << '\n';
  if (report.failure_threshold_exceeded) {
    std::cerr << "routing failures: " << report.routing_failures << " of " << report.flows_total
              << " flows, above the " << wanet::kRoutingFailureLimit * 100.0 << "% limit\n";
    return kRunFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless ad hoc network simulator with node failures"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out_dir;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Base seed (overrides the config)");
  app.add_option("--workers", workers, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_flag("-q,--quiet", quiet, "Do not echo the CSV to stdout");

  std::optional<wanet::ExperimentKind> chosen;
  for (auto kind : wanet::all_kinds()) {
    auto* sub = app.add_subcommand(std::string(wanet::to_string(kind)));
    sub->fallthrough();
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  return run(*chosen, config_path, seed, workers, out_dir, quiet);
}
