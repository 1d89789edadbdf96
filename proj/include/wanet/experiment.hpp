#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wanet/channel.hpp"
#include "wanet/mac.hpp"
#include "wanet/stats.hpp"

namespace wanet {

enum class ExperimentKind {
  kConnectivitySweep,
  kChannelConnectivity,
  kCapacityScaling,
  kDelayScaling,
  kTradeoff,
  kRedundancy,
  kOccupancy,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);
const std::vector<ExperimentKind>& all_kinds();

/// Invalid experiment configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radii to evaluate at each (n, q): explicit values, or multiples of the
/// closed-form critical radius.
struct RadiusSpec {
  enum class Mode { kExplicit, kAuto };
  Mode mode = Mode::kAuto;
  std::vector<double> values;  // explicit radii, or multipliers in auto mode

  std::vector<double> resolve(std::size_t n, double q) const;
};

inline constexpr double kDefaultRadiusMultiplier = 1.2;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kCapacityScaling;
  std::vector<std::size_t> n_list;
  std::vector<double> q_list;
  RadiusSpec radius;
  std::size_t trials = 1;
  std::uint64_t base_seed = 1;
  MacParams mac;
  std::optional<ChannelParams> channel;
  std::vector<double> alpha_list;  // channel path-loss exponents to sweep
  std::string output_dir = ".";
  unsigned workers = 1;
};

/// Default sweep for each kind.
ExperimentConfig default_config(ExperimentKind kind);

/// Parses a JSON object whose keys mirror ExperimentConfig. Keys not present
/// keep the values of `base`; unknown keys throw ConfigError.
ExperimentConfig parse_config(std::string_view json_text, const ExperimentConfig& base);

/// Re-validates a config assembled in code. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

struct NamedFit {
  std::string name;
  ScalingFit fit;
};

/// One row per parameter tuple, numeric columns only.
struct MetricsReport {
  ExperimentKind kind = ExperimentKind::kCapacityScaling;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<NamedFit> fits;
  std::size_t routing_failures = 0;
  std::size_t flows_total = 0;
  bool failure_threshold_exceeded = false;
  std::vector<std::string> notes;

  std::size_t column_index(std::string_view name) const;
  double at(std::size_t row, std::string_view column) const { return rows[row][column_index(column)]; }
  std::vector<double> column(std::string_view name) const;
};

/// Routing-failure fraction above which a run is flagged (exit code 3).
inline constexpr double kRoutingFailureLimit = 0.05;

/// Runs every parameter tuple. Output is a pure function of the config; the
/// worker count only changes wall time.
MetricsReport run_experiment(const ExperimentConfig& cfg);

enum class Predictor {
  kNodes,                 // n
  kSurvivorsOverLogNodes, // n (1-q) / ln n
};

double predictor_value(Predictor x, double n, double q);

/// Log-log OLS of `metric` against the predictor over the report rows,
/// optionally restricted to one failure probability.
ScalingFit fit_scaling(const MetricsReport& report, Predictor x, std::string_view metric,
                       std::optional<double> only_q = std::nullopt);

/// CSV text: header plus one line per row, values printed with %.9g.
std::string format_csv(const MetricsReport& report);

/// Writes <kind>.csv and <kind>.meta.json under dir. Throws IoError.
void write_report(const std::filesystem::path& dir, const ExperimentConfig& cfg, const MetricsReport& report,
                  std::string_view config_text, double wall_seconds);

}  // namespace wanet
