#include "wanet/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "wanet/analysis.hpp"
#include "wanet/channel.hpp"
#include "wanet/errors.hpp"
#include "wanet/parallel.hpp"
#include "wanet/percolation.hpp"
#include "wanet/pipeline.hpp"
#include "wanet/topology.hpp"

#ifndef WANET_VERSION
#define WANET_VERSION "0.0.0"
#endif

namespace wanet {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KindName {
  ExperimentKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 7> kKindNames{{
    {ExperimentKind::kConnectivitySweep, "connectivity-sweep"},
    {ExperimentKind::kChannelConnectivity, "channel-connectivity"},
    {ExperimentKind::kCapacityScaling, "capacity-scaling"},
    {ExperimentKind::kDelayScaling, "delay-scaling"},
    {ExperimentKind::kTradeoff, "tradeoff"},
    {ExperimentKind::kRedundancy, "redundancy"},
    {ExperimentKind::kOccupancy, "occupancy"},
}};

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return out;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

template <typename T>
T read(const json& obj, const char* key, const std::string& field) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(field, e.what());
  }
}

RadiusSpec parse_radius(const json& j) {
  if (!j.is_object()) throw ConfigError("radius", "expected an object");
  reject_unknown(j, {"mode", "values", "multipliers", "min", "max", "points"}, "radius");
  const auto mode = j.contains("mode") ? read<std::string>(j, "mode", "radius.mode") : std::string("auto");
  RadiusSpec out;
  if (mode == "explicit") {
    out.mode = RadiusSpec::Mode::kExplicit;
    out.values = read<std::vector<double>>(j, "values", "radius.values");
  } else if (mode == "auto") {
    out.mode = RadiusSpec::Mode::kAuto;
    if (j.contains("multipliers")) {
      out.values = read<std::vector<double>>(j, "multipliers", "radius.multipliers");
    } else if (j.contains("min") || j.contains("max") || j.contains("points")) {
      const auto lo = read<double>(j, "min", "radius.min");
      const auto hi = read<double>(j, "max", "radius.max");
      const auto points = read<std::size_t>(j, "points", "radius.points");
      if (points == 0 || !(lo > 0.0) || hi < lo) throw ConfigError("radius", "need 0 < min <= max and points >= 1");
      out.values = linspace(lo, hi, points);
    } else {
      out.values = {kDefaultRadiusMultiplier};
    }
  } else {
    throw ConfigError("radius.mode", "expected \"explicit\" or \"auto\"");
  }
  return out;
}

MacParams parse_mac(const json& j, MacParams mac) {
  if (!j.is_object()) throw ConfigError("mac", "expected an object");
  reject_unknown(j, {"delta", "antenna", "theta", "W"}, "mac");
  if (j.contains("delta")) mac.delta = read<double>(j, "delta", "mac.delta");
  if (j.contains("antenna")) {
    const auto a = read<std::string>(j, "antenna", "mac.antenna");
    if (a == "omnidirectional")
      mac.antenna = Antenna::kOmnidirectional;
    else if (a == "directional")
      mac.antenna = Antenna::kDirectional;
    else
      throw ConfigError("mac.antenna", "expected \"omnidirectional\" or \"directional\"");
  }
  if (j.contains("theta")) {
    if (j.at("theta").is_null())
      mac.theta.reset();
    else
      mac.theta = read<double>(j, "theta", "mac.theta");
  }
  if (j.contains("W")) mac.bits_per_slot = read<double>(j, "W", "mac.W");
  return mac;
}

ChannelParams parse_channel(const json& j, ChannelParams p, std::vector<double>& alphas) {
  if (!j.is_object()) throw ConfigError("channel", "expected an object");
  reject_unknown(j, {"P_t", "P_min", "alpha", "sigma", "fading_enabled", "fading_mode", "rho0", "noise", "beta"},
                 "channel");
  if (j.contains("P_t")) p.tx_power_dbm = read<double>(j, "P_t", "channel.P_t");
  if (j.contains("P_min")) p.min_rx_power_dbm = read<double>(j, "P_min", "channel.P_min");
  if (j.contains("alpha")) {
    if (j.at("alpha").is_array())
      alphas = read<std::vector<double>>(j, "alpha", "channel.alpha");
    else
      alphas = {read<double>(j, "alpha", "channel.alpha")};
    if (alphas.empty()) throw ConfigError("channel.alpha", "needs at least one value");
    p.alpha = alphas.front();
  }
  if (j.contains("sigma")) p.sigma_db = read<double>(j, "sigma", "channel.sigma");
  if (j.contains("fading_enabled")) p.fading_enabled = read<bool>(j, "fading_enabled", "channel.fading_enabled");
  if (j.contains("fading_mode")) {
    const auto m = read<std::string>(j, "fading_mode", "channel.fading_mode");
    if (m == "db")
      p.fading_mode = FadingMode::kDecibel;
    else if (m == "literal")
      p.fading_mode = FadingMode::kLiteral;
    else
      throw ConfigError("channel.fading_mode", "expected \"db\" or \"literal\"");
  }
  if (j.contains("rho0")) p.rho0 = read<double>(j, "rho0", "channel.rho0");
  if (j.contains("noise")) p.noise = read<double>(j, "noise", "channel.noise");
  if (j.contains("beta")) p.beta = read<double>(j, "beta", "channel.beta");
  return p;
}

json radius_to_json(const RadiusSpec& r) {
  if (r.mode == RadiusSpec::Mode::kExplicit) return {{"mode", "explicit"}, {"values", r.values}};
  return {{"mode", "auto"}, {"multipliers", r.values}};
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["kind"] = std::string(to_string(cfg.kind));
  j["n_list"] = cfg.n_list;
  j["q_list"] = cfg.q_list;
  j["radius"] = radius_to_json(cfg.radius);
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  j["mac"] = {{"delta", cfg.mac.delta},
              {"antenna", cfg.mac.antenna == Antenna::kDirectional ? "directional" : "omnidirectional"},
              {"theta", cfg.mac.theta ? json(*cfg.mac.theta) : json(nullptr)},
              {"W", cfg.mac.bits_per_slot}};
  if (cfg.channel) {
    const ChannelParams& p = *cfg.channel;
    j["channel"] = {{"P_t", p.tx_power_dbm},
                    {"P_min", p.min_rx_power_dbm},
                    {"alpha", cfg.alpha_list},
                    {"sigma", p.sigma_db},
                    {"fading_enabled", p.fading_enabled},
                    {"fading_mode", p.fading_mode == FadingMode::kLiteral ? "literal" : "db"},
                    {"rho0", p.rho0},
                    {"noise", p.noise},
                    {"beta", p.beta}};
  }
  j["output_dir"] = cfg.output_dir;
  j["workers"] = cfg.workers;
  return j;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// --- per-kind runners -------------------------------------------------------

void run_connectivity(const ExperimentConfig& cfg, MetricsReport& report) {
  report.columns = {"n", "q", "radius", "radius_over_closed_form", "trials", "connectivity", "std_error",
                    "closed_form_radius", "empirical_critical_radius"};
  for (std::size_t n : cfg.n_list) {
    for (double q : cfg.q_list) {
      const std::vector<double> thr = connectivity_thresholds(n, q, cfg.trials, cfg.base_seed, cfg.workers);
      const double closed = critical_radius_closed_form(n, q);
      double r50 = kNaN;
      try {
        r50 = critical_radius_from_thresholds(thr, 0.5);
      } catch (const NumericalError& e) {
        report.notes.push_back(e.what());
      }
      for (double r : cfg.radius.resolve(n, q)) {
        const double p = empirical_connectivity(thr, r);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
        report.rows.push_back({static_cast<double>(n), q, r, r / closed, static_cast<double>(cfg.trials), p, se,
                               closed, r50});
      }
    }
  }
}

void run_channel(const ExperimentConfig& cfg, MetricsReport& report) {
  report.columns = {"n", "q", "alpha", "sigma", "radius_equivalent", "tx_power_dbm", "trials", "connectivity",
                    "std_error"};
  ChannelParams base = cfg.channel.value_or(ChannelParams{});
  const std::vector<double> alphas = cfg.alpha_list.empty() ? std::vector<double>{base.alpha} : cfg.alpha_list;
  for (std::size_t n : cfg.n_list) {
    for (double q : cfg.q_list) {
      for (double alpha : alphas) {
        ChannelParams p = base;
        p.alpha = alpha;
        const std::vector<double> thr =
            channel_connectivity_thresholds(n, q, p, cfg.trials, cfg.base_seed, cfg.workers);
        for (double r : cfg.radius.resolve(n, q)) {
          const double prob = empirical_connectivity(thr, r);
          const double se = std::sqrt(prob * (1.0 - prob) / static_cast<double>(cfg.trials));
          report.rows.push_back({static_cast<double>(n), q, alpha, p.sigma_db, r, tx_power_for_radius(p, r),
                                 static_cast<double>(cfg.trials), prob, se});
        }
      }
    }
  }
}

struct PointSummary {
  double n, q, radius;
  std::vector<TrialMetrics> trials;

  double mean(double TrialMetrics::*field) const {
    std::vector<double> v;
    for (const auto& t : trials) v.push_back(t.*field);
    return mean_of(v);
  }
  template <typename Fn>
  double mean_by(Fn&& fn) const {
    std::vector<double> v;
    for (const auto& t : trials) v.push_back(fn(t));
    return mean_of(v);
  }
  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& t : trials) f += t.routing_failures;
    return f;
  }
  std::size_t flows() const {
    std::size_t f = 0;
    for (const auto& t : trials) f += t.flows;
    return f;
  }
};

std::vector<PointSummary> run_pipeline_points(const ExperimentConfig& cfg) {
  std::vector<PointSummary> points;
  for (std::size_t n : cfg.n_list) {
    for (double q : cfg.q_list) {
      for (double r : cfg.radius.resolve(n, q)) {
        PointSummary s{static_cast<double>(n), q, r, std::vector<TrialMetrics>(cfg.trials)};
        parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
          s.trials[t] = run_trial(n, q, r, cfg.mac, SeedSpec{cfg.base_seed, t});
        });
        points.push_back(std::move(s));
      }
    }
  }
  return points;
}

void add_failure_accounting(const std::vector<PointSummary>& points, MetricsReport& report) {
  for (const auto& p : points) {
    report.routing_failures += p.failures();
    report.flows_total += p.flows();
    if (p.flows() > 0 &&
        static_cast<double>(p.failures()) / static_cast<double>(p.flows()) > kRoutingFailureLimit)
      report.failure_threshold_exceeded = true;
  }
}

void add_fit(MetricsReport& report, const std::string& name, std::string_view metric) {
  try {
    report.fits.push_back({name, fit_scaling(report, Predictor::kSurvivorsOverLogNodes, metric)});
  } catch (const InvalidParameter& e) {
    report.notes.push_back(name + ": " + e.what());
  }
}

void run_pipeline_kind(const ExperimentConfig& cfg, MetricsReport& report) {
  const std::vector<PointSummary> points = run_pipeline_points(cfg);
  add_failure_accounting(points, report);

  for (const auto& p : points) {
    const double trials = static_cast<double>(p.trials.size());
    const double capacity = p.mean(&TrialMetrics::capacity);
    const double delay = p.mean(&TrialMetrics::delay);
    const double failures = static_cast<double>(p.failures());
    switch (cfg.kind) {
      case ExperimentKind::kCapacityScaling: {
        const double max_load = p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.max_load); });
        const double load_scale = std::sqrt(p.n * (1.0 - p.q) * std::log(p.n));
        report.rows.push_back(
            {p.n, p.q, p.radius, trials,
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.cells_per_axis); }),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.clusters); }),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.flows); }),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.routed); }), failures, max_load,
             max_load / load_scale, p.mean(&TrialMetrics::rate), capacity,
             p.mean(&TrialMetrics::mean_sd_distance), capacity_scaling(p.n, p.q)});
        break;
      }
      case ExperimentKind::kDelayScaling:
        report.rows.push_back(
            {p.n, p.q, p.radius, trials, delay, delay,
             p.mean_by([](const TrialMetrics& t) {
               return t.routed ? static_cast<double>(t.rerouted) / static_cast<double>(t.routed) : 0.0;
             }),
             failures, p.mean(&TrialMetrics::mean_sd_distance), delay_scaling(p.n, p.q)});
        break;
      case ExperimentKind::kTradeoff:
        report.rows.push_back({p.n, p.q, p.radius, trials, capacity, delay, capacity / delay, failures});
        break;
      case ExperimentKind::kOccupancy: {
        const double ln_n = std::log(p.n);
        const PercolationParams perc{0.4073, p.mean_by([&](const TrialMetrics& t) { return t.occupancy.mean; }) / ln_n};
        report.rows.push_back(
            {p.n, p.q, p.radius, trials, cell_side_for_radius(p.radius),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.cells_per_axis); }),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.occupancy.min); }),
             p.mean_by([](const TrialMetrics& t) { return t.occupancy.mean; }),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.occupancy.max); }),
             p.mean_by([](const TrialMetrics& t) { return static_cast<double>(t.occupancy.empty_cells); }),
             p.mean_by([&](const TrialMetrics& t) {
               return static_cast<double>(t.occupancy.min) >= 0.1 * ln_n &&
                              static_cast<double>(t.occupancy.max) <= 10.0 * ln_n
                          ? 1.0
                          : 0.0;
             }),
             p.mean_by([](const TrialMetrics& t) { return t.strict_percolation ? 1.0 : 0.0; }),
             p.mean_by([](const TrialMetrics& t) { return t.unique_component ? 1.0 : 0.0; }), perc.c1,
             phase_threshold(static_cast<std::size_t>(p.n), perc),
             phase_condition(static_cast<std::size_t>(p.n), p.q, perc) ? 1.0 : 0.0});
        break;
      }
      default:
        break;
    }
  }

  switch (cfg.kind) {
    case ExperimentKind::kCapacityScaling:
      report.columns = {"n", "q", "radius", "trials", "cells_per_axis", "clusters", "flows", "routed_flows",
                        "routing_failures", "max_load", "normalized_max_load", "rate", "capacity",
                        "mean_sd_distance", "capacity_scaling_ref"};
      add_fit(report, "capacity_vs_n(1-q)/ln n", "capacity");
      break;
    case ExperimentKind::kDelayScaling:
      report.columns = {"n", "q", "radius", "trials", "mean_hops", "delay", "rerouted_fraction", "routing_failures",
                        "mean_sd_distance", "delay_scaling_ref"};
      add_fit(report, "delay_vs_n(1-q)/ln n", "delay");
      break;
    case ExperimentKind::kTradeoff:
      report.columns = {"n", "q", "radius", "trials", "capacity", "delay", "capacity_over_delay",
                        "routing_failures"};
      add_fit(report, "capacity_vs_n(1-q)/ln n", "capacity");
      add_fit(report, "delay_vs_n(1-q)/ln n", "delay");
      break;
    case ExperimentKind::kOccupancy:
      report.columns = {"n", "q", "radius", "trials", "cell_side", "cells_per_axis", "min_occupancy",
                        "mean_occupancy", "max_occupancy", "empty_cells", "within_log_band_fraction",
                        "strict_percolation_fraction", "unique_component_fraction", "c1_estimate",
                        "phase_threshold", "phase_condition"};
      break;
    default:
      break;
  }
}

void run_redundancy(const ExperimentConfig& cfg, MetricsReport& report) {
  report.columns = {"n", "q", "n1", "epsilon", "residual", "eta", "capacity_loss", "n1_triple", "capacity_2d",
                    "capacity_3d"};
  for (std::size_t n_count : cfg.n_list) {
    const double n = static_cast<double>(n_count);
    for (double q : cfg.q_list) {
      RedundancyResult base{0.0, 0.0, 0.0};
      if (q > 0.0) base = redundancy_to_baseline(n, q);
      const double eta = n * (1.0 - q) >= 2.0 ? capacity_loss_ratio(n, q) : kNaN;
      const RedundancyResult triple = redundancy_for_multiplier(n, q, 2.0);
      report.rows.push_back({n, q, base.n1, base.epsilon, base.residual, eta, 1.0 - eta, triple.n1,
                             capacity_scaling(n, q), capacity_scaling_3d(n, q)});
    }
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& k : kKindNames)
    if (k.kind == kind) return k.name;
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& k : kKindNames)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

const std::vector<ExperimentKind>& all_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& k : kKindNames) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

std::vector<double> RadiusSpec::resolve(std::size_t n, double q) const {
  if (mode == Mode::kExplicit) return values;
  const double base = critical_radius_closed_form(n, q);
  std::vector<double> out;
  out.reserve(values.size());
  for (double m : values) out.push_back(m * base);
  return out;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.radius = {RadiusSpec::Mode::kAuto, {kDefaultRadiusMultiplier}};
  switch (kind) {
    case ExperimentKind::kConnectivitySweep:
      cfg.n_list = {1000};
      cfg.q_list = {0.3, 0.5, 0.9};
      cfg.radius.values = linspace(0.3, 1.5, 21);
      cfg.trials = 1000;
      break;
    case ExperimentKind::kChannelConnectivity: {
      cfg.n_list = {1000};
      cfg.q_list = {0.0};
      cfg.radius.values = linspace(0.1, 1.5, 21);
      cfg.trials = 500;
      ChannelParams p;
      p.min_rx_power_dbm = -80.0;
      p.sigma_db = 5.0;
      p.fading_enabled = true;
      p.alpha = 2.5;
      cfg.channel = p;
      cfg.alpha_list = {2.5, 3.5};
      break;
    }
    case ExperimentKind::kRedundancy:
      cfg.n_list = {100, 1000, 10000, 100000};
      cfg.q_list = linspace(0.05, 0.5, 10);
      cfg.trials = 1;
      break;
    case ExperimentKind::kOccupancy:
      cfg.n_list = {500, 1000, 2000, 4000, 8000};
      cfg.q_list = {0.0, 0.2, 0.4};
      cfg.trials = 100;
      break;
    default:
      cfg.n_list = {500, 1000, 2000, 4000, 8000};
      cfg.q_list = {0.0, 0.2, 0.4};
      cfg.trials = 30;
      break;
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
  if (cfg.n_list.empty()) throw ConfigError("n_list", "must not be empty");
  if (cfg.q_list.empty()) throw ConfigError("q_list", "must not be empty");
  for (std::size_t n : cfg.n_list)
    if (n < 2) throw ConfigError("n_list", "every n must be >= 2");
  for (double q : cfg.q_list)
    if (!(q >= 0.0 && q < 1.0)) throw ConfigError("q_list", "every q must lie in [0,1)");
  if (cfg.kind == ExperimentKind::kRedundancy)
    for (std::size_t n : cfg.n_list)
      if (n < 3) throw ConfigError("n_list", "redundancy needs n >= 3");
  if (cfg.radius.values.empty()) throw ConfigError("radius", "needs at least one value");
  for (double v : cfg.radius.values)
    if (!(v > 0.0)) throw ConfigError("radius", "radii and multipliers must be positive");
  if (cfg.workers < 1) throw ConfigError("workers", "must be >= 1");
  try {
    effective_delta(cfg.mac);
  } catch (const InvalidParameter& e) {
    throw ConfigError("mac", e.what());
  }
  if (cfg.channel) {
    try {
      wanet::validate(*cfg.channel);
    } catch (const InvalidParameter& e) {
      throw ConfigError("channel", e.what());
    }
    for (double a : cfg.alpha_list)
      if (!(a > 0.0)) throw ConfigError("channel.alpha", "must be positive");
  }
  if (cfg.kind == ExperimentKind::kChannelConnectivity && !cfg.channel)
    throw ConfigError("channel", "required for channel-connectivity");
}

ExperimentConfig parse_config(std::string_view json_text, const ExperimentConfig& base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<config>", e.what());
  }
  if (!j.is_object()) throw ConfigError("<config>", "top level must be a JSON object");
  reject_unknown(j,
                 {"kind", "n_list", "q_list", "radius", "trials", "base_seed", "mac", "channel", "output_dir",
                  "workers"},
                 "");

  ExperimentConfig cfg = base;
  if (j.contains("kind")) {
    const auto name = read<std::string>(j, "kind", "kind");
    const auto kind = parse_kind(name);
    if (!kind) throw ConfigError("kind", "unknown experiment kind \"" + name + "\"");
    if (*kind != base.kind) cfg = default_config(*kind);
    cfg.kind = *kind;
  }
  if (j.contains("n_list")) cfg.n_list = read<std::vector<std::size_t>>(j, "n_list", "n_list");
  if (j.contains("q_list")) cfg.q_list = read<std::vector<double>>(j, "q_list", "q_list");
  if (j.contains("radius")) cfg.radius = parse_radius(j.at("radius"));
  if (j.contains("trials")) cfg.trials = read<std::size_t>(j, "trials", "trials");
  if (j.contains("base_seed")) cfg.base_seed = read<std::uint64_t>(j, "base_seed", "base_seed");
  if (j.contains("mac")) cfg.mac = parse_mac(j.at("mac"), cfg.mac);
  if (j.contains("channel")) {
    std::vector<double> alphas = cfg.alpha_list;
    cfg.channel = parse_channel(j.at("channel"), cfg.channel.value_or(ChannelParams{}), alphas);
    cfg.alpha_list = alphas.empty() ? std::vector<double>{cfg.channel->alpha} : alphas;
  }
  if (j.contains("output_dir")) cfg.output_dir = read<std::string>(j, "output_dir", "output_dir");
  if (j.contains("workers")) cfg.workers = read<unsigned>(j, "workers", "workers");
  validate(cfg);
  return cfg;
}

std::size_t MetricsReport::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidParameter("no column named " + std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> MetricsReport::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

MetricsReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  MetricsReport report;
  report.kind = cfg.kind;
  switch (cfg.kind) {
    case ExperimentKind::kConnectivitySweep:
      run_connectivity(cfg, report);
      break;
    case ExperimentKind::kChannelConnectivity:
      run_channel(cfg, report);
      break;
    case ExperimentKind::kRedundancy:
      run_redundancy(cfg, report);
      break;
    default:
      run_pipeline_kind(cfg, report);
      break;
  }
  return report;
}

double predictor_value(Predictor x, double n, double q) {
  switch (x) {
    case Predictor::kNodes:
      return n;
    case Predictor::kSurvivorsOverLogNodes:
      return n * (1.0 - q) / std::log(n);
  }
  return kNaN;
}

ScalingFit fit_scaling(const MetricsReport& report, Predictor x, std::string_view metric,
                       std::optional<double> only_q) {
  const std::size_t cn = report.column_index("n");
  const std::size_t cq = report.column_index("q");
  const std::size_t cy = report.column_index(metric);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : report.rows) {
    if (only_q && std::abs(row[cq] - *only_q) > 1e-12) continue;
    xs.push_back(predictor_value(x, row[cn], row[cq]));
    ys.push_back(row[cy]);
  }
  return fit_loglog(xs, ys);
}

std::string format_csv(const MetricsReport& report) {
  std::string out;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) out += ',';
    out += report.columns[c];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.9g", row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_report(const std::filesystem::path& dir, const ExperimentConfig& cfg, const MetricsReport& report,
                  std::string_view config_text, double wall_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string stem(to_string(report.kind));
  const auto csv_path = dir / (stem + ".csv");
  const auto meta_path = dir / (stem + ".meta.json");

  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoError("cannot write " + csv_path.string());
  csv << format_csv(report);
  if (!csv) throw IoError("write failed for " + csv_path.string());

  json meta;
  meta["kind"] = stem;
  meta["config"] = config_to_json(cfg);
  meta["config_text"] = std::string(config_text);
  meta["base_seed"] = cfg.base_seed;
  meta["workers"] = cfg.workers;
  meta["version"] = WANET_VERSION;
  meta["wall_time_s"] = wall_seconds;
  meta["columns"] = report.columns;
  meta["rows"] = report.rows.size();
  meta["routing_failures"] = report.routing_failures;
  meta["flows_total"] = report.flows_total;
  meta["routing_failure_limit"] = kRoutingFailureLimit;
  meta["failure_threshold_exceeded"] = report.failure_threshold_exceeded;
  meta["notes"] = report.notes;
  json fits = json::array();
  for (const auto& f : report.fits)
    fits.push_back({{"name", f.name}, {"slope", f.fit.slope}, {"intercept", f.fit.intercept}, {"r2", f.fit.r2},
                    {"points", f.fit.used}});
  meta["fits"] = fits;

  std::ofstream out(meta_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + meta_path.string());
  out << meta.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + meta_path.string());
}

}  // namespace wanet
