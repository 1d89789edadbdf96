// Acceptance checks. Run with no arguments for all criteria, or
// `--criterion N` for one. Prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wanet/analysis.hpp"
#include "wanet/channel.hpp"
#include "wanet/experiment.hpp"
#include "wanet/mac.hpp"
#include "wanet/stats.hpp"
#include "wanet/topology.hpp"

using namespace wanet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

std::vector<std::size_t> rows_where(const MetricsReport& r, double n, double q) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    if (near(r.at(i, "n"), n) && near(r.at(i, "q"), q)) out.push_back(i);
  return out;
}

// --- 1: connectivity phase transition ---------------------------------------
constexpr double kCurveLow = 0.05;
constexpr double kCurveHigh = 0.95;
constexpr double kRatioTolerance = 0.15;

Outcome criterion1() {
  ExperimentConfig cfg = default_config(ExperimentKind::kConnectivitySweep);
  cfg.n_list = {1000};
  cfg.q_list = {0.3, 0.5, 0.9};
  cfg.trials = 1000;
  cfg.radius = {RadiusSpec::Mode::kAuto, {}};
  for (int i = 0; i < 21; ++i) cfg.radius.values.push_back(0.3 + 0.06 * i);
  const MetricsReport r = run_experiment(cfg);

  bool ok = true;
  std::string detail;
  for (double q : cfg.q_list) {
    const auto rows = rows_where(r, 1000, q);
    const double first = r.at(rows.front(), "connectivity");
    const double last = r.at(rows.back(), "connectivity");
    bool monotone = true;
    for (std::size_t k = 1; k < rows.size(); ++k)
      monotone = monotone && r.at(rows[k], "connectivity") >= r.at(rows[k - 1], "connectivity");
    ok = ok && first < kCurveLow && last > kCurveHigh && monotone && rows.size() >= 21;
    detail += fmt("q=%.1f rises %.3f->%.3f; ", q, first, last);
  }
  const double r03 = r.at(rows_where(r, 1000, 0.3).front(), "empirical_critical_radius");
  const double r09 = r.at(rows_where(r, 1000, 0.9).front(), "empirical_critical_radius");
  const double target = std::sqrt(0.7 / 0.1);
  const double ratio = r09 / r03;
  ok = ok && std::abs(ratio / target - 1.0) <= kRatioTolerance;
  detail += fmt("r50 ratio %.4f vs %.4f (+-15%%)", ratio, target);
  return {ok, detail};
}

// --- 2: capacity loss numbers -----------------------------------------------
constexpr double kLossTolerance = 0.01;

Outcome criterion2() {
  const double expected[] = {0.24, 0.15, 0.11};
  const double ns[] = {100, 1000, 10000};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const double loss = 1.0 - capacity_loss_ratio(ns[i], 0.85);
    ok = ok && std::abs(loss - expected[i]) <= kLossTolerance;
    detail += fmt("n=%g loss %.2f%% (want %.0f%%); ", ns[i], 100 * loss, 100 * expected[i]);
  }
  return {ok, detail};
}

// --- 3: redundancy ----------------------------------------------------------
constexpr double kResidualLimit = 1e-6;
constexpr double kTripleReference = 8780.0;  // solver value, natural log
constexpr double kTripleTolerance = 5.0;

Outcome criterion3() {
  const MetricsReport r = run_experiment(default_config(ExperimentKind::kRedundancy));
  bool all_above = true;
  double worst_residual = 0.0;
  double min_eps = INFINITY;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    all_above = all_above && r.at(i, "epsilon") > 1.0;
    min_eps = std::min(min_eps, r.at(i, "epsilon"));
    worst_residual = std::max(worst_residual, std::abs(r.at(i, "residual")));
  }
  bool dec_q = true;
  std::vector<double> eps_q;
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    if (near(r.at(i, "n"), 1000)) eps_q.push_back(r.at(i, "epsilon"));
  for (std::size_t k = 1; k < eps_q.size(); ++k) dec_q = dec_q && eps_q[k] < eps_q[k - 1];

  bool dec_n = true;
  double prev = INFINITY;
  for (double n : {100.0, 1e3, 1e4, 1e5}) {
    const auto rows = rows_where(r, n, 0.2);
    if (rows.size() != 1) return {false, "missing q=0.2 row"};
    const double e = r.at(rows[0], "epsilon");
    dec_n = dec_n && e < prev;
    prev = e;
  }
  const double triple = r.at(rows_where(r, 1000, 0.2).front(), "n1_triple");
  const bool triple_ok = std::abs(triple - kTripleReference) <= kTripleTolerance;
  const bool ok = all_above && dec_q && dec_n && worst_residual < kResidualLimit && triple_ok && eps_q.size() == 10 &&
                  r.rows.size() == 40;
  return {ok, fmt("min eps %.4f over %zu points, eps(1000,q) decreasing=%d, eps(n,0.2) decreasing=%d, "
                  "max residual %.2e, n1(3x capacity)=%.1f",
                  min_eps, r.rows.size(), dec_q, dec_n, worst_residual, triple)};
}

// --- 4-6: pipeline sweep ----------------------------------------------------
constexpr double kSlopeLow = 0.4;
constexpr double kSlopeHigh = 0.6;
constexpr double kMinR2 = 0.9;
constexpr double kFailureRatioTolerance = 0.25;
constexpr double kTradeoffSpread = 2.0;
constexpr double kLoadBand = 3.0;

ExperimentConfig sweep(ExperimentKind kind) {
  ExperimentConfig cfg = default_config(kind);
  cfg.n_list = {500, 1000, 2000, 4000, 8000};
  cfg.q_list = {0.0, 0.2, 0.4};
  cfg.trials = 30;
  return cfg;
}

Outcome criterion4() {
  const MetricsReport r = run_experiment(sweep(ExperimentKind::kCapacityScaling));
  const ScalingFit fit = fit_scaling(r, Predictor::kSurvivorsOverLogNodes, "capacity");
  const double s0 = r.at(rows_where(r, 4000, 0.0).front(), "capacity");
  const double s4 = r.at(rows_where(r, 4000, 0.4).front(), "capacity");
  const double ratio = s4 / s0;
  const double target = std::sqrt(0.6);
  const bool ok = fit.slope >= kSlopeLow && fit.slope <= kSlopeHigh && fit.r2 >= kMinR2 && fit.used == 15 &&
                  std::abs(ratio / target - 1.0) <= kFailureRatioTolerance;
  return {ok, fmt("slope %.4f r2 %.4f over %zu points; S(0.4)/S(0) at n=4000 = %.4f vs %.4f (+-25%%)", fit.slope,
                  fit.r2, fit.used, ratio, target)};
}

Outcome criterion5() {
  const MetricsReport r = run_experiment(sweep(ExperimentKind::kTradeoff));
  const ScalingFit fit = fit_scaling(r, Predictor::kSurvivorsOverLogNodes, "delay");
  bool ok = fit.slope >= kSlopeLow && fit.slope <= kSlopeHigh && fit.r2 >= kMinR2;
  std::string detail = fmt("delay slope %.4f r2 %.4f; S/D max/min", fit.slope, fit.r2);
  for (double q : {0.0, 0.2, 0.4}) {
    std::vector<double> sd;
    for (std::size_t i = 0; i < r.rows.size(); ++i)
      if (near(r.at(i, "q"), q)) sd.push_back(r.at(i, "capacity_over_delay"));
    const double spread = spread_ratio(sd);
    ok = ok && spread < kTradeoffSpread;
    detail += fmt(" q=%.1f:%.3f", q, spread);
  }
  return {ok, detail};
}

Outcome criterion6() {
  const MetricsReport r = run_experiment(sweep(ExperimentKind::kCapacityScaling));
  const std::vector<double> norm = r.column("normalized_max_load");
  const double spread = spread_ratio(norm);
  const auto [lo, hi] = std::minmax_element(norm.begin(), norm.end());
  return {spread < kLoadBand,
          fmt("max load / sqrt(n(1-q) ln n) in [%.4f, %.4f], max/min %.3f (< 3)", *lo, *hi, spread)};
}

// --- 7: cell occupancy ------------------------------------------------------
constexpr double kOccupancyPassFraction = 0.99;

Outcome criterion7() {
  ExperimentConfig cfg = sweep(ExperimentKind::kOccupancy);
  cfg.trials = 100;
  cfg.radius = {RadiusSpec::Mode::kAuto, {1.0}};  // cell side r_q / sqrt 2
  const MetricsReport r = run_experiment(cfg);
  const std::vector<double> within = r.column("within_log_band_fraction");
  double total = 0.0;
  for (double w : within) total += w;
  const double fraction = total / static_cast<double>(within.size());
  const auto mins = r.column("min_occupancy");
  const double worst_min = *std::min_element(mins.begin(), mins.end());
  return {fraction >= kOccupancyPassFraction,
          fmt("%.2f%% of %zu trials have min and max inside [0.1 ln n, 10 ln n] (need 99%%); "
              "lowest mean per-trial minimum %.2f",
              100 * fraction, within.size() * cfg.trials, worst_min)};
}

// --- 8: scheduling guarantee ------------------------------------------------
Outcome criterion8() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> side(0.02, 0.5);
  int pass = 0, total = 0, single_rejected = 0, single_total = 0;
  for (double dp : {0.0, 0.5, 1.0, 2.0}) {
    for (int i = 0; i < 100; ++i) {
      const double a = side(rng);
      const auto k = static_cast<std::size_t>(std::ceil(1.0 / a));
      const CellGrid g(a, k);
      const double r = a * std::numbers::sqrt2;
      ++total;
      pass += verify_schedule(g, build_tdma(g, cluster_size(dp)), dp, r);
      if (dp > 0.0 && k >= 2) {
        ++single_total;
        single_rejected += !verify_schedule(g, build_tdma(g, 1), dp, r);
      }
    }
  }
  return {pass == total && single_rejected == single_total,
          fmt("derived M feasible on %d/%d grids; M=1 rejected on %d/%d", pass, total, single_rejected, single_total)};
}

// --- 9: channel robustness --------------------------------------------------
constexpr std::size_t kChannelTrials = 500;
constexpr double kOperatingMultiplier = 0.6;  // of the failure-free closed-form radius
constexpr double kSigmaGap = 3.0;

Outcome criterion9() {
  ExperimentConfig cfg = default_config(ExperimentKind::kChannelConnectivity);
  cfg.n_list = {1000};
  cfg.q_list = {0.0};
  cfg.trials = kChannelTrials;
  cfg.channel->min_rx_power_dbm = -80.0;
  cfg.channel->sigma_db = 5.0;
  cfg.channel->fading_enabled = true;
  cfg.alpha_list = {2.5, 3.5};
  cfg.radius = {RadiusSpec::Mode::kAuto, {}};
  for (int i = 0; i < 21; ++i) cfg.radius.values.push_back(0.1 + 0.07 * i);
  cfg.radius.values.push_back(kOperatingMultiplier);
  const MetricsReport r = run_experiment(cfg);

  bool ok = true;
  std::string detail;
  double p_at[2] = {0, 0};
  for (int a = 0; a < 2; ++a) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r.rows.size(); ++i)
      if (near(r.at(i, "alpha"), cfg.alpha_list[a])) rows.push_back(i);
    const std::size_t sweep_len = rows.size() - 1;
    bool monotone = true;
    for (std::size_t k = 1; k < sweep_len; ++k)
      monotone = monotone && r.at(rows[k], "connectivity") >= r.at(rows[k - 1], "connectivity");
    const double first = r.at(rows.front(), "connectivity");
    const double last = r.at(rows[sweep_len - 1], "connectivity");
    ok = ok && monotone && first < kCurveLow && last > kCurveHigh;
    p_at[a] = r.at(rows.back(), "connectivity");
    detail += fmt("alpha=%.1f sigmoid %.3f->%.3f; ", cfg.alpha_list[a], first, last);
  }
  const double t = static_cast<double>(kChannelTrials);
  const double se = std::sqrt(p_at[0] * (1 - p_at[0]) / t + p_at[1] * (1 - p_at[1]) / t);
  const double gap = p_at[0] - p_at[1];
  ok = ok && gap > kSigmaGap * se;
  detail += fmt("at d*=%.2f r_q: P(2.5)=%.3f P(3.5)=%.3f, gap %.1f sigma", kOperatingMultiplier, p_at[0], p_at[1],
                se > 0 ? gap / se : INFINITY);
  return {ok, detail};
}

// --- 10: determinism --------------------------------------------------------
Outcome criterion10() {
  int identical = 0, total = 0;
  for (ExperimentKind kind : all_kinds()) {
    ExperimentConfig cfg = default_config(kind);
    if (kind == ExperimentKind::kChannelConnectivity) {
      cfg.n_list = {150, 300};
      cfg.trials = 8;
    } else if (kind != ExperimentKind::kRedundancy) {
      cfg.n_list = {600, 1200};
      cfg.trials = 6;
    }
    cfg.base_seed = 4242;
    std::string reference;
    for (unsigned workers : {1u, 3u, 8u, 1u}) {
      cfg.workers = workers;
      const std::string csv = format_csv(run_experiment(cfg));
      if (reference.empty()) reference = csv;
      ++total;
      identical += csv == reference;
    }
  }
  return {identical == total, fmt("%d/%d runs byte-identical across worker counts 1,3,8,1", identical, total)};
}

// --- 11: closed-form micro-oracles ------------------------------------------
Outcome criterion11() {
  const double dob = delta_of_beta(1.0, 4.0);
  const bool c1 = std::abs(dob - std::pow(96.0, 0.25)) <= 1e-12;
  const bool c2 = cluster_size(0.0) == 4 && cluster_size(1.0) == 6;
  const double ed = effective_delta({1.0, Antenna::kDirectional, std::numbers::pi / 3.0, 1.0});
  const bool c3 = std::abs(ed - 0.5) <= 1e-12;
  bool c4 = true;
  for (double n : {2.0, 10.0, 1e3, 1e6})
    for (double q : {0.0, 0.25, 0.9}) c4 = c4 && capacity_scaling(n, q) / delay_scaling(n, q) == 1.0;
  return {c1 && c2 && c3 && c4, fmt("delta(1,4)=%.15f, M(0)=%zu, M(1)=%zu, delta'=%.15f, S/D ratio exact=%d", dob,
                                    cluster_size(0.0), cluster_size(1.0), ed, c4)};
}

const std::vector<std::function<Outcome()>> kCriteria{criterion1, criterion2, criterion3,  criterion4,
                                                      criterion5, criterion6, criterion7,  criterion8,
                                                      criterion9, criterion10, criterion11};

bool run_one(std::size_t idx) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = kCriteria[idx - 1]();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %zu: %s  %s  [%.1fs]\n", idx, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const long idx = std::strtol(argv[2], nullptr, 10);
    if (idx < 1 || idx > static_cast<long>(kCriteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", kCriteria.size());
      return 2;
    }
    return run_one(static_cast<std::size_t>(idx)) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 1; i <= kCriteria.size(); ++i) failed += !run_one(i);
  std::printf("%zu/%zu criteria passed\n", kCriteria.size() - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
