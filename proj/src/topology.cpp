#include "wanet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>

#include "wanet/errors.hpp"
#include "wanet/parallel.hpp"
#include "wanet/spatial_index.hpp"

namespace wanet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    --components_;
    return true;
  }

  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

// Largest edge of the minimum spanning forest over `alive`, or +inf when the
// edges no longer than `cutoff` leave it disconnected.
double bottleneck_within(const Deployment& d, std::span<const NodeIndex> alive, double cutoff) {
  if (alive.size() <= 1) return 0.0;
  std::vector<std::uint32_t> local(d.size(), 0);
  for (std::size_t k = 0; k < alive.size(); ++k) local[alive[k]] = static_cast<std::uint32_t>(k);

  SpatialIndex index(d.positions, alive, cutoff);
  std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> edges;
  for (NodeIndex i : alive) {
    index.for_each_within(d.positions[i], cutoff, [&](NodeIndex j, double dist) {
      if (i < j) edges.emplace_back(dist, local[i], local[j]);
    });
  }
  std::sort(edges.begin(), edges.end());
  DisjointSets sets(alive.size());
  for (const auto& [dist, a, b] : edges) {
    if (sets.unite(a, b) && sets.components() == 1) return dist;
  }
  return kInf;
}

}  // namespace

std::size_t GeomGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.size();
  return twice / 2;
}

bool GeomGraph::has_edge(NodeIndex i, NodeIndex j) const {
  if (i >= adjacency.size()) return false;
  const auto& row = adjacency[i];
  return std::binary_search(row.begin(), row.end(), j);
}

GeomGraph build_graph(const Deployment& d, const FailureMask& m, double r) {
  if (!(r > 0.0)) throw InvalidParameter("transmission radius must be positive");
  GeomGraph g;
  g.radius = r;
  g.nodes = m.alive_nodes();
  g.adjacency.assign(d.size(), {});
  SpatialIndex index(d.positions, g.nodes, r);
  for (NodeIndex i : g.nodes) {
    auto& row = g.adjacency[i];
    index.for_each_within(d.positions[i], r, [&](NodeIndex j, double) {
      if (j != i) row.push_back(j);
    });
    std::sort(row.begin(), row.end());
  }
  return g;
}

bool is_connected_def1(const Deployment& d, const FailureMask& m, double r) {
  const GeomGraph g = build_graph(d, m, r);
  if (g.nodes.empty()) return false;

  std::vector<std::uint8_t> seen(d.size(), 0);
  std::vector<NodeIndex> stack{g.nodes.front()};
  seen[g.nodes.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    ++reached;
    for (NodeIndex w : g.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (reached != g.nodes.size()) return false;

  SpatialIndex index(d.positions, g.nodes, r);
  for (NodeIndex t = 0; t < d.size(); ++t) {
    if (!m.is_faulty(t)) continue;
    bool covered = false;
    index.for_each_within(d.positions[t], r, [&](NodeIndex, double) { covered = true; });
    if (!covered) return false;
  }
  return true;
}

double connectivity_threshold(const Deployment& d, const FailureMask& m) {
  const std::vector<NodeIndex> alive = m.alive_nodes();
  if (alive.empty()) return kInf;

  const double k = static_cast<double>(alive.size());
  double cutoff = std::sqrt((std::log(k + 1.0) + 2.0) / (3.0 * k));
  double bottleneck = kInf;
  for (;;) {
    cutoff = std::min(cutoff, kSqrt2);
    bottleneck = bottleneck_within(d, alive, cutoff);
    if (bottleneck < kInf || cutoff >= kSqrt2) break;
    cutoff *= 2.0;
  }

  double coverage = 0.0;
  const SpatialIndex index(d.positions, alive, 1.0 / std::sqrt(k));
  for (NodeIndex t = 0; t < d.size(); ++t)
    if (m.is_faulty(t)) coverage = std::max(coverage, index.nearest_distance(d.positions[t]));
  return std::max(bottleneck, coverage);
}

double connectivity_threshold_dense(std::span<const double> weights, const FailureMask& m) {
  const std::size_t n = m.size();
  if (weights.size() != n * n) throw InvalidParameter("weight matrix must be n x n");
  const std::vector<NodeIndex> alive = m.alive_nodes();
  if (alive.empty()) return kInf;

  // Prim on the alive subgraph; the largest tree edge is the bottleneck.
  double result = 0.0;
  std::vector<double> key(alive.size(), kInf);
  std::vector<std::uint8_t> in_tree(alive.size(), 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < alive.size(); ++step) {
    std::size_t best = alive.size();
    for (std::size_t k = 0; k < alive.size(); ++k)
      if (!in_tree[k] && (best == alive.size() || key[k] < key[best])) best = k;
    in_tree[best] = 1;
    result = std::max(result, key[best]);
    const double* row = weights.data() + static_cast<std::size_t>(alive[best]) * n;
    for (std::size_t k = 0; k < alive.size(); ++k)
      if (!in_tree[k]) key[k] = std::min(key[k], row[alive[k]]);
  }

  for (NodeIndex t = 0; t < n; ++t) {
    if (!m.is_faulty(t)) continue;
    const double* row = weights.data() + static_cast<std::size_t>(t) * n;
    double nearest = kInf;
    for (NodeIndex a : alive) nearest = std::min(nearest, row[a]);
    result = std::max(result, nearest);
  }
  return result;
}

double connectivity_probability(std::size_t n, double q, double r, std::size_t trials, std::uint64_t base_seed,
                                unsigned workers) {
  if (trials == 0) throw InvalidParameter("trials must be at least 1");
  std::vector<std::uint8_t> connected(trials, 0);
  parallel_for(trials, workers, [&](std::size_t t) {
    const SeedSpec seed{base_seed, t};
    const Deployment d = place_nodes(n, seed);
    const FailureMask m = sample_failures(d, q, seed);
    connected[t] = is_connected_def1(d, m, r) ? 1 : 0;
  });
  return static_cast<double>(std::count(connected.begin(), connected.end(), std::uint8_t{1})) /
         static_cast<double>(trials);
}

std::vector<double> connectivity_thresholds(std::size_t n, double q, std::size_t trials, std::uint64_t base_seed,
                                            unsigned workers) {
  if (trials == 0) throw InvalidParameter("trials must be at least 1");
  std::vector<double> out(trials, kInf);
  parallel_for(trials, workers, [&](std::size_t t) {
    const SeedSpec seed{base_seed, t};
    const Deployment d = place_nodes(n, seed);
    out[t] = connectivity_threshold(d, sample_failures(d, q, seed));
  });
  return out;
}

double empirical_connectivity(std::span<const double> thresholds, double r) {
  if (thresholds.empty()) return 0.0;
  const auto hits = std::count_if(thresholds.begin(), thresholds.end(), [r](double t) { return t <= r; });
  return static_cast<double>(hits) / static_cast<double>(thresholds.size());
}

double critical_radius_closed_form(std::size_t n, double q, double xi, AreaConvention convention) {
  if (n < 2) throw InvalidParameter("critical radius needs n >= 2");
  if (!(q >= 0.0 && q < 1.0)) throw InvalidParameter("critical radius needs 0 <= q < 1");
  if (xi < 0.0) throw InvalidParameter("slack xi must be non-negative");
  const double nn = static_cast<double>(n);
  double denom = (1.0 - q) * nn;
  if (convention == AreaConvention::kDiskArea) denom *= std::numbers::pi;
  return std::sqrt((std::log(nn) + xi) / denom);
}

double critical_radius_from_thresholds(std::span<const double> thresholds, double target_prob) {
  if (!(target_prob > 0.0 && target_prob < 1.0)) throw InvalidParameter("target probability must lie in (0,1)");
  if (thresholds.empty()) throw InvalidParameter("no trials");
  const double slack = std::max(0.02, 1.0 / static_cast<double>(thresholds.size()));
  if (empirical_connectivity(thresholds, kSqrt2) < target_prob - slack)
    throw NumericalError("target connectivity unreachable within [0, sqrt(2)]");

  double lo = 0.0;
  double hi = kSqrt2;
  for (int step = 0; step < 40; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (empirical_connectivity(thresholds, mid) >= target_prob)
      hi = mid;
    else
      lo = mid;
  }
  const double achieved = empirical_connectivity(thresholds, hi);
  if (std::abs(achieved - target_prob) > slack)
    throw NumericalError("bisection did not reach target connectivity (got " + std::to_string(achieved) + ")");
  return hi;
}

double estimate_critical_radius(std::size_t n, double q, std::size_t trials, double target_prob,
                                std::uint64_t base_seed, unsigned workers) {
  if (!(target_prob > 0.0 && target_prob < 1.0)) throw InvalidParameter("target probability must lie in (0,1)");
  const std::vector<double> thresholds = connectivity_thresholds(n, q, trials, base_seed, workers);
  return critical_radius_from_thresholds(thresholds, target_prob);
}

}  // namespace wanet
