#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wanet/deployment.hpp"

namespace wanet {

/// Unit-disk graph over the non-faulty nodes: (i,j) is an edge iff both are
/// alive and their distance is at most `radius`.
struct GeomGraph {
  double radius = 0.0;
  std::vector<NodeIndex> nodes;                   // alive nodes, ascending
  std::vector<std::vector<NodeIndex>> adjacency;  // indexed by node, sorted; empty for faulty nodes

  std::size_t edge_count() const noexcept;
  bool has_edge(NodeIndex i, NodeIndex j) const;
};

/// Which closed form of the critical radius to use. The main-text form is
/// sqrt((ln n + xi) / ((1-q) n)); the disk-area form adds a factor pi to the
/// denominator.
enum class AreaConvention { kMainText, kDiskArea };

/// Throws InvalidParameter when r <= 0.
GeomGraph build_graph(const Deployment& d, const FailureMask& m, double r);

/// Two-part connectivity: the alive nodes form one component, and every
/// faulty node has an alive node within r. An empty alive set is never
/// connected; a single alive node satisfies the first part.
bool is_connected_def1(const Deployment& d, const FailureMask& m, double r);

/// Smallest radius at which is_connected_def1 holds (the property is
/// monotone in r). +inf when no node is alive.
double connectivity_threshold(const Deployment& d, const FailureMask& m);

/// Same quantity for an arbitrary symmetric link weight, where a link exists
/// iff weight <= r. `weights` is a dense row-major n x n matrix. Cost O(n^2).
double connectivity_threshold_dense(std::span<const double> weights, const FailureMask& m);

/// Fraction of `trials` independent deployments that are connected at r.
double connectivity_probability(std::size_t n, double q, double r, std::size_t trials, std::uint64_t base_seed,
                                unsigned workers = 1);

/// Per-trial connectivity thresholds; trial t uses SeedSpec{base_seed, t}.
std::vector<double> connectivity_thresholds(std::size_t n, double q, std::size_t trials, std::uint64_t base_seed,
                                            unsigned workers = 1);

/// Fraction of thresholds <= r. With common random numbers this is the
/// connectivity probability at r.
double empirical_connectivity(std::span<const double> thresholds, double r);

double critical_radius_closed_form(std::size_t n, double q, double xi = 0.0,
                                   AreaConvention convention = AreaConvention::kMainText);

/// Bisection over [0, sqrt(2)] for the radius whose connectivity probability
/// reaches target_prob. Throws NumericalError when the target is unreachable
/// or the result misses the target by more than max(0.02, 1/trials).
double estimate_critical_radius(std::size_t n, double q, std::size_t trials, double target_prob,
                                std::uint64_t base_seed, unsigned workers = 1);

/// Same bisection on precomputed thresholds.
double critical_radius_from_thresholds(std::span<const double> thresholds, double target_prob);

}  // namespace wanet
