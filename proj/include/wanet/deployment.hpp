#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wanet/geometry.hpp"
#include "wanet/rng.hpp"

namespace wanet {

using NodeIndex = std::uint32_t;

/// Node positions, iid uniform over [0,1]^2.
struct Deployment {
  std::vector<Point> positions;

  std::size_t size() const noexcept { return positions.size(); }
};

/// Per-node failure flags. A node is faulty iff its failure uniform falls
/// below q, so masks drawn from the same seed at different q are nested.
struct FailureMask {
  std::vector<std::uint8_t> faulty;
  double q = 0.0;

  std::size_t size() const noexcept { return faulty.size(); }
  bool is_faulty(NodeIndex i) const { return faulty[i] != 0; }
  std::size_t faulty_count() const noexcept;
  std::size_t alive_count() const noexcept { return size() - faulty_count(); }
  std::vector<NodeIndex> alive_nodes() const;
  std::vector<NodeIndex> faulty_nodes() const;
};

struct Flow {
  NodeIndex source = 0;
  NodeIndex destination = 0;

  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Source-destination pairs over non-faulty nodes; a random perfect matching,
/// with one node left out when the survivor count is odd.
struct FlowSet {
  std::vector<Flow> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
};

Deployment place_nodes(std::size_t n, SeedSpec seed);

/// Throws InvalidParameter for q outside [0,1].
FailureMask sample_failures(const Deployment& deployment, double q, SeedSpec seed);

FlowSet pair_flows(const FailureMask& mask, SeedSpec seed);

/// Build a mask from explicit flags (tests, hand-built scenarios).
FailureMask make_mask(std::span<const bool> faulty, double q = 0.0);

/// All nodes alive.
FailureMask no_failures(std::size_t n);

}  // namespace wanet
