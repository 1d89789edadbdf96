#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wanet/channel.hpp"
#include "wanet/percolation.hpp"

namespace wanet {

enum class Antenna { kOmnidirectional, kDirectional };

struct MacParams {
  double delta = 0.0;                 // interference guard
  Antenna antenna = Antenna::kOmnidirectional;
  std::optional<double> theta;        // beamwidth in radians, directional only
  double bits_per_slot = 1.0;         // W
};

/// delta for omnidirectional antennas, min(delta, sin(theta/2)) for
/// directional ones. Throws InvalidParameter on a directional antenna with
/// no beamwidth, theta outside (0, 2 pi], negative delta or W <= 0.
double effective_delta(const MacParams& p);

/// Smallest integer strictly greater than 1 + sqrt(2) (2 + delta'). This is
/// the reuse period per axis that keeps concurrently active cells outside
/// each other's guard zone.
std::size_t cluster_size(double delta_prime);

/// M^2-phase TDMA over the cells: phase(i, j) = (i mod M) M + (j mod M).
struct Schedule {
  std::size_t clusters = 1;        // M
  std::vector<std::size_t> phase;  // per cell id

  std::size_t phase_count() const noexcept { return clusters * clusters; }
  std::vector<std::vector<CellId>> cells_by_phase() const;
};

Schedule build_tdma(const CellGrid& g, std::size_t clusters);

struct ProtocolCheck {
  bool feasible = true;               // every receiver clears (1 + delta') x its link length
  bool guard_disks_disjoint = true;   // disks of radius delta'/2 x link length around receivers
};

/// Pairwise protocol-model check over simultaneously active links. Throws
/// InfeasibleLink when a link is longer than r.
ProtocolCheck protocol_feasible(std::span<const LinkPair> active, double delta_prime, double r);

/// For every phase and every two cells sharing it, places the worst-case
/// pair of transmissions (links of length r pointed at each other from the
/// closest points of the two cells) and runs protocol_feasible on them.
bool verify_schedule(const CellGrid& g, const Schedule& s, double delta_prime, double r);

/// The node that relays for a cell: the alive node nearest the cell centre,
/// lowest index on ties. Empty when the cell has no alive node.
std::optional<NodeIndex> select_relay(const CellGrid& g, const Deployment& d, CellId cell);

}  // namespace wanet
