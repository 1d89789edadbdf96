#include "wanet/deployment.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "wanet/errors.hpp"

namespace wanet {

std::size_t FailureMask::faulty_count() const noexcept {
  return static_cast<std::size_t>(std::count(faulty.begin(), faulty.end(), std::uint8_t{1}));
}

std::vector<NodeIndex> FailureMask::alive_nodes() const {
  std::vector<NodeIndex> out;
  out.reserve(size());
  for (NodeIndex i = 0; i < size(); ++i)
    if (!faulty[i]) out.push_back(i);
  return out;
}

std::vector<NodeIndex> FailureMask::faulty_nodes() const {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < size(); ++i)
    if (faulty[i]) out.push_back(i);
  return out;
}

Deployment place_nodes(std::size_t n, SeedSpec seed) {
  Engine engine = make_engine(seed, Stream::kPlacement);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Deployment d;
  d.positions.resize(n);
  for (auto& p : d.positions) {
    p.x = unit(engine);
    p.y = unit(engine);
  }
  return d;
}

FailureMask sample_failures(const Deployment& deployment, double q, SeedSpec seed) {
  if (!(q >= 0.0 && q <= 1.0))
    throw InvalidParameter("failure probability must lie in [0,1], got " + std::to_string(q));
  Engine engine = make_engine(seed, Stream::kFailure);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FailureMask mask;
  mask.q = q;
  mask.faulty.resize(deployment.size());
  // One uniform per node regardless of q keeps masks coupled across q.
  for (auto& f : mask.faulty) f = unit(engine) < q ? 1 : 0;
  return mask;
}

FlowSet pair_flows(const FailureMask& mask, SeedSpec seed) {
  std::vector<NodeIndex> alive = mask.alive_nodes();
  FlowSet flows;
  if (alive.size() < 2) return flows;
  Engine engine = make_engine(seed, Stream::kPairing);
  std::shuffle(alive.begin(), alive.end(), engine);
  // After a uniform shuffle the trailing node of an odd list is itself a
  // uniform choice, so dropping it realizes the odd-count rule.
  flows.pairs.reserve(alive.size() / 2);
  for (std::size_t i = 0; i + 1 < alive.size(); i += 2) flows.pairs.push_back({alive[i], alive[i + 1]});
  return flows;
}

FailureMask make_mask(std::span<const bool> faulty, double q) {
  FailureMask mask;
  mask.q = q;
  mask.faulty.reserve(faulty.size());
  for (bool f : faulty) mask.faulty.push_back(f ? 1 : 0);
  return mask;
}

FailureMask no_failures(std::size_t n) {
  FailureMask mask;
  mask.faulty.assign(n, 0);
  return mask;
}

}  // namespace wanet
