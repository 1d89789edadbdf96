#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wanet {

/// A caller supplied an argument outside its documented domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver or bisection failed to bracket or converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A transmitter-receiver pair longer than the transmission radius.
class InfeasibleLink : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rate requested on a load map with no traffic.
class UndefinedRate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RoutingFailure : public std::runtime_error {
 public:
  explicit RoutingFailure(std::size_t flow_id)
      : std::runtime_error("no route over non-empty cells for flow " + std::to_string(flow_id)),
        flow_id_(flow_id) {}

  std::size_t flow_id() const noexcept { return flow_id_; }

 private:
  std::size_t flow_id_;
};

}  // namespace wanet
