#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "netconv/routing.hpp"

namespace netconv {

/// A converged assignment: the best entry of every node.
using ConvergedMap = std::vector<RouteEntry>;

struct ConvergedMapLess {
  bool operator()(const ConvergedMap& a, const ConvergedMap& b) const;
};

using ConvergedSet = std::set<ConvergedMap, ConvergedMapLess>;

/// Message-passing path-vector state: rib-in, FIFO buffers and best paths.
struct SpvpState {
  std::vector<RouteEntry> best;
  /// rib_in[n][i] is the last import from the i-th neighbor of n in the
  /// full adjacency (Bottom when withdrawn, rejected or never heard).
  std::vector<std::vector<RouteEntry>> rib_in;
  /// buffers[n][i] carries advertisements from that neighbor to n.
  std::vector<std::vector<std::vector<RouteEntry>>> buffers;  // front is index 0
  bool failures_applied = false;

  bool operator==(const SpvpState&) const = default;
  bool quiescent() const;
};

/// Ordered neighbor list per node used to index rib-in and buffers: the
/// union of peers before and after failures.
class SpvpInstance {
 public:
  /// `before` has no failures and `after` the scenario; pass the same
  /// context twice when failures apply at time zero.
  SpvpInstance(const RoutingContext& before, const RoutingContext& after);

  const RoutingContext& before() const { return *before_; }
  const RoutingContext& after() const { return *after_; }
  const std::vector<NodeId>& neighbors(NodeId n) const { return nbrs_[n]; }
  std::size_t slot(NodeId n, NodeId peer) const;
  std::size_t node_count() const { return nbrs_.size(); }
  bool mid_run() const { return before_ != after_; }

 private:
  const RoutingContext* before_;
  const RoutingContext* after_;
  std::vector<std::vector<NodeId>> nbrs_;
};

SpvpState spvp_initial(const SpvpInstance& inst);

/// A deliverable message: the head of the buffer from `sender` to `receiver`.
struct SpvpMove {
  NodeId receiver = kNoNode;
  NodeId sender = kNoNode;
  bool inject_failures = false;
};

std::vector<SpvpMove> spvp_moves(const SpvpInstance& inst, const SpvpState& s);
/// Every successor of a move; more than one when a rank tie lets the
/// receiver pick among several new best routes.
std::vector<SpvpState> spvp_step(const SpvpInstance& inst, const SpvpState& s, const SpvpMove& m);

struct OracleResult {
  ConvergedSet converged;
  bool divergence_suspected = false;
  std::uint64_t states = 0;
  std::uint64_t step_bound = 0;
};

struct OracleOptions {
  /// Zero selects 10 * nodes^2.
  std::uint64_t step_bound = 0;
  std::uint64_t max_states = 2'000'000;
};

/// Every converged state over all interleavings, memoized DFS.
OracleResult enumerate_converged(const SpvpInstance& inst, const OracleOptions& opts = {});

/// One random interleaving to quiescence, checking that each node's final
/// next hops stopped changing no later than the node itself. Returns the
/// converged map, or nullopt when the step bound is hit.
struct TraceCheck {
  std::optional<ConvergedMap> converged;
  bool order_respected = true;
  std::string detail;
};
TraceCheck simulate_random(const SpvpInstance& inst, std::mt19937_64& rng, std::uint64_t step_bound = 0);

std::string describe(const ConvergedMap& m, const Topology* topo = nullptr);

}  // namespace netconv
