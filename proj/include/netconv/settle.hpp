#pragma once

#include <optional>
#include <vector>

#include "netconv/rpvp.hpp"

namespace netconv {

/// Static optimistic bounds on what each peer could ever offer, and the
/// per-state set of nodes whose selection can no longer change.
class SettleAnalysis {
 public:
  explicit SettleAnalysis(const RoutingContext& ctx);

  /// How the best entry `q` could ever offer `n` compares with `against`;
  /// nullopt when `q` can never offer `n` anything.
  std::optional<RankOrder> bound_vs(NodeId n, NodeId q, const RouteEntry& against) const;

  /// Least fixpoint: origins, plus valid non-Bottom nodes whose next hops
  /// are settled and which no peer can ever beat.
  std::vector<bool> settled(Rpvp& rpvp, const ProtocolState& s) const;

  /// Lower bound on the OSPF cost (or AS crossings for BGP) from `n` to an
  /// origin; nullopt when unreachable.
  std::optional<int> distance(NodeId n) const;

 private:
  const RoutingContext* ctx_;
  std::vector<std::optional<int>> dist_;
  /// lp_bound_[n][i]: highest local-pref n could assign a route from its
  /// i-th peer; nullopt when the filters pass nothing.
  std::vector<std::vector<std::optional<int>>> lp_bound_;
};

struct Determinism {
  NodeId node = kNoNode;
  std::vector<Step> steps;  // one step, or one per tied offer

  bool tied() const { return steps.size() > 1; }
};

/// Lowest enabled node among `candidates` whose eventual selection is
/// already fixed: it holds Bottom, every offer in its best set comes from a
/// settled peer, and every other peer is settled or bounded strictly below.
std::optional<Determinism> detect_deterministic(Rpvp& rpvp, const ProtocolState& s, const SettleAnalysis& bounds,
                                                const std::vector<bool>& settled, const EnabledSet& candidates);
std::optional<Determinism> detect_deterministic_ospf(Rpvp& rpvp, const ProtocolState& s, const SettleAnalysis& bounds,
                                                     const std::vector<bool>& settled, const EnabledSet& candidates);
std::optional<Determinism> detect_deterministic_bgp(Rpvp& rpvp, const ProtocolState& s, const SettleAnalysis& bounds,
                                                    const std::vector<bool>& settled, const EnabledSet& candidates);

/// Nodes reachable from `start` through unsettled nodes, `start` included.
std::vector<NodeId> unsettled_component(const RoutingContext& ctx, const std::vector<bool>& settled, NodeId start);

/// True when every peer-graph path between `a` and `b` crosses a settled node.
bool independent(const RoutingContext& ctx, const std::vector<bool>& settled, NodeId a, NodeId b);

}  // namespace netconv
