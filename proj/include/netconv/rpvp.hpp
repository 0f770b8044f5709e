#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "netconv/entry_table.hpp"
#include "netconv/routing.hpp"

namespace netconv {

struct EnabledNode {
  NodeId node = kNoNode;
  bool invalid = false;         // holds a path its next hop no longer backs
  bool better_update = false;   // some peer offers something better
};

using EnabledSet = std::vector<EnabledNode>;

struct Offer {
  NodeId peer = kNoNode;
  RouteEntry entry;
};

/// One transition: `node` adopts `install` (every offer at once under OSPF
/// multipath, otherwise exactly one), or Bottom when `install` is empty.
struct Step {
  NodeId node = kNoNode;
  std::vector<Offer> install;

  bool takes_bottom() const { return install.empty(); }
};

/// The reduced path-vector transition system for one prefix run. Holds an
/// offer cache, so one instance belongs to one search.
class Rpvp {
 public:
  Rpvp(const RoutingContext& ctx, RouteEntryTable& table);

  const RoutingContext& context() const { return *ctx_; }
  RouteEntryTable& table() { return *table_; }
  const RouteEntryTable& table() const { return *table_; }

  /// Origins hold Epsilon, everyone else Bottom.
  ProtocolState initial();
  const RouteEntry& best(const ProtocolState& s, NodeId n) const { return table_->get(s.best[n]); }

  bool is_invalid(const ProtocolState& s, NodeId n) const;
  /// What `n` would import from `peer` now; nullopt when nothing passes.
  const std::optional<RouteEntry>& offer(const ProtocolState& s, NodeId n, NodeId peer);
  /// The offer from `peer` when it would make `n` move.
  std::optional<RouteEntry> can_update(const ProtocolState& s, NodeId n, NodeId peer);
  std::optional<EnabledNode> enabled(const ProtocolState& s, NodeId n);
  EnabledSet enabled_nodes(const ProtocolState& s);
  /// Rank-maximal updating offers of an enabled node.
  std::vector<Offer> best_update_peers(const ProtocolState& s, NodeId n);
  /// The moves open to an enabled node; more than one only on rank ties.
  std::vector<Step> steps(const ProtocolState& s, NodeId n);
  ProtocolState apply_step(const ProtocolState& s, const Step& step);
  bool is_converged(const ProtocolState& s);

  /// Entry a node holds after installing `install`.
  static RouteEntry merge_install(const std::vector<Offer>& install, Protocol p);

  std::size_t offer_cache_size() const { return offers_.size(); }

 private:
  const RoutingContext* ctx_;
  RouteEntryTable* table_;
  std::unordered_map<std::uint64_t, std::optional<RouteEntry>> offers_;
};

}  // namespace netconv
