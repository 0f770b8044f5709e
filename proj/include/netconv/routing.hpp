#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netconv/network.hpp"
#include "netconv/route.hpp"

namespace netconv {

enum class RankOrder : std::int8_t { Worse = -1, EqualRank = 0, Better = 1 };

/// Pairwise IGP costs toward loopbacks, taken from already converged
/// outcomes. Used for multihop iBGP sessions only.
class IgpCosts {
 public:
  IgpCosts() = default;
  explicit IgpCosts(std::size_t node_count) : n_(node_count), cost_(node_count * node_count) {}

  void set(NodeId from, NodeId to, int cost) { cost_.at(from * n_ + to) = cost; }
  std::optional<int> cost(NodeId from, NodeId to) const {
    if (n_ == 0) return std::nullopt;
    return cost_.at(from * n_ + to);
  }
  bool empty() const { return n_ == 0; }

 private:
  std::size_t n_ = 0;
  std::vector<std::optional<int>> cost_;
};

/// One live adjacency of the protocol graph, seen from its owner.
struct PeerInfo {
  NodeId peer = kNoNode;
  bool ibgp = false;
  /// OSPF: owner's interface cost toward the peer. BGP: owner's IGP cost to
  /// the peer (zero for eBGP).
  int cost = 0;
  const RouteMap* import_map = nullptr;  // owner's import from peer
  const RouteMap* export_map = nullptr;  // owner's export to peer
};

/// Everything needed to run one prefix of one protocol under one failure
/// scenario: live peers, filters and the ranking function.
class RoutingContext {
 public:
  RoutingContext(const Network& net, Prefix prefix, Protocol protocol, LinkMask failures,
                 const IgpCosts* igp = nullptr);

  const Network& network() const { return *net_; }
  const Prefix& prefix() const { return prefix_; }
  Protocol protocol() const { return protocol_; }
  const LinkMask& failures() const { return failures_; }
  std::size_t node_count() const { return peers_.size(); }
  bool multipath() const { return multipath_; }

  bool is_origin(NodeId n) const { return origin_[n]; }
  const std::vector<NodeId>& origins() const { return origins_; }
  /// Live peers sorted by id.
  const std::vector<PeerInfo>& peers(NodeId n) const { return peers_[n]; }
  const PeerInfo* peer_info(NodeId n, NodeId q) const;

  /// Rejects looping paths and filter denials; never alters the path.
  std::optional<RouteEntry> apply_import(NodeId node, NodeId peer, const RouteEntry& e) const;
  /// Prepends `node` to the advertised path.
  std::optional<RouteEntry> apply_export(NodeId node, NodeId peer, const RouteEntry& e) const;
  /// What `node` would hold after `peer` advertises its best `peer_best`.
  std::optional<RouteEntry> offer(NodeId node, NodeId peer, const RouteEntry& peer_best) const;

  RankOrder rank_compare(NodeId node, const RouteEntry& a, const RouteEntry& b) const;

  /// Number of AS boundaries crossed walking from `node` along `p`.
  int as_path_length(NodeId node, const Path& p) const;
  bool learned_over_ebgp(NodeId node, const RouteEntry& e) const;

 private:
  const Network* net_;
  Prefix prefix_;
  Protocol protocol_;
  LinkMask failures_;
  bool multipath_ = false;
  std::vector<std::vector<PeerInfo>> peers_;
  std::vector<bool> origin_;
  std::vector<NodeId> origins_;
};

/// Ranking key of a BGP route at a node, larger is better.
struct BgpRankKey {
  int local_pref = 0;
  int as_len = 0;
  bool ebgp = false;
  int igp = 0;
};

RankOrder compare_bgp_keys(const BgpRankKey& a, const BgpRankKey& b);

}  // namespace netconv
