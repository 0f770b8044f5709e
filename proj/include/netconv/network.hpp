#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netconv/address.hpp"
#include "netconv/route_map.hpp"
#include "netconv/topology.hpp"

namespace netconv {

enum class SessionKind : std::uint8_t { Ebgp, Ibgp };

std::string_view to_string(SessionKind k);

struct BgpSession {
  NodeId peer = kNoNode;
  SessionKind kind = SessionKind::Ebgp;
  std::optional<std::string> import_map;  // unset: accept unchanged
  std::optional<std::string> export_map;  // unset: advertise unchanged
};

struct BgpProcess {
  std::uint32_t asn = 0;
  std::vector<BgpSession> sessions;
  std::vector<Prefix> originated;
};

struct OspfProcess {
  std::vector<Prefix> originated;
  /// Outgoing cost toward a neighbor; overrides the link cost.
  std::map<NodeId, int> interface_costs;
};

/// Exactly one of `next_hop` (recursive) or `next_hop_node` (attached) is set.
struct StaticRoute {
  Prefix prefix;
  std::optional<Address> next_hop;
  std::optional<NodeId> next_hop_node;
};

struct NodeConfig {
  std::optional<Address> loopback;
  std::optional<OspfProcess> ospf;
  std::optional<BgpProcess> bgp;
  std::vector<StaticRoute> statics;
};

/// Topology plus per-node protocol configuration. Immutable once built.
struct Network {
  Topology topology;
  std::vector<NodeConfig> configs;
  std::map<std::string, RouteMap> route_maps;
  /// OSPF nodes keep every equal-cost best path.
  bool ospf_multipath = true;

  NodeId add_node(std::string name);
  /// Declares the session on both endpoints.
  void add_session(NodeId a, NodeId b, SessionKind kind,
                   std::optional<std::string> a_import = {}, std::optional<std::string> a_export = {},
                   std::optional<std::string> b_import = {}, std::optional<std::string> b_export = {});

  const NodeConfig& config(NodeId n) const { return configs.at(n); }
  NodeConfig& config(NodeId n) { return configs.at(n); }
  std::size_t node_count() const { return topology.node_count(); }

  const RouteMap* route_map(const std::optional<std::string>& name) const;
  const BgpSession* session(NodeId from, NodeId to) const;
  std::optional<std::uint32_t> asn(NodeId n) const;
  bool runs_ospf(NodeId n) const { return configs.at(n).ospf.has_value(); }
  bool runs_bgp(NodeId n) const { return configs.at(n).bgp.has_value(); }
  /// OSPF cost of forwarding from `from` to its neighbor over `link`.
  int ospf_cost(NodeId from, LinkId link) const;
  /// Prefixes originated into OSPF, including the loopback host route.
  std::vector<Prefix> ospf_originated(NodeId n) const;
  std::optional<NodeId> loopback_owner(Address a) const;
};

enum class DiagnosticKind {
  AsymmetricSession,
  AsMismatch,
  MissingBgpProcess,
  SessionWithoutLink,
  UnknownRouteMap,
  UnresolvableStaticNextHop,
  StaticNextHopNotNeighbor,
};

std::string_view to_string(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

/// Violations of the configuration invariants; empty means well formed.
std::vector<Diagnostic> validate_config(const Network& net);

}  // namespace netconv
