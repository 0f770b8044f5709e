#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netconv/network.hpp"
#include "netconv/pec.hpp"
#include "netconv/route.hpp"

namespace netconv {

enum class FibAction : std::uint8_t { Drop, Deliver, Forward };
enum class RouteSource : std::uint8_t { None, Connected, Static, Ospf, Ebgp, Ibgp };

std::string_view to_string(FibAction a);
std::string_view to_string(RouteSource s);
RouteSource parse_route_source(std::string_view s);
FibAction parse_fib_action(std::string_view s);

/// Administrative distance used to break ties between protocols.
int administrative_distance(RouteSource s);

struct FibEntry {
  FibAction action = FibAction::Drop;
  std::vector<NodeId> next_hops;  // sorted; Forward only
  std::optional<Prefix> prefix;   // winning route
  RouteSource source = RouteSource::None;

  bool operator==(const FibEntry&) const = default;
};

/// Per-node forwarding decision for one packet class.
struct ForwardingGraph {
  std::vector<FibEntry> entries;
  std::vector<std::string> diagnostics;

  bool operator==(const ForwardingGraph&) const = default;
};

/// Converged result of one prefix run.
struct PrefixRun {
  Prefix prefix;
  Protocol protocol = Protocol::Ospf;
  std::vector<RouteEntry> best;

  bool operator==(const PrefixRun&) const = default;
};

/// Forwarding of addresses outside the class being built.
class FibLookup {
 public:
  virtual ~FibLookup() = default;
  /// The graph of the class holding `a`, or nullptr when not yet known.
  virtual const ForwardingGraph* graph_for(Address a) const = 0;
};

/// Combines the converged runs of one class with its static routes:
/// longest prefix first, then lowest administrative distance. Recursive
/// next hops (multihop iBGP, static via address) resolve through `lookup`.
ForwardingGraph build_fib(const Network& net, const Pec& pec, const std::vector<PrefixRun>& runs,
                          const LinkMask& failures, const FibLookup* lookup);

struct GroupFibInput {
  const Pec* pec = nullptr;
  std::vector<PrefixRun> runs;
};

/// Builds the graphs of mutually dependent classes together, resolving
/// group-internal recursion by iteration up to `depth_limit` rounds.
std::vector<ForwardingGraph> build_group_fibs(const Network& net, const std::vector<Pec>& pecs,
                                              const std::vector<GroupFibInput>& group, const LinkMask& failures,
                                              const FibLookup* deps, int depth_limit = 4);

enum class WalkEnd : std::uint8_t { Delivered, Dropped, Looped };

std::string_view to_string(WalkEnd e);

/// One forwarding path from a source; a looped walk ends with the repeated node.
struct Walk {
  std::vector<NodeId> nodes;
  WalkEnd end = WalkEnd::Dropped;
};

/// Every forwarding path from `source`, following all next hops.
std::vector<Walk> walks_from(const ForwardingGraph& g, NodeId source);

/// Nodes visited by any walk from the sources.
std::vector<NodeId> data_plane_closure(const ForwardingGraph& g, const std::vector<NodeId>& sources);

/// Cost from `from` to the node delivering in `g`, following the lowest
/// next hop; nullopt when the walk drops or loops.
std::optional<int> forwarding_cost(const Network& net, const ForwardingGraph& g, NodeId from);

}  // namespace netconv
