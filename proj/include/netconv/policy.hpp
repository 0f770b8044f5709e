#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netconv/fib.hpp"
#include "netconv/hash.hpp"
#include "netconv/pec.hpp"

namespace netconv {

enum class PolicyKind : std::uint8_t {
  Reachability,
  LoopFreedom,
  BlackHoleFreedom,
  Waypoint,
  BoundedPathLength,
  MultipathConsistency,
  PathConsistency,
};

std::string_view to_string(PolicyKind k);
PolicyKind parse_policy_kind(std::string_view s);

struct PolicySpec {
  std::string name;
  PolicyKind kind = PolicyKind::Reachability;
  /// Destination addresses; unset means every routed class.
  std::optional<Prefix> destination;
  std::vector<NodeId> sources;      // empty: all nodes
  std::vector<NodeId> interesting;  // empty: all nodes
  std::vector<NodeId> waypoints;
  std::vector<NodeId> devices;  // PathConsistency; empty: the sources
  int max_length = 0;           // BoundedPathLength, in hops
};

/// Sources with the all-nodes default applied, sorted.
std::vector<NodeId> effective_sources(const PolicySpec& p, std::size_t node_count);
/// Interesting nodes with the default applied, waypoints and devices added.
std::vector<NodeId> effective_interesting(const PolicySpec& p, std::size_t node_count);
/// Nodes the policy singles out by role; these keep their own device class
/// when failures are sampled by symmetry.
std::vector<NodeId> role_nodes(const PolicySpec& p);

bool applies_to(const PolicySpec& p, const Pec& pec);

/// What a check sees: the composed data plane and, for PathConsistency, the
/// per-prefix control-plane results behind it.
struct PolicyInput {
  const ForwardingGraph* graph = nullptr;
  const std::vector<PrefixRun>* runs = nullptr;
};

struct PolicyResult {
  bool pass = true;
  std::vector<NodeId> witness;  // offending path or cycle
  std::string message;
};

PolicyResult check(const PolicySpec& p, const PolicyInput& in, const Topology& topo);

/// Two inputs with equal keys get the same verdict: per source, the walk
/// lengths and ends and which interesting nodes sit at which positions.
Hash128 equivalence_key(const PolicySpec& p, const PolicyInput& in, std::size_t node_count);

/// Rejects policies that name nodes outside the network.
void validate_policy(const PolicySpec& p, std::size_t node_count);

}  // namespace netconv
