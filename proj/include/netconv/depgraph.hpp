#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "netconv/network.hpp"
#include "netconv/pec.hpp"

namespace netconv {

enum class DependencyReason : std::uint8_t { StaticNextHop, IbgpLoopback };

std::string_view to_string(DependencyReason r);

struct DependencyEdge {
  PecId from = 0;  // depends on `to`
  PecId to = 0;
  DependencyReason reason = DependencyReason::StaticNextHop;

  auto operator<=>(const DependencyEdge&) const = default;
};

struct DependencyGraph {
  std::size_t pec_count = 0;
  std::vector<DependencyEdge> edges;  // sorted, unique
  std::vector<std::string> diagnostics;

  /// Targets of `p`'s edges, sorted and unique.
  std::vector<PecId> dependencies(PecId p) const;
  bool has_dependents(PecId p) const;
};

/// Edges from classes with recursive static routes to the class holding the
/// next-hop address, and from BGP classes to the classes of the loopbacks
/// their multihop iBGP sessions ride on.
DependencyGraph build_dependency_graph(const std::vector<Pec>& pecs, const Network& net);

struct ScheduleGroup {
  std::vector<PecId> pecs;  // sorted
  bool recursive = false;   // the group depends on itself
  /// Run level: every dependency sits in a group of a lower level.
  std::size_t level = 0;
  std::vector<std::size_t> depends_on;  // group indices, sorted
};

struct Schedule {
  std::vector<ScheduleGroup> groups;  // dependencies first
  std::vector<std::size_t> group_of;  // per PEC id

  std::size_t level_count() const;
};

Schedule compute_schedule(const DependencyGraph& g);

}  // namespace netconv
