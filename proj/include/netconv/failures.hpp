#pragma once

#include <cstdint>
#include <vector>

#include "netconv/network.hpp"
#include "netconv/pec.hpp"

namespace netconv {

/// Device equivalence classes: a stable coloring of the nodes.
struct DevicePartition {
  std::vector<std::uint32_t> class_of;  // dense class ids, numbered by first node
  std::size_t class_count = 0;

  /// Live links grouped by the unordered pair of classes they join; each
  /// group sorted, groups ordered by their lowest link id.
  std::vector<std::vector<LinkId>> link_classes(const Topology& topo, const LinkMask& failed) const;
};

/// Per-node starting colors for one class: protocols, origination roles,
/// static configuration and policy roles. Interesting nodes get unique
/// colors; sources share a mark when they are a proper subset.
std::vector<std::uint64_t> initial_colors(const Network& net, const Pec& pec, const std::vector<NodeId>& interesting,
                                          const std::vector<NodeId>& sources);

/// Coarsest stable refinement of `colors` on the live topology: members of
/// a class see the same multiset of (neighbor class, link and session labels).
DevicePartition refine_partition(const Network& net, const std::vector<std::uint64_t>& colors, const LinkMask& failed);

/// Failure scenarios of at most `k` links as sorted link-id lists, smallest
/// first. With `colors`, only one representative link per equivalence class
/// is failed at each pick and the partition is refined after every pick.
std::vector<std::vector<LinkId>> enumerate_failures(const Network& net, int k,
                                                    const std::vector<std::uint64_t>* colors = nullptr);

}  // namespace netconv
