#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netconv/address.hpp"
#include "netconv/network.hpp"

namespace netconv {

struct StaticRef {
  NodeId node = kNoNode;
  StaticRoute route;

  bool operator==(const StaticRef& o) const {
    return node == o.node && route.prefix == o.route.prefix && route.next_hop == o.route.next_hop &&
           route.next_hop_node == o.route.next_hop_node;
  }
};

/// What the configuration says about one prefix.
struct ConfigObject {
  std::vector<NodeId> ospf_origins;     // sorted, unique
  std::vector<NodeId> bgp_origins;      // sorted, unique
  std::vector<NodeId> loopback_owners;  // sorted, unique
  std::vector<StaticRef> statics;       // sorted by node
  std::vector<std::string> route_maps;  // maps with a clause matching the prefix

  /// True when some node installs a route for the prefix.
  bool routed() const {
    return !ospf_origins.empty() || !bgp_origins.empty() || !loopback_owners.empty() || !statics.empty();
  }
  bool empty() const { return !routed() && route_maps.empty(); }
  void absorb(const ConfigObject& other);

  bool operator==(const ConfigObject&) const = default;
};

/// Bit-per-level binary trie. The root always carries the default object.
class PrefixTrie {
 public:
  PrefixTrie();

  static PrefixTrie build(const Network& net);

  ConfigObject& insert(const Prefix& p);
  const ConfigObject* find(const Prefix& p) const;
  std::size_t object_count() const;
  /// Depth-first walk; `fn(prefix, object)` for every node with an object.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    walk(0, 0, 0, fn);
  }

  struct Node {
    std::int32_t child[2] = {-1, -1};
    std::optional<ConfigObject> object;
  };
  const Node& node(std::size_t i) const { return nodes_[i]; }

 private:
  template <typename Fn>
  void walk(std::size_t i, int depth, std::uint32_t base, Fn& fn) const {
    const auto& nd = nodes_[i];
    if (nd.object) fn(Prefix(Address{base}, depth), *nd.object);
    for (int b = 0; b < 2; ++b) {
      if (nd.child[b] < 0) continue;
      std::uint32_t next = b ? base | (std::uint32_t{1} << (31 - depth)) : base;
      walk(static_cast<std::size_t>(nd.child[b]), depth + 1, next, fn);
    }
  }

  std::vector<Node> nodes_;
};

struct Contribution {
  Prefix prefix;
  ConfigObject config;

  bool operator==(const Contribution&) const = default;
};

using PecId = std::uint32_t;

struct PacketEquivalenceClass {
  PecId id = 0;
  PrefixRange range;
  /// Every configured prefix covering the range, longest first.
  std::vector<Contribution> prefixes;

  /// Contributions that some node installs a route for.
  std::vector<const Contribution*> routed() const;
  bool is_routed() const { return !routed().empty(); }
};

using Pec = PacketEquivalenceClass;

/// Adds `obj` for `prefix` to a partition, keeping longest-first order and
/// unioning with an existing entry for the same prefix.
void merge_config(std::vector<Contribution>& partition, const ConfigObject& obj, const Prefix& prefix);

/// Partition of the address space, sorted by range; adjacent ranges with the
/// same merged configuration are joined.
std::vector<Pec> compute_pecs(const PrefixTrie& trie);

/// Index of the class containing `a`.
std::size_t find_pec(const std::vector<Pec>& pecs, Address a);

}  // namespace netconv
