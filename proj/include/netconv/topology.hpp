#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "netconv/address.hpp"

namespace netconv {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;

inline constexpr NodeId kNoNode = ~NodeId{0};

struct Link {
  NodeId a = 0;
  NodeId b = 0;
  int cost = 1;

  NodeId other(NodeId n) const { return n == a ? b : a; }
};

struct Adjacency {
  NodeId neighbor;
  LinkId link;
};

/// Undirected graph of routers. Node and link ids are dense indices in
/// insertion order; adjacency lists are sorted by neighbor id.
class Topology {
 public:
  NodeId add_node(std::string name);
  /// Throws std::invalid_argument on self loops, parallel links, cost < 1.
  LinkId add_link(NodeId a, NodeId b, int cost = 1);

  std::size_t node_count() const { return names_.size(); }
  std::size_t link_count() const { return links_.size(); }

  const std::string& name(NodeId n) const { return names_.at(n); }
  std::optional<NodeId> find(const std::string& name) const;
  NodeId id(const std::string& name) const;

  const Link& link(LinkId l) const { return links_.at(l); }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Adjacency>& neighbors(NodeId n) const { return adjacency_.at(n); }
  std::optional<LinkId> link_between(NodeId a, NodeId b) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<Link> links_;
  std::vector<std::vector<Adjacency>> adjacency_;
};

/// Links removed for one exploration; ids kept sorted.
class LinkMask {
 public:
  LinkMask() = default;
  LinkMask(std::size_t link_count, const std::vector<LinkId>& failed);

  bool alive(LinkId l) const { return l >= dead_.size() || !dead_[l]; }
  const std::vector<LinkId>& failed() const { return failed_; }

 private:
  std::vector<bool> dead_;
  std::vector<LinkId> failed_;
};

}  // namespace netconv
