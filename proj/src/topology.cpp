#include "netconv/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace netconv {

NodeId Topology::add_node(std::string name) {
  if (by_name_.contains(name)) throw std::invalid_argument("duplicate node '" + name + "'");
  auto id = static_cast<NodeId>(names_.size());
  by_name_.emplace(name, id);
  names_.push_back(std::move(name));
  adjacency_.emplace_back();
  return id;
}

LinkId Topology::add_link(NodeId a, NodeId b, int cost) {
  if (a >= node_count() || b >= node_count()) throw std::invalid_argument("link endpoint out of range");
  if (a == b) throw std::invalid_argument("self-loop link at '" + names_[a] + "'");
  if (cost < 1) throw std::invalid_argument("link cost must be >= 1");
  if (link_between(a, b)) {
    throw std::invalid_argument("parallel link between '" + names_[a] + "' and '" + names_[b] + "'");
  }
  auto id = static_cast<LinkId>(links_.size());
  links_.push_back(Link{a, b, cost});
  auto insert_sorted = [](std::vector<Adjacency>& adj, Adjacency entry) {
    auto pos = std::lower_bound(adj.begin(), adj.end(), entry,
                                [](const Adjacency& x, const Adjacency& y) { return x.neighbor < y.neighbor; });
    adj.insert(pos, entry);
  };
  insert_sorted(adjacency_[a], {b, id});
  insert_sorted(adjacency_[b], {a, id});
  return id;
}

std::optional<NodeId> Topology::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

NodeId Topology::id(const std::string& name) const {
  auto n = find(name);
  if (!n) throw std::invalid_argument("unknown node '" + name + "'");
  return *n;
}

std::optional<LinkId> Topology::link_between(NodeId a, NodeId b) const {
  for (const auto& adj : adjacency_.at(a)) {
    if (adj.neighbor == b) return adj.link;
  }
  return std::nullopt;
}

LinkMask::LinkMask(std::size_t link_count, const std::vector<LinkId>& failed)
    : dead_(link_count, false), failed_(failed) {
  std::sort(failed_.begin(), failed_.end());
  failed_.erase(std::unique(failed_.begin(), failed_.end()), failed_.end());
  for (auto l : failed_) {
    if (l >= link_count) throw std::invalid_argument("failed link id out of range");
    dead_[l] = true;
  }
}

}  // namespace netconv
