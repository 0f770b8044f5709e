#include "netconv/generators.hpp"

#include <deque>
#include <stdexcept>

namespace netconv {

namespace {

void add_default_policies(NetworkSpec& spec) {
  PolicySpec loop;
  loop.name = "no-loops";
  loop.kind = PolicyKind::LoopFreedom;
  PolicySpec reach;
  reach.name = "reachable";
  reach.kind = PolicyKind::Reachability;
  spec.policies = {loop, reach};
}

void enable_ospf(Network& net) {
  for (auto& cfg : net.configs) cfg.ospf = OspfProcess{};
}

Prefix slash24(int a, int b) { return Prefix(Address{(10u << 24) | (std::uint32_t(a) << 16) | (std::uint32_t(b) << 8)}, 24); }

}  // namespace

NetworkSpec make_fat_tree(int k, StaticMode statics) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("fat tree arity must be even and at least 2");
  NetworkSpec spec;
  auto& net = spec.network;
  const int half = k / 2;
  std::vector<NodeId> cores;
  for (int c = 0; c < half * half; ++c) cores.push_back(net.add_node("c" + std::to_string(c)));
  std::vector<std::vector<NodeId>> aggs(k), edges(k);
  for (int p = 0; p < k; ++p) {
    for (int i = 0; i < half; ++i) aggs[p].push_back(net.add_node("a" + std::to_string(p) + "_" + std::to_string(i)));
    for (int i = 0; i < half; ++i) edges[p].push_back(net.add_node("e" + std::to_string(p) + "_" + std::to_string(i)));
  }
  for (int p = 0; p < k; ++p) {
    for (int i = 0; i < half; ++i) {
      for (int j = 0; j < half; ++j) net.topology.add_link(edges[p][i], aggs[p][j]);
      for (int j = 0; j < half; ++j) net.topology.add_link(aggs[p][i], cores[i * half + j]);
    }
  }
  enable_ospf(net);
  for (int p = 0; p < k; ++p) {
    for (int i = 0; i < half; ++i) net.config(edges[p][i]).ospf->originated.push_back(slash24(p, i));
  }

  if (statics != StaticMode::None) {
    const NodeId dest = edges[0][0];
    const Prefix target = slash24(0, 0);
    const std::size_t n = net.node_count();
    std::vector<int> dist(n, -1);
    std::deque<NodeId> q{dest};
    dist[dest] = 0;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (const auto& adj : net.topology.neighbors(u)) {
        if (dist[adj.neighbor] < 0) {
          dist[adj.neighbor] = dist[u] + 1;
          q.push_back(adj.neighbor);
        }
      }
    }
    for (NodeId u = 0; u < n; ++u) {
      if (u == dest) continue;
      for (const auto& adj : net.topology.neighbors(u)) {
        if (dist[adj.neighbor] != dist[u] - 1) continue;
        net.config(u).statics.push_back(StaticRoute{target, std::nullopt, adj.neighbor});
        break;
      }
    }
    if (statics == StaticMode::Loop) {
      // a0_0 sends back down to e0_1, which points up at a0_0
      for (auto& s : net.config(aggs[0][0]).statics) s.next_hop_node = edges[0][1];
    }
  }
  add_default_policies(spec);
  return spec;
}

NetworkSpec make_ring(int n) {
  if (n < 3) throw std::invalid_argument("a ring needs at least 3 nodes");
  NetworkSpec spec;
  auto& net = spec.network;
  for (int i = 0; i < n; ++i) net.add_node("r" + std::to_string(i));
  for (int i = 0; i < n; ++i) net.topology.add_link(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  enable_ospf(net);
  net.config(0).ospf->originated.push_back(slash24(0, 0));
  add_default_policies(spec);
  return spec;
}

NetworkSpec make_line(int n) {
  if (n < 2) throw std::invalid_argument("a line needs at least 2 nodes");
  NetworkSpec spec;
  auto& net = spec.network;
  for (int i = 0; i < n; ++i) net.add_node("l" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) net.topology.add_link(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  enable_ospf(net);
  net.config(0).ospf->originated.push_back(slash24(0, 0));
  add_default_policies(spec);
  return spec;
}

}  // namespace netconv
