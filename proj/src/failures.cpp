#include "netconv/failures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "netconv/hash.hpp"

namespace netconv {

namespace {

std::uint64_t hash_str(std::string_view s) {
  Hasher128 h;
  h.add(s);
  return h.finish().lo;
}

std::uint64_t map_label(const std::optional<std::string>& m) { return m ? hash_str(*m) : 0; }

/// Renumbers arbitrary colors densely in order of first appearance.
DevicePartition densify(const std::vector<std::uint64_t>& colors) {
  DevicePartition p;
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  p.class_of.reserve(colors.size());
  for (auto c : colors) {
    auto [it, _] = ids.emplace(c, static_cast<std::uint32_t>(ids.size()));
    p.class_of.push_back(it->second);
  }
  p.class_count = ids.size();
  return p;
}

void combinations(std::size_t n, int k, std::size_t from, std::vector<LinkId>& cur,
                  std::vector<std::vector<LinkId>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(static_cast<LinkId>(i));
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<LinkId>> DevicePartition::link_classes(const Topology& topo, const LinkMask& failed) const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<LinkId>> groups;
  for (LinkId l = 0; l < topo.link_count(); ++l) {
    if (!failed.alive(l)) continue;
    const auto& link = topo.link(l);
    auto a = class_of[link.a];
    auto b = class_of[link.b];
    groups[{std::min(a, b), std::max(a, b)}].push_back(l);
  }
  std::vector<std::vector<LinkId>> out;
  for (auto& [_, links] : groups) out.push_back(std::move(links));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

std::vector<std::uint64_t> initial_colors(const Network& net, const Pec& pec, const std::vector<NodeId>& interesting,
                                          const std::vector<NodeId>& sources) {
  const std::size_t n = net.node_count();
  std::vector<std::uint64_t> colors(n);
  const bool mark_sources = !sources.empty() && sources.size() < n;
  for (NodeId u = 0; u < n; ++u) {
    const auto& cfg = net.config(u);
    Hasher128 h;
    h.add(cfg.ospf ? 1 : 0).add(cfg.bgp ? 1 : 0).add(cfg.loopback ? 1 : 0);
    for (const auto& c : pec.prefixes) {
      const auto& obj = c.config;
      auto has = [&](const std::vector<NodeId>& v) { return std::binary_search(v.begin(), v.end(), u); };
      h.add(0x0c0ffeeULL).add(c.prefix.base().value).add(static_cast<std::uint64_t>(c.prefix.length()));
      h.add(has(obj.ospf_origins)).add(has(obj.bgp_origins)).add(has(obj.loopback_owners));
      for (const auto& s : obj.statics) {
        if (s.node != u) continue;
        // attached next hops are edge labels, recursive ones stay here
        h.add(s.route.next_hop ? s.route.next_hop->value : 0xa77ac4edULL);
      }
    }
    if (mark_sources && std::find(sources.begin(), sources.end(), u) != sources.end()) h.add(0x5011ceULL);
    if (std::find(interesting.begin(), interesting.end(), u) != interesting.end()) h.add(0x1000000ULL + u);
    colors[u] = h.finish().lo;
  }
  return colors;
}

DevicePartition refine_partition(const Network& net, const std::vector<std::uint64_t>& colors, const LinkMask& failed) {
  const auto& topo = net.topology;
  const std::size_t n = net.node_count();
  if (colors.size() != n) throw std::invalid_argument("one color per node required");

  // Static labels are fixed per directed link; compute once.
  auto static_label = [&](NodeId u, NodeId v) {
    std::uint64_t lab = 0;
    for (const auto& s : net.config(u).statics) {
      if (s.next_hop_node == v) lab = mix64(lab ^ (std::uint64_t{s.prefix.base().value} << 6) ^ s.prefix.length());
    }
    return lab;
  };
  auto session_label = [&](NodeId u, NodeId v) -> std::uint64_t {
    const auto* s = net.session(u, v);
    if (!s) return 0;
    const auto* b = net.session(v, u);
    Hasher128 h(static_cast<std::uint64_t>(s->kind) + 1);
    h.add(map_label(s->import_map)).add(map_label(s->export_map));
    if (b) h.add(map_label(b->import_map)).add(map_label(b->export_map));
    return h.finish().lo;
  };

  std::vector<std::vector<std::pair<NodeId, std::uint64_t>>> edges(n);
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& adj : topo.neighbors(u)) {
      if (!failed.alive(adj.link)) continue;
      NodeId v = adj.neighbor;
      Hasher128 h;
      h.add(static_cast<std::uint64_t>(net.ospf_cost(u, adj.link)));
      h.add(static_cast<std::uint64_t>(net.ospf_cost(v, adj.link)));
      h.add(session_label(u, v)).add(static_label(u, v)).add(static_label(v, u));
      edges[u].emplace_back(v, h.finish().lo);
    }
    if (const auto& bgp = net.config(u).bgp) {
      for (const auto& s : bgp->sessions) {
        if (topo.link_between(u, s.peer)) continue;
        edges[u].emplace_back(s.peer, mix64(0x6d6801ULL ^ session_label(u, s.peer)));
      }
    }
  }

  auto part = densify(colors);
  while (true) {
    std::vector<std::uint64_t> next(n);
    for (NodeId u = 0; u < n; ++u) {
      std::vector<std::pair<std::uint32_t, std::uint64_t>> sig;
      for (const auto& [v, lab] : edges[u]) sig.emplace_back(part.class_of[v], lab);
      std::sort(sig.begin(), sig.end());
      Hasher128 h(part.class_of[u]);
      for (const auto& [c, lab] : sig) h.add(c).add(lab);
      next[u] = h.finish().lo;
    }
    auto refined = densify(next);
    if (refined.class_count == part.class_count) return part;
    part = std::move(refined);
  }
}

std::vector<std::vector<LinkId>> enumerate_failures(const Network& net, int k, const std::vector<std::uint64_t>* colors) {
  if (k < 0) throw std::invalid_argument("failure bound must be non-negative");
  const auto& topo = net.topology;
  std::vector<std::vector<LinkId>> out;
  if (!colors) {
    for (int size = 0; size <= k && size <= static_cast<int>(topo.link_count()); ++size) {
      std::vector<LinkId> cur;
      combinations(topo.link_count(), size, 0, cur, out);
    }
    return out;
  }
  std::set<std::vector<LinkId>> seen;
  std::function<void(const std::vector<LinkId>&)> rec = [&](const std::vector<LinkId>& failed) {
    if (!seen.insert(failed).second) return;
    if (static_cast<int>(failed.size()) == k) return;
    LinkMask mask(topo.link_count(), failed);
    auto part = refine_partition(net, *colors, mask);
    for (const auto& lec : part.link_classes(topo, mask)) {
      auto next = failed;
      next.push_back(lec.front());
      std::sort(next.begin(), next.end());
      rec(next);
    }
  };
  rec({});
  out.assign(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace netconv
