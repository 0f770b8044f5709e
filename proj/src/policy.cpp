#include "netconv/policy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace netconv {

namespace {

constexpr PolicyKind kAllKinds[] = {
    PolicyKind::Reachability,      PolicyKind::LoopFreedom,          PolicyKind::BlackHoleFreedom,
    PolicyKind::Waypoint,          PolicyKind::BoundedPathLength,    PolicyKind::MultipathConsistency,
    PolicyKind::PathConsistency,
};

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<NodeId>(i);
  return v;
}

std::string path_text(const std::vector<NodeId>& nodes, const Topology& topo) {
  std::string s;
  for (auto n : nodes) {
    if (!s.empty()) s += " -> ";
    s += topo.name(n);
  }
  return s;
}

PolicyResult fail(std::vector<NodeId> witness, std::string message, const Topology& topo) {
  message += ": " + path_text(witness, topo);
  return PolicyResult{false, std::move(witness), std::move(message)};
}

bool contains_any(const std::vector<NodeId>& path, const std::vector<NodeId>& set) {
  return std::any_of(path.begin(), path.end(),
                     [&](NodeId n) { return std::find(set.begin(), set.end(), n) != set.end(); });
}

/// Control-plane summary of one node across the runs: everything but the
/// concrete node ids on the path.
std::uint64_t control_signature(const std::vector<PrefixRun>* runs, NodeId n) {
  Hasher128 h;
  if (!runs) return 0;
  for (const auto& r : *runs) {
    const auto& e = r.best.at(n);
    h.add(static_cast<std::uint64_t>(r.protocol)).add(static_cast<std::uint64_t>(e.path.kind()));
    h.add(e.path.length()).add(e.alternates.size());
    h.add(static_cast<std::uint64_t>(e.local_pref)).add(static_cast<std::uint64_t>(e.ospf_cost));
    h.add(static_cast<std::uint64_t>(e.igp_cost));
    for (auto c : e.communities) h.add(c);
  }
  return h.finish().lo;
}

}  // namespace

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Reachability: return "reachability";
    case PolicyKind::LoopFreedom: return "loop-freedom";
    case PolicyKind::BlackHoleFreedom: return "black-hole-freedom";
    case PolicyKind::Waypoint: return "waypoint";
    case PolicyKind::BoundedPathLength: return "bounded-path-length";
    case PolicyKind::MultipathConsistency: return "multipath-consistency";
    case PolicyKind::PathConsistency: return "path-consistency";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view s) {
  for (auto k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown policy kind '" + std::string(s) + "'");
}

std::vector<NodeId> effective_sources(const PolicySpec& p, std::size_t node_count) {
  if (p.sources.empty()) return all_nodes(node_count);
  return sorted_unique(p.sources);
}

std::vector<NodeId> effective_interesting(const PolicySpec& p, std::size_t node_count) {
  if (p.interesting.empty()) return all_nodes(node_count);
  auto v = p.interesting;
  v.insert(v.end(), p.waypoints.begin(), p.waypoints.end());
  v.insert(v.end(), p.devices.begin(), p.devices.end());
  return sorted_unique(std::move(v));
}

std::vector<NodeId> role_nodes(const PolicySpec& p) {
  auto v = p.interesting;
  v.insert(v.end(), p.waypoints.begin(), p.waypoints.end());
  v.insert(v.end(), p.devices.begin(), p.devices.end());
  return sorted_unique(std::move(v));
}

bool applies_to(const PolicySpec& p, const Pec& pec) {
  if (!pec.is_routed()) return false;
  return !p.destination || p.destination->overlaps(pec.range);
}

void validate_policy(const PolicySpec& p, std::size_t node_count) {
  auto check_list = [&](const std::vector<NodeId>& v, const char* what) {
    for (auto n : v) {
      if (n >= node_count) throw std::invalid_argument("policy '" + p.name + "': " + what + " names an unknown node");
    }
  };
  check_list(p.sources, "sources");
  check_list(p.interesting, "interesting");
  check_list(p.waypoints, "waypoints");
  check_list(p.devices, "devices");
  if (p.kind == PolicyKind::Waypoint && p.waypoints.empty())
    throw std::invalid_argument("policy '" + p.name + "': waypoint policy needs waypoints");
  if (p.kind == PolicyKind::BoundedPathLength && p.max_length < 0)
    throw std::invalid_argument("policy '" + p.name + "': max_length must be non-negative");
}

PolicyResult check(const PolicySpec& p, const PolicyInput& in, const Topology& topo) {
  const auto& g = *in.graph;
  const auto sources = effective_sources(p, g.entries.size());

  if (p.kind == PolicyKind::PathConsistency) {
    const auto devices = p.devices.empty() ? sources : sorted_unique(p.devices);
    if (devices.size() < 2) return {};
    auto summary = [&](NodeId d) {
      auto walks = walks_from(g, d);
      std::set<std::pair<WalkEnd, std::size_t>> shape;
      for (const auto& w : walks) shape.emplace(w.end, w.nodes.size());
      return std::make_pair(shape, control_signature(in.runs, d));
    };
    const auto first = summary(devices.front());
    for (std::size_t i = 1; i < devices.size(); ++i) {
      if (summary(devices[i]) == first) continue;
      return fail({devices.front(), devices[i]}, "devices disagree on their paths", topo);
    }
    return {};
  }

  for (auto s : sources) {
    auto walks = walks_from(g, s);
    if (p.kind == PolicyKind::MultipathConsistency) {
      for (const auto& w : walks) {
        if (w.end != walks.front().end)
          return fail(w.nodes, "multipath branches from " + topo.name(s) + " end differently", topo);
      }
      continue;
    }
    for (const auto& w : walks) {
      switch (p.kind) {
        case PolicyKind::Reachability:
          if (w.end != WalkEnd::Delivered) return fail(w.nodes, topo.name(s) + " does not reach the destination", topo);
          break;
        case PolicyKind::LoopFreedom:
          if (w.end == WalkEnd::Looped) {
            auto start = std::find(w.nodes.begin(), w.nodes.end(), w.nodes.back());
            return fail({start, w.nodes.end()}, "forwarding loop", topo);
          }
          break;
        case PolicyKind::BlackHoleFreedom:
          if (w.end == WalkEnd::Dropped) return fail(w.nodes, "traffic dropped", topo);
          break;
        case PolicyKind::Waypoint:
          if (w.end == WalkEnd::Delivered && !contains_any(w.nodes, p.waypoints))
            return fail(w.nodes, "path avoids every waypoint", topo);
          break;
        case PolicyKind::BoundedPathLength:
          if (static_cast<int>(w.nodes.size()) - 1 > p.max_length)
            return fail(w.nodes, "path longer than " + std::to_string(p.max_length) + " hops", topo);
          break;
        default:
          break;
      }
    }
  }
  return {};
}

Hash128 equivalence_key(const PolicySpec& p, const PolicyInput& in, std::size_t node_count) {
  const auto& g = *in.graph;
  const auto sources = effective_sources(p, node_count);
  const auto interesting = effective_interesting(p, node_count);
  std::vector<bool> marked(node_count, false);
  for (auto n : interesting) marked[n] = true;

  Hasher128 h(static_cast<std::uint64_t>(p.kind) + 1);
  auto add_walks = [&](NodeId s) {
    h.add(0xfeedULL).add(s);
    for (const auto& w : walks_from(g, s)) {
      h.add(w.nodes.size()).add(static_cast<std::uint64_t>(w.end));
      for (std::size_t i = 0; i < w.nodes.size(); ++i) {
        if (marked[w.nodes[i]]) h.add(i).add(w.nodes[i]);
      }
    }
  };
  for (auto s : sources) add_walks(s);
  if (p.kind == PolicyKind::PathConsistency) {
    const auto devices = p.devices.empty() ? sources : sorted_unique(p.devices);
    for (auto d : devices) {
      add_walks(d);
      h.add(control_signature(in.runs, d));
    }
  }
  return h.finish();
}

}  // namespace netconv
