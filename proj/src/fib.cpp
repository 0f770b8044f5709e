#include "netconv/fib.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace netconv {

std::string_view to_string(FibAction a) {
  switch (a) {
    case FibAction::Drop: return "drop";
    case FibAction::Deliver: return "deliver";
    case FibAction::Forward: return "forward";
  }
  return "?";
}

std::string_view to_string(RouteSource s) {
  switch (s) {
    case RouteSource::None: return "none";
    case RouteSource::Connected: return "connected";
    case RouteSource::Static: return "static";
    case RouteSource::Ospf: return "ospf";
    case RouteSource::Ebgp: return "ebgp";
    case RouteSource::Ibgp: return "ibgp";
  }
  return "?";
}

RouteSource parse_route_source(std::string_view s) {
  for (auto v : {RouteSource::None, RouteSource::Connected, RouteSource::Static, RouteSource::Ospf, RouteSource::Ebgp,
                 RouteSource::Ibgp}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown route source '" + std::string(s) + "'");
}

FibAction parse_fib_action(std::string_view s) {
  for (auto v : {FibAction::Drop, FibAction::Deliver, FibAction::Forward}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown forwarding action '" + std::string(s) + "'");
}

int administrative_distance(RouteSource s) {
  switch (s) {
    case RouteSource::Connected: return 0;
    case RouteSource::Static: return 1;
    case RouteSource::Ebgp: return 20;
    case RouteSource::Ospf: return 110;
    case RouteSource::Ibgp: return 200;
    case RouteSource::None: return 255;
  }
  return 255;
}

std::string_view to_string(WalkEnd e) {
  switch (e) {
    case WalkEnd::Delivered: return "delivered";
    case WalkEnd::Dropped: return "dropped";
    case WalkEnd::Looped: return "looped";
  }
  return "?";
}

namespace {

struct Candidate {
  int length = 0;
  int distance = 255;
  FibEntry entry;
};

/// Forwarding at `n` toward an address, taken from another class's graph.
FibEntry resolve_through(const FibLookup* lookup, Address target, NodeId n, const Topology& topo,
                         std::vector<std::string>& diags, const std::string& what) {
  FibEntry e;
  const ForwardingGraph* g = lookup ? lookup->graph_for(target) : nullptr;
  if (!g) {
    diags.push_back(what + " at '" + topo.name(n) + "': next hop " + target.to_string() + " is unresolved");
    return e;
  }
  const auto& via = g->entries.at(n);
  if (via.action == FibAction::Drop) {
    diags.push_back(what + " at '" + topo.name(n) + "': next hop " + target.to_string() + " is unreachable");
    return e;
  }
  e.action = via.action;
  e.next_hops = via.next_hops;
  return e;
}

}  // namespace

ForwardingGraph build_fib(const Network& net, const Pec& pec, const std::vector<PrefixRun>& runs,
                          const LinkMask& failures, const FibLookup* lookup) {
  const auto& topo = net.topology;
  const std::size_t n = net.node_count();
  ForwardingGraph g;
  g.entries.resize(n);
  std::vector<std::vector<Candidate>> cands(n);

  for (const auto& run : runs) {
    if (run.best.size() != n) throw std::invalid_argument("run size does not match the network");
    for (NodeId u = 0; u < n; ++u) {
      const auto& e = run.best[u];
      if (e.is_bottom()) continue;
      Candidate c;
      c.length = run.prefix.length();
      c.entry.prefix = run.prefix;
      if (e.path.is_epsilon()) {
        c.entry.action = FibAction::Deliver;
        c.entry.source = RouteSource::Connected;
      } else if (run.protocol == Protocol::Ospf) {
        c.entry.action = FibAction::Forward;
        c.entry.next_hops = e.next_hops();
        c.entry.source = RouteSource::Ospf;
      } else {
        NodeId head = e.path.head();
        const auto* s = net.session(u, head);
        bool ibgp = s && s->kind == SessionKind::Ibgp;
        c.entry.source = ibgp ? RouteSource::Ibgp : RouteSource::Ebgp;
        bool multihop = ibgp && net.config(u).loopback && net.config(head).loopback;
        if (multihop) {
          auto via = resolve_through(lookup, *net.config(head).loopback, u, topo, g.diagnostics,
                                     "bgp route " + run.prefix.to_string());
          c.entry.action = via.action;
          c.entry.next_hops = via.next_hops;
        } else {
          c.entry.action = FibAction::Forward;
          c.entry.next_hops = {head};
        }
      }
      c.distance = administrative_distance(c.entry.source);
      cands[u].push_back(std::move(c));
    }
  }

  for (const auto& contrib : pec.prefixes) {
    for (auto u : contrib.config.loopback_owners) {
      Candidate c;
      c.length = contrib.prefix.length();
      c.distance = administrative_distance(RouteSource::Connected);
      c.entry = FibEntry{FibAction::Deliver, {}, contrib.prefix, RouteSource::Connected};
      cands[u].push_back(std::move(c));
    }
    for (const auto& s : contrib.config.statics) {
      Candidate c;
      c.length = contrib.prefix.length();
      c.distance = administrative_distance(RouteSource::Static);
      c.entry.prefix = contrib.prefix;
      c.entry.source = RouteSource::Static;
      if (s.route.next_hop_node) {
        auto link = topo.link_between(s.node, *s.route.next_hop_node);
        if (!link || !failures.alive(*link)) continue;  // interface down: route withdrawn
        c.entry.action = FibAction::Forward;
        c.entry.next_hops = {*s.route.next_hop_node};
      } else {
        auto via = resolve_through(lookup, *s.route.next_hop, s.node, topo, g.diagnostics,
                                   "static route " + contrib.prefix.to_string());
        c.entry.action = via.action;
        c.entry.next_hops = via.next_hops;
      }
      cands[s.node].push_back(std::move(c));
    }
  }

  for (NodeId u = 0; u < n; ++u) {
    auto& cs = cands[u];
    if (cs.empty()) continue;
    std::stable_sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
      if (a.length != b.length) return a.length > b.length;
      return a.distance < b.distance;
    });
    FibEntry win = cs.front().entry;
    for (std::size_t i = 1; i < cs.size(); ++i) {
      if (cs[i].length != cs.front().length || cs[i].distance != cs.front().distance) break;
      if (win.action == FibAction::Forward && cs[i].entry.action == FibAction::Forward) {
        win.next_hops.insert(win.next_hops.end(), cs[i].entry.next_hops.begin(), cs[i].entry.next_hops.end());
      }
    }
    std::sort(win.next_hops.begin(), win.next_hops.end());
    win.next_hops.erase(std::unique(win.next_hops.begin(), win.next_hops.end()), win.next_hops.end());
    g.entries[u] = std::move(win);
  }
  return g;
}

namespace {

class GroupLookup : public FibLookup {
 public:
  GroupLookup(const std::vector<Pec>& pecs, const std::vector<GroupFibInput>& group,
              const std::vector<ForwardingGraph>* previous, const FibLookup* deps)
      : pecs_(&pecs), group_(&group), previous_(previous), deps_(deps) {}

  const ForwardingGraph* graph_for(Address a) const override {
    const auto& pec = (*pecs_)[find_pec(*pecs_, a)];
    for (std::size_t i = 0; i < group_->size(); ++i) {
      if ((*group_)[i].pec->id == pec.id) return previous_ ? &(*previous_)[i] : nullptr;
    }
    return deps_ ? deps_->graph_for(a) : nullptr;
  }

 private:
  const std::vector<Pec>* pecs_;
  const std::vector<GroupFibInput>* group_;
  const std::vector<ForwardingGraph>* previous_;
  const FibLookup* deps_;
};

}  // namespace

std::vector<ForwardingGraph> build_group_fibs(const Network& net, const std::vector<Pec>& pecs,
                                              const std::vector<GroupFibInput>& group, const LinkMask& failures,
                                              const FibLookup* deps, int depth_limit) {
  std::vector<ForwardingGraph> prev;
  bool have_prev = false;
  for (int round = 0; round <= depth_limit; ++round) {
    GroupLookup lookup(pecs, group, have_prev ? &prev : nullptr, deps);
    std::vector<ForwardingGraph> cur;
    cur.reserve(group.size());
    for (const auto& in : group) cur.push_back(build_fib(net, *in.pec, in.runs, failures, &lookup));
    if (have_prev && cur == prev) return cur;
    prev = std::move(cur);
    have_prev = true;
  }
  // still changing: whatever depends on the unstable part is dropped
  GroupLookup lookup(pecs, group, &prev, deps);
  std::vector<ForwardingGraph> last;
  for (const auto& in : group) last.push_back(build_fib(net, *in.pec, in.runs, failures, &lookup));
  for (std::size_t i = 0; i < last.size(); ++i) {
    for (std::size_t u = 0; u < last[i].entries.size(); ++u) {
      if (last[i].entries[u] == prev[i].entries[u]) continue;
      last[i].entries[u] = FibEntry{};
      last[i].diagnostics.push_back("recursive resolution at '" + net.topology.name(static_cast<NodeId>(u)) +
                                    "' exceeds depth " + std::to_string(depth_limit));
    }
  }
  return last;
}

std::vector<Walk> walks_from(const ForwardingGraph& g, NodeId source) {
  std::vector<Walk> out;
  std::vector<NodeId> path;
  std::vector<bool> on_path(g.entries.size(), false);
  // explicit stack of (node, next branch index)
  std::vector<std::pair<NodeId, std::size_t>> stack;
  auto enter = [&](NodeId n) {
    if (on_path[n]) {
      auto w = path;
      w.push_back(n);
      out.push_back(Walk{std::move(w), WalkEnd::Looped});
      return;
    }
    const auto& e = g.entries[n];
    path.push_back(n);
    if (e.action != FibAction::Forward || e.next_hops.empty()) {
      out.push_back(Walk{path, e.action == FibAction::Deliver ? WalkEnd::Delivered : WalkEnd::Dropped});
      path.pop_back();
      return;
    }
    on_path[n] = true;
    stack.emplace_back(n, 0);
  };
  enter(source);
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    const auto& hops = g.entries[n].next_hops;
    if (i == hops.size()) {
      on_path[n] = false;
      path.pop_back();
      stack.pop_back();
      continue;
    }
    NodeId next = hops[i++];
    enter(next);
  }
  return out;
}

std::vector<NodeId> data_plane_closure(const ForwardingGraph& g, const std::vector<NodeId>& sources) {
  std::vector<bool> seen(g.entries.size(), false);
  std::vector<NodeId> work;
  for (auto s : sources) {
    if (!seen[s]) {
      seen[s] = true;
      work.push_back(s);
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    const auto& e = g.entries[work[i]];
    if (e.action != FibAction::Forward) continue;
    for (auto h : e.next_hops) {
      if (!seen[h]) {
        seen[h] = true;
        work.push_back(h);
      }
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

std::optional<int> forwarding_cost(const Network& net, const ForwardingGraph& g, NodeId from) {
  int cost = 0;
  NodeId cur = from;
  for (std::size_t steps = 0; steps <= g.entries.size(); ++steps) {
    const auto& e = g.entries[cur];
    if (e.action == FibAction::Deliver) return cost;
    if (e.action == FibAction::Drop || e.next_hops.empty()) return std::nullopt;
    NodeId next = e.next_hops.front();
    auto link = net.topology.link_between(cur, next);
    if (!link) return std::nullopt;
    cost += net.ospf_cost(cur, *link);
    cur = next;
  }
  return std::nullopt;
}

}  // namespace netconv
