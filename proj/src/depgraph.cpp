#include "netconv/depgraph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace netconv {

std::string_view to_string(DependencyReason r) {
  switch (r) {
    case DependencyReason::StaticNextHop: return "static-next-hop";
    case DependencyReason::IbgpLoopback: return "ibgp-loopback";
  }
  return "?";
}

std::vector<PecId> DependencyGraph::dependencies(PecId p) const {
  std::vector<PecId> out;
  for (const auto& e : edges) {
    if (e.from == p) out.push_back(e.to);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool DependencyGraph::has_dependents(PecId p) const {
  return std::any_of(edges.begin(), edges.end(), [&](const DependencyEdge& e) { return e.to == p; });
}

DependencyGraph build_dependency_graph(const std::vector<Pec>& pecs, const Network& net) {
  DependencyGraph g;
  g.pec_count = pecs.size();
  std::set<DependencyEdge> edges;
  auto target = [&](Address a, const std::string& why) {
    const auto& q = pecs[find_pec(pecs, a)];
    if (!q.is_routed()) g.diagnostics.push_back(why + ": " + a.to_string() + " is not routed by any protocol");
    return q.id;
  };

  for (const auto& pec : pecs) {
    bool carries_bgp = false;
    for (const auto& c : pec.prefixes) {
      if (!c.config.bgp_origins.empty()) carries_bgp = true;
      for (const auto& s : c.config.statics) {
        if (!s.route.next_hop) continue;
        auto to = target(*s.route.next_hop, "static route " + c.prefix.to_string() + " at " + net.topology.name(s.node));
        edges.insert({pec.id, to, DependencyReason::StaticNextHop});
      }
    }
    if (!carries_bgp) continue;
    for (NodeId u = 0; u < net.node_count(); ++u) {
      const auto& bgp = net.config(u).bgp;
      if (!bgp || !net.config(u).loopback) continue;
      for (const auto& s : bgp->sessions) {
        if (s.kind != SessionKind::Ibgp || !net.config(s.peer).loopback) continue;
        auto to = target(*net.config(s.peer).loopback, "ibgp session " + net.topology.name(u) + "-" +
                                                           net.topology.name(s.peer));
        edges.insert({pec.id, to, DependencyReason::IbgpLoopback});
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  std::sort(g.diagnostics.begin(), g.diagnostics.end());
  g.diagnostics.erase(std::unique(g.diagnostics.begin(), g.diagnostics.end()), g.diagnostics.end());
  return g;
}

std::size_t Schedule::level_count() const {
  std::size_t n = 0;
  for (const auto& grp : groups) n = std::max(n, grp.level + 1);
  return n;
}

Schedule compute_schedule(const DependencyGraph& g) {
  const std::size_t n = g.pec_count;
  std::vector<std::vector<PecId>> adj(n);
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);

  // Tarjan; components come out dependencies first.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<PecId> stack;
  int counter = 0;
  Schedule s;
  s.group_of.assign(n, 0);

  struct Frame {
    PecId v;
    std::size_t next;
  };
  for (PecId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.next < adj[f.v].size()) {
        PecId w = adj[f.v][f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      PecId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] != index[v]) continue;
      ScheduleGroup grp;
      while (true) {
        PecId w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        grp.pecs.push_back(w);
        s.group_of[w] = s.groups.size();
        if (w == v) break;
      }
      std::sort(grp.pecs.begin(), grp.pecs.end());
      s.groups.push_back(std::move(grp));
    }
  }

  for (std::size_t gi = 0; gi < s.groups.size(); ++gi) {
    auto& grp = s.groups[gi];
    std::set<std::size_t> deps;
    for (auto p : grp.pecs) {
      for (auto q : adj[p]) {
        if (s.group_of[q] == gi) {
          grp.recursive = true;
        } else {
          deps.insert(s.group_of[q]);
        }
      }
    }
    grp.depends_on.assign(deps.begin(), deps.end());
    for (auto d : grp.depends_on) grp.level = std::max(grp.level, s.groups[d].level + 1);
  }
  return s;
}

}  // namespace netconv
