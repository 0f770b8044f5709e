#include "netconv/settle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

namespace netconv {

namespace {

std::optional<int> import_bound(const RouteMap* map, const Prefix& p, int incoming) {
  if (!map) return incoming;
  std::optional<int> best;
  for (const auto& c : map->clauses) {
    if (!c.may_match(p)) continue;
    if (c.permit) {
      int lp = c.set_local_pref.value_or(incoming);
      best = best ? std::max(*best, lp) : lp;
    }
    if (c.match_communities.empty()) break;  // catches everything left
  }
  return best;
}

bool export_may_pass(const RouteMap* map, const Prefix& p) {
  if (!map) return true;
  for (const auto& c : map->clauses) {
    if (!c.may_match(p)) continue;
    if (c.permit) return true;
    if (c.match_communities.empty()) return false;
  }
  return false;
}

/// Highest local-pref any route can carry anywhere.
int global_max_lp(const Network& net) {
  int lp = 100;
  for (const auto& [_, map] : net.route_maps) {
    for (const auto& c : map.clauses) {
      if (c.set_local_pref) lp = std::max(lp, *c.set_local_pref);
    }
  }
  return lp;
}

}  // namespace

SettleAnalysis::SettleAnalysis(const RoutingContext& ctx) : ctx_(&ctx) {
  const std::size_t n = ctx.node_count();
  dist_.assign(n, std::nullopt);
  lp_bound_.resize(n);
  const auto& net = ctx.network();

  if (ctx.protocol() == Protocol::Ospf) {
    using Item = std::pair<int, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto o : ctx.origins()) {
      dist_[o] = 0;
      pq.emplace(0, o);
    }
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (dist_[u] && *dist_[u] < d) continue;
      for (const auto& p : ctx.peers(u)) {
        if (ctx.is_origin(p.peer)) continue;
        const auto* back = ctx.peer_info(p.peer, u);
        if (!back) continue;
        int nd = d + back->cost;
        if (!dist_[p.peer] || nd < *dist_[p.peer]) {
          dist_[p.peer] = nd;
          pq.emplace(nd, p.peer);
        }
      }
    }
    return;
  }

  // 0-1 BFS over AS crossings
  std::deque<NodeId> dq;
  for (auto o : ctx.origins()) {
    dist_[o] = 0;
    dq.push_back(o);
  }
  while (!dq.empty()) {
    NodeId u = dq.front();
    dq.pop_front();
    for (const auto& p : ctx.peers(u)) {
      NodeId v = p.peer;
      if (ctx.is_origin(v)) continue;
      int w = net.asn(u) != net.asn(v) ? 1 : 0;
      int nd = *dist_[u] + w;
      if (!dist_[v] || nd < *dist_[v]) {
        dist_[v] = nd;
        if (w) {
          dq.push_back(v);
        } else {
          dq.push_front(v);
        }
      }
    }
  }

  const int max_lp = global_max_lp(net);
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& p : ctx.peers(u)) {
      const auto* back = ctx.peer_info(p.peer, u);
      std::optional<int> bound;
      if (back && export_may_pass(back->export_map, ctx.prefix())) {
        bound = import_bound(p.import_map, ctx.prefix(), p.ibgp ? max_lp : 100);
      }
      lp_bound_[u].push_back(bound);
    }
  }
}

std::optional<int> SettleAnalysis::distance(NodeId n) const { return dist_.at(n); }

std::optional<RankOrder> SettleAnalysis::bound_vs(NodeId n, NodeId q, const RouteEntry& against) const {
  const auto* info = ctx_->peer_info(n, q);
  if (!info || !dist_[q]) return std::nullopt;
  if (against.is_bottom()) return RankOrder::Better;
  if (against.path.is_epsilon()) return RankOrder::Worse;
  if (ctx_->protocol() == Protocol::Ospf) {
    int cost = *dist_[q] + info->cost;
    if (cost == against.ospf_cost) return RankOrder::EqualRank;
    return cost < against.ospf_cost ? RankOrder::Better : RankOrder::Worse;
  }
  const auto& ps = ctx_->peers(n);
  auto idx = static_cast<std::size_t>(info - ps.data());
  const auto& lp = lp_bound_[n][idx];
  if (!lp) return std::nullopt;
  const auto& net = ctx_->network();
  BgpRankKey bound{*lp, *dist_[q] + (net.asn(n) != net.asn(q) ? 1 : 0), !info->ibgp, info->ibgp ? info->cost : 0};
  BgpRankKey cur{against.local_pref, ctx_->as_path_length(n, against.path), ctx_->learned_over_ebgp(n, against),
                 against.igp_cost};
  return compare_bgp_keys(bound, cur);
}

std::vector<bool> SettleAnalysis::settled(Rpvp& rpvp, const ProtocolState& s) const {
  const std::size_t n = ctx_->node_count();
  const bool multipath = ctx_->multipath();
  std::vector<bool> out(n, false);
  for (auto o : ctx_->origins()) out[o] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId u = 0; u < n; ++u) {
      if (out[u]) continue;
      const auto& e = rpvp.best(s, u);
      if (!e.path.has_hops() || rpvp.is_invalid(s, u)) continue;
      bool ok = true;
      for (const auto* p : e.paths()) {
        if (!out[p->head()]) {
          ok = false;
          break;
        }
      }
      for (const auto& p : ctx_->peers(u)) {
        if (!ok) break;
        if (out[p.peer]) {
          const auto& o = rpvp.offer(s, u, p.peer);
          if (!o) continue;
          auto r = ctx_->rank_compare(u, *o, e);
          if (r == RankOrder::Better || (multipath && r == RankOrder::EqualRank && !e.holds_path(o->path))) ok = false;
        } else {
          auto r = bound_vs(u, p.peer, e);
          if (r && (*r == RankOrder::Better || (multipath && *r == RankOrder::EqualRank))) ok = false;
        }
      }
      if (ok) {
        out[u] = true;
        changed = true;
      }
    }
  }
  return out;
}

std::optional<Determinism> detect_deterministic(Rpvp& rpvp, const ProtocolState& s, const SettleAnalysis& bounds,
                                                const std::vector<bool>& settled, const EnabledSet& candidates) {
  const auto& ctx = rpvp.context();
  for (const auto& en : candidates) {
    NodeId n = en.node;
    if (!rpvp.best(s, n).is_bottom()) continue;
    auto u = rpvp.best_update_peers(s, n);
    if (u.empty()) continue;
    bool ok = std::all_of(u.begin(), u.end(), [&](const Offer& o) { return settled[o.peer]; });
    for (const auto& p : ctx.peers(n)) {
      if (!ok) break;
      bool in_u = std::any_of(u.begin(), u.end(), [&](const Offer& o) { return o.peer == p.peer; });
      if (in_u || settled[p.peer]) continue;
      auto r = bounds.bound_vs(n, p.peer, u.front().entry);
      if (r && *r != RankOrder::Worse) ok = false;
    }
    if (!ok) continue;
    return Determinism{n, rpvp.steps(s, n)};
  }
  return std::nullopt;
}

std::optional<Determinism> detect_deterministic_ospf(Rpvp& rpvp, const ProtocolState& s, const SettleAnalysis& bounds,
                                                     const std::vector<bool>& settled, const EnabledSet& candidates) {
  if (rpvp.context().protocol() != Protocol::Ospf) throw std::logic_error("not an OSPF run");
  return detect_deterministic(rpvp, s, bounds, settled, candidates);
}

std::optional<Determinism> detect_deterministic_bgp(Rpvp& rpvp, const ProtocolState& s, const SettleAnalysis& bounds,
                                                    const std::vector<bool>& settled, const EnabledSet& candidates) {
  if (rpvp.context().protocol() != Protocol::Bgp) throw std::logic_error("not a BGP run");
  return detect_deterministic(rpvp, s, bounds, settled, candidates);
}

std::vector<NodeId> unsettled_component(const RoutingContext& ctx, const std::vector<bool>& settled, NodeId start) {
  std::vector<bool> seen(ctx.node_count(), false);
  std::vector<NodeId> out{start};
  seen[start] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& p : ctx.peers(out[i])) {
      if (seen[p.peer] || settled[p.peer]) continue;
      seen[p.peer] = true;
      out.push_back(p.peer);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool independent(const RoutingContext& ctx, const std::vector<bool>& settled, NodeId a, NodeId b) {
  if (a == b) return false;
  auto comp = unsettled_component(ctx, settled, a);
  return !std::binary_search(comp.begin(), comp.end(), b);
}

}  // namespace netconv
