#include "netconv/routing.hpp"

#include <algorithm>
#include <stdexcept>

namespace netconv {

namespace {

bool originates(const Network& net, NodeId n, const Prefix& p, Protocol proto) {
  const auto& cfg = net.config(n);
  if (proto == Protocol::Ospf) {
    auto own = net.ospf_originated(n);
    return std::find(own.begin(), own.end(), p) != own.end();
  }
  if (proto == Protocol::Bgp && cfg.bgp) {
    return std::find(cfg.bgp->originated.begin(), cfg.bgp->originated.end(), p) != cfg.bgp->originated.end();
  }
  return false;
}

RankOrder compare_ints(int a, int b, bool larger_better) {
  if (a == b) return RankOrder::EqualRank;
  return (a > b) == larger_better ? RankOrder::Better : RankOrder::Worse;
}

}  // namespace

RankOrder compare_bgp_keys(const BgpRankKey& a, const BgpRankKey& b) {
  if (auto r = compare_ints(a.local_pref, b.local_pref, true); r != RankOrder::EqualRank) return r;
  if (auto r = compare_ints(a.as_len, b.as_len, false); r != RankOrder::EqualRank) return r;
  if (a.ebgp != b.ebgp) return a.ebgp ? RankOrder::Better : RankOrder::Worse;
  return compare_ints(a.igp, b.igp, false);
}

RoutingContext::RoutingContext(const Network& net, Prefix prefix, Protocol protocol, LinkMask failures,
                               const IgpCosts* igp)
    : net_(&net), prefix_(prefix), protocol_(protocol), failures_(std::move(failures)) {
  if (protocol == Protocol::Static) throw std::invalid_argument("static routes do not run a path-vector protocol");
  const auto& topo = net.topology;
  const std::size_t n = net.node_count();
  multipath_ = protocol == Protocol::Ospf && net.ospf_multipath;
  peers_.resize(n);
  origin_.assign(n, false);

  for (NodeId u = 0; u < n; ++u) {
    if (originates(net, u, prefix, protocol)) {
      origin_[u] = true;
      origins_.push_back(u);
    }
    if (protocol == Protocol::Ospf) {
      if (!net.runs_ospf(u)) continue;
      for (const auto& adj : topo.neighbors(u)) {
        if (!failures_.alive(adj.link) || !net.runs_ospf(adj.neighbor)) continue;
        peers_[u].push_back(PeerInfo{adj.neighbor, false, net.ospf_cost(u, adj.link), nullptr, nullptr});
      }
      continue;
    }
    const auto& bgp = net.config(u).bgp;
    if (!bgp) continue;
    for (const auto& s : bgp->sessions) {
      const auto* back = net.session(s.peer, u);
      if (!back || back->kind != s.kind) continue;  // reported by validate_config
      PeerInfo info{s.peer, s.kind == SessionKind::Ibgp, 0, net.route_map(s.import_map), net.route_map(s.export_map)};
      auto link = topo.link_between(u, s.peer);
      bool multihop = info.ibgp && net.config(u).loopback && net.config(s.peer).loopback;
      if (multihop) {
        if (!igp || igp->empty()) continue;
        auto there = igp->cost(u, s.peer);
        auto back_cost = igp->cost(s.peer, u);
        if (!there || !back_cost) continue;  // session cannot come up
        info.cost = *there;
      } else {
        if (!link || !failures_.alive(*link)) continue;
        if (info.ibgp) info.cost = net.ospf_cost(u, *link);
      }
      peers_[u].push_back(info);
    }
    std::sort(peers_[u].begin(), peers_[u].end(), [](const PeerInfo& a, const PeerInfo& b) { return a.peer < b.peer; });
  }
}

const PeerInfo* RoutingContext::peer_info(NodeId n, NodeId q) const {
  const auto& ps = peers_[n];
  auto it = std::lower_bound(ps.begin(), ps.end(), q, [](const PeerInfo& p, NodeId id) { return p.peer < id; });
  if (it == ps.end() || it->peer != q) return nullptr;
  return &*it;
}

std::optional<RouteEntry> RoutingContext::apply_import(NodeId node, NodeId peer, const RouteEntry& e) const {
  if (e.is_bottom() || e.path.contains(node)) return std::nullopt;
  if (protocol_ != Protocol::Bgp) return e;
  const auto* info = peer_info(node, peer);
  if (!info) return std::nullopt;
  if (!info->import_map) return e;
  return info->import_map->apply(prefix_, e);
}

std::optional<RouteEntry> RoutingContext::apply_export(NodeId node, NodeId peer, const RouteEntry& e) const {
  if (e.is_bottom()) return std::nullopt;
  const auto* out = peer_info(node, peer);
  const auto* in = peer_info(peer, node);
  if (!out || !in) return std::nullopt;
  RouteEntry adv = e;
  adv.alternates.clear();
  if (protocol_ == Protocol::Ospf) {
    adv.path = e.path.prepend(node);
    adv.ospf_cost = e.ospf_cost + in->cost;
    return adv;
  }
  if (out->ibgp && e.path.has_hops()) {
    const auto* learned = peer_info(node, e.path.head());
    if (learned && learned->ibgp) return std::nullopt;
  }
  if (out->export_map) {
    auto mapped = out->export_map->apply(prefix_, adv);
    if (!mapped) return std::nullopt;
    adv = std::move(*mapped);
  }
  adv.path = adv.path.prepend(node);
  if (out->ibgp) {
    adv.igp_cost = in->cost;
  } else {
    adv.local_pref = 100;
    adv.igp_cost = 0;
  }
  return adv;
}

std::optional<RouteEntry> RoutingContext::offer(NodeId node, NodeId peer, const RouteEntry& peer_best) const {
  auto adv = apply_export(peer, node, peer_best);
  if (!adv) return std::nullopt;
  return apply_import(node, peer, *adv);
}

int RoutingContext::as_path_length(NodeId node, const Path& p) const {
  if (!p.has_hops()) return 0;
  int crossings = 0;
  auto prev = net_->asn(node);
  for (auto h : p.hops()) {
    auto cur = net_->asn(h);
    if (cur != prev) ++crossings;
    prev = cur;
  }
  return crossings;
}

bool RoutingContext::learned_over_ebgp(NodeId node, const RouteEntry& e) const {
  if (!e.path.has_hops()) return false;
  const auto* info = peer_info(node, e.path.head());
  return info && !info->ibgp;
}

RankOrder RoutingContext::rank_compare(NodeId node, const RouteEntry& a, const RouteEntry& b) const {
  if (a.is_bottom() || b.is_bottom()) {
    if (a.is_bottom() && b.is_bottom()) return RankOrder::EqualRank;
    return a.is_bottom() ? RankOrder::Worse : RankOrder::Better;
  }
  if (a.protocol != b.protocol) throw std::logic_error("rank_compare across protocols");
  if (a.path.is_epsilon() || b.path.is_epsilon()) {
    if (a.path.is_epsilon() && b.path.is_epsilon()) return RankOrder::EqualRank;
    return a.path.is_epsilon() ? RankOrder::Better : RankOrder::Worse;
  }
  if (a.protocol == Protocol::Ospf) return compare_ints(a.ospf_cost, b.ospf_cost, false);
  BgpRankKey ka{a.local_pref, as_path_length(node, a.path), learned_over_ebgp(node, a), a.igp_cost};
  BgpRankKey kb{b.local_pref, as_path_length(node, b.path), learned_over_ebgp(node, b), b.igp_cost};
  return compare_bgp_keys(ka, kb);
}

}  // namespace netconv
