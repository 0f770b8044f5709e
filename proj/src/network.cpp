#include "netconv/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace netconv {

std::string_view to_string(SessionKind k) { return k == SessionKind::Ebgp ? "ebgp" : "ibgp"; }

std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::AsymmetricSession: return "AsymmetricSession";
    case DiagnosticKind::AsMismatch: return "AsMismatch";
    case DiagnosticKind::MissingBgpProcess: return "MissingBgpProcess";
    case DiagnosticKind::SessionWithoutLink: return "SessionWithoutLink";
    case DiagnosticKind::UnknownRouteMap: return "UnknownRouteMap";
    case DiagnosticKind::UnresolvableStaticNextHop: return "UnresolvableStaticNextHop";
    case DiagnosticKind::StaticNextHopNotNeighbor: return "StaticNextHopNotNeighbor";
  }
  return "?";
}

NodeId Network::add_node(std::string name) {
  auto id = topology.add_node(std::move(name));
  configs.emplace_back();
  return id;
}

void Network::add_session(NodeId a, NodeId b, SessionKind kind, std::optional<std::string> a_import,
                          std::optional<std::string> a_export, std::optional<std::string> b_import,
                          std::optional<std::string> b_export) {
  auto& ca = configs.at(a);
  auto& cb = configs.at(b);
  if (!ca.bgp || !cb.bgp) {
    throw std::invalid_argument("session endpoints must run BGP: '" + topology.name(a) + "' - '" +
                                topology.name(b) + "'");
  }
  ca.bgp->sessions.push_back(BgpSession{b, kind, std::move(a_import), std::move(a_export)});
  cb.bgp->sessions.push_back(BgpSession{a, kind, std::move(b_import), std::move(b_export)});
}

const RouteMap* Network::route_map(const std::optional<std::string>& name) const {
  if (!name) return nullptr;
  auto it = route_maps.find(*name);
  if (it == route_maps.end()) throw std::invalid_argument("unknown route map '" + *name + "'");
  return &it->second;
}

const BgpSession* Network::session(NodeId from, NodeId to) const {
  const auto& bgp = configs.at(from).bgp;
  if (!bgp) return nullptr;
  for (const auto& s : bgp->sessions) {
    if (s.peer == to) return &s;
  }
  return nullptr;
}

std::optional<std::uint32_t> Network::asn(NodeId n) const {
  const auto& bgp = configs.at(n).bgp;
  if (!bgp) return std::nullopt;
  return bgp->asn;
}

int Network::ospf_cost(NodeId from, LinkId link) const {
  const auto& l = topology.link(link);
  const auto& ospf = configs.at(from).ospf;
  if (ospf) {
    auto it = ospf->interface_costs.find(l.other(from));
    if (it != ospf->interface_costs.end()) return it->second;
  }
  return l.cost;
}

std::vector<Prefix> Network::ospf_originated(NodeId n) const {
  const auto& cfg = configs.at(n);
  std::vector<Prefix> out;
  if (!cfg.ospf) return out;
  out = cfg.ospf->originated;
  if (cfg.loopback) out.push_back(Prefix::host(*cfg.loopback));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<NodeId> Network::loopback_owner(Address a) const {
  for (NodeId n = 0; n < configs.size(); ++n) {
    if (configs[n].loopback == a) return n;
  }
  return std::nullopt;
}

std::vector<Diagnostic> validate_config(const Network& net) {
  std::vector<Diagnostic> out;
  const auto& topo = net.topology;
  auto name = [&](NodeId n) { return "'" + topo.name(n) + "'"; };
  auto check_map = [&](const std::optional<std::string>& m, NodeId n) {
    if (m && !net.route_maps.contains(*m)) {
      out.push_back({DiagnosticKind::UnknownRouteMap, "route map '" + *m + "' used at " + name(n) + " is not defined"});
    }
  };

  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& bgp = net.config(n).bgp;
    if (!bgp) continue;
    for (const auto& s : bgp->sessions) {
      check_map(s.import_map, n);
      check_map(s.export_map, n);
      if (s.peer >= net.node_count()) continue;
      if (!net.runs_bgp(s.peer)) {
        out.push_back({DiagnosticKind::MissingBgpProcess, "session peer " + name(s.peer) + " of " + name(n) + " runs no BGP"});
        continue;
      }
      const auto* back = net.session(s.peer, n);
      if (!back || back->kind != s.kind) {
        if (n < s.peer || !back) {
          out.push_back({DiagnosticKind::AsymmetricSession,
                         "session " + name(n) + " -> " + name(s.peer) + " is not declared identically on both ends"});
        }
        continue;
      }
      if (n > s.peer) continue;  // report each symmetric session once
      bool same_as = *net.asn(n) == *net.asn(s.peer);
      if (same_as != (s.kind == SessionKind::Ibgp)) {
        out.push_back({DiagnosticKind::AsMismatch, std::string(to_string(s.kind)) + " session " + name(n) + " - " +
                                                       name(s.peer) + " joins AS " + std::to_string(*net.asn(n)) +
                                                       " and AS " + std::to_string(*net.asn(s.peer))});
      }
      bool multihop = s.kind == SessionKind::Ibgp && net.config(n).loopback && net.config(s.peer).loopback;
      if (!multihop && !topo.link_between(n, s.peer)) {
        out.push_back({DiagnosticKind::SessionWithoutLink,
                       "session " + name(n) + " - " + name(s.peer) + " needs a direct link or loopbacks on both ends"});
      }
    }
  }

  std::vector<Prefix> known;
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& cfg = net.config(n);
    if (cfg.loopback) known.push_back(Prefix::host(*cfg.loopback));
    if (cfg.ospf) known.insert(known.end(), cfg.ospf->originated.begin(), cfg.ospf->originated.end());
    if (cfg.bgp) known.insert(known.end(), cfg.bgp->originated.begin(), cfg.bgp->originated.end());
    for (const auto& s : cfg.statics) known.push_back(s.prefix);
  }
  for (NodeId n = 0; n < net.node_count(); ++n) {
    for (const auto& s : net.config(n).statics) {
      if (s.next_hop_node) {
        if (!topo.link_between(n, *s.next_hop_node)) {
          out.push_back({DiagnosticKind::StaticNextHopNotNeighbor,
                         "static route " + s.prefix.to_string() + " at " + name(n) + " points at non-neighbor " +
                             name(*s.next_hop_node)});
        }
      } else if (s.next_hop) {
        bool resolvable = std::any_of(known.begin(), known.end(), [&](const Prefix& p) { return p.contains(*s.next_hop); });
        if (!resolvable) {
          out.push_back({DiagnosticKind::UnresolvableStaticNextHop,
                         "static route " + s.prefix.to_string() + " at " + name(n) + " has next hop " +
                             s.next_hop->to_string() + " covered by no configured prefix"});
        }
      }
    }
  }
  return out;
}

}  // namespace netconv
