#include "corpus.hpp"

#include <algorithm>

namespace nctest {

NodeId bgp_node(Network& net, const std::string& name, std::uint32_t asn) {
  auto n = net.add_node(name);
  net.config(n).bgp = BgpProcess{asn, {}, {}};
  return n;
}

NodeId ospf_node(Network& net, const std::string& name) {
  auto n = net.add_node(name);
  net.config(n).ospf = OspfProcess{};
  return n;
}

RouteMap lp_map(const std::string& name, int local_pref) {
  RouteMapClause c;
  c.set_local_pref = local_pref;
  return RouteMap{name, {c}};
}

Network disagree() {
  Network net;
  auto n0 = bgp_node(net, "n0", 1);
  auto n1 = bgp_node(net, "n1", 2);
  auto n2 = bgp_node(net, "n2", 3);
  net.topology.add_link(n0, n1);
  net.topology.add_link(n0, n2);
  net.topology.add_link(n1, n2);
  net.route_maps["prefer"] = lp_map("prefer", 200);
  net.add_session(n0, n1, SessionKind::Ebgp);
  net.add_session(n0, n2, SessionKind::Ebgp);
  net.add_session(n1, n2, SessionKind::Ebgp, "prefer", {}, "prefer", {});
  net.config(n0).bgp->originated.push_back(kDest);
  return net;
}

Network bad_gadget() {
  Network net;
  auto n0 = bgp_node(net, "n0", 1);
  std::vector<NodeId> ring;
  for (int i = 1; i <= 3; ++i) ring.push_back(bgp_node(net, "n" + std::to_string(i), 1 + i));
  auto tag = parse_community("1:1");

  RouteMapClause add;
  add.add_communities = {tag};
  net.route_maps["tag"] = RouteMap{"tag", {add}};
  RouteMapClause direct;
  direct.match_communities = {tag};
  direct.set_local_pref = 200;
  direct.delete_communities = {tag};
  net.route_maps["two-hop"] = RouteMap{"two-hop", {direct}};
  net.route_maps["deny-all"] = RouteMap{"deny-all", {}};

  for (auto r : ring) {
    net.topology.add_link(n0, r);
    net.add_session(n0, r, SessionKind::Ebgp, {}, "tag", {}, {});
  }
  // each ring node accepts only its clockwise neighbor's direct route
  for (int i = 0; i < 3; ++i) {
    auto a = ring[i];
    auto b = ring[(i + 1) % 3];
    net.topology.add_link(a, b);
    net.add_session(a, b, SessionKind::Ebgp, "two-hop", {}, "deny-all", {});
  }
  net.config(n0).bgp->originated.push_back(kDest);
  return net;
}

Network wedgie() {
  Network net;
  auto n1 = bgp_node(net, "n1", 1);
  auto n2 = bgp_node(net, "n2", 2);
  auto n3 = bgp_node(net, "n3", 3);
  auto n4 = bgp_node(net, "n4", 4);
  auto backup = parse_community("1:666");

  RouteMapClause mark;
  mark.add_communities = {backup};
  net.route_maps["mark-backup"] = RouteMap{"mark-backup", {mark}};
  RouteMapClause low;
  low.match_communities = {backup};
  low.set_local_pref = 50;
  RouteMapClause rest;
  net.route_maps["backup"] = RouteMap{"backup", {low, rest}};
  net.route_maps["prefer"] = lp_map("prefer", 200);

  net.topology.add_link(n1, n2);
  net.topology.add_link(n1, n4);
  net.topology.add_link(n2, n3);
  net.topology.add_link(n3, n4);
  net.add_session(n1, n2, SessionKind::Ebgp, {}, {}, "prefer", {});
  net.add_session(n1, n4, SessionKind::Ebgp, {}, "mark-backup", "backup", {});
  net.add_session(n2, n3, SessionKind::Ebgp);
  net.add_session(n3, n4, SessionKind::Ebgp, "prefer", {}, {}, {});
  net.config(n1).bgp->originated.push_back(kDest);
  return net;
}

PolicySpec wedgie_waypoint(const Network& net) {
  PolicySpec p;
  p.name = "via-n2";
  p.kind = PolicyKind::Waypoint;
  p.destination = kDest;
  p.sources = {net.topology.id("n4")};
  p.waypoints = {net.topology.id("n2")};
  return p;
}

Network ibgp_over_ospf() {
  Network net;
  std::vector<NodeId> r;
  for (int i = 0; i < 4; ++i) {
    auto n = bgp_node(net, "r" + std::to_string(i), 65000);
    net.config(n).ospf = OspfProcess{};
    net.config(n).loopback = Address::parse("192.168.0." + std::to_string(i + 1));
    r.push_back(n);
  }
  net.topology.add_link(r[0], r[1], 1);
  net.topology.add_link(r[1], r[2], 1);
  net.topology.add_link(r[2], r[3], 1);
  net.topology.add_link(r[3], r[0], 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) net.add_session(r[i], r[j], SessionKind::Ibgp);
  }
  net.config(r[0]).bgp->originated.push_back(Prefix::parse("10.1.0.0/16"));
  net.config(r[2]).bgp->originated.push_back(Prefix::parse("10.2.0.0/16"));
  return net;
}

Network split_space() {
  Network net;
  auto a = ospf_node(net, "a");
  auto b = ospf_node(net, "b");
  net.topology.add_link(a, b);
  net.config(a).ospf->originated.push_back(Prefix::parse("128.0.0.0/1"));
  net.config(b).ospf->originated.push_back(Prefix::parse("192.0.0.0/2"));
  return net;
}

namespace {

void add_random_maps(Network& net) {
  auto tag = parse_community("1:1");
  net.route_maps["prefer"] = lp_map("prefer", 200);
  net.route_maps["avoid"] = lp_map("avoid", 50);

  RouteMapClause add;
  add.add_communities = {tag};
  net.route_maps["tag"] = RouteMap{"tag", {add}};

  RouteMapClause tagged;
  tagged.match_communities = {tag};
  tagged.permit = false;
  net.route_maps["drop-tagged"] = RouteMap{"drop-tagged", {tagged, RouteMapClause{}}};

  RouteMapClause wide;
  wide.match_prefix = PrefixMatch{Prefix::parse("10.0.0.0/16"), {}, {}};
  wide.permit = false;
  net.route_maps["drop-wide"] = RouteMap{"drop-wide", {wide, RouteMapClause{}}};
}

}  // namespace

RandomCase random_case(std::uint64_t seed, bool force_failure) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  RandomCase c;
  c.seed = seed;
  c.protocol = coin(0.5) ? Protocol::Ospf : Protocol::Bgp;
  int n = uni(2, 5);
  auto& net = c.net;
  bool distinct_as = coin(0.6);
  for (int i = 0; i < n; ++i) {
    auto id = net.add_node("n" + std::to_string(i));
    if (c.protocol == Protocol::Ospf) {
      net.config(id).ospf = OspfProcess{};
    } else {
      std::uint32_t asn = distinct_as ? 100 + i : 100 + uni(0, 2);
      net.config(id).bgp = BgpProcess{asn, {}, {}};
    }
  }
  for (int i = 1; i < n; ++i) net.topology.add_link(i, uni(0, i - 1), uni(1, 3));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!net.topology.link_between(i, j) && coin(0.35)) net.topology.add_link(i, j, uni(1, 3));
    }
  }

  if (c.protocol == Protocol::Ospf) {
    net.ospf_multipath = coin(0.5);
    for (int i = 0; i < n; ++i) {
      for (const auto& adj : net.topology.neighbors(i)) {
        if (coin(0.15)) net.config(i).ospf->interface_costs[adj.neighbor] = uni(1, 4);
      }
    }
  } else {
    add_random_maps(net);
    static const char* imports[] = {"prefer", "avoid", "drop-tagged", "drop-wide"};
    static const char* exports[] = {"tag", "drop-wide"};
    auto pick = [&](const char* const* names, int count, double p) -> std::optional<std::string> {
      if (!coin(p)) return std::nullopt;
      return std::string(names[uni(0, count - 1)]);
    };
    for (const auto& l : net.topology.links()) {
      auto kind = *net.asn(l.a) == *net.asn(l.b) ? SessionKind::Ibgp : SessionKind::Ebgp;
      auto ai = pick(imports, 4, 0.35);
      auto ae = pick(exports, 2, 0.25);
      auto bi = pick(imports, 4, 0.35);
      auto be = pick(exports, 2, 0.25);
      net.add_session(l.a, l.b, kind, ai, ae, bi, be);
    }
  }

  c.prefixes.push_back(Prefix::parse("10.0.0.0/24"));
  if (coin(0.5)) c.prefixes.push_back(Prefix::parse("10.0.0.0/16"));
  for (const auto& p : c.prefixes) {
    int origins = std::min(n, uni(1, 2));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < origins; ++i) {
      auto& cfg = net.config(order[i]);
      if (c.protocol == Protocol::Ospf) {
        cfg.ospf->originated.push_back(p);
      } else {
        cfg.bgp->originated.push_back(p);
      }
    }
  }

  if (force_failure || coin(0.5)) {
    c.failures.push_back(static_cast<LinkId>(uni(0, static_cast<int>(net.topology.link_count()) - 1)));
  }
  return c;
}

OracleResult oracle_run(const RandomCase& c, const Prefix& p, bool mid_run, const OracleOptions& opts) {
  auto links = c.net.topology.link_count();
  RoutingContext before(c.net, p, c.protocol, LinkMask(links, {}));
  RoutingContext after(c.net, p, c.protocol, LinkMask(links, c.failures));
  SpvpInstance inst = mid_run ? SpvpInstance(before, after) : SpvpInstance(after, after);
  return enumerate_converged(inst, opts);
}

std::vector<RandomCase> convergent_corpus(std::size_t count, std::uint64_t first_seed, bool force_failure,
                                          std::size_t* rejected) {
  OracleOptions opts;
  opts.max_states = 40'000;
  std::vector<RandomCase> out;
  std::size_t skipped = 0;
  for (auto seed = first_seed; out.size() < count; ++seed) {
    auto c = random_case(seed, force_failure);
    bool ok = true;
    for (const auto& p : c.prefixes) {
      if (!ok) break;
      auto start = oracle_run(c, p, false, opts);
      ok = !start.divergence_suspected;
      c.at_start.push_back(std::move(start.converged));
      if (!force_failure || !ok) continue;
      auto mid = oracle_run(c, p, true, opts);
      ok = !mid.divergence_suspected;
      c.mid_run.push_back(std::move(mid.converged));
    }
    if (ok) {
      out.push_back(std::move(c));
    } else {
      ++skipped;
    }
  }
  if (rejected) *rejected = skipped;
  return out;
}

}  // namespace nctest
