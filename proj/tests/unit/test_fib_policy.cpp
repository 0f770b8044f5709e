#include <doctest.h>

#include <map>
#include <random>

#include "corpus.hpp"
#include "netconv/fib.hpp"
#include "netconv/generators.hpp"
#include "netconv/verify.hpp"

using namespace nctest;

namespace {

FibEntry fwd(std::vector<NodeId> hops) { return FibEntry{FibAction::Forward, std::move(hops), kDest, RouteSource::Ospf}; }
FibEntry deliver() { return FibEntry{FibAction::Deliver, {}, kDest, RouteSource::Connected}; }
FibEntry drop() { return FibEntry{}; }

Topology names(std::size_t n) {
  Topology t;
  for (std::size_t i = 0; i < n; ++i) t.add_node("n" + std::to_string(i));
  return t;
}

std::vector<PrefixRun> converged_runs(const Network& net, const Pec& pec, const LinkMask& mask) {
  std::vector<PrefixRun> runs;
  for (const auto& [prefix, proto] : runs_of(pec)) {
    RoutingContext ctx(net, prefix, proto, mask);
    auto set = explore_run(ctx, SearchOptions{}).converged;
    REQUIRE(set.size() == 1);
    runs.push_back({prefix, proto, *set.begin()});
  }
  return runs;
}

struct MapLookup : FibLookup {
  std::vector<Pec> pecs;
  std::map<std::size_t, ForwardingGraph> graphs;
  const ForwardingGraph* graph_for(Address a) const override {
    auto it = graphs.find(find_pec(pecs, a));
    return it == graphs.end() ? nullptr : &it->second;
  }
};

}  // namespace

TEST_CASE("administrative distances") {
  CHECK(administrative_distance(RouteSource::Connected) < administrative_distance(RouteSource::Static));
  CHECK(administrative_distance(RouteSource::Static) < administrative_distance(RouteSource::Ebgp));
  CHECK(administrative_distance(RouteSource::Ebgp) < administrative_distance(RouteSource::Ospf));
  CHECK(administrative_distance(RouteSource::Ospf) < administrative_distance(RouteSource::Ibgp));
  CHECK(parse_route_source(to_string(RouteSource::Ibgp)) == RouteSource::Ibgp);
  CHECK(parse_fib_action(to_string(FibAction::Deliver)) == FibAction::Deliver);
}

TEST_CASE("static routes beat OSPF, longer prefixes beat both") {
  auto net = make_line(3).network;
  net.config(2).statics.push_back(StaticRoute{kDest, {}, NodeId{1}});
  net.config(1).statics.push_back(StaticRoute{Prefix::parse("10.0.0.0/25"), {}, NodeId{2}});
  auto plan = make_plan(net);

  auto& whole = plan.pecs[find_pec(plan.pecs, Address::parse("10.0.0.200"))];
  auto g = build_fib(net, whole, converged_runs(net, whole, LinkMask()), LinkMask(), nullptr);
  CHECK(g.entries[0].action == FibAction::Deliver);
  CHECK(g.entries[1].source == RouteSource::Ospf);
  CHECK(g.entries[2].source == RouteSource::Static);
  CHECK(g.entries[2].next_hops == std::vector<NodeId>{1});

  auto& low = plan.pecs[find_pec(plan.pecs, Address::parse("10.0.0.1"))];
  auto lg = build_fib(net, low, converged_runs(net, low, LinkMask()), LinkMask(), nullptr);
  CHECK(lg.entries[1].prefix == Prefix::parse("10.0.0.0/25"));
  CHECK(lg.entries[1].next_hops == std::vector<NodeId>{2});
  bool looped = false;
  for (const auto& w : walks_from(lg, 1)) looped = looped || w.end == WalkEnd::Looped;
  CHECK(looped);

  // a static route over a failed link is withdrawn
  LinkMask cut(net.topology.link_count(), {*net.topology.link_between(1, 2)});
  auto cg = build_fib(net, whole, converged_runs(net, whole, cut), cut, nullptr);
  CHECK(cg.entries[2].action == FibAction::Drop);
}

TEST_CASE("recursive static routes resolve through another class") {
  auto net = make_line(3).network;
  net.config(2).statics.push_back(StaticRoute{Prefix::parse("20.0.0.0/8"), Address::parse("10.0.0.5"), {}});
  auto plan = make_plan(net);
  MapLookup lookup;
  lookup.pecs = plan.pecs;
  auto dest = find_pec(plan.pecs, kDest.base());
  lookup.graphs[dest] = build_fib(net, plan.pecs[dest], converged_runs(net, plan.pecs[dest], LinkMask()), LinkMask(), nullptr);

  const auto& pec = plan.pecs[find_pec(plan.pecs, Address::parse("20.1.1.1"))];
  auto g = build_fib(net, pec, {}, LinkMask(), &lookup);
  CHECK(g.entries[2].action == FibAction::Forward);
  CHECK(g.entries[2].next_hops == std::vector<NodeId>{1});
  CHECK(g.entries[2].source == RouteSource::Static);
  CHECK(g.entries[1].action == FibAction::Drop);

  auto unresolved = build_fib(net, pec, {}, LinkMask(), nullptr);
  CHECK(unresolved.entries[2].action == FibAction::Drop);
  CHECK_FALSE(unresolved.diagnostics.empty());
}

TEST_CASE("mutually recursive statics settle to Drop") {
  auto net = make_line(2).network;
  net.config(0).statics.push_back(StaticRoute{Prefix::parse("20.0.0.0/8"), Address::parse("30.0.0.1"), {}});
  net.config(0).statics.push_back(StaticRoute{Prefix::parse("30.0.0.0/8"), Address::parse("20.0.0.1"), {}});
  auto plan = make_plan(net);
  auto a = find_pec(plan.pecs, Address::parse("20.0.0.1"));
  auto b = find_pec(plan.pecs, Address::parse("30.0.0.1"));
  std::vector<GroupFibInput> group = {{&plan.pecs[a], {}}, {&plan.pecs[b], {}}};
  auto graphs = build_group_fibs(net, plan.pecs, group, LinkMask(), nullptr, 3);
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[0].entries[0].action == FibAction::Drop);
  CHECK(graphs[1].entries[0].action == FibAction::Drop);
  CHECK_FALSE(graphs[0].diagnostics.empty());
}

TEST_CASE("walks follow every next hop") {
  ForwardingGraph g;
  g.entries = {deliver(), fwd({0}), fwd({1, 3}), drop(), fwd({4})};
  auto from2 = walks_from(g, 2);
  REQUIRE(from2.size() == 2);
  CHECK(from2[0].nodes == std::vector<NodeId>{2, 1, 0});
  CHECK(from2[0].end == WalkEnd::Delivered);
  CHECK(from2[1].nodes == std::vector<NodeId>{2, 3});
  CHECK(from2[1].end == WalkEnd::Dropped);
  auto self = walks_from(g, 4);
  REQUIRE(self.size() == 1);
  CHECK(self[0].end == WalkEnd::Looped);
  CHECK(self[0].nodes == std::vector<NodeId>{4, 4});
  CHECK(data_plane_closure(g, {2}) == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("forwarding cost follows the lowest next hop") {
  auto net = make_ring(4).network;
  ForwardingGraph g;
  g.entries = {deliver(), fwd({0}), fwd({1, 3}), fwd({0})};
  CHECK(forwarding_cost(net, g, 2) == 2);
  CHECK(forwarding_cost(net, g, 0) == 0);
  g.entries[1] = drop();
  CHECK_FALSE(forwarding_cost(net, g, 2).has_value());
}

TEST_CASE("policy checks") {
  auto topo = names(5);
  ForwardingGraph g;
  g.entries = {deliver(), fwd({0}), fwd({1, 3}), drop(), fwd({2})};
  PolicyInput in{&g, nullptr};
  auto make = [](PolicyKind k) {
    PolicySpec p;
    p.name = std::string(to_string(k));
    p.kind = k;
    return p;
  };

  auto reach = make(PolicyKind::Reachability);
  reach.sources = {1};
  CHECK(check(reach, in, topo).pass);
  reach.sources = {2};
  auto r = check(reach, in, topo);
  CHECK_FALSE(r.pass);
  CHECK(r.witness == std::vector<NodeId>{2, 3});

  auto bh = make(PolicyKind::BlackHoleFreedom);
  CHECK_FALSE(check(bh, in, topo).pass);

  auto mp = make(PolicyKind::MultipathConsistency);
  mp.sources = {2};
  CHECK_FALSE(check(mp, in, topo).pass);
  mp.sources = {1};
  CHECK(check(mp, in, topo).pass);

  auto way = make(PolicyKind::Waypoint);
  way.sources = {4};
  way.waypoints = {1};
  CHECK(check(way, in, topo).pass);  // the dropped branch is not a delivered path
  way.waypoints = {3};
  CHECK_FALSE(check(way, in, topo).pass);

  auto bound = make(PolicyKind::BoundedPathLength);
  bound.sources = {4};
  bound.max_length = 3;
  CHECK(check(bound, in, topo).pass);
  bound.max_length = 2;
  CHECK_FALSE(check(bound, in, topo).pass);

  auto loops = make(PolicyKind::LoopFreedom);
  CHECK(check(loops, in, topo).pass);
  g.entries[0] = fwd({2});
  auto cyc = check(loops, in, topo);
  CHECK_FALSE(cyc.pass);
  CHECK(cyc.witness.front() == cyc.witness.back());

  auto same = make(PolicyKind::PathConsistency);
  g.entries = {deliver(), fwd({0}), fwd({0}), drop(), fwd({2})};
  same.devices = {1, 2};
  CHECK(check(same, in, topo).pass);
  same.devices = {1, 4};
  CHECK_FALSE(check(same, in, topo).pass);
}

TEST_CASE("policy helpers") {
  PolicySpec p;
  p.name = "w";
  p.kind = PolicyKind::Waypoint;
  p.interesting = {3};
  p.waypoints = {1};
  CHECK(effective_sources(p, 3) == std::vector<NodeId>{0, 1, 2});
  CHECK(role_nodes(p) == std::vector<NodeId>{1, 3});
  CHECK(effective_interesting(p, 5) == std::vector<NodeId>{1, 3});
  CHECK_NOTHROW(validate_policy(p, 4));
  CHECK_THROWS(validate_policy(p, 3));
  p.waypoints.clear();
  CHECK_THROWS(validate_policy(p, 4));
  for (auto k : {PolicyKind::Reachability, PolicyKind::LoopFreedom, PolicyKind::BlackHoleFreedom, PolicyKind::Waypoint,
                 PolicyKind::BoundedPathLength, PolicyKind::MultipathConsistency, PolicyKind::PathConsistency}) {
    CHECK(parse_policy_kind(to_string(k)) == k);
  }
  CHECK_THROWS(parse_policy_kind("nonsense"));

  auto net = split_space();
  auto pecs = compute_pecs(PrefixTrie::build(net));
  PolicySpec any;
  CHECK_FALSE(applies_to(any, pecs[0]));
  CHECK(applies_to(any, pecs[1]));
  any.destination = Prefix::parse("200.0.0.0/8");
  CHECK_FALSE(applies_to(any, pecs[1]));
  CHECK(applies_to(any, pecs[2]));
}

TEST_CASE("property: equal equivalence keys mean equal verdicts") {
  std::mt19937_64 rng(11);
  const std::size_t n = 5;
  auto topo = names(n);
  auto random_graph = [&] {
    ForwardingGraph g;
    for (std::size_t u = 0; u < n; ++u) {
      int kind = std::uniform_int_distribution<int>(0, 5)(rng);
      if (kind == 0) {
        g.entries.push_back(drop());
      } else if (kind == 1) {
        g.entries.push_back(deliver());
      } else {
        std::vector<NodeId> hops;
        for (NodeId v = 0; v < n; ++v) {
          if (v != u && std::bernoulli_distribution(0.3)(rng)) hops.push_back(v);
        }
        g.entries.push_back(hops.empty() ? drop() : fwd(hops));
      }
    }
    return g;
  };
  std::vector<PolicySpec> policies(5);
  policies[0].kind = PolicyKind::Reachability;
  policies[0].sources = {0, 1};
  policies[1].kind = PolicyKind::LoopFreedom;
  policies[1].interesting = {2};
  policies[2].kind = PolicyKind::Waypoint;
  policies[2].sources = {4};
  policies[2].waypoints = {1};
  policies[3].kind = PolicyKind::BoundedPathLength;
  policies[3].max_length = 2;
  policies[3].interesting = {0};
  policies[4].kind = PolicyKind::MultipathConsistency;
  policies[4].interesting = {3};

  for (const auto& p : policies) {
    std::map<Hash128, bool> verdict;
    int collisions = 0;
    for (int i = 0; i < 3000; ++i) {
      auto g = random_graph();
      PolicyInput in{&g, nullptr};
      auto key = equivalence_key(p, in, n);
      bool pass = check(p, in, topo).pass;
      auto [it, fresh] = verdict.emplace(key, pass);
      if (!fresh) {
        ++collisions;
        CHECK(it->second == pass);
      }
    }
    CHECK(collisions > 0);  // the key does merge some graphs
  }
}
