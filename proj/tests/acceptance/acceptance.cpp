// Acceptance checks. Prints one line per criterion and exits non-zero when
// any of them fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "corpus.hpp"
#include "netconv/failures.hpp"
#include "netconv/generators.hpp"
#include "netconv/verify.hpp"
#include "netconv/visited.hpp"

using namespace nctest;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.str("");
    pass = false;
    detail << what << "; ";
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared corpus for criteria 2, 4 and 10.
const std::vector<RandomCase>& corpus() {
  static std::size_t rejected = 0;
  static const auto cases = convergent_corpus(220, 1, false, &rejected);
  return cases;
}

RoutingContext context_of(const RandomCase& c, const Prefix& p) {
  return RoutingContext(c.net, p, c.protocol, LinkMask(c.net.topology.link_count(), c.failures));
}

SearchOptions all_off() {
  SearchOptions o;
  o.deterministic_nodes = false;
  o.consistent_prune = false;
  o.independence = false;
  o.policy_prune = false;
  return o;
}

std::string names(const std::vector<NodeId>& nodes, const Topology& topo) {
  std::string s;
  for (auto n : nodes) s += (s.empty() ? "" : " -> ") + topo.name(n);
  return s;
}

void pec_golden(Outcome& out) {
  auto t0 = Clock::now();
  auto plan = make_plan(split_space());
  std::vector<std::pair<std::string, std::string>> got;
  for (const auto& pec : plan.pecs) got.emplace_back(pec.range.lo.to_string(), pec.range.hi.to_string());
  std::vector<std::pair<std::string, std::string>> want = {{"0.0.0.0", "127.255.255.255"},
                                                           {"128.0.0.0", "191.255.255.255"},
                                                           {"192.0.0.0", "255.255.255.255"}};
  out.require(got == want, "ranges differ from the three expected classes");
  if (plan.pecs.size() == 3) {
    out.require(!plan.pecs[0].is_routed(), "lower half should be unrouted");
    out.require(plan.pecs[1].prefixes.size() == 1, "middle class should carry one prefix");
    out.require(plan.pecs[2].prefixes.size() == 2 && plan.pecs[2].prefixes[0].prefix.length() == 2,
                "upper class should carry /2 then /1");
  }
  double t = seconds_since(t0);
  out.require(t < 1.0, "took more than a second");
  if (out.pass) out.detail << plan.pecs.size() << " classes in " << t << " s";
}

void rpvp_matches_oracle(Outcome& out) {
  auto t0 = Clock::now();
  const auto& cases = corpus();
  std::size_t runs = 0, mismatches = 0, bgp = 0, nonempty = 0, multi = 0;
  for (const auto& c : cases) {
    bgp += c.protocol == Protocol::Bgp;
    for (std::size_t i = 0; i < c.prefixes.size(); ++i) {
      auto ctx = context_of(c, c.prefixes[i]);
      auto mine = explore_run(ctx, SearchOptions{});
      ++runs;
      nonempty += !c.at_start[i].empty();
      multi += c.at_start[i].size() > 1;
      if (mine.converged != c.at_start[i]) {
        ++mismatches;
        out.require(false, "seed " + std::to_string(c.seed) + " prefix " + c.prefixes[i].to_string() + ": " +
                               std::to_string(mine.converged.size()) + " vs oracle " +
                               std::to_string(c.at_start[i].size()));
      }
    }
  }
  double t = seconds_since(t0);
  out.require(cases.size() >= 200, "corpus smaller than 200");
  out.require(t < 300, "took longer than five minutes");
  out.detail << cases.size() << " instances (" << bgp << " BGP), " << runs << " runs, " << multi
             << " with several converged states, " << mismatches << " mismatches, " << t << " s";
}

void failure_timing(Outcome& out) {
  auto t0 = Clock::now();
  auto cases = convergent_corpus(50, 100'001, true);
  std::size_t runs = 0, differ = 0, checker = 0;
  for (const auto& c : cases) {
    for (std::size_t i = 0; i < c.prefixes.size(); ++i) {
      ++runs;
      if (c.mid_run[i] != c.at_start[i]) {
        ++differ;
        out.require(false, "seed " + std::to_string(c.seed) + " prefix " + c.prefixes[i].to_string() +
                               ": mid-run " + std::to_string(c.mid_run[i].size()) + " vs start " +
                               std::to_string(c.at_start[i].size()));
      }
      auto ctx = context_of(c, c.prefixes[i]);
      if (explore_run(ctx, SearchOptions{}).converged != c.at_start[i]) ++checker;
    }
  }
  out.require(checker == 0, std::to_string(checker) + " checker runs differ from the oracle under failure");
  out.detail << cases.size() << " instances, " << runs << " runs, " << differ << " differences, "
             << seconds_since(t0) << " s";
}

void optimizations_sound(Outcome& out) {
  auto t0 = Clock::now();
  struct Toggle {
    const char* name;
    std::function<void(SearchOptions&)> off;
  };
  std::vector<Toggle> toggles = {
      {"det-nodes", [](SearchOptions& o) { o.deterministic_nodes = false; }},
      {"consistent", [](SearchOptions& o) { o.consistent_prune = false; }},
      {"independence", [](SearchOptions& o) { o.independence = false; }},
      {"all", [](SearchOptions& o) { o = all_off(); }},
  };
  std::uint64_t on_states = 0;
  std::map<std::string, std::uint64_t> off_states;
  for (const auto& c : corpus()) {
    for (std::size_t i = 0; i < c.prefixes.size(); ++i) {
      auto ctx = context_of(c, c.prefixes[i]);
      auto on = explore_run(ctx, SearchOptions{});
      on_states += on.stats.states_explored;
      for (const auto& t : toggles) {
        SearchOptions o;
        t.off(o);
        auto r = explore_run(ctx, o);
        off_states[t.name] += r.stats.states_explored;
        out.require(r.converged == c.at_start[i],
                    std::string("set changed without ") + t.name + " (seed " + std::to_string(c.seed) + ")");
        out.require(on.stats.states_explored <= r.stats.states_explored,
                    std::string("more states with optimizations on than without ") + t.name + " (seed " +
                        std::to_string(c.seed) + ")");
      }
    }
  }

  // Verdicts of whole-network runs must not depend on any single toggle,
  // policy pruning and failure sampling included.
  NetworkSpec wedge;
  wedge.network = wedgie();
  wedge.policies = {wedgie_waypoint(wedge.network)};
  std::vector<std::pair<std::string, NetworkSpec>> nets = {{"ring-8", make_ring(8)}, {"wedgie", std::move(wedge)}};
  for (auto& [label, spec] : nets) {
    VerifyOptions base;
    base.max_failures = 1;
    auto want = verify(spec.network, spec.policies, base);
    std::vector<std::function<void(VerifyOptions&)>> offs = {
        [](VerifyOptions& o) { o.search.deterministic_nodes = false; },
        [](VerifyOptions& o) { o.search.consistent_prune = false; },
        [](VerifyOptions& o) { o.search.independence = false; },
        [](VerifyOptions& o) { o.search.policy_prune = false; },
        [](VerifyOptions& o) { o.dec = false; },
    };
    for (const auto& off : offs) {
      auto o = base;
      off(o);
      auto got = verify(spec.network, spec.policies, o);
      for (std::size_t p = 0; p < want.verdicts.size(); ++p) {
        out.require(got.verdicts[p].pass() == want.verdicts[p].pass(), label + ": verdict changed with a toggle off");
      }
    }
  }

  auto ring = make_ring(16).network;
  std::uint64_t ring_on = 0, ring_off = 0;
  for (const auto& failures : enumerate_failures(ring, 1)) {
    RoutingContext ctx(ring, kDest, Protocol::Ospf, LinkMask(ring.topology.link_count(), failures));
    ring_on += explore_run(ctx, SearchOptions{}).stats.states_explored;
    ring_off += explore_run(ctx, all_off()).stats.states_explored;
  }
  double factor = static_cast<double>(ring_off) / static_cast<double>(std::max<std::uint64_t>(ring_on, 1));
  out.require(factor >= 2.0, "ring-16 reduction below 2x");
  out.detail << "corpus states: on " << on_states;
  for (const auto& [k, v] : off_states) out.detail << ", no-" << k << " " << v;
  out.detail << "; ring-16 K=1: " << ring_off << " -> " << ring_on << " (" << factor << "x), " << seconds_since(t0)
             << " s";
}

void gadgets(Outcome& out) {
  auto dis = disagree();
  RoutingContext dctx(dis, kDest, Protocol::Bgp, LinkMask(dis.topology.link_count(), {}));
  auto oracle = enumerate_converged(SpvpInstance(dctx, dctx));
  auto mine = explore_run(dctx, SearchOptions{});
  out.require(oracle.converged.size() == 2, "oracle finds " + std::to_string(oracle.converged.size()) +
                                                " DISAGREE states");
  out.require(mine.converged == oracle.converged, "checker and oracle disagree on DISAGREE");

  auto wed = wedgie();
  auto policy = wedgie_waypoint(wed);
  RoutingContext wctx(wed, kDest, Protocol::Bgp, LinkMask(wed.topology.link_count(), {}));
  auto states = explore_run(wctx, SearchOptions{}).converged;
  auto plan = make_plan(wed);
  auto pec = find_pec(plan.pecs, kDest.base());
  std::set<bool> verdicts;
  for (const auto& m : states) {
    std::vector<PrefixRun> runs = {{kDest, Protocol::Bgp, m}};
    auto g = build_fib(wed, plan.pecs[pec], runs, LinkMask(), nullptr);
    verdicts.insert(check(policy, PolicyInput{&g, &runs}, wed.topology).pass);
  }
  out.require(states.size() == 2 && verdicts.size() == 2, "wedgie should have one passing and one failing state");

  VerifyOptions opts;
  auto res = verify(wed, {policy}, opts);
  const auto& v = res.verdicts.at(0).violation;
  out.require(v.has_value(), "waypoint violation not reported");
  if (v) {
    auto steps = steps_for(v->trail, kDest, Protocol::Bgp);
    auto replayed = replay_run(wctx, steps);
    out.require(replayed == v->runs.at(0), "trail replay lands on a different state");
    std::vector<PrefixRun> runs = {replayed};
    auto g = build_fib(wed, plan.pecs[pec], runs, LinkMask(), nullptr);
    auto again = check(policy, PolicyInput{&g, &runs}, wed.topology);
    out.require(!again.pass, "replayed state satisfies the waypoint policy");
    if (out.pass)
      out.detail << "DISAGREE 2 states; wedgie witness " << names(again.witness, wed.topology) << " replayed from "
                 << steps.size() << " steps";
  }
}

void fat_tree(Outcome& out) {
  auto t0 = Clock::now();
  auto good = make_fat_tree(4, StaticMode::Correct);
  auto res_good = verify(good.network, good.policies, VerifyOptions{});
  out.require(res_good.all_pass(), "correct statics reported a violation");

  auto bad = make_fat_tree(4, StaticMode::Loop);
  const auto& net = bad.network;
  auto res_bad = verify(net, bad.policies, VerifyOptions{});
  const PolicyVerdict* loop = nullptr;
  for (const auto& v : res_bad.verdicts) {
    if (v.kind == PolicyKind::LoopFreedom) loop = &v;
  }
  out.require(loop && loop->violation, "loop not reported");
  if (loop && loop->violation) {
    const auto& v = *loop->violation;
    std::set<std::string> cycle;
    for (auto n : v.result.witness) cycle.insert(net.topology.name(n));
    out.require(cycle == std::set<std::string>{"a0_0", "e0_1"}, "witness is not the a0_0/e0_1 cycle");

    auto plan = make_plan(net);
    LinkMask mask(net.topology.link_count(), v.failures);
    std::vector<PrefixRun> replayed;
    for (const auto& r : v.runs) {
      RoutingContext ctx(net, r.prefix, r.protocol, mask);
      replayed.push_back(replay_run(ctx, steps_for(v.trail, r.prefix, r.protocol)));
    }
    out.require(replayed == v.runs, "trail replay differs");
    auto g = build_fib(net, plan.pecs[v.pec], replayed, mask, nullptr);
    bool looped = false;
    for (NodeId s = 0; s < net.node_count(); ++s) {
      for (const auto& w : walks_from(g, s)) looped = looped || w.end == WalkEnd::Looped;
    }
    out.require(looped, "replayed data plane has no cycle");
    if (out.pass) out.detail << "cycle " << names(v.result.witness, net.topology) << "; ";
  }
  double t = seconds_since(t0);
  out.require(t <= 10.0, "took longer than 10 s");
  out.detail << "both runs in " << t << " s";
}

void recursive_routing(Outcome& out) {
  auto net = ibgp_over_ospf();
  auto plan = make_plan(net);
  std::vector<PecId> loop_pecs;
  for (NodeId n = 0; n < 4; ++n) loop_pecs.push_back(find_pec(plan.pecs, *net.config(n).loopback));
  std::vector<PecId> data_pecs = {static_cast<PecId>(find_pec(plan.pecs, Address::parse("10.1.0.0"))),
                                  static_cast<PecId>(find_pec(plan.pecs, Address::parse("10.2.0.0")))};
  for (auto d : data_pecs) {
    auto deps = plan.graph.dependencies(d);
    std::set<PecId> want(loop_pecs.begin(), loop_pecs.end());
    out.require(std::set<PecId>(deps.begin(), deps.end()) == want, "data class does not depend on every loopback");
    for (auto l : loop_pecs) {
      out.require(plan.schedule.groups[plan.schedule.group_of[l]].level <
                      plan.schedule.groups[plan.schedule.group_of[d]].level,
                  "loopback class not scheduled first");
    }
  }

  auto store = fs::temp_directory_path() / "netconv-accept-store";
  fs::remove_all(store);
  std::vector<PolicySpec> policies;
  for (const char* p : {"10.1.0.0/16", "10.2.0.0/16"}) {
    PolicySpec s;
    s.name = std::string("reach ") + p;
    s.kind = PolicyKind::Reachability;
    s.destination = Prefix::parse(p);
    policies.push_back(s);
  }
  VerifyOptions opts;
  opts.max_failures = 1;
  opts.dec = false;
  opts.outcome_store = store;
  auto res = verify(net, policies, opts);
  out.require(res.all_pass(), "reachability fails although every single failure leaves the ring connected");

  // Hand analysis without failures: traffic follows the OSPF path toward
  // the originator's loopback, and the long r3-r0 link is never used.
  std::map<std::string, std::vector<std::string>> want1 = {{"r1", {"r0"}}, {"r2", {"r1"}}, {"r3", {"r2"}}};
  std::map<std::string, std::vector<std::string>> want2 = {{"r0", {"r1"}}, {"r1", {"r2"}}, {"r3", {"r2"}}};
  OutcomeStore disk(store);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    auto gi = plan.schedule.group_of[data_pecs[i]];
    auto outcomes = disk.matching(gi, {});
    out.require(outcomes.size() == 1, "expected one stored outcome without failures");
    for (const auto& o : outcomes) {
      const auto& g = o.graphs.at(data_pecs[i]);
      for (const auto& [node, hops] : i == 0 ? want1 : want2) {
        std::vector<std::string> got;
        for (auto h : g.entries[net.topology.id(node)].next_hops) got.push_back(net.topology.name(h));
        out.require(got == hops, "next hop of " + node + " differs from hand analysis");
        ++checked;
      }
    }
    // Under every failure the recursive next hop equals the stored IGP
    // next hop toward the originator's loopback.
    NodeId origin = i == 0 ? 0 : 2;
    for (const auto& failures : enumerate_failures(net, 1)) {
      auto lg = plan.schedule.group_of[loop_pecs[origin]];
      auto igp = disk.matching(lg, failures);
      auto bgp = disk.matching(gi, failures);
      out.require(igp.size() == 1 && !bgp.empty(), "missing stored outcomes under a failure");
      if (igp.size() != 1) continue;
      const auto& ig = igp[0].graphs.at(loop_pecs[origin]);
      for (const auto& o : bgp) {
        out.require(o.dependencies.size() == 4, "outcome does not record its loopback picks");
        const auto& g = o.graphs.at(data_pecs[i]);
        for (NodeId n = 0; n < 4; ++n) {
          if (n == origin) continue;
          out.require(g.entries[n].next_hops == ig.entries[n].next_hops, "recursive next hop not resolved via IGP");
          ++checked;
        }
      }
    }
  }
  fs::remove_all(store);
  out.detail << checked << " next hops checked, " << res.stats.outcomes_stored << " outcomes stored, "
             << plan.schedule.level_count() << " levels";
}

void failure_symmetry(Outcome& out) {
  auto spec = make_fat_tree(4, StaticMode::Correct);
  const auto& net = spec.network;
  VerifyOptions on;
  on.max_failures = 1;
  auto off = on;
  off.dec = false;
  auto a = verify(net, spec.policies, on);
  auto b = verify(net, spec.policies, off);
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    out.require(a.verdicts[i].pass() == b.verdicts[i].pass(), "verdict of " + a.verdicts[i].policy + " differs");
  }
  out.require(a.stats.scenarios < b.stats.scenarios, "symmetry does not reduce the scenario count");

  // Expected count: per group, the failure-free run plus one failure per
  // link class of the refined coloring.
  auto plan = make_plan(net);
  std::size_t expected = 0;
  for (const auto& grp : plan.schedule.groups) {
    const auto& pec = plan.pecs[grp.pecs.front()];
    std::vector<NodeId> roles;
    for (const auto& p : spec.policies) {
      if (!applies_to(p, pec)) continue;
      auto r = role_nodes(p);
      roles.insert(roles.end(), r.begin(), r.end());
    }
    auto part = refine_partition(net, initial_colors(net, pec, roles, {}), LinkMask());
    expected += 1 + part.link_classes(net.topology, LinkMask()).size();
  }
  out.require(a.stats.scenarios == expected, "scenario count " + std::to_string(a.stats.scenarios) +
                                                 " differs from the " + std::to_string(expected) + " link classes");
  out.detail << "scenarios " << b.stats.scenarios << " -> " << a.stats.scenarios << " (expected " << expected
             << "), verdicts identical";
}

void entry_interning(Outcome& out) {
  // Random executions over a 6x6 OSPF grid with uneven costs, restarted
  // whenever one converges, until a million distinct states were seen.
  const int side = 6;
  Network net;
  for (int i = 0; i < side * side; ++i) ospf_node(net, "g" + std::to_string(i));
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      NodeId id = r * side + c;
      if (c + 1 < side) net.topology.add_link(id, id + 1, 1 + static_cast<int>(id % 3));
      if (r + 1 < side) net.topology.add_link(id, id + side, 1 + static_cast<int>((id + 1) % 2));
    }
  }
  net.ospf_multipath = false;
  net.config(0).ospf->originated.push_back(kDest);
  RoutingContext ctx(net, kDest, Protocol::Ospf, LinkMask());
  RouteEntryTable table(Protocol::Ospf);
  Rpvp rpvp(ctx, table);
  auto visited = VisitedSet::exact();
  std::unordered_set<RouteEntry> seen = {RouteEntry::bottom(Protocol::Ospf), RouteEntry::origin(Protocol::Ospf)};
  std::mt19937_64 rng(7);

  const std::uint64_t target = 1'000'000;
  std::uint64_t steps_taken = 0;
  auto s = rpvp.initial();
  visited.insert(canonical_state_key(s, {}));
  while (visited.inserted() < target) {
    auto enabled = rpvp.enabled_nodes(s);
    if (enabled.empty()) {
      s = rpvp.initial();
      continue;
    }
    auto node = enabled[std::uniform_int_distribution<std::size_t>(0, enabled.size() - 1)(rng)].node;
    auto steps = rpvp.steps(s, node);
    const auto& step = steps[std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(rng)];
    seen.insert(Rpvp::merge_install(step.install, Protocol::Ospf));
    s = rpvp.apply_step(s, step);
    visited.insert(canonical_state_key(s, {}));
    ++steps_taken;
  }
  out.require(table.size() == seen.size(), "table holds " + std::to_string(table.size()) + " entries, counted " +
                                               std::to_string(seen.size()));
  auto distinct = visited.inserted();
  double per_state = static_cast<double>(visited.memory_bytes()) / static_cast<double>(distinct);
  out.require(per_state <= 64.0, "key storage above 64 bytes per state");
  double full = static_cast<double>(net.node_count() * sizeof(RouteEntry));
  out.detail << distinct << " distinct states from " << steps_taken << " steps, " << table.size() << " entries, "
             << per_state << " key bytes per state (a full state would take " << full << ")";
}

void bitstate(Outcome& out) {
  SearchOptions bs;
  bs.bitstate_bits = std::uint64_t{1} << 20;
  std::size_t runs = 0, equal = 0, instances = 0, equal_instances = 0;
  for (const auto& c : corpus()) {
    bool all_equal = true;
    for (std::size_t i = 0; i < c.prefixes.size(); ++i) {
      auto ctx = context_of(c, c.prefixes[i]);
      auto got = explore_run(ctx, bs).converged;
      const auto& exact = c.at_start[i];
      ++runs;
      bool subset = std::includes(exact.begin(), exact.end(), got.begin(), got.end(), ConvergedMapLess{});
      out.require(subset, "bitstate found a state the exact search did not (seed " + std::to_string(c.seed) + ")");
      equal += got == exact;
      all_equal = all_equal && got == exact;
    }
    ++instances;
    equal_instances += all_equal;
  }
  double ratio = static_cast<double>(equal_instances) / static_cast<double>(instances);
  out.require(ratio >= 0.99, "sets equal on fewer than 99% of instances");
  out.detail << equal_instances << "/" << instances << " instances equal, " << equal << "/" << runs << " runs";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "packet classes of 128.0.0.0/1 and 192.0.0.0/2", pec_golden},
      {2, "reduced search equals message-passing oracle", rpvp_matches_oracle},
      {3, "mid-run failures equal failures at start", failure_timing},
      {4, "optimizations keep the converged set", optimizations_sound},
      {5, "DISAGREE and wedgie", gadgets},
      {6, "fat tree static routes", fat_tree},
      {7, "iBGP over OSPF", recursive_routing},
      {8, "failure sampling by symmetry", failure_symmetry},
      {9, "route entry interning", entry_interning},
      {10, "bitstate visited set", bitstate},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
