#include "netconv/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <thread>

#include "netconv/failures.hpp"

namespace netconv {

bool VerifyResult::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const PolicyVerdict& v) { return v.pass(); });
}

Plan make_plan(const Network& net) {
  Plan p;
  p.pecs = compute_pecs(PrefixTrie::build(net));
  p.graph = build_dependency_graph(p.pecs, net);
  p.schedule = compute_schedule(p.graph);
  return p;
}

std::vector<std::pair<Prefix, Protocol>> runs_of(const Pec& pec) {
  std::vector<std::pair<Prefix, Protocol>> out;
  for (const auto& c : pec.prefixes) {
    if (!c.config.ospf_origins.empty()) out.emplace_back(c.prefix, Protocol::Ospf);
    if (!c.config.bgp_origins.empty()) out.emplace_back(c.prefix, Protocol::Bgp);
  }
  return out;
}

namespace {

std::vector<std::size_t> applicable_policies(const Plan& plan, std::size_t group,
                                             const std::vector<PolicySpec>& policies) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    for (auto id : plan.schedule.groups[group].pecs) {
      if (applies_to(policies[i], plan.pecs[id])) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

bool has_multihop_ibgp(const Network& net) {
  for (NodeId u = 0; u < net.node_count(); ++u) {
    const auto& bgp = net.config(u).bgp;
    if (!bgp || !net.config(u).loopback) continue;
    for (const auto& s : bgp->sessions) {
      if (s.kind == SessionKind::Ibgp && net.config(s.peer).loopback) return true;
    }
  }
  return false;
}

ConvergedMap to_map(const Rpvp& rpvp, const ProtocolState& s) {
  ConvergedMap m;
  m.reserve(s.best.size());
  for (auto id : s.best) m.push_back(rpvp.table().get(id));
  return m;
}

std::string failures_text(const std::vector<LinkId>& failures, const Topology& topo) {
  if (failures.empty()) return "no failures";
  std::string s;
  for (auto l : failures) {
    if (!s.empty()) s += ", ";
    s += topo.name(topo.link(l).a) + "-" + topo.name(topo.link(l).b);
  }
  return "failed " + s;
}

std::string range_text(const PrefixRange& r) { return "[" + r.lo.to_string() + ", " + r.hi.to_string() + "]"; }

class OutcomeLookup : public FibLookup {
 public:
  OutcomeLookup(const std::vector<Pec>& pecs, std::vector<const ConvergedOutcome*> picks)
      : pecs_(&pecs), picks_(std::move(picks)) {}

  const ForwardingGraph* graph_for(Address a) const override {
    PecId id = (*pecs_)[find_pec(*pecs_, a)].id;
    for (const auto* o : picks_) {
      auto it = o->graphs.find(id);
      if (it != o->graphs.end()) return &it->second;
    }
    return nullptr;
  }

 private:
  const std::vector<Pec>* pecs_;
  std::vector<const ConvergedOutcome*> picks_;
};

struct ItemResult {
  std::vector<std::optional<Violation>> violations;
  std::vector<std::uint64_t> checks;
  std::vector<std::uint64_t> skipped;
  SearchStats search;
  std::uint64_t data_planes = 0;
  std::size_t stored = 0;
  std::set<std::string> diagnostics;
  std::map<std::pair<std::size_t, PecId>, std::set<Hash128>> seen_keys;
};

class Runner {
 public:
  Runner(const Network& net, const Plan& plan, const std::vector<PolicySpec>& policies, const VerifyOptions& opts,
         OutcomeStore& store)
      : net_(net), plan_(plan), policies_(policies), opts_(opts), store_(store), multihop_(has_multihop_ibgp(net)) {
    const auto& groups = plan.schedule.groups;
    keep_.assign(groups.size(), opts.outcome_store.has_value() || opts.collect_outcomes);
    for (const auto& g : groups) {
      for (auto d : g.depends_on) keep_[d] = true;
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      applicable_.push_back(applicable_policies(plan, gi, policies));
      scenarios_.push_back(group_scenarios(net, plan, gi, policies, opts));
      std::set<std::pair<Prefix, Protocol>> keys;
      for (auto id : groups[gi].pecs) {
        for (const auto& k : runs_of(plan.pecs[id])) keys.insert(k);
      }
      runs_.emplace_back(keys.begin(), keys.end());
    }
  }

  std::size_t scenario_count(std::size_t gi) const { return scenarios_[gi].size(); }

  ItemResult process(std::size_t gi, std::size_t si) {
    ItemResult res;
    res.violations.resize(policies_.size());
    res.checks.assign(policies_.size(), 0);
    res.skipped.assign(policies_.size(), 0);
    if (applicable_[gi].empty() && !keep_[gi]) return res;

    const auto& grp = plan_.schedule.groups[gi];
    const auto& failures = scenarios_[gi][si];
    std::vector<std::vector<ConvergedOutcome>> deps;
    for (auto d : grp.depends_on) {
      deps.push_back(store_.matching(d, failures));
      if (deps.back().empty()) {
        res.diagnostics.insert("group " + std::to_string(gi) + " skipped under " +
                               failures_text(failures, net_.topology) + ": dependency group " + std::to_string(d) +
                               " has no converged outcome");
        return res;
      }
    }
    std::vector<std::size_t> pick(deps.size(), 0);
    while (true) {
      std::vector<const ConvergedOutcome*> chosen;
      std::vector<DependencyPick> picks;
      for (std::size_t i = 0; i < deps.size(); ++i) {
        chosen.push_back(&deps[i][pick[i]]);
        picks.push_back({grp.depends_on[i], outcome_digest(*chosen.back())});
      }
      if (!explore_combo(gi, si, chosen, picks, res)) break;
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < deps[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
    return res;
  }

 private:
  struct Collected {
    ConvergedMap map;
    std::vector<StepRecord> trail;
  };

  bool explore_combo(std::size_t gi, std::size_t si, const std::vector<const ConvergedOutcome*>& chosen,
                     const std::vector<DependencyPick>& picks, ItemResult& res) {
    const auto& grp = plan_.schedule.groups[gi];
    const auto& failures = scenarios_[gi][si];
    const LinkMask mask(net_.topology.link_count(), failures);
    OutcomeLookup lookup(plan_.pecs, chosen);
    std::optional<IgpCosts> igp;
    if (multihop_) igp = igp_costs_from(net_, lookup);
    const auto& keys = runs_[gi];

    std::vector<std::unique_ptr<RoutingContext>> ctxs;
    for (const auto& [prefix, proto] : keys)
      ctxs.push_back(std::make_unique<RoutingContext>(net_, prefix, proto, mask, igp ? &*igp : nullptr));

    auto no_prune = opts_.search;
    no_prune.policy_prune = false;
    std::vector<std::vector<Collected>> earlier(keys.empty() ? 0 : keys.size() - 1);
    for (std::size_t i = 0; i < earlier.size(); ++i) {
      RouteEntryTable table(keys[i].second);
      Rpvp rpvp(*ctxs[i], table);
      res.search.add(dfs_explore(rpvp, no_prune, [&](const Emission& e) {
        earlier[i].push_back({to_map(rpvp, e.state), e.trail});
        return true;
      }));
      if (earlier[i].empty()) {
        res.diagnostics.insert("no converged state for " + keys[i].first.to_string() + " under " +
                               failures_text(failures, net_.topology));
        return true;
      }
    }

    auto combine = [&](const Collected* last, bool early) {
      std::vector<std::size_t> idx(earlier.size(), 0);
      while (true) {
        std::vector<PrefixRun> runs;
        std::vector<ChoiceEvent> choices;
        auto add = [&](std::size_t k, const Collected& c) {
          runs.push_back({keys[k].first, keys[k].second, c.map});
          for (const auto& st : c.trail) choices.push_back({keys[k].first, keys[k].second, st});
        };
        for (std::size_t i = 0; i < earlier.size(); ++i) add(i, earlier[i][idx[i]]);
        if (last) add(keys.size() - 1, *last);
        if (!evaluate(gi, si, lookup, picks, std::move(choices), std::move(runs), early, res)) return false;
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < earlier[i].size()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) return true;
      }
    };

    if (keys.empty()) return combine(nullptr, false);

    const std::size_t li = keys.size() - 1;
    RouteEntryTable table(keys[li].second);
    Rpvp rpvp(*ctxs[li], table);
    PruneFn prune;
    const bool may_prune = opts_.search.policy_prune && grp.pecs.size() == 1 && keys.size() == 1 && !keep_[gi] &&
                           !grp.recursive && !applicable_[gi].empty();
    std::vector<NodeId> prune_sources;
    if (may_prune) {
      for (auto pi : applicable_[gi]) {
        auto s = effective_sources(policies_[pi], net_.node_count());
        prune_sources.insert(prune_sources.end(), s.begin(), s.end());
        prune_sources.insert(prune_sources.end(), policies_[pi].devices.begin(), policies_[pi].devices.end());
      }
      const Pec& pec = plan_.pecs[grp.pecs.front()];
      const RoutingContext& ctx = *ctxs[li];
      prune = [&, li](const ProtocolState& s, const std::vector<bool>& settled) {
        PrefixRun run{keys[li].first, keys[li].second, to_map(rpvp, s)};
        auto g = build_fib(net_, pec, {run}, mask, &lookup);
        return policy_prune(ctx, settled, data_plane_closure(g, prune_sources));
      };
    }
    bool stopped = false;
    auto opts = opts_.search;
    opts.policy_prune = may_prune;
    res.search.add(dfs_explore(
        rpvp, opts,
        [&](const Emission& e) {
          Collected c{to_map(rpvp, e.state), e.trail};
          if (combine(&c, e.early)) return true;
          stopped = true;
          return false;
        },
        prune));
    return !stopped;
  }

  /// Checks one combined data plane; false once nothing is left to find.
  bool evaluate(std::size_t gi, std::size_t si, const OutcomeLookup& lookup, const std::vector<DependencyPick>& picks,
                std::vector<ChoiceEvent> choices, std::vector<PrefixRun> runs, bool early, ItemResult& res) {
    const auto& grp = plan_.schedule.groups[gi];
    const auto& failures = scenarios_[gi][si];
    const LinkMask mask(net_.topology.link_count(), failures);
    ++res.data_planes;

    std::vector<GroupFibInput> inputs;
    for (auto id : grp.pecs) {
      GroupFibInput in{&plan_.pecs[id], {}};
      for (const auto& k : runs_of(plan_.pecs[id])) {
        for (const auto& r : runs) {
          if (r.prefix == k.first && r.protocol == k.second) in.runs.push_back(r);
        }
      }
      inputs.push_back(std::move(in));
    }
    auto graphs = build_group_fibs(net_, plan_.pecs, inputs, mask, &lookup, opts_.fib_depth_limit);
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      for (const auto& d : graphs[k].diagnostics)
        res.diagnostics.insert("class " + range_text(plan_.pecs[grp.pecs[k]].range) + ": " + d);
    }

    if (keep_[gi] && !early) {
      ConvergedOutcome o;
      o.scc = gi;
      o.failures = failures;
      o.dependencies = picks;
      o.choices = choices;
      o.runs = runs;
      for (std::size_t k = 0; k < graphs.size(); ++k) o.graphs[grp.pecs[k]] = graphs[k];
      store_.put(o);
      ++res.stored;
    }

    bool open = false;
    for (auto pi : applicable_[gi]) {
      if (res.violations[pi]) continue;
      const auto& pol = policies_[pi];
      for (std::size_t k = 0; k < grp.pecs.size(); ++k) {
        const Pec& pec = plan_.pecs[grp.pecs[k]];
        if (!applies_to(pol, pec)) continue;
        PolicyInput in{&graphs[k], &inputs[k].runs};
        auto key = equivalence_key(pol, in, net_.node_count());
        if (!res.seen_keys[{pi, pec.id}].insert(key).second) {
          ++res.skipped[pi];
          continue;
        }
        ++res.checks[pi];
        auto r = check(pol, in, net_.topology);
        if (r.pass) continue;
        Violation v;
        v.group = gi;
        v.scenario = si;
        v.pec = pec.id;
        v.range = pec.range;
        v.failures = failures;
        v.dependencies = picks;
        v.trail = choices;
        v.runs = runs;
        v.graph = graphs[k];
        v.result = std::move(r);
        v.early = early;
        res.violations[pi] = std::move(v);
        break;
      }
      if (!res.violations[pi]) open = true;
    }
    return open || keep_[gi];
  }

  const Network& net_;
  const Plan& plan_;
  const std::vector<PolicySpec>& policies_;
  const VerifyOptions& opts_;
  OutcomeStore& store_;
  bool multihop_;
  std::vector<bool> keep_;
  std::vector<std::vector<std::size_t>> applicable_;
  std::vector<std::vector<std::vector<LinkId>>> scenarios_;
  std::vector<std::vector<std::pair<Prefix, Protocol>>> runs_;
};

}  // namespace

std::vector<std::vector<LinkId>> group_scenarios(const Network& net, const Plan& plan, std::size_t group,
                                                 const std::vector<PolicySpec>& policies, const VerifyOptions& opts) {
  if (!opts.dec || opts.max_failures == 0) return enumerate_failures(net, opts.max_failures);
  const Pec& pec = plan.pecs[plan.schedule.groups[group].pecs.front()];
  std::vector<NodeId> sources, interesting;
  bool all_sources = false;
  for (const auto& p : policies) {
    if (!applies_to(p, pec)) continue;
    if (p.sources.empty()) all_sources = true;
    sources.insert(sources.end(), p.sources.begin(), p.sources.end());
    auto roles = role_nodes(p);
    interesting.insert(interesting.end(), roles.begin(), roles.end());
  }
  if (all_sources) sources.clear();
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  auto colors = initial_colors(net, pec, interesting, sources);
  return enumerate_failures(net, opts.max_failures, &colors);
}

void check_options(const Plan& plan, const std::vector<PolicySpec>& policies, const VerifyOptions& opts,
                   std::size_t node_count) {
  if (opts.max_failures < 0) throw std::invalid_argument("--max-failures must be non-negative");
  if (opts.parallel == 0) throw std::invalid_argument("--parallel must be at least 1");
  for (const auto& p : policies) validate_policy(p, node_count);
  if (opts.dec && opts.max_failures > 0) {
    for (const auto& e : plan.graph.edges) {
      if (e.from != e.to)
        throw std::invalid_argument(
            "failure sampling by device symmetry needs classes without cross-class dependencies; use --no-dec-opt");
    }
  }
}

VerifyResult verify(const Network& net, const std::vector<PolicySpec>& policies, const VerifyOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const Plan plan = make_plan(net);
  check_options(plan, policies, opts, net.node_count());
  auto store = opts.outcome_store ? std::make_unique<OutcomeStore>(*opts.outcome_store) : std::make_unique<OutcomeStore>();
  Runner runner(net, plan, policies, opts, *store);

  VerifyResult out;
  for (const auto& d : validate_config(net)) out.diagnostics.push_back(std::string(to_string(d.kind)) + ": " + d.message);
  for (const auto& d : plan.graph.diagnostics) out.diagnostics.push_back(d);

  const auto& groups = plan.schedule.groups;
  std::vector<std::pair<std::size_t, std::size_t>> items;
  std::vector<ItemResult> results;
  const std::size_t levels = plan.schedule.level_count();
  for (std::size_t level = 0; level < levels; ++level) {
    std::vector<std::pair<std::size_t, std::size_t>> batch;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      if (groups[gi].level != level) continue;
      store->open_group(gi);
      for (std::size_t si = 0; si < runner.scenario_count(gi); ++si) batch.emplace_back(gi, si);
    }
    std::vector<ItemResult> batch_results(batch.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
      while (true) {
        auto i = next.fetch_add(1);
        if (i >= batch.size()) return;
        try {
          batch_results[i] = runner.process(batch[i].first, batch[i].second);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = batch.size();
        }
      }
    };
    const std::size_t workers = std::min(opts.parallel, std::max<std::size_t>(batch.size(), 1));
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      items.push_back(batch[i]);
      results.push_back(std::move(batch_results[i]));
    }
  }

  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });

  std::set<std::string> diags;
  for (std::size_t pi = 0; pi < policies.size(); ++pi) {
    PolicyVerdict v;
    v.policy = policies[pi].name;
    v.kind = policies[pi].kind;
    out.verdicts.push_back(std::move(v));
  }
  for (auto i : order) {
    auto& r = results[i];
    for (std::size_t pi = 0; pi < policies.size(); ++pi) {
      auto& v = out.verdicts[pi];
      v.checks += r.checks[pi];
      v.equivalent_skipped += r.skipped[pi];
      if (!v.violation && r.violations[pi]) v.violation = std::move(r.violations[pi]);
    }
    out.stats.search.add(r.search);
    out.stats.data_planes += r.data_planes;
    out.stats.outcomes_stored += r.stored;
    diags.insert(r.diagnostics.begin(), r.diagnostics.end());
  }
  if (out.stats.search.truncated) diags.insert("search truncated by the state limit; results are incomplete");
  out.diagnostics.insert(out.diagnostics.end(), diags.begin(), diags.end());

  if (opts.collect_outcomes) out.outcomes = store->all();
  out.stats.pecs = plan.pecs.size();
  out.stats.groups = groups.size();
  out.stats.levels = levels;
  out.stats.scenarios = items.size();
  out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

RunExploration explore_run(const RoutingContext& ctx, const SearchOptions& opts) {
  RouteEntryTable table(ctx.protocol());
  Rpvp rpvp(ctx, table);
  RunExploration out;
  auto o = opts;
  o.policy_prune = false;
  out.stats = dfs_explore(rpvp, o, [&](const Emission& e) {
    out.converged.insert(to_map(rpvp, e.state));
    return true;
  });
  return out;
}

PrefixRun replay_run(const RoutingContext& ctx, const std::vector<StepRecord>& steps) {
  RouteEntryTable table(ctx.protocol());
  Rpvp rpvp(ctx, table);
  auto s = replay(rpvp, steps);
  return PrefixRun{ctx.prefix(), ctx.protocol(), to_map(rpvp, s)};
}

std::vector<StepRecord> steps_for(const std::vector<ChoiceEvent>& trail, const Prefix& prefix, Protocol protocol) {
  std::vector<StepRecord> out;
  for (const auto& c : trail) {
    if (c.prefix == prefix && c.protocol == protocol) out.push_back(c.step);
  }
  return out;
}

IgpCosts igp_costs_from(const Network& net, const FibLookup& lookup) {
  const std::size_t n = net.node_count();
  IgpCosts costs(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto& lo = net.config(v).loopback;
    if (!lo) continue;
    const auto* g = lookup.graph_for(*lo);
    if (!g) continue;
    for (NodeId u = 0; u < n; ++u) {
      if (auto c = forwarding_cost(net, *g, u)) costs.set(u, v, *c);
    }
  }
  return costs;
}

Json trail_to_json(const Violation& v, const Network& net) {
  const auto& topo = net.topology;
  Json events = Json::array();
  std::size_t step = 0;
  for (auto l : v.failures) {
    Json e;
    e["step"] = step++;
    e["kind"] = "fail-link";
    e["link"] = l;
    e["a"] = topo.name(topo.link(l).a);
    e["b"] = topo.name(topo.link(l).b);
    events.push_back(e);
  }
  for (const auto& c : v.trail) {
    Json e;
    e["step"] = step++;
    e["kind"] = to_string(c.step.kind);
    e["prefix"] = c.prefix.to_string();
    e["protocol"] = to_string(c.protocol);
    e["node"] = topo.name(c.step.node);
    e["peer"] = c.step.peer == kNoNode ? Json(nullptr) : Json(topo.name(c.step.peer));
    e["entry"] = to_json(c.step.entry);
    e["route"] = c.step.entry.to_string(&topo);
    e["alternatives"] = c.step.alternatives;
    events.push_back(e);
  }
  return events;
}

Json verdicts_to_json(const VerifyResult& r, const Network& net, const std::vector<std::string>& trail_files) {
  const auto& topo = net.topology;
  Json out;
  out["result"] = r.all_pass() ? "pass" : "violation";
  Json list = Json::array();
  std::size_t trail_index = 0;
  for (const auto& v : r.verdicts) {
    Json j;
    j["policy"] = v.policy;
    j["kind"] = to_string(v.kind);
    j["result"] = v.pass() ? "pass" : "violation";
    j["checks"] = v.checks;
    j["equivalent_skipped"] = v.equivalent_skipped;
    if (v.violation) {
      const auto& x = *v.violation;
      Json vj;
      vj["class"] = Json::array({x.range.lo.to_string(), x.range.hi.to_string()});
      Json fails = Json::array();
      for (auto l : x.failures) fails.push_back(Json::array({topo.name(topo.link(l).a), topo.name(topo.link(l).b)}));
      vj["failed_links"] = fails;
      Json deps = Json::array();
      for (const auto& d : x.dependencies) deps.push_back(Json{{"group", d.group}, {"record", d.record}});
      vj["dependency_outcomes"] = deps;
      vj["message"] = x.result.message;
      Json w = Json::array();
      for (auto n : x.result.witness) w.push_back(topo.name(n));
      vj["witness"] = w;
      vj["partial_state"] = x.early;
      if (trail_index < trail_files.size()) vj["trail"] = trail_files[trail_index];
      ++trail_index;
      j["violation"] = vj;
    }
    list.push_back(j);
  }
  out["policies"] = list;
  out["diagnostics"] = r.diagnostics;
  return out;
}

Json stats_to_json(const VerifyResult& r, const VerifyOptions& opts) {
  const auto& s = r.stats;
  Json j;
  j["classes"] = s.pecs;
  j["groups"] = s.groups;
  j["levels"] = s.levels;
  j["scenarios"] = s.scenarios;
  j["data_planes"] = s.data_planes;
  j["outcomes_stored"] = s.outcomes_stored;
  j["states_explored"] = s.search.states_explored;
  j["states_deduped"] = s.search.states_deduped;
  j["branch_points"] = s.search.branch_points;
  j["transitions"] = s.search.transitions;
  j["converged"] = s.search.converged;
  j["abandoned"] = s.search.abandoned;
  j["early_finishes"] = s.search.early_finishes;
  j["max_depth"] = s.search.max_depth;
  j["visited_bytes"] = s.search.visited_bytes;
  j["route_entries"] = s.search.entries;
  j["truncated"] = s.search.truncated;
  j["wall_seconds"] = s.wall_seconds;
  Json o;
  o["max_failures"] = opts.max_failures;
  o["parallel"] = opts.parallel;
  o["deterministic_nodes"] = opts.search.deterministic_nodes;
  o["consistent_prune"] = opts.search.consistent_prune;
  o["independence"] = opts.search.independence;
  o["policy_prune"] = opts.search.policy_prune;
  o["dec"] = opts.dec;
  o["bitstate_bits"] = opts.search.bitstate_bits;
  j["options"] = o;
  return j;
}

}  // namespace netconv
