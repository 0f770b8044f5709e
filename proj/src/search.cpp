#include "netconv/search.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "netconv/visited.hpp"

namespace netconv {

void SearchStats::add(const SearchStats& o) {
  states_explored += o.states_explored;
  states_deduped += o.states_deduped;
  branch_points += o.branch_points;
  transitions += o.transitions;
  converged += o.converged;
  abandoned += o.abandoned;
  early_finishes += o.early_finishes;
  max_depth = std::max(max_depth, o.max_depth);
  visited_bytes += o.visited_bytes;
  entries += o.entries;
  truncated = truncated || o.truncated;
}

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::Select: return "select";
    case StepKind::Branch: return "branch";
    case StepKind::TakeBottom: return "take-bottom";
  }
  return "?";
}

PruneDecision policy_prune(const RoutingContext& ctx, const std::vector<bool>& settled,
                           const std::vector<NodeId>& closure) {
  PruneDecision d;
  std::vector<NodeId> work;
  d.allowed.assign(ctx.node_count(), false);
  for (auto n : closure) {
    if (!settled[n] && !d.allowed[n]) {
      d.allowed[n] = true;
      work.push_back(n);
    }
  }
  if (work.empty()) {
    d.kind = PruneKind::FinishEarly;
    d.allowed.clear();
    return d;
  }
  while (!work.empty()) {
    auto n = work.back();
    work.pop_back();
    for (const auto& p : ctx.peers(n)) {
      if (settled[p.peer] || d.allowed[p.peer]) continue;
      d.allowed[p.peer] = true;
      work.push_back(p.peer);
    }
  }
  d.kind = PruneKind::RestrictExecution;
  return d;
}

Consistency prune_inconsistent(Rpvp& rpvp, const ProtocolState& s, const Step& step) {
  const auto& cur = rpvp.best(s, step.node);
  if (cur.is_bottom()) return Consistency::Keep;
  if (Rpvp::merge_install(step.install, rpvp.context().protocol()) == cur) return Consistency::Keep;
  return Consistency::Abandon;
}

namespace {

struct Frame {
  ProtocolState state;
  std::vector<Step> branches;
  std::size_t next = 0;
};

StepRecord record_of(const Step& step, std::size_t alternatives, Protocol p) {
  StepRecord r;
  r.node = step.node;
  r.alternatives = static_cast<std::uint32_t>(alternatives);
  r.entry = Rpvp::merge_install(step.install, p);
  if (step.takes_bottom()) {
    r.kind = StepKind::TakeBottom;
  } else {
    r.peer = std::min_element(step.install.begin(), step.install.end(),
                              [](const Offer& a, const Offer& b) { return a.peer < b.peer; })
                 ->peer;
    r.kind = alternatives > 1 ? StepKind::Branch : StepKind::Select;
  }
  return r;
}

}  // namespace

SearchStats dfs_explore(Rpvp& rpvp, const SearchOptions& opts, const EmitFn& emit, const PruneFn& prune,
                        const StateHook& hook) {
  SearchStats stats;
  const auto& ctx = rpvp.context();
  const auto& failed = ctx.failures().failed();
  const bool need_bounds = opts.deterministic_nodes || opts.independence || (opts.policy_prune && prune);
  std::optional<SettleAnalysis> bounds;
  if (need_bounds) bounds.emplace(ctx);
  VisitedSet visited = opts.bitstate_bits ? VisitedSet::bitstate(opts.bitstate_bits) : VisitedSet::exact();

  std::vector<Frame> stack;
  std::vector<StepRecord> trail;
  bool stop = false;

  // Returns the branches to explore, or nullopt when the state is a leaf.
  auto expand = [&](const ProtocolState& s) -> std::optional<std::vector<Step>> {
    auto enabled = rpvp.enabled_nodes(s);
    if (enabled.empty()) {
      ++stats.converged;
      if (!emit(Emission{s, trail, false})) stop = true;
      return std::nullopt;
    }
    if (opts.consistent_prune) {
      for (const auto& e : enabled) {
        if (!rpvp.best(s, e.node).is_bottom()) {
          ++stats.abandoned;
          return std::nullopt;
        }
      }
    }
    std::vector<bool> settled;
    if (need_bounds) settled = bounds->settled(rpvp, s);
    if (opts.policy_prune && prune) {
      auto d = prune(s, settled);
      if (d.kind == PruneKind::RestrictExecution) {
        std::erase_if(enabled, [&](const EnabledNode& e) { return !d.allowed[e.node]; });
        if (enabled.empty()) d.kind = PruneKind::FinishEarly;
      }
      if (d.kind == PruneKind::FinishEarly) {
        ++stats.early_finishes;
        if (!emit(Emission{s, trail, true})) stop = true;
        return std::nullopt;
      }
    }
    std::vector<Step> branches;
    if (opts.deterministic_nodes) {
      if (auto det = detect_deterministic(rpvp, s, *bounds, settled, enabled)) branches = std::move(det->steps);
    }
    if (branches.empty()) {
      if (opts.independence) {
        auto comp = unsettled_component(ctx, settled, enabled.front().node);
        std::erase_if(enabled,
                      [&](const EnabledNode& e) { return !std::binary_search(comp.begin(), comp.end(), e.node); });
      }
      for (const auto& e : enabled) {
        auto st = rpvp.steps(s, e.node);
        for (auto& x : st) branches.push_back(std::move(x));
      }
    }
    if (branches.size() > 1) ++stats.branch_points;
    return branches;
  };

  auto visit = [&](ProtocolState s) -> bool {
    if (!visited.insert(canonical_state_key(s, failed))) {
      ++stats.states_deduped;
      return false;
    }
    ++stats.states_explored;
    if (hook) hook(s);
    if (opts.max_states && stats.states_explored >= opts.max_states) {
      stats.truncated = true;
      stop = true;
    }
    stats.max_depth = std::max<std::uint64_t>(stats.max_depth, trail.size());
    auto branches = expand(s);
    if (!branches) return false;
    stack.push_back(Frame{std::move(s), std::move(*branches), 0});
    return true;
  };

  visit(rpvp.initial());
  while (!stack.empty() && !stop) {
    auto& f = stack.back();
    if (f.next == f.branches.size()) {
      stack.pop_back();
      if (!trail.empty()) trail.pop_back();
      continue;
    }
    const std::size_t alternatives = f.branches.size();
    Step step = f.branches[f.next++];
    auto next = rpvp.apply_step(f.state, step);
    ++stats.transitions;
    trail.push_back(record_of(step, alternatives, ctx.protocol()));
    if (!visit(std::move(next))) trail.pop_back();
  }
  stats.visited_bytes = visited.memory_bytes();
  stats.entries = rpvp.table().size();
  return stats;
}

ProtocolState replay(Rpvp& rpvp, const std::vector<StepRecord>& steps) {
  auto s = rpvp.initial();
  for (const auto& r : steps) {
    auto options = rpvp.steps(s, r.node);
    bool applied = false;
    for (const auto& st : options) {
      if (Rpvp::merge_install(st.install, rpvp.context().protocol()) == r.entry) {
        s = rpvp.apply_step(s, st);
        applied = true;
        break;
      }
    }
    if (!applied) throw std::runtime_error("recorded step at node " + std::to_string(r.node) + " is not available");
  }
  return s;
}

}  // namespace netconv
