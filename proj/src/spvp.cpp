#include "netconv/spvp.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "netconv/hash.hpp"
#include "netconv/rpvp.hpp"

namespace netconv {

bool ConvergedMapLess::operator()(const ConvergedMap& a, const ConvergedMap& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    auto kx = std::tie(x.path, x.alternates, x.protocol, x.local_pref, x.igp_cost, x.ospf_cost, x.communities);
    auto ky = std::tie(y.path, y.alternates, y.protocol, y.local_pref, y.igp_cost, y.ospf_cost, y.communities);
    if (kx != ky) return kx < ky;
  }
  return false;
}

bool SpvpState::quiescent() const {
  for (const auto& per_node : buffers) {
    for (const auto& q : per_node) {
      if (!q.empty()) return false;
    }
  }
  return true;
}

SpvpInstance::SpvpInstance(const RoutingContext& before, const RoutingContext& after)
    : before_(&before), after_(&after) {
  if (before.node_count() != after.node_count() || before.protocol() != after.protocol() ||
      before.prefix() != after.prefix()) {
    throw std::invalid_argument("oracle contexts describe different runs");
  }
  nbrs_.resize(before.node_count());
  for (NodeId n = 0; n < before.node_count(); ++n) {
    for (const auto& p : before.peers(n)) nbrs_[n].push_back(p.peer);
    for (const auto& p : after.peers(n)) nbrs_[n].push_back(p.peer);
    std::sort(nbrs_[n].begin(), nbrs_[n].end());
    nbrs_[n].erase(std::unique(nbrs_[n].begin(), nbrs_[n].end()), nbrs_[n].end());
  }
}

std::size_t SpvpInstance::slot(NodeId n, NodeId peer) const {
  const auto& v = nbrs_[n];
  auto it = std::lower_bound(v.begin(), v.end(), peer);
  if (it == v.end() || *it != peer) throw std::logic_error("not a neighbor");
  return static_cast<std::size_t>(it - v.begin());
}

namespace {

const RoutingContext& live(const SpvpInstance& inst, const SpvpState& s) {
  return s.failures_applied ? inst.after() : inst.before();
}

void advertise(const SpvpInstance& inst, SpvpState& s, NodeId n) {
  const auto& ctx = live(inst, s);
  for (const auto& p : ctx.peers(n)) {
    auto adv = ctx.apply_export(n, p.peer, s.best[n]);
    s.buffers[p.peer][inst.slot(p.peer, n)].push_back(adv ? *adv : RouteEntry::bottom(ctx.protocol()));
  }
}

/// Recomputes the best route of `n` from its rib-in; one successor per
/// tie-broken choice, each with the resulting advertisements queued.
std::vector<SpvpState> reselect(const SpvpInstance& inst, SpvpState s, NodeId n) {
  const auto& ctx = live(inst, s);
  if (ctx.is_origin(n)) return {std::move(s)};
  std::vector<Offer> top;
  for (const auto& p : ctx.peers(n)) {
    const auto& e = s.rib_in[n][inst.slot(n, p.peer)];
    if (e.is_bottom()) continue;
    if (top.empty()) {
      top.push_back({p.peer, e});
      continue;
    }
    auto r = ctx.rank_compare(n, e, top.front().entry);
    if (r == RankOrder::Better) top.clear();
    if (r != RankOrder::Worse) top.push_back({p.peer, e});
  }
  const auto& cur = s.best[n];
  std::vector<RouteEntry> choices;
  if (top.empty()) {
    choices.push_back(RouteEntry::bottom(ctx.protocol()));
  } else if (ctx.multipath()) {
    choices.push_back(Rpvp::merge_install(top, ctx.protocol()));
  } else {
    bool keep = std::any_of(top.begin(), top.end(), [&](const Offer& o) { return o.entry == cur; });
    if (keep) {
      choices.push_back(cur);
    } else {
      for (const auto& o : top) {
        if (std::find(choices.begin(), choices.end(), o.entry) == choices.end()) choices.push_back(o.entry);
      }
    }
  }
  std::vector<SpvpState> out;
  for (auto& c : choices) {
    SpvpState next = s;
    if (!(c == next.best[n])) {
      next.best[n] = std::move(c);
      advertise(inst, next, n);
    }
    out.push_back(std::move(next));
  }
  return out;
}

struct Encoder {
  std::unordered_map<RouteEntry, std::uint64_t> ids;

  std::uint64_t id(const RouteEntry& e) {
    auto it = ids.find(e);
    if (it != ids.end()) return it->second;
    return ids.emplace(e, ids.size()).first->second;
  }
  Hash128 key(const SpvpState& s) {
    Hasher128 h(s.failures_applied ? 1 : 2);
    for (const auto& b : s.best) h.add(id(b));
    for (const auto& per : s.rib_in) {
      for (const auto& e : per) h.add(id(e));
    }
    for (const auto& per : s.buffers) {
      for (const auto& q : per) {
        h.add(0xb0ffULL + q.size());
        for (const auto& e : q) h.add(id(e));
      }
    }
    return h.finish();
  }
};

}  // namespace

SpvpState spvp_initial(const SpvpInstance& inst) {
  const auto& ctx0 = inst.before();
  SpvpState s;
  s.failures_applied = !inst.mid_run();
  const std::size_t n = inst.node_count();
  s.best.assign(n, RouteEntry::bottom(ctx0.protocol()));
  s.rib_in.resize(n);
  s.buffers.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    s.rib_in[u].assign(inst.neighbors(u).size(), RouteEntry::bottom(ctx0.protocol()));
    s.buffers[u].resize(inst.neighbors(u).size());
  }
  const auto& ctx = live(inst, s);
  for (auto o : ctx.origins()) s.best[o] = RouteEntry::origin(ctx.protocol());
  for (auto o : ctx.origins()) {
    for (const auto& p : ctx.peers(o)) {
      auto adv = ctx.apply_export(o, p.peer, s.best[o]);
      if (adv) s.buffers[p.peer][inst.slot(p.peer, o)].push_back(*adv);
    }
  }
  return s;
}

std::vector<SpvpMove> spvp_moves(const SpvpInstance& inst, const SpvpState& s) {
  std::vector<SpvpMove> out;
  for (NodeId n = 0; n < inst.node_count(); ++n) {
    for (std::size_t i = 0; i < inst.neighbors(n).size(); ++i) {
      if (!s.buffers[n][i].empty()) out.push_back({n, inst.neighbors(n)[i], false});
    }
  }
  if (!s.failures_applied) out.push_back({kNoNode, kNoNode, true});
  return out;
}

std::vector<SpvpState> spvp_step(const SpvpInstance& inst, const SpvpState& s, const SpvpMove& m) {
  if (m.inject_failures) {
    if (s.failures_applied) throw std::logic_error("failures already applied");
    SpvpState next = s;
    next.failures_applied = true;
    const auto& after = inst.after();
    std::vector<NodeId> touched;
    for (NodeId u = 0; u < inst.node_count(); ++u) {
      for (std::size_t i = 0; i < inst.neighbors(u).size(); ++i) {
        NodeId v = inst.neighbors(u)[i];
        if (after.peer_info(u, v)) continue;
        // session gone: drop in-flight messages and withdraw what was heard
        next.buffers[u][i].clear();
        if (!next.rib_in[u][i].is_bottom()) {
          next.rib_in[u][i] = RouteEntry::bottom(after.protocol());
        }
        touched.push_back(u);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::vector<SpvpState> frontier{std::move(next)};
    for (auto u : touched) {
      std::vector<SpvpState> expanded;
      for (auto& st : frontier) {
        auto succ = reselect(inst, std::move(st), u);
        for (auto& x : succ) expanded.push_back(std::move(x));
      }
      frontier = std::move(expanded);
    }
    return frontier;
  }
  const auto& ctx = live(inst, s);
  auto i = inst.slot(m.receiver, m.sender);
  if (s.buffers[m.receiver][i].empty()) throw std::logic_error("empty buffer");
  SpvpState next = s;
  RouteEntry msg = std::move(next.buffers[m.receiver][i].front());
  next.buffers[m.receiver][i].erase(next.buffers[m.receiver][i].begin());
  auto imported = ctx.apply_import(m.receiver, m.sender, msg);
  next.rib_in[m.receiver][i] = imported ? std::move(*imported) : RouteEntry::bottom(ctx.protocol());
  return reselect(inst, std::move(next), m.receiver);
}

OracleResult enumerate_converged(const SpvpInstance& inst, const OracleOptions& opts) {
  OracleResult res;
  const std::uint64_t n = inst.node_count();
  res.step_bound = opts.step_bound ? opts.step_bound : 10 * n * n;

  Encoder enc;
  std::unordered_map<Hash128, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<bool> good;  // converged, or truncated and unknown
  std::vector<bool> converged_state;
  std::queue<std::pair<SpvpState, std::uint64_t>> frontier;

  auto add = [&](SpvpState st, std::uint64_t depth) -> std::uint32_t {
    auto key = enc.key(st);
    auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(succ.size()));
    if (inserted) {
      succ.emplace_back();
      good.push_back(false);
      converged_state.push_back(false);
      frontier.emplace(std::move(st), depth);
    }
    return it->second;
  };
  add(spvp_initial(inst), 0);

  std::uint32_t next_id = 0;
  while (!frontier.empty()) {
    auto [st, depth] = std::move(frontier.front());
    frontier.pop();
    std::uint32_t id = next_id++;
    auto moves = spvp_moves(inst, st);
    if (moves.empty()) {
      converged_state[id] = true;
      good[id] = true;
      res.converged.insert(st.best);
      continue;
    }
    if (depth >= res.step_bound || succ.size() >= opts.max_states) {
      res.divergence_suspected = true;
      good[id] = true;  // unexplored, do not also blame it as a livelock
      continue;
    }
    for (const auto& m : moves) {
      for (auto& nx : spvp_step(inst, st, m)) {
        auto to = add(std::move(nx), depth + 1);
        succ[id].push_back(to);
      }
    }
  }
  res.states = succ.size();

  // states that cannot reach quiescence witness a non-converging execution
  std::vector<std::vector<std::uint32_t>> pred(succ.size());
  for (std::uint32_t u = 0; u < succ.size(); ++u) {
    for (auto v : succ[u]) pred[v].push_back(u);
  }
  std::vector<std::uint32_t> work;
  for (std::uint32_t u = 0; u < good.size(); ++u) {
    if (good[u]) work.push_back(u);
  }
  while (!work.empty()) {
    auto v = work.back();
    work.pop_back();
    for (auto u : pred[v]) {
      if (!good[u]) {
        good[u] = true;
        work.push_back(u);
      }
    }
  }
  if (std::find(good.begin(), good.end(), false) != good.end()) res.divergence_suspected = true;
  return res;
}

TraceCheck simulate_random(const SpvpInstance& inst, std::mt19937_64& rng, std::uint64_t step_bound) {
  const std::uint64_t n = inst.node_count();
  if (!step_bound) step_bound = 10 * n * n;
  TraceCheck out;
  auto s = spvp_initial(inst);
  std::vector<std::uint64_t> last_change(n, 0);
  for (std::uint64_t t = 1;; ++t) {
    auto moves = spvp_moves(inst, s);
    if (moves.empty()) break;
    if (t > step_bound) return out;
    auto m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    auto succ = spvp_step(inst, s, m);
    auto next = std::move(succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)]);
    for (NodeId u = 0; u < n; ++u) {
      if (!(next.best[u] == s.best[u])) last_change[u] = t;
    }
    s = std::move(next);
  }
  for (NodeId u = 0; u < n; ++u) {
    for (const auto* p : s.best[u].paths()) {
      if (!p->has_hops()) continue;
      for (auto h : p->hops()) {
        if (last_change[h] > last_change[u]) {
          out.order_respected = false;
          out.detail = "node " + std::to_string(h) + " changed after " + std::to_string(u);
        }
      }
    }
  }
  out.converged = s.best;
  return out;
}

std::string describe(const ConvergedMap& m, const Topology* topo) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += (topo ? topo->name(static_cast<NodeId>(i)) : std::to_string(i)) + ": " + m[i].to_string(topo);
  }
  return out + "}";
}

}  // namespace netconv
