#include "netconv/rpvp.hpp"

#include <algorithm>
#include <stdexcept>

namespace netconv {

Rpvp::Rpvp(const RoutingContext& ctx, RouteEntryTable& table) : ctx_(&ctx), table_(&table) {
  if (ctx.node_count() >= (1u << 16)) throw std::invalid_argument("too many nodes for one search");
  if (table.protocol() != ctx.protocol()) throw std::invalid_argument("entry table protocol mismatch");
}

ProtocolState Rpvp::initial() {
  ProtocolState s;
  s.best.assign(ctx_->node_count(), kBottomId);
  auto origin = table_->intern(RouteEntry::origin(ctx_->protocol()));
  for (auto o : ctx_->origins()) s.best[o] = origin;
  return s;
}

bool Rpvp::is_invalid(const ProtocolState& s, NodeId n) const {
  const auto& e = best(s, n);
  if (!e.path.has_hops()) return false;
  for (const auto* p : e.paths()) {
    if (!ctx_->peer_info(n, p->head())) return true;
    if (best(s, p->head()).path != p->rest()) return true;
  }
  return false;
}

const std::optional<RouteEntry>& Rpvp::offer(const ProtocolState& s, NodeId n, NodeId peer) {
  std::uint64_t key = (std::uint64_t{s.best[peer]} << 32) | (std::uint64_t{n} << 16) | peer;
  auto it = offers_.find(key);
  if (it != offers_.end()) return it->second;
  auto [pos, _] = offers_.emplace(key, ctx_->offer(n, peer, best(s, peer)));
  return pos->second;
}

std::optional<RouteEntry> Rpvp::can_update(const ProtocolState& s, NodeId n, NodeId peer) {
  const auto& o = offer(s, n, peer);
  if (!o) return std::nullopt;
  const auto& cur = best(s, n);
  auto r = ctx_->rank_compare(n, *o, cur);
  if (r == RankOrder::Better) return o;
  if (ctx_->multipath() && r == RankOrder::EqualRank && !cur.holds_path(o->path)) return o;
  return std::nullopt;
}

std::optional<EnabledNode> Rpvp::enabled(const ProtocolState& s, NodeId n) {
  if (ctx_->is_origin(n)) return std::nullopt;
  EnabledNode en{n, is_invalid(s, n), false};
  if (en.invalid) {
    for (const auto& p : ctx_->peers(n)) {
      if (offer(s, n, p.peer)) {
        en.better_update = true;
        break;
      }
    }
    return en;
  }
  for (const auto& p : ctx_->peers(n)) {
    if (can_update(s, n, p.peer)) {
      en.better_update = true;
      return en;
    }
  }
  return std::nullopt;
}

EnabledSet Rpvp::enabled_nodes(const ProtocolState& s) {
  EnabledSet out;
  for (NodeId n = 0; n < ctx_->node_count(); ++n) {
    if (auto e = enabled(s, n)) out.push_back(*e);
  }
  return out;
}

std::vector<Offer> Rpvp::best_update_peers(const ProtocolState& s, NodeId n) {
  bool invalid = is_invalid(s, n);
  const RouteEntry bottom = RouteEntry::bottom(ctx_->protocol());
  const RouteEntry& cur = invalid ? bottom : best(s, n);
  std::vector<Offer> u;
  for (const auto& p : ctx_->peers(n)) {
    const auto& o = offer(s, n, p.peer);
    if (!o) continue;
    if (!ctx_->multipath() && !invalid && ctx_->rank_compare(n, *o, cur) != RankOrder::Better) continue;
    if (u.empty()) {
      u.push_back({p.peer, *o});
      continue;
    }
    auto r = ctx_->rank_compare(n, *o, u.front().entry);
    if (r == RankOrder::Better) u.clear();
    if (r != RankOrder::Worse) u.push_back({p.peer, *o});
  }
  if (ctx_->multipath() && !u.empty() && !invalid) {
    // installing the offer set must change something
    auto merged = merge_install(u, ctx_->protocol());
    if (merged == cur) u.clear();
  }
  return u;
}

std::vector<Step> Rpvp::steps(const ProtocolState& s, NodeId n) {
  auto u = best_update_peers(s, n);
  std::vector<Step> out;
  if (u.empty()) {
    if (is_invalid(s, n)) out.push_back(Step{n, {}});
    return out;
  }
  if (ctx_->multipath()) {
    out.push_back(Step{n, std::move(u)});
    return out;
  }
  out.reserve(u.size());
  for (auto& o : u) out.push_back(Step{n, {std::move(o)}});
  return out;
}

RouteEntry Rpvp::merge_install(const std::vector<Offer>& install, Protocol p) {
  if (install.empty()) return RouteEntry::bottom(p);
  std::vector<const RouteEntry*> sorted;
  for (const auto& o : install) sorted.push_back(&o.entry);
  std::sort(sorted.begin(), sorted.end(), [](const RouteEntry* a, const RouteEntry* b) { return a->path < b->path; });
  RouteEntry e = *sorted.front();
  e.alternates.clear();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->path != e.path && (e.alternates.empty() || e.alternates.back() != sorted[i]->path)) {
      e.alternates.push_back(sorted[i]->path);
    }
  }
  return e;
}

ProtocolState Rpvp::apply_step(const ProtocolState& s, const Step& step) {
  if (step.node >= s.best.size() || ctx_->is_origin(step.node)) throw std::logic_error("illegal step node");
  ProtocolState next = s;
  next.best[step.node] = table_->intern(merge_install(step.install, ctx_->protocol()));
  return next;
}

bool Rpvp::is_converged(const ProtocolState& s) {
  for (NodeId n = 0; n < ctx_->node_count(); ++n) {
    if (enabled(s, n)) return false;
  }
  return true;
}

}  // namespace netconv
