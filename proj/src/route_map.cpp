#include "netconv/route_map.hpp"

#include <algorithm>

namespace netconv {

bool PrefixMatch::matches(const Prefix& p) const {
  if (!prefix.covers(p)) return false;
  int lo = prefix.length();
  int hi = prefix.length();
  if (ge) {
    lo = *ge;
    hi = 32;
  }
  if (le) {
    hi = *le;
    if (!ge) lo = prefix.length();
  }
  return p.length() >= lo && p.length() <= hi;
}

bool RouteMapClause::matches(const Prefix& p, const RouteEntry& e) const {
  if (match_prefix && !match_prefix->matches(p)) return false;
  return std::all_of(match_communities.begin(), match_communities.end(),
                     [&](Community c) { return e.has_community(c); });
}

std::optional<RouteEntry> RouteMap::apply(const Prefix& p, const RouteEntry& e) const {
  for (const auto& clause : clauses) {
    if (!clause.matches(p, e)) continue;
    if (!clause.permit) return std::nullopt;
    RouteEntry out = e;
    if (clause.set_local_pref) out.local_pref = *clause.set_local_pref;
    for (auto c : clause.delete_communities) out.remove_community(c);
    for (auto c : clause.add_communities) out.add_community(c);
    return out;
  }
  return std::nullopt;
}

}  // namespace netconv
