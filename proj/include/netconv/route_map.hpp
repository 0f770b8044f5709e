#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netconv/address.hpp"
#include "netconv/route.hpp"

namespace netconv {

/// Prefix condition of a clause. Without bounds the match is exact; `ge`
/// alone implies le = 32, `le` alone implies ge = prefix length.
struct PrefixMatch {
  Prefix prefix;
  std::optional<int> ge;
  std::optional<int> le;

  bool matches(const Prefix& p) const;
};

struct RouteMapClause {
  std::optional<PrefixMatch> match_prefix;
  std::vector<Community> match_communities;  // all must be present
  bool permit = true;
  std::optional<int> set_local_pref;
  std::vector<Community> add_communities;
  std::vector<Community> delete_communities;

  bool matches(const Prefix& p, const RouteEntry& e) const;
  /// Whether some route for `p` could satisfy the clause.
  bool may_match(const Prefix& p) const { return !match_prefix || match_prefix->matches(p); }
};

/// First matching clause wins; no match denies.
struct RouteMap {
  std::string name;
  std::vector<RouteMapClause> clauses;

  /// The transformed entry, or nullopt when denied.
  std::optional<RouteEntry> apply(const Prefix& p, const RouteEntry& e) const;
};

}  // namespace netconv
