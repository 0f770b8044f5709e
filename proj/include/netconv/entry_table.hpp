#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "netconv/hash.hpp"
#include "netconv/route.hpp"
#include "netconv/topology.hpp"

namespace netconv {

using EntryId = std::uint32_t;

inline constexpr EntryId kBottomId = 0;

/// Interns route entries so a state is a vector of small ids. Id 0 is
/// always Bottom.
class RouteEntryTable {
 public:
  explicit RouteEntryTable(Protocol protocol);
  RouteEntryTable(const RouteEntryTable&) = delete;
  RouteEntryTable& operator=(const RouteEntryTable&) = delete;

  EntryId intern(const RouteEntry& e);
  const RouteEntry& get(EntryId id) const { return *by_id_[id]; }
  /// Distinct entries held, Bottom included.
  std::size_t size() const { return by_id_.size(); }
  Protocol protocol() const { return protocol_; }

 private:
  Protocol protocol_;
  std::unordered_map<RouteEntry, EntryId> ids_;
  std::vector<const RouteEntry*> by_id_;
};

/// The whole search state of one prefix run: the best entry of every node.
struct ProtocolState {
  std::vector<EntryId> best;

  bool operator==(const ProtocolState&) const = default;
};

/// Strong hash of the id vector and the failed links.
Hash128 canonical_state_key(const ProtocolState& s, const std::vector<LinkId>& failed);

}  // namespace netconv
