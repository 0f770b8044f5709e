#include "netconv/entry_table.hpp"

#include <limits>
#include <stdexcept>

namespace netconv {

RouteEntryTable::RouteEntryTable(Protocol protocol) : protocol_(protocol) { intern(RouteEntry::bottom(protocol)); }

EntryId RouteEntryTable::intern(const RouteEntry& e) {
  if (e.is_bottom()) {
    if (!by_id_.empty()) return kBottomId;
  }
  auto it = ids_.find(e);
  if (it != ids_.end()) return it->second;
  if (by_id_.size() >= std::numeric_limits<EntryId>::max()) throw std::runtime_error("route entry table exhausted");
  auto id = static_cast<EntryId>(by_id_.size());
  auto [pos, inserted] = ids_.emplace(e, id);
  by_id_.push_back(&pos->first);
  return id;
}

Hash128 canonical_state_key(const ProtocolState& s, const std::vector<LinkId>& failed) {
  Hasher128 h(s.best.size());
  for (auto id : s.best) h.add(id);
  h.add(0xfa11edULL);
  for (auto l : failed) h.add(l);
  return h.finish();
}

}  // namespace netconv
