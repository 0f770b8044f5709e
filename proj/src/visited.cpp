#include "netconv/visited.hpp"

#include <stdexcept>

namespace netconv {

VisitedSet VisitedSet::exact() { return VisitedSet(); }

VisitedSet VisitedSet::bitstate(std::uint64_t bits, int hashes) {
  if (bits == 0 || hashes < 1) throw std::invalid_argument("bitstate needs bits and at least one hash");
  VisitedSet v;
  v.bitstate_ = true;
  v.hashes_ = hashes;
  v.bits_.assign((bits + 63) / 64, 0);
  return v;
}

bool VisitedSet::insert(const Hash128& key) {
  if (!bitstate_) {
    bool fresh = keys_.insert(key).second;
    inserted_ += fresh;
    return fresh;
  }
  const std::uint64_t m = bits_.size() * 64;
  const std::uint64_t h2 = key.lo | 1;  // odd step visits distinct slots
  bool fresh = false;
  for (int i = 0; i < hashes_; ++i) {
    std::uint64_t bit = (key.hi + static_cast<std::uint64_t>(i) * h2) % m;
    auto& word = bits_[bit >> 6];
    std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    if (!(word & mask)) {
      fresh = true;
      word |= mask;
    }
  }
  inserted_ += fresh;
  return fresh;
}

bool VisitedSet::contains(const Hash128& key) const {
  if (!bitstate_) return keys_.contains(key);
  const std::uint64_t m = bits_.size() * 64;
  const std::uint64_t h2 = key.lo | 1;
  for (int i = 0; i < hashes_; ++i) {
    std::uint64_t bit = (key.hi + static_cast<std::uint64_t>(i) * h2) % m;
    if (!(bits_[bit >> 6] & (std::uint64_t{1} << (bit & 63)))) return false;
  }
  return true;
}

std::uint64_t VisitedSet::memory_bytes() const {
  if (bitstate_) return bits_.size() * sizeof(std::uint64_t);
  // one key plus a node pointer per element, and the bucket array
  return keys_.size() * (sizeof(Hash128) + 2 * sizeof(void*)) + keys_.bucket_count() * sizeof(void*);
}

}  // namespace netconv
