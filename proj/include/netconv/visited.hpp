#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "netconv/hash.hpp"

namespace netconv {

/// States already expanded. Exact mode keeps every 128-bit key; bitstate
/// mode is a Bloom filter that may wrongly claim a state was seen.
class VisitedSet {
 public:
  static VisitedSet exact();
  /// `bits` is rounded up to a multiple of 64.
  static VisitedSet bitstate(std::uint64_t bits, int hashes = 3);

  /// True when the key was not present before.
  bool insert(const Hash128& key);
  bool contains(const Hash128& key) const;

  bool is_bitstate() const { return bitstate_; }
  std::uint64_t inserted() const { return inserted_; }
  /// Bytes held by the key store itself.
  std::uint64_t memory_bytes() const;
  std::uint64_t bit_count() const { return bits_.size() * 64; }

 private:
  VisitedSet() = default;

  bool bitstate_ = false;
  int hashes_ = 3;
  std::unordered_set<Hash128> keys_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t inserted_ = 0;
};

}  // namespace netconv
