#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace netconv {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline void hash_combine(std::size_t& seed, std::uint64_t v) {
  seed = static_cast<std::size_t>(mix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2))));
}

struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  auto operator<=>(const Hash128&) const = default;
  std::string hex() const;
};

/// Two independent 64-bit lanes over a word stream.
class Hasher128 {
 public:
  explicit Hasher128(std::uint64_t seed = 0) : a_(mix64(seed ^ 0x243f6a8885a308d3ULL)), b_(mix64(seed + 0x13198a2e03707344ULL)) {}

  Hasher128& add(std::uint64_t v) {
    a_ = mix64(a_ ^ (v * 0x9e3779b97f4a7c15ULL)) + 0xa4093822299f31d0ULL;
    b_ = mix64((b_ + v) * 0xc2b2ae3d27d4eb4fULL ^ (b_ >> 29));
    ++count_;
    return *this;
  }
  Hasher128& add(std::string_view s);

  Hash128 finish() const { return Hash128{mix64(a_ ^ count_), mix64(b_ + (count_ << 1))}; }

 private:
  std::uint64_t a_;
  std::uint64_t b_;
  std::uint64_t count_ = 0;
};

}  // namespace netconv

template <>
struct std::hash<netconv::Hash128> {
  std::size_t operator()(const netconv::Hash128& h) const noexcept { return static_cast<std::size_t>(h.lo ^ (h.hi * 31)); }
};
