#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace netconv {

/// IPv4 address as a host-order 32-bit value.
struct Address {
  std::uint32_t value = 0;

  auto operator<=>(const Address&) const = default;

  static Address parse(std::string_view text);
  std::string to_string() const;
};

/// Inclusive address interval.
struct PrefixRange {
  Address lo;
  Address hi;

  auto operator<=>(const PrefixRange&) const = default;

  bool contains(Address a) const { return lo <= a && a <= hi; }
  std::uint64_t size() const { return std::uint64_t{hi.value} - lo.value + 1; }
};

/// base/len with all host bits of base zero.
class Prefix {
 public:
  Prefix() = default;
  /// Throws std::invalid_argument when host bits are set or len > 32.
  Prefix(Address base, int len);

  static Prefix parse(std::string_view text);
  static Prefix host(Address a) { return Prefix(a, 32); }

  Address base() const { return base_; }
  int length() const { return len_; }
  std::uint32_t mask() const { return len_ == 0 ? 0u : ~std::uint32_t{0} << (32 - len_); }
  PrefixRange range() const;

  bool contains(Address a) const { return (a.value & mask()) == base_.value; }
  /// True when every address of `other` lies in this prefix.
  bool covers(const Prefix& other) const {
    return other.len_ >= len_ && contains(other.base_);
  }
  bool overlaps(const PrefixRange& r) const;
  /// Bit `i` (0 = most significant) of the base address.
  int bit(int i) const { return static_cast<int>((base_.value >> (31 - i)) & 1u); }

  std::string to_string() const;

  auto operator<=>(const Prefix&) const = default;

 private:
  Address base_{};
  int len_ = 0;
};

}  // namespace netconv

template <>
struct std::hash<netconv::Prefix> {
  std::size_t operator()(const netconv::Prefix& p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{p.base().value} << 8) | std::uint64_t(p.length()));
  }
};
