#include "netconv/address.hpp"

#include <charconv>
#include <stdexcept>

namespace netconv {

namespace {

int parse_int(std::string_view s, int max, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0 || v > max) {
    throw std::invalid_argument("malformed address or prefix: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Address Address::parse(std::string_view text) {
  std::uint32_t value = 0;
  std::string_view rest = text;
  for (int i = 0; i < 4; ++i) {
    auto dot = rest.find('.');
    if ((i < 3) != (dot != std::string_view::npos)) {
      throw std::invalid_argument("malformed address: '" + std::string(text) + "'");
    }
    auto part = i < 3 ? rest.substr(0, dot) : rest;
    value = (value << 8) | static_cast<std::uint32_t>(parse_int(part, 255, text));
    if (i < 3) rest.remove_prefix(dot + 1);
  }
  return Address{value};
}

std::string Address::to_string() const {
  return std::to_string(value >> 24) + '.' + std::to_string((value >> 16) & 0xff) + '.' +
         std::to_string((value >> 8) & 0xff) + '.' + std::to_string(value & 0xff);
}

Prefix::Prefix(Address base, int len) : base_(base), len_(len) {
  if (len < 0 || len > 32) throw std::invalid_argument("prefix length out of range");
  if ((base.value & ~mask()) != 0) {
    throw std::invalid_argument("prefix " + base.to_string() + "/" + std::to_string(len) +
                                " has host bits set");
  }
}

Prefix Prefix::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Prefix(Address::parse(text), 32);
  return Prefix(Address::parse(text.substr(0, slash)), parse_int(text.substr(slash + 1), 32, text));
}

PrefixRange Prefix::range() const {
  return PrefixRange{base_, Address{base_.value | ~mask()}};
}

bool Prefix::overlaps(const PrefixRange& r) const {
  auto mine = range();
  return mine.lo <= r.hi && r.lo <= mine.hi;
}

std::string Prefix::to_string() const { return base_.to_string() + "/" + std::to_string(len_); }

}  // namespace netconv
