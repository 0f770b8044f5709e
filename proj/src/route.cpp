#include "netconv/route.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <unordered_set>

#include "netconv/hash.hpp"

namespace netconv {

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::Ospf: return "ospf";
    case Protocol::Bgp: return "bgp";
    case Protocol::Static: return "static";
  }
  return "?";
}

Protocol parse_protocol(std::string_view s) {
  if (s == "ospf") return Protocol::Ospf;
  if (s == "bgp") return Protocol::Bgp;
  if (s == "static") return Protocol::Static;
  throw std::invalid_argument("unknown protocol '" + std::string(s) + "'");
}

Community parse_community(std::string_view text) {
  auto number = [&](std::string_view s, std::uint64_t max) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v > max) {
      throw std::invalid_argument("malformed community '" + std::string(text) + "'");
    }
    return v;
  };
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return static_cast<Community>(number(text, 0xffffffffULL));
  return static_cast<Community>((number(text.substr(0, colon), 0xffff) << 16) |
                                number(text.substr(colon + 1), 0xffff));
}

std::string community_to_string(Community c) {
  return std::to_string(c >> 16) + ":" + std::to_string(c & 0xffff);
}

Path Path::through(std::vector<NodeId> hops) {
  if (hops.empty()) throw std::invalid_argument("a hop path needs at least one node");
  std::unordered_set<NodeId> seen;
  for (auto n : hops) {
    if (!seen.insert(n).second) throw std::invalid_argument("path repeats a node");
  }
  return Path(Kind::Hops, std::move(hops));
}

Path Path::rest() const {
  if (!has_hops()) throw std::logic_error("rest() of a path without hops");
  if (hops_.size() == 1) return epsilon();
  return Path(Kind::Hops, std::vector<NodeId>(hops_.begin() + 1, hops_.end()));
}

bool Path::contains(NodeId n) const { return std::find(hops_.begin(), hops_.end(), n) != hops_.end(); }

Path Path::prepend(NodeId n) const {
  if (is_bottom()) throw std::logic_error("cannot extend Bottom");
  std::vector<NodeId> hops;
  hops.reserve(hops_.size() + 1);
  hops.push_back(n);
  hops.insert(hops.end(), hops_.begin(), hops_.end());
  return Path(Kind::Hops, std::move(hops));
}

std::size_t Path::hash() const {
  std::size_t seed = static_cast<std::size_t>(kind_);
  for (auto n : hops_) hash_combine(seed, n);
  return seed;
}

std::string Path::to_string(const Topology* topo) const {
  if (is_bottom()) return "⊥";
  if (is_epsilon()) return "ε";
  std::string out = "[";
  for (std::size_t i = 0; i < hops_.size(); ++i) {
    if (i) out += ",";
    out += topo ? topo->name(hops_[i]) : std::to_string(hops_[i]);
  }
  return out + "]";
}

bool RouteEntry::has_community(Community c) const {
  return std::binary_search(communities.begin(), communities.end(), c);
}

void RouteEntry::add_community(Community c) {
  auto pos = std::lower_bound(communities.begin(), communities.end(), c);
  if (pos == communities.end() || *pos != c) communities.insert(pos, c);
}

void RouteEntry::remove_community(Community c) {
  auto pos = std::lower_bound(communities.begin(), communities.end(), c);
  if (pos != communities.end() && *pos == c) communities.erase(pos);
}

std::vector<const Path*> RouteEntry::paths() const {
  std::vector<const Path*> out;
  out.reserve(1 + alternates.size());
  out.push_back(&path);
  for (const auto& p : alternates) out.push_back(&p);
  return out;
}

bool RouteEntry::holds_path(const Path& p) const {
  return path == p || std::find(alternates.begin(), alternates.end(), p) != alternates.end();
}

std::vector<NodeId> RouteEntry::next_hops() const {
  std::vector<NodeId> out;
  if (!path.has_hops()) return out;
  out.push_back(path.head());
  for (const auto& p : alternates) out.push_back(p.head());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t RouteEntry::hash() const {
  std::size_t seed = path.hash();
  for (const auto& p : alternates) hash_combine(seed, p.hash());
  hash_combine(seed, static_cast<std::uint64_t>(protocol));
  hash_combine(seed, static_cast<std::uint64_t>(local_pref));
  hash_combine(seed, static_cast<std::uint64_t>(igp_cost));
  hash_combine(seed, static_cast<std::uint64_t>(ospf_cost));
  for (auto c : communities) hash_combine(seed, c);
  return seed;
}

std::string RouteEntry::to_string(const Topology* topo) const {
  std::string out = path.to_string(topo);
  for (const auto& p : alternates) out += "|" + p.to_string(topo);
  if (is_bottom()) return out;
  if (protocol == Protocol::Ospf) {
    out += " cost=" + std::to_string(ospf_cost);
  } else if (protocol == Protocol::Bgp) {
    out += " lp=" + std::to_string(local_pref);
    if (igp_cost) out += " igp=" + std::to_string(igp_cost);
    for (auto c : communities) out += " c=" + community_to_string(c);
  }
  return out;
}

}  // namespace netconv
