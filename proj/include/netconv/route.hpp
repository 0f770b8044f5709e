#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "netconv/topology.hpp"

namespace netconv {

enum class Protocol : std::uint8_t { Ospf, Bgp, Static };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view s);

/// Community value, "high:low" packed as (high << 16) | low.
using Community = std::uint32_t;
Community parse_community(std::string_view text);
std::string community_to_string(Community c);

/// A node sequence from the owning node's next hop to an origin, or one of
/// the two distinguished values Bottom (no path) and Epsilon (the origin's
/// own empty path).
class Path {
 public:
  enum class Kind : std::uint8_t { Bottom, Epsilon, Hops };

  Path() = default;
  static Path bottom() { return Path(); }
  static Path epsilon() { return Path(Kind::Epsilon, {}); }
  /// Throws std::invalid_argument for an empty or looping hop list.
  static Path through(std::vector<NodeId> hops);

  Kind kind() const { return kind_; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  bool is_epsilon() const { return kind_ == Kind::Epsilon; }
  bool has_hops() const { return kind_ == Kind::Hops; }

  const std::vector<NodeId>& hops() const { return hops_; }
  std::size_t length() const { return hops_.size(); }
  NodeId head() const { return hops_.front(); }
  NodeId origin() const { return hops_.back(); }
  /// Suffix after head; the rest of a one-hop path is Epsilon.
  Path rest() const;
  bool contains(NodeId n) const;
  /// `n` followed by this path; Epsilon becomes [n].
  Path prepend(NodeId n) const;

  bool operator==(const Path&) const = default;
  auto operator<=>(const Path& o) const {
    if (kind_ != o.kind_) return kind_ <=> o.kind_;
    return hops_ <=> o.hops_;
  }

  std::size_t hash() const;
  std::string to_string(const Topology* topo = nullptr) const;

 private:
  Path(Kind k, std::vector<NodeId> hops) : kind_(k), hops_(std::move(hops)) {}

  Kind kind_ = Kind::Bottom;
  std::vector<NodeId> hops_;
};

/// A candidate route held by a node for one prefix.
struct RouteEntry {
  Path path;
  /// Additional equal-cost paths (OSPF multipath only), sorted, never
  /// containing `path`.
  std::vector<Path> alternates;
  Protocol protocol = Protocol::Ospf;
  int local_pref = 100;
  int igp_cost = 0;
  int ospf_cost = 0;
  std::vector<Community> communities;  // sorted, unique

  static RouteEntry bottom(Protocol p) {
    RouteEntry e;
    e.protocol = p;
    return e;
  }
  static RouteEntry origin(Protocol p) {
    RouteEntry e;
    e.path = Path::epsilon();
    e.protocol = p;
    return e;
  }

  bool is_bottom() const { return path.is_bottom(); }
  bool has_community(Community c) const;
  void add_community(Community c);
  void remove_community(Community c);

  /// `path` followed by the alternates.
  std::vector<const Path*> paths() const;
  bool holds_path(const Path& p) const;
  /// Next hops over all paths; empty for Bottom and Epsilon.
  std::vector<NodeId> next_hops() const;

  bool operator==(const RouteEntry&) const = default;
  std::size_t hash() const;
  std::string to_string(const Topology* topo = nullptr) const;
};

}  // namespace netconv

template <>
struct std::hash<netconv::Path> {
  std::size_t operator()(const netconv::Path& p) const noexcept { return p.hash(); }
};

template <>
struct std::hash<netconv::RouteEntry> {
  std::size_t operator()(const netconv::RouteEntry& e) const noexcept { return e.hash(); }
};
