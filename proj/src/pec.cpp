#include "netconv/pec.hpp"

#include <algorithm>
#include <stdexcept>

namespace netconv {

namespace {

template <typename T>
void union_sorted(std::vector<T>& into, const std::vector<T>& from) {
  std::vector<T> out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

void add_sorted(std::vector<NodeId>& v, NodeId n) {
  auto pos = std::lower_bound(v.begin(), v.end(), n);
  if (pos == v.end() || *pos != n) v.insert(pos, n);
}

bool static_less(const StaticRef& a, const StaticRef& b) {
  auto key = [](const StaticRef& s) {
    return std::make_tuple(s.node, s.route.next_hop_node.value_or(kNoNode),
                           s.route.next_hop ? s.route.next_hop->value : 0u, s.route.next_hop.has_value());
  };
  return key(a) < key(b);
}

}  // namespace

void ConfigObject::absorb(const ConfigObject& other) {
  union_sorted(ospf_origins, other.ospf_origins);
  union_sorted(bgp_origins, other.bgp_origins);
  union_sorted(loopback_owners, other.loopback_owners);
  for (const auto& s : other.statics) {
    if (std::find(statics.begin(), statics.end(), s) == statics.end()) statics.push_back(s);
  }
  std::stable_sort(statics.begin(), statics.end(), static_less);
  union_sorted(route_maps, other.route_maps);
}

PrefixTrie::PrefixTrie() {
  nodes_.emplace_back();
  nodes_[0].object.emplace();
}

ConfigObject& PrefixTrie::insert(const Prefix& p) {
  std::size_t cur = 0;
  for (int depth = 0; depth < p.length(); ++depth) {
    int b = p.bit(depth);
    if (nodes_[cur].child[b] < 0) {
      nodes_[cur].child[b] = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    cur = static_cast<std::size_t>(nodes_[cur].child[b]);
  }
  if (!nodes_[cur].object) nodes_[cur].object.emplace();
  return *nodes_[cur].object;
}

const ConfigObject* PrefixTrie::find(const Prefix& p) const {
  std::size_t cur = 0;
  for (int depth = 0; depth < p.length(); ++depth) {
    auto c = nodes_[cur].child[p.bit(depth)];
    if (c < 0) return nullptr;
    cur = static_cast<std::size_t>(c);
  }
  return nodes_[cur].object ? &*nodes_[cur].object : nullptr;
}

std::size_t PrefixTrie::object_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.object.has_value(); }));
}

PrefixTrie PrefixTrie::build(const Network& net) {
  PrefixTrie trie;
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& cfg = net.config(n);
    if (cfg.loopback) add_sorted(trie.insert(Prefix::host(*cfg.loopback)).loopback_owners, n);
    for (const auto& p : net.ospf_originated(n)) add_sorted(trie.insert(p).ospf_origins, n);
    if (cfg.bgp) {
      for (const auto& p : cfg.bgp->originated) add_sorted(trie.insert(p).bgp_origins, n);
    }
    for (const auto& s : cfg.statics) {
      auto& obj = trie.insert(s.prefix);
      StaticRef ref{n, s};
      if (std::find(obj.statics.begin(), obj.statics.end(), ref) == obj.statics.end()) {
        obj.statics.push_back(ref);
        std::stable_sort(obj.statics.begin(), obj.statics.end(), static_less);
      }
    }
  }
  for (const auto& [name, map] : net.route_maps) {
    for (const auto& clause : map.clauses) {
      if (!clause.match_prefix) continue;
      auto& maps = trie.insert(clause.match_prefix->prefix).route_maps;
      if (std::find(maps.begin(), maps.end(), name) == maps.end()) {
        maps.push_back(name);
        std::sort(maps.begin(), maps.end());
      }
    }
  }
  return trie;
}

std::vector<const Contribution*> PacketEquivalenceClass::routed() const {
  std::vector<const Contribution*> out;
  for (const auto& c : prefixes) {
    if (c.config.routed()) out.push_back(&c);
  }
  return out;
}

void merge_config(std::vector<Contribution>& partition, const ConfigObject& obj, const Prefix& prefix) {
  for (auto& c : partition) {
    if (c.prefix == prefix) {
      c.config.absorb(obj);
      return;
    }
  }
  auto pos = std::find_if(partition.begin(), partition.end(), [&](const Contribution& c) {
    return c.prefix.length() < prefix.length() ||
           (c.prefix.length() == prefix.length() && prefix.base() < c.prefix.base());
  });
  partition.insert(pos, Contribution{prefix, obj});
}

namespace {

void traverse(const PrefixTrie& trie, std::size_t i, int depth, std::uint32_t base, std::vector<Contribution> inherited,
              std::vector<Pec>& out) {
  const auto& nd = trie.node(i);
  Prefix here(Address{base}, depth);
  if (nd.object && !nd.object->empty()) merge_config(inherited, *nd.object, here);
  if (nd.child[0] < 0 && nd.child[1] < 0) {
    out.push_back(Pec{0, here.range(), std::move(inherited)});
    return;
  }
  for (int b = 0; b < 2; ++b) {
    std::uint32_t next = b ? base | (std::uint32_t{1} << (31 - depth)) : base;
    if (nd.child[b] >= 0) {
      traverse(trie, static_cast<std::size_t>(nd.child[b]), depth + 1, next, inherited, out);
    } else {
      out.push_back(Pec{0, Prefix(Address{next}, depth + 1).range(), inherited});
    }
  }
}

}  // namespace

std::vector<Pec> compute_pecs(const PrefixTrie& trie) {
  std::vector<Pec> raw;
  traverse(trie, 0, 0, 0, {}, raw);
  std::vector<Pec> out;
  for (auto& p : raw) {
    if (!out.empty() && out.back().prefixes == p.prefixes) {
      out.back().range.hi = p.range.hi;
      continue;
    }
    out.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<PecId>(i);
  return out;
}

std::size_t find_pec(const std::vector<Pec>& pecs, Address a) {
  auto it = std::upper_bound(pecs.begin(), pecs.end(), a, [](Address x, const Pec& p) { return x < p.range.lo; });
  if (it == pecs.begin()) throw std::logic_error("address outside every class");
  return static_cast<std::size_t>(std::prev(it) - pecs.begin());
}

}  // namespace netconv
