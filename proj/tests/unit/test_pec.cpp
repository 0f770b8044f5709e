#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "corpus.hpp"
#include "netconv/pec.hpp"

using namespace nctest;

namespace {

// Covering prefixes of `a`, longest first, computed by scanning every prefix.
std::vector<Prefix> covering(const std::vector<Prefix>& all, std::uint32_t a) {
  std::vector<Prefix> out;
  for (const auto& p : all) {
    if (p.contains(Address{a}) && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Prefix& x, const Prefix& y) { return x.length() > y.length(); });
  return out;
}

// Maximal intervals over which the covering set is constant.
std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_intervals(const std::vector<Prefix>& all) {
  std::set<std::uint64_t> cuts = {0};
  for (const auto& p : all) {
    cuts.insert(p.range().lo.value);
    cuts.insert(std::uint64_t{p.range().hi.value} + 1);
  }
  std::vector<std::uint64_t> pts(cuts.begin(), cuts.end());
  if (pts.back() != (std::uint64_t{1} << 32)) pts.push_back(std::uint64_t{1} << 32);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  std::vector<Prefix> prev;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto lo = static_cast<std::uint32_t>(pts[i]);
    auto hi = static_cast<std::uint32_t>(pts[i + 1] - 1);
    auto cov = covering(all, lo);
    if (!out.empty() && cov == prev) {
      out.back().second = hi;
    } else {
      out.emplace_back(lo, hi);
    }
    prev = cov;
  }
  return out;
}

}  // namespace

TEST_CASE("two overlapping prefixes give three classes") {
  auto net = split_space();
  auto pecs = compute_pecs(PrefixTrie::build(net));
  REQUIRE(pecs.size() == 3);
  CHECK(pecs[0].range.hi.to_string() == "127.255.255.255");
  CHECK(pecs[1].range.lo.to_string() == "128.0.0.0");
  CHECK(pecs[2].range.lo.to_string() == "192.0.0.0");
  CHECK(pecs[2].prefixes[0].prefix == Prefix::parse("192.0.0.0/2"));
  CHECK(pecs[2].prefixes[1].prefix == Prefix::parse("128.0.0.0/1"));
  CHECK(pecs[2].prefixes[0].config.ospf_origins == std::vector<NodeId>{1});
  CHECK(find_pec(pecs, Address::parse("200.1.1.1")) == 2);
  CHECK(find_pec(pecs, Address::parse("0.0.0.0")) == 0);
}

TEST_CASE("trie stores one object per configured prefix") {
  auto net = ibgp_over_ospf();
  auto trie = PrefixTrie::build(net);
  auto* lo = trie.find(Prefix::parse("192.168.0.2/32"));
  REQUIRE(lo);
  CHECK(lo->loopback_owners == std::vector<NodeId>{1});
  CHECK(lo->ospf_origins == std::vector<NodeId>{1});
  auto* bgp = trie.find(Prefix::parse("10.2.0.0/16"));
  REQUIRE(bgp);
  CHECK(bgp->bgp_origins == std::vector<NodeId>{2});
  CHECK(trie.find(Prefix::parse("10.3.0.0/16")) == nullptr);
  // four loopbacks, two BGP prefixes and the default object at the root
  CHECK(trie.object_count() == 7);
}

TEST_CASE("route-map-only prefixes split classes without routing them") {
  auto net = split_space();
  RouteMapClause c;
  c.match_prefix = PrefixMatch{Prefix::parse("10.0.0.0/8"), {}, {}};
  net.route_maps["m"] = RouteMap{"m", {c}};
  auto pecs = compute_pecs(PrefixTrie::build(net));
  auto i = find_pec(pecs, Address::parse("10.1.1.1"));
  CHECK(pecs[i].range.lo.to_string() == "10.0.0.0");
  CHECK_FALSE(pecs[i].is_routed());
  CHECK(pecs[i].prefixes[0].config.route_maps == std::vector<std::string>{"m"});
}

TEST_CASE("merge_config keeps longest-first order and unions duplicates") {
  std::vector<Contribution> part;
  ConfigObject a;
  a.ospf_origins = {1};
  ConfigObject b;
  b.ospf_origins = {2};
  merge_config(part, a, Prefix::parse("10.0.0.0/8"));
  merge_config(part, a, Prefix::parse("10.0.0.0/16"));
  merge_config(part, b, Prefix::parse("10.0.0.0/8"));
  REQUIRE(part.size() == 2);
  CHECK(part[0].prefix.length() == 16);
  CHECK(part[1].config.ospf_origins == std::vector<NodeId>{1, 2});
}

TEST_CASE("property: classes match a brute-force interval scan") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 150; ++round) {
    Network net;
    auto a = ospf_node(net, "a");
    auto b = ospf_node(net, "b");
    net.topology.add_link(a, b);
    std::vector<Prefix> all;
    int count = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int i = 0; i < count; ++i) {
      int len = std::uniform_int_distribution<int>(0, 32)(rng);
      // cluster prefixes so that they nest often
      std::uint32_t addr = static_cast<std::uint32_t>(rng()) & 0xff0f00f0u;
      std::uint32_t mask = len == 0 ? 0 : ~std::uint32_t{0} << (32 - len);
      Prefix p(Address{addr & mask}, len);
      all.push_back(p);
      net.config(i % 2 ? a : b).ospf->originated.push_back(p);
    }
    auto pecs = compute_pecs(PrefixTrie::build(net));
    auto want = brute_intervals(all);
    REQUIRE(pecs.size() == want.size());
    for (std::size_t i = 0; i < pecs.size(); ++i) {
      CHECK(pecs[i].id == i);
      CHECK(pecs[i].range.lo.value == want[i].first);
      CHECK(pecs[i].range.hi.value == want[i].second);
      std::vector<Prefix> got;
      for (const auto& c : pecs[i].prefixes) got.push_back(c.prefix);
      CHECK(got == covering(all, want[i].first));
    }
    CHECK(pecs.front().range.lo.value == 0);
    CHECK(pecs.back().range.hi.value == 0xffffffffu);
    for (int probe = 0; probe < 20; ++probe) {
      auto x = static_cast<std::uint32_t>(rng());
      auto i = find_pec(pecs, Address{x});
      CHECK(pecs[i].range.contains(Address{x}));
    }
  }
}
