#pragma once

#include "netconv/spec_io.hpp"

namespace netconv {

enum class StaticMode { None, Correct, Loop };

/// k-ary fat tree (k even): (k/2)^2 cores, k pods of k/2 aggregation and
/// k/2 edge switches, all running OSPF. Each edge switch originates
/// 10.<pod>.<index>.0/24. With static routes, every switch also gets a
/// static route toward the first edge switch's prefix along a shortest
/// path; `Loop` bends one of them into a two-node cycle.
NetworkSpec make_fat_tree(int k, StaticMode statics = StaticMode::None);

/// OSPF ring r0..r(n-1); r0 originates 10.0.0.0/24.
NetworkSpec make_ring(int n);

/// OSPF line l0..l(n-1); l0 originates 10.0.0.0/24.
NetworkSpec make_line(int n);

}  // namespace netconv
