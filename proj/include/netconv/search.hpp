#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "netconv/rpvp.hpp"
#include "netconv/settle.hpp"

namespace netconv {

struct SearchOptions {
  bool deterministic_nodes = true;
  bool consistent_prune = true;
  bool independence = true;
  bool policy_prune = true;
  /// Zero keeps exact visited keys; otherwise the Bloom filter size.
  std::uint64_t bitstate_bits = 0;
  /// Stop after this many expanded states; zero means no limit.
  std::uint64_t max_states = 0;
};

struct SearchStats {
  std::uint64_t states_explored = 0;
  std::uint64_t states_deduped = 0;
  std::uint64_t branch_points = 0;
  std::uint64_t transitions = 0;
  std::uint64_t converged = 0;
  std::uint64_t abandoned = 0;
  std::uint64_t early_finishes = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t visited_bytes = 0;
  std::uint64_t entries = 0;
  bool truncated = false;

  void add(const SearchStats& o);
};

enum class StepKind : std::uint8_t { Select, Branch, TakeBottom };

std::string_view to_string(StepKind k);

/// One taken transition, as written to trails and choice logs.
struct StepRecord {
  StepKind kind = StepKind::Select;
  NodeId node = kNoNode;
  NodeId peer = kNoNode;  // first installed offer's peer
  RouteEntry entry;       // what the node holds afterwards
  std::uint32_t alternatives = 1;

  bool operator==(const StepRecord&) const = default;
};

enum class PruneKind : std::uint8_t { NoOp, FinishEarly, RestrictExecution };

struct PruneDecision {
  PruneKind kind = PruneKind::NoOp;
  std::vector<bool> allowed;  // RestrictExecution only
};

/// Given the data-plane closure of the policy sources in the current
/// state: finish when every node of it is settled, otherwise keep only the
/// nodes that can still influence an unsettled one.
PruneDecision policy_prune(const RoutingContext& ctx, const std::vector<bool>& settled,
                           const std::vector<NodeId>& closure);

enum class Consistency : std::uint8_t { Keep, Abandon };

/// Whether taking `step` would change a node's already selected path.
Consistency prune_inconsistent(Rpvp& rpvp, const ProtocolState& s, const Step& step);

struct Emission {
  const ProtocolState& state;
  const std::vector<StepRecord>& trail;
  bool early = false;  // cut short by policy pruning
};

/// Return false to stop the search.
using EmitFn = std::function<bool(const Emission&)>;
/// Supplies a prune decision for a state; empty function disables pruning.
using PruneFn = std::function<PruneDecision(const ProtocolState&, const std::vector<bool>& settled)>;
/// Observes every expanded state.
using StateHook = std::function<void(const ProtocolState&)>;

/// Depth-first search over reduced path-vector executions. Branch order is
/// ascending node id, then ascending peer id.
SearchStats dfs_explore(Rpvp& rpvp, const SearchOptions& opts, const EmitFn& emit, const PruneFn& prune = {},
                        const StateHook& hook = {});

/// Re-applies recorded steps from the initial state; throws when a step
/// is not available or lands on a different entry.
ProtocolState replay(Rpvp& rpvp, const std::vector<StepRecord>& steps);

}  // namespace netconv
