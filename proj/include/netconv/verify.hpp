#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netconv/depgraph.hpp"
#include "netconv/outcome_store.hpp"
#include "netconv/policy.hpp"
#include "netconv/search.hpp"
#include "netconv/serialize.hpp"
#include "netconv/spvp.hpp"

namespace netconv {

struct VerifyOptions {
  int max_failures = 0;
  SearchOptions search;
  /// Sample one failure per link equivalence class.
  bool dec = true;
  std::size_t parallel = 1;
  std::optional<std::filesystem::path> outcome_store;
  int fib_depth_limit = 4;
  /// Keep every group's converged outcomes and return them.
  bool collect_outcomes = false;
};

/// A policy failure and everything needed to reproduce it.
struct Violation {
  std::size_t group = 0;
  std::size_t scenario = 0;
  PecId pec = 0;
  PrefixRange range;
  std::vector<LinkId> failures;
  std::vector<DependencyPick> dependencies;
  std::vector<ChoiceEvent> trail;
  std::vector<PrefixRun> runs;
  ForwardingGraph graph;
  PolicyResult result;
  bool early = false;  // found on a policy-pruned partial state
};

struct PolicyVerdict {
  std::string policy;
  PolicyKind kind = PolicyKind::Reachability;
  std::optional<Violation> violation;
  std::uint64_t checks = 0;
  std::uint64_t equivalent_skipped = 0;

  bool pass() const { return !violation.has_value(); }
};

struct VerifyStats {
  SearchStats search;
  std::size_t pecs = 0;
  std::size_t groups = 0;
  std::size_t levels = 0;
  /// (group, failure scenario) pairs explored.
  std::size_t scenarios = 0;
  std::uint64_t data_planes = 0;
  std::size_t outcomes_stored = 0;
  double wall_seconds = 0;
};

struct VerifyResult {
  std::vector<PolicyVerdict> verdicts;
  VerifyStats stats;
  std::vector<std::string> diagnostics;
  std::vector<ConvergedOutcome> outcomes;  // collect_outcomes only

  bool all_pass() const;
};

/// Classes, their dependencies and the run order.
struct Plan {
  std::vector<Pec> pecs;
  DependencyGraph graph;
  Schedule schedule;
};

Plan make_plan(const Network& net);

/// The (prefix, protocol) runs needed by one class, longest prefix first.
std::vector<std::pair<Prefix, Protocol>> runs_of(const Pec& pec);

/// Failure scenarios explored for one schedule group.
std::vector<std::vector<LinkId>> group_scenarios(const Network& net, const Plan& plan, std::size_t group,
                                                 const std::vector<PolicySpec>& policies, const VerifyOptions& opts);

/// Throws std::invalid_argument on unusable option and policy combinations.
void check_options(const Plan& plan, const std::vector<PolicySpec>& policies, const VerifyOptions& opts,
                   std::size_t node_count);

VerifyResult verify(const Network& net, const std::vector<PolicySpec>& policies, const VerifyOptions& opts);

/// Every converged state of one prefix run reachable under `opts`.
struct RunExploration {
  ConvergedSet converged;
  SearchStats stats;
};
RunExploration explore_run(const RoutingContext& ctx, const SearchOptions& opts);

/// Replays the recorded steps of one run.
PrefixRun replay_run(const RoutingContext& ctx, const std::vector<StepRecord>& steps);

/// Steps of the trail that belong to one run, in order.
std::vector<StepRecord> steps_for(const std::vector<ChoiceEvent>& trail, const Prefix& prefix, Protocol protocol);

/// Pairwise loopback costs read from converged forwarding graphs.
IgpCosts igp_costs_from(const Network& net, const FibLookup& lookup);

Json trail_to_json(const Violation& v, const Network& net);
/// Deterministic for a given network, policy list and options.
Json verdicts_to_json(const VerifyResult& r, const Network& net, const std::vector<std::string>& trail_files);
Json stats_to_json(const VerifyResult& r, const VerifyOptions& opts);

}  // namespace netconv
