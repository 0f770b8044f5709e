#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "netconv/fib.hpp"
#include "netconv/search.hpp"

namespace netconv {

/// One branch pick inside a prefix run.
struct ChoiceEvent {
  Prefix prefix;
  Protocol protocol = Protocol::Ospf;
  StepRecord step;

  bool operator==(const ChoiceEvent&) const = default;
};

/// Which stored outcome of a dependency group a run was built on.
struct DependencyPick {
  std::size_t group = 0;
  std::string record;

  bool operator==(const DependencyPick&) const = default;
};

/// A converged result of one schedule group and the choices producing it.
struct ConvergedOutcome {
  std::size_t scc = 0;
  std::vector<LinkId> failures;
  std::vector<DependencyPick> dependencies;
  std::vector<ChoiceEvent> choices;
  std::vector<PrefixRun> runs;
  std::map<PecId, ForwardingGraph> graphs;

  bool operator==(const ConvergedOutcome&) const = default;
};

/// Digest of the choice log (failures, dependency picks, branch picks).
std::string outcome_digest(const ConvergedOutcome& o);

/// Writes `<root>/<scc>/<digest>.json`; returns the digest. Rewriting an
/// existing record is a no-op.
std::string store_outcome(const ConvergedOutcome& o, const std::filesystem::path& root);

/// Outcomes of group `scc` recorded under exactly `failures`, by record id.
/// Throws when the group directory does not exist.
std::vector<ConvergedOutcome> load_matching_outcomes(std::size_t scc, const std::vector<LinkId>& failures,
                                                     const std::filesystem::path& root);

/// Thread-safe front end: on disk when a root is given, in memory otherwise.
class OutcomeStore {
 public:
  OutcomeStore() = default;
  explicit OutcomeStore(std::filesystem::path root);

  /// Makes the group known so a later lookup with no outcomes is not an error.
  void open_group(std::size_t scc);
  std::string put(const ConvergedOutcome& o);
  std::vector<ConvergedOutcome> matching(std::size_t scc, const std::vector<LinkId>& failures) const;
  /// Every stored outcome, by group then record id.
  std::vector<ConvergedOutcome> all() const;
  std::size_t size() const;
  const std::optional<std::filesystem::path>& root() const { return root_; }

 private:
  std::optional<std::filesystem::path> root_;
  mutable std::mutex mu_;
  std::map<std::size_t, std::map<std::string, ConvergedOutcome>> memory_;
  std::size_t count_ = 0;
};

}  // namespace netconv
