#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "netconv/failures.hpp"
#include "netconv/generators.hpp"
#include "netconv/spec_io.hpp"
#include "netconv/verify.hpp"

namespace fs = std::filesystem;
using namespace netconv;

namespace {

struct RunFlags {
  std::string spec;
  std::string out = ".";
  std::optional<int> max_failures;
  std::size_t parallel = 1;
  bool no_det = false;
  bool no_consistent = false;
  bool no_independence = false;
  bool no_policy_prune = false;
  bool no_dec = false;
  std::uint64_t bitstate = 0;
  std::uint64_t max_states = 0;
  std::string store;
  bool seedless = true;
};

void add_search_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--max-failures", f.max_failures, "Link failures to explore (overrides the spec environment)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--parallel", f.parallel, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-det-nodes", f.no_det, "Disable deterministic-node selection");
  cmd->add_flag("--no-consistent-prune", f.no_consistent, "Explore executions that revise a selected path");
  cmd->add_flag("--no-independence", f.no_independence, "Disable independent-node reduction");
  cmd->add_flag("--no-policy-prune", f.no_policy_prune, "Disable policy-based pruning");
  cmd->add_flag("--no-dec-opt", f.no_dec, "Enumerate every failure instead of one per link class");
  cmd->add_option("--bitstate", f.bitstate, "Use a Bloom filter of this many bits for visited states");
  cmd->add_option("--max-states", f.max_states, "Stop each search after this many states");
  cmd->add_option("--outcome-store", f.store, "Directory for converged outcomes");
  cmd->add_flag("--seedless,!--seeded", f.seedless, "Fixed branch order (always on)");
}

VerifyOptions options_from(const RunFlags& f, const NetworkSpec& spec) {
  VerifyOptions o;
  o.max_failures = f.max_failures.value_or(spec.environment.max_failures);
  o.parallel = f.parallel;
  o.search.deterministic_nodes = !f.no_det;
  o.search.consistent_prune = !f.no_consistent;
  o.search.independence = !f.no_independence;
  o.search.policy_prune = !f.no_policy_prune;
  o.search.bitstate_bits = f.bitstate;
  o.search.max_states = f.max_states;
  o.dec = !f.no_dec;
  if (!f.store.empty()) o.outcome_store = fs::path(f.store);
  return o;
}

void write_json(const fs::path& file, const Json& j) {
  std::ofstream out(file);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

int cmd_run(const RunFlags& f) {
  auto spec = load_spec(f.spec);
  auto opts = options_from(f, spec);
  auto result = verify(spec.network, spec.policies, opts);

  fs::path out(f.out);
  fs::create_directories(out);
  std::vector<std::string> trails;
  for (const auto& v : result.verdicts) {
    if (!v.violation) continue;
    auto name = "trail-" + std::to_string(trails.size()) + ".json";
    write_json(out / name, trail_to_json(*v.violation, spec.network));
    trails.push_back(name);
  }
  write_json(out / "verdicts.json", verdicts_to_json(result, spec.network, trails));
  write_json(out / "stats.json", stats_to_json(result, opts));

  for (const auto& v : result.verdicts) {
    std::cout << (v.pass() ? "PASS      " : "VIOLATION ") << v.policy << " (" << to_string(v.kind) << ")";
    if (v.violation) std::cout << ": " << v.violation->result.message;
    std::cout << '\n';
  }
  for (const auto& d : result.diagnostics) std::cerr << "note: " << d << '\n';
  std::cout << result.stats.scenarios << " scenarios, " << result.stats.search.states_explored << " states, "
            << result.stats.data_planes << " data planes\n";
  return result.all_pass() ? 0 : 2;
}

int cmd_pec_dump(const std::string& file) {
  auto spec = load_spec(file);
  auto plan = make_plan(spec.network);
  for (const auto& pec : plan.pecs) {
    Json j;
    j["id"] = pec.id;
    j["lo"] = pec.range.lo.to_string();
    j["hi"] = pec.range.hi.to_string();
    Json ps = Json::array();
    for (const auto& c : pec.prefixes) {
      Json p;
      p["prefix"] = c.prefix.to_string();
      p["length"] = c.prefix.length();
      auto names = [&](const std::vector<NodeId>& v) {
        Json a = Json::array();
        for (auto n : v) a.push_back(spec.network.topology.name(n));
        return a;
      };
      if (!c.config.ospf_origins.empty()) p["ospf"] = names(c.config.ospf_origins);
      if (!c.config.bgp_origins.empty()) p["bgp"] = names(c.config.bgp_origins);
      if (!c.config.loopback_owners.empty()) p["loopback"] = names(c.config.loopback_owners);
      if (!c.config.statics.empty()) {
        std::vector<NodeId> at;
        for (const auto& s : c.config.statics) at.push_back(s.node);
        p["static"] = names(at);
      }
      if (!c.config.route_maps.empty()) p["route_maps"] = c.config.route_maps;
      ps.push_back(p);
    }
    j["prefixes"] = ps;
    std::cout << j.dump() << '\n';
  }
  return 0;
}

int cmd_fib_dump(const RunFlags& f) {
  auto spec = load_spec(f.spec);
  auto opts = options_from(f, spec);
  opts.collect_outcomes = true;
  opts.search.policy_prune = false;
  auto result = verify(spec.network, {}, opts);
  auto plan = make_plan(spec.network);
  Json out = Json::array();
  for (const auto& o : result.outcomes) {
    Json failed = Json::array();
    for (auto l : o.failures) {
      const auto& link = spec.network.topology.link(l);
      failed.push_back(Json::array({spec.network.topology.name(link.a), spec.network.topology.name(link.b)}));
    }
    for (const auto& [id, g] : o.graphs) {
      Json j;
      j["class"] = Json::array({plan.pecs[id].range.lo.to_string(), plan.pecs[id].range.hi.to_string()});
      j["failed_links"] = failed;
      j["record"] = outcome_digest(o);
      j["graph"] = describe_graph(g, spec.network.topology);
      out.push_back(j);
    }
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_oracle(const std::string& file, int max_failures) {
  auto spec = load_spec(file);
  const auto& net = spec.network;
  auto plan = make_plan(net);
  std::set<std::pair<Prefix, Protocol>> runs;
  for (const auto& pec : plan.pecs) {
    for (const auto& r : runs_of(pec)) runs.insert(r);
  }
  bool all_equal = true;
  for (const auto& failures : enumerate_failures(net, max_failures)) {
    LinkMask mask(net.topology.link_count(), failures);
    for (const auto& [prefix, proto] : runs) {
      RoutingContext ctx(net, prefix, proto, mask);
      SpvpInstance inst(ctx, ctx);
      auto oracle = enumerate_converged(inst);
      auto mine = explore_run(ctx, SearchOptions{});
      bool equal = oracle.converged == mine.converged;
      all_equal = all_equal && (equal || oracle.divergence_suspected);
      std::cout << prefix.to_string() << ' ' << to_string(proto) << " failures=" << failures.size() << ": oracle "
                << oracle.converged.size() << ", checker " << mine.converged.size()
                << (oracle.divergence_suspected ? " (oracle suspects divergence)" : "")
                << (equal ? "" : " MISMATCH") << '\n';
      for (const auto& m : oracle.converged) std::cout << "  " << describe(m, &net.topology) << '\n';
    }
  }
  return all_equal ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explores every converged data plane of a network configuration and checks policies."};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Verify the policies of a network description");
  run->add_option("spec", run_flags.spec, "Network description (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", run_flags.out, "Output directory for verdicts, stats and trails");
  add_search_flags(run, run_flags);

  std::string pec_spec;
  auto* pec = app.add_subcommand("pec", "Packet equivalence classes");
  pec->require_subcommand(1);
  auto* pec_dump = pec->add_subcommand("dump", "Print the classes as JSON lines");
  pec_dump->add_option("spec", pec_spec, "Network description (JSON)")->required()->check(CLI::ExistingFile);

  RunFlags fib_flags;
  auto* fib = app.add_subcommand("fib", "Forwarding graphs");
  fib->require_subcommand(1);
  auto* fib_dump = fib->add_subcommand("dump", "Print every converged forwarding graph as JSON");
  fib_dump->add_option("spec", fib_flags.spec, "Network description (JSON)")->required()->check(CLI::ExistingFile);
  add_search_flags(fib_dump, fib_flags);

  std::string oracle_spec;
  int oracle_failures = 0;
  auto* oracle = app.add_subcommand("oracle", "Compare the checker with the message-passing simulator");
  oracle->add_option("spec", oracle_spec, "Network description (JSON)")->required()->check(CLI::ExistingFile);
  oracle->add_option("--max-failures", oracle_failures, "Link failures to explore")->check(CLI::NonNegativeNumber);

  int gen_size = 4;
  std::string gen_statics = "none";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a network description");
  gen->require_subcommand(1);
  auto* gen_fat = gen->add_subcommand("fat-tree", "k-ary fat tree running OSPF");
  gen_fat->add_option("k", gen_size, "Arity (even)")->required();
  gen_fat->add_option("--static", gen_statics, "Static routes toward the first edge prefix")
      ->check(CLI::IsMember({"none", "correct", "loop"}));
  auto* gen_ring = gen->add_subcommand("ring", "OSPF ring");
  gen_ring->add_option("n", gen_size, "Nodes")->required();
  auto* gen_line = gen->add_subcommand("line", "OSPF line");
  gen_line->add_option("n", gen_size, "Nodes")->required();
  for (auto* g : {gen_fat, gen_ring, gen_line}) g->add_option("-o,--out", gen_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*pec_dump) return cmd_pec_dump(pec_spec);
    if (*fib_dump) return cmd_fib_dump(fib_flags);
    if (*oracle) return cmd_oracle(oracle_spec, oracle_failures);
    if (*gen) {
      NetworkSpec spec;
      if (*gen_fat) {
        auto mode = gen_statics == "correct" ? StaticMode::Correct
                    : gen_statics == "loop"  ? StaticMode::Loop
                                             : StaticMode::None;
        spec = make_fat_tree(gen_size, mode);
      } else if (*gen_ring) {
        spec = make_ring(gen_size);
      } else {
        spec = make_line(gen_size);
      }
      auto text = spec_to_json(spec).dump(2) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(gen_out) << text;
      }
      return 0;
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
