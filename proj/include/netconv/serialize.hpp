#pragma once

#include <json.hpp>

#include "netconv/fib.hpp"
#include "netconv/outcome_store.hpp"
#include "netconv/route.hpp"
#include "netconv/search.hpp"

namespace netconv {

using Json = nlohmann::ordered_json;

Json to_json(const Path& p);
Path path_from_json(const Json& j);

Json to_json(const RouteEntry& e);
RouteEntry route_entry_from_json(const Json& j);

Json to_json(const StepRecord& r);
StepRecord step_record_from_json(const Json& j);

Json to_json(const FibEntry& e);
FibEntry fib_entry_from_json(const Json& j);

Json to_json(const ForwardingGraph& g);
ForwardingGraph forwarding_graph_from_json(const Json& j);

Json to_json(const PrefixRun& r);
PrefixRun prefix_run_from_json(const Json& j);

Json to_json(const ConvergedOutcome& o);
ConvergedOutcome outcome_from_json(const Json& j);

/// Forwarding graph keyed by node name, for people and external tools.
Json describe_graph(const ForwardingGraph& g, const Topology& topo);

}  // namespace netconv
