#include "netconv/serialize.hpp"

namespace netconv {

Json to_json(const Path& p) {
  if (p.is_bottom()) return "bottom";
  if (p.is_epsilon()) return "epsilon";
  return p.hops();
}

Path path_from_json(const Json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "bottom") return Path::bottom();
    if (s == "epsilon") return Path::epsilon();
    throw std::invalid_argument("bad path '" + s + "'");
  }
  return Path::through(j.get<std::vector<NodeId>>());
}

Json to_json(const RouteEntry& e) {
  Json j;
  j["path"] = to_json(e.path);
  if (!e.alternates.empty()) {
    Json alts = Json::array();
    for (const auto& a : e.alternates) alts.push_back(to_json(a));
    j["alternates"] = alts;
  }
  j["protocol"] = to_string(e.protocol);
  j["local_pref"] = e.local_pref;
  j["igp_cost"] = e.igp_cost;
  j["ospf_cost"] = e.ospf_cost;
  Json cs = Json::array();
  for (auto c : e.communities) cs.push_back(community_to_string(c));
  j["communities"] = cs;
  return j;
}

RouteEntry route_entry_from_json(const Json& j) {
  RouteEntry e;
  e.path = path_from_json(j.at("path"));
  if (j.contains("alternates")) {
    for (const auto& a : j["alternates"]) e.alternates.push_back(path_from_json(a));
  }
  e.protocol = parse_protocol(j.at("protocol").get<std::string>());
  e.local_pref = j.value("local_pref", 100);
  e.igp_cost = j.value("igp_cost", 0);
  e.ospf_cost = j.value("ospf_cost", 0);
  for (const auto& c : j.value("communities", Json::array())) e.add_community(parse_community(c.get<std::string>()));
  return e;
}

namespace {

StepKind parse_step_kind(const std::string& s) {
  for (auto k : {StepKind::Select, StepKind::Branch, StepKind::TakeBottom}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("bad step kind '" + s + "'");
}

}  // namespace

Json to_json(const StepRecord& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["node"] = r.node;
  if (r.peer != kNoNode) j["peer"] = r.peer;
  j["entry"] = to_json(r.entry);
  j["alternatives"] = r.alternatives;
  return j;
}

StepRecord step_record_from_json(const Json& j) {
  StepRecord r;
  r.kind = parse_step_kind(j.at("kind").get<std::string>());
  r.node = j.at("node").get<NodeId>();
  r.peer = j.contains("peer") ? j["peer"].get<NodeId>() : kNoNode;
  r.entry = route_entry_from_json(j.at("entry"));
  r.alternatives = j.value("alternatives", 1u);
  return r;
}

Json to_json(const FibEntry& e) {
  Json j;
  j["action"] = to_string(e.action);
  if (!e.next_hops.empty()) j["next_hops"] = e.next_hops;
  if (e.prefix) j["prefix"] = e.prefix->to_string();
  j["source"] = to_string(e.source);
  return j;
}

FibEntry fib_entry_from_json(const Json& j) {
  FibEntry e;
  e.action = parse_fib_action(j.at("action").get<std::string>());
  if (j.contains("next_hops")) e.next_hops = j["next_hops"].get<std::vector<NodeId>>();
  if (j.contains("prefix")) e.prefix = Prefix::parse(j["prefix"].get<std::string>());
  e.source = parse_route_source(j.value("source", std::string("none")));
  return e;
}

Json to_json(const ForwardingGraph& g) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : g.entries) entries.push_back(to_json(e));
  j["entries"] = entries;
  j["diagnostics"] = g.diagnostics;
  return j;
}

ForwardingGraph forwarding_graph_from_json(const Json& j) {
  ForwardingGraph g;
  for (const auto& e : j.at("entries")) g.entries.push_back(fib_entry_from_json(e));
  g.diagnostics = j.value("diagnostics", std::vector<std::string>{});
  return g;
}

Json to_json(const PrefixRun& r) {
  Json j;
  j["prefix"] = r.prefix.to_string();
  j["protocol"] = to_string(r.protocol);
  Json best = Json::array();
  for (const auto& e : r.best) best.push_back(to_json(e));
  j["best"] = best;
  return j;
}

PrefixRun prefix_run_from_json(const Json& j) {
  PrefixRun r;
  r.prefix = Prefix::parse(j.at("prefix").get<std::string>());
  r.protocol = parse_protocol(j.at("protocol").get<std::string>());
  for (const auto& e : j.at("best")) r.best.push_back(route_entry_from_json(e));
  return r;
}

Json to_json(const ConvergedOutcome& o) {
  Json j;
  j["scc"] = o.scc;
  j["failures"] = o.failures;
  Json deps = Json::array();
  for (const auto& d : o.dependencies) deps.push_back(Json{{"group", d.group}, {"record", d.record}});
  j["dependencies"] = deps;
  Json choices = Json::array();
  for (const auto& c : o.choices) {
    auto step = to_json(c.step);
    step["prefix"] = c.prefix.to_string();
    step["protocol"] = to_string(c.protocol);
    choices.push_back(step);
  }
  j["choices"] = choices;
  Json runs = Json::array();
  for (const auto& r : o.runs) runs.push_back(to_json(r));
  j["runs"] = runs;
  Json graphs = Json::array();
  for (const auto& [pec, g] : o.graphs) {
    auto gj = to_json(g);
    gj["pec"] = pec;
    graphs.push_back(gj);
  }
  j["graphs"] = graphs;
  return j;
}

ConvergedOutcome outcome_from_json(const Json& j) {
  ConvergedOutcome o;
  o.scc = j.at("scc").get<std::size_t>();
  o.failures = j.at("failures").get<std::vector<LinkId>>();
  for (const auto& d : j.at("dependencies"))
    o.dependencies.push_back({d.at("group").get<std::size_t>(), d.at("record").get<std::string>()});
  for (const auto& c : j.at("choices")) {
    o.choices.push_back({Prefix::parse(c.at("prefix").get<std::string>()),
                         parse_protocol(c.at("protocol").get<std::string>()), step_record_from_json(c)});
  }
  for (const auto& r : j.at("runs")) o.runs.push_back(prefix_run_from_json(r));
  for (const auto& g : j.at("graphs")) o.graphs[g.at("pec").get<PecId>()] = forwarding_graph_from_json(g);
  return o;
}

Json describe_graph(const ForwardingGraph& g, const Topology& topo) {
  Json nodes = Json::object();
  for (NodeId n = 0; n < g.entries.size(); ++n) {
    const auto& e = g.entries[n];
    Json j;
    j["action"] = to_string(e.action);
    Json hops = Json::array();
    for (auto h : e.next_hops) hops.push_back(topo.name(h));
    j["next_hops"] = hops;
    j["prefix"] = e.prefix ? Json(e.prefix->to_string()) : Json(nullptr);
    j["source"] = to_string(e.source);
    nodes[topo.name(n)] = j;
  }
  Json out;
  out["nodes"] = nodes;
  out["diagnostics"] = g.diagnostics;
  return out;
}

}  // namespace netconv
