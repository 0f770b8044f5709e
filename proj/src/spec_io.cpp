#include "netconv/spec_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace netconv {

namespace {

/// Line of every value in a JSON text, keyed by JSON pointer. Only run on
/// text nlohmann already accepted, so the scanner can be lenient.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : t_(text) {
    skip();
    value("");
  }
  int line_of(const std::string& pointer) const {
    // fall back to the closest enclosing value
    std::string p = pointer;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      if (p.empty()) return 0;
      p.erase(p.rfind('/'));
    }
  }

 private:
  void skip() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\r' || t_[i_] == '\n')) {
      if (t_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  std::string string() {
    std::string s;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') ++i_;
      if (i_ < t_.size()) s += t_[i_++];
    }
    ++i_;
    return s;
  }
  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }
  void value(const std::string& ptr) {
    lines_[ptr] = line_;
    if (i_ >= t_.size()) return;
    char c = t_[i_];
    if (c == '{') {
      ++i_;
      skip();
      while (i_ < t_.size() && t_[i_] != '}') {
        auto key = string();
        skip();
        ++i_;  // ':'
        skip();
        value(ptr + "/" + escape(key));
        skip();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        skip();
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      skip();
      for (std::size_t k = 0; i_ < t_.size() && t_[i_] != ']'; ++k) {
        value(ptr + "/" + std::to_string(k));
        skip();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        skip();
      }
      ++i_;
    } else if (c == '"') {
      string();
    } else {
      while (i_ < t_.size() && std::string_view(",]} \t\r\n").find(t_[i_]) == std::string_view::npos) ++i_;
    }
  }

  std::string_view t_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

/// Schema failure at a JSON pointer; turned into a SpecError with a line.
struct SchemaError {
  std::string pointer;
  std::string message;
};

[[noreturn]] void bad(const std::string& ptr, const std::string& msg) { throw SchemaError{ptr, msg}; }

class Reader {
 public:
  explicit Reader(NetworkSpec& spec) : spec_(spec), net_(spec.network) {}

  void read(const Json& root) {
    if (!root.is_object()) bad("", "top level must be an object");
    static const std::set<std::string> known{"nodes", "links", "ospf", "bgp", "static", "route_maps",
                                             "policies", "environment", "ospf_multipath"};
    for (const auto& [k, _] : root.items()) {
      if (!known.count(k)) bad("/" + k, "unknown key '" + k + "'");
    }
    read_nodes(root);
    if (root.contains("links")) read_links(root["links"]);
    if (root.contains("route_maps")) read_route_maps(root["route_maps"]);
    if (root.contains("ospf")) read_ospf(root["ospf"]);
    if (root.contains("bgp")) read_bgp(root["bgp"]);
    if (root.contains("static")) read_static(root["static"]);
    if (root.contains("policies")) read_policies(root["policies"]);
    if (root.contains("environment")) {
      const auto& env = root["environment"];
      if (env.contains("max_failures")) spec_.environment.max_failures = get<int>(env["max_failures"], "/environment/max_failures");
    }
    if (root.contains("ospf_multipath")) net_.ospf_multipath = get<bool>(root["ospf_multipath"], "/ospf_multipath");
  }

 private:
  template <typename T>
  static T get(const Json& j, const std::string& ptr) {
    try {
      return j.get<T>();
    } catch (const nlohmann::json::exception&) {
      bad(ptr, "unexpected value type");
    }
  }
  static const Json& need(const Json& j, const char* key, const std::string& ptr) {
    if (!j.is_object() || !j.contains(key)) bad(ptr, std::string("missing '") + key + "'");
    return j[key];
  }
  NodeId node(const Json& j, const std::string& ptr) const {
    auto name = get<std::string>(j, ptr);
    auto id = net_.topology.find(name);
    if (!id) bad(ptr, "unknown node '" + name + "'");
    return *id;
  }
  NodeId node_key(const std::string& name, const std::string& ptr) const {
    auto id = net_.topology.find(name);
    if (!id) bad(ptr, "unknown node '" + name + "'");
    return *id;
  }
  static Prefix prefix(const Json& j, const std::string& ptr) {
    try {
      return Prefix::parse(get<std::string>(j, ptr));
    } catch (const std::invalid_argument& e) {
      bad(ptr, e.what());
    }
  }
  static Address address(const Json& j, const std::string& ptr) {
    try {
      return Address::parse(get<std::string>(j, ptr));
    } catch (const std::invalid_argument& e) {
      bad(ptr, e.what());
    }
  }
  static Community community(const Json& j, const std::string& ptr) {
    try {
      return parse_community(get<std::string>(j, ptr));
    } catch (const std::invalid_argument& e) {
      bad(ptr, e.what());
    }
  }
  std::optional<std::string> map_ref(const Json& j, const char* key, const std::string& ptr) const {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    auto name = get<std::string>(j[key], ptr + "/" + key);
    if (!net_.route_maps.count(name)) bad(ptr + "/" + key, "unknown route map '" + name + "'");
    return name;
  }
  std::vector<NodeId> node_list(const Json& j, const char* key, const std::string& ptr) const {
    std::vector<NodeId> out;
    if (!j.contains(key)) return out;
    const auto& arr = j[key];
    if (!arr.is_array()) bad(ptr + "/" + key, "expected a list of node names");
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(node(arr[i], ptr + "/" + key + "/" + std::to_string(i)));
    return out;
  }

  void read_nodes(const Json& root) {
    const auto& nodes = need(root, "nodes", "");
    if (!nodes.is_array()) bad("/nodes", "expected a list");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto ptr = "/nodes/" + std::to_string(i);
      const auto& n = nodes[i];
      auto name = get<std::string>(need(n, "id", ptr), ptr + "/id");
      if (net_.topology.find(name)) bad(ptr + "/id", "duplicate node '" + name + "'");
      auto id = net_.add_node(name);
      auto& cfg = net_.config(id);
      if (n.contains("as")) {
        cfg.bgp = BgpProcess{};
        cfg.bgp->asn = get<std::uint32_t>(n["as"], ptr + "/as");
      }
      if (n.contains("loopback")) cfg.loopback = address(n["loopback"], ptr + "/loopback");
    }
  }

  void read_links(const Json& links) {
    for (std::size_t i = 0; i < links.size(); ++i) {
      auto ptr = "/links/" + std::to_string(i);
      const auto& l = links[i];
      auto a = node(need(l, "a", ptr), ptr + "/a");
      auto b = node(need(l, "b", ptr), ptr + "/b");
      int cost = l.contains("cost") ? get<int>(l["cost"], ptr + "/cost") : 1;
      try {
        net_.topology.add_link(a, b, cost);
      } catch (const std::invalid_argument& e) {
        bad(ptr, e.what());
      }
    }
  }

  void read_route_maps(const Json& maps) {
    // names first so clauses may be validated independently of order
    for (const auto& [name, clauses] : maps.items()) {
      auto ptr = "/route_maps/" + name;
      RouteMap m;
      m.name = name;
      if (!clauses.is_array()) bad(ptr, "expected a list of clauses");
      for (std::size_t i = 0; i < clauses.size(); ++i) {
        auto cp = ptr + "/" + std::to_string(i);
        const auto& c = clauses[i];
        RouteMapClause clause;
        if (c.contains("match")) {
          const auto& mt = c["match"];
          if (mt.contains("prefix")) {
            PrefixMatch pm;
            pm.prefix = prefix(mt["prefix"], cp + "/match/prefix");
            if (mt.contains("ge")) pm.ge = get<int>(mt["ge"], cp + "/match/ge");
            if (mt.contains("le")) pm.le = get<int>(mt["le"], cp + "/match/le");
            clause.match_prefix = pm;
          }
          if (mt.contains("communities")) {
            for (std::size_t k = 0; k < mt["communities"].size(); ++k)
              clause.match_communities.push_back(
                  community(mt["communities"][k], cp + "/match/communities/" + std::to_string(k)));
          }
        }
        auto action = c.contains("action") ? get<std::string>(c["action"], cp + "/action") : std::string("permit");
        if (action != "permit" && action != "deny") bad(cp + "/action", "action must be permit or deny");
        clause.permit = action == "permit";
        if (c.contains("set_local_pref")) clause.set_local_pref = get<int>(c["set_local_pref"], cp + "/set_local_pref");
        for (const char* key : {"add_communities", "delete_communities"}) {
          if (!c.contains(key)) continue;
          auto& dst = std::string(key) == "add_communities" ? clause.add_communities : clause.delete_communities;
          for (std::size_t k = 0; k < c[key].size(); ++k)
            dst.push_back(community(c[key][k], cp + "/" + key + "/" + std::to_string(k)));
        }
        m.clauses.push_back(std::move(clause));
      }
      net_.route_maps[name] = std::move(m);
    }
  }

  void read_ospf(const Json& ospf) {
    for (const auto& [name, body] : ospf.items()) {
      auto ptr = "/ospf/" + name;
      auto id = node_key(name, ptr);
      OspfProcess p;
      if (body.contains("prefixes")) {
        for (std::size_t i = 0; i < body["prefixes"].size(); ++i)
          p.originated.push_back(prefix(body["prefixes"][i], ptr + "/prefixes/" + std::to_string(i)));
      }
      if (body.contains("interfaces")) {
        for (const auto& [nbr, cost] : body["interfaces"].items()) {
          auto ip = ptr + "/interfaces/" + nbr;
          auto n = node_key(nbr, ip);
          if (!net_.topology.link_between(id, n)) bad(ip, "'" + name + "' has no link to '" + nbr + "'");
          int c = get<int>(cost, ip);
          if (c < 1) bad(ip, "interface cost must be at least 1");
          p.interface_costs[n] = c;
        }
      }
      net_.config(id).ospf = std::move(p);
    }
  }

  void read_bgp(const Json& bgp) {
    if (bgp.contains("sessions")) {
      const auto& ss = bgp["sessions"];
      for (std::size_t i = 0; i < ss.size(); ++i) {
        auto ptr = "/bgp/sessions/" + std::to_string(i);
        const auto& s = ss[i];
        auto a = node(need(s, "a", ptr), ptr + "/a");
        auto b = node(need(s, "b", ptr), ptr + "/b");
        if (!net_.config(a).bgp || !net_.config(b).bgp) bad(ptr, "both session endpoints need an 'as'");
        SessionKind kind = net_.config(a).bgp->asn == net_.config(b).bgp->asn ? SessionKind::Ibgp : SessionKind::Ebgp;
        if (s.contains("kind")) {
          auto k = get<std::string>(s["kind"], ptr + "/kind");
          if (k == "ibgp") kind = SessionKind::Ibgp;
          else if (k == "ebgp") kind = SessionKind::Ebgp;
          else bad(ptr + "/kind", "kind must be ebgp or ibgp");
        }
        if (net_.session(a, b)) bad(ptr, "duplicate session");
        net_.add_session(a, b, kind, map_ref(s, "import", ptr), map_ref(s, "export", ptr),
                         map_ref(s, "peer_import", ptr), map_ref(s, "peer_export", ptr));
      }
    }
    if (bgp.contains("originate")) {
      for (const auto& [name, list] : bgp["originate"].items()) {
        auto ptr = "/bgp/originate/" + name;
        auto id = node_key(name, ptr);
        if (!net_.config(id).bgp) bad(ptr, "'" + name + "' has no 'as'");
        for (std::size_t i = 0; i < list.size(); ++i)
          net_.config(id).bgp->originated.push_back(prefix(list[i], ptr + "/" + std::to_string(i)));
      }
    }
  }

  void read_static(const Json& st) {
    for (const auto& [name, list] : st.items()) {
      auto ptr = "/static/" + name;
      auto id = node_key(name, ptr);
      for (std::size_t i = 0; i < list.size(); ++i) {
        auto rp = ptr + "/" + std::to_string(i);
        const auto& r = list[i];
        StaticRoute route;
        route.prefix = prefix(need(r, "prefix", rp), rp + "/prefix");
        auto hop = get<std::string>(need(r, "nexthop", rp), rp + "/nexthop");
        if (auto n = net_.topology.find(hop)) {
          if (!net_.topology.link_between(id, *n)) bad(rp + "/nexthop", "'" + hop + "' is not a neighbor of '" + name + "'");
          route.next_hop_node = *n;
        } else {
          route.next_hop = address(r["nexthop"], rp + "/nexthop");
        }
        net_.config(id).statics.push_back(route);
      }
    }
  }

  void read_policies(const Json& ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto ptr = "/policies/" + std::to_string(i);
      const auto& p = ps[i];
      PolicySpec spec;
      try {
        spec.kind = parse_policy_kind(get<std::string>(need(p, "kind", ptr), ptr + "/kind"));
      } catch (const std::invalid_argument& e) {
        bad(ptr + "/kind", e.what());
      }
      spec.name = p.contains("name") ? get<std::string>(p["name"], ptr + "/name") : std::string(to_string(spec.kind));
      if (p.contains("destination")) spec.destination = prefix(p["destination"], ptr + "/destination");
      spec.sources = node_list(p, "sources", ptr);
      spec.interesting = node_list(p, "interesting", ptr);
      spec.waypoints = node_list(p, "waypoints", ptr);
      spec.devices = node_list(p, "devices", ptr);
      if (p.contains("max_length")) spec.max_length = get<int>(p["max_length"], ptr + "/max_length");
      try {
        validate_policy(spec, net_.node_count());
      } catch (const std::invalid_argument& e) {
        bad(ptr, e.what());
      }
      spec_.policies.push_back(std::move(spec));
    }
  }

  NetworkSpec& spec_;
  Network& net_;
};

}  // namespace

NetworkSpec parse_spec(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw SpecError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")", line);
  }
  NetworkSpec spec;
  try {
    Reader(spec).read(root);
  } catch (const SchemaError& e) {
    int line = LineIndex(text).line_of(e.pointer);
    throw SpecError("line " + std::to_string(line) + " (" + (e.pointer.empty() ? "/" : e.pointer) + "): " + e.message,
                    line);
  }
  return spec;
}

NetworkSpec load_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw SpecError("cannot read " + file.string(), 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

Json spec_to_json(const NetworkSpec& spec) {
  const auto& net = spec.network;
  const auto& topo = net.topology;
  Json j;
  Json nodes = Json::array();
  for (NodeId n = 0; n < net.node_count(); ++n) {
    Json x;
    x["id"] = topo.name(n);
    if (net.config(n).bgp) x["as"] = net.config(n).bgp->asn;
    if (net.config(n).loopback) x["loopback"] = net.config(n).loopback->to_string();
    nodes.push_back(x);
  }
  j["nodes"] = nodes;
  Json links = Json::array();
  for (const auto& l : topo.links()) links.push_back(Json{{"a", topo.name(l.a)}, {"b", topo.name(l.b)}, {"cost", l.cost}});
  j["links"] = links;

  Json maps = Json::object();
  for (const auto& [name, m] : net.route_maps) {
    Json clauses = Json::array();
    for (const auto& c : m.clauses) {
      Json cj;
      Json match = Json::object();
      if (c.match_prefix) {
        match["prefix"] = c.match_prefix->prefix.to_string();
        if (c.match_prefix->ge) match["ge"] = *c.match_prefix->ge;
        if (c.match_prefix->le) match["le"] = *c.match_prefix->le;
      }
      if (!c.match_communities.empty()) {
        Json cs = Json::array();
        for (auto x : c.match_communities) cs.push_back(community_to_string(x));
        match["communities"] = cs;
      }
      if (!match.empty()) cj["match"] = match;
      cj["action"] = c.permit ? "permit" : "deny";
      if (c.set_local_pref) cj["set_local_pref"] = *c.set_local_pref;
      auto put = [&](const char* key, const std::vector<Community>& v) {
        if (v.empty()) return;
        Json cs = Json::array();
        for (auto x : v) cs.push_back(community_to_string(x));
        cj[key] = cs;
      };
      put("add_communities", c.add_communities);
      put("delete_communities", c.delete_communities);
      clauses.push_back(cj);
    }
    maps[name] = clauses;
  }
  if (!maps.empty()) j["route_maps"] = maps;

  Json ospf = Json::object();
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& o = net.config(n).ospf;
    if (!o) continue;
    Json x;
    Json ps = Json::array();
    for (const auto& p : o->originated) ps.push_back(p.to_string());
    x["prefixes"] = ps;
    if (!o->interface_costs.empty()) {
      Json ifs = Json::object();
      for (const auto& [nbr, c] : o->interface_costs) ifs[topo.name(nbr)] = c;
      x["interfaces"] = ifs;
    }
    ospf[topo.name(n)] = x;
  }
  if (!ospf.empty()) j["ospf"] = ospf;

  Json sessions = Json::array();
  Json originate = Json::object();
  for (NodeId a = 0; a < net.node_count(); ++a) {
    const auto& bgp = net.config(a).bgp;
    if (!bgp) continue;
    for (const auto& s : bgp->sessions) {
      if (s.peer < a) continue;
      const auto* back = net.session(s.peer, a);
      Json x;
      x["a"] = topo.name(a);
      x["b"] = topo.name(s.peer);
      x["kind"] = to_string(s.kind);
      if (s.import_map) x["import"] = *s.import_map;
      if (s.export_map) x["export"] = *s.export_map;
      if (back && back->import_map) x["peer_import"] = *back->import_map;
      if (back && back->export_map) x["peer_export"] = *back->export_map;
      sessions.push_back(x);
    }
    if (!bgp->originated.empty()) {
      Json ps = Json::array();
      for (const auto& p : bgp->originated) ps.push_back(p.to_string());
      originate[topo.name(a)] = ps;
    }
  }
  if (!sessions.empty() || !originate.empty()) {
    Json bgp;
    bgp["sessions"] = sessions;
    bgp["originate"] = originate;
    j["bgp"] = bgp;
  }

  Json statics = Json::object();
  for (NodeId n = 0; n < net.node_count(); ++n) {
    const auto& st = net.config(n).statics;
    if (st.empty()) continue;
    Json list = Json::array();
    for (const auto& s : st) {
      Json x;
      x["prefix"] = s.prefix.to_string();
      x["nexthop"] = s.next_hop_node ? topo.name(*s.next_hop_node) : s.next_hop->to_string();
      list.push_back(x);
    }
    statics[topo.name(n)] = list;
  }
  if (!statics.empty()) j["static"] = statics;

  Json pols = Json::array();
  for (const auto& p : spec.policies) {
    Json x;
    x["name"] = p.name;
    x["kind"] = to_string(p.kind);
    if (p.destination) x["destination"] = p.destination->to_string();
    auto names = [&](const std::vector<NodeId>& v) {
      Json a = Json::array();
      for (auto n : v) a.push_back(topo.name(n));
      return a;
    };
    if (!p.sources.empty()) x["sources"] = names(p.sources);
    if (!p.interesting.empty()) x["interesting"] = names(p.interesting);
    if (!p.waypoints.empty()) x["waypoints"] = names(p.waypoints);
    if (!p.devices.empty()) x["devices"] = names(p.devices);
    if (p.kind == PolicyKind::BoundedPathLength) x["max_length"] = p.max_length;
    pols.push_back(x);
  }
  if (!pols.empty()) j["policies"] = pols;
  j["environment"] = Json{{"max_failures", spec.environment.max_failures}};
  if (!net.ospf_multipath) j["ospf_multipath"] = false;
  return j;
}

}  // namespace netconv
