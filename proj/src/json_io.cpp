#include "treedup/json_io.hpp"

#include <fstream>

namespace treedup::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

std::uint64_t natural(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    bad(std::string(what) + " must be a natural number");
  }
  return j.get<std::uint64_t>();
}

Value value_of(const json& j) {
  const std::uint64_t v = natural(j, "node value");
  if (v > std::numeric_limits<Value>::max()) bad("node value out of range");
  return static_cast<Value>(v);
}

Sign sign_of(const json& j) {
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v == 1) return Sign::plus;
    if (v == -1) return Sign::minus;
  }
  bad("sign must be 1 or -1");
}

json sign_json(Sign s) { return to_int(s); }

}  // namespace

json to_json(const Node& n) { return json(std::vector<Value>(n.values().begin(), n.values().end())); }

json to_json(const NodeOrRoot& n) { return n.is_root() ? json("root") : to_json(n.node()); }

json to_json(const Point& p) { return {{"node", to_json(p.node)}, {"sign", sign_json(p.sign)}}; }

json to_json(const BasicOpen& w) { return {{"r", to_json(w.r())}, {"t", to_json(w.t())}, {"i", sign_json(w.i())}}; }

json to_json(const OpenSet& u) {
  json pieces = json::array();
  for (const BasicOpen& w : u.pieces) pieces.push_back(to_json(w));
  return {{"pieces", pieces}};
}

json to_json(const Fragment& f) {
  json nodes = json::array();
  for (const Node& n : f.nodes()) nodes.push_back(to_json(n));
  return {{"alphabet", f.alphabet()}, {"depth", f.depth()}, {"nodes", nodes}};
}

json to_json(const Candidate& c) {
  json opens = json::array();
  for (const OpenSet& u : c.opens) opens.push_back(to_json(u));
  return {{"opens", opens}};
}

json to_json(const DiagTrace& t) {
  json rounds = json::array();
  for (const DiagRound& r : t.rounds) {
    json jr = {{"m", r.m}, {"t", to_json(r.t)}, {"k", r.k}, {"l", r.l}, {"u", to_json(r.u)}};
    if (r.survivors) jr["survivor_count"] = r.survivors->size();
    rounds.push_back(std::move(jr));
  }
  return {{"rounds", rounds}, {"status", std::string(to_string(t.status))}, {"forbidden", t.forbidden}};
}

json to_json(const FinSuppFn& f) {
  json support = json::array();
  for (const auto& [p, v] : f.support()) {
    support.push_back({{"node", to_json(p.node)}, {"sign", sign_json(p.sign)}, {"value", v}});
  }
  return {{"support", support}};
}

json to_json(const StarSequence& s) {
  json out = {{"families", s.families}, {"universe", s.universe}};
  out["infinity"] = s.infinity ? json(*s.infinity) : json(nullptr);
  return out;
}

json to_json(const VSet& v) { return {{"u", to_json(v.u)}, {"i", sign_json(v.i)}, {"p", v.p}}; }

Node node_from_json(const json& j) {
  if (!j.is_array()) bad("node must be an array of naturals");
  std::vector<Value> values;
  values.reserve(j.size());
  for (const json& v : j) values.push_back(value_of(v));
  return Node::from_values(std::move(values));
}

NodeOrRoot node_or_root_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "root") bad("the only named node is \"root\"");
    return NodeOrRoot::root();
  }
  return node_from_json(j);
}

Point point_from_json(const json& j) { return {node_from_json(field(j, "node")), sign_of(field(j, "sign"))}; }

BasicOpen basic_open_from_json(const json& j) {
  return BasicOpen(node_or_root_from_json(field(j, "r")), node_from_json(field(j, "t")), sign_of(field(j, "i")));
}

OpenSet open_set_from_json(const json& j) {
  const json& pieces = field(j, "pieces");
  if (!pieces.is_array()) bad("'pieces' must be an array");
  OpenSet u;
  for (const json& w : pieces) u.pieces.push_back(basic_open_from_json(w));
  return u;
}

Fragment fragment_from_json(const json& j, Injectivity injectivity) {
  const json& nodes = field(j, "nodes");
  if (!nodes.is_array()) bad("'nodes' must be an array");
  std::vector<Node> parsed;
  parsed.reserve(nodes.size());
  for (const json& n : nodes) {
    if (injectivity == Injectivity::enforce) {
      parsed.push_back(node_from_json(n));
    } else {
      if (!n.is_array()) bad("node must be an array of naturals");
      std::vector<Value> values;
      for (const json& v : n) values.push_back(value_of(v));
      parsed.push_back(Node::unchecked(std::move(values)));
    }
  }
  const std::uint64_t alphabet = natural(field(j, "alphabet"), "alphabet");
  if (alphabet > std::numeric_limits<Value>::max()) bad("alphabet out of range");
  return Fragment(std::move(parsed), static_cast<Value>(alphabet), natural(field(j, "depth"), "depth"), injectivity);
}

Candidate candidate_from_json(const json& j) {
  const json& opens = field(j, "opens");
  if (!opens.is_array()) bad("'opens' must be an array");
  Candidate c;
  for (const json& u : opens) c.opens.push_back(open_set_from_json(u));
  return c;
}

DiagTrace trace_from_json(const json& j) {
  const json& rounds = field(j, "rounds");
  if (!rounds.is_array()) bad("'rounds' must be an array");
  DiagTrace t;
  for (const json& r : rounds) {
    DiagRound round;
    round.m = natural(field(r, "m"), "m");
    round.t = node_from_json(field(r, "t"));
    round.k = value_of(field(r, "k"));
    round.l = value_of(field(r, "l"));
    round.u = node_from_json(field(r, "u"));
    t.rounds.push_back(std::move(round));
  }
  const json& status = field(j, "status");
  if (!status.is_string()) bad("'status' must be a string");
  t.status = parse_diag_status(status.get<std::string>());
  const json& forbidden = field(j, "forbidden");
  if (!forbidden.is_array()) bad("'forbidden' must be an array");
  for (const json& k : forbidden) t.forbidden.push_back(value_of(k));
  return t;
}

FinSuppFn fin_supp_fn_from_json(const json& j) {
  const json& support = field(j, "support");
  if (!support.is_array()) bad("'support' must be an array");
  std::vector<std::pair<Point, double>> entries;
  for (const json& e : support) {
    const json& v = field(e, "value");
    if (!v.is_number()) bad("'value' must be a number");
    entries.emplace_back(point_from_json(e), v.get<double>());
  }
  return FinSuppFn::from_entries(entries);
}

StarSequence star_from_json(const json& j) {
  StarSequence s;
  try {
    s.families = field(j, "families").get<std::vector<Family>>();
  } catch (const json::exception& e) {
    bad(std::string("'families' must be nested arrays of point ids: ") + e.what());
  }
  s.universe = natural(field(j, "universe"), "universe");
  if (const auto it = j.find("infinity"); it != j.end() && !it->is_null()) s.infinity = natural(*it, "infinity");
  for (const Family& fam : s.families) {
    for (const PointSet& set : fam) {
      for (std::size_t x : set) {
        if (x >= s.universe) bad("point id " + std::to_string(x) + " outside the universe");
      }
    }
  }
  return s;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace treedup::io
