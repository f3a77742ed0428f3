#include "frugal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frugal/error.hpp"

namespace frugal {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(offset, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) throw ValidationError(std::string("missing field '") + name + "'");
  return *it;
}

template <class T>
T get_as(const json& value, const std::string& what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ValidationError("field '" + what + "' has the wrong type");
  }
}

long long get_int(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string("field '") + name + "' must be an integer");
  }
  return v.get<long long>();
}

std::int32_t get_count(const json& doc, const char* name) {
  const long long v = get_int(doc, name);
  if (v < 0 || v > 1000000) {
    throw ValidationError(std::string("field '") + name + "' is out of range");
  }
  return static_cast<std::int32_t>(v);
}

std::vector<std::pair<std::int32_t, std::int32_t>> get_pairs(const json& doc,
                                                             const char* name) {
  const json& arr = field(doc, name);
  if (!arr.is_array()) throw ValidationError(std::string("field '") + name + "' must be a list");
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ValidationError(std::string(name) + "[" + std::to_string(i) +
                            "] must be a pair of integers");
    }
    out.emplace_back(e[0].get<std::int32_t>(), e[1].get<std::int32_t>());
  }
  return out;
}

std::vector<std::vector<AgentId>> get_lists(const json& doc, const char* name) {
  const json& arr = field(doc, name);
  if (!arr.is_array()) throw ValidationError(std::string("field '") + name + "' must be a list");
  std::vector<std::vector<AgentId>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(get_as<std::vector<AgentId>>(arr[i], std::string(name) + "[" +
                                                           std::to_string(i) + "]"));
  }
  return out;
}

json pairs_json(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs) {
  json arr = json::array();
  for (auto [a, b] : pairs) arr.push_back({a, b});
  return arr;
}

SetSystem build_system(const json& doc, const std::string& kind) {
  if (kind == "kpath") {
    const auto n = get_count(doc, "vertices");
    std::vector<Arc> arcs;
    for (auto [u, v] : get_pairs(doc, "edges")) arcs.push_back({u, v});
    DiGraph g(n, static_cast<VertexId>(get_int(doc, "source")),
              static_cast<VertexId>(get_int(doc, "sink")), std::move(arcs));
    return SetSystem(KPathSystem{std::move(g), static_cast<int>(get_int(doc, "k"))});
  }
  if (kind == "vertex-cover") {
    UndirectedGraph g(get_count(doc, "vertices"), get_pairs(doc, "edges"));
    if (g.num_edges() == 0) throw ValidationError("vertex cover instance has no edges");
    return SetSystem(VertexCoverSystem{std::move(g)});
  }
  if (kind == "r-out-of-k") {
    return SetSystem(ROutOfKSystem{static_cast<std::size_t>(get_count(doc, "agents")),
                                   get_lists(doc, "groups"),
                                   static_cast<int>(get_int(doc, "r"))});
  }
  if (kind == "explicit") {
    const auto n = static_cast<std::size_t>(get_count(doc, "agents"));
    ExplicitFamily family{n, {}};
    for (const auto& members : get_lists(doc, "sets")) {
      for (AgentId a : members) {
        if (a < 0 || static_cast<std::size_t>(a) >= n) {
          throw ValidationError("feasible set names agent " + std::to_string(a) +
                                " outside 0.." + std::to_string(n - 1));
        }
      }
      family.sets.emplace_back(n, members);
    }
    return SetSystem(std::move(family));
  }
  throw ValidationError("unknown instance kind '" + kind + "'");
}

void check_monopoly(const SetSystem& system) {
  const AgentSet all = AgentSet::all(system.num_agents());
  if (!is_feasible(system, all)) throw ValidationError("instance has no feasible set");
  for (AgentId e = 0; static_cast<std::size_t>(e) < system.num_agents(); ++e) {
    if (!is_feasible(system, all.without(e))) {
      throw MonopolyError("agent " + std::to_string(e) + " lies in every feasible set");
    }
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, offset);
    std::string msg = e.what();
    const auto colon = msg.rfind(": ");
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(msg, line, column);
  }
  if (!doc.is_object()) throw ValidationError("instance must be an object");
  const long long version = get_int(doc, "version");
  if (version != kInstanceFormatVersion) {
    throw ValidationError("unsupported instance version " + std::to_string(version));
  }
  const std::string kind = get_as<std::string>(field(doc, "kind"), "kind");
  SetSystem system = build_system(doc, kind);

  const json& cost_field = field(doc, "costs");
  if (!cost_field.is_array()) throw ValidationError("field 'costs' must be a list");
  std::vector<double> costs;
  for (std::size_t i = 0; i < cost_field.size(); ++i) {
    if (!cost_field[i].is_number()) {
      throw ValidationError("costs[" + std::to_string(i) + "] must be a number");
    }
    costs.push_back(cost_field[i].get<double>());
  }
  check_bids(system, costs);
  check_monopoly(system);

  Instance out{std::move(system), std::move(costs), std::nullopt};
  if (const auto it = doc.find("provenance"); it != doc.end()) {
    Provenance p;
    p.generator = get_as<std::string>(field(*it, "generator"), "provenance.generator");
    p.seed = get_as<std::uint64_t>(field(*it, "seed"), "provenance.seed");
    if (const auto params = it->find("params"); params != it->end()) {
      p.params = get_as<std::map<std::string, std::string>>(*params, "provenance.params");
    }
    out.provenance = std::move(p);
  }
  return out;
}

std::string serialize_instance(const Instance& instance) {
  json doc = json::object();
  doc["version"] = kInstanceFormatVersion;
  doc["kind"] = instance.system.kind_name();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KPathSystem>) {
          doc["vertices"] = s.graph.num_vertices();
          doc["source"] = s.graph.source();
          doc["sink"] = s.graph.sink();
          std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
          for (const Arc& a : s.graph.arcs()) pairs.emplace_back(a.tail, a.head);
          doc["edges"] = pairs_json(pairs);
          doc["k"] = s.k;
        } else if constexpr (std::is_same_v<T, VertexCoverSystem>) {
          doc["vertices"] = s.graph.num_vertices();
          const auto e = s.graph.edges();
          doc["edges"] = pairs_json({e.begin(), e.end()});
        } else if constexpr (std::is_same_v<T, ROutOfKSystem>) {
          doc["agents"] = s.num_agents;
          doc["groups"] = s.groups;
          doc["r"] = s.r;
        } else {
          doc["agents"] = s.num_agents;
          json sets = json::array();
          for (const auto& set : s.sets) sets.push_back(set.members());
          doc["sets"] = sets;
        }
      },
      instance.system.variant());
  doc["costs"] = instance.costs;
  if (instance.provenance) {
    doc["provenance"] = {{"generator", instance.provenance->generator},
                         {"seed", instance.provenance->seed},
                         {"params", instance.provenance->params}};
  }
  return doc.dump(2) + "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

Instance load_instance(const std::string& path) { return parse_instance(read_text(path)); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string instance_digest(const Instance& instance) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(serialize_instance(instance))));
  return buf;
}

}  // namespace frugal
