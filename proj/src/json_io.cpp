#include "mpg/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mpg/errors.hpp"

namespace mpg {

namespace {

using nlohmann::ordered_json;

std::string shortest_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Score values arrive as strings ("1/3", "-2", "0.25") or bare JSON numbers;
// bare numbers are read as finite decimals, so 0.1 means exactly 1/10.
Rational value_to_rational(const ordered_json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_number_unsigned()) return Rational(static_cast<long>(v.get<unsigned long long>()));
    if (v.is_number_float()) return parse_rational(shortest_double(v.get<double>()));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
  throw ValidationError(where + ": expected a rational value");
}

Graph parse_graph(const ordered_json& j, const std::string& name) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ValidationError(name + " needs 'vertices' and 'edges'");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw ValidationError(name + ": vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  // vertex name -> index happens inside Graph; build edges against it lazily
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_object() || !e.contains("id") || !e.contains("src") || !e.contains("dst"))
      throw ValidationError(name + ": each edge needs id/src/dst");
    Edge ed;
    ed.id = e.at("id").get<std::string>();
    std::string src = e.at("src").get<std::string>(), dst = e.at("dst").get<std::string>();
    auto find = [&](const std::string& n) {
      for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == n) return static_cast<int>(i);
      throw ValidationError(name + ": edge '" + ed.id + "' references missing vertex '" + n + "'");
    };
    ed.src = find(src);
    ed.dst = find(dst);
    if (e.contains("label")) {
      int l = e.at("label").get<int>();
      if (l != 0 && l != 1)
        throw ValidationError(name + ": edge '" + ed.id + "' label must be 0 or 1");
      ed.label = l;
    }
    edges.push_back(std::move(ed));
  }
  try {
    return Graph(std::move(vertices), std::move(edges));
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  }
}

}  // namespace

GameInstance parse_instance(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("instance document must be a JSON object");
  if (!j.contains("graph_g") || !j.contains("graph_h") || !j.contains("score"))
    throw ValidationError("instance needs graph_g, graph_h and score");

  Graph g = parse_graph(j.at("graph_g"), "graph_g");
  Graph h = parse_graph(j.at("graph_h"), "graph_h");

  NumericMode mode = NumericMode::exact;
  if (j.contains("numeric_mode")) {
    std::string m = j.at("numeric_mode").get<std::string>();
    if (m == "float64")
      mode = NumericMode::float64;
    else if (m != "exact")
      throw ValidationError("numeric_mode must be 'exact' or 'float64'");
  }

  const auto& sj = j.at("score");
  if (!sj.is_object() || !sj.contains("default"))
    throw ValidationError("score needs a 'default' value");
  Rational def = value_to_rational(sj.at("default"), "score.default");
  ScoreTable table(def, g.edge_count(), h.edge_count());
  if (mode == NumericMode::float64) table.set_default_f64(def.to_double());
  if (sj.contains("entries")) {
    for (const auto& ent : sj.at("entries")) {
      if (!ent.is_object() || !ent.contains("g") || !ent.contains("h") || !ent.contains("value"))
        throw ValidationError("each score entry needs g/h/value");
      std::string ge = ent.at("g").get<std::string>(), he = ent.at("h").get<std::string>();
      int gi = g.edge_index(ge), hi = h.edge_index(he);
      if (gi < 0) throw ValidationError("score entry references missing Alice edge '" + ge + "'");
      if (hi < 0) throw ValidationError("score entry references missing Bob edge '" + he + "'");
      Rational v = value_to_rational(ent.at("value"), "score entry " + ge + "/" + he);
      if (mode == NumericMode::float64) table.set_f64(gi, hi, v.to_double());
      table.set(gi, hi, std::move(v));
    }
  }

  std::optional<StartSpec> start;
  if (j.contains("start")) {
    const auto& st = j.at("start");
    StartSpec spec;
    if (st.contains("g_edge") && st.contains("f_edge")) {
      spec.kind = StartSpec::Kind::edges;
      spec.g_ref = st.at("g_edge").get<std::string>();
      spec.h_ref = st.at("f_edge").get<std::string>();
    } else if (st.contains("g_vertex") && st.contains("h_vertex")) {
      spec.kind = StartSpec::Kind::vertices;
      spec.g_ref = st.at("g_vertex").get<std::string>();
      spec.h_ref = st.at("h_vertex").get<std::string>();
    } else {
      throw ValidationError("start needs g_edge/f_edge or g_vertex/h_vertex");
    }
    start = std::move(spec);
  }

  GameInstance inst(std::move(g), std::move(h), std::move(table), std::move(start), mode);
  if (inst.start().has_value()) inst.resolve_start();  // fail fast on dangling references
  return inst;
}

GameInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

namespace {

ordered_json graph_to_json(const Graph& g) {
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = ordered_json::array();
  for (const Edge& e : g.edges()) {
    ordered_json ej{{"id", e.id}, {"src", g.vertex_name(e.src)}, {"dst", g.vertex_name(e.dst)}};
    if (e.label >= 0) ej["label"] = e.label;
    j["edges"].push_back(std::move(ej));
  }
  return j;
}

}  // namespace

std::string serialize_instance(const GameInstance& inst, bool pretty) {
  ordered_json j;
  j["graph_g"] = graph_to_json(inst.g());
  j["graph_h"] = graph_to_json(inst.h());
  ordered_json sc;
  bool f64 = inst.mode() == NumericMode::float64;
  sc["default"] = f64 ? shortest_double(inst.scores().default_value_f64())
                      : inst.scores().default_value().str();
  sc["entries"] = ordered_json::array();
  auto push = [&](int ge, int he, std::string value) {
    sc["entries"].push_back(ordered_json{{"g", inst.g().edge(ge).id},
                                         {"h", inst.h().edge(he).id},
                                         {"value", std::move(value)}});
  };
  if (f64) {
    for (const auto& [ge, he, v] : inst.scores().sorted_entries_f64())
      push(ge, he, shortest_double(v));
  } else {
    for (const auto& [ge, he, v] : inst.scores().sorted_entries()) push(ge, he, v.str());
  }
  j["score"] = std::move(sc);
  if (inst.start().has_value()) {
    const StartSpec& st = *inst.start();
    if (st.kind == StartSpec::Kind::edges)
      j["start"] = ordered_json{{"g_edge", st.g_ref}, {"f_edge", st.h_ref}};
    else
      j["start"] = ordered_json{{"g_vertex", st.g_ref}, {"h_vertex", st.h_ref}};
  }
  if (f64) j["numeric_mode"] = "float64";
  return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

}  // namespace mpg
