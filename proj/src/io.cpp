#include "tropjac/io.hpp"

#include "tropjac/errors.hpp"

#include <fstream>
#include <sstream>

namespace tropjac {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw InvalidInput(path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing field");
  return *it;
}

std::string string_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) schema(path + "." + key, "expected a string");
  return v.get<std::string>();
}

Rational rational_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) schema(path + "." + key, "expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const InvalidInput& e) {
    schema(path + "." + key, e.what());
  }
}

long integer_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer()) schema(path + "." + key, "expected an integer");
  return v.get<long>();
}

const Json& array_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) schema(path + "." + key, "expected an array");
  return v;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string signed_label(long c) { return c > 0 ? "+" + std::to_string(c) : std::to_string(c); }

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw InvalidInput(source + ":" + std::to_string(line) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Json to_json(const MetricGraph& g) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : g.vertices()) vs.push_back({{"id", v.id}, {"genus", v.genus}});
  for (const auto& e : g.edges())
    es.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", to_string(e.length)}});
  return {{"vertices", vs}, {"edges", es}};
}

Json to_json(const Point& p) {
  if (p.is_vertex()) return {{"vertex", p.id()}};
  return {{"edge", p.id()}, {"offset", to_string(p.offset())}};
}

Json to_json(const Divisor& d) {
  Json out = Json::array();
  for (const auto& [p, c] : d.terms()) out.push_back({{"at", to_json(p)}, {"coeff", c}});
  return out;
}

Json to_json(const CycleZ2& c) {
  Json out = Json::array();
  for (const auto& e : c.edges) out.push_back(e);
  return out;
}

Json to_json(const DoubleCover& c) {
  Json edges = Json::array();
  for (const auto& [src, lift] : c.edge_map)
    edges.push_back({{"src", src}, {"tgt", lift.target}, {"degree", lift.degree}});
  Json vmap = Json::object(), inv = Json::object();
  for (const auto& [s, t] : c.vertex_map) vmap[s] = t;
  for (const auto& [s, t] : c.involution) inv[s] = t;
  return {{"target", to_json(c.target)},
          {"source", to_json(c.source)},
          {"vertex_map", vmap},
          {"edge_map", edges},
          {"involution", inv}};
}

Json to_json(const JacobianPoint& p, const MetricGraph& g, const PeriodLattice& lattice) {
  Json coords = Json::array();
  for (const auto& x : p.coords) coords.push_back(to_string(x));
  Json tree = Json::array();
  for (const auto& id : lattice.cycles.forest.tree_edge_ids(g)) tree.push_back(id);
  return {{"coords", coords}, {"basis", "fundamental"}, {"tree", tree}};
}

MetricGraph graph_from_json(const Json& j, bool check) {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  const Json& jv = array_field(j, "vertices", "graph");
  for (std::size_t i = 0; i < jv.size(); ++i) {
    std::string path = "graph.vertices[" + std::to_string(i) + "]";
    Vertex v{string_field(jv[i], "id", path), 0};
    if (jv[i].contains("genus")) v.genus = static_cast<int>(integer_field(jv[i], "genus", path));
    vs.push_back(std::move(v));
  }
  const Json& je = array_field(j, "edges", "graph");
  for (std::size_t i = 0; i < je.size(); ++i) {
    std::string path = "graph.edges[" + std::to_string(i) + "]";
    es.push_back({string_field(je[i], "id", path), string_field(je[i], "tail", path),
                  string_field(je[i], "head", path), rational_field(je[i], "length", path)});
  }
  MetricGraph g(std::move(vs), std::move(es));
  if (!check) return g;
  auto issues = validate(g);
  if (!issues.empty()) throw InvalidInput("graph: " + issues.front());
  return g;
}

Point point_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  if (j.contains("vertex")) return Point::vertex(string_field(j, "vertex", path));
  if (j.contains("edge")) return Point::on_edge(string_field(j, "edge", path), rational_field(j, "offset", path));
  schema(path, "expected a vertex or an edge point");
}

Divisor divisor_from_json(const Json& j) {
  if (!j.is_array()) schema("divisor", "expected an array");
  Divisor d;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string path = "divisor[" + std::to_string(i) + "]";
    d.add(point_from_json(field(j[i], "at", path), path + ".at"), integer_field(j[i], "coeff", path));
  }
  return d;
}

CycleZ2 cycle_from_json(const Json& j) {
  if (!j.is_array()) schema("cycle", "expected an array of edge ids");
  CycleZ2 c;
  for (const auto& e : j) {
    if (!e.is_string()) schema("cycle", "expected an array of edge ids");
    c.edges.insert(e.get<std::string>());
  }
  return c;
}

DoubleCover cover_from_json(const Json& j) {
  DoubleCover c;
  c.target = graph_from_json(field(j, "target", "cover"));
  {
    const Json& s = field(j, "source", "cover");
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    const Json& jv = array_field(s, "vertices", "cover.source");
    for (std::size_t i = 0; i < jv.size(); ++i) {
      std::string path = "cover.source.vertices[" + std::to_string(i) + "]";
      Vertex v{string_field(jv[i], "id", path), 0};
      if (jv[i].contains("genus")) v.genus = static_cast<int>(integer_field(jv[i], "genus", path));
      vs.push_back(std::move(v));
    }
    const Json& je = array_field(s, "edges", "cover.source");
    for (std::size_t i = 0; i < je.size(); ++i) {
      std::string path = "cover.source.edges[" + std::to_string(i) + "]";
      es.push_back({string_field(je[i], "id", path), string_field(je[i], "tail", path),
                    string_field(je[i], "head", path), rational_field(je[i], "length", path)});
    }
    // The trivial cover has a disconnected source, so only the model is checked here.
    c.source = MetricGraph(std::move(vs), std::move(es));
  }
  for (const auto& [key, value] : field(j, "vertex_map", "cover").items()) {
    if (!value.is_string()) schema("cover.vertex_map." + key, "expected a vertex id");
    c.vertex_map[key] = value.get<std::string>();
  }
  const Json& em = array_field(j, "edge_map", "cover");
  for (std::size_t i = 0; i < em.size(); ++i) {
    std::string path = "cover.edge_map[" + std::to_string(i) + "]";
    c.edge_map[string_field(em[i], "src", path)] = {string_field(em[i], "tgt", path),
                                                    static_cast<int>(integer_field(em[i], "degree", path))};
  }
  for (const auto& [key, value] : field(j, "involution", "cover").items()) {
    if (!value.is_string()) schema("cover.involution." + key, "expected a vertex id");
    c.involution[key] = value.get<std::string>();
  }
  return c;
}

std::string to_dot(const MetricGraph& g, const Divisor& raw) {
  Divisor d = normalize(g, raw);
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& v : g.vertices()) {
    out << "  " << quoted(v.id) << " [label=" << quoted(v.id);
    if (v.genus) out << ", genus=" << v.genus;
    long c = d.coefficient(Point::vertex(v.id));
    if (c) out << ", xlabel=" << quoted(signed_label(c));
    out << "];\n";
  }
  for (const auto& e : g.edges()) {
    // Divisor points on the edge split it into a chain.
    std::vector<std::pair<Rational, long>> marks;
    for (const auto& [p, c] : d.terms())
      if (!p.is_vertex() && p.id() == e.id) marks.emplace_back(p.offset(), c);
    std::string prev = e.tail;
    Rational at = 0;
    for (const auto& [off, c] : marks) {
      std::string node = e.id + "@" + to_string(off);
      out << "  " << quoted(node) << " [shape=point, xlabel=" << quoted(signed_label(c)) << "];\n";
      out << "  " << quoted(prev) << " -- " << quoted(node) << " [edge=" << quoted(e.id)
          << ", length=" << quoted(to_string(off - at)) << "];\n";
      prev = node;
      at = off;
    }
    out << "  " << quoted(prev) << " -- " << quoted(e.head) << " [edge=" << quoted(e.id)
        << ", length=" << quoted(to_string(e.length - at));
    if (marks.empty()) out << ", label=" << quoted(e.id);
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const DoubleCover& c) {
  std::ostringstream out;
  out << "digraph Cover {\n  subgraph cluster_source {\n    label=\"source\";\n";
  for (const auto& v : c.source.vertices()) {
    out << "    " << quoted("~" + v.id) << " [label=" << quoted(v.id);
    if (v.genus) out << ", genus=" << v.genus;
    out << "];\n";
  }
  for (const auto& e : c.source.edges()) {
    const EdgeLift& lift = c.edge_map.at(e.id);
    out << "    " << quoted("~" + e.tail) << " -> " << quoted("~" + e.head) << " [arrowhead=none, label="
        << quoted(e.id) << ", length=" << quoted(to_string(e.length)) << ", degree=" << lift.degree
        << (lift.degree == 2 ? ", style=bold" : "") << "];\n";
  }
  out << "  }\n  subgraph cluster_target {\n    label=\"target\";\n";
  for (const auto& v : c.target.vertices()) out << "    " << quoted(v.id) << ";\n";
  for (const auto& e : c.target.edges())
    out << "    " << quoted(e.tail) << " -> " << quoted(e.head) << " [arrowhead=none, label=" << quoted(e.id)
        << ", length=" << quoted(to_string(e.length)) << "];\n";
  out << "  }\n";
  for (const auto& [s, t] : c.vertex_map)
    out << "  " << quoted("~" + s) << " -> " << quoted(t) << " [style=dotted];\n";
  out << "}\n";
  return out.str();
}

std::string to_tikz(const MetricGraph& g, const Divisor& raw) {
  Divisor d = normalize(g, raw);
  std::size_t n = g.vertices().size();
  std::ostringstream out;
  out << "\\begin{tikzpicture}\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = g.vertices()[i];
    out << "  \\node[circle, fill, inner sep=1.5pt, label={" << v.id;
    long c = d.coefficient(Point::vertex(v.id));
    if (c) out << ": $" << c << "$";
    out << "}] (v" << i << ") at ({90 + 360*" << i << "/" << n << "}:2) {};\n";
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    std::size_t t = g.tail_index(e), h = g.head_index(e);
    if (edge.is_loop()) {
      out << "  \\draw (v" << t << ") to[out=60, in=120, looseness=12] (v" << h << ");\n";
      continue;
    }
    out << "  \\draw (v" << t << ") -- (v" << h << ")";
    for (const auto& [p, c] : d.terms())
      if (!p.is_vertex() && p.id() == edge.id)
        out << " node[pos={" << to_string(p.offset() / edge.length) << "}, circle, fill, inner sep=1pt, label={$"
            << c << "$}] {}";
    out << ";\n";
  }
  out << "\\end{tikzpicture}\n";
  return out.str();
}

}  // namespace tropjac
