#include "tropjac/metric_graph.hpp"

#include "tropjac/errors.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>

namespace tropjac {

std::string to_string(const Point& p) {
  if (p.is_vertex()) return p.id();
  return p.id() + "@" + to_string(p.offset());
}

std::string to_string(const Divisor& d) {
  if (d.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : d.terms()) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    long a = c < 0 ? -c : c;
    if (a != 1) out << a << "*";
    out << to_string(p);
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

MetricGraph::MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::stable_sort(vertices_.begin(), vertices_.end(),
                   [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_lookup_.emplace(vertices_[i].id, i);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_lookup_.emplace(edges_[i].id, i);

  incidences_.resize(vertices_.size());
  ends_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto t = find_vertex(edges_[e].tail);
    auto h = find_vertex(edges_[e].head);
    if (!t || !h) {
      throw InvalidInput("edge \"" + edges_[e].id + "\" references unknown vertex \"" +
                         (!t ? edges_[e].tail : edges_[e].head) + "\"");
    }
    ends_.emplace_back(*t, *h);
    incidences_[*t].push_back({e, EdgeEnd::tail});
    incidences_[*h].push_back({e, EdgeEnd::head});
  }

  component_.assign(vertices_.size(), vertices_.size());
  for (std::size_t s = 0; s < vertices_.size(); ++s) {
    if (component_[s] != vertices_.size()) continue;
    std::deque<std::size_t> queue{s};
    component_[s] = components_;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (const auto& inc : incidences_[v]) {
        std::size_t w = inc.end == EdgeEnd::tail ? ends_[inc.edge].second : ends_[inc.edge].first;
        if (component_[w] == vertices_.size()) {
          component_[w] = components_;
          queue.push_back(w);
        }
      }
    }
    ++components_;
  }
}

std::optional<std::size_t> MetricGraph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MetricGraph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t MetricGraph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw InvalidInput("unknown vertex \"" + std::string(id) + "\"");
}

std::size_t MetricGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw InvalidInput("unknown edge \"" + std::string(id) + "\"");
}

int MetricGraph::genus() const {
  int g = static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) +
          static_cast<int>(components_);
  for (const auto& v : vertices_) g += v.genus;
  return g;
}

bool MetricGraph::is_augmented() const {
  return std::any_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.genus != 0; });
}

Rational MetricGraph::total_length() const {
  Rational total = 0;
  for (const auto& e : edges_) total += e.length;
  return total;
}

// ---------------------------------------------------------------------------

Point normalize(const MetricGraph& g, const Point& p) {
  if (p.is_vertex()) {
    g.vertex_index(p.id());
    return p;
  }
  const Edge& e = g.edge(p.id());
  if (p.offset() < 0 || p.offset() > e.length) {
    throw InvalidInput("offset " + to_string(p.offset()) + " is outside edge \"" + e.id + "\"");
  }
  if (p.offset() == 0) return Point::vertex(e.tail);
  if (p.offset() == e.length) return Point::vertex(e.head);
  return p;
}

Divisor normalize(const MetricGraph& g, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.terms()) out.add(normalize(g, p), c);
  return out;
}

std::vector<std::string> validate(const MetricGraph& g) {
  std::vector<std::string> issues;
  if (g.vertices().empty()) issues.push_back("graph has no vertices");
  for (std::size_t i = 1; i < g.vertices().size(); ++i)
    if (g.vertices()[i].id == g.vertices()[i - 1].id)
      issues.push_back("duplicate vertex id \"" + g.vertices()[i].id + "\"");
  for (std::size_t i = 1; i < g.edges().size(); ++i)
    if (g.edges()[i].id == g.edges()[i - 1].id)
      issues.push_back("duplicate edge id \"" + g.edges()[i].id + "\"");
  for (const auto& v : g.vertices())
    if (v.genus < 0) issues.push_back("vertex \"" + v.id + "\" has negative genus");
  for (const auto& e : g.edges())
    if (e.length <= 0)
      issues.push_back("edge \"" + e.id + "\" has nonpositive length " + to_string(e.length));
  if (g.component_count() > 1)
    issues.push_back("graph is disconnected (" + std::to_string(g.component_count()) + " components)");
  return issues;
}

// ---------------------------------------------------------------------------

CycleZ2 symmetric_difference(const CycleZ2& a, const CycleZ2& b) {
  CycleZ2 out;
  std::set_symmetric_difference(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                                std::inserter(out.edges, out.edges.end()));
  return out;
}

std::size_t cycle_degree(const MetricGraph& g, const CycleZ2& c, std::size_t v) {
  std::size_t deg = 0;
  for (const auto& inc : g.incidences(v))
    if (c.edges.count(g.edges()[inc.edge].id)) ++deg;
  return deg;
}

bool is_even(const MetricGraph& g, const CycleZ2& c) {
  for (const auto& id : c.edges)
    if (!g.find_edge(id)) return false;
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    if (cycle_degree(g, c, v) % 2 != 0) return false;
  return true;
}

bool is_closed(const MetricGraph& g, const SignedCycle& c) {
  if (c.coeff.size() != g.edges().size()) return false;
  std::vector<long> boundary(g.vertices().size(), 0);
  for (std::size_t e = 0; e < c.coeff.size(); ++e) {
    boundary[g.head_index(e)] += c.coeff[e];
    boundary[g.tail_index(e)] -= c.coeff[e];
  }
  return std::all_of(boundary.begin(), boundary.end(), [](long b) { return b == 0; });
}

std::vector<std::string> SpanningForest::tree_edge_ids(const MetricGraph& g) const {
  std::vector<std::string> ids;
  for (std::size_t e = 0; e < in_tree.size(); ++e)
    if (in_tree[e]) ids.push_back(g.edges()[e].id);
  return ids;
}

SpanningForest spanning_forest(const MetricGraph& g) {
  const std::size_t n = g.vertices().size();
  SpanningForest f;
  f.in_tree.assign(g.edges().size(), false);
  f.parent_edge.assign(n, std::nullopt);
  f.parent.assign(n, n);
  f.depth.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (f.parent[s] != n) continue;
    f.roots.push_back(s);
    f.parent[s] = s;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      // Incidences are built in edge-id order.
      for (const auto& inc : g.incidences(v)) {
        std::size_t w = inc.end == EdgeEnd::tail ? g.head_index(inc.edge) : g.tail_index(inc.edge);
        if (f.parent[w] != n) continue;
        f.parent[w] = v;
        f.parent_edge[w] = inc.edge;
        f.depth[w] = f.depth[v] + 1;
        f.in_tree[inc.edge] = true;
        queue.push_back(w);
      }
    }
  }
  return f;
}

SignedCycle tree_path(const MetricGraph& g, const SpanningForest& forest, std::size_t from,
                      std::size_t to) {
  SignedCycle path{std::vector<long>(g.edges().size(), 0)};
  // Walking up from `to` adds parent->child steps (reversed later);
  // walking up from `from` adds child->parent steps.
  auto step_up = [&](std::size_t v, long direction) {
    std::size_t e = *forest.parent_edge[v];
    // Traversal child -> parent has sign +1 when the edge runs child->parent.
    long sign = g.tail_index(e) == v && g.head_index(e) == forest.parent[v] ? 1 : -1;
    if (g.tail_index(e) == g.head_index(e)) sign = 1;
    path.coeff[e] += direction * sign;
    return forest.parent[v];
  };
  std::size_t a = from, b = to;
  while (forest.depth[a] > forest.depth[b]) a = step_up(a, 1);
  while (forest.depth[b] > forest.depth[a]) b = step_up(b, -1);
  while (a != b) {
    a = step_up(a, 1);
    b = step_up(b, -1);
  }
  return path;
}

CycleSpace cycle_space(const MetricGraph& g, bool enumerate_even) {
  CycleSpace space;
  space.forest = spanning_forest(g);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (space.forest.in_tree[e]) continue;
    space.non_tree_edges.push_back(e);
    // Non-tree edge tail->head, then back from head to tail through the tree.
    SignedCycle c = tree_path(g, space.forest, g.head_index(e), g.tail_index(e));
    c.coeff[e] += 1;
    space.basis.push_back(std::move(c));
  }
  if (enumerate_even) {
    const std::size_t genus = space.basis.size();
    if (genus > 20) throw PreconditionError("too many even subgraphs to enumerate");
    std::set<CycleZ2> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << genus); ++mask) {
      std::vector<int> parity(g.edges().size(), 0);
      for (std::size_t i = 0; i < genus; ++i) {
        if (!(mask >> i & 1)) continue;
        for (std::size_t e = 0; e < parity.size(); ++e) parity[e] ^= static_cast<int>(space.basis[i].coeff[e] & 1);
      }
      CycleZ2 c;
      for (std::size_t e = 0; e < parity.size(); ++e)
        if (parity[e]) c.edges.insert(g.edges()[e].id);
      seen.insert(std::move(c));
    }
    space.even_subgraphs.assign(seen.begin(), seen.end());
  }
  return space;
}

std::vector<bool> fundamental_coordinates(const MetricGraph& g, const CycleSpace& space,
                                          const CycleZ2& c) {
  std::vector<bool> bits;
  for (std::size_t e : space.non_tree_edges) bits.push_back(c.edges.count(g.edges()[e].id) > 0);
  return bits;
}

GenusAndCanonical genus_and_canonical(const MetricGraph& g) {
  auto issues = validate(g);
  if (!issues.empty()) throw PreconditionError("invalid graph: " + issues.front());
  GenusAndCanonical out;
  out.genus = g.genus();
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    long k = static_cast<long>(g.valence(v)) - 2 + 2L * g.vertices()[v].genus;
    out.canonical.add(Point::vertex(g.vertices()[v].id), k);
  }
  return out;
}

// ---------------------------------------------------------------------------

Refinement refine(const MetricGraph& g, const std::vector<Point>& points) {
  Refinement r;
  for (const auto& raw : points) {
    Point p = normalize(g, raw);
    if (p.is_vertex()) continue;
    auto& cuts = r.cuts_[p.id()];
    if (std::find(cuts.begin(), cuts.end(), p.offset()) == cuts.end()) cuts.push_back(p.offset());
  }
  for (auto& [id, cuts] : r.cuts_) std::sort(cuts.begin(), cuts.end());

  std::vector<Vertex> vertices = g.vertices();
  std::vector<Edge> edges;
  std::vector<std::pair<std::string, Rational>> origin;
  for (const auto& e : g.edges()) {
    r.original_length_[e.id] = e.length;
    r.original_ends_[e.id] = {e.tail, e.head};
    auto it = r.cuts_.find(e.id);
    if (it == r.cuts_.end()) {
      edges.push_back(e);
      origin.emplace_back(e.id, Rational(0));
      continue;
    }
    const auto& cuts = it->second;
    std::string prev = e.tail;
    Rational prev_offset = 0;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
      std::string next;
      Rational next_offset;
      if (k < cuts.size()) {
        next = e.id + "@" + to_string(cuts[k]);
        next_offset = cuts[k];
        vertices.push_back({next, 0});
      } else {
        next = e.head;
        next_offset = e.length;
      }
      edges.push_back({e.id + "#" + std::to_string(k), prev, next, next_offset - prev_offset});
      origin.emplace_back(e.id, prev_offset);
      prev = next;
      prev_offset = next_offset;
    }
  }
  r.graph_ = MetricGraph(std::move(vertices), edges);
  r.origin_edge_.resize(r.graph_.edges().size());
  r.origin_start_.resize(r.graph_.edges().size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::size_t idx = r.graph_.edge_index(edges[i].id);
    r.origin_edge_[idx] = origin[i].first;
    r.origin_start_[idx] = origin[i].second;
  }
  return r;
}

Point Refinement::to_original(const Point& refined) const {
  if (refined.is_vertex()) {
    std::size_t v = graph_.vertex_index(refined.id());
    const std::string& id = graph_.vertices()[v].id;
    auto at = id.rfind('@');
    if (at != std::string::npos) {
      std::string edge = id.substr(0, at);
      if (cuts_.count(edge)) return Point::on_edge(edge, parse_rational(id.substr(at + 1)));
    }
    return Point::vertex(id);
  }
  std::size_t e = graph_.edge_index(refined.id());
  return Point::on_edge(origin_edge_[e], origin_start_[e] + refined.offset());
}

Point Refinement::to_refined(const Point& original) const {
  if (original.is_vertex()) return original;
  auto it = cuts_.find(original.id());
  if (it == cuts_.end()) {
    if (!original_length_.count(original.id()))
      throw InvalidInput("unknown edge \"" + original.id() + "\"");
    return original;
  }
  const auto& cuts = it->second;
  Rational start = 0;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    Rational end = k < cuts.size() ? cuts[k] : original_length_.at(original.id());
    if (original.offset() == start) {
      if (k == 0) return Point::vertex(original_ends_.at(original.id()).first);
      return Point::vertex(original.id() + "@" + to_string(start));
    }
    if (original.offset() < end) {
      return Point::on_edge(original.id() + "#" + std::to_string(k), original.offset() - start);
    }
    start = end;
  }
  return Point::vertex(original_ends_.at(original.id()).second);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> dijkstra(const MetricGraph& g, const std::vector<std::size_t>& sources) {
  const std::size_t n = g.vertices().size();
  std::vector<std::optional<Rational>> dist(n);
  using Item = std::pair<Rational, std::size_t>;
  std::set<Item> frontier;
  for (auto s : sources) {
    dist[s] = Rational(0);
    frontier.insert({Rational(0), s});
  }
  while (!frontier.empty()) {
    auto [d, v] = *frontier.begin();
    frontier.erase(frontier.begin());
    for (const auto& inc : g.incidences(v)) {
      std::size_t w = inc.end == EdgeEnd::tail ? g.head_index(inc.edge) : g.tail_index(inc.edge);
      Rational cand = d + g.edges()[inc.edge].length;
      if (!dist[w] || cand < *dist[w]) {
        if (dist[w]) frontier.erase({*dist[w], w});
        dist[w] = cand;
        frontier.insert({cand, w});
      }
    }
  }
  std::vector<Rational> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!dist[v]) throw PreconditionError("distance field requires a connected graph");
    out[v] = *dist[v];
  }
  return out;
}

struct SourceData {
  std::vector<std::size_t> vertices;
  std::vector<bool> edges;
};

SourceData locate_source(const Refinement& r, const DistanceSource& source) {
  const MetricGraph& g = r.graph();
  SourceData s;
  s.edges.assign(g.edges().size(), false);
  if (const auto* p = std::get_if<Point>(&source)) {
    s.vertices.push_back(g.vertex_index(r.to_refined(*p).id()));
    return s;
  }
  const auto& cycle = std::get<CycleZ2>(source);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (!cycle.edges.count(r.origin_edge(e))) continue;
    s.edges[e] = true;
    s.vertices.push_back(g.tail_index(e));
    s.vertices.push_back(g.head_index(e));
  }
  return s;
}

}  // namespace

Rational DistanceField::at(const Point& original) const {
  Point p = refinement.to_refined(original);
  const MetricGraph& g = refinement.graph();
  if (p.is_vertex()) return value[g.vertex_index(p.id())];
  std::size_t e = g.edge_index(p.id());
  if (on_source[e]) return 0;
  const Rational& a = value[g.tail_index(e)];
  const Rational& b = value[g.head_index(e)];
  // Segments of the final refinement are monotone.
  return a + (b - a) * p.offset() / g.edges()[e].length;
}

DistanceField distance_field(const MetricGraph& g, const DistanceSource& source) {
  std::vector<Point> anchor;
  if (const auto* p = std::get_if<Point>(&source)) {
    anchor.push_back(normalize(g, *p));
  } else {
    const auto& cycle = std::get<CycleZ2>(source);
    if (cycle.empty()) throw PreconditionError("distance field needs a nonempty source");
    for (const auto& id : cycle.edges) g.edge_index(id);
  }

  // First pass: distances on the model refined at the source.
  Refinement coarse = refine(g, anchor);
  SourceData src = locate_source(coarse, source);
  std::vector<Rational> d = dijkstra(coarse.graph(), src.vertices);

  std::vector<Point> ridges;
  const MetricGraph& cg = coarse.graph();
  for (std::size_t e = 0; e < cg.edges().size(); ++e) {
    if (src.edges[e]) continue;
    const Rational& len = cg.edges()[e].length;
    Rational t = (len + d[cg.head_index(e)] - d[cg.tail_index(e)]) / 2;
    if (t > 0 && t < len) ridges.push_back(coarse.to_original(Point::on_edge(cg.edges()[e].id, t)));
  }
  std::sort(ridges.begin(), ridges.end());

  std::vector<Point> cuts = anchor;
  cuts.insert(cuts.end(), ridges.begin(), ridges.end());
  DistanceField field{refine(g, cuts), {}, {}, ridges};
  SourceData fine = locate_source(field.refinement, source);
  field.value = dijkstra(field.refinement.graph(), fine.vertices);
  field.on_source = fine.edges;
  return field;
}

// ---------------------------------------------------------------------------

Virtualization virtualize(const MetricGraph& g, const Rational& epsilon) {
  if (epsilon <= 0) throw PreconditionError("virtual loop length must be positive");
  Virtualization out;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges = g.edges();
  for (const auto& v : g.vertices()) {
    vertices.push_back({v.id, 0});
    for (int k = 1; k <= v.genus; ++k) {
      std::string id = v.id + "~" + std::to_string(k);
      if (g.find_edge(id)) throw PreconditionError("virtual loop id \"" + id + "\" collides with an edge");
      edges.push_back({id, v.id, v.id, epsilon});
      out.loops.push_back({id, v.id});
    }
  }
  out.graph = MetricGraph(std::move(vertices), std::move(edges));
  return out;
}

}  // namespace tropjac
