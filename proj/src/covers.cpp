#include "tropjac/covers.hpp"

#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"
#include "tropjac/theta.hpp"

#include <algorithm>
#include <sstream>

namespace tropjac {

namespace {

std::string prime(const std::string& id) { return id + "'"; }

void require_unaugmented(const MetricGraph& g) {
  if (g.is_augmented()) throw PreconditionError("double covers need an unaugmented target");
  if (g.vertices().empty()) throw PreconditionError("target graph has no vertices");
}

const std::string& target_vertex(const DoubleCover& c, const std::string& v) {
  auto it = c.vertex_map.find(v);
  if (it == c.vertex_map.end()) throw PreconditionError("source vertex " + v + " is not mapped");
  return it->second;
}

const EdgeLift& lift_of(const DoubleCover& c, const std::string& e) {
  auto it = c.edge_map.find(e);
  if (it == c.edge_map.end()) throw PreconditionError("source edge " + e + " is not mapped");
  return it->second;
}

/// Preimage edges of each target edge, in source id order.
std::map<std::string, std::vector<std::string>> edge_fibers(const DoubleCover& c) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [src, lift] : c.edge_map) out[lift.target].push_back(src);
  return out;
}

std::map<std::string, std::vector<std::string>> vertex_fibers(const DoubleCover& c) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [src, tgt] : c.vertex_map) out[tgt].push_back(src);
  return out;
}

std::map<std::string, std::string> loop_bases(const MetricGraph& source) {
  std::map<std::string, std::string> out;
  for (const auto& l : virtualize(source).loops) out[l.edge] = l.base;
  return out;
}

}  // namespace

bool runs_forward(const DoubleCover& cover, const std::string& source_edge) {
  const Edge& se = cover.source.edge(source_edge);
  const Edge& te = cover.target.edge(lift_of(cover, source_edge).target);
  if (te.is_loop()) return true;
  return target_vertex(cover, se.tail) == te.tail;
}

Point image(const DoubleCover& cover, const Point& p) {
  if (p.is_vertex()) return Point::vertex(target_vertex(cover, p.id()));
  if (!cover.source.find_edge(p.id())) {
    auto bases = loop_bases(cover.source);
    auto it = bases.find(p.id());
    if (it == bases.end()) throw InvalidInput("unknown edge " + p.id());
    return Point::vertex(target_vertex(cover, it->second));
  }
  const EdgeLift& lift = lift_of(cover, p.id());
  const Edge& te = cover.target.edge(lift.target);
  Rational s = lift.degree * p.offset();
  if (!runs_forward(cover, p.id())) s = te.length - s;
  return normalize(cover.target, Point::on_edge(te.id, s));
}

std::string edge_involution(const DoubleCover& cover, const std::string& source_edge) {
  const std::string& target = lift_of(cover, source_edge).target;
  for (const auto& [src, lift] : cover.edge_map)
    if (lift.target == target && src != source_edge) return src;
  return source_edge;
}

CycleZ2 dilation_cycle(const DoubleCover& cover) {
  CycleZ2 out;
  for (const auto& [src, lift] : cover.edge_map)
    if (lift.degree == 2) out.edges.insert(lift.target);
  return out;
}

ComplementData complement_data(const MetricGraph& g, const CycleZ2& cycle) {
  std::vector<bool> on_cycle(g.vertices().size(), false);
  for (const auto& id : cycle.edges) {
    std::size_t e = g.edge_index(id);
    on_cycle[g.tail_index(e)] = on_cycle[g.head_index(e)] = true;
  }
  ComplementData data;
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (std::size_t v = 0; v < g.vertices().size(); ++v)
    if (!on_cycle[v]) {
      data.interior_vertices.push_back(v);
      vs.push_back(g.vertices()[v]);
    }
  int chords = 0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (cycle.edges.count(g.edges()[e].id)) continue;
    bool t = on_cycle[g.tail_index(e)], h = on_cycle[g.head_index(e)];
    if (!t && !h) es.push_back(g.edges()[e]);
    if (t && h) ++chords;
  }
  MetricGraph interior(vs, es);
  CycleSpace space = cycle_space(interior, false);
  for (std::size_t e : space.non_tree_edges) data.bit_edges.push_back(g.edge_index(interior.edges()[e].id));
  data.components = static_cast<int>(interior.component_count()) + chords;
  data.genus = static_cast<int>(space.non_tree_edges.size());
  return data;
}

namespace {

DoubleCover build_cover(const MetricGraph& g, const CycleZ2& cycle, const std::vector<bool>& bits) {
  ComplementData data = complement_data(g, cycle);
  if (bits.size() != data.bit_edges.size())
    throw InvalidInput("expected " + std::to_string(data.bit_edges.size()) + " lift bits, got " +
                       std::to_string(bits.size()));
  std::vector<bool> crossed(g.edges().size(), false);
  for (std::size_t i = 0; i < bits.size(); ++i) crossed[data.bit_edges[i]] = bits[i];
  std::vector<bool> dilated(g.vertices().size(), true);
  for (std::size_t v : data.interior_vertices) dilated[v] = false;

  DoubleCover c;
  c.target = g;
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    const std::string& id = g.vertices()[v].id;
    if (dilated[v]) {
      int genus = static_cast<int>(cycle_degree(g, cycle, v)) / 2 - 1;
      vs.push_back({id, genus});
      c.vertex_map[id] = id;
      c.involution[id] = id;
    } else {
      vs.push_back({id, 0});
      vs.push_back({prime(id), 0});
      c.vertex_map[id] = c.vertex_map[prime(id)] = id;
      c.involution[id] = prime(id);
      c.involution[prime(id)] = id;
    }
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    std::size_t t = g.tail_index(e), h = g.head_index(e);
    if (cycle.edges.count(edge.id)) {
      es.push_back({edge.id, edge.tail, edge.head, edge.length / 2});
      c.edge_map[edge.id] = {edge.id, 2};
      continue;
    }
    std::string t0 = edge.tail, t1 = dilated[t] ? edge.tail : prime(edge.tail);
    std::string h0 = edge.head, h1 = dilated[h] ? edge.head : prime(edge.head);
    if (crossed[e]) std::swap(h0, h1);
    es.push_back({edge.id, t0, h0, edge.length});
    es.push_back({prime(edge.id), t1, h1, edge.length});
    c.edge_map[edge.id] = {edge.id, 1};
    c.edge_map[prime(edge.id)] = {edge.id, 1};
  }
  c.source = MetricGraph(std::move(vs), std::move(es));
  return c;
}

std::vector<std::vector<bool>> all_bit_vectors(std::size_t n) {
  std::vector<std::vector<bool>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = (mask >> (n - 1 - i)) & 1;
    out.push_back(std::move(bits));
  }
  return out;
}

}  // namespace

FreeCoverSpec free_cover_spec(const MetricGraph& g, const std::vector<bool>& bits) {
  CycleSpace space = cycle_space(g, false);
  if (bits.size() != space.non_tree_edges.size())
    throw InvalidInput("expected " + std::to_string(space.non_tree_edges.size()) +
                       " lift bits, got " + std::to_string(bits.size()));
  FreeCoverSpec spec;
  spec.tree_edges = space.forest.tree_edge_ids(g);
  for (std::size_t e : space.non_tree_edges) spec.non_tree_edges.push_back(g.edges()[e].id);
  spec.bits = bits;
  return spec;
}

DoubleCover free_cover(const MetricGraph& g, const std::vector<bool>& bits) {
  require_unaugmented(g);
  return build_cover(g, CycleZ2{}, bits);
}

DoubleCover free_cover(const MetricGraph& g, const FreeCoverSpec& spec) {
  FreeCoverSpec expected = free_cover_spec(g, spec.bits);
  if (expected.tree_edges != spec.tree_edges || expected.non_tree_edges != spec.non_tree_edges)
    throw InvalidInput("cover spec does not use the canonical spanning tree");
  return free_cover(g, spec.bits);
}

std::vector<DoubleCover> free_covers(const MetricGraph& g) {
  require_unaugmented(g);
  std::vector<DoubleCover> out;
  for (const auto& bits : all_bit_vectors(static_cast<std::size_t>(g.genus())))
    out.push_back(build_cover(g, CycleZ2{}, bits));
  return out;
}

DoubleCover dilated_cover(const MetricGraph& g, const CycleZ2& cycle, const std::vector<bool>& bits) {
  require_unaugmented(g);
  if (cycle.empty()) throw PreconditionError("dilation cycle is empty; use free covers");
  if (!is_even(g, cycle)) throw PreconditionError("dilation cycle is not an even subgraph");
  return build_cover(g, cycle, bits);
}

std::vector<DoubleCover> covers_with_dilation(const MetricGraph& g, const CycleZ2& cycle) {
  require_unaugmented(g);
  if (cycle.empty()) throw PreconditionError("dilation cycle is empty; use free covers");
  if (!is_even(g, cycle)) throw PreconditionError("dilation cycle is not an even subgraph");
  std::vector<DoubleCover> out;
  for (const auto& bits : all_bit_vectors(complement_data(g, cycle).bit_edges.size()))
    out.push_back(build_cover(g, cycle, bits));
  return out;
}

std::vector<bool> monodromy(const DoubleCover& cover) {
  const MetricGraph& g = cover.target;
  ComplementData data = complement_data(g, dilation_cycle(cover));
  auto vfib = vertex_fibers(cover);
  auto efib = edge_fibers(cover);
  // Sheet label: 1 for the larger of the two preimage ids.
  auto sheet = [&](const std::string& src) {
    const auto& fiber = vfib.at(target_vertex(cover, src));
    return fiber.size() == 2 && src == fiber[1];
  };
  std::vector<bool> crossing(g.edges().size(), false);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    auto it = efib.find(g.edges()[e].id);
    if (it == efib.end()) continue;
    const Edge& lift = cover.source.edge(it->second.front());
    crossing[e] = sheet(lift.tail) != sheet(lift.head);
  }
  // Walk each bit edge's fundamental cycle inside the interior graph.
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  std::vector<bool> interior(g.vertices().size(), false);
  for (std::size_t v : data.interior_vertices) {
    interior[v] = true;
    vs.push_back(g.vertices()[v]);
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (interior[g.tail_index(e)] && interior[g.head_index(e)]) es.push_back(g.edges()[e]);
  MetricGraph inner(vs, es);
  CycleSpace space = cycle_space(inner, false);
  std::vector<bool> out;
  for (const auto& cyc : space.basis) {
    bool parity = false;
    for (std::size_t e = 0; e < cyc.coeff.size(); ++e)
      if (cyc.coeff[e] % 2 != 0) parity ^= crossing[g.edge_index(inner.edges()[e].id)];
    out.push_back(parity);
  }
  return out;
}

CoverReport verify_cover(const DoubleCover& cover) {
  CoverReport report;
  auto issue = [&](const std::string& s) { report.issues.push_back(s); };
  const MetricGraph& tg = cover.target;
  const MetricGraph& sg = cover.source;
  if (tg.is_augmented()) issue("target is augmented");
  for (const auto& s : validate(tg)) issue("target: " + s);

  // Maps must be total and land in the target.
  for (const auto& v : sg.vertices()) {
    auto it = cover.vertex_map.find(v.id);
    if (it == cover.vertex_map.end()) issue("vertex " + v.id + " has no image");
    else if (!tg.find_vertex(it->second)) issue("vertex " + v.id + " maps to unknown " + it->second);
  }
  for (const auto& e : sg.edges()) {
    auto it = cover.edge_map.find(e.id);
    if (it == cover.edge_map.end()) issue("edge " + e.id + " has no image");
    else if (!tg.find_edge(it->second.target)) issue("edge " + e.id + " maps to unknown " + it->second.target);
    else if (it->second.degree != 1 && it->second.degree != 2) issue("edge " + e.id + " has degree outside {1,2}");
  }
  if (cover.vertex_map.size() != sg.vertices().size() || cover.edge_map.size() != sg.edges().size())
    issue("maps mention ids absent from the source");
  if (!report.issues.empty()) return report;

  report.dilation = dilation_cycle(cover);

  // Edges: endpoints over endpoints, metric compatibility, fiber degree.
  std::map<std::string, int> edge_degree;
  for (const auto& se : sg.edges()) {
    const EdgeLift& lift = cover.edge_map.at(se.id);
    const Edge& te = tg.edge(lift.target);
    edge_degree[te.id] += lift.degree;
    const std::string& a = cover.vertex_map.at(se.tail);
    const std::string& b = cover.vertex_map.at(se.head);
    if (!((a == te.tail && b == te.head) || (a == te.head && b == te.tail)))
      issue("edge " + se.id + " does not lie over " + te.id);
    if (se.length * lift.degree != te.length)
      issue("edge " + se.id + " has length " + to_string(se.length) + " but maps onto " + te.id +
            " of length " + to_string(te.length) + " with degree " + std::to_string(lift.degree));
  }
  for (const auto& te : tg.edges())
    if (edge_degree[te.id] != 2)
      issue("target edge " + te.id + " has fiber degree " + std::to_string(edge_degree[te.id]));

  // Vertices: harmonicity, degree, ramification.
  std::map<std::string, int> vertex_degree;
  std::map<std::string, int> local_degree;
  for (std::size_t sv = 0; sv < sg.vertices().size(); ++sv) {
    const Vertex& v = sg.vertices()[sv];
    const std::string& x = cover.vertex_map.at(v.id);
    std::size_t tv = tg.vertex_index(x);
    // Target tangent directions at x, keyed by (edge, end).
    std::map<std::pair<std::size_t, int>, int> sums;
    for (const auto& inc : tg.incidences(tv)) sums[{inc.edge, inc.end == EdgeEnd::tail ? 0 : 1}] = 0;
    for (const auto& inc : sg.incidences(sv)) {
      const Edge& se = sg.edges()[inc.edge];
      const EdgeLift& lift = cover.edge_map.at(se.id);
      std::size_t te = tg.edge_index(lift.target);
      int end = inc.end == EdgeEnd::tail ? 0 : 1;
      if (!runs_forward(cover, se.id)) end = 1 - end;
      auto it = sums.find({te, end});
      if (it == sums.end()) {
        issue("edge-end of " + se.id + " at " + v.id + " does not map to a direction at " + x);
        continue;
      }
      it->second += lift.degree;
    }
    int d = sums.empty() ? 1 : sums.begin()->second;
    for (const auto& [dir, s] : sums)
      if (s != d) {
        issue("not harmonic at " + v.id);
        break;
      }
    local_degree[v.id] = d;
    vertex_degree[x] += d;
    long k_source = static_cast<long>(sg.valence(sv)) - 2 + 2 * v.genus;
    long k_target = static_cast<long>(tg.valence(tv)) - 2 + 2 * tg.vertices()[tv].genus;
    if (k_source - d * k_target != 0) issue("ramified at " + v.id);
    if (d == 2) {
      int expect = static_cast<int>(cycle_degree(tg, report.dilation, tv)) / 2 - 1;
      if (v.genus != expect) issue("vertex " + v.id + " should have genus " + std::to_string(expect));
    } else if (v.genus != 0) {
      issue("undilated vertex " + v.id + " has positive genus");
    }
  }
  for (const auto& tv : tg.vertices())
    if (vertex_degree[tv.id] != 2)
      issue("target vertex " + tv.id + " has fiber degree " + std::to_string(vertex_degree[tv.id]));

  // Involution: swaps the sheets, fixes exactly the dilated part.
  for (const auto& v : sg.vertices()) {
    auto it = cover.involution.find(v.id);
    if (it == cover.involution.end() || !sg.find_vertex(it->second)) {
      issue("involution undefined at " + v.id);
      continue;
    }
    const std::string& w = it->second;
    auto back = cover.involution.find(w);
    if (back == cover.involution.end() || back->second != v.id) issue("involution is not an involution at " + v.id);
    if (cover.vertex_map.at(w) != cover.vertex_map.at(v.id)) issue("involution leaves the fiber at " + v.id);
    if ((w == v.id) != (local_degree[v.id] == 2)) issue("involution has wrong fixed points at " + v.id);
  }
  if (cover.involution.size() != sg.vertices().size()) issue("involution mentions unknown vertices");
  if (report.issues.empty()) {
    for (const auto& se : sg.edges()) {
      const Edge& other = sg.edge(edge_involution(cover, se.id));
      auto ends = [&](const Edge& e) {
        return runs_forward(cover, e.id) ? std::pair{e.tail, e.head} : std::pair{e.head, e.tail};
      };
      auto [a, b] = ends(se);
      auto [c, d] = ends(other);
      if (cover.involution.at(a) != c || cover.involution.at(b) != d)
        issue("involution does not carry edge " + se.id + " onto " + other.id);
    }
  }

  if (!is_even(tg, report.dilation)) issue("dilated edges do not form an even subgraph");
  report.ok = report.issues.empty();
  return report;
}

Divisor pullback(const DoubleCover& cover, const Divisor& d) {
  auto vfib = vertex_fibers(cover);
  auto efib = edge_fibers(cover);
  Divisor out;
  for (const auto& [raw, c] : d.terms()) {
    Point p = normalize(cover.target, raw);
    if (p.is_vertex()) {
      const auto& fiber = vfib.at(p.id());
      for (const auto& v : fiber) out.add(Point::vertex(v), fiber.size() == 1 ? 2 * c : c);
      continue;
    }
    const Edge& te = cover.target.edge(p.id());
    for (const auto& se : efib.at(te.id)) {
      const EdgeLift& lift = cover.edge_map.at(se);
      Rational s = runs_forward(cover, se) ? p.offset() : te.length - p.offset();
      out.add(Point::on_edge(se, s / lift.degree), lift.degree == 2 ? 2 * c : c);
    }
  }
  return normalize(cover.source, out);
}

Divisor pushforward(const DoubleCover& cover, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.terms()) out.add(image(cover, p), c);
  return out;
}

Virtualization virtual_source(const DoubleCover& cover, const Rational& epsilon) {
  return virtualize(cover.source, epsilon);
}

Divisor involution_divisor(const DoubleCover& cover, const Divisor& d, const Rational& epsilon) {
  Virtualization sharp = virtual_source(cover, epsilon);
  std::map<std::string, std::string> bases;
  for (const auto& l : sharp.loops) bases[l.edge] = l.base;
  Divisor out;
  for (const auto& [raw, c] : d.terms()) {
    Point p = normalize(sharp.graph, raw);
    if (p.is_vertex()) {
      out.add(Point::vertex(cover.involution.at(p.id())), c);
    } else if (bases.count(p.id())) {
      out.add(Point::on_edge(p.id(), epsilon - p.offset()), c);
    } else {
      const std::string& other = edge_involution(cover, p.id());
      const EdgeLift& lift = cover.edge_map.at(p.id());
      const Edge& te = cover.target.edge(lift.target);
      Rational s = lift.degree * p.offset();
      if (!runs_forward(cover, p.id())) s = te.length - s;
      if (!runs_forward(cover, other)) s = te.length - s;
      out.add(Point::on_edge(other, s / lift.degree), c);
    }
  }
  return normalize(sharp.graph, out);
}

std::vector<CycleZ2> pullback_kernel(const DoubleCover& cover, const Rational& epsilon) {
  const MetricGraph sharp = virtual_source(cover, epsilon).graph;
  std::vector<CycleZ2> out;
  for (const auto& cycle : cycle_space(cover.target).even_subgraphs) {
    Divisor up = normalize(sharp, pullback(cover, two_torsion_divisor(cover.target, cycle)));
    if (is_principal(sharp, up).principal) out.push_back(cycle);
  }
  return out;
}

}  // namespace tropjac
