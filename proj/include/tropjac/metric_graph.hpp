#pragma once

#include "tropjac/point.hpp"
#include "tropjac/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace tropjac {

struct Vertex {
  std::string id;
  int genus = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  std::string id;
  std::string tail;
  std::string head;
  Rational length;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class EdgeEnd { tail, head };

/// One edge-end at a vertex. A loop contributes two incidences.
struct Incidence {
  std::size_t edge;
  EdgeEnd end;
};

/// Finite model of an augmented metric graph. Vertices and edges are kept
/// sorted by id; indices into vertices()/edges() are stable for the
/// lifetime of the value. Loops and parallel edges are allowed.
class MetricGraph {
 public:
  MetricGraph() = default;
  /// Throws InvalidInput if an edge names an unknown endpoint. Other
  /// defects (lengths, connectivity, duplicate ids) are left to validate().
  MetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  std::size_t vertex_index(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;
  const Vertex& vertex(std::string_view id) const { return vertices_[vertex_index(id)]; }
  const Edge& edge(std::string_view id) const { return edges_[edge_index(id)]; }

  std::size_t tail_index(std::size_t e) const { return ends_[e].first; }
  std::size_t head_index(std::size_t e) const { return ends_[e].second; }

  const std::vector<Incidence>& incidences(std::size_t v) const { return incidences_[v]; }
  std::size_t valence(std::size_t v) const { return incidences_[v].size(); }

  /// Component label per vertex, labels numbered in order of first vertex id.
  const std::vector<std::size_t>& component_of() const { return component_; }
  std::size_t component_count() const { return components_; }
  bool is_connected() const { return components_ <= 1; }

  /// |E| - |V| + #components + sum of vertex genera.
  int genus() const;
  bool is_augmented() const;
  Rational total_length() const;

  friend bool operator==(const MetricGraph& a, const MetricGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> edge_lookup_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::vector<Incidence>> incidences_;
  std::vector<std::size_t> component_;
  std::size_t components_ = 0;
};

/// Canonical form of p on g: offsets 0 and length collapse to the endpoint
/// vertex. Throws InvalidInput if p is not a point of g.
Point normalize(const MetricGraph& g, const Point& p);
Divisor normalize(const MetricGraph& g, const Divisor& d);

/// Empty iff the graph is a valid (connected) model.
std::vector<std::string> validate(const MetricGraph& g);

// ---------------------------------------------------------------------------
// Cycles

/// Even subgraph: a Z/2 cycle given by its edge ids.
struct CycleZ2 {
  std::set<std::string> edges;

  bool empty() const { return edges.empty(); }
  friend bool operator==(const CycleZ2&, const CycleZ2&) = default;
  friend bool operator<(const CycleZ2& a, const CycleZ2& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  }
};

CycleZ2 symmetric_difference(const CycleZ2& a, const CycleZ2& b);
bool is_even(const MetricGraph& g, const CycleZ2& c);
/// Number of edge-ends of c at vertex v (loops count twice).
std::size_t cycle_degree(const MetricGraph& g, const CycleZ2& c, std::size_t v);

/// Integer 1-chain indexed by edge index; a cycle when its boundary vanishes.
struct SignedCycle {
  std::vector<long> coeff;

  friend bool operator==(const SignedCycle&, const SignedCycle&) = default;
};

bool is_closed(const MetricGraph& g, const SignedCycle& c);

/// BFS spanning forest, roots at the smallest vertex id of each component,
/// edges scanned in id order.
struct SpanningForest {
  std::vector<bool> in_tree;                       // per edge
  std::vector<std::optional<std::size_t>> parent_edge;  // per vertex
  std::vector<std::size_t> parent;                 // per vertex (self at roots)
  std::vector<std::size_t> depth;                  // per vertex
  std::vector<std::size_t> roots;                  // one per component

  std::vector<std::string> tree_edge_ids(const MetricGraph& g) const;
};

SpanningForest spanning_forest(const MetricGraph& g);

/// Signed edge path from vertex `from` to vertex `to` inside the forest.
SignedCycle tree_path(const MetricGraph& g, const SpanningForest& forest, std::size_t from,
                      std::size_t to);

struct CycleSpace {
  SpanningForest forest;
  std::vector<std::size_t> non_tree_edges;  // in id order; basis[i] belongs to non_tree_edges[i]
  std::vector<SignedCycle> basis;           // fundamental cycles, oriented along their non-tree edge
  std::vector<CycleZ2> even_subgraphs;      // all 2^g, sorted (size, then lexicographic)
};

/// Fundamental cycles of the non-tree edges. The 2^g even subgraphs are
/// enumerated only when `enumerate_even` is set.
CycleSpace cycle_space(const MetricGraph& g, bool enumerate_even = true);

/// Coordinates of an even subgraph in the fundamental basis (bit i is the
/// membership of non_tree_edges[i]).
std::vector<bool> fundamental_coordinates(const MetricGraph& g, const CycleSpace& space,
                                          const CycleZ2& c);

// ---------------------------------------------------------------------------
// Canonical divisor

struct GenusAndCanonical {
  int genus = 0;
  Divisor canonical;
};

/// K(v) = val(v) - 2 + 2 g(v) on model vertices.
GenusAndCanonical genus_and_canonical(const MetricGraph& g);

// ---------------------------------------------------------------------------
// Refinement

/// A finer model of the same metric space. Cut points become vertices named
/// "<edge>@<offset>" and the pieces of a cut edge are named "<edge>#k".
class Refinement {
 public:
  const MetricGraph& graph() const { return graph_; }

  /// Maps a point of the refined model back onto the original model.
  Point to_original(const Point& refined) const;
  /// Maps a point of the original model into the refined model.
  Point to_refined(const Point& original) const;
  /// Original edge id underlying a refined edge.
  const std::string& origin_edge(std::size_t refined_edge) const { return origin_edge_[refined_edge]; }
  const Rational& origin_start(std::size_t refined_edge) const { return origin_start_[refined_edge]; }

 private:
  friend Refinement refine(const MetricGraph&, const std::vector<Point>&);

  MetricGraph graph_;
  std::vector<std::string> origin_edge_;
  std::vector<Rational> origin_start_;
  std::map<std::string, std::vector<Rational>> cuts_;       // original edge -> sorted interior cuts
  std::map<std::string, Rational> original_length_;
  std::map<std::string, std::pair<std::string, std::string>> original_ends_;
};

/// Returns a model containing every given point as a vertex. Throws
/// InvalidInput for points that are not on the graph.
Refinement refine(const MetricGraph& g, const std::vector<Point>& points);

// ---------------------------------------------------------------------------
// Distance fields

using DistanceSource = std::variant<Point, CycleZ2>;

/// Shortest-path distance to a point or to an even subgraph, stored on the
/// coarsest refinement that contains the source and every ridge point, so
/// that each refined edge carries slope +-1 (or 0 on the source).
struct DistanceField {
  Refinement refinement;
  std::vector<Rational> value;    // per refined vertex
  std::vector<bool> on_source;    // per refined edge
  std::vector<Point> ridges;      // interior maxima, as points of the original model

  /// Value at a point of the original model.
  Rational at(const Point& original) const;
};

/// Throws PreconditionError for an empty source.
DistanceField distance_field(const MetricGraph& g, const DistanceSource& source);

// ---------------------------------------------------------------------------
// Virtual loops

struct VirtualLoop {
  std::string edge;
  std::string base;
};

struct Virtualization {
  MetricGraph graph;               // genus identically 0
  std::vector<VirtualLoop> loops;  // one per unit of vertex genus
};

/// Replaces each unit of vertex genus by a loop of length epsilon, named
/// "<vertex>~<k>". Throws PreconditionError if epsilon <= 0.
Virtualization virtualize(const MetricGraph& g, const Rational& epsilon = 1);

}  // namespace tropjac
