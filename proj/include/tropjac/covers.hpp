#pragma once

#include "tropjac/metric_graph.hpp"
#include "tropjac/point.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropjac {

struct EdgeLift {
  std::string target;  // target edge id
  int degree = 1;      // dilation factor, 1 or 2

  friend bool operator==(const EdgeLift&, const EdgeLift&) = default;
};

/// Degree-2 harmonic morphism from an augmented source onto an unaugmented
/// target, described on models: vertices map to vertices and each source
/// edge maps onto one target edge, scaled by its dilation factor.
struct DoubleCover {
  MetricGraph target;
  MetricGraph source;
  std::map<std::string, std::string> vertex_map;   // source vertex -> target vertex
  std::map<std::string, EdgeLift> edge_map;        // source edge -> target edge
  std::map<std::string, std::string> involution;   // source vertex -> source vertex

  friend bool operator==(const DoubleCover&, const DoubleCover&) = default;
};

/// Whether the source edge runs along its target edge (tail over tail).
/// Lifts of target loops count as forward.
bool runs_forward(const DoubleCover& cover, const std::string& source_edge);

/// Image of a point of the source (or of its virtual loops) in the target.
Point image(const DoubleCover& cover, const Point& source_point);

/// Deck involution on edges: the other lift, or the edge itself if dilated.
std::string edge_involution(const DoubleCover& cover, const std::string& source_edge);

/// Dilated target edges.
CycleZ2 dilation_cycle(const DoubleCover& cover);

/// Every target edge over which the cover is free, and the number of
/// components and total genus of the open complement of the cycle.
struct ComplementData {
  std::vector<std::size_t> interior_vertices;    // target vertices off the cycle
  std::vector<std::size_t> bit_edges;            // non-forest interior edges, in id order
  int components = 0;                            // m
  int genus = 0;                                 // h
};

ComplementData complement_data(const MetricGraph& g, const CycleZ2& cycle);

/// Spanning tree of the target plus one lift bit per non-tree edge; bit 1
/// crosses the sheets (v1 -> v2', v1' -> v2).
struct FreeCoverSpec {
  std::vector<std::string> tree_edges;
  std::vector<std::string> non_tree_edges;
  std::vector<bool> bits;
};

/// Throws InvalidInput unless there is exactly one bit per non-tree edge.
FreeCoverSpec free_cover_spec(const MetricGraph& g, const std::vector<bool>& bits);

/// The 2^g degree-2 covering spaces, indexed by bits on the non-tree edges
/// of cycle_space(g) (bit i belongs to non_tree_edges[i]); bits = 0 is the
/// disconnected trivial cover. Sheets are named v and v'.
std::vector<DoubleCover> free_covers(const MetricGraph& g);
DoubleCover free_cover(const MetricGraph& g, const std::vector<bool>& bits);
DoubleCover free_cover(const MetricGraph& g, const FreeCoverSpec& spec);

/// The 2^h unramified double covers dilated exactly over `cycle`, indexed by
/// bits on complement_data(g, cycle).bit_edges. Throws PreconditionError
/// for an empty or non-even cycle.
std::vector<DoubleCover> covers_with_dilation(const MetricGraph& g, const CycleZ2& cycle);
DoubleCover dilated_cover(const MetricGraph& g, const CycleZ2& cycle, const std::vector<bool>& bits);

/// Z/2 monodromy of the cover around the fundamental cycles of the
/// undilated interior graph; a complete invariant of the cover up to
/// isomorphism over the target.
std::vector<bool> monodromy(const DoubleCover& cover);

struct CoverReport {
  bool ok = false;
  CycleZ2 dilation;
  std::vector<std::string> issues;
};

/// Checks metric compatibility, degree 2, harmonicity, vanishing
/// ramification, the genus formula on dilated points, the involution, and
/// that the dilated edges form an even subgraph.
CoverReport verify_cover(const DoubleCover& cover);

/// phi^*: x lifts to its two preimages, or to 2 x~ over dilated points.
Divisor pullback(const DoubleCover& cover, const Divisor& d);

/// phi_*: points on virtual loops go to the image of the loop's base.
Divisor pushforward(const DoubleCover& cover, const Divisor& d);

/// Source of the cover with each unit of vertex genus replaced by a loop
/// of length epsilon.
Virtualization virtual_source(const DoubleCover& cover, const Rational& epsilon = 1);

/// Deck involution on divisors of the virtualized source; a point at arc
/// length t on a virtual loop goes to arc length epsilon - t.
Divisor involution_divisor(const DoubleCover& cover, const Divisor& d, const Rational& epsilon = 1);

/// Even subgraphs whose two-torsion divisor pulls back to a principal one.
std::vector<CycleZ2> pullback_kernel(const DoubleCover& cover, const Rational& epsilon = 1);

}  // namespace tropjac
