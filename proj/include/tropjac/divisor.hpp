#pragma once

#include "tropjac/metric_graph.hpp"
#include "tropjac/point.hpp"

#include <optional>
#include <vector>

namespace tropjac {

/// Continuous piecewise-linear function with integer slopes, given by its
/// values on the vertices of a refinement and linear on each refined edge.
struct PLFunction {
  Refinement refinement;
  std::vector<Rational> value;  // per refined vertex
};

/// Slope along refined edge e, from tail to head.
Rational slope(const PLFunction& f, std::size_t e);

/// ord_x(f) = sum of incoming slopes at x, reported on the original model.
/// Throws PreconditionError if some slope is not an integer.
Divisor divisor_of(const PLFunction& f);

/// Unit-subdivision view of a rational-length graph: lengths are scaled by
/// `scale` so that every edge (and every requested point) falls on integer
/// positions, and each edge becomes a path of unit segments.
class UnitSubdivision {
 public:
  UnitSubdivision(const MetricGraph& g, const std::vector<Point>& points);

  const Integer& scale() const { return scale_; }
  std::size_t size() const { return node_point_.size(); }
  const std::vector<std::size_t>& neighbours(std::size_t node) const { return adjacency_[node]; }
  std::size_t node(const Point& p) const;
  const Point& point(std::size_t node) const { return node_point_[node]; }

  std::vector<long> chips(const Divisor& d) const;
  Divisor divisor(const std::vector<long>& chips) const;

 private:
  Integer scale_;
  std::vector<Point> node_point_;
  std::map<Point, std::size_t> node_of_;
  std::vector<std::vector<std::size_t>> adjacency_;  // loops dropped, multi-edges repeated
};

struct Reduction {
  Divisor reduced;
  /// Net firing count per subdivision node; d = reduced + Laplacian(script).
  std::vector<long> script;
  UnitSubdivision subdivision;
};

/// q-reduced representative computed by Dhar's burning algorithm on the
/// unit subdivision of g.
Reduction reduce_with_script(const MetricGraph& g, const Divisor& d, const Point& q);
Divisor reduce_at(const MetricGraph& g, const Divisor& d, const Point& q);

struct Principality {
  bool principal = false;
  std::optional<PLFunction> certificate;  // div(certificate) == d when principal
};

/// Decided through the period lattice; the certificate is recovered from
/// the chip-firing script. Throws PreconditionError unless every connected
/// component carries degree 0.
Principality is_principal(const MetricGraph& g, const Divisor& d);

bool equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b);

/// An effective divisor equivalent to d, if any.
std::optional<Divisor> effective_representative(const MetricGraph& g, const Divisor& d);

/// Degree of d on each connected component of g.
std::vector<long> component_degrees(const MetricGraph& g, const Divisor& d);

/// Component index containing a point.
std::size_t component_of(const MetricGraph& g, const Point& p);

}  // namespace tropjac
