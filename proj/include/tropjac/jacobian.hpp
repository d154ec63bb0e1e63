#pragma once

#include "tropjac/linalg.hpp"
#include "tropjac/metric_graph.hpp"
#include "tropjac/point.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropjac {

/// Fundamental cycle basis together with its Gram matrix under the
/// edge-length inner product <a, b> = sum_e len(e) a(e) b(e).
struct PeriodLattice {
  CycleSpace cycles;  // even subgraphs are not enumerated here
  RationalMatrix gram;
  RationalMatrix gram_inverse;

  std::size_t genus() const { return cycles.basis.size(); }
};

/// Throws PreconditionError for augmented graphs; virtualize them first.
PeriodLattice period_lattice(const MetricGraph& g);

/// A 1-chain recorded as signed traversed length per edge id.
using Chain = std::map<std::string, Rational>;

/// Path from `from` to `to` through the spanning forest (both points in
/// the same component).
Chain forest_path(const MetricGraph& g, const SpanningForest& forest, const Point& from,
                  const Point& to);

/// Pairing of a chain against each basis cycle.
std::vector<Rational> chain_coordinates(const MetricGraph& g, const PeriodLattice& lattice,
                                        const Chain& chain);

struct JacobianPoint {
  std::vector<Rational> coords;

  friend bool operator==(const JacobianPoint&, const JacobianPoint&) = default;
  friend bool operator<(const JacobianPoint& a, const JacobianPoint& b) { return a.coords < b.coords; }
};

struct PathCertificate {
  std::vector<Point> basepoints;                 // one per connected component
  std::vector<std::pair<Point, Chain>> paths;    // one per support point
};

struct AbelJacobiImage {
  JacobianPoint point;
  std::vector<long> component_degrees;
  PathCertificate certificate;
};

/// Abel-Jacobi image of d, integrating along forest paths from the
/// basepoint of each support point's component. `basepoints` may name a
/// point in some components; the others default to their forest root.
/// Throws PreconditionError if deg d != 0.
AbelJacobiImage abel_jacobi(const MetricGraph& g, const PeriodLattice& lattice, const Divisor& d,
                            const std::vector<Point>& basepoints = {});

/// True iff gram^{-1} v is integral. Throws PreconditionError on a
/// dimension mismatch.
bool lattice_contains(const PeriodLattice& lattice, const std::vector<Rational>& v);

/// gram * frac(gram^{-1} v).
JacobianPoint canonical(const PeriodLattice& lattice, const std::vector<Rational>& v);

/// Canonical representatives of the m^g classes (1/m) gram z.
std::vector<JacobianPoint> torsion_points(const PeriodLattice& lattice, int m);

}  // namespace tropjac
