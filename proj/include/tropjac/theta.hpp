#pragma once

#include "tropjac/metric_graph.hpp"
#include "tropjac/point.hpp"

#include <cstdint>
#include <vector>

namespace tropjac {

/// A closed trail, as (edge index, traversed tail->head) steps.
using Circuit = std::vector<std::pair<std::size_t, bool>>;

/// Greedy closed-trail decomposition of an even subgraph. With variant 0,
/// trails start at the smallest unused edge id and extend along the
/// smallest unused incident edge; other variants shuffle these choices and
/// the traversal direction deterministically.
std::vector<Circuit> circuit_decomposition(const MetricGraph& g, const CycleZ2& cycle,
                                           std::uint64_t variant = 0);

struct ThetaCharacteristic {
  CycleZ2 cycle;
  Divisor divisor;   // sum over x of (indeg(x) - 1) x
  bool effective = false;
  DistanceField field;
};

/// L_0 (empty cycle, distance to p) or L_gamma (distance to the cycle,
/// which is oriented totally cyclically). Augmented graphs are replaced by
/// their virtualization with unit loops. Throws PreconditionError when the
/// cycle is not even.
ThetaCharacteristic theta_characteristic(const MetricGraph& g, const CycleZ2& cycle, const Point& p,
                                         std::uint64_t variant = 0);

/// L_gamma - L_0, both built from the first vertex.
Divisor two_torsion_divisor(const MetricGraph& g, const CycleZ2& cycle);

/// One characteristic per even subgraph, in cycle_space order (empty first).
std::vector<ThetaCharacteristic> enumerate_theta(const MetricGraph& g);

}  // namespace tropjac
