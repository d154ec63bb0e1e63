#include "tropjac/theta.hpp"

#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"

#include <algorithm>
#include <random>

namespace tropjac {

std::vector<Circuit> circuit_decomposition(const MetricGraph& g, const CycleZ2& cycle,
                                           std::uint64_t variant) {
  if (!is_even(g, cycle)) throw PreconditionError("edge set is not an even subgraph");
  std::mt19937_64 rng(variant);
  std::vector<bool> unused(g.edges().size(), false);
  std::vector<std::size_t> order;
  for (const auto& id : cycle.edges) {
    std::size_t e = g.edge_index(id);
    unused[e] = true;
    order.push_back(e);
  }
  if (variant != 0) std::shuffle(order.begin(), order.end(), rng);

  std::vector<Circuit> circuits;
  for (std::size_t first : order) {
    if (!unused[first]) continue;
    bool forward = variant == 0 || (rng() & 1);
    Circuit circuit;
    std::size_t start = forward ? g.tail_index(first) : g.head_index(first);
    std::size_t at = forward ? g.head_index(first) : g.tail_index(first);
    unused[first] = false;
    circuit.emplace_back(first, forward);
    while (at != start) {
      std::vector<Incidence> options;
      for (const auto& inc : g.incidences(at))
        if (unused[inc.edge]) options.push_back(inc);
      // Even degrees guarantee a way on until the trail closes.
      const Incidence& pick = variant == 0 ? options.front() : options[rng() % options.size()];
      bool fwd = pick.end == EdgeEnd::tail;
      unused[pick.edge] = false;
      circuit.emplace_back(pick.edge, fwd);
      at = fwd ? g.head_index(pick.edge) : g.tail_index(pick.edge);
    }
    circuits.push_back(std::move(circuit));
  }
  return circuits;
}

ThetaCharacteristic theta_characteristic(const MetricGraph& input, const CycleZ2& cycle,
                                         const Point& p, std::uint64_t variant) {
  if (input.is_augmented()) {
    return theta_characteristic(virtualize(input).graph, cycle, p, variant);
  }
  const MetricGraph& g = input;
  if (!is_even(g, cycle)) throw PreconditionError("edge set is not an even subgraph");

  ThetaCharacteristic theta;
  theta.cycle = cycle;
  if (cycle.empty()) {
    theta.field = distance_field(g, normalize(g, p));
  } else {
    theta.field = distance_field(g, cycle);
  }

  // Orientation of each original cycle edge, from the circuit decomposition.
  std::map<std::string, bool> cyclic;
  if (!cycle.empty())
    for (const auto& circuit : circuit_decomposition(g, cycle, variant))
      for (const auto& [e, fwd] : circuit) cyclic[g.edges()[e].id] = fwd;

  const Refinement& ref = theta.field.refinement;
  const MetricGraph& rg = ref.graph();
  std::vector<long> indeg(rg.vertices().size(), 0);
  for (std::size_t e = 0; e < rg.edges().size(); ++e) {
    bool toward_head;
    if (theta.field.on_source[e]) {
      toward_head = cyclic.at(ref.origin_edge(e));
    } else {
      toward_head = theta.field.value[rg.head_index(e)] > theta.field.value[rg.tail_index(e)];
    }
    ++indeg[toward_head ? rg.head_index(e) : rg.tail_index(e)];
  }
  for (std::size_t v = 0; v < rg.vertices().size(); ++v)
    theta.divisor.add(ref.to_original(Point::vertex(rg.vertices()[v].id)), indeg[v] - 1);

  theta.effective = effective_representative(g, theta.divisor).has_value();
  return theta;
}

Divisor two_torsion_divisor(const MetricGraph& input, const CycleZ2& cycle) {
  const MetricGraph g = input.is_augmented() ? virtualize(input).graph : input;
  if (cycle.empty()) return Divisor{};
  Point p = Point::vertex(g.vertices().front().id);
  return theta_characteristic(g, cycle, p).divisor - theta_characteristic(g, CycleZ2{}, p).divisor;
}

std::vector<ThetaCharacteristic> enumerate_theta(const MetricGraph& input) {
  const MetricGraph g = input.is_augmented() ? virtualize(input).graph : input;
  Point p = Point::vertex(g.vertices().front().id);
  std::vector<ThetaCharacteristic> out;
  for (const auto& cycle : cycle_space(g).even_subgraphs) out.push_back(theta_characteristic(g, cycle, p));
  return out;
}

}  // namespace tropjac
