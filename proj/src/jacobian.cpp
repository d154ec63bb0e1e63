#include "tropjac/jacobian.hpp"

#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"

#include <stdexcept>

namespace tropjac {

PeriodLattice period_lattice(const MetricGraph& g) {
  if (g.is_augmented()) throw PreconditionError("period lattice needs an unaugmented graph");
  PeriodLattice lattice;
  lattice.cycles = cycle_space(g, false);
  const auto& basis = lattice.cycles.basis;
  const std::size_t n = basis.size();
  lattice.gram = RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational s = 0;
      for (std::size_t e = 0; e < g.edges().size(); ++e)
        if (basis[i].coeff[e] != 0 && basis[j].coeff[e] != 0)
          s += g.edges()[e].length * basis[i].coeff[e] * basis[j].coeff[e];
      lattice.gram(i, j) = s;
      lattice.gram(j, i) = s;
    }
  auto inv = inverse(lattice.gram);
  if (!inv) throw std::logic_error("singular Gram matrix");
  lattice.gram_inverse = *inv;
  return lattice;
}

namespace {

// Chain from the forest root of p's component to p.
void add_root_path(const MetricGraph& g, const SpanningForest& forest, const Point& p, long sign,
                   Chain& chain) {
  std::size_t v;
  Rational partial = 0;
  std::string partial_edge;
  if (p.is_vertex()) {
    v = g.vertex_index(p.id());
  } else {
    std::size_t e = g.edge_index(p.id());
    v = g.tail_index(e);
    partial_edge = g.edges()[e].id;
    partial = p.offset();
  }
  std::size_t root = v;
  while (forest.parent[root] != root) root = forest.parent[root];
  SignedCycle path = tree_path(g, forest, root, v);
  for (std::size_t e = 0; e < path.coeff.size(); ++e)
    if (path.coeff[e] != 0) chain[g.edges()[e].id] += sign * path.coeff[e] * g.edges()[e].length;
  if (!partial_edge.empty()) chain[partial_edge] += sign * partial;
}

void prune(Chain& chain) {
  for (auto it = chain.begin(); it != chain.end();) {
    if (it->second == 0) it = chain.erase(it);
    else ++it;
  }
}

}  // namespace

Chain forest_path(const MetricGraph& g, const SpanningForest& forest, const Point& from,
                  const Point& to) {
  Point a = normalize(g, from);
  Point b = normalize(g, to);
  if (component_of(g, a) != component_of(g, b))
    throw PreconditionError("no path between different components");
  Chain chain;
  add_root_path(g, forest, a, -1, chain);
  add_root_path(g, forest, b, 1, chain);
  prune(chain);
  return chain;
}

std::vector<Rational> chain_coordinates(const MetricGraph& g, const PeriodLattice& lattice,
                                        const Chain& chain) {
  const auto& basis = lattice.cycles.basis;
  std::vector<Rational> coords(basis.size());
  for (const auto& [id, len] : chain) {
    std::size_t e = g.edge_index(id);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (basis[j].coeff[e] != 0) coords[j] += len * basis[j].coeff[e];
  }
  return coords;
}

AbelJacobiImage abel_jacobi(const MetricGraph& g, const PeriodLattice& lattice, const Divisor& d,
                            const std::vector<Point>& basepoints) {
  Divisor nd = normalize(g, d);
  if (nd.degree() != 0) throw PreconditionError("Abel-Jacobi map needs a degree 0 divisor");
  AbelJacobiImage out;
  const auto& forest = lattice.cycles.forest;
  out.certificate.basepoints.resize(g.component_count());
  std::vector<bool> assigned(g.component_count(), false);
  for (const auto& raw : basepoints) {
    Point q = normalize(g, raw);
    std::size_t c = component_of(g, q);
    out.certificate.basepoints[c] = q;
    assigned[c] = true;
  }
  for (std::size_t r : forest.roots) {
    std::size_t c = g.component_of()[r];
    if (!assigned[c]) out.certificate.basepoints[c] = Point::vertex(g.vertices()[r].id);
  }

  out.point.coords.assign(lattice.genus(), Rational(0));
  for (const auto& [p, c] : nd.terms()) {
    const Point& q = out.certificate.basepoints[component_of(g, p)];
    Chain path = forest_path(g, forest, q, p);
    auto coords = chain_coordinates(g, lattice, path);
    for (std::size_t j = 0; j < coords.size(); ++j) out.point.coords[j] += Rational(c) * coords[j];
    out.certificate.paths.emplace_back(p, std::move(path));
  }
  out.component_degrees = component_degrees(g, nd);
  return out;
}

bool lattice_contains(const PeriodLattice& lattice, const std::vector<Rational>& v) {
  if (v.size() != lattice.genus()) throw PreconditionError("vector dimension does not match genus");
  for (const auto& x : lattice.gram_inverse * v)
    if (!is_integer(x)) return false;
  return true;
}

JacobianPoint canonical(const PeriodLattice& lattice, const std::vector<Rational>& v) {
  if (v.size() != lattice.genus()) throw PreconditionError("vector dimension does not match genus");
  auto x = lattice.gram_inverse * v;
  for (auto& xi : x) xi = frac(xi);
  return JacobianPoint{lattice.gram * x};
}

std::vector<JacobianPoint> torsion_points(const PeriodLattice& lattice, int m) {
  if (m < 2) throw PreconditionError("torsion order must be at least 2");
  const std::size_t g = lattice.genus();
  std::vector<JacobianPoint> out;
  std::vector<int> z(g, 0);
  for (;;) {
    std::vector<Rational> x(g);
    for (std::size_t i = 0; i < g; ++i) x[i] = Rational(z[i], m);
    out.push_back(JacobianPoint{lattice.gram * x});
    std::size_t i = 0;
    while (i < g && ++z[i] == m) z[i++] = 0;
    if (i == g) break;
  }
  return out;
}

}  // namespace tropjac
