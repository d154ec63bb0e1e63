#include "tropjac/prym.hpp"

#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"
#include "tropjac/theta.hpp"

namespace tropjac {

namespace {

struct EdgeImage {
  std::string edge;
  long sign = 1;
};

/// Involution on edges of the virtualized source, with orientation sign.
EdgeImage involute_edge(const HomologyAction& a, const std::string& id) {
  if (!a.cover.source.find_edge(id)) return {id, -1};  // virtual loop: t -> eps - t
  std::string other = edge_involution(a.cover, id);
  long sign = runs_forward(a.cover, id) == runs_forward(a.cover, other) ? 1 : -1;
  return {other, sign};
}

/// Expands a closed chain in the fundamental basis by reading its
/// coefficients on the non-tree edges.
std::vector<Rational> expand(const PeriodLattice& lattice, const std::vector<long>& coeff) {
  std::vector<Rational> out;
  for (std::size_t e : lattice.cycles.non_tree_edges) out.emplace_back(coeff[e]);
  return out;
}

bool degree_part_ok(const HomologyAction& a, const std::vector<long>& degrees) {
  std::size_t c = degrees.size();
  if (c <= 1) return true;
  IntegerMatrix gens(c, c - 1);
  for (std::size_t i = 1; i < c; ++i) {
    std::vector<long> u(c, 0);
    u[i] += 1;
    u[0] -= 1;
    for (std::size_t k = 0; k < c; ++k) {
      gens(k, i - 1) += u[k];
      gens(a.component_swap[k], i - 1) -= u[k];
    }
  }
  std::vector<Integer> target(degrees.begin(), degrees.end());
  return in_integer_span(gens, target);
}

bool torus_part_ok(const HomologyAction& a, const std::vector<Rational>& v) {
  std::size_t n = a.source_lattice.genus();
  RationalMatrix id_minus_j = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) id_minus_j(i, j) -= a.involution(i, j);
  // Rows of w span the functionals vanishing on Im(Id - J).
  RationalMatrix w = nullspace(id_minus_j.transpose()).transpose();
  if (w.rows() == 0) return true;
  RationalMatrix gens = w * a.source_lattice.gram;
  std::vector<Rational> image = w * v;
  RationalMatrix joint(w.rows(), n + 1);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) joint(r, c) = gens(r, c);
    joint(r, n) = image[r];
  }
  IntegerMatrix scaled = clear_row_denominators(joint);
  IntegerMatrix lattice(w.rows(), n);
  std::vector<Integer> target(w.rows());
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) lattice(r, c) = scaled(r, c);
    target[r] = scaled(r, n);
  }
  return in_integer_span(lattice, target);
}

}  // namespace

HomologyAction homology_action(const DoubleCover& cover, const Rational& epsilon) {
  CoverReport report = verify_cover(cover);
  if (!report.ok) throw PreconditionError("not a valid double cover: " + report.issues.front());
  HomologyAction a{cover, epsilon, virtual_source(cover, epsilon), {}, {}, {}, {}, {}, {}};
  const MetricGraph& sg = a.sharp.graph;
  const MetricGraph& tg = cover.target;
  a.source_lattice = period_lattice(sg);
  a.target_lattice = period_lattice(tg);

  // Components and involution-compatible basepoints.
  std::size_t nc = sg.component_count();
  a.component_swap.assign(nc, 0);
  for (std::size_t v = 0; v < sg.vertices().size(); ++v)
    a.component_swap[sg.component_of()[v]] =
        sg.component_of()[sg.vertex_index(cover.involution.at(sg.vertices()[v].id))];
  a.basepoints.assign(nc, Point());
  std::vector<bool> set(nc, false);
  for (std::size_t v = 0; v < sg.vertices().size(); ++v) {
    std::size_t c = sg.component_of()[v];
    if (set[c]) continue;
    a.basepoints[c] = Point::vertex(sg.vertices()[v].id);
    set[c] = true;
    std::size_t d = a.component_swap[c];
    if (!set[d]) {
      a.basepoints[d] = Point::vertex(cover.involution.at(sg.vertices()[v].id));
      set[d] = true;
    }
  }

  std::size_t gs = a.source_lattice.genus(), gt = a.target_lattice.genus();
  a.involution = RationalMatrix(gs, gs);
  for (std::size_t j = 0; j < gs; ++j) {
    const auto& cyc = a.source_lattice.cycles.basis[j].coeff;
    std::vector<long> moved(sg.edges().size(), 0);
    for (std::size_t e = 0; e < cyc.size(); ++e) {
      if (cyc[e] == 0) continue;
      EdgeImage im = involute_edge(a, sg.edges()[e].id);
      moved[sg.edge_index(im.edge)] += im.sign * cyc[e];
    }
    if (!is_closed(sg, SignedCycle{moved})) throw std::logic_error("involution does not map cycles to cycles");
    auto row = expand(a.source_lattice, moved);
    for (std::size_t k = 0; k < gs; ++k) a.involution(j, k) = row[k];
  }

  a.pushforward = RationalMatrix(gt, gs);
  for (std::size_t j = 0; j < gt; ++j) {
    const auto& cyc = a.target_lattice.cycles.basis[j].coeff;
    std::vector<long> lifted(sg.edges().size(), 0);
    for (std::size_t e = 0; e < sg.edges().size(); ++e) {
      const std::string& id = sg.edges()[e].id;
      if (!cover.source.find_edge(id)) continue;
      const EdgeLift& lift = cover.edge_map.at(id);
      long sign = runs_forward(cover, id) ? 1 : -1;
      lifted[e] = lift.degree * sign * cyc[tg.edge_index(lift.target)];
    }
    if (!is_closed(sg, SignedCycle{lifted})) throw std::logic_error("pulled-back cycle is not closed");
    auto row = expand(a.source_lattice, lifted);
    for (std::size_t k = 0; k < gs; ++k) a.pushforward(j, k) = row[k];
  }
  return a;
}

Chain involute_chain(const HomologyAction& a, const Chain& chain) {
  Chain out;
  for (const auto& [id, len] : chain) {
    EdgeImage im = involute_edge(a, id);
    out[im.edge] += Rational(im.sign) * len;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Chain push_chain(const HomologyAction& a, const Chain& chain) {
  Chain out;
  for (const auto& [id, len] : chain) {
    if (!a.cover.source.find_edge(id)) continue;
    const EdgeLift& lift = a.cover.edge_map.at(id);
    long sign = runs_forward(a.cover, id) ? 1 : -1;
    out[lift.target] += Rational(lift.degree * sign) * len;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

AbelJacobiImage source_abel_jacobi(const HomologyAction& a, const Divisor& d) {
  return abel_jacobi(a.sharp.graph, a.source_lattice, d, a.basepoints);
}

std::vector<std::string> check_homology_action(const HomologyAction& a) {
  std::vector<std::string> issues;
  std::size_t gs = a.source_lattice.genus(), gt = a.target_lattice.genus();
  const RationalMatrix& j = a.involution;
  if (j * j != RationalMatrix::identity(gs)) issues.push_back("J^2 is not the identity");
  RationalMatrix jm = j * a.source_lattice.gram;
  RationalMatrix back = a.source_lattice.gram_inverse * jm;
  for (std::size_t r = 0; r < gs; ++r)
    for (std::size_t c = 0; c < gs; ++c)
      if (!is_integer(back(r, c))) issues.push_back("J does not preserve the source lattice");
  if (!inverse(back)) issues.push_back("J is singular on the source lattice");
  RationalMatrix pm = a.target_lattice.gram_inverse * (a.pushforward * a.source_lattice.gram);
  for (std::size_t r = 0; r < gt; ++r)
    for (std::size_t c = 0; c < gs; ++c)
      if (!is_integer(pm(r, c))) issues.push_back("P does not map the source lattice into the target lattice");
  RationalMatrix id_minus_j = RationalMatrix::identity(gs);
  for (std::size_t r = 0; r < gs; ++r)
    for (std::size_t c = 0; c < gs; ++c) id_minus_j(r, c) -= j(r, c);
  if (rank(id_minus_j) != gs - gt)
    issues.push_back("rank(Id - J) = " + std::to_string(rank(id_minus_j)) + ", expected " +
                     std::to_string(gs - gt));
  return issues;
}

RationalMatrix prym_tangent_space(const HomologyAction& a) {
  std::size_t n = a.source_lattice.genus();
  RationalMatrix m = RationalMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) -= a.involution(r, c);
  // Column space: keep the pivot columns of m.
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < n; ++c) {
    RationalMatrix trial(n, keep.size() + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < keep.size(); ++k) trial(r, k) = m(r, keep[k]);
      trial(r, keep.size()) = m(r, c);
    }
    if (rank(trial) == keep.size() + 1) keep.push_back(c);
  }
  RationalMatrix out(n, keep.size());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < keep.size(); ++k) out(r, k) = m(r, keep[k]);
  return out;
}

bool prym_contains(const HomologyAction& a, const Divisor& d) {
  Divisor nd = normalize(a.sharp.graph, d);
  if (nd.degree() != 0) throw PreconditionError("Prym membership needs a degree 0 divisor");
  Divisor down = pushforward(a.cover, nd);
  auto below = abel_jacobi(a.cover.target, a.target_lattice, down);
  if (!lattice_contains(a.target_lattice, below.point.coords)) {
    std::string witness;
    for (const auto& x : below.point.coords) witness += (witness.empty() ? "" : ", ") + to_string(x);
    throw PreconditionError("pushforward is not principal; Abel-Jacobi image (" + witness + ")");
  }
  auto above = source_abel_jacobi(a, nd);
  return degree_part_ok(a, above.component_degrees) && torus_part_ok(a, above.point.coords);
}

bool prym_contains(const DoubleCover& cover, const Divisor& d, const Rational& epsilon) {
  return prym_contains(homology_action(cover, epsilon), d);
}

int kernel_component_count(const HomologyAction& a) {
  const MetricGraph& sg = a.cover.source;
  std::optional<Point> sample;
  for (const auto& v : sg.vertices())
    if (a.cover.involution.at(v.id) != v.id) {
      sample = Point::vertex(v.id);
      break;
    }
  if (!sample)
    for (const auto& e : sg.edges())
      if (edge_involution(a.cover, e.id) != e.id) {
        sample = Point::on_edge(e.id, e.length / 2);
        break;
      }
  if (!sample) return 1;
  Divisor d{{*sample, 1}};
  d -= involution_divisor(a.cover, d, a.epsilon);
  return prym_contains(a, d) ? 1 : 2;
}

int kernel_component_count(const DoubleCover& cover, const Rational& epsilon) {
  return kernel_component_count(homology_action(cover, epsilon));
}

namespace {

int pairing_from_divisor(const HomologyAction& a, const Divisor& two_torsion) {
  if (!dilation_cycle(a.cover).empty())
    throw PreconditionError("the Weil pairing needs an undilated cover");
  return prym_contains(a, pullback(a.cover, two_torsion)) ? 0 : 1;
}

}  // namespace

int weil_pairing(const HomologyAction& a, const CycleZ2& cycle) {
  if (!dilation_cycle(a.cover).empty())
    throw PreconditionError("the Weil pairing needs an undilated cover");
  return pairing_from_divisor(a, two_torsion_divisor(a.cover.target, cycle));
}

int weil_pairing(const DoubleCover& cover, const CycleZ2& cycle, const Rational& epsilon) {
  if (!dilation_cycle(cover).empty()) throw PreconditionError("the Weil pairing needs an undilated cover");
  return weil_pairing(homology_action(cover, epsilon), cycle);
}

PairingTable pairing_table(const MetricGraph& g) {
  if (g.is_augmented()) throw PreconditionError("pairing table needs an unaugmented graph");
  PairingTable table;
  table.cycles = cycle_space(g).even_subgraphs;
  std::vector<Divisor> torsion;
  for (const auto& c : table.cycles) torsion.push_back(two_torsion_divisor(g, c));
  for (const auto& cover : free_covers(g)) {
    HomologyAction a = homology_action(cover);
    table.covers.push_back(monodromy(cover));
    std::vector<int> row;
    for (const auto& d : torsion) row.push_back(pairing_from_divisor(a, d));
    table.entries.push_back(std::move(row));
  }
  return table;
}

}  // namespace tropjac
