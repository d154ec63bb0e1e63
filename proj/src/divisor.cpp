#include "tropjac/divisor.hpp"

#include "tropjac/errors.hpp"
#include "tropjac/jacobian.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tropjac {

Rational slope(const PLFunction& f, std::size_t e) {
  const MetricGraph& g = f.refinement.graph();
  return (f.value[g.head_index(e)] - f.value[g.tail_index(e)]) / g.edges()[e].length;
}

Divisor divisor_of(const PLFunction& f) {
  const MetricGraph& g = f.refinement.graph();
  if (f.value.size() != g.vertices().size())
    throw PreconditionError("PL function needs one value per refined vertex");
  std::vector<long> slopes(g.edges().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    Rational s = slope(f, e);
    if (!is_integer(s))
      throw PreconditionError("non-integer slope " + to_string(s) + " on \"" + g.edges()[e].id + "\"");
    slopes[e] = numerator(s).convert_to<long>();
  }
  Divisor out;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    long ord = 0;
    for (const auto& inc : g.incidences(v)) {
      // Incoming slope is minus the outgoing one.
      ord += inc.end == EdgeEnd::tail ? -slopes[inc.edge] : slopes[inc.edge];
    }
    out.add(f.refinement.to_original(Point::vertex(g.vertices()[v].id)), ord);
  }
  return out;
}

// ---------------------------------------------------------------------------

UnitSubdivision::UnitSubdivision(const MetricGraph& g, const std::vector<Point>& points) {
  std::vector<Rational> values;
  for (const auto& e : g.edges()) values.push_back(e.length);
  for (const auto& p : points)
    if (!p.is_vertex()) values.push_back(p.offset());
  scale_ = common_denominator(values);

  for (const auto& v : g.vertices()) {
    node_of_.emplace(Point::vertex(v.id), node_point_.size());
    node_point_.push_back(Point::vertex(v.id));
  }
  adjacency_.resize(node_point_.size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    Rational scaled = edge.length * Rational(scale_);
    long segments = numerator(scaled).convert_to<long>();
    std::size_t prev = g.tail_index(e);
    for (long k = 1; k <= segments; ++k) {
      std::size_t next;
      if (k < segments) {
        next = node_point_.size();
        Point p = Point::on_edge(edge.id, Rational(k) / Rational(scale_));
        node_of_.emplace(p, next);
        node_point_.push_back(p);
        adjacency_.emplace_back();
      } else {
        next = g.head_index(e);
      }
      if (prev != next) {
        adjacency_[prev].push_back(next);
        adjacency_[next].push_back(prev);
      }
      prev = next;
    }
  }
}

std::size_t UnitSubdivision::node(const Point& p) const {
  auto it = node_of_.find(p);
  if (it == node_of_.end()) throw PreconditionError("point " + to_string(p) + " is not a subdivision node");
  return it->second;
}

std::vector<long> UnitSubdivision::chips(const Divisor& d) const {
  std::vector<long> out(size(), 0);
  for (const auto& [p, c] : d.terms()) out[node(p)] += c;
  return out;
}

Divisor UnitSubdivision::divisor(const std::vector<long>& chips) const {
  Divisor out;
  for (std::size_t i = 0; i < chips.size(); ++i) out.add(node_point_[i], chips[i]);
  return out;
}

namespace {

std::vector<Point> support_points(const Divisor& d) {
  std::vector<Point> pts;
  for (const auto& [p, c] : d.terms()) pts.push_back(p);
  return pts;
}

class ChipFiring {
 public:
  ChipFiring(const UnitSubdivision& sub, std::vector<long> chips)
      : sub_(sub), chips_(std::move(chips)), script_(sub.size(), 0) {}

  // Fires every node in `set` t times.
  void fire(const std::vector<bool>& set, long t) {
    for (std::size_t v = 0; v < sub_.size(); ++v) {
      if (!set[v]) continue;
      script_[v] += t;
      for (std::size_t w : sub_.neighbours(v)) {
        if (set[w]) continue;
        chips_[v] -= t;
        chips_[w] += t;
      }
    }
  }

  // Moves all debt away from non-root nodes by firing BFS balls around the
  // roots, outermost layer first.
  void clear_debt(const std::vector<std::size_t>& roots) {
    const std::size_t n = sub_.size();
    const std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, unset);
    std::deque<std::size_t> queue;
    for (auto r : roots) {
      dist[r] = 0;
      queue.push_back(r);
    }
    std::size_t max_dist = 0;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      max_dist = std::max(max_dist, dist[v]);
      for (std::size_t w : sub_.neighbours(v))
        if (dist[w] == unset) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    for (std::size_t k = max_dist; k-- > 0;) {
      // Firing the ball of radius k feeds layer k+1 and touches nothing farther.
      std::vector<bool> ball(n);
      for (std::size_t v = 0; v < n; ++v) ball[v] = dist[v] <= k;
      long times = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] != k + 1 || chips_[v] >= 0) continue;
        long inward = 0;
        for (std::size_t w : sub_.neighbours(v))
          if (dist[w] == k) ++inward;
        times = std::max(times, (-chips_[v] + inward - 1) / inward);
      }
      if (times > 0) fire(ball, times);
    }
  }

  // Dhar's burning algorithm, firing the unburnt set as often as is legal.
  void burn(const std::vector<std::size_t>& roots) {
    const std::size_t n = sub_.size();
    for (;;) {
      std::vector<bool> burnt(n, false);
      std::vector<long> burning(n, 0);
      std::deque<std::size_t> queue;
      for (auto r : roots) {
        burnt[r] = true;
        queue.push_back(r);
      }
      while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : sub_.neighbours(v)) {
          if (burnt[w]) continue;
          if (++burning[w] > chips_[w]) {
            burnt[w] = true;
            queue.push_back(w);
          }
        }
      }
      std::vector<bool> unburnt(n);
      long times = std::numeric_limits<long>::max();
      bool any = false;
      for (std::size_t v = 0; v < n; ++v) {
        unburnt[v] = !burnt[v];
        if (!unburnt[v]) continue;
        any = true;
        if (burning[v] > 0) times = std::min(times, chips_[v] / burning[v]);
      }
      if (!any) return;
      if (times == std::numeric_limits<long>::max() || times < 1)
        throw std::logic_error("burning algorithm stalled");
      fire(unburnt, times);
    }
  }

  const std::vector<long>& chips() const { return chips_; }
  const std::vector<long>& script() const { return script_; }

 private:
  const UnitSubdivision& sub_;
  std::vector<long> chips_;
  std::vector<long> script_;
};

std::vector<std::size_t> burn_roots(const MetricGraph& g, const UnitSubdivision& sub, const Point& q) {
  std::vector<std::size_t> roots{sub.node(q)};
  std::size_t qc = component_of(g, q);
  std::vector<bool> seen(g.component_count(), false);
  seen[qc] = true;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    std::size_t c = g.component_of()[v];
    if (seen[c]) continue;
    seen[c] = true;
    roots.push_back(sub.node(Point::vertex(g.vertices()[v].id)));
  }
  return roots;
}

}  // namespace

std::size_t component_of(const MetricGraph& g, const Point& p) {
  if (p.is_vertex()) return g.component_of()[g.vertex_index(p.id())];
  return g.component_of()[g.tail_index(g.edge_index(p.id()))];
}

std::vector<long> component_degrees(const MetricGraph& g, const Divisor& d) {
  std::vector<long> degrees(g.component_count(), 0);
  for (const auto& [p, c] : d.terms()) degrees[component_of(g, p)] += c;
  return degrees;
}

Reduction reduce_with_script(const MetricGraph& g, const Divisor& d, const Point& q) {
  Divisor nd = normalize(g, d);
  Point nq = normalize(g, q);
  std::vector<Point> pts = support_points(nd);
  pts.push_back(nq);
  UnitSubdivision sub(g, pts);
  auto roots = burn_roots(g, sub, nq);
  ChipFiring firing(sub, sub.chips(nd));
  firing.clear_debt(roots);
  firing.burn(roots);
  return Reduction{sub.divisor(firing.chips()), firing.script(), std::move(sub)};
}

Divisor reduce_at(const MetricGraph& g, const Divisor& d, const Point& q) {
  return reduce_with_script(g, d, q).reduced;
}

Principality is_principal(const MetricGraph& g, const Divisor& d) {
  Divisor nd = normalize(g, d);
  for (long deg : component_degrees(g, nd))
    if (deg != 0) throw PreconditionError("principality test needs degree 0 on every component");
  PeriodLattice lattice = period_lattice(g);
  auto aj = abel_jacobi(g, lattice, nd);
  Principality result;
  result.principal = lattice_contains(lattice, aj.point.coords);
  if (!result.principal) return result;

  Point q = Point::vertex(g.vertices().front().id);
  Reduction red = reduce_with_script(g, nd, q);
  if (!red.reduced.is_zero())
    throw std::logic_error("lattice and chip-firing disagree on " + to_string(nd));
  std::vector<Point> cuts;
  for (std::size_t i = g.vertices().size(); i < red.subdivision.size(); ++i)
    cuts.push_back(red.subdivision.point(i));
  PLFunction f{refine(g, cuts), {}};
  const MetricGraph& rg = f.refinement.graph();
  f.value.resize(rg.vertices().size());
  Rational scale(red.subdivision.scale());
  for (std::size_t v = 0; v < rg.vertices().size(); ++v) {
    Point orig = f.refinement.to_original(Point::vertex(rg.vertices()[v].id));
    f.value[v] = Rational(red.script[red.subdivision.node(orig)]) / scale;
  }
  result.certificate = std::move(f);
  return result;
}

bool equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b) {
  Divisor diff = normalize(g, a) - normalize(g, b);
  for (long deg : component_degrees(g, diff))
    if (deg != 0) return false;
  PeriodLattice lattice = period_lattice(g);
  return lattice_contains(lattice, abel_jacobi(g, lattice, diff).point.coords);
}

std::optional<Divisor> effective_representative(const MetricGraph& g, const Divisor& d) {
  if (normalize(g, d).is_effective()) return normalize(g, d);
  Divisor reduced = reduce_at(g, d, Point::vertex(g.vertices().front().id));
  if (reduced.is_effective()) return reduced;
  return std::nullopt;
}

}  // namespace tropjac
