#pragma once

#include "tropjac/rational.hpp"

#include <initializer_list>
#include <map>
#include <string>
#include <utility>

namespace tropjac {

/// A point of a metric graph relative to a fixed model: either a vertex,
/// or an edge together with an offset measured from the edge's tail.
/// Use normalize() to bring a point into canonical form for a given graph.
class Point {
 public:
  Point() = default;

  static Point vertex(std::string id) { return Point(std::move(id), Rational(0), false); }
  static Point on_edge(std::string edge, Rational offset) {
    return Point(std::move(edge), std::move(offset), true);
  }

  bool is_vertex() const { return !on_edge_; }
  const std::string& id() const { return id_; }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.on_edge_ == b.on_edge_ && a.id_ == b.id_ && a.offset_ == b.offset_;
  }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.id_ != b.id_) return a.id_ < b.id_;
    if (a.on_edge_ != b.on_edge_) return !a.on_edge_;
    return a.offset_ < b.offset_;
  }

 private:
  Point(std::string id, Rational offset, bool on_edge)
      : id_(std::move(id)), offset_(std::move(offset)), on_edge_(on_edge) {}

  std::string id_;
  Rational offset_;
  bool on_edge_ = false;
};

std::string to_string(const Point& p);

/// Finitely supported integer combination of points. Zero coefficients are
/// never stored, so structural equality is divisor equality once the
/// points are normalized against the same model.
class Divisor {
 public:
  using Terms = std::map<Point, long>;

  Divisor() = default;
  Divisor(std::initializer_list<std::pair<Point, long>> terms) {
    for (const auto& [p, c] : terms) add(p, c);
  }

  long coefficient(const Point& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
  }

  void add(const Point& p, long c) {
    if (c == 0) return;
    long& slot = terms_[p];
    slot += c;
    if (slot == 0) terms_.erase(p);
  }

  long degree() const {
    long d = 0;
    for (const auto& [p, c] : terms_) d += c;
    return d;
  }

  bool is_effective() const {
    for (const auto& [p, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  Divisor& operator+=(const Divisor& other) {
    for (const auto& [p, c] : other.terms_) add(p, c);
    return *this;
  }
  Divisor& operator-=(const Divisor& other) {
    for (const auto& [p, c] : other.terms_) add(p, -c);
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(long k, const Divisor& d) {
    Divisor out;
    for (const auto& [p, c] : d.terms_) out.add(p, k * c);
    return out;
  }
  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  Terms terms_;
};

std::string to_string(const Divisor& d);

}  // namespace tropjac
