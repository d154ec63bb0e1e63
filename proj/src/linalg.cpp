#include "tropjac/linalg.hpp"

#include <utility>

namespace tropjac {

namespace {

struct Bezout {
  Integer g, s, t;  // g = s*a + t*b, g >= 0
};

Bezout extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  RationalMatrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots.back() >= n)) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  return rref(m).size();
}

RationalMatrix nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RationalMatrix basis(a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, free_cols[k]);
  }
  return basis;
}

IntegerMatrix clear_row_denominators(const RationalMatrix& a) {
  IntegerMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer den = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) den = lcm(den, denominator(a(r, c)));
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = numerator(a(r, c) * Rational(den));
  }
  return out;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& generators) {
  IntegerMatrix h = generators;
  const std::size_t n = h.rows();
  const std::size_t k = h.cols();
  auto combine = [&](std::size_t ci, std::size_t cj, const Integer& a, const Integer& b,
                     const Integer& c, const Integer& d) {
    // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
    for (std::size_t r = 0; r < n; ++r) {
      Integer x = h(r, ci), y = h(r, cj);
      h(r, ci) = a * x + b * y;
      h(r, cj) = c * x + d * y;
    }
  };
  std::size_t pivot_col = 0;
  std::vector<std::size_t> pivot_rows;
  for (std::size_t row = 0; row < n && pivot_col < k; ++row) {
    for (std::size_t j = pivot_col + 1; j < k; ++j) {
      if (h(row, j) == 0) continue;
      Integer a = h(row, pivot_col), b = h(row, j);
      Bezout bz = extended_gcd(a, b);
      combine(pivot_col, j, bz.s, bz.t, -b / bz.g, a / bz.g);
    }
    if (h(row, pivot_col) == 0) continue;
    if (h(row, pivot_col) < 0)
      for (std::size_t r = 0; r < n; ++r) h(r, pivot_col) = -h(r, pivot_col);
    for (std::size_t p = 0; p < pivot_col; ++p) {
      Integer q = floor_div(h(row, p), h(row, pivot_col));
      if (q == 0) continue;
      for (std::size_t r = 0; r < n; ++r) h(r, p) -= q * h(r, pivot_col);
    }
    pivot_rows.push_back(row);
    ++pivot_col;
  }
  IntegerMatrix basis(n, pivot_col);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < pivot_col; ++c) basis(r, c) = h(r, c);
  return basis;
}

bool in_integer_span(const IntegerMatrix& generators, const std::vector<Integer>& v) {
  IntegerMatrix h = hermite_normal_form(generators);
  std::vector<Integer> rest = v;
  std::size_t row = 0;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    while (h(row, c) == 0) {
      if (rest[row] != 0) return false;
      ++row;
    }
    if (rest[row] % h(row, c) != 0) return false;
    Integer q = rest[row] / h(row, c);
    for (std::size_t r = 0; r < h.rows(); ++r) rest[r] -= q * h(r, c);
    ++row;
  }
  for (const auto& x : rest)
    if (x != 0) return false;
  return true;
}

Integer lattice_index(const IntegerMatrix& generators) {
  IntegerMatrix h = hermite_normal_form(generators);
  if (h.cols() < h.rows()) return 0;
  Integer index = 1;
  for (std::size_t c = 0; c < h.cols(); ++c) index *= h(c, c);
  return index;
}

}  // namespace tropjac
