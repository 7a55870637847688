#include "indexcode/simplex.h"

#include <gmpxx.h>

#include <cmath>
#include <cstddef>

#include "indexcode/errors.h"

namespace indexcode {
namespace {

template <typename Num>
struct Arith;

template <>
struct Arith<double> {
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool positive(double v) { return v > 1e-9; }
  static bool negative(double v) { return v < -1e-9; }
};

template <>
struct Arith<mpq_class> {
  static mpq_class from(double v) { return mpq_class(v); }
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static bool positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool negative(const mpq_class& v) { return sgn(v) < 0; }
};

template <typename Num>
Feasibility solve(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b) {
  using A = Arith<Num>;
  const size_t m = a.size();
  const size_t n = m ? a.front().size() : 0;
  const size_t cols = n + m;  // originals, then one artificial per row
  // Rows 0..m-1 are constraints, row m holds reduced costs; last column is
  // the right-hand side.
  std::vector<std::vector<Num>> t(m + 1, std::vector<Num>(cols + 1, Num(0)));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw ShapeError("constraint rows differ in length");
    const bool flip = b[i] < 0;
    for (size_t j = 0; j < n; ++j) {
      t[i][j] = A::from(flip ? -a[i][j] : a[i][j]);
      t[m][j] -= t[i][j];
    }
    t[i][n + i] = Num(1);
    t[i][cols] = A::from(flip ? -b[i] : b[i]);
    t[m][cols] -= t[i][cols];
    basis[i] = n + i;
  }

  while (true) {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (A::negative(t[m][j])) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    size_t leave = m;
    Num best_ratio(0);
    for (size_t i = 0; i < m; ++i) {
      if (!A::positive(t[i][enter])) continue;
      Num ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (!(best_ratio < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // cannot happen: the phase-one objective is bounded
    const Num pivot = t[leave][enter];
    for (Num& v : t[leave]) v /= pivot;
    for (size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Num factor = t[i][enter];
      if (factor == Num(0)) continue;
      for (size_t j = 0; j <= cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  Feasibility out;
  out.exact = std::is_same_v<Num, mpq_class>;
  // Row m's right-hand side is minus the artificial total.
  out.feasible = !A::negative(t[m][cols]);
  if (out.feasible) {
    out.x.assign(n, 0.0);
    for (size_t i = 0; i < m; ++i) {
      if (basis[i] < n) out.x[basis[i]] = A::to_double(t[i][cols]);
    }
  }
  return out;
}

}  // namespace

Feasibility phase_one(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b, bool exact) {
  if (a.size() != b.size()) throw ShapeError("one right-hand side per row");
  return exact ? solve<mpq_class>(a, b) : solve<double>(a, b);
}

}  // namespace indexcode
