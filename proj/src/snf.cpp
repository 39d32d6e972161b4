#include "gmslope/snf.hpp"

#include <stdexcept>
#include <utility>

namespace gmslope {

namespace {

// Quotient rounded to the nearest integer, so |a - q b| <= |b| / 2.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  const Integer num = (b > 0 ? 2 * a : -2 * a) + abs_of(b);
  return floor_div(num, 2 * abs_of(b));
}

struct Work {
  IntMatrix m;
  IntMatrix v;
  std::size_t rows;
  std::size_t cols;

  void swap_rows(std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row i -= q * row j
  void sub_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) m[i][c] -= q * m[j][c];
  }
  void add_row(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols; ++c) m[i][c] += m[j][c];
  }
  // col i -= q * col j
  void sub_col(std::size_t i, std::size_t j, const Integer& q) {
    for (auto& row : m) row[i] -= q * row[j];
    for (auto& row : v) row[i] -= q * row[j];
  }
  void negate_col(std::size_t i) {
    for (auto& row : m) row[i] = -row[i];
    for (auto& row : v) row[i] = -row[i];
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        Integer a = abs_of(m[i][j]);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    }
    return found;
  }
};

}  // namespace

SmithForm smith_normal_form(IntMatrix relations, std::size_t cols) {
  for (const auto& row : relations) {
    if (row.size() != cols) throw std::invalid_argument("ragged relation matrix");
  }
  Work w{std::move(relations), IntMatrix(cols, std::vector<Integer>(cols, Integer(0))), 0, cols};
  w.rows = w.m.size();
  for (std::size_t i = 0; i < cols; ++i) w.v[i][i] = 1;

  SmithForm out;
  out.rows = w.rows;
  out.cols = cols;
  for (std::size_t t = 0; t < std::min(w.rows, cols); ++t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      if (!w.find_pivot(t, pi, pj)) break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      // Reduce the pivot row and column with nearest quotients; any remainder
      // is smaller than the pivot, so re-selecting the pivot terminates.
      bool clean = true;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (w.m[i][t] == 0) continue;
        w.sub_row(i, t, nearest_quotient(w.m[i][t], w.m[t][t]));
        if (w.m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.m[t][j] == 0) continue;
        w.sub_col(j, t, nearest_quotient(w.m[t][j], w.m[t][t]));
        if (w.m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and repeat.
      bool folded = false;
      for (std::size_t i = t + 1; i < w.rows && !folded; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          Integer r;
          mpz_tdiv_r(r.get_mpz_t(), w.m[i][j].get_mpz_t(), w.m[t][t].get_mpz_t());
          if (r != 0) {
            w.add_row(t, i);
            folded = true;
            break;
          }
        }
      }
      if (!folded) break;
    }
    if (t >= w.rows || w.m[t][t] == 0) break;
    if (w.m[t][t] < 0) w.negate_col(t);
    out.diagonal.push_back(w.m[t][t]);
  }
  out.column_transform = std::move(w.v);
  return out;
}

std::vector<Integer> SmithForm::coordinates(const std::vector<Integer>& v) const {
  if (v.size() != cols) throw std::invalid_argument("vector length does not match generator count");
  std::vector<Integer> w(cols, Integer(0));
  for (std::size_t i = 0; i < cols; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) w[j] += v[i] * column_transform[i][j];
  }
  return w;
}

}  // namespace gmslope
