#pragma once

#include "realnull/poly.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace realnull {

// Dense matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivotCols;  // one per nonzero row, increasing
};

// Reduced row echelon form by Gauss-Jordan elimination with first-nonzero pivoting.
inline EchelonForm rref(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
    std::size_t sel = prow;
    while (sel < m.rows() && sgn(m(sel, c)) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != prow)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(prow, k));
    Rational inv = 1 / m(prow, c);
    for (std::size_t k = c; k < m.cols(); ++k)
      if (sgn(m(prow, k)) != 0) m(prow, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == prow || sgn(m(r, c)) == 0) continue;
      Rational factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (sgn(m(prow, k)) != 0) m(r, k) -= factor * m(prow, k);
    }
    pivots.push_back(c);
    ++prow;
  }
  return {std::move(m), std::move(pivots)};
}

// Basis of {x : A x = 0}; one vector per free column, with that column set to 1.
inline std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a) {
  EchelonForm e = rref(a);
  std::vector<bool> isPivot(a.cols(), false);
  for (auto c : e.pivotCols) isPivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (isPivot[free]) continue;
    std::vector<Rational> v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivotCols.size(); ++r) v[e.pivotCols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// A particular solution of A x = b with all free variables zero, or nullopt.
inline std::optional<std::vector<Rational>> solveLinear(const RationalMatrix& a,
                                                        std::span<const Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solveLinear: right-hand side length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  EchelonForm e = rref(std::move(aug));
  if (!e.pivotCols.empty() && e.pivotCols.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (std::size_t r = 0; r < e.pivotCols.size(); ++r) x[e.pivotCols[r]] = e.reduced(r, a.cols());
  return x;
}

}  // namespace realnull
