#pragma once

#include "realnull/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace realnull {

// Element of the free module R^n.
class ModVec {
 public:
  ModVec(ContextPtr ctx, std::size_t rank) : ctx_(std::move(ctx)) {
    if (rank == 0) throw std::invalid_argument("module rank must be positive");
    entries_.assign(rank, Poly(ctx_));
  }

  ModVec(ContextPtr ctx, std::vector<Poly> entries)
      : ctx_(std::move(ctx)), entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("module rank must be positive");
    for (const auto& p : entries_) requireSameContext(ctx_, p.context());
  }

  static ModVec basis(const ContextPtr& ctx, std::size_t rank, std::size_t j) {
    if (j >= rank) throw std::out_of_range("basis index out of range");
    ModVec v(ctx, rank);
    v.entries_[j] = Poly::constant(ctx, Rational(1));
    return v;
  }

  const ContextPtr& context() const { return ctx_; }
  std::size_t rank() const { return entries_.size(); }
  const Poly& operator[](std::size_t i) const { return entries_[i]; }
  Poly& at(std::size_t i) { return entries_.at(i); }
  const std::vector<Poly>& entries() const { return entries_; }

  bool isZero() const {
    for (const auto& p : entries_)
      if (!p.isZero()) return false;
    return true;
  }

  long totalDegree() const {
    long best = -1;
    for (const auto& p : entries_) best = std::max(best, p.totalDegree());
    return best;
  }

  ModVec operator+(const ModVec& o) const {
    requireRank(o);
    ModVec out(*this);
    for (std::size_t i = 0; i < rank(); ++i) out.entries_[i] += o.entries_[i];
    return out;
  }

  ModVec operator-(const ModVec& o) const {
    requireRank(o);
    ModVec out(*this);
    for (std::size_t i = 0; i < rank(); ++i) out.entries_[i] -= o.entries_[i];
    return out;
  }

  ModVec operator-() const {
    ModVec out(*this);
    for (auto& p : out.entries_) p = -p;
    return out;
  }

  ModVec& operator+=(const ModVec& o) { return *this = *this + o; }
  ModVec& operator-=(const ModVec& o) { return *this = *this - o; }

  ModVec scaled(const Poly& p) const {
    requireSameContext(ctx_, p.context());
    ModVec out(*this);
    for (auto& e : out.entries_) e = p * e;
    return out;
  }

  ModVec scaled(const Rational& c) const {
    ModVec out(*this);
    for (auto& e : out.entries_) e = e.scaled(c);
    return out;
  }

  // this -= c * m * other
  void subtractMultiple(const Rational& c, const Monomial& m, const ModVec& other) {
    requireRank(other);
    for (std::size_t i = 0; i < rank(); ++i) entries_[i].subtractMultiple(c, m, other.entries_[i]);
  }

  std::vector<Rational> evaluate(std::span<const Rational> point) const {
    std::vector<Rational> out;
    out.reserve(rank());
    for (const auto& p : entries_) out.push_back(p.evaluate(point));
    return out;
  }

  bool operator==(const ModVec& o) const { return entries_ == o.entries_; }

 private:
  void requireRank(const ModVec& o) const {
    requireSameContext(ctx_, o.ctx_);
    if (o.rank() != rank())
      throw std::invalid_argument("rank mismatch: " + std::to_string(rank()) + " vs " +
                                  std::to_string(o.rank()));
  }

  ContextPtr ctx_;
  std::vector<Poly> entries_;
};

inline ModVec operator*(const Poly& p, const ModVec& v) { return v.scaled(p); }

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Inserts a zero coordinate at `position`: R^{n-1} -> R^n.
inline ModVec embedAt(const ModVec& v, std::size_t position) {
  if (position > v.rank()) throw std::out_of_range("embedding position out of range");
  std::vector<Poly> out;
  out.reserve(v.rank() + 1);
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i == position) out.emplace_back(v.context());
    out.push_back(v[i]);
  }
  if (position == v.rank()) out.emplace_back(v.context());
  return ModVec(v.context(), std::move(out));
}

// Natural embedding into the last n-1 components.
inline ModVec embed(const ModVec& v) { return embedAt(v, 0); }

inline ModVec dropCoordinate(const ModVec& v, std::size_t position) {
  if (v.rank() < 2) throw std::invalid_argument("cannot drop a coordinate of a rank-1 vector");
  if (position >= v.rank()) throw std::out_of_range("coordinate out of range");
  std::vector<Poly> out;
  for (std::size_t i = 0; i < v.rank(); ++i)
    if (i != position) out.push_back(v[i]);
  return ModVec(v.context(), std::move(out));
}

// Square matrix over R. Also stands in for M (x) M via a (x) b -> a^T b.
class MatPoly {
 public:
  MatPoly(ContextPtr ctx, std::size_t n) : ctx_(std::move(ctx)), n_(n) {
    if (n == 0) throw std::invalid_argument("matrix size must be positive");
    entries_.assign(n * n, Poly(ctx_));
  }

  MatPoly(ContextPtr ctx, std::size_t n, std::vector<Poly> rowMajor)
      : ctx_(std::move(ctx)), n_(n), entries_(std::move(rowMajor)) {
    if (n == 0) throw std::invalid_argument("matrix size must be positive");
    if (entries_.size() != n * n) throw std::invalid_argument("matrix entry count is not n*n");
    for (const auto& p : entries_) requireSameContext(ctx_, p.context());
  }

  static MatPoly identity(const ContextPtr& ctx, std::size_t n) {
    MatPoly m(ctx, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(ctx, Rational(1));
    return m;
  }

  static MatPoly fromRows(const std::vector<ModVec>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
    std::size_t n = rows.size();
    MatPoly m(rows.front().context(), n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].rank() != n) throw std::invalid_argument("row length does not match row count");
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  // Inverse of flatten().
  static MatPoly unflatten(const ModVec& v) {
    std::size_t n = 0;
    while (n * n < v.rank()) ++n;
    if (n * n != v.rank()) throw std::invalid_argument("vector length is not a perfect square");
    return MatPoly(v.context(), n, v.entries());
  }

  const ContextPtr& context() const { return ctx_; }
  std::size_t size() const { return n_; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  Poly& at(std::size_t i, std::size_t j) { return entries_.at(i * n_ + j); }

  ModVec row(std::size_t i) const {
    return ModVec(ctx_, std::vector<Poly>(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_));
  }

  bool isZero() const {
    for (const auto& p : entries_)
      if (!p.isZero()) return false;
    return true;
  }

  // Row-major flattening into R^{n^2}.
  ModVec flatten() const { return ModVec(ctx_, entries_); }

  MatPoly transpose() const {
    MatPoly t(ctx_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = (*this)(i, j);
    return t;
  }

  MatPoly operator*(const MatPoly& o) const {
    requireShape(o);
    MatPoly out(ctx_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Poly s(ctx_);
        for (std::size_t k = 0; k < n_; ++k) s += (*this)(i, k) * o(k, j);
        out.at(i, j) = std::move(s);
      }
    return out;
  }

  MatPoly operator+(const MatPoly& o) const {
    requireShape(o);
    MatPoly out(*this);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += o.entries_[i];
    return out;
  }

  MatPoly operator-(const MatPoly& o) const {
    requireShape(o);
    MatPoly out(*this);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= o.entries_[i];
    return out;
  }

  MatPoly& operator+=(const MatPoly& o) { return *this = *this + o; }
  MatPoly& operator-=(const MatPoly& o) { return *this = *this - o; }

  MatPoly scaled(const Poly& p) const {
    MatPoly out(*this);
    for (auto& e : out.entries_) e = p * e;
    return out;
  }

  MatPoly scaled(const Rational& c) const {
    MatPoly out(*this);
    for (auto& e : out.entries_) e = e.scaled(c);
    return out;
  }

  // Row-major evaluation.
  std::vector<Rational> evaluate(std::span<const Rational> point) const {
    std::vector<Rational> out;
    out.reserve(entries_.size());
    for (const auto& p : entries_) out.push_back(p.evaluate(point));
    return out;
  }

  bool operator==(const MatPoly& o) const { return n_ == o.n_ && entries_ == o.entries_; }

 private:
  void requireShape(const MatPoly& o) const {
    requireSameContext(ctx_, o.ctx_);
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  }

  ContextPtr ctx_;
  std::size_t n_;
  std::vector<Poly> entries_;
};

// a (x) b as the matrix with (i, j) entry a_i * b_j.
inline MatPoly tensor(const ModVec& a, const ModVec& b) {
  requireSameContext(a.context(), b.context());
  if (a.rank() != b.rank())
    throw std::invalid_argument("tensor: rank mismatch " + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()));
  std::size_t n = a.rank();
  MatPoly m(a.context(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].isZero()) continue;
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a[i] * b[j];
  }
  return m;
}

}  // namespace realnull
