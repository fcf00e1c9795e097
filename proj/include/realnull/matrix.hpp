#pragma once

#include "realnull/certificates.hpp"
#include "realnull/zeroset.hpp"

#include <vector>

namespace realnull {

// Left ideal of M_n(R) given by generators. A matrix belongs to it exactly
// when each of its rows lies in the row module.
class LeftIdeal {
 public:
  LeftIdeal(ContextPtr ctx, std::size_t n, std::vector<MatPoly> generators = {})
      : ctx_(std::move(ctx)), n_(n), generators_(std::move(generators)), rows_(buildRows()) {}

  const ContextPtr& context() const { return ctx_; }
  std::size_t size() const { return n_; }
  const std::vector<MatPoly>& generators() const { return generators_; }
  const Submodule& rows() const { return rows_; }

 private:
  Submodule buildRows() const {
    if (n_ == 0) throw std::invalid_argument("matrix size must be positive");
    std::vector<ModVec> rows;
    for (const auto& g : generators_) {
      requireSameContext(ctx_, g.context());
      if (g.size() != n_) throw std::invalid_argument("generator size does not match the ideal");
      for (std::size_t i = 0; i < n_; ++i) {
        ModVec r = g.row(i);
        if (!r.isZero()) rows.push_back(std::move(r));
      }
    }
    return Submodule(ctx_, n_, std::move(rows));
  }

  ContextPtr ctx_;
  std::size_t n_;
  std::vector<MatPoly> generators_;
  Submodule rows_;
};

inline Submodule rowsModule(const LeftIdeal& ideal) { return ideal.rows(); }

// The matrix with v in row `row` and zeros elsewhere.
inline MatPoly rowMatrix(const ModVec& v, std::size_t row = 0) {
  std::size_t n = v.rank();
  if (row >= n) throw std::out_of_range("rowMatrix: row index out of range");
  MatPoly m(v.context(), n);
  for (std::size_t j = 0; j < n; ++j) m.at(row, j) = v[j];
  return m;
}

inline LeftIdeal idealFromModule(const Submodule& module) {
  std::vector<MatPoly> gens;
  for (const auto& g : module.generators())
    if (!g.isZero()) gens.push_back(rowMatrix(g));
  return LeftIdeal(module.context(), module.rank(), std::move(gens));
}

inline bool idealContains(const MatPoly& m, const LeftIdeal& ideal) {
  requireSameContext(m.context(), ideal.context());
  if (m.size() != ideal.size()) throw std::invalid_argument("idealContains: size mismatch");
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!ideal.rows().contains(m.row(i))) return false;
  return true;
}

struct RealStepReport {
  MatPoly sum;                  // sum H_i^T H_i
  bool sumInSymmetricPart = false;  // sum lies in J + J^T
  std::vector<bool> members;    // H_i in J
  bool allMembers = true;
};

// One instance of the realness condition. Under a (x) b -> a^T b, H^T H is the
// sum of row (x) row over the rows of H, and J + J^T corresponds to
// M (x) N + N (x) M for the row module N.
inline RealStepReport verifyRealIdealStep(const std::vector<MatPoly>& hs, const LeftIdeal& ideal) {
  RealStepReport report{MatPoly(ideal.context(), ideal.size()), false, {}, true};
  for (const auto& h : hs) {
    requireSameContext(h.context(), ideal.context());
    if (h.size() != ideal.size()) throw std::invalid_argument("verifyRealIdealStep: size mismatch");
    report.sum += h.transpose() * h;
  }
  report.sumInSymmetricPart = tensorModule(ideal.rows()).contains(report.sum.flatten());
  for (const auto& h : hs) {
    bool member = idealContains(h, ideal);
    report.members.push_back(member);
    report.allMembers = report.allMembers && member;
  }
  return report;
}

// Samples (a, u) in the real zero set of J and checks F(a) u = 0.
inline SaturationResult saturationMatrix(const MatPoly& m, const LeftIdeal& ideal, const SampleConfig& cfg) {
  requireSameContext(m.context(), ideal.context());
  if (m.size() != ideal.size()) throw std::invalid_argument("saturationMatrix: size mismatch");
  std::vector<ModVec> rows;
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(m.row(i));
  return saturationTestAll(rows, ideal.rows(), cfg);
}

// A chain over the row module certifies every row of m, hence m, in the real
// radical of J.
inline Verdict verifyMatrixChain(const ChainCert& cert, const LeftIdeal& ideal, const MatPoly& m) {
  requireSameContext(m.context(), ideal.context());
  if (m.size() != ideal.size()) throw std::invalid_argument("verifyMatrixChain: size mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) {
    ModVec r = m.row(i);
    if (r.isZero()) continue;
    Verdict v = verifyChain(cert, ideal.rows(), r);
    if (!v) {
      v.reason = "row " + std::to_string(i + 1) + ": " + v.reason;
      return v;
    }
  }
  return Verdict::ok();
}

}  // namespace realnull
