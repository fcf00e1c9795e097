#pragma once

#include "realnull/certificates.hpp"
#include "realnull/linalg.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace realnull {

// Best rational approximation of x with denominator <= maxDenominator, from
// the continued fraction convergents and the last admissible semiconvergent.
inline Rational rationalize(double x, std::int64_t maxDenominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite value");
  if (maxDenominator < 1) throw std::invalid_argument("rationalize: denominator bound must be >= 1");
  bool negative = x < 0;
  long double y = std::fabs(static_cast<long double>(x));
  long double whole = std::floor(y);
  if (whole > 4e18L) throw std::invalid_argument("rationalize: value out of range");
  // convergents h/k
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double frac = y;
  Rational best;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(frac);
    Integer ai(static_cast<unsigned long>(a));
    Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > maxDenominator) {
      // largest semiconvergent that still fits
      Integer t = (Integer(static_cast<long>(maxDenominator)) - k0) / k1;
      Rational semi(t * h1 + h0, t * k1 + k0);
      Rational conv(h1, k1);
      semi.canonicalize();
      conv.canonicalize();
      long double ds = std::fabs(semi.get_d() - y), dc = std::fabs(conv.get_d() - y);
      best = (t > 0 && ds < dc) ? semi : conv;
      return negative ? Rational(-best) : best;
    }
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double rest = frac - a;
    if (rest < 1e-18L) break;
    frac = 1 / rest;
    if (frac > 1e18L) break;
  }
  best = Rational(h1, k1);
  best.canonicalize();
  return negative ? Rational(-best) : best;
}

// n = a^2 + b^2 + c^2 + d^2 by greedy search with an iteration cap.
inline std::optional<std::array<Integer, 4>> sumOfFourSquares(const Integer& n,
                                                              std::size_t maxSteps = 2'000'000) {
  if (n < 0) return std::nullopt;
  auto isqrt = [](const Integer& v) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
  };
  std::size_t steps = 0;
  for (Integer a = isqrt(n); a >= 0; --a) {
    Integer r1 = n - a * a;
    for (Integer b = isqrt(r1); b >= 0 && 3 * b * b >= r1; --b) {
      Integer r2 = r1 - b * b;
      for (Integer c = isqrt(r2); c >= 0 && 2 * c * c >= r2; --c) {
        if (++steps > maxSteps) return std::nullopt;
        Integer r3 = r2 - c * c;
        Integer d = isqrt(r3);
        if (d * d == r3) return std::array<Integer, 4>{a, b, c, d};
      }
    }
    if (4 * a * a < n) break;
  }
  return std::nullopt;
}

// Writes c * v (x) v, c >= 0 rational, as a sum of rational squares s (x) s.
inline std::optional<std::vector<ModVec>> weightedSquare(const Rational& c, const ModVec& v) {
  if (sgn(c) < 0) return std::nullopt;
  if (sgn(c) == 0 || v.isZero()) return std::vector<ModVec>{};
  Integer num = c.get_num(), den = c.get_den();
  Integer rn, rd;
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    return std::vector<ModVec>{v.scaled(r)};
  }
  // c = (num*den) / den^2
  auto parts = sumOfFourSquares(num * den);
  if (!parts) return std::nullopt;
  std::vector<ModVec> out;
  for (const auto& p : *parts) {
    if (p == 0) continue;
    Rational r(p, den);
    r.canonicalize();
    out.push_back(v.scaled(r));
  }
  return out;
}

struct GramOptions {
  std::size_t maxIterations = 4000;
  double tolerance = 1e-9;
  std::vector<std::int64_t> denominatorCaps = {1, 2, 4, 8, 16, 32, 64, 128, 256, 1024, 4096, 65536, 1 << 20};
};

// Gram-matrix formulation of  y (x) y + sum_k s_k (x) s_k in M (x) P + P (x) M
// with s_k in the span of `basis`: sigma = sum G_ab b_a (x) b_b, and the
// constraint is that the normal form of y (x) y + sigma vanishes, which is
// linear in the upper-triangular entries of G.
struct GramProblem {
  ModVec target;
  Submodule module;
  Submodule tensorMod;
  std::vector<ModVec> basis;
  std::vector<std::pair<std::size_t, std::size_t>> params;  // (a, b), a <= b
  RationalMatrix constraints;
  std::vector<Rational> rhs;

  std::size_t size() const { return basis.size(); }
};

inline GramProblem buildGramProblem(const ModVec& target, const Submodule& module, unsigned degreeBound) {
  const auto& ctx = module.context();
  std::size_t n = module.rank();
  if (target.rank() != n) throw std::invalid_argument("buildGramProblem: rank mismatch");
  Submodule tmod = tensorModule(module);
  std::vector<ModVec> basis;
  for (const auto& m : monomialsUpToDegree(ctx->numVars(), degreeBound))
    for (std::size_t p = 0; p < n; ++p) {
      ModVec b(ctx, n);
      b.at(p) = Poly::monomial(ctx, m, Rational(1));
      basis.push_back(std::move(b));
    }
  std::vector<std::pair<std::size_t, std::size_t>> params;
  std::vector<ModVec> columns;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b) {
      MatPoly m = tensor(basis[a], basis[b]);
      if (a != b) m += tensor(basis[b], basis[a]);
      params.emplace_back(a, b);
      columns.push_back(tmod.normalForm(m.flatten()));
    }
  ModVec base = tmod.normalForm(tensor(target, target).flatten());

  std::map<std::pair<std::size_t, Monomial>, std::size_t> rowOf;
  auto keysOf = [&](const ModVec& v) {
    for (std::size_t p = 0; p < v.rank(); ++p)
      for (const auto& t : v[p].terms()) rowOf.try_emplace({p, t.mono}, rowOf.size());
  };
  keysOf(base);
  for (const auto& c : columns) keysOf(c);
  RationalMatrix a(rowOf.size(), params.size());
  std::vector<Rational> rhs(rowOf.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t p = 0; p < n * n; ++p)
      for (const auto& t : columns[j][p].terms()) a(rowOf.at({p, t.mono}), j) = t.coef;
  for (std::size_t p = 0; p < n * n; ++p)
    for (const auto& t : base[p].terms()) rhs[rowOf.at({p, t.mono})] = -t.coef;
  return {target, module, tmod, std::move(basis), std::move(params), std::move(a), std::move(rhs)};
}

// Alternating projections between the affine constraint set and the PSD cone,
// in Frobenius geometry. Returns the last iterate once its affine residual and
// most negative eigenvalue are both within tolerance.
inline std::optional<Eigen::MatrixXd> solveGramNumeric(const GramProblem& prob, const GramOptions& opt = {}) {
  const std::size_t np = prob.params.size(), nb = prob.size();
  if (np == 0) return std::nullopt;
  if (!solveLinear(prob.constraints, prob.rhs)) return std::nullopt;
  if (prob.constraints.rows() == 0) return Eigen::MatrixXd::Zero(nb, nb);

  Eigen::VectorXd scale(np);
  for (std::size_t j = 0; j < np; ++j)
    scale[j] = prob.params[j].first == prob.params[j].second ? 1.0 : std::sqrt(2.0);
  Eigen::MatrixXd a(prob.constraints.rows(), np);
  Eigen::VectorXd b(prob.constraints.rows());
  for (std::size_t r = 0; r < prob.constraints.rows(); ++r) {
    for (std::size_t j = 0; j < np; ++j) a(r, j) = prob.constraints(r, j).get_d() / scale[j];
    b[r] = prob.rhs[r].get_d();
  }
  Eigen::MatrixXd pinv = a.completeOrthogonalDecomposition().pseudoInverse();

  auto toMatrix = [&](const Eigen::VectorXd& w) {
    Eigen::MatrixXd g(nb, nb);
    for (std::size_t j = 0; j < np; ++j) {
      auto [r, c] = prob.params[j];
      double v = w[j] / scale[j];
      g(r, c) = v;
      g(c, r) = v;
    }
    return g;
  };
  auto toVector = [&](const Eigen::MatrixXd& g) {
    Eigen::VectorXd w(np);
    for (std::size_t j = 0; j < np; ++j) w[j] = g(prob.params[j].first, prob.params[j].second) * scale[j];
    return w;
  };

  Eigen::VectorXd w = pinv * b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for (std::size_t it = 0; it < opt.maxIterations; ++it) {
    Eigen::MatrixXd g = toMatrix(w);
    eig.compute(g);
    double minEig = eig.eigenvalues().minCoeff();
    double residual = (a * w - b).lpNorm<Eigen::Infinity>();
    if (minEig >= -opt.tolerance && residual <= opt.tolerance) return g;
    Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXd psd = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
    w = toVector(psd);
    w -= pinv * (a * w - b);
  }
  return std::nullopt;
}

namespace detail {

// Exact LDL^T of a symmetric rational matrix; nullopt if it is not PSD.
inline std::optional<std::pair<RationalMatrix, std::vector<Rational>>> ldlPsd(const RationalMatrix& g) {
  std::size_t n = g.rows();
  RationalMatrix l(n, n);
  std::vector<Rational> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    l(k, k) = 1;
    Rational dk = g(k, k);
    for (std::size_t j = 0; j < k; ++j) dk -= l(k, j) * l(k, j) * d[j];
    if (sgn(dk) < 0) return std::nullopt;
    d[k] = dk;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational v = g(i, k);
      for (std::size_t j = 0; j < k; ++j) v -= l(i, j) * l(k, j) * d[j];
      if (sgn(dk) == 0) {
        if (sgn(v) != 0) return std::nullopt;
      } else {
        l(i, k) = v / dk;
      }
    }
  }
  return std::make_pair(std::move(l), std::move(d));
}

}  // namespace detail

// Rounds a numeric Gram matrix to rationals, projects it exactly back onto the
// affine constraints, and extracts squares from an exact LDL^T. Only returns
// squares for which the tensor identity has been re-verified exactly.
inline std::optional<std::vector<ModVec>> certifyGram(const GramProblem& prob, const Eigen::MatrixXd& numeric,
                                                      const GramOptions& opt = {}) {
  const std::size_t np = prob.params.size(), nb = prob.size();
  if (static_cast<std::size_t>(numeric.rows()) != nb || static_cast<std::size_t>(numeric.cols()) != nb)
    throw std::invalid_argument("certifyGram: Gram matrix has the wrong size");
  const auto& a = prob.constraints;
  RationalMatrix aat(a.rows(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = r; s < a.rows(); ++s) {
      Rational v(0);
      for (std::size_t j = 0; j < np; ++j)
        if (sgn(a(r, j)) != 0 && sgn(a(s, j)) != 0) v += a(r, j) * a(s, j);
      aat(r, s) = v;
      aat(s, r) = v;
    }

  for (auto cap : opt.denominatorCaps) {
    std::vector<Rational> x(np);
    for (std::size_t j = 0; j < np; ++j)
      x[j] = rationalize(numeric(prob.params[j].first, prob.params[j].second), cap);
    std::vector<Rational> residual(a.rows());
    bool exact = true;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      Rational v = prob.rhs[r];
      for (std::size_t j = 0; j < np; ++j)
        if (sgn(a(r, j)) != 0) v -= a(r, j) * x[j];
      residual[r] = v;
      if (sgn(v) != 0) exact = false;
    }
    if (!exact) {
      auto y = solveLinear(aat, residual);
      if (!y) continue;
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t r = 0; r < a.rows(); ++r)
          if (sgn(a(r, j)) != 0 && sgn((*y)[r]) != 0) x[j] += a(r, j) * (*y)[r];
    }
    RationalMatrix g(nb, nb);
    for (std::size_t j = 0; j < np; ++j) {
      auto [r, c] = prob.params[j];
      g(r, c) = x[j];
      g(c, r) = x[j];
    }
    auto ldl = detail::ldlPsd(g);
    if (!ldl) continue;
    const auto& [l, d] = *ldl;
    std::vector<ModVec> squares;
    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k) {
      if (sgn(d[k]) == 0) continue;
      ModVec v(prob.target.context(), prob.target.rank());
      for (std::size_t i = k; i < nb; ++i)
        if (sgn(l(i, k)) != 0) v += prob.basis[i].scaled(l(i, k));
      auto parts = weightedSquare(d[k], v);
      if (!parts) {
        ok = false;
        break;
      }
      squares.insert(squares.end(), parts->begin(), parts->end());
    }
    if (!ok) continue;
    TensorCert check{prob.target, squares, std::nullopt};
    if (prob.tensorMod.contains(tensorSquareSum(check).flatten())) return squares;
  }
  return std::nullopt;
}

}  // namespace realnull
