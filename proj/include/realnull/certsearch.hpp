#pragma once

#include "realnull/certificates.hpp"
#include "realnull/gram.hpp"
#include "realnull/linalg.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace realnull {

enum class SquareMode { linear, numeric };

// Exact solve for f (x) f = sum_i (r_i (x) g_i + g_i (x) r_i) with the
// entries of each r_i of degree <= degreeBound. Members of N are certified
// directly (f (x) f already lies in M (x) N) without witnesses.
inline std::optional<TensorCert> linearTensorSearch(const ModVec& f, const Submodule& module,
                                                    unsigned degreeBound) {
  requireSameContext(f.context(), module.context());
  std::size_t n = module.rank();
  if (f.rank() != n) throw std::invalid_argument("linearTensorSearch: rank mismatch");
  if (module.contains(f)) {
    TensorCert direct{f, {}, std::nullopt};
    if (verifyTensor(direct, module)) return direct;
  }
  const auto& ctx = module.context();
  const auto& gens = module.generators();
  auto monos = monomialsUpToDegree(ctx->numVars(), degreeBound);

  struct Unknown {
    std::size_t gen, pos;
    Monomial mono;
  };
  std::vector<Unknown> unknowns;
  std::vector<MatPoly> columns;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].isZero()) continue;
    for (std::size_t p = 0; p < n; ++p)
      for (const auto& m : monos) {
        ModVec r(ctx, n);
        r.at(p) = Poly::monomial(ctx, m, Rational(1));
        columns.push_back(tensor(r, gens[i]) + tensor(gens[i], r));
        unknowns.push_back({i, p, m});
      }
  }
  if (unknowns.empty()) return std::nullopt;
  MatPoly lhs = tensor(f, f);

  std::map<std::pair<std::size_t, Monomial>, std::size_t> rowOf;
  auto keysOf = [&](const MatPoly& m) {
    for (std::size_t e = 0; e < n * n; ++e)
      for (const auto& t : m(e / n, e % n).terms()) rowOf.try_emplace({e, t.mono}, rowOf.size());
  };
  keysOf(lhs);
  for (const auto& c : columns) keysOf(c);
  RationalMatrix a(rowOf.size(), unknowns.size());
  std::vector<Rational> b(rowOf.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t e = 0; e < n * n; ++e)
      for (const auto& t : columns[j](e / n, e % n).terms()) a(rowOf.at({e, t.mono}), j) = t.coef;
  for (std::size_t e = 0; e < n * n; ++e)
    for (const auto& t : lhs(e / n, e % n).terms()) b[rowOf.at({e, t.mono})] = t.coef;

  auto x = solveLinear(a, b);
  if (!x) return std::nullopt;
  std::vector<ModVec> r(gens.size(), ModVec(ctx, n));
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    if (sgn((*x)[j]) == 0) continue;
    const auto& u = unknowns[j];
    r[u.gen].at(u.pos) += Poly::monomial(ctx, u.mono, (*x)[j]);
  }
  std::vector<TensorWitness> witnesses;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (r[i].isZero()) continue;
    witnesses.push_back({r[i], i, WitnessSide::left});
    witnesses.push_back({r[i], i, WitnessSide::right});
  }
  TensorCert cert{f, {}, std::move(witnesses)};
  if (!verifyTensor(cert, module)) return std::nullopt;
  return cert;
}

// Numeric Gram search for f (x) f + sum s (x) s in M (x) N + N (x) M with the
// s of degree <= degreeBound. Returned certificates are exactly verified.
inline std::optional<TensorCert> gramTensorSearch(const ModVec& f, const Submodule& module, unsigned degreeBound,
                                                  const GramOptions& opt = {}) {
  GramProblem prob = buildGramProblem(f, module, degreeBound);
  auto numeric = solveGramNumeric(prob, opt);
  if (!numeric) return std::nullopt;
  auto squares = certifyGram(prob, *numeric, opt);
  if (!squares) return std::nullopt;
  TensorCert cert{f, std::move(*squares), std::nullopt};
  if (!verifyTensor(cert, module)) return std::nullopt;
  return cert;
}

// Bounded search for f^{2k} + sum s_i^2 in I, k = 1..kMax. For each k the
// L = 0 membership test runs first, then (numeric mode) the Gram pass.
inline std::optional<SquareCert> squareSearch(const Poly& f, const Submodule& ideal, unsigned kMax,
                                              unsigned degreeBound, SquareMode mode,
                                              const GramOptions& opt = {}) {
  requireSameContext(f.context(), ideal.context());
  if (ideal.rank() != 1) throw std::invalid_argument("squareSearch: the ideal must have rank 1");
  const auto& ctx = ideal.context();
  for (unsigned k = 1; k <= kMax; ++k) {
    SquareCert plain{f, k, {}, std::nullopt};
    if (verifySquare(plain, ideal)) return plain;
    if (mode != SquareMode::numeric) continue;
    ModVec y(ctx, std::vector<Poly>{f.pow(k)});
    auto tc = gramTensorSearch(y, ideal, degreeBound, opt);
    if (!tc) continue;
    SquareCert cert{f, k, {}, std::nullopt};
    for (const auto& s : tc->squares) cert.squares.push_back(s[0]);
    if (verifySquare(cert, ideal)) return cert;
  }
  return std::nullopt;
}

}  // namespace realnull
