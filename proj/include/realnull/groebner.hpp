#pragma once

#include "realnull/freemodule.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace realnull {

// Position-over-term order on module monomials m*e_p: a smaller position
// index is larger, ties broken by the context's monomial order.
namespace detail {

inline std::optional<std::size_t> leadingPosition(const ModVec& v) {
  for (std::size_t i = 0; i < v.rank(); ++i)
    if (!v[i].isZero()) return i;
  return std::nullopt;
}

inline int compareLeading(const ModVec& a, const ModVec& b) {
  auto pa = leadingPosition(a), pb = leadingPosition(b);
  if (!pa || !pb) return pa ? 1 : (pb ? -1 : 0);
  if (*pa != *pb) return *pa < *pb ? 1 : -1;
  return compareMonomials(a[*pa].leadingTerm().mono, b[*pb].leadingTerm().mono,
                          a.context()->order());
}

inline ModVec makeMonic(ModVec v) {
  auto p = leadingPosition(v);
  if (!p) return v;
  Rational lc = v[*p].leadingTerm().coef;
  if (lc == 1) return v;
  return v.scaled(Rational(1) / lc);
}

// Full reduction: no term of the result is divisible by a leading term in its position.
inline ModVec reduceFull(ModVec v, const std::vector<ModVec>& basis) {
  std::vector<std::optional<std::size_t>> leadPos;
  leadPos.reserve(basis.size());
  for (const auto& g : basis) leadPos.push_back(leadingPosition(g));
  for (std::size_t p = 0; p < v.rank(); ++p) {
    Poly remainder(v.context());
    while (!v[p].isZero()) {
      const Term& t = v[p].leadingTerm();
      const ModVec* divisor = nullptr;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (leadPos[i] != p) continue;
        if (basis[i][p].leadingTerm().mono.divides(t.mono)) {
          divisor = &basis[i];
          break;
        }
      }
      if (divisor) {
        const Term& lt = (*divisor)[p].leadingTerm();
        Rational c = t.coef / lt.coef;
        Monomial m = t.mono / lt.mono;
        v.subtractMultiple(c, m, *divisor);
      } else {
        remainder.pushTrailing(v.at(p).popLeading());
      }
    }
    v.at(p) = std::move(remainder);
  }
  return v;
}

inline ModVec sVector(const ModVec& a, const ModVec& b, std::size_t pos) {
  const Term& ta = a[pos].leadingTerm();
  const Term& tb = b[pos].leadingTerm();
  Monomial l = ta.mono.lcm(tb.mono);
  ModVec s = a.scaled(Poly::monomial(a.context(), l / ta.mono, Rational(1) / ta.coef));
  s.subtractMultiple(Rational(1) / tb.coef, l / tb.mono, b);
  return s;
}

// Buchberger's algorithm with the normal selection strategy. The coprime
// (product) criterion is only sound for ideals, so it is used for rank 1 only.
inline std::vector<ModVec> buchberger(const std::vector<ModVec>& generators) {
  std::vector<ModVec> basis;
  for (const auto& g : generators) {
    if (g.isZero()) continue;
    ModVec r = reduceFull(g, basis);
    if (!r.isZero()) basis.push_back(makeMonic(std::move(r)));
  }
  if (basis.empty()) return basis;

  // (lcm degree, i, j)
  std::set<std::tuple<std::uint64_t, std::size_t, std::size_t>> pairs;
  const bool ideal = basis.front().rank() == 1;
  auto addPairs = [&](std::size_t j) {
    auto pj = leadingPosition(basis[j]);
    for (std::size_t i = 0; i < j; ++i) {
      if (leadingPosition(basis[i]) != pj) continue;
      const Monomial& mi = basis[i][*pj].leadingTerm().mono;
      const Monomial& mj = basis[j][*pj].leadingTerm().mono;
      if (ideal && mi.coprime(mj)) continue;
      pairs.emplace(mi.lcm(mj).degree(), i, j);
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) addPairs(j);

  while (!pairs.empty()) {
    auto [deg, i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    auto pos = *leadingPosition(basis[i]);
    ModVec s = reduceFull(sVector(basis[i], basis[j], pos), basis);
    if (s.isZero()) continue;
    basis.push_back(makeMonic(std::move(s)));
    addPairs(basis.size() - 1);
  }

  // Minimalize, then interreduce.
  std::sort(basis.begin(), basis.end(),
            [](const ModVec& a, const ModVec& b) { return compareLeading(a, b) < 0; });
  std::vector<ModVec> minimal;
  for (const auto& g : basis) {
    auto pg = *leadingPosition(g);
    const Monomial& mg = g[pg].leadingTerm().mono;
    bool redundant = false;
    for (const auto& h : minimal) {
      auto ph = *leadingPosition(h);
      if (ph == pg && h[ph].leadingTerm().mono.divides(mg)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(g);
  }
  std::vector<ModVec> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ModVec> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    reduced.push_back(makeMonic(reduceFull(minimal[i], others)));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const ModVec& a, const ModVec& b) { return compareLeading(a, b) > 0; });
  return reduced;
}

}  // namespace detail

// Finitely generated submodule of R^rank with a lazily computed reduced
// Groebner basis. Copies share the cache; the basis is computed at most once.
class Submodule {
 public:
  Submodule(ContextPtr ctx, std::size_t rank, std::vector<ModVec> generators = {})
      : ctx_(std::move(ctx)), rank_(rank), generators_(std::move(generators)),
        cache_(std::make_shared<Cache>()) {
    if (rank_ == 0) throw std::invalid_argument("module rank must be positive");
    for (const auto& g : generators_) {
      requireSameContext(ctx_, g.context());
      if (g.rank() != rank_)
        throw std::invalid_argument("generator rank " + std::to_string(g.rank()) +
                                    " does not match module rank " + std::to_string(rank_));
    }
  }

  static Submodule ideal(const ContextPtr& ctx, const std::vector<Poly>& generators) {
    std::vector<ModVec> gens;
    for (const auto& g : generators) gens.emplace_back(ctx, std::vector<Poly>{g});
    return Submodule(ctx, 1, std::move(gens));
  }

  const ContextPtr& context() const { return ctx_; }
  std::size_t rank() const { return rank_; }
  // As given, zero generators included; they do not affect the module.
  const std::vector<ModVec>& generators() const { return generators_; }

  const std::vector<ModVec>& groebnerBasis() const {
    std::call_once(cache_->once, [this] { cache_->basis = detail::buchberger(generators_); });
    return cache_->basis;
  }

  ModVec normalForm(const ModVec& v) const {
    requireSameContext(ctx_, v.context());
    if (v.rank() != rank_)
      throw std::invalid_argument("rank mismatch: vector of rank " + std::to_string(v.rank()) +
                                  " against module of rank " + std::to_string(rank_));
    return detail::reduceFull(v, groebnerBasis());
  }

  bool contains(const ModVec& v) const { return normalForm(v).isZero(); }

  bool isZero() const { return groebnerBasis().empty(); }

  Submodule extended(const std::vector<ModVec>& extra) const {
    auto gens = generators_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Submodule(ctx_, rank_, std::move(gens));
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<ModVec> basis;
  };

  ContextPtr ctx_;
  std::size_t rank_;
  std::vector<ModVec> generators_;
  std::shared_ptr<Cache> cache_;
};

inline std::vector<ModVec> groebnerBasis(const Submodule& s) { return s.groebnerBasis(); }

inline ModVec normalForm(const ModVec& v, const Submodule& s) { return s.normalForm(v); }

inline bool contains(const ModVec& v, const Submodule& s) { return s.contains(v); }

inline bool moduleEquals(const Submodule& a, const Submodule& b) {
  requireSameContext(a.context(), b.context());
  if (a.rank() != b.rank()) throw std::invalid_argument("moduleEquals: rank mismatch");
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

// M (x) N + N (x) M inside M (x) M = R^{n^2}, generated by the flattenings of
// e_a (x) g_b and g_b (x) e_a. For each generator g_b the e_a (x) g_b come first.
inline Submodule tensorModule(const Submodule& n) {
  const auto& ctx = n.context();
  std::size_t rank = n.rank();
  std::vector<ModVec> gens;
  for (const auto& g : n.generators()) {
    if (g.isZero()) continue;
    for (std::size_t a = 0; a < rank; ++a)
      gens.push_back(tensor(ModVec::basis(ctx, rank, a), g).flatten());
    for (std::size_t a = 0; a < rank; ++a)
      gens.push_back(tensor(g, ModVec::basis(ctx, rank, a)).flatten());
  }
  return Submodule(ctx, rank * rank, std::move(gens));
}

}  // namespace realnull
