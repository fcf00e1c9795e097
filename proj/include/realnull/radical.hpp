#pragma once

#include "realnull/certificates.hpp"
#include "realnull/certsearch.hpp"
#include "realnull/zeroset.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace realnull {

// One descent step: pivot entry g_kl of generator k at coordinate l.
// g'_i = sum_{j != l} (g_kl g_ij - g_kj g_il) e'_j and f' likewise, so that
// embedAt(g'_i, l) = g_kl g_i - g_il g_k and embedAt(f', l) = g_kl f - f_l g_k.
struct EliminationStep {
  std::size_t generator = 0;
  std::size_t coordinate = 0;
  std::vector<ModVec> generators;
  ModVec target;
};

inline EliminationStep eliminate(const std::vector<ModVec>& gens, const ModVec& f, std::size_t k,
                                 std::size_t l) {
  std::size_t n = f.rank();
  if (n < 2) throw std::invalid_argument("eliminate: rank must be at least 2");
  if (k >= gens.size()) throw std::out_of_range("eliminate: generator index out of range");
  if (l >= n) throw std::out_of_range("eliminate: coordinate index out of range");
  const auto& ctx = f.context();
  const ModVec& gk = gens[k];
  auto derive = [&](const ModVec& v) {
    requireSameContext(ctx, v.context());
    if (v.rank() != n) throw std::invalid_argument("eliminate: rank mismatch");
    std::vector<Poly> out;
    out.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != l) out.push_back(gk[l] * v[j] - gk[j] * v[l]);
    return ModVec(ctx, std::move(out));
  };
  EliminationStep step{k, l, {}, derive(f)};
  for (const auto& g : gens) step.generators.push_back(derive(g));
  return step;
}

// The ideal generated by every nonzero coordinate of every generator, in (k, l) order.
inline Submodule entryIdeal(const Submodule& module) {
  std::vector<Poly> entries;
  for (const auto& g : module.generators())
    for (const auto& p : g.entries())
      if (!p.isZero()) entries.push_back(p);
  return Submodule::ideal(module.context(), entries);
}

// (h_1, ..., h_n) h, generated by h_j h in coordinate order (zero ones kept
// so that generator j always belongs to coordinate j).
inline Submodule selfModule(const ModVec& h) {
  std::vector<ModVec> gens;
  for (const auto& hj : h.entries()) gens.push_back(hj * h);
  return Submodule(h.context(), h.rank(), std::move(gens));
}

// h (x) h = sum_j ( e_j/2 (x) h_j h + h_j h (x) e_j/2 ), relative to selfModule(h).
inline TensorCert selfCert(const ModVec& h) {
  std::vector<TensorWitness> witnesses;
  for (std::size_t j = 0; j < h.rank(); ++j) {
    if (h[j].isZero()) continue;
    ModVec half = ModVec::basis(h.context(), h.rank(), j).scaled(Rational(1, 2));
    witnesses.push_back({half, j, WitnessSide::left});
    witnesses.push_back({half, j, WitnessSide::right});
  }
  return TensorCert{h, {}, std::move(witnesses)};
}

// I f, generated by q f for each generator q of I (same order).
inline Submodule idealTimes(const Submodule& ideal, const ModVec& f) {
  if (ideal.rank() != 1) throw std::invalid_argument("idealTimes: expected an ideal");
  std::vector<ModVec> gens;
  for (const auto& q : ideal.generators()) gens.push_back(q[0] * f);
  return Submodule(f.context(), f.rank(), std::move(gens));
}

// From c^{2k} + sum s_i^2 in I, the element c^k f with squares s_i f lies in
// the auxiliary radical of I f: multiply the scalar identity by f (x) f.
inline TensorCert squareCertToTensor(const SquareCert& sc, const Submodule& ideal, const ModVec& f) {
  if (!verifySquare(sc, ideal)) throw std::invalid_argument("squareCertToTensor: input certificate is invalid");
  TensorCert out{sc.f.pow(sc.k) * f, {}, std::nullopt};
  for (const auto& s : sc.squares) out.squares.push_back(s * f);
  if (sc.cofactors) {
    std::vector<TensorWitness> witnesses;
    for (std::size_t q = 0; q < sc.cofactors->size(); ++q) {
      const Poly& c = (*sc.cofactors)[q];
      if (c.isZero()) continue;
      witnesses.push_back({c * f, q, WitnessSide::left});
    }
    out.witnesses = std::move(witnesses);
  }
  return out;
}

struct SearchConfig {
  unsigned degreeBound = 2;
  unsigned kMax = 3;
  std::size_t maxChainDepth = 64;
  bool numericSos = true;
  // Try plain membership and direct tensor searches before the descent.
  bool shortcuts = true;
  SampleConfig sampling{};
  GramOptions gram{};
};

struct SearchFailure {
  std::string reason;
  std::optional<PointPair> counterexample;
};

using SearchResult = std::variant<ChainCert, SearchFailure>;

namespace detail {

inline ChainCert liftChain(const ChainCert& sub, std::size_t position) {
  ChainCert out;
  for (const auto& layer : sub.layers) {
    std::vector<TensorCert> lifted;
    for (const auto& c : layer) {
      TensorCert t{embedAt(c.f, position), {}, std::nullopt};
      for (const auto& s : c.squares) t.squares.push_back(embedAt(s, position));
      lifted.push_back(std::move(t));
    }
    out.layers.push_back(std::move(lifted));
  }
  return out;
}

inline void mergeLayers(std::vector<std::vector<TensorCert>>& into, const ChainCert& sub) {
  if (into.size() < sub.layers.size()) into.resize(sub.layers.size());
  for (std::size_t i = 0; i < sub.layers.size(); ++i)
    into[i].insert(into[i].end(), sub.layers[i].begin(), sub.layers[i].end());
}

// f^k in a module P implies f in its real radical: certify f^{ceil(e/2)}
// from f^e until the exponent reaches 1.
inline void appendHalvingLayers(std::vector<std::vector<TensorCert>>& layers, const ModVec& f,
                                unsigned k) {
  unsigned e = k;
  while (e > 1) {
    e = (e + 1) / 2;
    ModVec y(f.context(), std::vector<Poly>{f[0].pow(e)});
    layers.push_back({TensorCert{y, {}, std::nullopt}});
  }
}

inline SearchResult searchChain(const Submodule& module, const ModVec& f, const SearchConfig& cfg) {
  const auto& ctx = module.context();
  std::size_t n = module.rank();
  ChainCert chain{module.generators(), {}};
  if (module.contains(f)) return chain;
  if (module.isZero()) return SearchFailure{"target is nonzero but the module is zero", std::nullopt};
  const auto mode = cfg.numericSos ? SquareMode::numeric : SquareMode::linear;

  if (cfg.shortcuts) {
    for (unsigned d = 0; d <= cfg.degreeBound; ++d)
      if (auto tc = linearTensorSearch(f, module, d)) {
        chain.layers.push_back({std::move(*tc)});
        return chain;
      }
    if (cfg.numericSos)
      for (unsigned d = 0; d <= cfg.degreeBound; ++d)
        if (auto tc = gramTensorSearch(f, module, d, cfg.gram)) {
          chain.layers.push_back({std::move(*tc)});
          return chain;
        }
  }

  if (n == 1) {
    auto sc = squareSearch(f[0], module, cfg.kMax, cfg.degreeBound, mode, cfg.gram);
    if (!sc)
      return SearchFailure{"no square certificate with k <= " + std::to_string(cfg.kMax) +
                               " and square degree <= " + std::to_string(cfg.degreeBound),
                           std::nullopt};
    TensorCert first{ModVec(ctx, std::vector<Poly>{f[0].pow(sc->k)}), {}, std::nullopt};
    for (const auto& s : sc->squares) first.squares.emplace_back(ctx, std::vector<Poly>{s});
    chain.layers.push_back({std::move(first)});
    appendHalvingLayers(chain.layers, f, sc->k);
    return chain;
  }

  // Descent: for pivots g_kl, certify g_kl f through the eliminated system.
  struct Pivot {
    long degree;
    std::size_t k, l;
  };
  const auto& gens = module.generators();
  std::vector<Pivot> pivots;
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (!gens[k][l].isZero()) pivots.push_back({gens[k][l].totalDegree(), k, l});
  std::stable_sort(pivots.begin(), pivots.end(),
                   [](const Pivot& a, const Pivot& b) { return a.degree < b.degree; });

  std::vector<Poly> entries;
  std::vector<std::vector<TensorCert>> layers;
  std::string lastFailure;
  for (const auto& pv : pivots) {
    const Poly& entry = gens[pv.k][pv.l];
    if (!entries.empty() && Submodule::ideal(ctx, entries).contains(ModVec(ctx, std::vector<Poly>{entry})))
      continue;
    EliminationStep step = eliminate(gens, f, pv.k, pv.l);
    Submodule reduced(ctx, n - 1, step.generators);
    SearchResult sub;
    if (reduced.isZero()) {
      if (!step.target.isZero()) {
        lastFailure = "eliminated system is zero but the eliminated target is not";
        continue;
      }
      sub = ChainCert{step.generators, {}};
    } else {
      sub = searchChain(reduced, step.target, cfg);
    }
    if (auto* fail = std::get_if<SearchFailure>(&sub)) {
      lastFailure = fail->reason;
      continue;
    }
    mergeLayers(layers, liftChain(std::get<ChainCert>(sub), pv.l));
    entries.push_back(entry);
  }
  if (entries.empty())
    return SearchFailure{"no pivot could be certified (" + lastFailure + ")", std::nullopt};
  Submodule certifiedIdeal = Submodule::ideal(ctx, entries);

  // Powers f_j^{t_j} f from square certificates over the certified entries.
  std::vector<std::size_t> support;
  std::vector<unsigned> exponents;
  std::vector<TensorCert> powerLayer;
  for (std::size_t j = 0; j < n; ++j) {
    if (f[j].isZero()) continue;
    auto sc = squareSearch(f[j], certifiedIdeal, cfg.kMax, cfg.degreeBound, mode, cfg.gram);
    if (!sc)
      return SearchFailure{"no square certificate for coordinate " + std::to_string(j + 1) +
                               " over the entry ideal with k <= " + std::to_string(cfg.kMax) +
                               " and square degree <= " + std::to_string(cfg.degreeBound),
                           std::nullopt};
    TensorCert tc = squareCertToTensor(*sc, certifiedIdeal, f);
    tc.witnesses.reset();
    powerLayer.push_back(std::move(tc));
    support.push_back(j);
    exponents.push_back(sc->k);
  }
  layers.push_back(std::move(powerLayer));

  // Every monomial of degree >= t in the f_j carries some f_j^{t_j}.
  unsigned t = 1;
  for (auto e : exponents) t += e - 1;

  // Self-certificates p f for monomials p of degree < t: p f needs every
  // p^2 f_j f, of degree 2 deg(p) + 1.
  using Exps = std::vector<unsigned>;
  std::map<unsigned, std::set<Exps>, std::greater<>> byDegree;
  std::vector<Exps> stack{Exps(support.size(), 0)};
  std::set<Exps> seen{stack.back()};
  while (!stack.empty()) {
    Exps p = stack.back();
    stack.pop_back();
    unsigned deg = 0;
    for (auto e : p) deg += e;
    byDegree[deg].insert(p);
    for (std::size_t j = 0; j < support.size(); ++j) {
      Exps q = p;
      for (auto& e : q) e *= 2;
      q[j] += 1;
      if (2 * deg + 1 < t && seen.insert(q).second) stack.push_back(q);
    }
  }
  for (const auto& [deg, monos] : byDegree) {
    std::vector<TensorCert> layer;
    for (const auto& p : monos) {
      Poly scalar = Poly::constant(ctx, Rational(1));
      for (std::size_t j = 0; j < support.size(); ++j) scalar *= f[support[j]].pow(p[j]);
      layer.push_back(TensorCert{scalar * f, {}, std::nullopt});
    }
    layers.push_back(std::move(layer));
  }

  chain.layers = std::move(layers);
  return chain;
}

}  // namespace detail

// Best-effort search for a chain certificate of f in the real radical of N,
// following the descent of the real Nullstellensatz for free modules. A
// failure names the bound that ran out; it never claims non-membership,
// except when sampling exhibits a point where f does not vanish.
inline SearchResult chainSearch(const Submodule& module, const ModVec& f, const SearchConfig& cfg = {}) {
  requireSameContext(module.context(), f.context());
  if (f.rank() != module.rank()) throw std::invalid_argument("chainSearch: rank mismatch");
  auto sat = saturationTest(f, module, cfg.sampling);
  if (!sat.consistent)
    return SearchFailure{"target does not vanish on the real zero set", sat.counterexample};
  SearchResult result = detail::searchChain(module, f, cfg);
  if (auto* chain = std::get_if<ChainCert>(&result)) {
    if (chain->depth() > cfg.maxChainDepth)
      return SearchFailure{"chain depth bound " + std::to_string(cfg.maxChainDepth) + " exhausted (needs " +
                               std::to_string(chain->depth()) + " layers)",
                           std::nullopt};
    Verdict v = verifyChain(*chain, module, f);
    if (!v) return SearchFailure{"constructed chain failed verification: " + v.reason, std::nullopt};
  }
  return result;
}

}  // namespace realnull
