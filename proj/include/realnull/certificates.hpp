#pragma once

#include "realnull/groebner.hpp"

#include <optional>
#include <string>
#include <vector>

namespace realnull {

// f^{2k} + sum s_i^2 lies in an ideal I. Cofactors, when given, are one per
// generator of I and must satisfy f^{2k} + sum s_i^2 = sum c_j g_j exactly.
struct SquareCert {
  Poly f;
  unsigned k = 1;
  std::vector<Poly> squares;
  std::optional<std::vector<Poly>> cofactors;
};

enum class WitnessSide {
  left,   // coeff (x) g, a term of M (x) N
  right,  // g (x) coeff, a term of N (x) M
};

struct TensorWitness {
  ModVec coeff;
  std::size_t generator;  // index into the generator list of the module
  WitnessSide side;
};

// f (x) f + sum s_i (x) s_i lies in M (x) N + N (x) M.
struct TensorCert {
  ModVec f;
  std::vector<ModVec> squares;
  std::optional<std::vector<TensorWitness>> witnesses;
};

// Iterated auxiliary radicals. Each certificate in layer i is checked
// against the module generated by `base` and the elements (the `f` of each
// certificate) of layers 0..i-1.
struct ChainCert {
  std::vector<ModVec> base;
  std::vector<std::vector<TensorCert>> layers;

  std::size_t depth() const { return layers.size(); }

  std::vector<ModVec> elements() const {
    std::vector<ModVec> out;
    for (const auto& layer : layers)
      for (const auto& c : layer) out.push_back(c.f);
    return out;
  }
};

struct Verdict {
  bool valid = false;
  std::string reason;
  // Offending normal form or identity residual; flattened n x n matrix for tensors.
  std::optional<ModVec> residual;
  std::optional<std::size_t> layer;

  static Verdict ok() { return {true, {}, std::nullopt, std::nullopt}; }
  static Verdict fail(std::string why, std::optional<ModVec> residual = std::nullopt) {
    return {false, std::move(why), std::move(residual), std::nullopt};
  }
  explicit operator bool() const { return valid; }
};

inline MatPoly tensorSquareSum(const TensorCert& cert) {
  MatPoly total = tensor(cert.f, cert.f);
  for (const auto& s : cert.squares) total += tensor(s, s);
  return total;
}

inline Verdict verifySquare(const SquareCert& cert, const Submodule& ideal) {
  requireSameContext(cert.f.context(), ideal.context());
  if (ideal.rank() != 1) throw std::invalid_argument("verifySquare: the ideal must have rank 1");
  if (cert.k == 0) throw std::invalid_argument("verifySquare: k must be positive");
  const auto& ctx = ideal.context();
  Poly lhs = cert.f.pow(2 * cert.k);
  for (const auto& s : cert.squares) {
    requireSameContext(ctx, s.context());
    lhs += s * s;
  }
  if (cert.cofactors) {
    const auto& gens = ideal.generators();
    if (cert.cofactors->size() != gens.size())
      throw std::invalid_argument("verifySquare: expected one cofactor per ideal generator");
    Poly residual = lhs;
    for (std::size_t j = 0; j < gens.size(); ++j) residual -= (*cert.cofactors)[j] * gens[j][0];
    if (!residual.isZero())
      return Verdict::fail("cofactor identity fails", ModVec(ctx, std::vector<Poly>{residual}));
    return Verdict::ok();
  }
  ModVec nf = ideal.normalForm(ModVec(ctx, std::vector<Poly>{lhs}));
  if (!nf.isZero()) return Verdict::fail("f^{2k} + sum of squares is not in the ideal", nf);
  return Verdict::ok();
}

inline Verdict verifyTensor(const TensorCert& cert, const Submodule& module) {
  requireSameContext(cert.f.context(), module.context());
  std::size_t n = module.rank();
  if (cert.f.rank() != n) throw std::invalid_argument("verifyTensor: rank mismatch");
  for (const auto& s : cert.squares)
    if (s.rank() != n) throw std::invalid_argument("verifyTensor: square term rank mismatch");
  MatPoly lhs = tensorSquareSum(cert);
  if (cert.witnesses) {
    const auto& gens = module.generators();
    MatPoly residual = lhs;
    for (const auto& w : *cert.witnesses) {
      if (w.generator >= gens.size())
        throw std::invalid_argument("verifyTensor: witness refers to generator " +
                                    std::to_string(w.generator) + " but the module has " +
                                    std::to_string(gens.size()));
      if (w.coeff.rank() != n) throw std::invalid_argument("verifyTensor: witness rank mismatch");
      const ModVec& g = gens[w.generator];
      residual -= w.side == WitnessSide::left ? tensor(w.coeff, g) : tensor(g, w.coeff);
    }
    if (!residual.isZero()) return Verdict::fail("witness identity fails", residual.flatten());
    return Verdict::ok();
  }
  ModVec nf = tensorModule(module).normalForm(lhs.flatten());
  if (!nf.isZero()) return Verdict::fail("f(x)f + sum s(x)s is not in M(x)N + N(x)M", nf);
  return Verdict::ok();
}

inline Verdict verifyChain(const ChainCert& cert, const Submodule& module, const ModVec& f) {
  requireSameContext(f.context(), module.context());
  std::size_t n = module.rank();
  if (f.rank() != n) throw std::invalid_argument("verifyChain: target rank mismatch");
  for (const auto& g : cert.base)
    if (g.rank() != n) throw std::invalid_argument("verifyChain: base generator rank mismatch");
  for (const auto& layer : cert.layers) {
    if (layer.empty()) throw std::invalid_argument("verifyChain: empty layer");
    for (const auto& c : layer)
      if (c.f.rank() != n) throw std::invalid_argument("verifyChain: layer element rank mismatch");
  }

  Submodule level(module.context(), n, cert.base);
  if (!moduleEquals(level, module)) return Verdict::fail("base generators do not generate the module");

  for (std::size_t i = 0; i < cert.layers.size(); ++i) {
    for (const auto& c : cert.layers[i]) {
      Verdict v = verifyTensor(c, level);
      if (!v) {
        v.layer = i;
        return v;
      }
    }
    std::vector<ModVec> added;
    for (const auto& c : cert.layers[i]) added.push_back(c.f);
    level = level.extended(added);
  }
  ModVec nf = level.normalForm(f);
  if (!nf.isZero()) {
    Verdict v = Verdict::fail("target is not in the module generated by the chain", nf);
    v.layer = cert.layers.size();
    return v;
  }
  return Verdict::ok();
}

}  // namespace realnull
