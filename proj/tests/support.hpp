#pragma once

#include "realnull/realnull.hpp"

#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace realnull;

inline Poly P(const ContextPtr& ctx, const char* s) { return parsePoly(s, ctx); }

inline ModVec V(const ContextPtr& ctx, std::initializer_list<const char*> entries) {
  std::vector<Poly> ps;
  for (const char* e : entries) ps.push_back(parsePoly(e, ctx));
  return ModVec(ctx, std::move(ps));
}

// The two-generator example with target (x1, 0).
struct Example {
  ContextPtr ctx = Context::make(2);
  ModVec g1 = V(ctx, {"x1", "x1 + x2"});
  ModVec g2 = V(ctx, {"-x1", "x1 - x2"});
  ModVec f = V(ctx, {"x1", "0"});
  ModVec r1 = V(ctx, {"(x1 - x2)*1/4", "0"});
  ModVec r2 = V(ctx, {"(-x1 - x2)*1/4", "0"});
  Submodule N{ctx, 2, {g1, g2}};

  TensorCert witnessCert() const {
    return TensorCert{f, {}, std::vector<TensorWitness>{{r1, 0, WitnessSide::left}, {r1, 0, WitnessSide::right},
                                                        {r2, 1, WitnessSide::left}, {r2, 1, WitnessSide::right}}};
  }
};

// Independent membership oracle: decides whether v = sum_i c_i g_i with every
// cofactor of degree <= D by brute-force linear algebra over Q. Deliberately
// shares no code with the library's Groebner or linalg layers.
inline bool oracleMember(const ModVec& v, const std::vector<ModVec>& gens, unsigned D) {
  const auto& ctx = v.context();
  std::size_t d = ctx->numVars(), n = v.rank();
  std::vector<std::vector<std::uint32_t>> monos;
  std::vector<std::uint32_t> e(d, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == d) { monos.push_back(e); return; }
    for (unsigned k = 0; k <= left; ++k) { e[i] = k; self(self, i + 1, left - k); }
    e[i] = 0;
  };
  rec(rec, 0, D);
  // rows indexed by (coordinate, exponent vector)
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, std::size_t> rowOf;
  auto rowIndex = [&](std::size_t c, const std::vector<std::uint32_t>& ex) {
    auto key = std::make_pair(c, ex);
    auto it = rowOf.find(key);
    if (it != rowOf.end()) return it->second;
    std::size_t idx = rowOf.size();
    rowOf.emplace(key, idx);
    return idx;
  };
  std::size_t cols = gens.size() * monos.size();
  std::vector<std::map<std::size_t, Rational>> colEntries(cols);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t m = 0; m < monos.size(); ++m)
      for (std::size_t c = 0; c < n; ++c)
        for (const auto& t : gens[g][c].terms()) {
          std::vector<std::uint32_t> ex(d);
          for (std::size_t i = 0; i < d; ++i) ex[i] = t.mono[i] + monos[m][i];
          colEntries[g * monos.size() + m][rowIndex(c, ex)] += t.coef;
        }
  std::map<std::size_t, Rational> rhs;
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& t : v[c].terms()) rhs[rowIndex(c, t.mono.exponents())] += t.coef;
  std::size_t rows = rowOf.size();
  std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols + 1));
  for (std::size_t j = 0; j < cols; ++j)
    for (auto& [r, val] : colEntries[j]) A[r][j] = val;
  for (auto& [r, val] : rhs) A[r][cols] = val;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t p = pr;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[pr]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || A[r][c] == 0) continue;
      Rational factor = A[r][c] / A[pr][c];
      for (std::size_t k = c; k <= cols; ++k) A[r][k] -= factor * A[pr][k];
    }
    ++pr;
  }
  for (std::size_t r = pr; r < rows; ++r)
    if (A[r][cols] != 0) return false;
  return true;
}

struct RandomSpec {
  std::size_t maxVars = 3;
  std::size_t minRank = 1;
  std::size_t maxRank = 3;
  std::size_t maxGens = 3;
  unsigned maxDegree = 2;
  int coefRange = 3;
};

inline Poly randomPoly(std::mt19937_64& rng, const ContextPtr& ctx, unsigned maxDeg, int range, double density = 0.5) {
  auto monos = monomialsUpToDegree(ctx->numVars(), maxDeg);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-range, range);
  std::vector<Term> terms;
  for (const auto& m : monos)
    if (keep(rng) < density) {
      int c = coef(rng);
      if (c != 0) terms.push_back({m, Rational(c)});
    }
  return Poly::fromTerms(ctx, std::move(terms));
}

inline ModVec randomVec(std::mt19937_64& rng, const ContextPtr& ctx, std::size_t n, unsigned maxDeg, int range) {
  std::vector<Poly> ps;
  for (std::size_t i = 0; i < n; ++i) ps.push_back(randomPoly(rng, ctx, maxDeg, range));
  return ModVec(ctx, std::move(ps));
}

struct RandomInstance {
  ContextPtr ctx;
  std::size_t rank;
  std::vector<ModVec> gens;
  ModVec f;
};

inline RandomInstance randomInstance(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> dv(1, spec.maxVars), dn(spec.minRank, spec.maxRank),
      dm(1, spec.maxGens);
  auto ctx = Context::make(dv(rng));
  std::size_t n = dn(rng), m = dm(rng);
  std::vector<ModVec> gens;
  for (std::size_t i = 0; i < m; ++i) gens.push_back(randomVec(rng, ctx, n, spec.maxDegree, spec.coefRange));
  ModVec f = randomVec(rng, ctx, n, spec.maxDegree, spec.coefRange);
  return {ctx, n, std::move(gens), std::move(f)};
}

inline Point randomPoint(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  Point p;
  for (std::size_t i = 0; i < d; ++i) p.emplace_back(num(rng), den(rng)), p.back().canonicalize();
  return p;
}

// Zero transport for pivot (k, l): a kernel vector v of the eliminated system
// at a (indexed by the coordinates != l) gives u with u_l = -sum g_kj(a) v_j
// and u_j = g_kl(a) v_j otherwise.
inline std::vector<Rational> transportKernel(const std::vector<ModVec>& gens, std::size_t k, std::size_t l,
                                             std::span<const Rational> a, std::span<const Rational> v) {
  std::vector<Rational> gk = gens[k].evaluate(a);
  std::size_t n = gk.size();
  std::vector<Rational> u(n);
  for (std::size_t j = 0, s = 0; j < n; ++j) {
    if (j == l) continue;
    u[l] -= gk[j] * v[s];
    u[j] = gk[l] * v[s];
    ++s;
  }
  return u;
}

// Every certificate produced by a test is recorded here and re-checked by
// sampling the real zero set before the process exits.
struct LoggedCert {
  std::string origin;
  ModVec f;
  Submodule module;
};

inline std::vector<LoggedCert>& certLog() {
  static std::vector<LoggedCert> log;
  return log;
}

inline std::mutex& certLogMutex() {
  static std::mutex m;
  return m;
}

inline void logCert(std::string origin, const ModVec& f, const Submodule& module) {
  std::lock_guard lock(certLogMutex());
  certLog().push_back({std::move(origin), f, module});
}

inline void logCert(std::string origin, const SquareCert& sc, const Submodule& ideal) {
  logCert(std::move(origin), ModVec(sc.f.context(), {sc.f}), ideal);
}

}  // namespace testing_support
