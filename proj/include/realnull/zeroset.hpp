#pragma once

#include "realnull/groebner.hpp"
#include "realnull/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace realnull {

using Point = std::vector<Rational>;

// A point a of Q^d (evaluation phi = eval at a) together with u in Q^n.
struct PointPair {
  Point a;
  std::vector<Rational> u;

  bool operator==(const PointPair&) const = default;
};

struct SampleConfig {
  std::size_t count = 1000;
  Rational lower = -3;
  Rational upper = 3;
  unsigned denominatorBound = 8;
  std::vector<Point> points;  // user-supplied, checked first
  std::uint64_t seed = 20240917;
  unsigned threads = 1;
};

inline bool inZeroSet(const PointPair& pp, const Submodule& module) {
  if (pp.a.size() != module.context()->numVars())
    throw std::invalid_argument("inZeroSet: point dimension mismatch");
  if (pp.u.size() != module.rank()) throw std::invalid_argument("inZeroSet: vector length mismatch");
  for (const auto& g : module.generators())
    if (sgn(dot(g.evaluate(pp.a), pp.u)) != 0) return false;
  return true;
}

// Exact basis of {u : <g_i(a), u> = 0 for all generators}, read off the
// reduced echelon form of the stacked evaluation matrix.
inline std::vector<std::vector<Rational>> kernelAt(std::span<const Rational> a, const Submodule& module) {
  if (a.size() != module.context()->numVars())
    throw std::invalid_argument("kernelAt: point has " + std::to_string(a.size()) +
                                " coordinates, expected " +
                                std::to_string(module.context()->numVars()));
  const auto& gens = module.generators();
  RationalMatrix m(gens.size(), module.rank());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto row = gens[i].evaluate(a);
    for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j];
  }
  return nullspace(m);
}

namespace detail {

inline Rational randomRational(std::mt19937_64& rng, const SampleConfig& cfg) {
  std::uint64_t den = 1 + rng() % std::max(1U, cfg.denominatorBound);
  Rational lo = cfg.lower * den, hi = cfg.upper * den;
  Integer loI, hiI;
  mpz_cdiv_q(loI.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_fdiv_q(hiI.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  if (hiI < loI) return cfg.lower;
  Integer span = hiI - loI + 1;
  Integer pick = loI + Integer(static_cast<unsigned long>(rng() % span.get_ui()));
  Rational q(pick, Integer(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

}  // namespace detail

// Deterministic sample sequence: user points, the origin, +-e_i, the rest of
// the {-1,0,1}^d grid when it is small, then random points with bounded
// denominators, every other one with a random subset of coordinates zeroed.
inline std::vector<Point> samplePoints(std::size_t numVars, const SampleConfig& cfg) {
  if (cfg.count == 0) throw std::invalid_argument("sample count must be at least 1");
  if (cfg.upper < cfg.lower) throw std::invalid_argument("sample box is empty");
  std::vector<Point> out;
  for (const auto& p : cfg.points) {
    if (p.size() != numVars) throw std::invalid_argument("user point has wrong dimension");
    out.push_back(p);
  }
  std::size_t target = std::max(cfg.count, out.size());
  auto push = [&](Point p) {
    if (out.size() < target) out.push_back(std::move(p));
  };
  push(Point(numVars, Rational(0)));
  for (std::size_t i = 0; i < numVars; ++i)
    for (int s : {1, -1}) {
      Point p(numVars, Rational(0));
      p[i] = s;
      push(std::move(p));
    }
  std::size_t grid = 1;
  for (std::size_t i = 0; i < numVars && grid <= target; ++i) grid *= 3;
  if (grid * 2 <= target) {
    for (std::size_t code = 0; code < grid; ++code) {
      Point p(numVars);
      std::size_t c = code, nonzero = 0;
      for (std::size_t i = 0; i < numVars; ++i, c /= 3) {
        p[i] = static_cast<long>(c % 3) - 1;
        if (c % 3 != 1) ++nonzero;
      }
      if (nonzero >= 2) push(std::move(p));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  bool masked = false;
  while (out.size() < target) {
    Point p(numVars);
    for (auto& x : p) x = detail::randomRational(rng, cfg);
    if (masked)
      for (auto& x : p)
        if (rng() % 3 == 0) x = 0;
    masked = !masked;
    out.push_back(std::move(p));
  }
  return out;
}

struct SaturationResult {
  bool consistent = true;
  std::optional<PointPair> counterexample;
  std::size_t sampleIndex = 0;  // index of the violating sample
  std::size_t samplesChecked = 0;
};

// Checks that every target vanishes, in the <.,u> sense, on the sampled part
// of the real zero set of `module`. The reported counterexample is the first
// violation in sample order regardless of the thread count.
inline SaturationResult saturationTestAll(std::span<const ModVec> targets, const Submodule& module,
                                          const SampleConfig& cfg) {
  for (const auto& t : targets) {
    requireSameContext(t.context(), module.context());
    if (t.rank() != module.rank()) throw std::invalid_argument("saturationTest: rank mismatch");
  }
  auto samples = samplePoints(module.context()->numVars(), cfg);

  auto check = [&](std::size_t idx) -> std::optional<PointPair> {
    const Point& a = samples[idx];
    auto basis = kernelAt(a, module);
    if (basis.empty()) return std::nullopt;
    for (const auto& t : targets) {
      auto value = t.evaluate(a);
      for (const auto& b : basis)
        if (sgn(dot(value, b)) != 0) return PointPair{a, b};
    }
    return std::nullopt;
  };

  unsigned threads = std::max(1U, cfg.threads);
  std::vector<std::optional<std::pair<std::size_t, PointPair>>> found(threads);
  auto worker = [&](unsigned w) {
    std::size_t chunk = (samples.size() + threads - 1) / threads;
    std::size_t begin = w * chunk, end = std::min(samples.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i) {
      if (auto pp = check(i)) {
        found[w] = std::make_pair(i, std::move(*pp));
        return;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  SaturationResult result;
  result.samplesChecked = samples.size();
  for (auto& f : found) {
    if (f) {
      result.consistent = false;
      result.sampleIndex = f->first;
      result.counterexample = std::move(f->second);
      break;
    }
  }
  return result;
}

inline SaturationResult saturationTest(const ModVec& f, const Submodule& module, const SampleConfig& cfg) {
  return saturationTestAll(std::span<const ModVec>(&f, 1), module, cfg);
}

}  // namespace realnull
