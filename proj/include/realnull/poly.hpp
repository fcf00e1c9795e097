#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace realnull {

using Rational = mpq_class;
using Integer = mpz_class;

enum class MonomialOrder { grevlex, lex };

inline std::string_view orderName(MonomialOrder order) {
  return order == MonomialOrder::lex ? "lex" : "grevlex";
}

inline MonomialOrder parseOrder(std::string_view name) {
  if (name == "grevlex") return MonomialOrder::grevlex;
  if (name == "lex") return MonomialOrder::lex;
  throw std::invalid_argument("unknown monomial order '" + std::string(name) + "'");
}

// Polynomial ring Q[x1..xd] with a fixed monomial order.
class Context {
 public:
  Context(std::vector<std::string> names, MonomialOrder order)
      : names_(std::move(names)), order_(order) {
    if (names_.empty()) throw std::invalid_argument("a context needs at least one variable");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw std::invalid_argument("empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j])
          throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
    }
  }

  static std::shared_ptr<const Context> make(std::size_t d,
                                             MonomialOrder order = MonomialOrder::grevlex) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
    return std::make_shared<const Context>(std::move(names), order);
  }

  static std::shared_ptr<const Context> make(std::vector<std::string> names,
                                             MonomialOrder order = MonomialOrder::grevlex) {
    return std::make_shared<const Context>(std::move(names), order);
  }

  std::size_t numVars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  MonomialOrder order() const { return order_; }

  std::optional<std::size_t> indexOf(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const Context&) const = default;

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using ContextPtr = std::shared_ptr<const Context>;

inline bool sameContext(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void requireSameContext(const ContextPtr& a, const ContextPtr& b) {
  if (!sameContext(a, b)) throw std::invalid_argument("context mismatch");
}

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t numVars) : exps_(numVars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const {
    std::uint64_t total = 0;
    for (auto e : exps_) total += e;
    return total;
  }

  bool isOne() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
    return out;
  }

  // Requires other.divides(*this).
  Monomial operator/(const Monomial& other) const {
    Monomial out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
    return out;
  }

  Monomial lcm(const Monomial& other) const {
    Monomial out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i)
      out.exps_[i] = std::max(exps_[i], other.exps_[i]);
    return out;
  }

  bool operator==(const Monomial&) const = default;
  // Plain lexicographic comparison on exponent vectors, for use as a map key.
  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

// Returns <0, 0, >0 as a is smaller, equal, larger than b in the given order.
inline int compareMonomials(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::grevlex) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// All monomials in numVars variables of total degree <= maxDegree, ascending by degree.
inline std::vector<Monomial> monomialsUpToDegree(std::size_t numVars, unsigned maxDegree) {
  std::vector<Monomial> out;
  for (unsigned deg = 0; deg <= maxDegree; ++deg) {
    Monomial m(numVars);
    // enumerate compositions of deg into numVars parts
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
      if (var + 1 == numVars) {
        m[var] = left;
        out.push_back(m);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        m[var] = e;
        self(self, var + 1, left - e);
      }
      m[var] = 0;
    };
    rec(rec, 0, deg);
  }
  return out;
}

struct Term {
  Monomial mono;
  Rational coef;
};

// Sparse polynomial over Q. Terms are kept sorted in descending monomial
// order with no zero coefficients, so equal polynomials have equal term lists.
class Poly {
 public:
  explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw std::invalid_argument("null context");
  }

  static Poly constant(const ContextPtr& ctx, const Rational& c) {
    Poly p(ctx);
    if (sgn(c) != 0) p.terms_.push_back({Monomial(ctx->numVars()), c});
    return p;
  }

  static Poly variable(const ContextPtr& ctx, std::size_t index) {
    if (index >= ctx->numVars()) throw std::out_of_range("variable index out of range");
    Monomial m(ctx->numVars());
    m[index] = 1;
    return monomial(ctx, std::move(m), Rational(1));
  }

  static Poly monomial(const ContextPtr& ctx, Monomial m, const Rational& c) {
    if (m.size() != ctx->numVars()) throw std::invalid_argument("monomial length does not match context");
    Poly p(ctx);
    if (sgn(c) != 0) p.terms_.push_back({std::move(m), c});
    return p;
  }

  // Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
  static Poly fromTerms(const ContextPtr& ctx, std::vector<Term> terms) {
    Poly p(ctx);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t numTerms() const { return terms_.size(); }
  bool isZero() const { return terms_.empty(); }

  bool isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.isOne());
  }

  const Term& leadingTerm() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }

  // -1 for the zero polynomial.
  long totalDegree() const {
    long best = -1;
    for (const auto& t : terms_) best = std::max<long>(best, static_cast<long>(t.mono.degree()));
    return best;
  }

  Poly operator-() const {
    Poly out(*this);
    for (auto& t : out.terms_) t.coef = -t.coef;
    return out;
  }

  Poly operator+(const Poly& q) const { return combine(q, Rational(1)); }
  Poly operator-(const Poly& q) const { return combine(q, Rational(-1)); }
  Poly& operator+=(const Poly& q) { return *this = *this + q; }
  Poly& operator-=(const Poly& q) { return *this = *this - q; }

  Poly operator*(const Poly& q) const {
    requireSameContext(ctx_, q.ctx_);
    if (isZero() || q.isZero()) return Poly(ctx_);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * q.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : q.terms_) prod.push_back({a.mono * b.mono, a.coef * b.coef});
    return fromTerms(ctx_, std::move(prod));
  }
  Poly& operator*=(const Poly& q) { return *this = *this * q; }

  Poly scaled(const Rational& c) const {
    if (sgn(c) == 0) return Poly(ctx_);
    Poly out(*this);
    for (auto& t : out.terms_) t.coef *= c;
    return out;
  }

  Poly mulTerm(const Rational& c, const Monomial& m) const {
    if (sgn(c) == 0) return Poly(ctx_);
    Poly out(*this);
    for (auto& t : out.terms_) {
      t.mono = t.mono * m;
      t.coef *= c;
    }
    // multiplying by a monomial preserves any monomial order
    return out;
  }

  Poly pow(unsigned e) const {
    Poly result = constant(ctx_, Rational(1));
    Poly base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  // this -= c * m * other, merging in one pass.
  void subtractMultiple(const Rational& c, const Monomial& m, const Poly& other) {
    if (sgn(c) == 0 || other.isZero()) return;
    requireSameContext(ctx_, other.ctx_);
    const auto order = ctx_->order();
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
      if (j == other.terms_.size()) {
        out.push_back(std::move(terms_[i++]));
        continue;
      }
      Monomial shifted = other.terms_[j].mono * m;
      if (i == terms_.size()) {
        out.push_back({std::move(shifted), -c * other.terms_[j].coef});
        ++j;
        continue;
      }
      int cmp = compareMonomials(terms_[i].mono, shifted, order);
      if (cmp > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (cmp < 0) {
        out.push_back({std::move(shifted), -c * other.terms_[j].coef});
        ++j;
      } else {
        Rational v = terms_[i].coef - c * other.terms_[j].coef;
        if (sgn(v) != 0) out.push_back({std::move(terms_[i].mono), std::move(v)});
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
  }

  // Removes and returns the leading term.
  Term popLeading() {
    Term t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
  }

  void pushTrailing(Term t) { terms_.push_back(std::move(t)); }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != ctx_->numVars())
      throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                  " coordinates, expected " + std::to_string(ctx_->numVars()));
    Rational total(0);
    for (const auto& t : terms_) {
      Rational v = t.coef;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (std::uint32_t e = 0; e < t.mono[i]; ++e) v *= point[i];
      total += v;
    }
    return total;
  }

  bool operator==(const Poly& q) const {
    if (!sameContext(ctx_, q.ctx_) || terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != q.terms_[i].mono || terms_[i].coef != q.terms_[i].coef) return false;
    return true;
  }

 private:
  Poly combine(const Poly& q, const Rational& sign) const {
    requireSameContext(ctx_, q.ctx_);
    Poly out(*this);
    out.subtractMultiple(-sign, Monomial(ctx_->numVars()), q);
    return out;
  }

  void canonicalize() {
    const auto order = ctx_->order();
    for (const auto& t : terms_)
      if (t.mono.size() != ctx_->numVars())
        throw std::invalid_argument("monomial length does not match context");
    std::sort(terms_.begin(), terms_.end(), [order](const Term& a, const Term& b) {
      return compareMonomials(a.mono, b.mono, order) > 0;
    });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono) {
        merged.back().coef += t.coef;
      } else {
        if (!merged.empty() && sgn(merged.back().coef) == 0) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && sgn(merged.back().coef) == 0) merged.pop_back();
    for (auto& t : merged) t.coef.canonicalize();
    terms_ = std::move(merged);
  }

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

inline std::string render(const Monomial& m, const Context& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.names()[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

// Canonical text form; parse(render(p)) == p.
inline std::string render(const Poly& p) {
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational mag = abs(t.coef);
    bool negative = sgn(t.coef) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = render(t.mono, *p.context());
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + '*';
      out += mono;
    }
  }
  return out;
}

}  // namespace realnull
