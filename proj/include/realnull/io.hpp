#pragma once

// JSON instance and certificate files. Polynomials are stored as strings in
// the text grammar of parse.hpp; rationals as "p/q" strings or integers.

#include "realnull/certificates.hpp"
#include "realnull/matrix.hpp"
#include "realnull/parse.hpp"
#include "realnull/zeroset.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace realnull {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "realnull 0.3.0";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InstanceMode { module, matrix };

struct Instance {
  ContextPtr ctx;
  std::size_t rank = 0;
  InstanceMode mode = InstanceMode::module;
  std::vector<ModVec> generators;   // module mode
  std::vector<MatPoly> matrices;    // matrix mode
  std::optional<ModVec> target;     // module mode
  std::optional<MatPoly> matrixTarget;
  std::vector<Point> points;

  LeftIdeal leftIdeal() const {
    if (mode == InstanceMode::matrix) return LeftIdeal(ctx, rank, matrices);
    return idealFromModule(module());
  }

  // The module view; in matrix mode the row module.
  Submodule module() const {
    if (mode == InstanceMode::matrix) return LeftIdeal(ctx, rank, matrices).rows();
    return Submodule(ctx, rank, generators);
  }
};

namespace detail {

inline Rational parseRational(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw FormatError("expected a rational as an integer or \"p/q\" string");
  auto s = j.get<std::string>();
  try {
    Rational q(s, 10);
    if (q.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw FormatError("malformed rational '" + s + "'");
  }
}

inline std::string rationalText(const Rational& q) { return q.get_str(); }

inline Poly parsePolyField(const Json& j, const ContextPtr& ctx) {
  if (j.is_number_integer()) return Poly::constant(ctx, parseRational(j));
  if (!j.is_string()) throw FormatError("expected a polynomial string");
  return parsePoly(j.get<std::string>(), ctx);
}

inline ModVec parseVector(const Json& j, const ContextPtr& ctx, std::size_t rank) {
  if (!j.is_array()) throw FormatError("expected an array of polynomial strings");
  if (j.size() != rank)
    throw FormatError("vector has " + std::to_string(j.size()) + " entries, expected " + std::to_string(rank));
  std::vector<Poly> entries;
  for (const auto& e : j) entries.push_back(parsePolyField(e, ctx));
  return ModVec(ctx, std::move(entries));
}

inline MatPoly parseMatrix(const Json& j, const ContextPtr& ctx, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw FormatError("matrix must have " + std::to_string(n) + " rows");
  std::vector<ModVec> rows;
  for (const auto& r : j) rows.push_back(parseVector(r, ctx, n));
  return MatPoly::fromRows(rows);
}

inline Json vectorJson(const ModVec& v) {
  Json out = Json::array();
  for (const auto& p : v.entries()) out.push_back(render(p));
  return out;
}

inline Json matrixJson(const MatPoly& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(vectorJson(m.row(i)));
  return out;
}

inline Json pointJson(std::span<const Rational> p) {
  Json out = Json::array();
  for (const auto& q : p) out.push_back(rationalText(q));
  return out;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

inline Json vectorToJson(const ModVec& v) { return detail::vectorJson(v); }
inline Json matrixToJson(const MatPoly& m) { return detail::matrixJson(m); }
inline Json pointToJson(std::span<const Rational> p) { return detail::pointJson(p); }

inline Json pointPairToJson(const PointPair& pp) {
  return Json{{"a", detail::pointJson(pp.a)}, {"u", detail::pointJson(pp.u)}};
}

inline Instance parseInstance(const Json& j) {
  try {
    if (!j.is_object()) throw FormatError("instance must be a JSON object");
    Instance inst;
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    auto order = parseOrder(j.value("order", std::string("grevlex")));
    inst.ctx = Context::make(std::move(vars), order);
    inst.rank = j.contains("n") ? j.at("n").get<std::size_t>() : j.at("rank").get<std::size_t>();
    if (inst.rank == 0) throw FormatError("rank must be positive");
    auto mode = j.value("mode", std::string("module"));
    if (mode == "module") {
      inst.mode = InstanceMode::module;
      for (const auto& g : j.at("generators")) inst.generators.push_back(detail::parseVector(g, inst.ctx, inst.rank));
      if (j.contains("target")) inst.target = detail::parseVector(j.at("target"), inst.ctx, inst.rank);
    } else if (mode == "matrix") {
      inst.mode = InstanceMode::matrix;
      for (const auto& g : j.at("generators")) inst.matrices.push_back(detail::parseMatrix(g, inst.ctx, inst.rank));
      if (j.contains("target")) inst.matrixTarget = detail::parseMatrix(j.at("target"), inst.ctx, inst.rank);
    } else {
      throw FormatError("mode must be \"module\" or \"matrix\"");
    }
    if (j.contains("points"))
      for (const auto& p : j.at("points")) {
        Point pt;
        for (const auto& c : p) pt.push_back(detail::parseRational(c));
        if (pt.size() != inst.ctx->numVars()) throw FormatError("point has the wrong number of coordinates");
        inst.points.push_back(std::move(pt));
      }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("instance: ") + e.what());
  } catch (const ParseError& e) {
    throw FormatError(std::string("instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("instance: ") + e.what());
  }
}

// Canonical form: polynomials re-rendered, points omitted.
inline Json instanceToJson(const Instance& inst, bool withPoints = true) {
  Json j;
  j["vars"] = inst.ctx->names();
  j["order"] = std::string(orderName(inst.ctx->order()));
  j["n"] = inst.rank;
  j["mode"] = inst.mode == InstanceMode::module ? "module" : "matrix";
  Json gens = Json::array();
  if (inst.mode == InstanceMode::module) {
    for (const auto& g : inst.generators) gens.push_back(detail::vectorJson(g));
  } else {
    for (const auto& m : inst.matrices) gens.push_back(detail::matrixJson(m));
  }
  j["generators"] = std::move(gens);
  if (inst.target) j["target"] = detail::vectorJson(*inst.target);
  if (inst.matrixTarget) j["target"] = detail::matrixJson(*inst.matrixTarget);
  if (withPoints && !inst.points.empty()) {
    Json pts = Json::array();
    for (const auto& p : inst.points) pts.push_back(detail::pointJson(p));
    j["points"] = std::move(pts);
  }
  return j;
}

inline std::string instanceHash(const Instance& inst) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << detail::fnv1a(instanceToJson(inst, false).dump());
  return out.str();
}

inline Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

inline Instance loadInstance(const std::string& path) { return parseInstance(readJsonFile(path)); }

// ---- certificates ----

using AnyCertificate = std::variant<ChainCert, SquareCert, TensorCert>;

struct CertificateFile {
  AnyCertificate cert;
  std::optional<ModVec> target;  // chain kind
  std::string instanceHash;
  Json metadata = Json::object();
};

inline std::string_view certificateKind(const AnyCertificate& c) {
  if (std::holds_alternative<SquareCert>(c)) return "square";
  if (std::holds_alternative<TensorCert>(c)) return "tensor";
  return "chain";
}

namespace detail {

inline Json tensorCertJson(const TensorCert& c) {
  Json j;
  j["f"] = vectorJson(c.f);
  Json sq = Json::array();
  for (const auto& s : c.squares) sq.push_back(vectorJson(s));
  j["squares"] = std::move(sq);
  if (c.witnesses) {
    Json ws = Json::array();
    for (const auto& w : *c.witnesses)
      ws.push_back(Json{{"coeff", vectorJson(w.coeff)},
                        {"generator", w.generator},
                        {"side", w.side == WitnessSide::left ? "left" : "right"}});
    j["witnesses"] = std::move(ws);
  }
  return j;
}

inline TensorCert parseTensorCert(const Json& j, const ContextPtr& ctx, std::size_t rank) {
  TensorCert c{parseVector(j.at("f"), ctx, rank), {}, std::nullopt};
  if (j.contains("squares"))
    for (const auto& s : j.at("squares")) c.squares.push_back(parseVector(s, ctx, rank));
  if (j.contains("witnesses")) {
    std::vector<TensorWitness> ws;
    for (const auto& w : j.at("witnesses")) {
      auto side = w.at("side").get<std::string>();
      if (side != "left" && side != "right") throw FormatError("witness side must be \"left\" or \"right\"");
      ws.push_back({parseVector(w.at("coeff"), ctx, rank), w.at("generator").get<std::size_t>(),
                    side == "left" ? WitnessSide::left : WitnessSide::right});
    }
    c.witnesses = std::move(ws);
  }
  return c;
}

}  // namespace detail

inline Json certificateToJson(const CertificateFile& file) {
  Json j;
  j["format"] = "realnull-certificate";
  j["version"] = 1;
  j["kind"] = std::string(certificateKind(file.cert));
  j["instance_hash"] = file.instanceHash;
  j["metadata"] = file.metadata;
  if (const auto* sc = std::get_if<SquareCert>(&file.cert)) {
    Json s;
    s["f"] = render(sc->f);
    s["k"] = sc->k;
    Json sq = Json::array();
    for (const auto& p : sc->squares) sq.push_back(render(p));
    s["squares"] = std::move(sq);
    if (sc->cofactors) {
      Json cf = Json::array();
      for (const auto& p : *sc->cofactors) cf.push_back(render(p));
      s["cofactors"] = std::move(cf);
    }
    j["square"] = std::move(s);
  } else if (const auto* tc = std::get_if<TensorCert>(&file.cert)) {
    j["tensor"] = detail::tensorCertJson(*tc);
  } else {
    const auto& cc = std::get<ChainCert>(file.cert);
    Json c;
    if (file.target) c["target"] = detail::vectorJson(*file.target);
    Json base = Json::array();
    for (const auto& g : cc.base) base.push_back(detail::vectorJson(g));
    c["base"] = std::move(base);
    Json layers = Json::array();
    for (const auto& layer : cc.layers) {
      Json l = Json::array();
      for (const auto& t : layer) l.push_back(detail::tensorCertJson(t));
      layers.push_back(std::move(l));
    }
    c["layers"] = std::move(layers);
    j["chain"] = std::move(c);
  }
  return j;
}

// Polynomials are parsed in the instance's context.
inline CertificateFile parseCertificate(const Json& j, const Instance& inst) {
  try {
    if (j.value("format", std::string()) != "realnull-certificate")
      throw FormatError("not a realnull certificate (missing \"format\")");
    CertificateFile file;
    file.instanceHash = j.value("instance_hash", std::string());
    if (j.contains("metadata")) file.metadata = j.at("metadata");
    const auto& ctx = inst.ctx;
    auto kind = j.at("kind").get<std::string>();
    if (kind == "square") {
      const auto& s = j.at("square");
      SquareCert sc{detail::parsePolyField(s.at("f"), ctx), s.at("k").get<unsigned>(), {}, std::nullopt};
      if (sc.k == 0) throw FormatError("k must be positive");
      for (const auto& p : s.at("squares")) sc.squares.push_back(detail::parsePolyField(p, ctx));
      if (s.contains("cofactors")) {
        std::vector<Poly> cf;
        for (const auto& p : s.at("cofactors")) cf.push_back(detail::parsePolyField(p, ctx));
        sc.cofactors = std::move(cf);
      }
      file.cert = std::move(sc);
    } else if (kind == "tensor") {
      file.cert = detail::parseTensorCert(j.at("tensor"), ctx, inst.rank);
    } else if (kind == "chain") {
      const auto& c = j.at("chain");
      ChainCert cc;
      for (const auto& g : c.at("base")) cc.base.push_back(detail::parseVector(g, ctx, inst.rank));
      for (const auto& layer : c.at("layers")) {
        std::vector<TensorCert> l;
        for (const auto& t : layer) l.push_back(detail::parseTensorCert(t, ctx, inst.rank));
        cc.layers.push_back(std::move(l));
      }
      if (c.contains("target")) file.target = detail::parseVector(c.at("target"), ctx, inst.rank);
      file.cert = std::move(cc);
    } else {
      throw FormatError("unknown certificate kind '" + kind + "'");
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  } catch (const ParseError& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
}

}  // namespace realnull
