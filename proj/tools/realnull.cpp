// Command-line driver. Reports go to stdout as JSON, a one-line summary to
// stderr. Exit codes: 0 valid/consistent/member, 1 invalid/counterexample/
// not found, 2 usage or input error.

#include "realnull/io.hpp"
#include "realnull/realnull.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>

using namespace realnull;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Options {
  unsigned degreeBound = 2;
  unsigned kMax = 3;
  std::size_t chainDepth = 64;
  std::size_t samples = 1000;
  std::uint64_t seed = SampleConfig{}.seed;
  unsigned threads = 1;
  std::string numericSos = "on";
  bool noShortcuts = false;
};

void emit(const Json& report, const std::string& summary) {
  std::cout << report.dump(2) << "\n";
  std::cerr << summary << "\n";
}

SampleConfig sampleConfig(const Options& o, const Instance& inst) {
  SampleConfig cfg;
  cfg.count = o.samples;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.points = inst.points;
  return cfg;
}

SearchConfig searchConfig(const Options& o, const Instance& inst) {
  SearchConfig cfg;
  cfg.degreeBound = o.degreeBound;
  cfg.kMax = o.kMax;
  cfg.maxChainDepth = o.chainDepth;
  cfg.numericSos = o.numericSos == "on";
  cfg.shortcuts = !o.noShortcuts;
  cfg.sampling = sampleConfig(o, inst);
  return cfg;
}

Json metadata(const Options& o) {
  return Json{{"tool", std::string(kToolVersion)},
              {"seed", o.seed},
              {"degree_bound", o.degreeBound},
              {"k_max", o.kMax},
              {"chain_depth", o.chainDepth},
              {"numeric_sos", o.numericSos}};
}

Json verdictJson(const Verdict& v) {
  Json j{{"valid", v.valid}};
  if (!v.valid) j["reason"] = v.reason;
  if (v.layer) j["layer"] = *v.layer;
  if (v.residual) {
    std::size_t n = 0;
    while (n * n < v.residual->rank()) ++n;
    j["normal_form"] = (n * n == v.residual->rank() && n > 1) ? matrixToJson(MatPoly::unflatten(*v.residual))
                                                            : vectorToJson(*v.residual);
  }
  return j;
}

ModVec requireTarget(const Instance& inst) {
  if (!inst.target) throw FormatError("instance has no module \"target\"");
  return *inst.target;
}

int cmdVerify(const std::string& instPath, const std::string& certPath) {
  Instance inst = loadInstance(instPath);
  CertificateFile file = parseCertificate(readJsonFile(certPath), inst);
  if (!file.instanceHash.empty() && file.instanceHash != instanceHash(inst))
    throw FormatError("certificate was issued for a different instance (hash " + file.instanceHash + ", instance " +
                      instanceHash(inst) + ")");
  Submodule module = inst.module();
  Verdict v;
  if (const auto* sc = std::get_if<SquareCert>(&file.cert)) {
    if (module.rank() != 1) throw FormatError("square certificates need a rank-1 instance");
    v = verifySquare(*sc, module);
  } else if (const auto* tc = std::get_if<TensorCert>(&file.cert)) {
    if (inst.target && !(tc->f == *inst.target)) throw FormatError("certificate element differs from the instance target");
    v = verifyTensor(*tc, module);
  } else {
    const auto& cc = std::get<ChainCert>(file.cert);
    if (inst.mode == InstanceMode::matrix) {
      if (!inst.matrixTarget) throw FormatError("matrix instance has no \"target\"");
      v = verifyMatrixChain(cc, inst.leftIdeal(), *inst.matrixTarget);
    } else {
      std::optional<ModVec> target = file.target ? file.target : inst.target;
      if (!target) throw FormatError("no target in the certificate or the instance");
      if (inst.target && file.target && !(*inst.target == *file.target))
        throw FormatError("certificate target differs from the instance target");
      v = verifyChain(cc, module, *target);
    }
  }
  Json report{{"command", "verify"}, {"kind", std::string(certificateKind(file.cert))}};
  report.update(verdictJson(v));
  emit(report, v.valid ? "valid" : "invalid: " + v.reason);
  return v.valid ? kOk : kNegative;
}

int cmdMember(const std::string& instPath) {
  Instance inst = loadInstance(instPath);
  Submodule module = inst.module();
  Json report{{"command", "member"}};
  Json gb = Json::array();
  for (const auto& g : module.groebnerBasis()) gb.push_back(vectorToJson(g));
  bool member;
  if (inst.mode == InstanceMode::matrix && inst.matrixTarget) {
    member = idealContains(*inst.matrixTarget, inst.leftIdeal());
  } else {
    ModVec f = requireTarget(inst);
    ModVec nf = module.normalForm(f);
    member = nf.isZero();
    report["normal_form"] = vectorToJson(nf);
  }
  report["member"] = member;
  report["groebner_basis"] = std::move(gb);
  emit(report, member ? "member" : "not a member");
  return member ? kOk : kNegative;
}

int cmdEliminate(const std::string& instPath, std::size_t k, std::size_t l, const std::string& out) {
  Instance inst = loadInstance(instPath);
  if (inst.mode != InstanceMode::module) throw FormatError("eliminate needs a module instance");
  if (inst.rank < 2) throw FormatError("eliminate needs rank at least 2");
  if (k < 1 || k > inst.generators.size() || l < 1 || l > inst.rank)
    throw FormatError("pivot (k, l) out of range");
  ModVec f = inst.target ? *inst.target : ModVec(inst.ctx, inst.rank);
  EliminationStep step = eliminate(inst.generators, f, k - 1, l - 1);
  Instance derived;
  derived.ctx = inst.ctx;
  derived.rank = inst.rank - 1;
  derived.generators = step.generators;
  if (inst.target) derived.target = step.target;
  Json j = instanceToJson(derived);
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) throw FormatError("cannot write '" + out + "'");
    o << j.dump(2) << "\n";
  }
  Json report{{"command", "eliminate"}, {"pivot", {{"k", k}, {"l", l}}}, {"instance", j}};
  emit(report, "eliminated pivot (" + std::to_string(k) + ", " + std::to_string(l) + ")");
  return kOk;
}

int cmdSearch(const std::string& instPath, const Options& o, const std::string& kind, const std::string& out) {
  Instance inst = loadInstance(instPath);
  Submodule module = inst.module();
  ModVec f = inst.mode == InstanceMode::matrix && inst.matrixTarget ? inst.matrixTarget->row(0) : requireTarget(inst);
  SearchConfig cfg = searchConfig(o, inst);
  CertificateFile file;
  file.instanceHash = instanceHash(inst);
  file.metadata = metadata(o);
  std::optional<std::string> failure;
  std::optional<PointPair> counterexample;

  if (kind == "square") {
    if (module.rank() != 1) throw FormatError("--kind square needs a rank-1 instance");
    auto sc = squareSearch(f[0], module, o.kMax, o.degreeBound,
                           cfg.numericSos ? SquareMode::numeric : SquareMode::linear, cfg.gram);
    if (sc) file.cert = *sc; else failure = "no square certificate within the bounds";
  } else if (kind == "tensor") {
    std::optional<TensorCert> tc;
    for (unsigned d = 0; d <= o.degreeBound && !tc; ++d) tc = linearTensorSearch(f, module, d);
    if (!tc && cfg.numericSos)
      for (unsigned d = 0; d <= o.degreeBound && !tc; ++d) tc = gramTensorSearch(f, module, d, cfg.gram);
    if (tc) file.cert = *tc; else failure = "no tensor certificate within the degree bound";
  } else {
    if (inst.mode == InstanceMode::matrix && inst.matrixTarget) {
      // one chain per nonzero row would need a common base; certify rows jointly via row 1 only
      for (std::size_t i = 1; i < inst.rank; ++i)
        if (!inst.matrixTarget->row(i).isZero())
          throw FormatError("chain search on matrix targets supports one nonzero row (row 1)");
    }
    SearchResult r = chainSearch(module, f, cfg);
    if (auto* cc = std::get_if<ChainCert>(&r)) {
      file.cert = *cc;
      file.target = f;
    } else {
      const auto& fail = std::get<SearchFailure>(r);
      failure = fail.reason;
      counterexample = fail.counterexample;
    }
  }

  if (failure) {
    Json report{{"command", "search"}, {"found", false}, {"reason", *failure}};
    if (counterexample) report["counterexample"] = pointPairToJson(*counterexample);
    emit(report, "not found: " + *failure);
    return kNegative;
  }
  Json cert = certificateToJson(file);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw FormatError("cannot write '" + out + "'");
    os << cert.dump(2) << "\n";
    emit(Json{{"command", "search"}, {"found", true}, {"kind", std::string(certificateKind(file.cert))},
              {"certificate", out}},
         "certificate written to " + out);
  } else {
    emit(cert, "certificate found");
  }
  return kOk;
}

int cmdSample(const std::string& instPath, const Options& o) {
  Instance inst = loadInstance(instPath);
  SampleConfig cfg = sampleConfig(o, inst);
  SaturationResult r;
  if (inst.mode == InstanceMode::matrix) {
    if (!inst.matrixTarget) throw FormatError("matrix instance has no \"target\"");
    r = saturationMatrix(*inst.matrixTarget, inst.leftIdeal(), cfg);
  } else {
    r = saturationTest(requireTarget(inst), inst.module(), cfg);
  }
  Json report{{"command", "sample"}, {"consistent", r.consistent}, {"samples", r.samplesChecked}};
  if (r.counterexample) {
    report["counterexample"] = pointPairToJson(*r.counterexample);
    report["sample_index"] = r.sampleIndex;
  }
  emit(report, r.consistent ? "consistent with saturation" : "counterexample found");
  return r.consistent ? kOk : kNegative;
}

int cmdMatrix(const std::string& action, const std::string& instPath, const Options& o) {
  Instance inst = loadInstance(instPath);
  if (action == "rows") {
    Submodule rows = inst.module();
    Json gens = Json::array(), gb = Json::array();
    for (const auto& g : rows.generators()) gens.push_back(vectorToJson(g));
    for (const auto& g : rows.groebnerBasis()) gb.push_back(vectorToJson(g));
    Json report{{"command", "matrix rows"}, {"rows", std::move(gens)}, {"groebner_basis", std::move(gb)}};
    if (inst.matrixTarget) report["target_in_ideal"] = idealContains(*inst.matrixTarget, inst.leftIdeal());
    emit(report, std::to_string(rows.generators().size()) + " row generators");
    return kOk;
  }
  if (action == "lift") {
    LeftIdeal ideal = inst.leftIdeal();
    Json gens = Json::array();
    for (const auto& g : ideal.generators()) gens.push_back(matrixToJson(g));
    Json report{{"command", "matrix lift"}, {"ideal_generators", std::move(gens)}};
    int code = kOk;
    std::optional<MatPoly> h;
    if (inst.mode == InstanceMode::module && inst.target) h = rowMatrix(*inst.target);
    if (inst.mode == InstanceMode::matrix && inst.matrixTarget) h = inst.matrixTarget;
    std::string summary = "lifted " + std::to_string(ideal.generators().size()) + " generators";
    if (h) {
      RealStepReport step = verifyRealIdealStep({*h}, ideal);
      report["H"] = matrixToJson(*h);
      report["HtH_in_J_plus_Jt"] = step.sumInSymmetricPart;
      report["H_in_J"] = step.allMembers;
      summary += step.sumInSymmetricPart && !step.allMembers ? "; H^T H in J+J^T but H not in J (J is not real)"
                                                            : "";
    }
    emit(report, summary);
    return code;
  }
  if (action == "saturate") {
    if (!inst.matrixTarget && !inst.target) throw FormatError("instance has no \"target\"");
    MatPoly target = inst.matrixTarget ? *inst.matrixTarget : rowMatrix(*inst.target);
    SaturationResult r = saturationMatrix(target, inst.leftIdeal(), sampleConfig(o, inst));
    Json report{{"command", "matrix saturate"}, {"consistent", r.consistent}, {"samples", r.samplesChecked}};
    if (r.counterexample) report["counterexample"] = pointPairToJson(*r.counterexample);
    emit(report, r.consistent ? "consistent with saturation" : "counterexample found");
    return r.consistent ? kOk : kNegative;
  }
  throw FormatError("unknown matrix action '" + action + "' (rows | lift | saturate)");
}

void addSearchFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--degree-bound", o.degreeBound, "Degree bound for witnesses and squares");
  cmd->add_option("--k-max", o.kMax, "Largest exponent k tried for f^{2k}");
  cmd->add_option("--chain-depth", o.chainDepth, "Maximum number of chain layers");
  cmd->add_option("--numeric-sos", o.numericSos, "Numeric Gram pass (on|off)")->check(CLI::IsMember({"on", "off"}));
  cmd->add_flag("--no-shortcuts", o.noShortcuts, "Skip direct tensor searches and always descend");
}

void addSampleFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples", o.samples, "Number of sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Sampling seed");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real Nullstellensatz certificates for submodules of R^n and left ideals of M_n(R)"};
  app.set_config("--config", "", "Read flags from a TOML/INI file (keys are the long flag names)");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  // tuning flags are global so they may appear before or after the subcommand and in --config files
  addSearchFlags(&app, o);
  addSampleFlags(&app, o);
  std::string inst, cert, out, kind = "chain", action;
  std::size_t k = 1, l = 1;

  auto* verify = app.add_subcommand("verify", "Verify a certificate against an instance");
  verify->add_option("instance", inst)->required();
  verify->add_option("certificate", cert)->required();

  auto* member = app.add_subcommand("member", "Groebner membership of the target");
  member->add_option("instance", inst)->required();

  auto* elim = app.add_subcommand("eliminate", "Derive the eliminated instance for pivot (k, l)");
  elim->add_option("instance", inst)->required();
  elim->add_option("--k", k, "Generator index (1-based)");
  elim->add_option("--l", l, "Coordinate index (1-based)");
  elim->add_option("--out", out, "Write the derived instance here");

  auto* search = app.add_subcommand("search", "Search for a certificate");
  search->add_option("instance", inst)->required();
  search->add_option("--kind", kind, "chain | tensor | square")->check(CLI::IsMember({"chain", "tensor", "square"}));
  search->add_option("--out", out, "Write the certificate here instead of stdout");

  auto* sample = app.add_subcommand("sample", "Sample the real zero set and test the target");
  sample->add_option("instance", inst)->required();

  auto* matrix = app.add_subcommand("matrix", "Left ideals of M_n(R)");
  matrix->add_option("action", action, "rows | lift | saturate")->required();
  matrix->add_option("instance", inst)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*verify) return cmdVerify(inst, cert);
    if (*member) return cmdMember(inst);
    if (*elim) return cmdEliminate(inst, k, l, out);
    if (*search) return cmdSearch(inst, o, kind, out);
    if (*sample) return cmdSample(inst, o);
    if (*matrix) return cmdMatrix(action, inst, o);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
