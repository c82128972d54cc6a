// socnc: JSON front end for cone classification, projection calculus,
// normal-cone membership with certificates, sampling and oracle runs.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "socnc/cones.hpp"
#include "socnc/oracles.hpp"

using nlohmann::json;
using namespace socnc;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitMember = 0;
constexpr int kExitNonMember = 1;
constexpr int kExitSchema = 2;
constexpr int kExitNotInOmega = 3;
constexpr int kExitNotDifferentiable = 4;
constexpr int kExitVerifyFailure = 5;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool gPretty = false;

void emit(const json& doc) {
  std::cout << (gPretty ? doc.dump(2) : doc.dump()) << "\n";
}

[[noreturn]] void fail(int code, const std::string& codeName,
                       const std::string& message) {
  emit(json{{"status", "error"},
            {"code", codeName},
            {"message", message},
            {"version", kVersion}});
  std::cerr << "error: " << message << "\n";
  std::exit(code);
}

json load_document(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("input is not valid JSON");
  if (!doc.is_object()) throw SchemaError("input must be a JSON object");
  return doc;
}

// Strict field set: everything not in `allowed` is a schema violation.
void check_fields(const json& doc, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : doc.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError("unknown field: " + key);
  }
}

long require_int(const json& doc, const char* name) {
  if (!doc.contains(name)) throw SchemaError(std::string("missing field: ") + name);
  const json& v = doc.at(name);
  if (!v.is_number_integer()) throw SchemaError(std::string(name) + " must be an integer");
  return v.get<long>();
}

std::string require_string(const json& doc, const char* name) {
  if (!doc.contains(name)) throw SchemaError(std::string("missing field: ") + name);
  const json& v = doc.at(name);
  if (!v.is_string()) throw SchemaError(std::string(name) + " must be a string");
  return v.get<std::string>();
}

Eigen::VectorXd require_vector(const json& doc, const char* name, long m) {
  if (!doc.contains(name)) throw SchemaError(std::string("missing field: ") + name);
  const json& v = doc.at(name);
  if (!v.is_array() || static_cast<long>(v.size()) != m)
    throw SchemaError(std::string(name) + " must be an array of length m");
  Eigen::VectorXd out(m);
  for (long i = 0; i < m; ++i) {
    if (!v[i].is_number()) throw SchemaError(std::string(name) + " must contain numbers");
    out(i) = v[i].get<double>();
    if (!std::isfinite(out(i)))
      throw SchemaError(std::string(name) + " entries must be finite");
  }
  return out;
}

Tolerances parse_tolerances(const json& doc, std::optional<double> flatTol) {
  Tolerances tol;
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) throw SchemaError("tolerances must be an object");
    check_fields(t, {"classifyTol", "memberTol", "oracleTol"});
    if (t.contains("classifyTol")) tol.classifyTol = t.at("classifyTol").get<double>();
    if (t.contains("memberTol")) tol.memberTol = t.at("memberTol").get<double>();
    if (t.contains("oracleTol")) tol.oracleTol = t.at("oracleTol").get<double>();
  }
  if (flatTol) {
    tol.classifyTol = *flatTol;
    tol.memberTol = *flatTol;
    tol.oracleTol = *flatTol;
  }
  try {
    tol.validate();
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(e.what());
  }
  return tol;
}

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    rows.push_back(to_json(Eigen::VectorXd(m.row(i))));
  return rows;
}

json to_json(const MembershipVerdict& v) {
  json cert = json::object();
  for (const auto& [k, s] : v.scalars) cert[k] = s;
  for (const auto& [k, vec] : v.vectors) cert[k] = to_json(vec);
  return json{{"member", v.member},
              {"cone", to_string(v.cone)},
              {"branch", v.branch},
              {"residual", v.residual},
              {"certificate", cert}};
}

int cmd_classify(const json& doc, std::optional<double> flatTol) {
  check_fields(doc, {"m", "x", "y", "tolerances"});
  const long m = require_int(doc, "m");
  if (m < 2) throw SchemaError("m must be >= 2");
  const Tolerances tol = parse_tolerances(doc, flatTol);
  const SocVector x(require_vector(doc, "x", m));
  if (!doc.contains("y")) {
    const ConeRegion r = classify_point(x, tol);
    emit(json{{"status", "ok"},
              {"verdict", {{"region", to_string(r)}}},
              {"version", kVersion}});
    return 0;
  }
  const SocVector y(require_vector(doc, "y", m));
  const OmegaPair pair = classify_pair(x, y, tol);
  json verdict{{"caseTag", to_string(pair.caseTag)}};
  if (pair.k) verdict["k"] = *pair.k;
  emit(json{{"status", "ok"}, {"verdict", verdict}, {"version", kVersion}});
  return 0;
}

int cmd_member(const json& doc, std::optional<double> flatTol) {
  check_fields(doc, {"m", "x", "y", "u", "v", "cone", "tolerances"});
  const long m = require_int(doc, "m");
  if (m < 2) throw SchemaError("m must be >= 2");
  const Tolerances tol = parse_tolerances(doc, flatTol);
  const SocVector x(require_vector(doc, "x", m));
  const SocVector y(require_vector(doc, "y", m));
  const NormalCandidate cand{SocVector(require_vector(doc, "u", m)),
                             SocVector(require_vector(doc, "v", m))};
  const std::string cone = require_string(doc, "cone");
  const OmegaPair pair = classify_pair(x, y, tol);
  MembershipVerdict v;
  if (cone == "proximal") {
    v = proximal_normal_contains(pair, cand, tol);
  } else if (cone == "regular") {
    v = regular_normal_contains(pair, cand, tol);
  } else if (cone == "limiting") {
    v = limiting_normal_contains(pair, cand, tol);
  } else {
    throw SchemaError("cone must be proximal|regular|limiting");
  }
  json out = to_json(v);
  out["caseTag"] = to_string(pair.caseTag);
  emit(json{{"status", "ok"}, {"verdict", out}, {"version", kVersion}});
  return v.member ? kExitMember : kExitNonMember;
}

int cmd_calculus(const json& doc, std::optional<double> flatTol) {
  check_fields(doc, {"m", "op", "x", "h", "scales", "tolerances"});
  const long m = require_int(doc, "m");
  if (m < 2) throw SchemaError("m must be >= 2");
  const Tolerances tol = parse_tolerances(doc, flatTol);
  const std::string op = require_string(doc, "op");
  const SocVector x(require_vector(doc, "x", m));
  json payload;
  if (op == "project") {
    payload = json{{"projection", to_json(project_soc(x).raw())},
                   {"polarProjection", to_json(project_polar(x).raw())},
                   {"region", to_string(classify_point(x, tol))}};
  } else if (op == "ddir") {
    const SocVector h(require_vector(doc, "h", m));
    payload = json{{"derivative", to_json(dir_derivative(x, h, tol).raw())}};
  } else if (op == "jacobian") {
    const ProjJacobian j = jacobian(x, tol);
    payload = json{{"jacobian", to_json(j.matrix)},
                   {"region", to_string(j.region)}};
  } else if (op == "calmness") {
    const SocVector h(require_vector(doc, "h", m));
    std::vector<double> scales{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    if (doc.contains("scales")) {
      scales.clear();
      for (const auto& s : doc.at("scales")) {
        if (!s.is_number()) throw SchemaError("scales must contain numbers");
        scales.push_back(s.get<double>());
      }
    }
    const CalmnessReport rep = calmness_report(x, h, scales, tol);
    payload = json{{"scales", rep.scales},
                   {"ratios", rep.ratios},
                   {"fittedC", rep.fittedC}};
  } else {
    throw SchemaError("op must be project|ddir|jacobian|calmness");
  }
  emit(json{{"status", "ok"}, {"verdict", payload}, {"version", kVersion}});
  return 0;
}

OracleConfig parse_oracle_config(const json& doc, std::optional<long> flagSeed) {
  OracleConfig cfg;
  if (doc.contains("samples")) cfg.nSamples = static_cast<int>(require_int(doc, "samples"));
  if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(require_int(doc, "seed"));
  if (flagSeed) cfg.seed = static_cast<std::uint64_t>(*flagSeed);
  if (doc.contains("radii")) {
    cfg.radii.clear();
    for (const auto& r : doc.at("radii")) {
      if (!r.is_number()) throw SchemaError("radii must contain numbers");
      cfg.radii.push_back(r.get<double>());
    }
  }
  if (doc.contains("slack")) cfg.slack = doc.at("slack").get<double>();
  try {
    cfg.validate();
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(e.what());
  }
  return cfg;
}

int cmd_verify(const json& doc, std::optional<double> flatTol,
               std::optional<long> flagSeed) {
  const Tolerances tol = parse_tolerances(doc, flatTol);
  if (doc.contains("caseTag")) {
    // bulk sweep over random anchors of one case class
    check_fields(doc, {"caseTag", "pairs", "candidates", "samples", "seed",
                       "radii", "slack", "dim", "viSamples", "withLimitingOracle",
                       "tolerances"});
    const auto tag = omega_case_from_string(require_string(doc, "caseTag"));
    if (!tag) throw SchemaError("unknown caseTag");
    const long nPairs = require_int(doc, "pairs");
    const long nCands = require_int(doc, "candidates");
    if (nPairs < 1 || nCands < 1) throw SchemaError("counts must be >= 1");
    const OracleConfig cfg = parse_oracle_config(doc, flagSeed);
    SweepOptions opts;
    if (doc.contains("dim")) opts.dim = static_cast<int>(require_int(doc, "dim"));
    if (doc.contains("viSamples"))
      opts.viSamples = static_cast<int>(require_int(doc, "viSamples"));
    if (doc.contains("withLimitingOracle"))
      opts.withLimitingOracle = doc.at("withLimitingOracle").get<bool>();
    if (opts.dim < 2) throw SchemaError("dim must be >= 2");
    const SweepReport rep = equivalence_sweep(*tag, static_cast<int>(nPairs),
                                              static_cast<int>(nCands), cfg,
                                              opts, tol);
    emit(json{{"status", rep.disagreements.empty() ? "ok" : "error"},
              {"verdict",
               {{"candidates", rep.candidates},
                {"members", rep.members},
                {"nonMembers", rep.nonMembers},
                {"regularOracleInconclusive", rep.regularOracleInconclusive},
                {"limitingOracleInconclusive", rep.limitingOracleInconclusive},
                {"disagreements", rep.disagreements}}},
              {"version", kVersion}});
    return rep.disagreements.empty() ? 0 : kExitVerifyFailure;
  }
  // single-candidate oracle run against an explicit anchor
  check_fields(doc, {"m", "x", "y", "u", "v", "cone", "samples", "seed",
                     "radii", "slack", "tolerances"});
  const long m = require_int(doc, "m");
  if (m < 2) throw SchemaError("m must be >= 2");
  const SocVector x(require_vector(doc, "x", m));
  const SocVector y(require_vector(doc, "y", m));
  const NormalCandidate cand{SocVector(require_vector(doc, "u", m)),
                             SocVector(require_vector(doc, "v", m))};
  const std::string cone = require_string(doc, "cone");
  const OracleConfig cfg = parse_oracle_config(doc, flagSeed);
  const OmegaPair pair = classify_pair(x, y, tol);
  OracleReport rep;
  MembershipVerdict closed;
  if (cone == "proximal") {
    rep = proximal_oracle(pair, cand, cfg, tol);
    closed = proximal_normal_contains(pair, cand, tol);
  } else if (cone == "regular") {
    rep = regular_oracle(pair, cand, cfg, tol);
    closed = regular_normal_contains(pair, cand, tol);
  } else if (cone == "limiting") {
    rep = limiting_oracle(pair, cand, cfg, tol);
    closed = limiting_normal_contains(pair, cand, tol);
  } else {
    throw SchemaError("cone must be proximal|regular|limiting");
  }
  const bool disagree =
      (rep.verdict == OracleVerdict::ConsistentMember && !closed.member) ||
      (rep.verdict == OracleVerdict::CertifiedNonMember && closed.member);
  emit(json{{"status", disagree ? "error" : "ok"},
            {"verdict",
             {{"oracle", to_string(rep.verdict)},
              {"closedForm", closed.member},
              {"worstRatio", rep.worstRatio},
              {"perRadius", rep.perRadius}}},
            {"version", kVersion}});
  return disagree ? kExitVerifyFailure : 0;
}

int cmd_sample(const json& doc, std::optional<double> flatTol,
               std::optional<long> flagSeed) {
  check_fields(doc, {"m", "x", "y", "caseTag", "kind", "n", "radius", "seed",
                     "tolerances"});
  const long m = require_int(doc, "m");
  if (m < 2) throw SchemaError("m must be >= 2");
  const Tolerances tol = parse_tolerances(doc, flatTol);
  const long n = require_int(doc, "n");
  if (n < 1) throw SchemaError("n must be >= 1");
  std::uint64_t seed = doc.contains("seed")
                           ? static_cast<std::uint64_t>(require_int(doc, "seed"))
                           : 1;
  if (flagSeed) seed = static_cast<std::uint64_t>(*flagSeed);

  OmegaPair pair = [&] {
    if (doc.contains("x") && doc.contains("y"))
      return classify_pair(SocVector(require_vector(doc, "x", m)),
                           SocVector(require_vector(doc, "y", m)), tol);
    const auto tag = omega_case_from_string(require_string(doc, "caseTag"));
    if (!tag) throw SchemaError("unknown caseTag");
    return make_anchor(*tag, m, seed);
  }();

  const std::string kind =
      doc.contains("kind") ? require_string(doc, "kind") : "pairs";
  json items = json::array();
  if (kind == "pairs") {
    const double radius =
        doc.contains("radius") ? doc.at("radius").get<double>() : 1e-2;
    if (!(radius > 0)) throw SchemaError("radius must be positive");
    const OmegaSample s =
        sample_omega_near(pair, radius, seed, static_cast<int>(n), tol);
    for (const OmegaPair& p : s.pairs)
      items.push_back(json{{"x", to_json(p.x.raw())},
                           {"y", to_json(p.y.raw())},
                           {"caseTag", to_string(p.caseTag)}});
  } else if (kind == "normals") {
    for (const NormalCandidate& c :
         sample_regular_normal(pair, seed, static_cast<int>(n)))
      items.push_back(
          json{{"u", to_json(c.u.raw())}, {"v", to_json(c.v.raw())}});
  } else {
    throw SchemaError("kind must be pairs|normals");
  }
  emit(json{{"status", "ok"},
            {"verdict",
             {{"anchor",
               {{"x", to_json(pair.x.raw())},
                {"y", to_json(pair.y.raw())},
                {"caseTag", to_string(pair.caseTag)}}},
              {"items", items}}},
            {"version", kVersion}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"membership certificates for normal cones of the second-order "
               "cone complementarity set"};
  app.set_version_flag("--version", std::string("socnc ") + kVersion);
  app.require_subcommand(1);

  std::string inputPath;
  std::optional<double> flatTol;
  std::optional<long> flagSeed;
  double tolValue = 0.0;
  long seedValue = 0;
  for (const char* name : {"classify", "member", "calculus", "verify", "sample"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", inputPath, "JSON input file ('-' or omitted: stdin)");
    sub->add_option("--tol", tolValue, "override all tolerances")
        ->each([&](const std::string& s) { flatTol = std::stod(s); });
    sub->add_option("--seed", seedValue, "override the RNG seed")
        ->each([&](const std::string& s) { flagSeed = std::stol(s); });
    sub->add_flag("--pretty", gPretty, "indent the JSON output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitSchema;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const json doc = load_document(inputPath);
    if (cmd == "classify") return cmd_classify(doc, flatTol);
    if (cmd == "member") return cmd_member(doc, flatTol);
    if (cmd == "calculus") return cmd_calculus(doc, flatTol);
    if (cmd == "verify") return cmd_verify(doc, flatTol, flagSeed);
    return cmd_sample(doc, flatTol, flagSeed);
  } catch (const SchemaError& e) {
    fail(kExitSchema, "schema", e.what());
  } catch (const json::exception& e) {
    fail(kExitSchema, "schema", e.what());
  } catch (const NotInOmegaError& e) {
    fail(kExitNotInOmega, e.code(), e.what());
  } catch (const NotDifferentiableError& e) {
    fail(kExitNotDifferentiable, e.code(), e.what());
  } catch (const Error& e) {
    fail(kExitSchema, e.code(), e.what());
  }
}
