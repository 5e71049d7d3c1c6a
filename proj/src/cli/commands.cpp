#include "bellscope/cli/commands.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "bellscope/classical_rep.hpp"
#include "bellscope/common_cause.hpp"
#include "bellscope/error.hpp"
#include "bellscope/json_io.hpp"
#include "bellscope/polytope.hpp"
#include "bellscope/quantum.hpp"
#include "bellscope/sampling.hpp"

namespace bellscope::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::internal, "SHA-256 failed");
  std::ostringstream hex;
  for (unsigned int k = 0; k < len; ++k) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  return hex.str();
}

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::outside_polytope:
    case ErrorCode::inadmissible:
    case ErrorCode::signaling_rejected:
    case ErrorCode::screening_failed:
    case ErrorCode::non_deterministic:
    case ErrorCode::lp_infeasible:
    case ErrorCode::coefficient_mismatch:
    case ErrorCode::not_independence_vector:
      return kExitNegative;
    case ErrorCode::internal:
    case ErrorCode::reconstruction_mismatch:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

struct Common {
  std::string mode;  // empty: the command default
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

struct Context {
  std::string command;
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
  const Common& common;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("BELLSCOPE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, std::string("BELLSCOPE_SEED is not an integer: ") + env);
    }
  }
  return Sampler::kDefaultSeed;
}

ArithmeticMode classical_mode(const Context& ctx) {
  return ctx.common.mode.empty() ? ArithmeticMode::exact : parse_mode(ctx.common.mode);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, what + " is not valid JSON: " + e.what());
  }
}

void emit(const Context& ctx, std::string_view input, ArithmeticMode mode, json results,
          std::optional<std::uint64_t> seed = std::nullopt) {
  json report{{"command", ctx.command},
              {"arguments", ctx.args},
              {"input_digest", sha256_hex(input)},
              {"mode", std::string(to_string(mode))},
              {"results", std::move(results)},
              {"version", std::string(kVersion)}};
  if (seed) report["seed"] = *seed;
  const std::string text = report.dump(2) + "\n";
  if (ctx.common.out_path.empty()) {
    ctx.out << text;
    return;
  }
  std::ofstream file(ctx.common.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::parse_error, "cannot write " + ctx.common.out_path);
  file << text;
}

json error_json(const Error& e) { return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

/// Reports a semantic-negative outcome as a JSON report and returns its exit code.
int emit_negative(const Context& ctx, std::string_view input, ArithmeticMode mode, json results, const Error& e) {
  results["error"] = error_json(e);
  emit(ctx, input, mode, std::move(results));
  ctx.err << "bellscope " << ctx.command << ": " << e.what() << "\n";
  return exit_code_for(e.code());
}

std::vector<Family> families_for(const std::string& name) {
  if (name == "all") return {Family::classical, Family::quantum, Family::general};
  return {parse_family(name)};
}

json membership_json(const MembershipResult& m) {
  json j = to_json(m);
  if (m.family == Family::quantum)
    j["note"] = "verdict for the vertex hull q(n,S); boundary membership in q'(n,S) is not decided";
  return j;
}

json facets_json(const CorrelationVector& p) {
  if (!facets_supported(p.scenario())) return {{"skipped", "no facet system for this scenario"}};
  return to_json(evaluate_facets(p));
}

int cmd_classify(const Context& ctx, const std::string& path, const std::string& family) {
  const ArithmeticMode mode = classical_mode(ctx);
  const std::string input = read_file(path);
  const CorrelationVector p = correlation_from_text(input, mode);
  json memberships = json::array();
  bool inside_all = true;
  for (Family f : families_for(family)) {
    const auto m = membership(p, f);
    inside_all = inside_all && m.inside;
    memberships.push_back(membership_json(m));
  }
  if (!facets_supported(p.scenario())) ctx.err << "bellscope classify: facets skipped, scenario has no facet system\n";
  json results{{"vector", to_json(p)},
               {"memberships", std::move(memberships)},
               {"facets", facets_json(p)},
               {"verdict", inside_all ? "inside" : "outside"}};
  emit(ctx, input, mode, std::move(results));
  return inside_all ? kExitOk : kExitNegative;
}

json kolmogorov_transcript(const FiniteProbSpace& space, const CorrelationVector& p, const std::string& prefix = "A") {
  const Scenario& s = p.scenario();
  json checks = json::array();
  bool agrees = true;
  auto check = [&](const std::string& name, const Scalar& expected, const Scalar& actual) {
    const bool ok = approx_equal(expected, actual, 1e-9);
    agrees = agrees && ok;
    checks.push_back({{"quantity", name}, {"expected", to_json(expected)}, {"actual", to_json(actual)}, {"agrees", ok}});
  };
  for (int i = 0; i < s.n(); ++i) {
    const std::string a = prefix + std::to_string(i + 1);
    check("p(" + a + ")", p.single(i), space.probability(space.event(a)));
  }
  for (std::size_t k = 0; k < s.num_pairs(); ++k) {
    const auto [i, j] = s.pairs()[k];
    const std::string a = prefix + std::to_string(i + 1), b = prefix + std::to_string(j + 1);
    check("p(" + a + "&" + b + ")", p.pair(k), space.probability(space.event(a) & space.event(b)));
  }
  return {{"agrees", agrees}, {"checks", std::move(checks)}};
}

int cmd_represent(const Context& ctx, const std::string& path, const std::string& kind, bool nonsignaling) {
  const ArithmeticMode mode = classical_mode(ctx);
  const std::string input = read_file(path);
  const CorrelationVector p = correlation_from_text(input, mode);
  json results{{"vector", to_json(p)}, {"kind", kind}};
  if (kind == "kolmogorov") {
    const auto m = membership(p, Family::classical);
    results["membership"] = membership_json(m);
    if (!m.inside)
      return emit_negative(ctx, input, mode, std::move(results),
                           Error(ErrorCode::outside_polytope, p.to_string() + " lies outside c(n,S)"));
    const auto lambda = m.dense_weights(std::size_t{1} << p.scenario().n(), mode);
    const FiniteProbSpace space = build_kolmogorov_rep(p, lambda);
    results["space"] = to_json(space);
    results["verification"] = kolmogorov_transcript(space, p);
  } else if (kind == "conditional") {
    if (!check_admissibility(p)) {
      return emit_negative(ctx, input, mode, std::move(results),
                           Error(ErrorCode::inadmissible, p.to_string() + " violates the admissibility conditions"));
    }
    const ConditionalRep rep = build_conditional_rep(p, {nonsignaling});
    results["space"] = to_json(rep.space);
    if (rep.setting_probability) results["setting_probability"] = to_json(*rep.setting_probability);
    results["verification"] = to_json(verify_conditional_rep(rep, p));
    results["nonsignaling"] = to_json(check_nonsignaling(rep, p.scenario()));
  } else {
    throw Error(ErrorCode::parse_error, "unknown kind \"" + kind + "\"");
  }
  emit(ctx, input, mode, std::move(results));
  return kExitOk;
}

json partition_json(const CommonCauseExplanation& e) {
  json cells = json::array();
  for (std::size_t k = 0; k < e.partition.size(); ++k)
    cells.push_back({{"label", e.cell_labels[k]},
                     {"vector", to_json(e.cell_vectors[k])},
                     {"probability", to_json(e.space.probability(e.partition[k]))},
                     {"atoms", event_to_json(e.space, e.partition[k])}});
  return cells;
}

std::vector<CorrelationVector> load_components(const std::string& text, ArithmeticMode mode) {
  const json j = parse_json(text, "components file");
  const json& list = j.is_object() && j.contains("components") ? j["components"] : j;
  if (!list.is_array() || list.empty()) throw Error(ErrorCode::parse_error, "components file must hold a list of vectors");
  std::vector<CorrelationVector> out;
  for (const auto& v : list) out.push_back(correlation_from_json(v, mode));
  return out;
}

int cmd_explain(const Context& ctx, const std::string& path, const std::string& kind, const std::string& components_path) {
  const ArithmeticMode mode = classical_mode(ctx);
  std::string input = read_file(path);
  std::optional<std::string> components_text;
  if (!components_path.empty()) {
    components_text = read_file(components_path);
    input += *components_text;
  }
  const CorrelationVector p = correlation_from_text(read_file(path), mode);
  const Scenario& s = p.scenario();
  json results{{"vector", to_json(p)}, {"kind", kind}};
  if (kind != "property" && kind != "propensity") throw Error(ErrorCode::parse_error, "unknown kind \"" + kind + "\"");
  if (kind == "property" && components_text)
    throw Error(ErrorCode::parse_error, "--components applies to propensity explanations only");

  const auto m = membership(p, Family::classical);
  results["membership"] = membership_json(m);
  if (!m.inside)
    return emit_negative(ctx, input, mode, std::move(results),
                         Error(ErrorCode::outside_polytope, p.to_string() + " lies outside c(n,S)"));

  try {
    const std::size_t causes = std::size_t{1} << s.n();
    std::vector<Scalar> lambda;
    std::vector<CorrelationVector> components;
    if (components_text) {
      const auto d = decompose_indeterministic(p, load_components(*components_text, mode));
      if (d.weights.size() != causes)
        throw Error(ErrorCode::coefficient_mismatch, "need exactly " + std::to_string(causes) + " component vectors");
      results["decomposition"] = to_json(d);
      lambda = d.weights;
      components = d.components;
      for (std::size_t k = 0; k < d.epsilons.size(); ++k) {
        lambda[d.epsilons[k]] = d.weights[k];
        components[d.epsilons[k]] = d.components[k];
      }
    } else {
      lambda = m.dense_weights(causes, mode);
      for (std::uint64_t e = 0; e < causes; ++e) components.push_back(classical_vertex(s, e).to_correlation(mode));
    }
    const ConditionalRep rep = build_conditional_rep(p, {.require_nonsignaling = true});
    results["conditional_rep"] = {{"atoms", rep.space.size()},
                                  {"verification", to_json(verify_conditional_rep(rep, p))},
                                  {"nonsignaling", to_json(check_nonsignaling(rep, s))}};
    if (rep.setting_probability) results["conditional_rep"]["setting_probability"] = to_json(*rep.setting_probability);
    const CommonCauseExplanation e = build_propensity_explanation(p, lambda, components, rep);
    results["explanation"] = {{"atoms", e.space.size()},
                              {"deterministic", e.deterministic},
                              {"cells", partition_json(e)},
                              {"screening", to_json(e.screening)}};
    if (e.deterministic) {
      const FiniteProbSpace k = extract_kolmogorov_from_property(e.as_rep(), e.partition, s, e.cell_labels);
      results["kolmogorov"] = {{"space", to_json(k)}, {"verification", kolmogorov_transcript(k, p, "C")}};
    }
  } catch (const Error& e) {
    if (exit_code_for(e.code()) != kExitNegative) throw;
    return emit_negative(ctx, input, mode, std::move(results), e);
  }
  emit(ctx, input, mode, std::move(results));
  return kExitOk;
}

std::array<Direction, 4> parse_angles(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error, "not a number in --angles: \"" + item + "\"");
    }
  }
  if (values.size() != 12) throw Error(ErrorCode::parse_error, "--angles needs 12 numbers (four 3-vectors)");
  std::array<Direction, 4> dirs{};
  for (std::size_t k = 0; k < 12; ++k) dirs[k / 3][k % 3] = values[k];
  return dirs;
}

void force_float(const Context& ctx) {
  if (ctx.common.mode == "exact")
    ctx.err << "bellscope " << ctx.command << ": quantum commands run in float mode\n";
}

int cmd_epr(const Context& ctx, bool canonical, const std::string& angles) {
  force_float(ctx);
  if (canonical == !angles.empty()) throw Error(ErrorCode::parse_error, "give exactly one of --canonical and --angles");
  const auto dirs = canonical ? canonical_epr_directions() : parse_angles(angles);
  const std::string input = canonical ? std::string("canonical") : angles;
  const EprResult r = epr_correlation_vector(dirs[0], dirs[1], dirs[2], dirs[3]);
  json results = to_json(r);
  results["ch_value"] = r.ch_closed_form;
  results["ch_bound"] = {{"lower", -1}, {"upper", 0}};
  results["facets"] = to_json(evaluate_facets(r.vector));
  results["memberships"] = json::array({membership_json(membership(r.vector, Family::classical)),
                                        membership_json(membership(r.vector, Family::quantum))});
  emit(ctx, input, ArithmeticMode::floating, std::move(results));
  return kExitOk;
}

DensityOperator state_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "singlet") return singlet_state();
  if (j.is_object() && j.contains("density")) return DensityOperator::make(matrix_from_json(j["density"]));
  if (j.is_object() && j.contains("vector")) {
    std::vector<cdouble> psi;
    for (const auto& z : j["vector"]) {
      if (z.is_number())
        psi.emplace_back(z.get<double>(), 0.0);
      else if (z.is_array() && z.size() == 2)
        psi.emplace_back(z[0].get<double>(), z[1].get<double>());
      else
        throw Error(ErrorCode::parse_error, "state vector entries must be numbers or [re, im]");
    }
    return DensityOperator::pure(psi);
  }
  throw Error(ErrorCode::parse_error, "state must be \"singlet\", {\"density\": ...} or {\"vector\": ...}");
}

BellOperatorSet operators_from_json(const json& j) {
  if (j.contains("directions")) {
    const json& d = j["directions"];
    return spin_bell_operators(direction_from_json(d.at("A1")), direction_from_json(d.at("A2")),
                               direction_from_json(d.at("B1")), direction_from_json(d.at("B2")));
  }
  for (const char* key : {"A1", "A2", "B1", "B2"})
    if (!j.contains(key)) throw Error(ErrorCode::parse_error, std::string("operators need \"") + key + "\"");
  return {matrix_from_json(j["A1"]), matrix_from_json(j["A2"]), matrix_from_json(j["B1"]), matrix_from_json(j["B2"])};
}

int cmd_bell_operator(const Context& ctx, const std::string& path) {
  force_float(ctx);
  const std::string input = read_file(path);
  const json j = parse_json(input, path);
  if (!j.is_object() || !j.contains("operators") || !j.contains("states"))
    throw Error(ErrorCode::parse_error, "expected {\"operators\": ..., \"states\": [...]}");
  BellOperatorSet ops;
  try {
    ops = operators_from_json(j["operators"]);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  const ComplexMatrix r = bell_operator(ops);
  json values = json::array();
  double largest = 0.0;
  for (const auto& s : j["states"]) {
    const DensityOperator rho = state_from_json(s);
    const double v = bell_operator_value(rho, ops);
    largest = std::max(largest, std::abs(v));
    values.push_back({{"value", v}, {"within_sqrt2", std::abs(v) <= std::numbers::sqrt2 + 1e-9}});
  }
  json results{{"operator", to_json(r)},
               {"values", std::move(values)},
               {"max_abs_value", largest},
               {"bound", std::numbers::sqrt2},
               {"separable_bound", 1.0}};
  emit(ctx, input, ArithmeticMode::floating, std::move(results));
  return kExitOk;
}

Scenario scenario_by_name(const std::string& name) {
  if (name == "two-events") return Scenario::two_events();
  if (name == "clauser-horne") return Scenario::clauser_horne();
  throw Error(ErrorCode::parse_error, "unknown scenario \"" + name + "\" (two-events or clauser-horne)");
}

int cmd_harness(const Context& ctx, const std::string& scenario, std::size_t samples) {
  const std::uint64_t seed = resolve_seed(ctx.common);
  const Scenario s = scenario_by_name(scenario);
  const EquivalenceReport r = facet_lp_equivalence_check(s, samples, seed);
  json counterexamples = json::array();
  for (const auto& p : r.counterexamples) counterexamples.push_back(to_json(p));
  json results{{"scenario", scenario},
               {"samples", r.samples},
               {"inside", r.inside},
               {"counterexamples", std::move(counterexamples)}};
  std::ostringstream input;
  input << scenario << ":" << samples << ":" << seed;
  emit(ctx, input.str(), ArithmeticMode::exact, std::move(results), seed);
  return r.counterexamples.empty() ? kExitOk : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation polytopes, probabilistic representations and common causes", "bellscope"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", common.mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--seed", common.seed, "Seed for sampling harnesses (default BELLSCOPE_SEED or built-in)");
    sub->add_option("--out", common.out_path, "Write the report to this file instead of stdout");
  };

  std::string path, family = "all", kind, components, angles, scenario = "two-events";
  bool canonical = false, nonsignaling = false;
  std::size_t samples = 1000;

  auto* classify = app.add_subcommand("classify", "Hull membership and facet report for a correlation vector");
  classify->add_option("input", path, "Correlation-vector JSON file")->required();
  classify->add_option("--family", family, "Vertex family")->check(CLI::IsMember({"classical", "quantum", "general", "all"}));
  add_common(classify);

  auto* represent = app.add_subcommand("represent", "Build a witnessing probability space");
  represent->add_option("input", path, "Correlation-vector JSON file")->required();
  represent->add_option("--kind", kind, "Representation kind")->required()->check(CLI::IsMember({"kolmogorov", "conditional"}));
  represent->add_flag("--nonsignaling", nonsignaling, "Require a non-signaling conditional representation");
  add_common(represent);

  auto* explain = app.add_subcommand("explain", "Common-causal explanation through a non-signaling representation");
  explain->add_option("input", path, "Correlation-vector JSON file")->required();
  explain->add_option("--kind", kind, "Explanation kind")->required()->check(CLI::IsMember({"property", "propensity"}));
  explain->add_option("--components", components, "JSON list of 2^n independence vectors in vertex order");
  add_common(explain);

  auto* epr = app.add_subcommand("epr", "EPR-Bohm singlet correlations and the Clauser-Horne value");
  epr->add_flag("--canonical", canonical, "Use the standard maximally violating directions");
  epr->add_option("--angles", angles, "a1x,a1y,a1z,a2x,...,b4z: four unit directions");
  add_common(epr);

  auto* bell = app.add_subcommand("bell-operator", "Evaluate a Bell operator on a list of states");
  bell->add_option("input", path, "JSON file with operators and states")->required();
  add_common(bell);

  auto* harness = app.add_subcommand("harness", "Random check that the LP and facet verdicts agree");
  harness->add_option("--scenario", scenario, "two-events or clauser-horne");
  harness->add_option("--samples", samples, "Number of random vectors");
  add_common(harness);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << "bellscope: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const Context ctx{chosen->get_name(), args, out, err, common};
  try {
    if (chosen == classify) return cmd_classify(ctx, path, family);
    if (chosen == represent) return cmd_represent(ctx, path, kind, nonsignaling);
    if (chosen == explain) return cmd_explain(ctx, path, kind, components);
    if (chosen == epr) return cmd_epr(ctx, canonical, angles);
    if (chosen == bell) return cmd_bell_operator(ctx, path);
    if (chosen == harness) return cmd_harness(ctx, scenario, samples);
  } catch (const Error& e) {
    err << "bellscope " << ctx.command << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "bellscope " << ctx.command << ": " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace bellscope::cli
