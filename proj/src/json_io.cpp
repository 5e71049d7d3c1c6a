#include "bellscope/json_io.hpp"

#include <cmath>
#include <sstream>

#include "bellscope/error.hpp"

namespace bellscope {

namespace {

Scalar scalar_from_json(const json& v, ArithmeticMode mode) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), mode);
  if (v.is_number()) return Scalar::parse(v.dump(), mode);
  throw Error(ErrorCode::parse_error, "expected a number or a numeric string, got " + v.dump());
}

std::vector<std::pair<int, int>> pairs_from_json(const json& s) {
  if (!s.is_array()) throw Error(ErrorCode::parse_error, "\"S\" must be a list of index pairs");
  std::vector<std::pair<int, int>> out;
  for (const auto& pair : s) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw Error(ErrorCode::parse_error, "index pair must be [i, j], got " + pair.dump());
    out.emplace_back(pair[0].get<int>(), pair[1].get<int>());
  }
  return out;
}

json pair_json(const IndexPair& p) { return json::array({p.first + 1, p.second + 1}); }

}  // namespace

CorrelationVector correlation_from_json(const json& j, ArithmeticMode mode) {
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "correlation vector must be a JSON object");
  for (const char* key : {"n", "S", "singles", "pairs"})
    if (!j.contains(key)) throw Error(ErrorCode::parse_error, std::string("missing field \"") + key + "\"");
  if (!j["n"].is_number_integer()) throw Error(ErrorCode::parse_error, "\"n\" must be an integer");
  const Scenario s = Scenario::make(j["n"].get<int>(), pairs_from_json(j["S"]));
  const json& singles = j["singles"];
  if (!singles.is_array() || singles.size() != static_cast<std::size_t>(s.n()))
    throw Error(ErrorCode::parse_error, "\"singles\" must list " + std::to_string(s.n()) + " entries");
  std::vector<Scalar> entries;
  for (const auto& v : singles) entries.push_back(scalar_from_json(v, mode));
  const json& pairs = j["pairs"];
  if (!pairs.is_object()) throw Error(ErrorCode::parse_error, "\"pairs\" must be an object keyed by \"i,j\"");
  std::vector<std::optional<Scalar>> slots(s.num_pairs());
  for (const auto& [key, value] : pairs.items()) {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream in(key);
    if (!(in >> a >> comma >> b) || comma != ',' || !in.eof())
      throw Error(ErrorCode::parse_error, "pair key must look like \"i,j\", got \"" + key + "\"");
    const auto slot = s.pair_slot(a - 1, b - 1);
    if (!slot) throw Error(ErrorCode::parse_error, "pair " + key + " is not in S");
    if (slots[*slot]) throw Error(ErrorCode::parse_error, "pair " + key + " given twice");
    slots[*slot] = scalar_from_json(value, mode);
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k]) throw Error(ErrorCode::parse_error, "missing value for pair " + s.pair_key(k));
    entries.push_back(*slots[k]);
  }
  return CorrelationVector(s, std::move(entries));
}

CorrelationVector correlation_from_text(const std::string& text, ArithmeticMode mode) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
  return correlation_from_json(j, mode);
}

json to_json(const CorrelationVector& p) {
  const Scenario& s = p.scenario();
  json out;
  out["n"] = s.n();
  out["S"] = json::array();
  for (const auto& pair : s.pairs()) out["S"].push_back(pair_json(pair));
  out["singles"] = json::array();
  for (int i = 0; i < s.n(); ++i) out["singles"].push_back(to_json(p.single(i)));
  out["pairs"] = json::object();
  for (std::size_t k = 0; k < s.num_pairs(); ++k) out["pairs"][s.pair_key(k)] = to_json(p.pair(k));
  return out;
}

json to_json(const Scalar& x) {
  if (x.is_exact()) return x.to_string();
  return x.to_double();
}

json to_json(const std::vector<Scalar>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

json to_json(const Certificate& c) {
  json out{{"description", c.description},
           {"coefficients", to_json(c.coefficients)},
           {"bound", to_json(c.bound)},
           {"value", to_json(c.value)}};
  if (c.facet_id) out["facet"] = *c.facet_id;
  return out;
}

json to_json(const MembershipResult& r) {
  json out{{"family", std::string(to_string(r.family))}, {"inside", r.inside}, {"pivots", r.pivots}};
  if (r.inside) {
    json terms = json::array();
    for (const auto& t : r.coefficients)
      terms.push_back({{"index", t.index}, {"vertex", t.vertex.to_string()}, {"weight", to_json(t.weight)}});
    out["coefficients"] = std::move(terms);
  }
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  return out;
}

json to_json(const FacetReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json item{{"id", e.id}, {"value", to_json(e.value)}, {"satisfied", e.satisfied}};
    if (e.lower) item["lower"] = to_json(*e.lower);
    if (e.upper) item["upper"] = to_json(*e.upper);
    entries.push_back(std::move(item));
  }
  return {{"all_satisfied", r.all_satisfied()}, {"inequalities", std::move(entries)}};
}

json event_to_json(const FiniteProbSpace& space, const Event& e) {
  json out = json::array();
  for (std::size_t atom : e.members()) out.push_back(space.labels()[atom]);
  return out;
}

json to_json(const FiniteProbSpace& space) {
  json atoms = json::array();
  for (std::size_t k = 0; k < space.size(); ++k)
    atoms.push_back({{"label", space.labels()[k]}, {"weight", to_json(space.weights()[k])}});
  json events = json::object();
  for (const auto& [name, e] : space.events()) events[name] = event_to_json(space, e);
  return {{"mode", std::string(to_string(space.mode()))}, {"atoms", std::move(atoms)}, {"events", std::move(events)}};
}

json to_json(const ConditionalVerification& v) {
  json checks = json::array();
  for (const auto& c : v.checks)
    checks.push_back(
        {{"quantity", c.name}, {"expected", to_json(c.expected)}, {"actual", to_json(c.actual)}, {"agrees", c.agrees}});
  return {{"agrees", v.agrees}, {"checks", std::move(checks)}};
}

json to_json(const NonsignalingReport& r) {
  json pairs = json::array();
  for (const auto& c : r.pairs)
    pairs.push_back({{"pair", pair_json(c.pair)},
                     {"first_given_own", to_json(c.first_given_own)},
                     {"first_given_both", to_json(c.first_given_both)},
                     {"second_given_own", to_json(c.second_given_own)},
                     {"second_given_both", to_json(c.second_given_both)},
                     {"nonsignaling", c.nonsignaling}});
  return {{"nonsignaling", r.nonsignaling()}, {"pairs", std::move(pairs)}};
}

json to_json(const ScreeningReport& r) {
  auto residuals = [](const std::vector<ScreeningResidual>& rs) {
    json out = json::array();
    for (const auto& x : rs)
      out.push_back({{"pair", pair_json(x.pair)}, {"cell", x.cell + 1}, {"residual", to_json(x.residual)}});
    return out;
  };
  json out{{"form", r.conditional_form ? "conditional" : "unconditional"},
           {"tolerance", r.tolerance},
           {"pass", r.pass},
           {"factorization", residuals(r.factorization)}};
  if (r.conditional_form) out["no_conspiracy"] = residuals(r.no_conspiracy);
  return out;
}

json to_json(const CommonCauseDecomposition& d) {
  json cells = json::array();
  for (std::size_t k = 0; k < d.weights.size(); ++k)
    cells.push_back({{"label", d.labels[k]}, {"weight", to_json(d.weights[k])}, {"vector", to_json(d.components[k])}});
  return {{"kind", std::string(to_string(d.kind))},
          {"same_coefficients_as_vertex_expansion", d.same_coefficients_as_vertex_expansion},
          {"cells", std::move(cells)}};
}

json to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (const auto& z : m.data()) out.push_back(json::array({z.real(), z.imag()}));
  return out;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::parse_error, "matrix must be a non-empty list of [re, im] pairs");
  const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (dim * dim != j.size()) throw Error(ErrorCode::parse_error, "matrix entry count " + std::to_string(j.size()) + " is not a square");
  std::vector<cdouble> data;
  data.reserve(j.size());
  for (const auto& z : j) {
    if (z.is_number()) {
      data.emplace_back(z.get<double>(), 0.0);
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      data.emplace_back(z[0].get<double>(), z[1].get<double>());
    } else {
      throw Error(ErrorCode::parse_error, "matrix entry must be [re, im], got " + z.dump());
    }
  }
  return ComplexMatrix(dim, std::move(data));
}

Direction direction_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::parse_error, "direction must be a 3-vector");
  Direction d{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw Error(ErrorCode::parse_error, "direction entries must be numbers");
    d[k] = j[k].get<double>();
  }
  return d;
}

json to_json(const Direction& d) { return json::array({d[0], d[1], d[2]}); }

json to_json(const EprResult& r) {
  const Scenario& s = r.vector.scenario();
  json pairs = json::array();
  for (std::size_t k = 0; k < 4; ++k)
    pairs.push_back({{"pair", pair_json(s.pairs()[k])},
                     {"angle", r.angles[k]},
                     {"closed_form", r.closed_form[k]},
                     {"trace", r.trace_form[k]}});
  json dirs = json::array();
  for (const auto& d : r.directions) dirs.push_back(to_json(d));
  return {{"directions", std::move(dirs)},
          {"vector", to_json(r.vector)},
          {"singles_trace", r.singles_trace},
          {"pairs", std::move(pairs)},
          {"max_discrepancy", r.max_discrepancy},
          {"cross_check_tolerance", kEprCrossCheckTolerance},
          {"ch_closed_form", r.ch_closed_form},
          {"ch_trace", r.ch_trace}};
}

json to_json(const QuantumCommonCauseReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"pair", pair_json(p.pair)},
                     {"residuals", p.residuals},
                     {"max_residual", p.max_residual},
                     {"screened", p.screened},
                     {"commuting", p.commuting}});
  return {{"weights", r.weights},
          {"cell_singles", r.cell_singles},
          {"pairs", std::move(pairs)},
          {"screening_pass", r.screening_pass},
          {"commuting", r.commuting},
          {"direct", to_json(r.direct)},
          {"reconstructed", to_json(r.reconstructed)},
          {"max_gap", r.max_gap},
          {"tolerance", r.tolerance}};
}

}  // namespace bellscope
