#include "qorder/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qorder/errors.hpp"

namespace qorder {

namespace {

using nlohmann::json;

constexpr double kAmplitudeNormTol = 1e-6;
constexpr double kDefaultCfAngle = 0.7853981633974483;  // pi/4
constexpr std::uint64_t kDefaultRuns = 100000;
constexpr std::uint64_t kDefaultSeed = 1;

[[noreturn]] void fail(const std::string& file, const std::string& field,
                       const std::string& message) {
  throw ScenarioError(file + ": " + field + ": " + message);
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Rejects separators that would corrupt CSV rows or the report grammar.
void check_name_text(const std::string& file, const std::string& field,
                     const std::string& text) {
  if (text.empty()) {
    fail(file, field, "must not be empty");
  }
  if (text.find_first_of(",\n\r\"") != std::string::npos) {
    fail(file, field, "'" + text + "' contains a comma, quote or newline");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void check_object(const json& v, const std::string& file,
                  const std::string& field) {
  if (!v.is_object()) {
    fail(file, field, "expected an object");
  }
}

void check_keys(const json& obj, const std::string& file,
                const std::string& field,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      fail(file, field, "unknown field '" + item.key() + "'");
    }
  }
}

double require_number(const json& obj, const std::string& file,
                      const std::string& field, const char* key) {
  const json* v = find(obj, key);
  if (v == nullptr || !v->is_number()) {
    fail(file, field + "." + key, "expected a number");
  }
  return v->get<double>();
}

double optional_number(const json& obj, const std::string& file,
                       const std::string& field, const char* key,
                       double fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    return fallback;
  }
  if (!v->is_number()) {
    fail(file, field + "." + key, "expected a number");
  }
  return v->get<double>();
}

std::uint64_t optional_count(const json& obj, const std::string& file,
                             const std::string& field, const char* key,
                             std::uint64_t fallback, std::uint64_t minimum) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    return fallback;
  }
  if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
    fail(file, field + "." + key, "expected a non-negative integer");
  }
  const std::uint64_t n = v->get<std::uint64_t>();
  if (n < minimum) {
    fail(file, field + "." + key,
         "must be at least " + std::to_string(minimum));
  }
  return n;
}

/// An amplitude entry is a plain real number or an [re, im] pair.
Complex parse_amplitude(const json& v, const std::string& file,
                        const std::string& field) {
  if (v.is_number()) {
    return Complex(v.get<double>(), 0.0);
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  fail(file, field, "expected a number or an [re, im] pair");
}

Vector parse_amplitude_vector(const json& arr, int dim,
                              const std::string& file,
                              const std::string& field) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim) {
    fail(file, field, "expected " + std::to_string(dim) + " entries");
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = parse_amplitude(arr[static_cast<size_t>(i)], file,
                           field + "[" + std::to_string(i) + "]");
  }
  return v;
}

std::vector<std::string> default_labels(Factor factor, int dim, bool prime) {
  const char* side = factor == Factor::left ? "L" : "R";
  const char* tick = prime ? "'" : "";
  std::vector<std::string> labels;
  if (dim == 2) {
    labels = {std::string(side) + tick + "+", std::string(side) + tick + "-"};
  } else {
    for (int i = 0; i < dim; ++i) {
      labels.push_back(std::string(side) + tick + std::to_string(i));
    }
  }
  return labels;
}

MeasurementBasis computational_basis(Factor factor, int dim, bool prime) {
  std::vector<Ket> vectors;
  for (int i = 0; i < dim; ++i) {
    vectors.push_back(Ket::basis_state(dim, i));
  }
  return MeasurementBasis(factor, std::move(vectors),
                          default_labels(factor, dim, prime));
}

/// One per-side basis override: {"angle": t} or {"vectors": [...]}, plus
/// optional "labels".
MeasurementBasis parse_basis(const json& spec, Factor factor, int dim,
                             bool prime, const std::string& file,
                             const std::string& field) {
  check_object(spec, file, field);
  check_keys(spec, file, field, {"angle", "vectors", "labels"});

  std::vector<std::string> labels = default_labels(factor, dim, prime);
  if (const json* lv = find(spec, "labels")) {
    if (!lv->is_array() || static_cast<int>(lv->size()) != dim) {
      fail(file, field + ".labels",
           "expected " + std::to_string(dim) + " labels");
    }
    labels.clear();
    for (const auto& item : *lv) {
      if (!item.is_string()) {
        fail(file, field + ".labels", "labels must be strings");
      }
      labels.push_back(item.get<std::string>());
      check_name_text(file, field + ".labels", labels.back());
    }
  }

  const json* angle = find(spec, "angle");
  const json* vectors = find(spec, "vectors");
  if ((angle != nullptr) == (vectors != nullptr)) {
    fail(file, field, "expected exactly one of 'angle' or 'vectors'");
  }

  try {
    if (angle != nullptr) {
      if (!angle->is_number()) {
        fail(file, field + ".angle", "expected a number");
      }
      if (dim != 2) {
        fail(file, field + ".angle",
             "angle form needs a 2-dimensional side, got dimension " +
                 std::to_string(dim));
      }
      return MeasurementBasis::rotated_qubit(factor, angle->get<double>(),
                                             labels[0], labels[1]);
    }
    if (!vectors->is_array() || static_cast<int>(vectors->size()) != dim) {
      fail(file, field + ".vectors",
           "expected " + std::to_string(dim) + " vectors");
    }
    std::vector<Ket> kets;
    for (int i = 0; i < dim; ++i) {
      kets.emplace_back(parse_amplitude_vector(
          (*vectors)[static_cast<size_t>(i)], dim, file,
          field + ".vectors[" + std::to_string(i) + "]"));
    }
    return MeasurementBasis(factor, std::move(kets), std::move(labels));
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail(file, field, e.what());
  }
}

Event parse_event(const json& arr, const std::string& file,
                  const std::string& field) {
  if (!arr.is_array() || arr.size() != 4) {
    fail(file, field, "expected [t, x, y, z]");
  }
  double c[4];
  for (size_t i = 0; i < 4; ++i) {
    if (!arr[i].is_number()) {
      fail(file, field, "coordinates must be numbers");
    }
    c[i] = arr[i].get<double>();
  }
  try {
    return Event(c[0], c[1], c[2], c[3]);
  } catch (const Error& e) {
    fail(file, field, e.what());
  }
}

Analysis parse_analysis(const std::string& name, const std::string& file,
                        const std::string& field) {
  if (name == "joint") return Analysis::joint;
  if (name == "conditional") return Analysis::conditional;
  if (name == "counterfactual") return Analysis::counterfactual;
  if (name == "gap") return Analysis::gap;
  if (name == "reciprocity") return Analysis::reciprocity;
  if (name == "montecarlo") return Analysis::montecarlo;
  fail(file, field,
       "unknown analysis '" + name +
           "' (expected joint, conditional, counterfactual, gap, "
           "reciprocity or montecarlo)");
}

std::vector<OrderTag> parse_order(const std::string& text,
                                  const std::string& file,
                                  const std::string& field) {
  if (text == "l-first") return {OrderTag::l_first};
  if (text == "r-first") return {OrderTag::r_first};
  if (text == "both") return {OrderTag::r_first, OrderTag::l_first};
  fail(file, field,
       "unknown order '" + text + "' (expected l-first, r-first or both)");
}

struct ParsedState {
  Ket ket0;
  BipartiteSpace space;
  std::optional<HardyParams> hardy;
  std::optional<HardyScenario> hardy_scenario;
};

ParsedState parse_state(const json& state, const std::string& file) {
  check_object(state, file, "state");
  const json* preset = find(state, "preset");
  if (preset != nullptr) {
    if (!preset->is_string()) {
      fail(file, "state.preset", "expected a string");
    }
    const std::string name = preset->get<std::string>();
    if (name == "hardy") {
      check_keys(state, file, "state", {"preset", "alpha", "beta"});
      HardyParams params{require_number(state, file, "state", "alpha"),
                         require_number(state, file, "state", "beta")};
      try {
        HardyScenario h = build_hardy(params);
        return {h.ket0, h.space, params, std::move(h)};
      } catch (const Error& e) {
        fail(file, "state", e.what());
      }
    }
    if (name == "singlet") {
      check_keys(state, file, "state", {"preset"});
      Vector amp = Vector::Zero(4);
      amp(1) = Complex(1.0 / std::sqrt(2.0), 0.0);
      amp(2) = Complex(-1.0 / std::sqrt(2.0), 0.0);
      return {Ket(std::move(amp)), BipartiteSpace(2, 2), std::nullopt,
              std::nullopt};
    }
    if (name == "product") {
      check_keys(state, file, "state", {"preset", "left", "right"});
      const double tl = optional_number(state, file, "state", "left", 0.0);
      const double tr = optional_number(state, file, "state", "right", 0.0);
      Vector l(2), r(2);
      l << Complex(std::cos(tl), 0.0), Complex(std::sin(tl), 0.0);
      r << Complex(std::cos(tr), 0.0), Complex(std::sin(tr), 0.0);
      return {tensor(Ket(std::move(l)), Ket(std::move(r))),
              BipartiteSpace(2, 2), std::nullopt, std::nullopt};
    }
    fail(file, "state.preset",
         "unknown preset '" + name + "' (expected hardy, singlet or product)");
  }

  check_keys(state, file, "state", {"dims", "amplitudes"});
  const json* dims = find(state, "dims");
  if (dims == nullptr || !dims->is_array() || dims->size() != 2 ||
      !(*dims)[0].is_number_integer() || !(*dims)[1].is_number_integer()) {
    fail(file, "state.dims", "expected [d_L, d_R] integers");
  }
  const int dim_l = (*dims)[0].get<int>();
  const int dim_r = (*dims)[1].get<int>();
  BipartiteSpace space = [&] {
    try {
      return BipartiteSpace(dim_l, dim_r);
    } catch (const Error& e) {
      fail(file, "state.dims", e.what());
    }
  }();

  const json* amps = find(state, "amplitudes");
  if (amps == nullptr) {
    fail(file, "state.amplitudes", "required with explicit dims");
  }
  Vector v = parse_amplitude_vector(*amps, space.dim(), file,
                                    "state.amplitudes");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > kAmplitudeNormTol) {
    fail(file, "state.amplitudes",
         "norm " + format_g(norm) + " is farther than " +
             format_g(kAmplitudeNormTol) + " from 1");
  }
  v /= norm;
  return {Ket(std::move(v)), space, std::nullopt, std::nullopt};
}

bool wants(const std::vector<Analysis>& analyses, Analysis a) {
  return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
}

}  // namespace

std::string to_string(Analysis a) {
  switch (a) {
    case Analysis::joint: return "joint";
    case Analysis::conditional: return "conditional";
    case Analysis::counterfactual: return "counterfactual";
    case Analysis::gap: return "gap";
    case Analysis::reciprocity: return "reciprocity";
    case Analysis::montecarlo: return "montecarlo";
  }
  return "?";
}

ResolvedScenario load_scenario(const std::string& path,
                               const ScenarioOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioError(path + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  json root;
  try {
    root = json::parse(content, nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the failure; anchor it as line:column.
    const size_t at = e.byte == 0 ? 0 : std::min(content.size(), e.byte - 1);
    const size_t line = 1 + static_cast<size_t>(std::count(
                                content.begin(), content.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
    const size_t line_start = content.rfind('\n', at == 0 ? 0 : at - 1);
    const size_t column =
        at - (line_start == std::string::npos ? 0 : line_start + 1) + 1;
    throw ScenarioError(path + ":" + std::to_string(line) + ":" +
                        std::to_string(column) + ": " + e.what());
  }

  if (!root.is_object()) {
    fail(path, "document", "expected a top-level object");
  }
  check_keys(root, path, "document",
             {"schema_version", "name", "state", "bases", "outcomes", "order",
              "analyses", "montecarlo", "spacetime"});

  const json* version = find(root, "schema_version");
  if (version == nullptr || !version->is_number_integer()) {
    fail(path, "schema_version", "required integer field");
  }
  if (version->get<int>() != 1) {
    fail(path, "schema_version",
         "unsupported version " + std::to_string(version->get<int>()) +
             " (this build reads version 1)");
  }

  std::string name = std::filesystem::path(path).stem().string();
  if (const json* nv = find(root, "name")) {
    if (!nv->is_string()) {
      fail(path, "name", "expected a string");
    }
    name = nv->get<std::string>();
  }
  check_name_text(path, "name", name);

  const json* state = find(root, "state");
  if (state == nullptr) {
    fail(path, "state", "required field");
  }
  ParsedState parsed = parse_state(*state, path);
  const BipartiteSpace space = parsed.space;

  // Bases: file overrides win; otherwise hardy wiring or computational.
  std::optional<MeasurementBasis> l_basis;
  std::optional<MeasurementBasis> r_basis;
  std::optional<MeasurementBasis> cf_basis;
  bool custom_bases = false;
  if (const json* bases = find(root, "bases")) {
    check_object(*bases, path, "bases");
    check_keys(*bases, path, "bases", {"left", "right", "counterfactual"});
    custom_bases = !bases->empty();
    if (const json* b = find(*bases, "left")) {
      l_basis = parse_basis(*b, Factor::left, space.dim_l(), false, path,
                            "bases.left");
    }
    if (const json* b = find(*bases, "right")) {
      r_basis = parse_basis(*b, Factor::right, space.dim_r(), false, path,
                            "bases.right");
    }
    if (const json* b = find(*bases, "counterfactual")) {
      cf_basis = parse_basis(*b, Factor::right, space.dim_r(), true, path,
                             "bases.counterfactual");
    }
  }
  if (!l_basis) {
    l_basis = parsed.hardy_scenario
                  ? parsed.hardy_scenario->l2
                  : computational_basis(Factor::left, space.dim_l(), false);
  }
  if (!r_basis) {
    r_basis = parsed.hardy_scenario
                  ? parsed.hardy_scenario->r2
                  : computational_basis(Factor::right, space.dim_r(), false);
  }
  if (!cf_basis) {
    if (parsed.hardy_scenario) {
      cf_basis = parsed.hardy_scenario->r1;
    } else if (space.dim_r() == 2) {
      cf_basis = MeasurementBasis::rotated_qubit(Factor::right,
                                                 kDefaultCfAngle, "R'+", "R'-");
    }
  }

  // Designated outcomes. Hardy keeps its canonical pair when the labels
  // survived; anything else falls back to each basis's first label.
  const bool canonical_hardy =
      parsed.hardy_scenario.has_value() && r_basis->has_label("R2+") &&
      cf_basis && cf_basis->has_label("R1-");
  std::string condition_label =
      canonical_hardy ? "R2+" : r_basis->label(0);
  std::string counterfactual_label =
      canonical_hardy ? "R1-" : (cf_basis ? cf_basis->label(0) : "");
  if (const json* outcomes = find(root, "outcomes")) {
    check_object(*outcomes, path, "outcomes");
    check_keys(*outcomes, path, "outcomes", {"condition", "counterfactual"});
    if (const json* c = find(*outcomes, "condition")) {
      if (!c->is_string()) {
        fail(path, "outcomes.condition", "expected a string");
      }
      condition_label = c->get<std::string>();
      if (!r_basis->has_label(condition_label)) {
        fail(path, "outcomes.condition",
             "label '" + condition_label + "' not in the right basis");
      }
    }
    if (const json* c = find(*outcomes, "counterfactual")) {
      if (!c->is_string()) {
        fail(path, "outcomes.counterfactual", "expected a string");
      }
      counterfactual_label = c->get<std::string>();
      if (!cf_basis || !cf_basis->has_label(counterfactual_label)) {
        fail(path, "outcomes.counterfactual",
             "label '" + counterfactual_label +
                 "' not in the counterfactual basis");
      }
    }
  }

  std::string order_text = "both";
  if (const json* ov = find(root, "order")) {
    if (!ov->is_string()) {
      fail(path, "order", "expected a string");
    }
    order_text = ov->get<std::string>();
  }
  if (overrides.order) {
    order_text = *overrides.order;
  }
  std::vector<OrderTag> orders = parse_order(order_text, path, "order");

  const json* analyses_json = find(root, "analyses");
  if (analyses_json == nullptr || !analyses_json->is_array() ||
      analyses_json->empty()) {
    fail(path, "analyses", "required non-empty array");
  }
  std::vector<Analysis> analyses;
  for (size_t i = 0; i < analyses_json->size(); ++i) {
    const json& item = (*analyses_json)[i];
    const std::string field = "analyses[" + std::to_string(i) + "]";
    if (!item.is_string()) {
      fail(path, field, "expected a string");
    }
    const Analysis a = parse_analysis(item.get<std::string>(), path, field);
    if (wants(analyses, a)) {
      fail(path, field, "duplicate analysis '" + to_string(a) + "'");
    }
    analyses.push_back(a);
  }

  RunConfig mc{kDefaultRuns, kDefaultSeed, OrderTag::r_first};
  if (const json* mj = find(root, "montecarlo")) {
    check_object(*mj, path, "montecarlo");
    check_keys(*mj, path, "montecarlo", {"n_runs", "seed"});
    mc.n_runs = optional_count(*mj, path, "montecarlo", "n_runs", kDefaultRuns,
                               1);
    mc.seed = optional_count(*mj, path, "montecarlo", "seed", kDefaultSeed, 0);
  }
  if (overrides.runs) {
    if (*overrides.runs < 1) {
      throw ScenarioError("--runs must be at least 1");
    }
    mc.n_runs = *overrides.runs;
  }
  if (overrides.seed) {
    mc.seed = *overrides.seed;
  }

  std::optional<std::pair<Event, Event>> events;
  if (const json* sj = find(root, "spacetime")) {
    check_object(*sj, path, "spacetime");
    check_keys(*sj, path, "spacetime", {"event_l", "event_r"});
    const json* el = find(*sj, "event_l");
    const json* er = find(*sj, "event_r");
    if (el == nullptr || er == nullptr) {
      fail(path, "spacetime", "requires both event_l and event_r");
    }
    events = {parse_event(*el, path, "spacetime.event_l"),
              parse_event(*er, path, "spacetime.event_r")};
  }

  const bool needs_cf = wants(analyses, Analysis::counterfactual) ||
                        wants(analyses, Analysis::gap);
  if (needs_cf && !cf_basis) {
    fail(path, "analyses",
         "counterfactual analyses need bases.counterfactual (no default "
         "exists for a right side of dimension " +
             std::to_string(space.dim_r()) + ")");
  }
  if (needs_cf) {
    // Surfaces the commuting-observable rejection at load time.
    try {
      Scenario probe(DensityOperator::pure(parsed.ket0, space), *l_basis,
                     *r_basis, *cf_basis, orders.front());
    } catch (const Error& e) {
      fail(path, "bases.counterfactual", e.what());
    }
  }
  if (wants(analyses, Analysis::reciprocity) &&
      (space.dim_l() != 2 || space.dim_r() != 2)) {
    fail(path, "analyses",
         "reciprocity needs a 2x2 composite, got " +
             std::to_string(space.dim_l()) + "x" +
             std::to_string(space.dim_r()));
  }

  return ResolvedScenario{std::move(name),
                          std::move(parsed.ket0),
                          space,
                          std::move(*l_basis),
                          std::move(*r_basis),
                          std::move(cf_basis),
                          std::move(condition_label),
                          std::move(counterfactual_label),
                          std::move(orders),
                          std::move(analyses),
                          mc,
                          events,
                          parsed.hardy,
                          custom_bases};
}

ResolvedScenario with_hardy_alpha(const ResolvedScenario& base, double alpha) {
  if (!base.hardy) {
    throw ScenarioError(base.name +
                        ": parameter sweeps need the hardy preset");
  }
  if (base.custom_bases) {
    throw ScenarioError(base.name +
                        ": parameter sweeps regenerate the canonical hardy "
                        "bases and cannot honor a bases override");
  }
  HardyParams params{alpha, base.hardy->beta};
  HardyScenario h = [&] {
    try {
      return build_hardy(params);
    } catch (const Error& e) {
      throw ScenarioError(base.name + ": sweep alpha=" + format_g(alpha) +
                          ": " + e.what());
    }
  }();
  return ResolvedScenario{base.name + "[alpha=" + format_g(alpha) + "]",
                          h.ket0,
                          h.space,
                          h.l2,
                          h.r2,
                          h.r1,
                          "R2+",
                          "R1-",
                          base.orders,
                          base.analyses,
                          base.montecarlo,
                          base.events,
                          params,
                          false};
}

}  // namespace qorder
