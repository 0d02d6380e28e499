#include "fracwos/config.hpp"

#include <cmath>
#include <set>

#include "fracwos/errors.hpp"

namespace fracwos {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "command", "builtin",  "alpha",      "dim",      "domain",  "g",       "f",        "eval_points",
    "tol",     "n_samples", "batch",     "n_min",    "n_max",   "seed",    "workers",  "eps_skin",
    "n_inner", "step_cap", "runs",       "path_tol", "path_steps", "p_method", "p_tol", "quad_tol",
    "output",  "format",   "timing"};

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "': " + why);
}

double get_double(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  // Allow 1e6 style literals as long as they are whole.
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  fail(key, "expected a non-negative integer");
}

std::string get_string(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

Point parse_point(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty() || v.size() > kMaxDim) fail(key, "expected an array of 1 to 8 numbers");
  Point p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(key, "expected an array of numbers");
    p[i] = v[i].get<double>();
  }
  return p;
}

std::vector<Point> parse_points(const json& v, const std::string& key) {
  if (!v.is_array()) fail(key, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_point(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

double get_in(const json& obj, const std::string& field, const std::string& key) {
  if (!obj.contains(field)) fail(key + "." + field, "missing");
  if (!obj[field].is_number()) fail(key + "." + field, "expected a number");
  return obj[field].get<double>();
}

json ball_at_origin(std::size_t dim) {
  return {{"ball", {{"center", std::vector<double>(dim, 0.0)}, {"radius", 1.0}}}};
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "solve") return Command::Solve;
  if (name == "path") return Command::Path;
  if (name == "steps") return Command::Steps;
  if (name == "pvalue") return Command::PValue;
  if (name == "reference") return Command::Reference;
  fail("command", "unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Solve:
      return "solve";
    case Command::Path:
      return "path";
    case Command::Steps:
      return "steps";
    case Command::PValue:
      return "pvalue";
    case Command::Reference:
      return "reference";
  }
  return "solve";
}

json preset(const std::string& name) {
  const json x_fig = json::array({json::array({0.6, 0.6})});
  if (name == "green") {
    return {{"alpha", 1.0},
            {"dim", 2},
            {"domain", ball_at_origin(2)},
            {"g", {{"type", "green"}, {"pole", {2.0, 0.0}}}},
            {"f", nullptr},
            {"eval_points", x_fig},
            {"n_samples", 1'000'000}};
  }
  if (name == "gaussian") {
    return {{"alpha", 1.0},
            {"dim", 2},
            {"domain", ball_at_origin(2)},
            {"g", {{"type", "gaussian"}, {"center", {2.0, 0.0}}}},
            {"f", nullptr},
            {"eval_points", x_fig},
            {"tol", 1e-4}};
  }
  if (name == "dyda") {
    return {{"alpha", 1.0},
            {"dim", 2},
            {"domain", ball_at_origin(2)},
            {"g", {{"type", "constant"}, {"value", 0.0}}},
            {"f", {{"type", "dyda"}}},
            {"eval_points", x_fig},
            {"tol", 1e-3},
            {"n_inner", 1000}};
  }
  if (name == "swisscheese-steps") {
    return {{"command", "steps"},
            {"alpha", 1.0},
            {"dim", 2},
            {"domain", {{"swiss_cheese", {{"radius", 1.0}, {"extent", 10}}}}},
            {"g", {{"type", "constant"}, {"value", 0.0}}},
            {"f", nullptr},
            {"eval_points", json::array({json::array({std::sqrt(0.29), -std::sqrt(0.7)})})},
            {"runs", 100'000}};
  }
  fail("builtin", "unknown preset '" + name + "' (expected green, gaussian, dyda or swisscheese-steps)");
}

json with_preset_defaults(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  if (!doc.contains("builtin") || doc["builtin"].is_null()) return doc;
  json merged = preset(get_string(doc, "builtin"));
  for (const auto& [key, value] : doc.items()) merged[key] = value;
  return merged;
}

Domain build_domain(const json& desc) {
  if (!desc.is_object() || desc.size() != 1) fail("domain", "expected an object with exactly one shape key");
  const auto& [kind, body] = *desc.items().begin();
  const std::string key = "domain." + kind;
  if (kind == "ball") {
    if (!body.contains("center")) fail(key + ".center", "missing");
    return Domain::ball(parse_point(body["center"], key + ".center"), get_in(body, "radius", key));
  }
  if (kind == "box") {
    if (!body.contains("lo")) fail(key + ".lo", "missing");
    if (!body.contains("hi")) fail(key + ".hi", "missing");
    return Domain::box(parse_point(body["lo"], key + ".lo"), parse_point(body["hi"], key + ".hi"));
  }
  if (kind == "halfspaces") {
    if (!body.is_array()) fail(key, "expected an array of {normal, offset}");
    std::vector<HalfSpace> faces;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const std::string k = key + "[" + std::to_string(i) + "]";
      if (!body[i].is_object() || !body[i].contains("normal")) fail(k + ".normal", "missing");
      faces.push_back({parse_point(body[i]["normal"], k + ".normal"), get_in(body[i], "offset", k)});
    }
    return Domain::halfspaces(std::move(faces));
  }
  if (kind == "union_of_balls") {
    if (!body.contains("centers")) fail(key + ".centers", "missing");
    auto centers = parse_points(body["centers"], key + ".centers");
    std::vector<double> radii;
    if (body.contains("radii")) {
      if (!body["radii"].is_array()) fail(key + ".radii", "expected an array of numbers");
      for (const auto& r : body["radii"]) {
        if (!r.is_number()) fail(key + ".radii", "expected an array of numbers");
        radii.push_back(r.get<double>());
      }
    } else {
      radii.push_back(get_in(body, "radius", key));
    }
    return Domain::union_of_balls(std::move(centers), std::move(radii));
  }
  if (kind == "swiss_cheese") {
    const double radius = body.contains("radius") ? get_in(body, "radius", key) : 1.0;
    int extent = 10;
    if (body.contains("extent")) {
      if (!body["extent"].is_number_integer()) fail(key + ".extent", "expected an integer");
      extent = body["extent"].get<int>();
    }
    return Domain::swiss_cheese(radius, extent);
  }
  fail("domain", "unknown shape '" + kind + "' (expected ball, box, halfspaces, union_of_balls or swiss_cheese)");
}

ExteriorData build_exterior(const json& desc, const StableParams& params) {
  if (!desc.is_object() || !desc.contains("type") || !desc["type"].is_string()) fail("g.type", "missing");
  const std::string type = desc["type"].get<std::string>();
  ExteriorData g = ExteriorData::constant(0.0);
  if (type == "constant") {
    g = ExteriorData::constant(desc.contains("value") ? get_in(desc, "value", "g") : 0.0);
  } else if (type == "green") {
    if (!desc.contains("pole")) fail("g.pole", "missing");
    g = ExteriorData::green(parse_point(desc["pole"], "g.pole"), params);
  } else if (type == "gaussian") {
    if (!desc.contains("center")) fail("g.center", "missing");
    g = ExteriorData::gaussian(parse_point(desc["center"], "g.center"));
  } else if (type == "halfspace_indicator") {
    if (!desc.contains("normal")) fail("g.normal", "missing");
    g = ExteriorData::halfspace_indicator(parse_point(desc["normal"], "g.normal"), get_in(desc, "offset", "g"));
  } else if (type == "radial_table") {
    std::vector<double> radii, values;
    for (const char* field : {"radii", "values"}) {
      if (!desc.contains(field) || !desc[field].is_array()) fail(std::string("g.") + field, "expected an array");
      for (const auto& v : desc[field]) {
        if (!v.is_number()) fail(std::string("g.") + field, "expected numbers");
        (std::string(field) == "radii" ? radii : values).push_back(v.get<double>());
      }
    }
    g = ExteriorData::radial_table(std::move(radii), std::move(values));
  } else {
    fail("g.type", "unknown type '" + type + "'");
  }
  if (desc.contains("square_integrable")) {
    if (!desc["square_integrable"].is_boolean()) fail("g.square_integrable", "expected a boolean");
    g.flag_square_integrable(desc["square_integrable"].get<bool>());
  }
  return g;
}

std::optional<SourceTerm> build_source(const json& desc, double alpha) {
  if (desc.is_null()) return std::nullopt;
  if (!desc.is_object() || !desc.contains("type") || !desc["type"].is_string()) fail("f.type", "missing");
  const std::string type = desc["type"].get<std::string>();
  if (type == "constant") return SourceTerm::constant(desc.contains("value") ? get_in(desc, "value", "f") : 0.0);
  if (type == "dyda") return SourceTerm::dyda(alpha);
  fail("f.type", "unknown type '" + type + "'");
}

RunConfig parse_config(const json& input) {
  const json doc = with_preset_defaults(input);
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.count(key)) fail(key, "unknown key");
  }

  RunConfig c;
  c.resolved = doc;
  if (doc.contains("builtin") && !doc["builtin"].is_null()) c.builtin = get_string(doc, "builtin");
  if (doc.contains("command")) c.command = parse_command(get_string(doc, "command"));

  if (!doc.contains("alpha")) fail("alpha", "missing");
  const json& a = doc["alpha"];
  if (a.is_number()) {
    c.alphas.push_back(a.get<double>());
  } else if (a.is_array() && !a.empty()) {
    for (const auto& v : a) {
      if (!v.is_number()) fail("alpha", "expected a number or an array of numbers");
      c.alphas.push_back(v.get<double>());
    }
  } else {
    fail("alpha", "expected a number or an array of numbers");
  }
  for (double alpha : c.alphas) {
    if (!(alpha > 0.0 && alpha < 2.0)) fail("alpha", "must lie in (0, 2)");
  }

  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer()) fail("dim", "expected an integer");
    const auto d = doc["dim"].get<long long>();
    if (d < 2 || d > static_cast<long long>(kMaxDim)) fail("dim", "must lie in [2, 8]");
    c.dim = static_cast<std::size_t>(d);
  }

  c.domain = doc.contains("domain") ? doc["domain"] : ball_at_origin(c.dim);
  c.g = doc.contains("g") ? doc["g"] : json{{"type", "constant"}, {"value", 0.0}};
  c.f = doc.contains("f") ? doc["f"] : json(nullptr);

  if (doc.contains("eval_points")) {
    c.eval_points = parse_points(doc["eval_points"], "eval_points");
  } else {
    c.eval_points.push_back(Point(c.dim));
  }
  for (std::size_t i = 0; i < c.eval_points.size(); ++i) {
    if (c.eval_points[i].dim() != c.dim) fail("eval_points[" + std::to_string(i) + "]", "dimension differs from dim");
  }

  if (doc.contains("tol") && !doc["tol"].is_null()) {
    c.tol = get_double(doc, "tol");
    if (!(*c.tol > 0.0)) fail("tol", "must be positive");
    c.adaptive.tol = *c.tol;
  }
  if (doc.contains("n_samples")) c.n_samples = get_count(doc, "n_samples");
  if (doc.contains("batch")) c.adaptive.batch = get_count(doc, "batch");
  if (doc.contains("n_min")) c.adaptive.n_min = get_count(doc, "n_min");
  if (doc.contains("n_max")) c.adaptive.n_max = get_count(doc, "n_max");
  if (c.adaptive.batch == 0) fail("batch", "must be positive");
  if (c.adaptive.n_max < c.adaptive.n_min) fail("n_max", "must be at least n_min");
  if (c.n_samples < 2 && !c.tol) fail("n_samples", "need at least 2 samples");

  if (doc.contains("seed")) c.seed = get_count(doc, "seed");
  if (doc.contains("workers")) {
    if (!doc["workers"].is_number_integer() || doc["workers"].get<long long>() < 1) {
      fail("workers", "expected a positive integer");
    }
    c.workers = doc["workers"].get<int>();
  }
  if (doc.contains("eps_skin")) {
    c.eps_skin = get_double(doc, "eps_skin");
    if (!(c.eps_skin >= 0.0)) fail("eps_skin", "must be non-negative");
  }
  if (doc.contains("n_inner")) c.n_inner = get_count(doc, "n_inner");
  if (c.n_inner == 0) fail("n_inner", "must be positive");
  if (doc.contains("step_cap")) c.step_cap = get_count(doc, "step_cap");
  if (c.step_cap == 0) fail("step_cap", "must be positive");

  if (doc.contains("runs")) c.runs = get_count(doc, "runs");
  if (c.runs == 0) fail("runs", "must be positive");
  if (doc.contains("path_tol")) {
    c.path_tol = get_double(doc, "path_tol");
    if (!(c.path_tol > 0.0)) fail("path_tol", "must be positive");
  }
  if (doc.contains("path_steps")) c.path_steps = get_count(doc, "path_steps");
  if (doc.contains("p_method")) {
    c.p_method = get_string(doc, "p_method");
    if (c.p_method != "both" && c.p_method != "quadrature" && c.p_method != "montecarlo") {
      fail("p_method", "expected both, quadrature or montecarlo");
    }
  }
  if (doc.contains("p_tol")) {
    c.p_tol = get_double(doc, "p_tol");
    if (!(c.p_tol > 0.0)) fail("p_tol", "must be positive");
  }
  if (doc.contains("quad_tol")) {
    c.quad_tol = get_double(doc, "quad_tol");
    if (!(c.quad_tol > 0.0)) fail("quad_tol", "must be positive");
  }

  if (doc.contains("output")) c.output = get_string(doc, "output");
  const bool tabular = c.command == Command::Path || c.command == Command::Steps || c.command == Command::Reference;
  c.format = doc.contains("format") ? get_string(doc, "format") : (tabular ? "csv" : "json");
  if (c.format != "json" && c.format != "csv") fail("format", "expected json or csv");
  if (doc.contains("timing")) {
    if (!doc["timing"].is_boolean()) fail("timing", "expected a boolean");
    c.timing = doc["timing"].get<bool>();
  }

  // Catch malformed problem descriptions before any sampling starts.
  try {
    const Domain domain = build_domain(c.domain);
    if (domain.dim() != c.dim) fail("domain", "dimension differs from dim");
    const StableParams params(c.alphas.front(), c.dim);
    build_exterior(c.g, params);
    const auto f = build_source(c.f, c.alphas.front());
    if (f && c.dim != 2) fail("f", "source terms are supported in d = 2 only");
    const bool needs_interior = c.command == Command::Solve || c.command == Command::Steps;
    if (needs_interior) {
      for (std::size_t i = 0; i < c.eval_points.size(); ++i) {
        if (!domain.contains(c.eval_points[i])) fail("eval_points[" + std::to_string(i) + "]", "not inside the domain");
      }
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ProblemSpec build_problem(const RunConfig& config, double alpha) {
  const StableParams params(alpha, config.dim);
  ProblemSpec p{.domain = build_domain(config.domain),
                .params = params,
                .g = build_exterior(config.g, params),
                .f = build_source(config.f, alpha),
                .eval_points = config.eval_points,
                .tol = config.tol,
                .n_samples = config.n_samples,
                .seed = config.seed,
                .eps_skin = config.eps_skin,
                .n_inner = config.n_inner,
                .step_cap = config.step_cap};
  p.validate();
  return p;
}

}  // namespace fracwos
