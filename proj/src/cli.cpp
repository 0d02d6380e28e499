#include "fracwos/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "fracwos/errors.hpp"
#include "fracwos/io.hpp"
#include "fracwos/montecarlo.hpp"
#include "fracwos/reference.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/wos.hpp"

namespace fracwos::cli {

using nlohmann::json;
using io::format_double;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    double v = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    const auto res = std::from_chars(first, last, v);
    if (first == last || res.ec != std::errc() || res.ptr != last) {
      throw ConfigError("flag " + flag + ": cannot parse '" + text + "' as a comma-separated list of numbers");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::uint64_t parse_seed_env(const char* text) {
  std::uint64_t v = 0;
  const char* last = text + std::char_traits<char>::length(text);
  const auto res = std::from_chars(text, last, v);
  if (text == last || res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("FRACWOS_SEED: expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::string provenance(const RunConfig& c) {
  return "# fracwos " + to_string(c.command) + "\n# config: " + c.resolved.dump() + "\n";
}

std::string csv_point_header(std::size_t dim) {
  std::string h;
  for (std::size_t i = 1; i <= dim; ++i) h += (i > 1 ? ",x" : "x") + std::to_string(i);
  return h;
}

void warn_variance(const ExteriorData& g, double alpha, std::ostream& err) {
  if (g.square_integrable() == false) {
    err << "warning: exterior data " << g.name() << " is not square integrable against the exit law at alpha="
        << format_double(alpha) << "; the sample variance and standard error are unreliable\n";
  }
}

// ---- solve ---------------------------------------------------------------

struct SolveRow {
  double alpha;
  Point x;
  McResult result;
  std::string status;
};

std::string render_solve(const RunConfig& c, std::ostream& err, int& status) {
  std::vector<SolveRow> rows;
  for (double alpha : c.alphas) {
    const ProblemSpec problem = build_problem(c, alpha);
    warn_variance(problem.g, alpha, err);
    for (const Point& x : problem.eval_points) {
      SolveRow row{alpha, x, {}, "ok"};
      try {
        if (c.tol) {
          row.result = estimate_adaptive(problem, x, c.adaptive, c.seed, c.workers);
        } else {
          row.result = estimate_fixed(problem, x, c.n_samples, c.seed, c.workers);
        }
      } catch (const SamplingToleranceNotReached& e) {
        row.result = e.partial();
        row.status = "tolerance_not_reached";
        err << "error: " << e.what() << "\n";
        status = kExitNumeric;
      }
      if (row.result.aborted > 0) {
        err << "error: " << row.result.aborted << " walks from (" << io::format_point(x, ", ")
            << ") hit the step cap of " << c.step_cap << "\n";
        if (row.status == "ok") row.status = "step_cap_exceeded";
        status = kExitNumeric;
      }
      if (!c.timing) row.result.wall_seconds = 0.0;
      rows.push_back(std::move(row));
    }
  }

  std::ostringstream os;
  if (c.format == "csv") {
    os << provenance(c);
    os << "alpha," << csv_point_header(c.dim)
       << ",mean,var,n,std_error,stop_reason,attempted,aborted,status,wall_seconds\n";
    for (const auto& r : rows) {
      const Estimate& e = r.result.estimate;
      os << format_double(r.alpha) << "," << io::format_point(r.x) << "," << format_double(e.mean()) << ","
         << format_double(e.var()) << "," << e.n() << "," << format_double(e.std_error()) << ","
         << to_string(r.result.stop) << "," << r.result.attempted << "," << r.result.aborted << "," << r.status
         << "," << format_double(r.result.wall_seconds) << "\n";
    }
    return os.str();
  }
  os << "{\n  \"command\": \"solve\",\n  \"config\": " << c.resolved.dump() << ",\n  \"results\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const Estimate& e = r.result.estimate;
    io::JsonObject obj;
    obj.number("alpha", r.alpha)
        .array("point", r.x.coords())
        .number("mean", e.mean())
        .number("var", e.var())
        .integer("n", e.n())
        .number("std_error", e.std_error())
        .string("stop_reason", to_string(r.result.stop))
        .integer("attempted", r.result.attempted)
        .integer("aborted", r.result.aborted)
        .string("status", r.status)
        .number("wall_seconds", r.result.wall_seconds);
    os << (i ? ",\n    " : "\n    ") << obj.str();
  }
  os << "\n  ]\n}\n";
  return os.str();
}

// ---- path ----------------------------------------------------------------

std::string render_path(const RunConfig& c) {
  const Point& x0 = c.eval_points.front();
  if (c.format == "json") {
    // A path is tabular; JSON output is one object per alpha with the points inline.
    std::ostringstream js;
    js << "{\n  \"command\": \"path\",\n  \"config\": " << c.resolved.dump() << ",\n  \"paths\": [";
    for (std::size_t a = 0; a < c.alphas.size(); ++a) {
      const StableParams params(c.alphas[a], c.dim);
      RngStream rng(c.seed, a);
      const PathRecord rec = simulate_path(x0, params, c.path_tol, c.path_steps, rng);
      std::string pts = "[";
      for (std::size_t i = 0; i < rec.points.size(); ++i) {
        pts += (i ? ",[" : "[") + io::format_point(rec.points[i]) + "]";
      }
      pts += "]";
      io::JsonObject obj;
      obj.number("alpha", c.alphas[a]).number("tolerance", rec.tolerance).raw("points", pts);
      js << (a ? ",\n    " : "\n    ") << obj.str();
    }
    js << "\n  ]\n}\n";
    return js.str();
  }
  std::ostringstream os;
  os << provenance(c);
  os << "# dim=" << c.dim << ",tol=" << format_double(c.path_tol) << ",seed=" << c.seed
     << ",steps=" << c.path_steps << "\n";
  os << "alpha,step," << csv_point_header(c.dim) << "\n";
  for (std::size_t a = 0; a < c.alphas.size(); ++a) {
    const StableParams params(c.alphas[a], c.dim);
    RngStream rng(c.seed, a);
    const PathRecord rec = simulate_path(x0, params, c.path_tol, c.path_steps, rng);
    const std::string alpha = format_double(c.alphas[a]);
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
      os << alpha << "," << i << "," << io::format_point(rec.points[i]) << "\n";
    }
  }
  return os.str();
}

// ---- steps ---------------------------------------------------------------

GeometricParameter p_for_steps(const StableParams& params, const RunConfig& c) {
  if (params.dim() == 2) return geometric_parameter(params, PMethod::Quadrature, 1e-10, c.seed, c.workers);
  return geometric_parameter(params, PMethod::MonteCarlo, c.p_tol, c.seed, c.workers);
}

std::string render_steps(const RunConfig& c) {
  const Domain domain = build_domain(c.domain);
  const Point& x0 = c.eval_points.front();
  std::ostringstream head, body, js;
  head << provenance(c);
  body << "alpha,n,count,tail,tail_se,geom_tail,dominated\n";
  js << "{\n  \"command\": \"steps\",\n  \"config\": " << c.resolved.dump() << ",\n  \"results\": [";
  for (std::size_t a = 0; a < c.alphas.size(); ++a) {
    const double alpha = c.alphas[a];
    const StableParams params(alpha, c.dim);
    const StepHistogram h = step_statistics(domain, params, x0, c.runs, c.eps_skin, c.seed, c.workers, c.step_cap);
    const GeometricParameter p = p_for_steps(params, c);
    std::uint64_t violations = 0;
    std::vector<double> tails, geoms;
    const std::string a_text = format_double(alpha);
    for (std::uint64_t n = 0; n <= h.max_steps(); ++n) {
      const auto it = h.counts.find(n);
      const std::uint64_t count = it == h.counts.end() ? 0 : it->second;
      const double tail = h.tail(n);
      const double se = h.tail_se(n);
      const double geom = std::pow(1.0 - p.value, static_cast<double>(n));
      const bool dominated = tail <= geom + 4.0 * se;
      if (!dominated) ++violations;
      tails.push_back(tail);
      geoms.push_back(geom);
      body << a_text << "," << n << "," << count << "," << format_double(tail) << "," << format_double(se) << ","
           << format_double(geom) << "," << (dominated ? 1 : 0) << "\n";
    }
    head << "# alpha=" << a_text << ",runs=" << h.runs << ",mean_steps=" << format_double(h.mean_steps)
         << ",mean_se=" << format_double(h.mean_se()) << ",p=" << format_double(p.value)
         << ",inv_p=" << format_double(1.0 / p.value) << ",dominance_violations=" << violations << "\n";
    io::JsonObject obj;
    obj.number("alpha", alpha)
        .integer("runs", h.runs)
        .number("mean_steps", h.mean_steps)
        .number("mean_se", h.mean_se())
        .number("p", p.value)
        .number("inv_p", 1.0 / p.value)
        .integer("dominance_violations", violations)
        .array("tail", tails)
        .array("geom_tail", geoms);
    js << (a ? ",\n    " : "\n    ") << obj.str();
  }
  js << "\n  ]\n}\n";
  if (c.format == "json") return js.str();
  return head.str() + body.str();
}

// ---- pvalue --------------------------------------------------------------

std::string render_pvalue(const RunConfig& c) {
  std::ostringstream os, js;
  os << provenance(c) << "alpha,dim,method,value,error,samples\n";
  js << "{\n  \"command\": \"pvalue\",\n  \"config\": " << c.resolved.dump() << ",\n  \"results\": [";
  for (std::size_t a = 0; a < c.alphas.size(); ++a) {
    const double alpha = c.alphas[a];
    const StableParams params(alpha, c.dim);
    io::JsonObject obj;
    obj.number("alpha", alpha).integer("dim", c.dim);
    const bool quad = c.p_method != "montecarlo" && c.dim == 2;
    const bool mc = c.p_method != "quadrature" || c.dim != 2;
    if (quad) {
      const auto p = geometric_parameter(params, PMethod::Quadrature, 1e-10, c.seed, c.workers);
      obj.number("quadrature", p.value).number("quadrature_error", p.error);
      os << format_double(alpha) << "," << c.dim << ",quadrature," << format_double(p.value) << ","
         << format_double(p.error) << ",0\n";
    } else {
      obj.null("quadrature").null("quadrature_error");
    }
    if (mc) {
      const auto p = geometric_parameter(params, PMethod::MonteCarlo, c.p_tol, c.seed, c.workers);
      obj.number("montecarlo", p.value).number("montecarlo_se", p.error).integer("montecarlo_samples", p.samples);
      os << format_double(alpha) << "," << c.dim << ",montecarlo," << format_double(p.value) << ","
         << format_double(p.error) << "," << p.samples << "\n";
    } else {
      obj.null("montecarlo").null("montecarlo_se").null("montecarlo_samples");
    }
    js << (a ? ",\n    " : "\n    ") << obj.str();
  }
  js << "\n  ]\n}\n";
  return c.format == "json" ? js.str() : os.str();
}

// ---- reference -----------------------------------------------------------

bool is_unit_disc(const Domain& d) {
  const auto* b = std::get_if<BallShape>(&d.shape());
  return b && d.dim() == 2 && b->radius == 1.0 && b->center.norm_sq() == 0.0;
}

// Reference value of u(x) for the configured problem, when one is known.
double reference_value(const ProblemSpec& p, const Point& x, double quad_tol) {
  const auto& g = p.g.kind();
  const double alpha = p.params.alpha();
  if (!p.f) {
    if (const auto* k = std::get_if<ExteriorData::Constant>(&g)) return k->value;
    if (const auto* k = std::get_if<ExteriorData::Green>(&g)) {
      if (p.domain.contains(k->pole)) throw ConfigError("config key 'g.pole': pole lies inside the domain");
      return green_reference(x, k->pole, p.params);
    }
    if (const auto* k = std::get_if<ExteriorData::Gaussian>(&g); k && is_unit_disc(p.domain)) {
      return ball_poisson_reference(x, k->center, p.params, quad_tol);
    }
  } else if (std::holds_alternative<SourceTerm::Dyda>(p.f->kind()) && is_unit_disc(p.domain)) {
    if (const auto* k = std::get_if<ExteriorData::Constant>(&g); k && k->value == 0.0) return dyda_exact(x, alpha);
  }
  throw ConfigError("config: no reference solution is available for this domain, g and f");
}

std::string render_reference(const RunConfig& c) {
  std::ostringstream os, js;
  os << provenance(c) << "alpha," << csv_point_header(c.dim) << ",reference\n";
  js << "{\n  \"command\": \"reference\",\n  \"config\": " << c.resolved.dump() << ",\n  \"results\": [";
  bool first = true;
  for (double alpha : c.alphas) {
    const ProblemSpec problem = build_problem(c, alpha);
    for (const Point& x : c.eval_points) {
      const double v = reference_value(problem, x, c.quad_tol);
      os << format_double(alpha) << "," << io::format_point(x) << "," << format_double(v) << "\n";
      io::JsonObject obj;
      obj.number("alpha", alpha).array("point", x.coords()).number("reference", v);
      js << (first ? "\n    " : ",\n    ") << obj.str();
      first = false;
    }
  }
  js << "\n  ]\n}\n";
  return c.format == "json" ? js.str() : os.str();
}

}  // namespace

std::string render(const RunConfig& config, std::ostream& err, int& status) {
  status = kExitOk;
  switch (config.command) {
    case Command::Solve:
      return render_solve(config, err, status);
    case Command::Path:
      return render_path(config);
    case Command::Steps:
      return render_steps(config);
    case Command::PValue:
      return render_pvalue(config);
    case Command::Reference:
      return render_reference(config);
  }
  return {};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  std::string text;
  try {
    text = render(config, err, status);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const StepCapExceeded& e) {
    err << "error: " << e.what() << " (after " << e.steps() << " steps)\n";
    return kExitNumeric;
  } catch (const ToleranceNotReached& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << config.output << "'\n";
      return kExitValidation;
    }
    file << text;
  }
  return status;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walk-on-spheres solver for the fractional Laplacian"};
  app.require_subcommand(0, 1);

  std::string config_path, builtin, alpha, output, format, method;
  std::vector<std::string> xs;
  std::size_t dim = 0;
  std::uint64_t n = 0, batch = 0, n_min = 0, n_max = 0, seed = 0, n_inner = 0, step_cap = 0, runs = 0, steps = 0;
  double tol = 0.0, eps_skin = 0.0;
  int workers = 0;
  bool no_timing = false;

  auto* o_config = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o_builtin = app.add_option("--builtin", builtin, "preset: green, gaussian, dyda, swisscheese-steps");
  auto* o_alpha = app.add_option("--alpha", alpha, "stability index, or a comma-separated list");
  auto* o_dim = app.add_option("--dim", dim, "dimension");
  auto* o_x = app.add_option("--x", xs, "evaluation point as a,b,...; repeatable");
  auto* o_n = app.add_option("--n", n, "fixed sample count");
  auto* o_tol = app.add_option("--tol", tol,
                               "solve: target standard error; path: sphere radius; pvalue: Monte Carlo "
                               "standard error; reference: quadrature tolerance");
  auto* o_batch = app.add_option("--batch", batch, "adaptive batch size");
  auto* o_n_min = app.add_option("--n-min", n_min, "adaptive minimum sample count");
  auto* o_n_max = app.add_option("--n-max", n_max, "adaptive maximum sample count");
  auto* o_seed = app.add_option("--seed", seed, "random seed (default: $FRACWOS_SEED or 0)");
  auto* o_workers = app.add_option("--workers", workers, "OpenMP worker count")->check(CLI::PositiveNumber);
  auto* o_eps = app.add_option("--eps-skin", eps_skin, "stop walks within this distance of the boundary");
  auto* o_inner = app.add_option("--n-inner", n_inner, "inner draws per source increment");
  auto* o_cap = app.add_option("--step-cap", step_cap, "maximum steps per walk");
  auto* o_runs = app.add_option("--runs", runs, "walks for the step histogram");
  auto* o_steps = app.add_option("--steps", steps, "path length");
  auto* o_method = app.add_option("--method", method, "pvalue method: both, quadrature, montecarlo");
  auto* o_output = app.add_option("--output,-o", output, "output file (default: standard output)");
  auto* o_format = app.add_option("--format", format, "json or csv");
  app.add_flag("--no-timing", no_timing, "write wall_seconds as 0 for byte-identical reruns");

  const std::pair<const char*, const char*> commands[] = {
      {"solve", "estimate u(x) at the evaluation points"},
      {"path", "record the sphere centres of one walk"},
      {"steps", "histogram of walk lengths against the geometric bound"},
      {"pvalue", "escape probability p(alpha, d) by quadrature and Monte Carlo"},
      {"reference", "closed-form or quadrature reference values"}};
  for (const auto& [name, about] : commands) app.add_subcommand(name, about)->fallthrough();

  std::vector<const char*> argv{"fracwos"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  RunConfig config;
  try {
    json doc = json::object();
    if (o_config->count()) {
      std::ifstream in(config_path);
      try {
        doc = json::parse(in, nullptr, true, true);
      } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + config_path + "': " + e.what());
      }
      if (!doc.is_object()) throw ConfigError("config file '" + config_path + "': top level must be an object");
    }
    if (o_builtin->count()) doc["builtin"] = builtin;
    doc = with_preset_defaults(doc);

    for (auto* sub : app.get_subcommands()) doc["command"] = sub->get_name();
    const std::string command = doc.contains("command") && doc["command"].is_string()
                                    ? doc["command"].get<std::string>()
                                    : std::string("solve");

    if (o_alpha->count()) {
      const auto list = parse_list(alpha, "--alpha");
      doc["alpha"] = list.size() == 1 ? json(list.front()) : json(list);
    }
    if (o_dim->count()) doc["dim"] = dim;
    if (o_x->count()) {
      json pts = json::array();
      for (const auto& x : xs) pts.push_back(parse_list(x, "--x"));
      doc["eval_points"] = pts;
    }
    if (o_n->count()) {
      doc["n_samples"] = n;
      if (command == "solve" && !o_tol->count()) doc["tol"] = nullptr;
    }
    if (o_tol->count()) {
      if (command == "path") {
        doc["path_tol"] = tol;
      } else if (command == "pvalue") {
        doc["p_tol"] = tol;
      } else if (command == "reference") {
        doc["quad_tol"] = tol;
      } else {
        doc["tol"] = tol;
      }
    }
    if (o_batch->count()) doc["batch"] = batch;
    if (o_n_min->count()) doc["n_min"] = n_min;
    if (o_n_max->count()) doc["n_max"] = n_max;
    if (o_seed->count()) {
      doc["seed"] = seed;
    } else if (!doc.contains("seed")) {
      if (const char* env = std::getenv("FRACWOS_SEED")) doc["seed"] = parse_seed_env(env);
    }
    if (o_workers->count()) doc["workers"] = workers;
    if (o_eps->count()) doc["eps_skin"] = eps_skin;
    if (o_inner->count()) doc["n_inner"] = n_inner;
    if (o_cap->count()) doc["step_cap"] = step_cap;
    if (o_runs->count()) doc["runs"] = runs;
    if (o_steps->count()) doc["path_steps"] = steps;
    if (o_method->count()) doc["p_method"] = method;
    if (o_output->count()) doc["output"] = output;
    if (o_format->count()) doc["format"] = format;
    if (no_timing) doc["timing"] = false;

    config = parse_config(doc);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return run(config, out, err);
}

}  // namespace fracwos::cli
