#include "berger/cli.hpp"

#include "berger/comparison.hpp"
#include "berger/deformation.hpp"
#include "berger/errors.hpp"
#include "berger/harmonic.hpp"
#include "berger/manifest.hpp"
#include "berger/para_norden.hpp"
#include "berger/sampling.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace berger {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string manifest;
  int samples = 200;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  double abs_tol = 1e-7;
  double rel_tol = 1e-6;
  std::string formula = "all";
  std::string direction;
  std::vector<double> point;
  bool json = false;
  bool force = false;
};

// Adding +0.0 turns -0 into 0.
Eigen::MatrixXd plain_zero(const Eigen::MatrixXd& m) { return (m.array() + 0.0).matrix(); }

Json to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i) + 0.0);
  return a;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

std::string point_text(const Eigen::VectorXd& p) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << std::setprecision(6) << p(i) + 0.0;
  os << ')';
  return os.str();
}

Json result_json(const FormulaComparison& c, bool with_values) {
  Json r;
  r["formula"] = c.formula;
  r["max_abs"] = c.max_abs;
  r["max_rel"] = c.max_rel;
  r["worst_point"] = to_json(c.worst_point);
  r["pass"] = c.pass;
  r["mean_abs"] = c.mean_abs;
  r["mean_rel"] = c.mean_rel;
  r["evaluations"] = c.evaluations;
  r["failures"] = c.failures;
  if (with_values) {
    r["closed"] = to_json(c.closed);
    r["oracle"] = to_json(c.oracle);
  }
  return r;
}

Json residual_json(const Residual& r) {
  Json j;
  j["formula"] = r.name;
  j["max_abs"] = r.value;
  j["max_rel"] = r.value;
  j["worst_point"] = to_json(r.worst_point);
  j["pass"] = r.pass;
  j["applicable"] = r.applicable;
  return j;
}

Json header(const std::string& spec, const std::string& command, const Options& o) {
  Json doc;
  doc["spec"] = spec;
  doc["command"] = command;
  doc["samples"] = o.samples;
  doc["seed"] = o.seed;
  doc["forced"] = o.force;
  return doc;
}

void print_forced(std::ostream& out, const Options& o) {
  if (o.force) out << "FORCED: structural hypotheses not enforced\n";
}

std::vector<Eigen::VectorXd> samples_for(const ManifoldSpec& spec, const Options& o) {
  if (o.samples < 1) throw UsageError("--samples must be positive");
  return sample_points(spec.domain, o.samples, o.seed);
}

void gate(const ManifoldSpec& spec, const std::vector<Eigen::VectorXd>& points, const Options& o) {
  if (o.force) return;
  ValidationOptions vo;
  vo.seed = o.seed;
  require_valid(validate(spec, points, vo), false);
}

int print_comparisons(const std::string& spec, const std::string& command, const Options& o,
                      const std::vector<FormulaComparison>& results, bool with_values, std::ostream& out,
                      Json doc = {}) {
  const bool pass = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  if (o.json) {
    if (doc.is_null()) doc = header(spec, command, o);
    doc["abs_tol"] = o.abs_tol;
    doc["rel_tol"] = o.rel_tol;
    doc["results"] = Json::array();
    for (const auto& r : results) doc["results"].push_back(result_json(r, with_values));
    doc["pass"] = pass;
    out << doc.dump(2) << '\n';
    return pass ? 0 : 1;
  }
  out << command << ' ' << spec << ": " << o.samples << " samples, seed " << o.seed << ", abs " << sci(o.abs_tol)
      << ", rel " << sci(o.rel_tol) << '\n';
  print_forced(out, o);
  for (const auto& r : results) {
    out << "  " << std::left << std::setw(27) << r.formula << " max_abs " << sci(r.max_abs) << "  max_rel "
        << sci(r.max_rel) << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
    if (!r.pass || with_values) {
      out << "      at " << point_text(r.worst_point) << '\n';
      if (with_values) {
        out << "      closed " << plain_zero(r.closed.transpose()) << '\n';
        out << "      oracle " << plain_zero(r.oracle.transpose()) << '\n';
      }
    }
  }
  out << (pass ? "all formulas agree\n" : "some formulas disagree\n");
  return pass ? 0 : 1;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const ManifoldSpec spec = load_manifold(o.manifest);
  const auto points = samples_for(spec, o);
  ValidationOptions vo;
  vo.tolerance = o.tol;
  vo.seed = o.seed;
  const ValidationReport report = validate(spec, points, vo);
  if (o.json) {
    Json doc = header(spec.name, "validate", o);
    doc["tolerance"] = o.tol;
    doc["results"] = Json::array();
    for (const auto& r : report.residuals) doc["results"].push_back(residual_json(r));
    doc["pass"] = report.passed();
    out << doc.dump(2) << '\n';
  } else {
    out << "validate " << spec.name << ": " << points.size() << " samples, tol " << sci(o.tol) << '\n';
    for (const auto& r : report.residuals) {
      out << "  " << std::left << std::setw(26) << r.name << ' ';
      if (!r.applicable)
        out << "n/a        " << (r.pass ? "SKIP" : "FAIL") << '\n';
      else
        out << sci(r.value) << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
    }
    out << (report.passed() ? "all checks pass\n" : "validation failed\n");
  }
  return report.passed() ? 0 : 1;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const ManifoldSpec spec = load_manifold(o.manifest);
  std::vector<std::string> formulas;
  if (o.formula == "all")
    formulas = formula_ids();
  else if (is_formula_id(o.formula))
    formulas = {o.formula};
  else
    throw UsageError("unknown formula '" + o.formula + "'");
  const auto points = samples_for(spec, o);
  gate(spec, points, o);
  ComparisonOptions co;
  co.abs_tol = o.abs_tol;
  co.rel_tol = o.rel_tol;
  co.seed = o.seed;
  std::vector<FormulaComparison> results;
  for (const auto& f : formulas) results.push_back(compare(f, spec, points, co));
  return print_comparisons(spec.name, "compare", o, results, false, out);
}

int cmd_report(const Options& o, std::ostream& out) {
  const ManifoldSpec spec = load_manifold(o.manifest);
  if (static_cast<int>(o.point.size()) != spec.dimension)
    throw UsageError("--point needs " + std::to_string(spec.dimension) + " coordinates");
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(o.point.data(), spec.dimension);
  if (!spec.domain.contains(p)) throw UsageError("--point " + point_text(p) + " lies outside the chart domain");
  gate(spec, samples_for(spec, o), o);
  const DeformationContext ctx = make_context(spec, p);
  ComparisonOptions co;
  co.abs_tol = o.abs_tol;
  co.rel_tol = o.rel_tol;
  co.seed = o.seed;
  std::vector<FormulaComparison> results;
  for (const auto& f : formula_ids()) results.push_back(compare(f, spec, {p}, co));
  Options one = o;
  one.samples = 1;
  Json doc;
  if (o.json) {
    doc = header(spec.name, "report", one);
    doc["point"] = to_json(p);
    doc["alpha"] = ctx.alpha;
    doc["grad_alpha"] = to_json(ctx.grad);
    const Eigen::MatrixXd ga = deformed_metric_components(ctx);
    doc["deformed_metric"] = to_json(Eigen::Map<const Eigen::VectorXd>(ga.data(), ga.size()));
  } else {
    out << "point " << point_text(p) << "  alpha " << ctx.alpha << "  grad alpha " << plain_zero(ctx.grad.transpose()) << '\n';
    out << "deformed metric\n" << plain_zero(deformed_metric_components(ctx)) << '\n';
  }
  return print_comparisons(spec.name, "report", one, results, true, out, doc);
}

int cmd_identity(const Options& o, bool bitension, std::ostream& out) {
  const ManifoldSpec spec = load_manifold(o.manifest);
  const Direction d = parse_direction(o.direction);
  const auto points = samples_for(spec, o);
  gate(spec, points, o);
  const std::string dir(to_string(d));
  Json doc = header(spec.name, bitension ? "biharmonic" : "harmonic", o);
  doc["direction"] = dir;
  doc["tolerance"] = o.tol;
  auto entry = [](const std::string& name, double v, const Eigen::VectorXd& at, bool pass) {
    Json r;
    r["formula"] = name;
    r["max_abs"] = v;
    r["max_rel"] = v;
    r["worst_point"] = to_json(at);
    r["pass"] = pass;
    return r;
  };
  std::string note;
  if (!bitension) {
    const HarmonicResult h = is_harmonic(spec, d, points, o.tol);
    note = h.note;
    doc["classification"] = h.harmonic ? "harmonic" : "not-harmonic";
    doc["note"] = note;
    doc["results"] = Json::array({entry("tension-" + dir, h.residual, h.worst_point, h.harmonic)});
    if (!o.json) {
      out << note << '\n';
      print_forced(out, o);
      out << "  identity " << dir << " on " << spec.name << ", " << points.size() << " samples, max |tau| "
          << sci(h.residual) << " at " << point_text(h.worst_point) << '\n';
    }
  } else {
    const BiharmonicResult b = classify(spec, d, points, o.tol);
    note = b.note;
    doc["classification"] = std::string(to_string(b.classification));
    doc["note"] = note;
    doc["results"] = Json::array({entry("tension-" + dir, b.tension_residual, b.tension_worst_point,
                                        b.tension_residual <= o.tol),
                                  entry("bitension-" + dir, b.bitension_residual, b.bitension_worst_point,
                                        b.bitension_residual <= o.tol)});
    if (!o.json) {
      out << note << '\n';
      print_forced(out, o);
      out << "  identity " << dir << " on " << spec.name << ", " << points.size() << " samples\n";
      out << "  max |tau|   " << sci(b.tension_residual) << " at " << point_text(b.tension_worst_point) << '\n';
      out << "  max |tau_2| " << sci(b.bitension_residual) << " at " << point_text(b.bitension_worst_point) << '\n';
    }
  }
  if (o.json) out << doc.dump(2) << '\n';
  return 0;
}

int cmd_map_tension(const Options& o, std::ostream& out) {
  const MapSpec map = load_map(o.manifest);
  const auto points = samples_for(*map.source, o);
  if (map.deformed == DeformedSide::Target)
    gate(*map.target, samples_for(*map.target, o), o);
  else if (map.deformed == DeformedSide::Source)
    gate(*map.source, points, o);
  ComparisonOptions co;
  co.abs_tol = o.abs_tol;
  co.rel_tol = o.rel_tol;
  co.seed = o.seed;
  const std::string name = map.source->name + " -> " + map.target->name;
  return print_comparisons(name, "map-tension", o, {compare_map(map, points, co)}, false, out);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Berger-type deformation checker", "berger"};
  app.require_subcommand(1);
  Options o;

  auto add_manifest = [&](CLI::App* sub, const char* what) {
    sub->add_option("manifest", o.manifest, what)->required();
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "Sample points (default 200)");
    sub->add_option("--seed", o.seed, "Random seed (default 42)");
  };
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--abs", o.abs_tol, "Absolute tolerance (default 1e-7)");
    sub->add_option("--rel", o.rel_tol, "Relative tolerance (default 1e-6)");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_flag("--force", o.force, "Run even if the chart fails validation");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the structural hypotheses");
  add_manifest(validate_cmd, "Manifold manifest or built-in name");
  add_sampling(validate_cmd);
  validate_cmd->add_option("--tol", o.tol, "Residual tolerance (default 1e-9)");
  validate_cmd->add_flag("--json", o.json, "Machine-readable output");

  auto* report_cmd = app.add_subcommand("report", "Closed forms and oracle side by side at one point");
  add_manifest(report_cmd, "Manifold manifest or built-in name");
  report_cmd->add_option("--point", o.point, "Coordinates v1,...,v2m")->required()->delimiter(',');
  add_sampling(report_cmd);
  add_tolerances(report_cmd);
  add_common(report_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "Closed forms vs oracle over samples");
  add_manifest(compare_cmd, "Manifold manifest or built-in name");
  compare_cmd->add_option("--formula", o.formula, "Formula id or 'all'");
  add_sampling(compare_cmd);
  add_tolerances(compare_cmd);
  add_common(compare_cmd);

  auto* harmonic_cmd = app.add_subcommand("harmonic", "Harmonicity of the identity");
  auto* biharmonic_cmd = app.add_subcommand("biharmonic", "Biharmonicity of the identity");
  for (auto* sub : {harmonic_cmd, biharmonic_cmd}) {
    add_manifest(sub, "Manifold manifest or built-in name");
    sub->add_option("--direction", o.direction, "to-deformed or from-deformed")
        ->required()
        ->check(CLI::IsMember({"to-deformed", "from-deformed"}));
    sub->add_option("--tol", o.tol, "Residual tolerance (default 1e-9)");
    add_sampling(sub);
    add_common(sub);
  }

  auto* map_cmd = app.add_subcommand("map-tension", "General-map tension closed form vs oracle");
  add_manifest(map_cmd, "Map manifest");
  add_sampling(map_cmd);
  add_tolerances(map_cmd);
  add_common(map_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (report_cmd->parsed()) return cmd_report(o, out);
    if (compare_cmd->parsed()) return cmd_compare(o, out);
    if (harmonic_cmd->parsed()) return cmd_identity(o, false, out);
    if (biharmonic_cmd->parsed()) return cmd_identity(o, true, out);
    if (map_cmd->parsed()) return cmd_map_tension(o, out);
  } catch (const HypothesisError& e) {
    err << "refused: " << e.what() << '\n';
    return 1;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace berger
