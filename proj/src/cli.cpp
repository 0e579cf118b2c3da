#include "diagkill/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "diagkill/errors.hpp"
#include "diagkill/field_io.hpp"
#include "diagkill/flow.hpp"
#include "diagkill/killing.hpp"

namespace diagkill {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CommandResult failure(const std::string& command, const std::string& message) {
  CommandResult r;
  r.report.command = command;
  r.report.verdict = "error";
  r.report.error = message;
  r.exit_code = kExitError;
  return r;
}

template <class Fn>
CommandResult guarded(const std::string& command, Fn&& fn) {
  const auto start = Clock::now();
  CommandResult r;
  try {
    r = fn();
  } catch (const CaseNotApplicable& e) {
    r.report = Report{};
    r.report.command = command;
    r.report.verdict = "not_applicable";
    r.report.reason = e.what();
    r.exit_code = kExitNegative;
  } catch (const std::exception& e) {
    r = failure(command, e.what());
  }
  r.report.timing_ms = elapsed_ms(start);
  return r;
}

std::string params_label(FamilyTag tag, const std::vector<double>& values) {
  std::ostringstream o;
  const auto& names = param_names(tag);
  for (std::size_t i = 0; i < values.size(); ++i) o << (i ? "," : "") << names[i] << "=" << values[i];
  return o.str();
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<BundledExample> bundled_examples() {
  // Constant metric with (k1, k2, k3) = (2, 3, 1/2); the field is the rotation
  // written with those constants substituted.
  return {
      {"frame-field-E1",
       "E1 = e^x1 d/dx1 on e^(-2x1) dx1^2 + e^(x2+x3) dx2^2 + e^(x2 x3) dx3^2",
       {"exp(x1)", "exp(-(x2+x3)/2)", "exp(-x2*x3/2)"},
       {FieldBasis::Coordinate, {"exp(x1)", "0", "0"}}},
      {"constant-metric-rotation",
       "k1^2(-k3 x2 + k2 x3) d1 + k2^2(k3 x1 - k1 x3) d2 + k3^2(-k2 x1 + k1 x2) d3, k = (2, 3, 1/2)",
       {"2", "3", "0.5"},
       {FieldBasis::Coordinate, {"4*(-0.5*x2+3*x3)", "9*(0.5*x1-2*x3)", "0.25*(-3*x1+2*x2)"}}},
      {"x1-only-translation",
       "d/dx2 + d/dx3 on e^x1 dx1^2 + e^(2x1) dx2^2 + e^(3x1) dx3^2",
       {"exp(-x1/2)", "exp(-x1)", "exp(-3*x1/2)"},
       {FieldBasis::Coordinate, {"0", "1", "1"}}},
      {"own-axis-exponential",
       "sum e^xi d/dxi on sum e^(-2xi) dxi^2",
       {"exp(x1)", "exp(x2)", "exp(x3)"},
       {FieldBasis::Coordinate, {"exp(x1)", "exp(x2)", "exp(x3)"}}},
      {"split-exponential",
       "printed field e^x1(x3 - e^x2) d1 + e^x2(x3 + e^x1) d2 - (e^x1 + e^x2) d3 on "
       "e^(-2x1) dx1^2 + e^(-2x2) dx2^2 + dx3^2",
       {"exp(x1)", "exp(x2)", "1"},
       {FieldBasis::Coordinate, {"exp(x1)*(x3-exp(x2))", "exp(x2)*(x3+exp(x1))", "-(exp(x1)+exp(x2))"}},
       true},
  };
}

FrameVectorField split_audit_counterpart() {
  const ScalarField F1 = -expr::exp(-expr::x1());
  const ScalarField F2 = -expr::exp(-expr::x2());
  return split_family(F1, F2, 1.0, FamilyParams::make(FamilyTag::SPLIT_X1X2K3, {1, 0, 1, 0, 0, -1}));
}

// ---------------------------------------------------------------------------

CommandResult cmd_verify(const JobSpec& spec, const std::optional<nlohmann::json>& field_doc) {
  return guarded("verify", [&] {
    if (!field_doc && !spec.field) throw SpecError(0, "verify needs a [field] section or a field document");
    const DiagonalMetric m = spec.build_metric();
    const FrameVectorField v = field_doc ? import_field(*field_doc) : spec.build_field(m);
    const Grid grid = spec.sample_grid();
    const GridMaximum frame = max_residual_grid(m, v, grid);
    const GridMaximum coord = max_residual_grid_oracle(m, v, grid);
    CommandResult r;
    r.report.command = "verify";
    r.report.max_residual_frame = frame.value;
    r.report.max_residual_coordinate = coord.value;
    r.report.oracle_gap = oracle_gap(m, v, grid);
    r.report.worst_point = frame.worst;
    const bool ok = frame.value <= spec.tolerances.residual && coord.value <= spec.tolerances.residual;
    r.report.verdict = ok ? "killing" : "not_killing";
    r.exit_code = ok ? kExitPass : kExitNegative;
    return r;
  });
}

CommandResult cmd_classify(const JobSpec& spec) {
  return guarded("classify", [&] {
    const DiagonalMetric m = spec.build_metric();
    ClassifyOptions opts;
    opts.constancy_tol = spec.tolerances.constancy;
    const FamilyDescriptor d = classify(m, opts);
    CommandResult r;
    r.report.command = "classify";
    r.report.verdict = d.tag == FamilyTag::NONE ? "unclassified" : "classified";
    r.report.descriptor = to_string(d.tag);
    for (FamilyTag t : d.applicable) r.report.applicable.push_back(to_string(t));
    r.report.k = d.k;
    if (!d.reason.empty()) r.report.reason = d.reason;
    r.report.family_dimension = family_dimension(d.tag);
    r.report.frame_killing_fields = d.frame_killing_fields;
    r.exit_code = d.tag == FamilyTag::NONE ? kExitNegative : kExitPass;
    return r;
  });
}

CommandResult cmd_generate(const JobSpec& spec, FamilyTag family, const std::optional<std::vector<double>>& params,
                           bool basis) {
  return guarded("generate", [&] {
    if (basis == params.has_value()) throw std::invalid_argument("generate needs exactly one of --params or --basis");
    const DiagonalMetric m = spec.build_metric();
    GenerateOptions opts;
    opts.quadrature_tol = spec.tolerances.quadrature;
    opts.classify.constancy_tol = spec.tolerances.constancy;

    std::vector<FamilyParams> draws;
    if (basis) {
      for (int i = 0; i < family_dimension(family); ++i) draws.push_back(FamilyParams::unit(family, i));
    } else {
      draws.push_back(FamilyParams::make(family, *params));
    }

    CommandResult r;
    r.report.command = "generate";
    r.report.family = to_string(family);
    r.report.family_dimension = family_dimension(family);
    const Grid grid = spec.sample_grid();
    bool all_ok = true;
    for (const auto& p : draws) {
      const FrameVectorField v = generate(m, p, opts);
      GeneratedField g;
      g.label = params_label(family, p.values);
      g.params = p.values;
      g.field = export_field(v, spec.box);
      // Verify what is emitted: the re-imported export, not the in-memory field.
      g.max_residual = max_residual_grid(m, import_field(g.field), grid).value;
      g.verified = g.max_residual <= spec.tolerances.residual;
      all_ok = all_ok && g.verified;
      r.report.fields.push_back(std::move(g));
    }
    r.report.verdict = all_ok ? "generated" : "self_check_failed";
    r.exit_code = all_ok ? kExitPass : kExitNegative;
    return r;
  });
}

CommandResult cmd_paper_examples(const ExamplesOptions& opts) {
  return guarded("paper-examples", [&] {
    const Grid grid{opts.box, opts.grid};
    CommandResult r;
    r.report.command = "paper-examples";
    bool all_ok = true;
    for (const auto& ex : bundled_examples()) {
      JobSpec spec;
      spec.metric = ex.metric;
      spec.field = ex.field;
      spec.box = opts.box;
      const DiagonalMetric m = spec.build_metric();
      const FrameVectorField v = spec.build_field(m);
      const double res = std::max(max_residual_grid(m, v, grid).value, max_residual_grid_oracle(m, v, grid).value);
      const bool pass = res <= opts.tol;
      ExampleResult e;
      e.name = ex.name;
      e.note = ex.note;
      e.max_residual = res;
      if (!ex.audit) {
        e.verdict = pass ? "pass" : "fail";
        all_ok = all_ok && pass;
      } else {
        const FrameVectorField t = split_audit_counterpart();
        const double tres =
            std::max(max_residual_grid(m, t, grid).value, max_residual_grid_oracle(m, t, grid).value);
        const bool tpass = tres <= opts.tol;
        AuditDetail a;
        a.printed_verdict = pass ? "pass" : "fail";
        a.printed_max_residual = res;
        a.family_verdict = tpass ? "pass" : "fail";
        a.family_max_residual = tres;
        if (!pass && tpass) {
          a.note = "printed field violates the Killing system; the family member (x3 - e^-x2, x3 + e^-x1, "
                   "e^-x1 + e^-x2) in frame components passes";
        } else if (pass && tpass) {
          a.note = "both fields pass";
        } else {
          a.note = "family counterpart does not pass at this tolerance";
        }
        e.verdict = "audit";
        e.audit = a;
      }
      r.report.examples.push_back(std::move(e));
    }
    r.report.verdict = all_ok ? "pass" : "fail";
    r.exit_code = all_ok ? kExitPass : kExitNegative;
    return r;
  });
}

CommandResult cmd_flow_check(const JobSpec& spec, const FlowCheckOptions& opts) {
  return guarded("flow-check", [&] {
    if (!spec.field) throw SpecError(0, "flow-check needs a [field] section");
    if (!(opts.defect_tol > 0.0)) throw std::invalid_argument("defect tolerance must be positive");
    const DiagonalMetric m = spec.build_metric();
    const FrameVectorField v = spec.build_field(m);
    std::vector<Point> points = spec.sample_grid().interior_points();
    if (points.empty()) points.push_back(spec.box.center());
    double worst = 0.0;
    Point where = points.front();
    for (const Point& p : points) {
      const double d = isometry_defect(m, v, p, opts.t, opts.steps);
      if (d > worst) {
        worst = d;
        where = p;
      }
    }
    CommandResult r;
    r.report.command = "flow-check";
    r.report.max_isometry_defect = worst;
    r.report.flow_points = static_cast<int>(points.size());
    r.report.worst_point = where;
    const bool ok = worst <= opts.defect_tol;
    r.report.verdict = ok ? "isometry" : "not_isometry";
    r.exit_code = ok ? kExitPass : kExitNegative;
    return r;
  });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": '" + item + "' is not a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument(what + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

struct GlobalFlags {
  std::string grid;
  std::optional<double> tol;
  std::string domain;
  std::optional<double> constancy;
  bool json = false;
};

std::array<int, 3> parse_grid(const std::string& text) {
  const auto v = split_numbers(text, "--grid");
  if (v.size() != 3) throw std::invalid_argument("--grid needs three counts n1,n2,n3");
  std::array<int, 3> g{};
  for (int i = 0; i < 3; ++i) {
    if (v[i] != std::floor(v[i]) || v[i] < 2) throw std::invalid_argument("--grid counts must be integers >= 2");
    g[i] = static_cast<int>(v[i]);
  }
  return g;
}

Box parse_domain(const std::string& text) {
  const auto v = split_numbers(text, "--domain");
  if (v.size() != 2 || !(v[0] < v[1])) throw std::invalid_argument("--domain needs a,b with a < b");
  return Box::cube(v[0], v[1]);
}

void apply_overrides(JobSpec& spec, const GlobalFlags& g) {
  if (!g.grid.empty()) spec.grid = parse_grid(g.grid);
  if (!g.domain.empty()) spec.box = parse_domain(g.domain);
  if (g.tol) spec.tolerances.residual = *g.tol;
  if (g.constancy) spec.tolerances.constancy = *g.constancy;
  spec.validate();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Killing vector fields of diagonal metrics on R^3", "diagkill"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--grid", g.grid, "Sample grid counts n1,n2,n3 (overrides the spec)");
  app.add_option("--tol", g.tol, "Residual tolerance (overrides the spec)");
  app.add_option("--domain", g.domain, "Cube domain a,b (overrides the spec)");
  app.add_option("--constancy", g.constancy, "Relative tolerance of sampled constancy tests");
  app.add_flag("--json", g.json, "Emit the report as JSON");

  std::string spec_path;
  std::string field_path;
  std::string family_name;
  std::string params_text;
  bool basis = false;
  FlowCheckOptions flow;

  auto* verify = app.add_subcommand("verify", "Check the Killing equations on the sample grid");
  verify->add_option("spec", spec_path, "Spec file")->required();
  verify->add_option("--field", field_path, "Field document written by generate --json");

  auto* classify_cmd = app.add_subcommand("classify", "Classify the metric into a solved family");
  classify_cmd->add_option("spec", spec_path, "Spec file")->required();

  auto* generate_cmd = app.add_subcommand("generate", "Generate and self-verify family members");
  generate_cmd->add_option("spec", spec_path, "Spec file")->required();
  generate_cmd->add_option("--family", family_name, "Family tag, e.g. TE1_IV or SPLIT_X1X2K3")->required();
  auto* params_opt = generate_cmd->add_option("--params", params_text, "Comma-separated parameter values");
  auto* basis_opt = generate_cmd->add_flag("--basis", basis, "Emit one field per unit parameter vector");
  params_opt->excludes(basis_opt);

  auto* examples_cmd = app.add_subcommand("paper-examples", "Run the bundled worked examples");

  auto* flow_cmd = app.add_subcommand("flow-check", "Measure the isometry defect of the time-t flow");
  flow_cmd->add_option("spec", spec_path, "Spec file")->required();
  flow_cmd->add_option("--t", flow.t, "Flow time")->capture_default_str();
  flow_cmd->add_option("--steps", flow.steps, "RK4 steps")->capture_default_str()->check(CLI::PositiveNumber);
  flow_cmd->add_option("--defect-tol", flow.defect_tol, "Pass threshold for the defect")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  CommandResult result;
  try {
    if (examples_cmd->parsed()) {
      ExamplesOptions eo;
      if (!g.grid.empty()) eo.grid = parse_grid(g.grid);
      if (!g.domain.empty()) eo.box = parse_domain(g.domain);
      if (g.tol) eo.tol = *g.tol;
      if (!(eo.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
      result = cmd_paper_examples(eo);
    } else {
      JobSpec spec = load_job_spec(spec_path);
      apply_overrides(spec, g);
      if (verify->parsed()) {
        std::optional<nlohmann::json> doc;
        if (!field_path.empty()) {
          std::ifstream in(field_path);
          if (!in) throw SpecError(0, "cannot open '" + field_path + "'");
          nlohmann::json j = nlohmann::json::parse(in);
          // Accept either a bare field document or a generate report (first field).
          if (j.contains("fields")) j = j.at("fields").at(0).at("field");
          doc = j;
        }
        result = cmd_verify(spec, doc);
      } else if (classify_cmd->parsed()) {
        result = cmd_classify(spec);
      } else if (generate_cmd->parsed()) {
        const FamilyTag tag = family_tag_from_string(family_name);
        std::optional<std::vector<double>> params;
        if (!params_text.empty()) params = split_numbers(params_text, "--params");
        result = cmd_generate(spec, tag, params, basis);
      } else {
        result = cmd_flow_check(spec, flow);
      }
    }
  } catch (const std::exception& e) {
    const std::string name = app.get_subcommands().empty() ? "diagkill" : app.get_subcommands().front()->get_name();
    result = failure(name, e.what());
  }

  if (g.json) {
    out << to_json(result.report).dump(2) << "\n";
  } else {
    out << to_text(result.report);
  }
  if (result.exit_code == kExitError && result.report.error) err << "error: " << *result.report.error << "\n";
  return result.exit_code;
}

}  // namespace diagkill
