// Command implementations behind the diagkill executable. Each command returns
// a Report plus the process exit code: 0 pass, 1 verified negative, 2 error.
#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "diagkill/families.hpp"
#include "diagkill/jobspec.hpp"
#include "diagkill/report.hpp"

namespace diagkill {

enum ExitCode : int { kExitPass = 0, kExitNegative = 1, kExitError = 2 };

struct CommandResult {
  Report report;
  int exit_code = kExitError;
};

/// A worked example shipped with the tool.
struct BundledExample {
  std::string name;
  std::string note;
  std::array<std::string, 3> metric;
  FieldSpec field;
  /// Audited entries are reported but never asserted to pass.
  bool audit = false;
};

std::vector<BundledExample> bundled_examples();

/// The split-family member with a1 = b1 = 1, c = -1 on f = (e^x1, e^x2, 1),
/// using the closed-form primitives F1 = -e^-x1, F2 = -e^-x2.
FrameVectorField split_audit_counterpart();

CommandResult cmd_verify(const JobSpec& spec, const std::optional<nlohmann::json>& field_doc = std::nullopt);
CommandResult cmd_classify(const JobSpec& spec);
/// Exactly one of `params` and `basis` is used; basis emits every unit vector.
CommandResult cmd_generate(const JobSpec& spec, FamilyTag family, const std::optional<std::vector<double>>& params,
                           bool basis);

struct ExamplesOptions {
  Box box;
  std::array<int, 3> grid{5, 5, 5};
  double tol = 1e-7;
};
CommandResult cmd_paper_examples(const ExamplesOptions& opts = {});

struct FlowCheckOptions {
  double t = 0.3;
  int steps = 30;
  double defect_tol = 1e-5;
};
CommandResult cmd_flow_check(const JobSpec& spec, const FlowCheckOptions& opts = {});

/// Full command line (without the program name). Writes the report to `out`
/// (text, or JSON with --json) and diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diagkill
