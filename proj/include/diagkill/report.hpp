// Command reports. JSON keys appear in a fixed order; absent optionals and
// empty lists are omitted. timing_ms is the only nondeterministic field.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "diagkill/geometry.hpp"

namespace diagkill {

struct AuditDetail {
  std::string printed_verdict;
  double printed_max_residual = 0.0;
  std::string family_verdict;
  double family_max_residual = 0.0;
  std::string note;

  bool operator==(const AuditDetail&) const = default;
};

struct ExampleResult {
  std::string name;
  std::string verdict;  // "pass", "fail" or "audit"
  double max_residual = 0.0;
  std::string note;
  std::optional<AuditDetail> audit;

  bool operator==(const ExampleResult&) const = default;
};

struct GeneratedField {
  std::string label;
  std::vector<double> params;
  nlohmann::ordered_json field;  // export_field document
  double max_residual = 0.0;
  bool verified = false;

  bool operator==(const GeneratedField&) const = default;
};

struct Report {
  std::string command;
  std::string verdict;
  std::optional<double> max_residual_frame;
  std::optional<double> max_residual_coordinate;
  std::optional<double> oracle_gap;
  std::optional<Point> worst_point;
  std::optional<std::string> descriptor;
  std::vector<std::string> applicable;
  std::optional<double> k;
  std::optional<std::string> reason;
  std::optional<int> family_dimension;
  std::optional<std::vector<int>> frame_killing_fields;
  std::optional<std::string> family;
  std::vector<GeneratedField> fields;
  std::optional<double> max_isometry_defect;
  std::optional<int> flow_points;
  std::vector<ExampleResult> examples;
  std::optional<std::string> error;
  double timing_ms = 0.0;

  bool operator==(const Report&) const = default;
};

nlohmann::ordered_json to_json(const Report& r);
/// Inverse of to_json. Throws nlohmann::json::exception on malformed input.
Report report_from_json(const nlohmann::ordered_json& j);

/// Human-readable rendering, one fact per line.
std::string to_text(const Report& r);

}  // namespace diagkill
