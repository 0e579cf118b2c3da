// Job spec files: a small TOML subset.
//
//   [metric]      f1, f2, f3 = "DSL"
//   [field]       frame = ["..", "..", ".."]  or  coordinate = [..]
//   [domain]      min = [a, b, c]  max = [..]  grid = [n1, n2, n3]
//   [tolerances]  residual, quadrature, constancy
//
// Supported syntax: comments, [section] headers, key = value with basic or
// literal strings, numbers, and arrays (which may span lines).
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "diagkill/errors.hpp"
#include "diagkill/geometry.hpp"
#include "diagkill/metric.hpp"

namespace diagkill {

class SpecError : public Error {
 public:
  SpecError(int line, const std::string& message);
  int line() const { return line_; }  // 0 when not tied to a line

 private:
  int line_;
};

enum class FieldBasis { Frame, Coordinate };

struct FieldSpec {
  FieldBasis basis = FieldBasis::Frame;
  std::array<std::string, 3> components;
};

struct Tolerances {
  double residual = 1e-7;
  double quadrature = 1e-10;
  double constancy = 1e-8;
};

struct JobSpec {
  std::array<std::string, 3> metric{"1", "1", "1"};
  std::optional<FieldSpec> field;
  Box box;
  std::array<int, 3> grid{5, 5, 5};
  Tolerances tolerances;

  /// min < max componentwise, grid counts >= 2, tolerances > 0. Throws SpecError.
  void validate() const;

  Grid sample_grid() const { return Grid{box, grid}; }
  DiagonalMetric build_metric() const;
  /// Frame components; coordinate input is divided by the frame scales.
  FrameVectorField build_field(const DiagonalMetric& m) const;
};

JobSpec parse_job_spec(std::string_view text);
JobSpec load_job_spec(const std::filesystem::path& path);

}  // namespace diagkill
