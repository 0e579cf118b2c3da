// Diagonal metrics g = sum_i (1/f_i^2) dx^i (x) dx^i on R^3, their orthonormal
// frame E_i = f_i d/dx^i, and the Levi-Civita connection written in that frame.
//
// The toolkit stores the frame scales f_i, not g_ii; convert with f_i = 1/sqrt(g_ii).
#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "diagkill/expr.hpp"
#include "diagkill/geometry.hpp"

namespace diagkill {

using expr::ScalarField;

/// Components V^k of V = sum_k V^k E_k with respect to the orthonormal frame.
struct FrameVectorField {
  std::array<ScalarField, 3> components;

  const ScalarField& operator[](int k) const { return components[k]; }
  ScalarField& operator[](int k) { return components[k]; }

  static FrameVectorField zero() { return {}; }
  static FrameVectorField parse(const std::array<std::string, 3>& text, const expr::SymbolTable& symbols = {});
};

/// Components W^k of V = sum_k W^k d/dx^k.
struct CoordinateVectorField {
  std::array<ScalarField, 3> components;

  const ScalarField& operator[](int k) const { return components[k]; }
  ScalarField& operator[](int k) { return components[k]; }

  static CoordinateVectorField parse(const std::array<std::string, 3>& text,
                                     const expr::SymbolTable& symbols = {});
};

FrameVectorField operator+(const FrameVectorField& a, const FrameVectorField& b);
FrameVectorField operator-(const FrameVectorField& a, const FrameVectorField& b);
FrameVectorField operator*(double s, const FrameVectorField& v);

class DiagonalMetric {
 public:
  static constexpr int kValidationSamples = 9;

  /// Validates that every f_i is finite and nonzero on a 9x9x9 grid of `box`.
  /// Throws ZeroLameCoefficient, EvalDomainError, or std::invalid_argument for a degenerate box.
  DiagonalMetric(ScalarField f1, ScalarField f2, ScalarField f3, Box box = Box{});

  static DiagonalMetric parse(const std::string& f1, const std::string& f2, const std::string& f3,
                              Box box = Box{});

  /// The frame scale f_i, i in {0,1,2}.
  const ScalarField& lame(int i) const { return f_[i]; }
  const std::array<ScalarField, 3>& lame() const { return f_; }
  const Box& domain() const { return box_; }

  /// g_ii = 1/f_i^2 at p.
  Eigen::Vector3d diagonal_at(const Point& p) const;
  Eigen::Matrix3d metric_tensor_at(const Point& p) const;

 private:
  std::array<ScalarField, 3> f_;
  Box box_;
};

/// f_ij = (f_j / f_i) * d f_i / dx^j for i != j (zero-based indices).
class FrameCoefficients {
 public:
  explicit FrameCoefficients(const DiagonalMetric& m);

  const ScalarField& at(int i, int j) const { return c_[i][j]; }

  const ScalarField& f12() const { return c_[0][1]; }
  const ScalarField& f13() const { return c_[0][2]; }
  const ScalarField& f21() const { return c_[1][0]; }
  const ScalarField& f23() const { return c_[1][2]; }
  const ScalarField& f31() const { return c_[2][0]; }
  const ScalarField& f32() const { return c_[2][1]; }

 private:
  std::array<std::array<ScalarField, 3>, 3> c_;  // diagonal entries are 0
};

FrameCoefficients frame_coefficients(const DiagonalMetric& m);

/// nabla_{E_i} E_j = sum_k coefficient(i, j, k) E_k:
///   nabla_{E_i} E_i = sum_{k != i} f_ik E_k,   nabla_{E_i} E_j = -f_ij E_i  (i != j).
class ConnectionTable {
 public:
  explicit ConnectionTable(const FrameCoefficients& fc);

  const ScalarField& coefficient(int i, int j, int k) const { return c_[i][j][k]; }

 private:
  std::array<std::array<std::array<ScalarField, 3>, 3>, 3> c_;
};

ConnectionTable connection(const DiagonalMetric& m);

/// W^k = f_k V^k.
CoordinateVectorField frame_to_coordinate(const FrameVectorField& v, const DiagonalMetric& m);
/// V^k = W^k / f_k.
FrameVectorField coordinate_to_frame(const CoordinateVectorField& w, const DiagonalMetric& m);

}  // namespace diagkill
