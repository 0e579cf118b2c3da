// Killing equations for a field V = sum_k V^k E_k on a diagonal metric.
//
// Two independent evaluators produce the same six numbers, ordered
// (11, 22, 33, 12, 23, 31):
//   * FrameResidual evaluates the frame system directly from V^k, E_i(V^k) and the
//     frame coefficients f_ij;
//   * CoordinateResidual computes (L_V g)(d_i, d_j) = W^k d_k g_ij + g_kj d_i W^k
//     + g_ik d_j W^k from coordinate components and metric partials, then rescales
//     by f_i f_j.
// Diagonal entries carry a factor 1/2, so r_ii = (L_V g)(E_i, E_i) / 2 and
// r_ij = (L_V g)(E_i, E_j) for i != j.
#pragma once

#include <array>

#include "diagkill/geometry.hpp"
#include "diagkill/metric.hpp"

namespace diagkill {

struct KillingResidual {
  double r11 = 0.0;
  double r22 = 0.0;
  double r33 = 0.0;
  double r12 = 0.0;
  double r23 = 0.0;
  double r31 = 0.0;

  std::array<double, 6> values() const { return {r11, r22, r33, r12, r23, r31}; }
  /// Symmetric entry (i, j), zero-based.
  double at(int i, int j) const;
  double max_abs() const;
};

/// Frame-form evaluator with all derivative trees prepared once.
class FrameResidual {
 public:
  FrameResidual(const DiagonalMetric& m, const FrameVectorField& v);
  KillingResidual at(const Point& p) const;

 private:
  std::array<ScalarField, 3> f_;
  std::array<ScalarField, 3> v_;
  std::array<std::array<ScalarField, 3>, 3> dv_;  // dv_[k][j] = dV^k/dx^j
  FrameCoefficients fc_;
};

/// Coordinate-form oracle, structurally independent of FrameResidual.
class CoordinateResidual {
 public:
  CoordinateResidual(const DiagonalMetric& m, const FrameVectorField& v);
  KillingResidual at(const Point& p) const;

 private:
  std::array<ScalarField, 3> f_;
  std::array<ScalarField, 3> w_;                  // coordinate components
  std::array<std::array<ScalarField, 3>, 3> dw_;  // dw_[k][j] = dW^k/dx^j
  std::array<ScalarField, 3> g_;                  // g_ii = f_i^-2
  std::array<std::array<ScalarField, 3>, 3> dg_;  // dg_[i][k] = d g_ii / dx^k
};

KillingResidual residual_frame(const DiagonalMetric& m, const FrameVectorField& v, const Point& p);
KillingResidual residual_coordinate_oracle(const DiagonalMetric& m, const FrameVectorField& v, const Point& p);

struct GridMaximum {
  double value = 0.0;
  Point worst{0.0, 0.0, 0.0};
};

/// Max over grid points of KillingResidual::max_abs. Throws EvalDomainError
/// (carrying the offending point) if a component cannot be evaluated.
GridMaximum max_residual_grid(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid);
GridMaximum max_residual_grid_oracle(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid);

/// Largest entrywise difference between the two evaluators over the grid.
double oracle_gap(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid);

/// max_residual_grid <= tol. Requires tol > 0.
bool is_killing(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid, double tol);

/// Frame components of [V, W], computed through coordinate components.
FrameVectorField lie_bracket(const DiagonalMetric& m, const FrameVectorField& v, const FrameVectorField& w);

}  // namespace diagkill
