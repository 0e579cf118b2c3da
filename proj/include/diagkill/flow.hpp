// Flow of a vector field and the isometry defect of its time-t map.
#pragma once

#include <Eigen/Core>

#include "diagkill/geometry.hpp"
#include "diagkill/metric.hpp"

namespace diagkill {

struct FlowResult {
  Point endpoint{0.0, 0.0, 0.0};
  Eigen::Matrix3d jacobian = Eigen::Matrix3d::Identity();
  int steps = 0;
  double step_size = 0.0;
};

/// Central-difference offset for the jacobian.
inline constexpr double kFlowJacobianOffset = 1e-5;

/// RK4 on dx/dt = W(x), W^k = f_k V^k. The jacobian divides each column by the
/// actual difference of the perturbed starting coordinates, so it is exactly
/// the identity at t = 0. Every stage point must lie in m.domain(); otherwise
/// TrajectoryLeftDomain. steps >= 1.
FlowResult flow_map(const DiagonalMetric& m, const FrameVectorField& v, const Point& p, double t, int steps);

/// Endpoint only; no jacobian trajectories.
Point flow_point(const DiagonalMetric& m, const FrameVectorField& v, const Point& p, double t, int steps);

/// max |J^T G(phi_t(p)) J - G(p)| entrywise.
double isometry_defect(const DiagonalMetric& m, const FrameVectorField& v, const Point& p, double t, int steps);

}  // namespace diagkill
