// One-variable functions that live inside expression trees: quadrature-backed
// primitives and tabulated cubic splines.
#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "diagkill/expr.hpp"

namespace diagkill::expr {

/// F(t) = integral of the integrand from base_point to t, by adaptive Simpson.
///
/// Values are assembled from a fixed lattice of checkpoints (spacing 1/32 from
/// the base point) plus one partial cell, so value(t) is a pure function of t no
/// matter in which order points are requested. Checkpoints are cached behind a
/// mutex; the object is safe to share between threads.
class Antiderivative final : public UnivariateFunction {
 public:
  static constexpr double kLatticeStep = 1.0 / 32.0;
  static constexpr int kMaxDepth = 40;

  /// The integrand may depend on `axis` only. Throws std::invalid_argument otherwise.
  Antiderivative(ScalarField integrand, Axis axis, double base_point = 0.0, double tolerance = 1e-10,
                 std::string label = "F");

  Axis axis() const override { return axis_; }
  double value(double t) const override;
  ScalarField derivative() const override { return integrand_; }
  std::string label() const override { return label_; }

  const ScalarField& integrand() const { return integrand_; }
  double base_point() const { return base_; }
  double tolerance() const { return tol_; }

 private:
  double integrand_at(double t) const;
  double integrate(double a, double b) const;
  double checkpoint(long j) const;

  ScalarField integrand_;
  Axis axis_;
  double base_;
  double tol_;
  std::string label_;
  mutable std::mutex mutex_;
  mutable std::vector<double> forward_{0.0};   // C(0), C(1), ...
  mutable std::vector<double> backward_{0.0};  // C(0), C(-1), ...
};

/// Infers the axis from the integrand's single variable (x1 for a constant integrand).
std::shared_ptr<const Antiderivative> antiderivative(const ScalarField& integrand, double base_point = 0.0,
                                                     double tolerance = 1e-10, std::string label = "F");
std::shared_ptr<const Antiderivative> antiderivative(const ScalarField& integrand, Axis axis,
                                                     double base_point = 0.0, double tolerance = 1e-10,
                                                     std::string label = "F");

/// Wraps a primitive into an expression leaf.
ScalarField primitive_field(const ScalarField& integrand, Axis axis, double base_point = 0.0,
                            double tolerance = 1e-10, std::string label = "F");

/// Complete (clamped) cubic spline through tabulated values, with end slopes taken
/// from the exact derivative. Evaluation outside the knot range is a domain error.
class TabulatedFunction final : public UnivariateFunction {
 public:
  TabulatedFunction(std::string name, Axis axis, std::vector<double> knots, std::vector<double> values,
                    ScalarField derivative);

  Axis axis() const override { return axis_; }
  double value(double t) const override;
  ScalarField derivative() const override { return derivative_; }
  std::string label() const override { return name_; }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::string name_;
  Axis axis_;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> second_;  // spline second derivatives at the knots
  ScalarField derivative_;
};

}  // namespace diagkill::expr
