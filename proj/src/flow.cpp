#include "diagkill/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "diagkill/errors.hpp"

namespace diagkill {

namespace {

class Integrator {
 public:
  Integrator(const DiagonalMetric& m, const FrameVectorField& v) : box_(m.domain()), w_(frame_to_coordinate(v, m)) {}

  Point run(Point x, double t, int steps) const {
    if (steps < 1) throw std::invalid_argument("flow needs at least one step");
    const double h = t / steps;
    check(x, 0.0);
    for (int n = 0; n < steps; ++n) {
      const double s = n * h;
      const Point k1 = field(x, s);
      const Point k2 = field(axpy(x, 0.5 * h, k1), s + 0.5 * h);
      const Point k3 = field(axpy(x, 0.5 * h, k2), s + 0.5 * h);
      const Point k4 = field(axpy(x, h, k3), s + h);
      for (int i = 0; i < 3; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      check(x, s + h);
    }
    return x;
  }

 private:
  static Point axpy(const Point& x, double a, const Point& y) {
    return {x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
  }

  void check(const Point& x, double time) const {
    if (!box_.contains(x)) throw TrajectoryLeftDomain(x, time);
  }

  Point field(const Point& x, double time) const {
    check(x, time);
    return {expr::eval(w_[0], x), expr::eval(w_[1], x), expr::eval(w_[2], x)};
  }

  Box box_;
  CoordinateVectorField w_;
};

}  // namespace

Point flow_point(const DiagonalMetric& m, const FrameVectorField& v, const Point& p, double t, int steps) {
  return Integrator(m, v).run(p, t, steps);
}

FlowResult flow_map(const DiagonalMetric& m, const FrameVectorField& v, const Point& p, double t, int steps) {
  const Integrator integ(m, v);
  FlowResult r;
  r.steps = steps;
  r.step_size = steps > 0 ? t / steps : 0.0;
  r.endpoint = integ.run(p, t, steps);
  for (int j = 0; j < 3; ++j) {
    Point plus = p, minus = p;
    plus[j] += kFlowJacobianOffset;
    minus[j] -= kFlowJacobianOffset;
    const double span = plus[j] - minus[j];
    const Point a = integ.run(plus, t, steps);
    const Point b = integ.run(minus, t, steps);
    for (int i = 0; i < 3; ++i) r.jacobian(i, j) = (a[i] - b[i]) / span;
  }
  return r;
}

double isometry_defect(const DiagonalMetric& m, const FrameVectorField& v, const Point& p, double t, int steps) {
  const FlowResult r = flow_map(m, v, p, t, steps);
  const Eigen::Matrix3d pulled = r.jacobian.transpose() * m.metric_tensor_at(r.endpoint) * r.jacobian;
  return (pulled - m.metric_tensor_at(p)).cwiseAbs().maxCoeff();
}

}  // namespace diagkill
