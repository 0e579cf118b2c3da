#include "diagkill/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diagkill/errors.hpp"

namespace diagkill::expr {

namespace {

constexpr long kMaxCheckpoints = 1L << 20;
constexpr long kMaxEvaluations = 1L << 22;

}  // namespace

Antiderivative::Antiderivative(ScalarField integrand, Axis axis, double base_point, double tolerance,
                               std::string label)
    : integrand_(std::move(integrand)),
      axis_(axis),
      base_(base_point),
      tol_(tolerance),
      label_(std::move(label)) {
  if (integrand_.dependency_mask() & ~axis_bit(axis_)) {
    throw std::invalid_argument("antiderivative integrand must depend on " + axis_name(axis_) + " only");
  }
  if (!(tol_ > 0.0)) throw std::invalid_argument("antiderivative tolerance must be positive");
}

double Antiderivative::integrand_at(double t) const {
  Point p{0.0, 0.0, 0.0};
  p[index(axis_)] = t;
  return eval(integrand_, p);
}

double Antiderivative::integrate(double a, double b) const {
  if (a == b) return 0.0;
  const double eps0 = tol_ * std::min(1.0, std::fabs(b - a));
  long evaluations = 0;
  auto f = [&](double t) {
    if (++evaluations > kMaxEvaluations) throw QuadratureNonConvergence(a, b);
    return integrand_at(t);
  };
  // Recursive adaptive Simpson with Richardson correction.
  auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole,
                 double eps, int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth >= 2 && std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth >= kMaxDepth) throw QuadratureNonConvergence(a, b);
    return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1) +
           self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec(rec, a, b, fa, fm, fb, whole, eps0, 0);
}

double Antiderivative::checkpoint(long j) const {
  if (std::labs(j) > kMaxCheckpoints) throw QuadratureNonConvergence(base_, base_ + j * kLatticeStep);
  std::lock_guard lock(mutex_);
  if (j >= 0) {
    while (static_cast<long>(forward_.size()) <= j) {
      const long k = static_cast<long>(forward_.size());
      const double lo = base_ + (k - 1) * kLatticeStep;
      const double hi = base_ + k * kLatticeStep;
      forward_.push_back(forward_.back() + integrate(lo, hi));
    }
    return forward_[j];
  }
  const long n = -j;
  while (static_cast<long>(backward_.size()) <= n) {
    const long k = static_cast<long>(backward_.size());
    const double lo = base_ - k * kLatticeStep;
    const double hi = base_ - (k - 1) * kLatticeStep;
    backward_.push_back(backward_.back() - integrate(lo, hi));
  }
  return backward_[n];
}

double Antiderivative::value(double t) const {
  if (!std::isfinite(t)) throw QuadratureNonConvergence(base_, t);
  const double cells = (t - base_) / kLatticeStep;
  if (std::fabs(cells) > static_cast<double>(kMaxCheckpoints)) throw QuadratureNonConvergence(base_, t);
  const long j = static_cast<long>(std::floor(cells));
  const double knot = base_ + j * kLatticeStep;
  return checkpoint(j) + integrate(knot, t);
}

std::shared_ptr<const Antiderivative> antiderivative(const ScalarField& integrand, Axis axis,
                                                     double base_point, double tolerance, std::string label) {
  return std::make_shared<const Antiderivative>(integrand, axis, base_point, tolerance, std::move(label));
}

std::shared_ptr<const Antiderivative> antiderivative(const ScalarField& integrand, double base_point,
                                                     double tolerance, std::string label) {
  const unsigned mask = integrand.dependency_mask();
  Axis axis = Axis::X1;
  if (mask == axis_bit(Axis::X2)) axis = Axis::X2;
  if (mask == axis_bit(Axis::X3)) axis = Axis::X3;
  return antiderivative(integrand, axis, base_point, tolerance, std::move(label));
}

ScalarField primitive_field(const ScalarField& integrand, Axis axis, double base_point, double tolerance,
                            std::string label) {
  return ScalarField::univariate(antiderivative(integrand, axis, base_point, tolerance, std::move(label)));
}

// ---------------------------------------------------------------------------

TabulatedFunction::TabulatedFunction(std::string name, Axis axis, std::vector<double> knots,
                                     std::vector<double> values, ScalarField derivative)
    : name_(std::move(name)),
      axis_(axis),
      knots_(std::move(knots)),
      values_(std::move(values)),
      derivative_(std::move(derivative)) {
  const std::size_t n = knots_.size();
  if (n < 2 || values_.size() != n) throw std::invalid_argument("tabulated function needs >= 2 matching knots/values");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw std::invalid_argument("tabulated knots must increase strictly");
  }
  if (derivative_.dependency_mask() & ~axis_bit(axis_)) {
    throw std::invalid_argument("tabulated derivative must depend on " + axis_name(axis_) + " only");
  }
  auto slope_at = [&](double t) {
    Point p{0.0, 0.0, 0.0};
    p[index(axis_)] = t;
    return eval(derivative_, p);
  };
  const double s0 = slope_at(knots_.front());
  const double sn = slope_at(knots_.back());

  // Tridiagonal system for the second derivatives (Thomas algorithm).
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = knots_[i + 1] - knots_[i];
  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
  diag[0] = 2.0 * h[0];
  sup[0] = h[0];
  rhs[0] = 6.0 * ((values_[1] - values_[0]) / h[0] - s0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sub[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * ((values_[i + 1] - values_[i]) / h[i] - (values_[i] - values_[i - 1]) / h[i - 1]);
  }
  sub[n - 1] = h[n - 2];
  diag[n - 1] = 2.0 * h[n - 2];
  rhs[n - 1] = 6.0 * (sn - (values_[n - 1] - values_[n - 2]) / h[n - 2]);
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  second_.assign(n, 0.0);
  second_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) second_[i] = (rhs[i] - sup[i] * second_[i + 1]) / diag[i];
}

double TabulatedFunction::value(double t) const {
  const double lo = knots_.front();
  const double hi = knots_.back();
  const double slack = 1e-12 * (1.0 + std::fabs(hi - lo));
  if (!(t >= lo - slack && t <= hi + slack)) {
    Point p{0.0, 0.0, 0.0};
    p[index(axis_)] = t;
    throw EvalDomainError("tabulated function " + name_ + " evaluated outside its knots", p);
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (i >= knots_.size() - 1) i = knots_.size() - 2;
  const double h = knots_[i + 1] - knots_[i];
  const double a = knots_[i + 1] - t;
  const double b = t - knots_[i];
  return second_[i] * a * a * a / (6.0 * h) + second_[i + 1] * b * b * b / (6.0 * h) +
         (values_[i] / h - second_[i] * h / 6.0) * a + (values_[i + 1] / h - second_[i + 1] * h / 6.0) * b;
}

}  // namespace diagkill::expr
