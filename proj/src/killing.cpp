#include "diagkill/killing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diagkill {

using expr::diff;
using expr::eval;

double KillingResidual::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return i == 0 ? r11 : (i == 1 ? r22 : r33);
  if (i == 0 && j == 1) return r12;
  if (i == 1 && j == 2) return r23;
  return r31;
}

double KillingResidual::max_abs() const {
  double m = 0.0;
  for (double r : values()) m = std::max(m, std::fabs(r));
  return m;
}

// ---------------------------------------------------------------------------

FrameResidual::FrameResidual(const DiagonalMetric& m, const FrameVectorField& v)
    : f_(m.lame()), v_(v.components), fc_(m) {
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) dv_[k][j] = diff(v_[k], axis_from_index(j));
  }
}

KillingResidual FrameResidual::at(const Point& p) const {
  std::array<double, 3> f{}, v{};
  std::array<std::array<double, 3>, 3> dv{}, c{};
  for (int k = 0; k < 3; ++k) {
    f[k] = eval(f_[k], p);
    v[k] = eval(v_[k], p);
    for (int j = 0; j < 3; ++j) {
      dv[k][j] = eval(dv_[k][j], p);
      c[k][j] = k == j ? 0.0 : eval(fc_.at(k, j), p);
    }
  }
  // E_i(V^k) = f_i dV^k/dx^i
  auto E = [&](int i, int k) { return f[i] * dv[k][i]; };
  KillingResidual r;
  r.r11 = E(0, 0) - c[0][1] * v[1] - c[0][2] * v[2];
  r.r22 = E(1, 1) - c[1][0] * v[0] - c[1][2] * v[2];
  r.r33 = E(2, 2) - c[2][0] * v[0] - c[2][1] * v[1];
  r.r12 = E(0, 1) + E(1, 0) + c[0][1] * v[0] + c[1][0] * v[1];
  r.r23 = E(1, 2) + E(2, 1) + c[1][2] * v[1] + c[2][1] * v[2];
  r.r31 = E(2, 0) + E(0, 2) + c[2][0] * v[2] + c[0][2] * v[0];
  return r;
}

// ---------------------------------------------------------------------------

CoordinateResidual::CoordinateResidual(const DiagonalMetric& m, const FrameVectorField& v) : f_(m.lame()) {
  for (int k = 0; k < 3; ++k) {
    w_[k] = f_[k] * v[k];
    g_[k] = expr::pow(f_[k], -2.0);
  }
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      dw_[k][j] = diff(w_[k], axis_from_index(j));
      dg_[k][j] = diff(g_[k], axis_from_index(j));
    }
  }
}

KillingResidual CoordinateResidual::at(const Point& p) const {
  // Full 3x3 metric and its partials; off-diagonal entries are zero.
  double g[3][3] = {};
  double dg[3][3][3] = {};  // dg[i][j][k] = d g_ij / dx^k
  double w[3], dw[3][3], f[3];
  for (int i = 0; i < 3; ++i) {
    g[i][i] = eval(g_[i], p);
    f[i] = eval(f_[i], p);
    w[i] = eval(w_[i], p);
    for (int k = 0; k < 3; ++k) {
      dg[i][i][k] = eval(dg_[i][k], p);
      dw[i][k] = eval(dw_[i][k], p);
    }
  }
  double lie[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        s += w[k] * dg[i][j][k] + g[k][j] * dw[k][i] + g[i][k] * dw[k][j];
      }
      lie[i][j] = s;
    }
  }
  auto frame = [&](int i, int j) { return f[i] * f[j] * lie[i][j]; };
  KillingResidual r;
  r.r11 = 0.5 * frame(0, 0);
  r.r22 = 0.5 * frame(1, 1);
  r.r33 = 0.5 * frame(2, 2);
  r.r12 = frame(0, 1);
  r.r23 = frame(1, 2);
  r.r31 = frame(2, 0);
  return r;
}

// ---------------------------------------------------------------------------

KillingResidual residual_frame(const DiagonalMetric& m, const FrameVectorField& v, const Point& p) {
  return FrameResidual(m, v).at(p);
}

KillingResidual residual_coordinate_oracle(const DiagonalMetric& m, const FrameVectorField& v, const Point& p) {
  return CoordinateResidual(m, v).at(p);
}

namespace {
template <class Evaluator>
GridMaximum grid_max(const Evaluator& ev, const Grid& grid) {
  GridMaximum out;
  out.worst = grid.at(0);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Point p = grid.at(n);
    const double r = ev.at(p).max_abs();
    if (r > out.value) {
      out.value = r;
      out.worst = p;
    }
  }
  return out;
}
}  // namespace

GridMaximum max_residual_grid(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid) {
  return grid_max(FrameResidual(m, v), grid);
}

GridMaximum max_residual_grid_oracle(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid) {
  return grid_max(CoordinateResidual(m, v), grid);
}

double oracle_gap(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid) {
  const FrameResidual a(m, v);
  const CoordinateResidual b(m, v);
  double gap = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Point p = grid.at(n);
    const auto ra = a.at(p).values();
    const auto rb = b.at(p).values();
    for (int e = 0; e < 6; ++e) gap = std::max(gap, std::fabs(ra[e] - rb[e]));
  }
  return gap;
}

bool is_killing(const DiagonalMetric& m, const FrameVectorField& v, const Grid& grid, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_killing tolerance must be positive");
  return max_residual_grid(m, v, grid).value <= tol;
}

FrameVectorField lie_bracket(const DiagonalMetric& m, const FrameVectorField& v, const FrameVectorField& w) {
  const auto a = frame_to_coordinate(v, m);
  const auto b = frame_to_coordinate(w, m);
  CoordinateVectorField c;
  for (int i = 0; i < 3; ++i) {
    ScalarField s;
    for (int k = 0; k < 3; ++k) {
      const Axis ak = axis_from_index(k);
      s = s + (a[k] * diff(b[i], ak) - b[k] * diff(a[i], ak));
    }
    c[i] = s;
  }
  return coordinate_to_frame(c, m);
}

}  // namespace diagkill
