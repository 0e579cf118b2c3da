#include "diagkill/metric.hpp"

#include <cmath>
#include <stdexcept>

#include "diagkill/errors.hpp"

namespace diagkill {

FrameVectorField FrameVectorField::parse(const std::array<std::string, 3>& text,
                                         const expr::SymbolTable& symbols) {
  FrameVectorField v;
  for (int k = 0; k < 3; ++k) v[k] = expr::parse(text[k], symbols);
  return v;
}

CoordinateVectorField CoordinateVectorField::parse(const std::array<std::string, 3>& text,
                                                   const expr::SymbolTable& symbols) {
  CoordinateVectorField w;
  for (int k = 0; k < 3; ++k) w[k] = expr::parse(text[k], symbols);
  return w;
}

FrameVectorField operator+(const FrameVectorField& a, const FrameVectorField& b) {
  FrameVectorField r;
  for (int k = 0; k < 3; ++k) r[k] = a[k] + b[k];
  return r;
}

FrameVectorField operator-(const FrameVectorField& a, const FrameVectorField& b) {
  FrameVectorField r;
  for (int k = 0; k < 3; ++k) r[k] = a[k] - b[k];
  return r;
}

FrameVectorField operator*(double s, const FrameVectorField& v) {
  FrameVectorField r;
  for (int k = 0; k < 3; ++k) r[k] = s * v[k];
  return r;
}

DiagonalMetric::DiagonalMetric(ScalarField f1, ScalarField f2, ScalarField f3, Box box)
    : f_{std::move(f1), std::move(f2), std::move(f3)}, box_(box) {
  if (!box_.nondegenerate()) throw std::invalid_argument("metric domain box is degenerate");
  const Grid grid{box_, {kValidationSamples, kValidationSamples, kValidationSamples}};
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Point p = grid.at(n);
    for (int i = 0; i < 3; ++i) {
      if (expr::eval(f_[i], p) == 0.0) throw ZeroLameCoefficient(i + 1, p);
    }
  }
}

DiagonalMetric DiagonalMetric::parse(const std::string& f1, const std::string& f2, const std::string& f3,
                                     Box box) {
  return DiagonalMetric(expr::parse(f1), expr::parse(f2), expr::parse(f3), box);
}

Eigen::Vector3d DiagonalMetric::diagonal_at(const Point& p) const {
  Eigen::Vector3d g;
  for (int i = 0; i < 3; ++i) {
    const double f = expr::eval(f_[i], p);
    g[i] = 1.0 / (f * f);
  }
  return g;
}

Eigen::Matrix3d DiagonalMetric::metric_tensor_at(const Point& p) const {
  return diagonal_at(p).asDiagonal();
}

FrameCoefficients::FrameCoefficients(const DiagonalMetric& m) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      c_[i][j] = m.lame(j) / m.lame(i) * expr::diff(m.lame(i), axis_from_index(j));
    }
  }
}

FrameCoefficients frame_coefficients(const DiagonalMetric& m) { return FrameCoefficients(m); }

ConnectionTable::ConnectionTable(const FrameCoefficients& fc) {
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (k != i) c_[i][i][k] = fc.at(i, k);
    }
    for (int j = 0; j < 3; ++j) {
      if (j != i) c_[i][j][i] = -fc.at(i, j);
    }
  }
}

ConnectionTable connection(const DiagonalMetric& m) { return ConnectionTable(FrameCoefficients(m)); }

CoordinateVectorField frame_to_coordinate(const FrameVectorField& v, const DiagonalMetric& m) {
  CoordinateVectorField w;
  for (int k = 0; k < 3; ++k) w[k] = v[k] * m.lame(k);
  return w;
}

FrameVectorField coordinate_to_frame(const CoordinateVectorField& w, const DiagonalMetric& m) {
  FrameVectorField v;
  for (int k = 0; k < 3; ++k) v[k] = w[k] / m.lame(k);
  return v;
}

}  // namespace diagkill
