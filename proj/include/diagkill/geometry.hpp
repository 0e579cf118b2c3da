#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace diagkill {

/// A point of R^3 in the standard coordinates (x1, x2, x3).
using Point = std::array<double, 3>;

/// Coordinate axis. The enumerator value is the zero-based component index.
enum class Axis : int { X1 = 0, X2 = 1, X3 = 2 };

inline constexpr std::array<Axis, 3> kAxes = {Axis::X1, Axis::X2, Axis::X3};

constexpr int index(Axis a) { return static_cast<int>(a); }
constexpr Axis axis_from_index(int i) { return static_cast<Axis>(i); }

std::string axis_name(Axis a);  // "x1", "x2", "x3"

/// Closed real interval [lo, hi].
struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// Axis-aligned closed box in R^3.
struct Box {
  Point lo{-1.0, -1.0, -1.0};
  Point hi{1.0, 1.0, 1.0};

  static Box cube(double a, double b) { return Box{{a, a, a}, {b, b, b}}; }

  bool contains(const Point& p) const;
  bool nondegenerate() const;
  Interval along(Axis a) const { return {lo[index(a)], hi[index(a)]}; }
  Point center() const;
};

/// Tensor-product sample grid on a box; counts are points per axis, endpoints included.
struct Grid {
  Box box;
  std::array<int, 3> counts{5, 5, 5};

  /// 5x5x5 on [-1,1]^3.
  static Grid standard() { return Grid{}; }

  std::size_t size() const;
  Point at(std::size_t flat) const;
  std::vector<Point> points() const;
  /// Grid points that do not lie on the boundary of the box.
  std::vector<Point> interior_points() const;
};

std::string format_point(const Point& p);

}  // namespace diagkill
