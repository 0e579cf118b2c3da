#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "diagkill/geometry.hpp"

namespace diagkill {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, const std::string& text);
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t position);
  const std::string& name() const { return name_; }
  std::size_t position() const { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

/// Division by zero, ln of a non-positive number, sqrt of a negative number,
/// non-integer power of a non-positive base, or a non-finite result.
class EvalDomainError : public Error {
 public:
  EvalDomainError(const std::string& what, const Point& p);
  const Point& point() const { return point_; }

 private:
  Point point_;
};

class QuadratureNonConvergence : public Error {
 public:
  QuadratureNonConvergence(double a, double b);
  Interval range() const { return range_; }

 private:
  Interval range_;
};

class ZeroLameCoefficient : public Error {
 public:
  ZeroLameCoefficient(int which, const Point& p);
  int which() const { return which_; }  // 1-based
  const Point& point() const { return point_; }

 private:
  int which_;
  Point point_;
};

class CaseNotApplicable : public Error {
 public:
  explicit CaseNotApplicable(const std::string& tag, const std::string& reason = {});
};

class ParamDimensionMismatch : public Error {
 public:
  ParamDimensionMismatch(const std::string& tag, std::size_t expected, std::size_t got);
};

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& which);
};

class TrajectoryLeftDomain : public Error {
 public:
  TrajectoryLeftDomain(const Point& p, double time);
  const Point& point() const { return point_; }
  double time() const { return time_; }

 private:
  Point point_;
  double time_;
};

}  // namespace diagkill
