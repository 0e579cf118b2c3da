#include "diagkill/geometry.hpp"

#include <sstream>

#include "diagkill/errors.hpp"

namespace diagkill {

std::string axis_name(Axis a) { return "x" + std::to_string(index(a) + 1); }

bool Box::contains(const Point& p) const {
  for (int i = 0; i < 3; ++i) {
    if (!(p[i] >= lo[i] && p[i] <= hi[i])) return false;
  }
  return true;
}

bool Box::nondegenerate() const {
  for (int i = 0; i < 3; ++i) {
    if (!(lo[i] < hi[i])) return false;
  }
  return true;
}

Point Box::center() const {
  return {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])};
}

std::size_t Grid::size() const {
  return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
}

Point Grid::at(std::size_t flat) const {
  std::array<int, 3> idx{};
  idx[0] = static_cast<int>(flat % counts[0]);
  idx[1] = static_cast<int>((flat / counts[0]) % counts[1]);
  idx[2] = static_cast<int>(flat / (static_cast<std::size_t>(counts[0]) * counts[1]));
  Point p{};
  for (int a = 0; a < 3; ++a) {
    if (counts[a] == 1) {
      p[a] = 0.5 * (box.lo[a] + box.hi[a]);
    } else {
      // endpoints hit exactly
      const double s = static_cast<double>(idx[a]) / (counts[a] - 1);
      p[a] = idx[a] == counts[a] - 1 ? box.hi[a] : box.lo[a] + s * (box.hi[a] - box.lo[a]);
    }
  }
  return p;
}

std::vector<Point> Grid::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

std::vector<Point> Grid::interior_points() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < size(); ++i) {
    const Point p = at(i);
    bool inner = true;
    for (int a = 0; a < 3; ++a) {
      if (p[a] <= box.lo[a] || p[a] >= box.hi[a]) inner = false;
    }
    if (inner) out.push_back(p);
  }
  return out;
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p[0] << ", " << p[1] << ", " << p[2] << ')';
  return os.str();
}

// errors

namespace {
std::string describe_syntax(std::size_t pos, const std::string& expected, const std::string& text) {
  std::ostringstream os;
  os << "syntax error at position " << pos << ": expected " << expected;
  if (!text.empty()) os << " in \"" << text << '"';
  return os.str();
}
}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::string expected, const std::string& text)
    : Error(describe_syntax(position, expected, text)),
      position_(position),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::string name, std::size_t position)
    : Error("unknown identifier '" + name + "' at position " + std::to_string(position)),
      name_(std::move(name)),
      position_(position) {}

EvalDomainError::EvalDomainError(const std::string& what, const Point& p)
    : Error(what + " at " + format_point(p)), point_(p) {}

QuadratureNonConvergence::QuadratureNonConvergence(double a, double b)
    : Error("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
            std::to_string(b) + "]"),
      range_{a, b} {}

ZeroLameCoefficient::ZeroLameCoefficient(int which, const Point& p)
    : Error("Lame coefficient f" + std::to_string(which) + " vanishes at " + format_point(p)),
      which_(which),
      point_(p) {}

CaseNotApplicable::CaseNotApplicable(const std::string& tag, const std::string& reason)
    : Error("family " + tag + " does not apply to this metric" +
            (reason.empty() ? std::string{} : ": " + reason)) {}

ParamDimensionMismatch::ParamDimensionMismatch(const std::string& tag, std::size_t expected,
                                               std::size_t got)
    : Error("family " + tag + " takes " + std::to_string(expected) + " parameters, got " +
            std::to_string(got)) {}

HypothesisViolation::HypothesisViolation(const std::string& which)
    : Error("hypothesis violated: " + which) {}

TrajectoryLeftDomain::TrajectoryLeftDomain(const Point& p, double time)
    : Error("trajectory left the domain box at " + format_point(p) + ", t=" + std::to_string(time)),
      point_(p),
      time_(time) {}

}  // namespace diagkill
