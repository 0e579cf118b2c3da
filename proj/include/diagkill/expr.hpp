// Expression DSL for smooth scalar fields on R^3.
//
// A ScalarField is an immutable expression tree over the coordinates x1, x2, x3.
// Trees are built either by `parse` or by the arithmetic operators and the
// elementary-function builders below; every builder folds constants and drops
// additive/multiplicative identities, nothing more.
//
// Besides the closed-form nodes the tree can hold a `Univariate` leaf: a
// one-variable function known only numerically (a quadrature-backed primitive or
// a tabulated spline) whose derivative is itself a ScalarField. This is how the
// antiderivatives that appear in Killing-field families enter the DSL while
// keeping `diff` exact.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "diagkill/geometry.hpp"

namespace diagkill::expr {

enum class Op : std::uint8_t {
  Constant,
  Variable,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,
  Exp,
  Ln,
  Sin,
  Cos,
  Sqrt,
  Univariate,
};

class ScalarField;

/// A function of a single coordinate with a symbolic derivative.
class UnivariateFunction {
 public:
  virtual ~UnivariateFunction() = default;
  virtual Axis axis() const = 0;
  virtual double value(double t) const = 0;
  /// Derivative with respect to axis(); depends on axis() only.
  virtual ScalarField derivative() const = 0;
  /// Default name used when the function is printed, e.g. "F".
  virtual std::string label() const = 0;
};

struct Node;

class ScalarField {
 public:
  /// The constant 0.
  ScalarField();

  static ScalarField constant(double c);
  static ScalarField variable(Axis a);
  static ScalarField univariate(std::shared_ptr<const UnivariateFunction> fn);

  Op op() const;
  bool is_constant() const { return op() == Op::Constant; }
  bool is_constant(double c) const;
  double constant_value() const;  // only for Op::Constant
  Axis variable_axis() const;     // only for Op::Variable
  ScalarField lhs() const;  // first operand of any non-leaf node
  ScalarField rhs() const;  // second operand of binary nodes
  unsigned dependency_mask() const;
  const std::shared_ptr<const UnivariateFunction>& function() const;  // Op::Univariate

  double operator()(const Point& p) const;

  /// Identity of the underlying node, for caches keyed on shared subtrees.
  const void* id() const { return node_.get(); }

 private:
  explicit ScalarField(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend ScalarField wrap(std::shared_ptr<const Node> n);
  friend const std::shared_ptr<const Node>& node_ptr(const ScalarField& f);

  std::shared_ptr<const Node> node_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator+(const ScalarField& a, double b);
ScalarField operator+(double a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, double b);
ScalarField operator-(double a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, double b);
ScalarField operator*(double a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, double b);
ScalarField operator/(double a, const ScalarField& b);

ScalarField pow(const ScalarField& base, const ScalarField& exponent);
ScalarField pow(const ScalarField& base, double exponent);
ScalarField exp(const ScalarField& a);
ScalarField ln(const ScalarField& a);
ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField sqrt(const ScalarField& a);

inline ScalarField x1() { return ScalarField::variable(Axis::X1); }
inline ScalarField x2() { return ScalarField::variable(Axis::X2); }
inline ScalarField x3() { return ScalarField::variable(Axis::X3); }

/// Named one-variable functions the parser may reference as NAME(xk).
using SymbolTable = std::map<std::string, std::shared_ptr<const UnivariateFunction>, std::less<>>;

/// Parses the DSL grammar documented in the README. Throws SyntaxError or UnknownIdentifier.
ScalarField parse(std::string_view text, const SymbolTable& symbols = {});

/// Throws EvalDomainError on division by zero, ln(<=0), sqrt(<0),
/// non-integer power of a non-positive base, or a non-finite result.
double eval(const ScalarField& f, const Point& p);

/// Exact partial derivative with respect to `a`.
ScalarField diff(const ScalarField& f, Axis a);

using FunctionNamer = std::function<std::string(const UnivariateFunction&)>;

/// Prints an expression that `parse` reads back into the same tree.
/// Univariate leaves print as NAME(xk) with NAME from `namer` (default: label()).
std::string to_string(const ScalarField& f, const FunctionNamer& namer = {});

/// Syntactic occurrence test: true iff the tree mentions coordinate `a`.
bool depends_on(const ScalarField& f, Axis a);
/// Bit i set iff the tree mentions x(i+1).
unsigned dependency_mask(const ScalarField& f);
inline unsigned axis_bit(Axis a) { return 1u << index(a); }

bool structurally_equal(const ScalarField& a, const ScalarField& b);

/// Visits every Univariate leaf in depth-first order (duplicates included).
void for_each_function(const ScalarField& f,
                       const std::function<void(const std::shared_ptr<const UnivariateFunction>&)>& fn);

struct ConstancyResult {
  bool constant = false;
  double witness = 0.0;  // sample mean
  double spread = 0.0;   // max - min over the samples
};

/// Sampled constancy test: constant iff max - min <= rel_tol * (1 + |mean|).
/// A function of a single coordinate is sampled evenly along that coordinate's
/// range in `box` (other coordinates at the box center); a function of several
/// coordinates is sampled at Halton points of the box. Requires samples >= 16.
ConstancyResult is_constant(const ScalarField& f, const Box& box, int samples = 64,
                            double rel_tol = 1e-8);
ConstancyResult is_constant(const ScalarField& f, Interval interval, int samples = 64,
                            double rel_tol = 1e-8);

}  // namespace diagkill::expr
