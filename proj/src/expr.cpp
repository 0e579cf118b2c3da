#include "diagkill/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "diagkill/errors.hpp"

namespace diagkill::expr {

struct Node {
  Op op = Op::Constant;
  double value = 0.0;
  Axis axis = Axis::X1;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::shared_ptr<const UnivariateFunction> fn;
  unsigned mask = 0;
};

ScalarField wrap(std::shared_ptr<const Node> n) { return ScalarField(std::move(n)); }

const std::shared_ptr<const Node>& node_ptr(const ScalarField& f) { return f.node_; }

namespace {

const std::shared_ptr<const Node>& zero_node() {
  static const auto z = std::make_shared<const Node>();
  return z;
}

ScalarField make(Op op, const ScalarField* a = nullptr, const ScalarField* b = nullptr) {
  Node n;
  n.op = op;
  if (a) {
    n.a = node_ptr(*a);
    n.mask |= n.a->mask;
  }
  if (b) {
    n.b = node_ptr(*b);
    n.mask |= n.b->mask;
  }
  return wrap(std::make_shared<const Node>(std::move(n)));
}

bool is_integral(double v) {
  return std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 1e9;
}

double checked(double v, const char* what, const Point& p) {
  if (!std::isfinite(v)) throw EvalDomainError(std::string("non-finite result in ") + what, p);
  return v;
}

// Integer power by binary exponentiation; exact for small exponents.
double int_pow(double base, long long n) {
  const bool negative = n < 0;
  unsigned long long e = negative ? static_cast<unsigned long long>(-n) : n;
  double result = 1.0;
  double x = base;
  while (e) {
    if (e & 1ULL) result *= x;
    x *= x;
    e >>= 1ULL;
  }
  return negative ? 1.0 / result : result;
}

// Folding helper: the value a constant pow would have, if it is well defined.
bool fold_pow(double b, double e, double& out) {
  if (is_integral(e)) {
    if (b == 0.0 && e < 0) return false;
    out = int_pow(b, static_cast<long long>(e));
  } else {
    if (b <= 0.0) return false;
    out = std::pow(b, e);
  }
  return std::isfinite(out);
}

}  // namespace

ScalarField::ScalarField() : node_(zero_node()) {}

ScalarField ScalarField::constant(double c) {
  Node n;
  n.op = Op::Constant;
  n.value = c;
  return wrap(std::make_shared<const Node>(std::move(n)));
}

ScalarField ScalarField::variable(Axis a) {
  Node n;
  n.op = Op::Variable;
  n.axis = a;
  n.mask = axis_bit(a);
  return wrap(std::make_shared<const Node>(std::move(n)));
}

ScalarField ScalarField::univariate(std::shared_ptr<const UnivariateFunction> fn) {
  Node n;
  n.op = Op::Univariate;
  n.axis = fn->axis();
  n.mask = axis_bit(n.axis);
  n.fn = std::move(fn);
  return wrap(std::make_shared<const Node>(std::move(n)));
}

Op ScalarField::op() const { return node_->op; }
bool ScalarField::is_constant(double c) const { return node_->op == Op::Constant && node_->value == c; }
double ScalarField::constant_value() const { return node_->value; }
Axis ScalarField::variable_axis() const { return node_->axis; }
ScalarField ScalarField::lhs() const { return wrap(node_->a); }
ScalarField ScalarField::rhs() const { return wrap(node_->b); }
unsigned ScalarField::dependency_mask() const { return node_->mask; }
const std::shared_ptr<const UnivariateFunction>& ScalarField::function() const { return node_->fn; }
double ScalarField::operator()(const Point& p) const { return eval(*this, p); }

// ---------------------------------------------------------------------------
// builders

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.is_constant() && b.is_constant()) return ScalarField::constant(a.constant_value() + b.constant_value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return make(Op::Add, &a, &b);
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  if (a.is_constant() && b.is_constant()) return ScalarField::constant(a.constant_value() - b.constant_value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return make(Op::Sub, &a, &b);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  if (a.is_constant() && b.is_constant()) return ScalarField::constant(a.constant_value() * b.constant_value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return ScalarField::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  return make(Op::Mul, &a, &b);
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
    return ScalarField::constant(a.constant_value() / b.constant_value());
  }
  if (b.is_constant(1.0)) return a;
  // 0/b folds like 0*b; a literal 0/0 stays and fails at evaluation.
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return a;
  return make(Op::Div, &a, &b);
}

ScalarField operator-(const ScalarField& a) {
  if (a.is_constant()) return ScalarField::constant(-a.constant_value());
  if (a.op() == Op::Neg) return a.lhs();
  return make(Op::Neg, &a);
}

ScalarField operator+(const ScalarField& a, double b) { return a + ScalarField::constant(b); }
ScalarField operator+(double a, const ScalarField& b) { return ScalarField::constant(a) + b; }
ScalarField operator-(const ScalarField& a, double b) { return a - ScalarField::constant(b); }
ScalarField operator-(double a, const ScalarField& b) { return ScalarField::constant(a) - b; }
ScalarField operator*(const ScalarField& a, double b) { return a * ScalarField::constant(b); }
ScalarField operator*(double a, const ScalarField& b) { return ScalarField::constant(a) * b; }
ScalarField operator/(const ScalarField& a, double b) { return a / ScalarField::constant(b); }
ScalarField operator/(double a, const ScalarField& b) { return ScalarField::constant(a) / b; }

ScalarField pow(const ScalarField& base, const ScalarField& exponent) {
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return ScalarField::constant(1.0);
  if (base.is_constant(1.0)) return base;
  if (base.is_constant() && exponent.is_constant()) {
    double v = 0.0;
    if (fold_pow(base.constant_value(), exponent.constant_value(), v)) return ScalarField::constant(v);
  }
  return make(Op::Pow, &base, &exponent);
}

ScalarField pow(const ScalarField& base, double exponent) {
  return pow(base, ScalarField::constant(exponent));
}

namespace {
template <class Fold>
ScalarField function_node(Op op, const ScalarField& a, Fold fold) {
  if (a.is_constant()) {
    double v = 0.0;
    if (fold(a.constant_value(), v) && std::isfinite(v)) return ScalarField::constant(v);
  }
  return make(op, &a);
}
}  // namespace

ScalarField exp(const ScalarField& a) {
  return function_node(Op::Exp, a, [](double x, double& v) { v = std::exp(x); return true; });
}
ScalarField ln(const ScalarField& a) {
  return function_node(Op::Ln, a, [](double x, double& v) {
    if (x <= 0.0) return false;
    v = std::log(x);
    return true;
  });
}
ScalarField sin(const ScalarField& a) {
  return function_node(Op::Sin, a, [](double x, double& v) { v = std::sin(x); return true; });
}
ScalarField cos(const ScalarField& a) {
  return function_node(Op::Cos, a, [](double x, double& v) { v = std::cos(x); return true; });
}
ScalarField sqrt(const ScalarField& a) {
  return function_node(Op::Sqrt, a, [](double x, double& v) {
    if (x < 0.0) return false;
    v = std::sqrt(x);
    return true;
  });
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double eval_node(const Node& n, const Point& p) {
  switch (n.op) {
    case Op::Constant:
      return n.value;
    case Op::Variable:
      return p[index(n.axis)];
    case Op::Add:
      return checked(eval_node(*n.a, p) + eval_node(*n.b, p), "addition", p);
    case Op::Sub:
      return checked(eval_node(*n.a, p) - eval_node(*n.b, p), "subtraction", p);
    case Op::Mul:
      return checked(eval_node(*n.a, p) * eval_node(*n.b, p), "multiplication", p);
    case Op::Div: {
      const double den = eval_node(*n.b, p);
      if (den == 0.0) throw EvalDomainError("division by zero", p);
      return checked(eval_node(*n.a, p) / den, "division", p);
    }
    case Op::Neg:
      return -eval_node(*n.a, p);
    case Op::Pow: {
      const double base = eval_node(*n.a, p);
      const double e = eval_node(*n.b, p);
      if (is_integral(e)) {
        if (base == 0.0 && e < 0) throw EvalDomainError("division by zero in negative power", p);
        return checked(int_pow(base, static_cast<long long>(e)), "power", p);
      }
      if (base <= 0.0) throw EvalDomainError("non-integer power of a non-positive base", p);
      return checked(std::pow(base, e), "power", p);
    }
    case Op::Exp:
      return checked(std::exp(eval_node(*n.a, p)), "exp", p);
    case Op::Ln: {
      const double x = eval_node(*n.a, p);
      if (x <= 0.0) throw EvalDomainError("ln of a non-positive number", p);
      return std::log(x);
    }
    case Op::Sin:
      return std::sin(eval_node(*n.a, p));
    case Op::Cos:
      return std::cos(eval_node(*n.a, p));
    case Op::Sqrt: {
      const double x = eval_node(*n.a, p);
      if (x < 0.0) throw EvalDomainError("sqrt of a negative number", p);
      return std::sqrt(x);
    }
    case Op::Univariate:
      return checked(n.fn->value(p[index(n.axis)]), "univariate function", p);
  }
  return 0.0;
}

}  // namespace

double eval(const ScalarField& f, const Point& p) { return eval_node(*node_ptr(f), p); }

// ---------------------------------------------------------------------------
// differentiation

ScalarField diff(const ScalarField& f, Axis axis) {
  if (!(f.dependency_mask() & axis_bit(axis))) return ScalarField::constant(0.0);
  switch (f.op()) {
    case Op::Constant:
      return ScalarField::constant(0.0);
    case Op::Variable:
      return ScalarField::constant(f.variable_axis() == axis ? 1.0 : 0.0);
    case Op::Add:
      return diff(f.lhs(), axis) + diff(f.rhs(), axis);
    case Op::Sub:
      return diff(f.lhs(), axis) - diff(f.rhs(), axis);
    case Op::Mul: {
      const auto a = f.lhs();
      const auto b = f.rhs();
      return diff(a, axis) * b + a * diff(b, axis);
    }
    case Op::Div: {
      const auto a = f.lhs();
      const auto b = f.rhs();
      const auto db = diff(b, axis);
      if (db.is_constant(0.0)) return diff(a, axis) / b;
      return (diff(a, axis) * b - a * db) / (b * b);
    }
    case Op::Neg:
      return -diff(f.lhs(), axis);
    case Op::Pow: {
      const auto base = f.lhs();
      const auto e = f.rhs();
      if (e.is_constant()) {
        const double n = e.constant_value();
        return ScalarField::constant(n) * pow(base, n - 1.0) * diff(base, axis);
      }
      return f * (diff(e, axis) * ln(base) + e * diff(base, axis) / base);
    }
    case Op::Exp:
      return f * diff(f.lhs(), axis);
    case Op::Ln:
      return diff(f.lhs(), axis) / f.lhs();
    case Op::Sin:
      return cos(f.lhs()) * diff(f.lhs(), axis);
    case Op::Cos:
      return -sin(f.lhs()) * diff(f.lhs(), axis);
    case Op::Sqrt:
      return diff(f.lhs(), axis) / (2.0 * f);
    case Op::Univariate:
      return f.function()->derivative();
  }
  return ScalarField::constant(0.0);
}

// ---------------------------------------------------------------------------
// printing

namespace {

// Binding strength as seen by the parser: sums 1, products 2, negation 3,
// powers 4, atoms 5. Negative constants read back through negation.
int precedence(const ScalarField& f) {
  switch (f.op()) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    case Op::Constant:
      return std::signbit(f.constant_value()) ? 3 : 5;
    default:
      return 5;
  }
}

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fname(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    default: return "?";
  }
}

std::string print(const ScalarField& f, const FunctionNamer& namer);

std::string wrapped(const ScalarField& f, int min_prec, const FunctionNamer& namer) {
  auto s = print(f, namer);
  if (precedence(f) < min_prec) return "(" + s + ")";
  return s;
}

std::string print(const ScalarField& f, const FunctionNamer& namer) {
  switch (f.op()) {
    case Op::Constant:
      return number(f.constant_value());
    case Op::Variable:
      return axis_name(f.variable_axis());
    case Op::Add:
      return wrapped(f.lhs(), 1, namer) + " + " + wrapped(f.rhs(), 2, namer);
    case Op::Sub:
      return wrapped(f.lhs(), 1, namer) + " - " + wrapped(f.rhs(), 2, namer);
    case Op::Mul:
      return wrapped(f.lhs(), 2, namer) + "*" + wrapped(f.rhs(), 3, namer);
    case Op::Div:
      return wrapped(f.lhs(), 2, namer) + "/" + wrapped(f.rhs(), 3, namer);
    case Op::Neg:
      return "-" + wrapped(f.lhs(), 3, namer);
    case Op::Pow:
      return wrapped(f.lhs(), 5, namer) + "^" + wrapped(f.rhs(), 3, namer);
    case Op::Univariate: {
      const auto& fn = *f.function();
      return (namer ? namer(fn) : fn.label()) + "(" + axis_name(fn.axis()) + ")";
    }
    default:
      return fname(f.op()) + "(" + print(f.lhs(), namer) + ")";
  }
}

}  // namespace

std::string to_string(const ScalarField& f, const FunctionNamer& namer) { return print(f, namer); }

// ---------------------------------------------------------------------------
// structure queries

bool depends_on(const ScalarField& f, Axis a) { return (f.dependency_mask() & axis_bit(a)) != 0; }

unsigned dependency_mask(const ScalarField& f) { return f.dependency_mask(); }

bool structurally_equal(const ScalarField& a, const ScalarField& b) {
  if (a.id() == b.id()) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Constant:
      return a.constant_value() == b.constant_value();
    case Op::Variable:
      return a.variable_axis() == b.variable_axis();
    case Op::Univariate:
      return a.function() == b.function();
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow:
      return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    default:
      return structurally_equal(a.lhs(), b.lhs());
  }
}

void for_each_function(const ScalarField& f,
                       const std::function<void(const std::shared_ptr<const UnivariateFunction>&)>& fn) {
  const auto& n = *node_ptr(f);
  if (n.op == Op::Univariate) {
    fn(n.fn);
    return;
  }
  if (n.a) for_each_function(f.lhs(), fn);
  if (n.b) for_each_function(f.rhs(), fn);
}

// ---------------------------------------------------------------------------
// constancy

namespace {
double halton(std::size_t i, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}
}  // namespace

ConstancyResult is_constant(const ScalarField& f, const Box& box, int samples, double rel_tol) {
  if (samples < 16) throw std::invalid_argument("is_constant needs at least 16 samples");
  const unsigned mask = f.dependency_mask();
  std::vector<double> values;
  values.reserve(samples);
  if (mask == 0) {
    values.push_back(eval(f, box.center()));
  } else if ((mask & (mask - 1)) == 0) {
    const int a = mask == 1 ? 0 : (mask == 2 ? 1 : 2);
    for (int i = 0; i < samples; ++i) {
      Point p = box.center();
      const double s = static_cast<double>(i) / (samples - 1);
      p[a] = box.lo[a] + s * (box.hi[a] - box.lo[a]);
      values.push_back(eval(f, p));
    }
  } else {
    static constexpr unsigned bases[3] = {2, 3, 5};
    for (int i = 0; i < samples; ++i) {
      Point p{};
      for (int a = 0; a < 3; ++a) {
        p[a] = box.lo[a] + halton(static_cast<std::size_t>(i) + 1, bases[a]) * (box.hi[a] - box.lo[a]);
      }
      values.push_back(eval(f, p));
    }
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  ConstancyResult r;
  r.witness = mean;
  r.spread = *mx - *mn;
  r.constant = r.spread <= rel_tol * (1.0 + std::fabs(mean));
  return r;
}

ConstancyResult is_constant(const ScalarField& f, Interval interval, int samples, double rel_tol) {
  return is_constant(f, Box::cube(interval.lo, interval.hi), samples, rel_tol);
}

}  // namespace diagkill::expr
