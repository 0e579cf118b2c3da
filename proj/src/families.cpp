#include "diagkill/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "diagkill/errors.hpp"
#include "diagkill/killing.hpp"
#include "diagkill/univariate.hpp"

namespace diagkill {

using expr::axis_bit;
using expr::diff;

namespace {

struct TagInfo {
  FamilyTag tag;
  const char* name;
  std::vector<std::string> params;
};

const std::vector<TagInfo>& tag_table() {
  static const std::vector<TagInfo> table = {
      {FamilyTag::TE1_I, "TE1_I", {"c1", "c2"}},
      {FamilyTag::TE1_II, "TE1_II", {"c1", "c2", "c3", "c4", "c5", "c6"}},
      {FamilyTag::TE1_III, "TE1_III", {"c1", "c2", "c3", "c4"}},
      {FamilyTag::TE1_IV, "TE1_IV", {"c1", "c2", "c3", "c4"}},
      {FamilyTag::TE1_V, "TE1_V", {"c1", "c2", "c3", "c4"}},
      {FamilyTag::SPLIT_X1X2K3, "SPLIT_X1X2K3", {"a1", "a2", "b1", "b2", "b3", "c"}},
      {FamilyTag::CONST_METRIC, "CONST_METRIC", {"a1", "a2", "a3", "b1", "b2", "b3"}},
      {FamilyTag::FRAME_FIELD_E1, "FRAME_FIELD_E1", {"c"}},
      {FamilyTag::FRAME_FIELD_E2, "FRAME_FIELD_E2", {"c"}},
      {FamilyTag::FRAME_FIELD_E3, "FRAME_FIELD_E3", {"c"}},
      {FamilyTag::PR1_RESTRICTED, "PR1_RESTRICTED", {"c1", "c2", "c3"}},
      {FamilyTag::PR2_RESTRICTED, "PR2_RESTRICTED", {"c1", "c2", "c3"}},
      {FamilyTag::NONE, "NONE", {}},
  };
  return table;
}

const TagInfo& info(FamilyTag tag) {
  for (const auto& t : tag_table()) {
    if (t.tag == tag) return t;
  }
  throw std::logic_error("unhandled family tag");
}

bool only(const ScalarField& f, unsigned allowed) { return (f.dependency_mask() & ~allowed) == 0u; }

constexpr unsigned kX1 = 1u << 0;
constexpr unsigned kX2 = 1u << 1;

bool te1_hypotheses(const DiagonalMetric& m) {
  return only(m.lame(0), kX1) && only(m.lame(1), kX1) && m.lame(2).dependency_mask() == 0u;
}

bool split_hypotheses(const DiagonalMetric& m) {
  return only(m.lame(0), kX1) && only(m.lame(1), kX2) && m.lame(2).dependency_mask() == 0u;
}

bool const_hypotheses(const DiagonalMetric& m) {
  return std::all_of(m.lame().begin(), m.lame().end(), [](const ScalarField& f) { return f.dependency_mask() == 0u; });
}

bool pr1_metric(const DiagonalMetric& m) {
  return std::all_of(m.lame().begin(), m.lame().end(), [](const ScalarField& f) { return only(f, kX1); });
}

bool pr2_metric(const DiagonalMetric& m) {
  for (int i = 0; i < 3; ++i) {
    if (!only(m.lame(i), 1u << i)) return false;
  }
  return true;
}

double base_for(const DiagonalMetric& m, Axis axis, const GenerateOptions& opts) {
  if (opts.base_point) return *opts.base_point;
  const Interval iv = m.domain().along(axis);
  return (iv.lo <= 0.0 && 0.0 <= iv.hi) ? 0.0 : iv.lo;
}

ScalarField primitive(const DiagonalMetric& m, const ScalarField& integrand, Axis axis, const GenerateOptions& opts,
                      const char* label) {
  return expr::primitive_field(integrand, axis, base_for(m, axis, opts), opts.quadrature_tol, label);
}

void require_tag(const FamilyParams& p, FamilyTag expected) {
  if (p.tag != expected) {
    throw std::invalid_argument("parameters for " + to_string(p.tag) + " passed to the " + to_string(expected) +
                                " generator");
  }
  if (p.values.size() != static_cast<std::size_t>(family_dimension(expected))) {
    throw ParamDimensionMismatch(to_string(expected), family_dimension(expected), p.values.size());
  }
}

}  // namespace

std::string to_string(FamilyTag tag) { return info(tag).name; }

FamilyTag family_tag_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  std::replace(upper.begin(), upper.end(), '-', '_');
  for (const auto& t : tag_table()) {
    if (upper == t.name) return t.tag;
  }
  throw std::invalid_argument("unknown family tag '" + std::string(name) + "'");
}

std::vector<FamilyTag> all_family_tags() {
  std::vector<FamilyTag> out;
  for (const auto& t : tag_table()) out.push_back(t.tag);
  return out;
}

int family_dimension(FamilyTag tag) { return static_cast<int>(info(tag).params.size()); }

const std::vector<std::string>& param_names(FamilyTag tag) { return info(tag).params; }

FamilyParams FamilyParams::make(FamilyTag tag, std::vector<double> values) {
  if (values.size() != static_cast<std::size_t>(family_dimension(tag))) {
    throw ParamDimensionMismatch(to_string(tag), family_dimension(tag), values.size());
  }
  return FamilyParams{tag, std::move(values)};
}

FamilyParams FamilyParams::zeros(FamilyTag tag) {
  return FamilyParams{tag, std::vector<double>(static_cast<std::size_t>(family_dimension(tag)), 0.0)};
}

FamilyParams FamilyParams::unit(FamilyTag tag, int i) {
  FamilyParams p = zeros(tag);
  p.values.at(static_cast<std::size_t>(i)) = 1.0;
  return p;
}

double FamilyParams::operator[](std::string_view name) const {
  const auto& names = param_names(tag);
  for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw std::out_of_range("family " + to_string(tag) + " has no parameter '" + std::string(name) + "'");
}

bool FamilyDescriptor::admits(FamilyTag t) const {
  return std::find(applicable.begin(), applicable.end(), t) != applicable.end();
}

// ---------------------------------------------------------------------------

std::vector<int> killing_frame_fields(const DiagonalMetric& m) {
  std::vector<int> out;
  for (int i = 0; i < 3; ++i) {
    const unsigned own = 1u << i;
    bool ok = only(m.lame(i), own);
    for (int j = 0; j < 3 && ok; ++j) {
      if (j != i && (m.lame(j).dependency_mask() & own)) ok = false;
    }
    if (ok) out.push_back(i + 1);
  }
  return out;
}

ScalarField classifier_k_expression(const DiagonalMetric& m) {
  const ScalarField& f1 = m.lame(0);
  const ScalarField& f2 = m.lame(1);
  const ScalarField d1 = diff(f1, Axis::X1);
  const ScalarField d2 = diff(f2, Axis::X1);
  const ScalarField u = d2 / f2;
  return expr::pow(f1 / f2, 2.0) * (d1 / f1 * u + diff(u, Axis::X1));
}

FamilyDescriptor classify(const DiagonalMetric& m, const ClassifyOptions& opts) {
  FamilyDescriptor d;
  d.frame_killing_fields = killing_frame_fields(m);

  const bool all_const = const_hypotheses(m);
  const bool te1 = te1_hypotheses(m);
  const bool split = split_hypotheses(m);

  FamilyTag te1_case = FamilyTag::NONE;
  if (te1) {
    d.applicable.push_back(FamilyTag::TE1_I);
    if (m.lame(1).dependency_mask() == 0u) {
      te1_case = FamilyTag::TE1_II;
    } else {
      const auto c = expr::is_constant(classifier_k_expression(m), m.domain(), opts.samples, opts.constancy_tol);
      if (!c.constant) {
        d.reason = "k nonconstant";
      } else {
        d.k = c.witness;
        if (std::fabs(c.witness) <= opts.zero_threshold) {
          te1_case = FamilyTag::TE1_III;
        } else {
          te1_case = c.witness > 0.0 ? FamilyTag::TE1_IV : FamilyTag::TE1_V;
        }
      }
    }
    if (te1_case != FamilyTag::NONE) d.applicable.push_back(te1_case);
  }
  if (split) d.applicable.push_back(FamilyTag::SPLIT_X1X2K3);
  if (all_const) d.applicable.push_back(FamilyTag::CONST_METRIC);
  for (int i : d.frame_killing_fields) {
    d.applicable.push_back(static_cast<FamilyTag>(static_cast<int>(FamilyTag::FRAME_FIELD_E1) + i - 1));
  }
  if (pr1_metric(m)) d.applicable.push_back(FamilyTag::PR1_RESTRICTED);
  if (pr2_metric(m)) d.applicable.push_back(FamilyTag::PR2_RESTRICTED);

  if (all_const) {
    d.tag = FamilyTag::CONST_METRIC;
  } else if (te1) {
    d.tag = te1_case;
  } else if (split) {
    d.tag = FamilyTag::SPLIT_X1X2K3;
  } else {
    d.tag = FamilyTag::NONE;
    d.reason = "no solved regime matches the metric";
  }
  if (d.tag != FamilyTag::NONE) d.reason.clear();
  return d;
}

BranchBProfile branch_b_profile(const ScalarField& f1, const ScalarField& f2, Interval interval,
                                const ClassifyOptions& opts) {
  if (!only(f1, kX1) || !only(f2, kX1)) throw HypothesisViolation("branch-B profile needs f1, f2 functions of x1");
  const ScalarField a = f1 * diff(f2, Axis::X1) / expr::pow(f2, 2.0);
  const ScalarField b = f1 * diff(f2, Axis::X1) / expr::pow(f2, 3.0);
  BranchBProfile p;
  p.h = f1 / f2 * diff(a, Axis::X1) + expr::pow(a, 2.0);
  p.l = f1 * diff(b, Axis::X1);
  const Box box{{interval.lo, -1.0, -1.0}, {interval.hi, 1.0, 1.0}};
  p.h_constancy = expr::is_constant(p.h, box, opts.samples, opts.constancy_tol);
  p.l_constancy = expr::is_constant(p.l, box, opts.samples, opts.constancy_tol);
  return p;
}

// ---------------------------------------------------------------------------

FrameVectorField generate_te1(const DiagonalMetric& m, FamilyTag te1_case, const FamilyParams& params,
                              const GenerateOptions& opts) {
  if (te1_case < FamilyTag::TE1_I || te1_case > FamilyTag::TE1_V) {
    throw std::invalid_argument(to_string(te1_case) + " is not a te1 case");
  }
  require_tag(params, te1_case);
  const FamilyDescriptor d = classify(m, opts.classify);
  if (!d.admits(te1_case)) {
    throw CaseNotApplicable(to_string(te1_case), d.reason.empty() ? "classified as " + to_string(d.tag) : d.reason);
  }
  const ScalarField& f1 = m.lame(0);
  const ScalarField& f2 = m.lame(1);
  const ScalarField x2 = expr::x2();
  const ScalarField x3 = expr::x3();
  const auto& c = params.values;
  FrameVectorField v;

  if (te1_case == FamilyTag::TE1_I) {
    v[1] = c[0] / f2;
    v[2] = ScalarField::constant(c[1]);
    return v;
  }
  if (te1_case == FamilyTag::TE1_II) {
    const double k2 = m.lame(1).constant_value();
    const double k3 = m.lame(2).constant_value();
    const ScalarField F = primitive(m, 1.0 / f1, Axis::X1, opts, "F");
    v[0] = c[0] * x2 + c[1] * x3 + c[2];
    v[1] = -c[0] * k2 * F - c[3] * k2 * x3 + c[4];
    v[2] = -c[1] * k3 * F + c[3] * k3 * x2 + c[5];
    return v;
  }

  // Cases (iii)-(v) share V^2 = A(x1) G0(x2) + (coef F0(x1) + c4) / f2 with G0' = V^1.
  const ScalarField A = f1 * diff(f2, Axis::X1) / expr::pow(f2, 2.0);
  const ScalarField F0 = primitive(m, -expr::pow(f2, 2.0) / f1, Axis::X1, opts, "F0");
  ScalarField g1, g0;
  double coef = 0.0;
  if (te1_case == FamilyTag::TE1_III) {
    g1 = c[0] * x2 + c[1];
    g0 = c[0] / 2.0 * expr::pow(x2, 2.0) + c[1] * x2 + c[2];
    coef = c[0];
  } else if (te1_case == FamilyTag::TE1_IV) {
    const double k = *d.k;
    const double s = std::sqrt(k);
    g1 = c[0] * expr::cos(s * x2) + c[1] * expr::sin(s * x2);
    g0 = (1.0 / s) * (c[0] * expr::sin(s * x2) - c[1] * expr::cos(s * x2)) + c[2];
    coef = c[2] * k;
  } else {
    const double k = *d.k;
    const double s = std::sqrt(-k);
    g1 = c[0] * expr::exp(s * x2) + c[1] * expr::exp(-s * x2);
    g0 = (1.0 / s) * (c[0] * expr::exp(s * x2) - c[1] * expr::exp(-s * x2)) + c[2];
    coef = c[2] * k;
  }
  v[0] = g1;
  v[1] = A * g0 + (coef * F0 + c[3]) / f2;
  v[2] = ScalarField::constant(c[2]);
  return v;
}

FrameVectorField generate_split(const DiagonalMetric& m, const FamilyParams& params, const GenerateOptions& opts) {
  require_tag(params, FamilyTag::SPLIT_X1X2K3);
  if (!split_hypotheses(m)) {
    throw CaseNotApplicable("SPLIT_X1X2K3", "needs f1 = f1(x1), f2 = f2(x2), f3 constant");
  }
  const ScalarField F1 = primitive(m, 1.0 / m.lame(0), Axis::X1, opts, "F1");
  const ScalarField F2 = primitive(m, 1.0 / m.lame(1), Axis::X2, opts, "F2");
  return split_family(F1, F2, m.lame(2).constant_value(), params);
}

FrameVectorField split_family(const ScalarField& F1, const ScalarField& F2, double k3, const FamilyParams& params) {
  require_tag(params, FamilyTag::SPLIT_X1X2K3);
  const ScalarField x3 = expr::x3();
  const double a1 = params["a1"], a2 = params["a2"], b1 = params["b1"];
  const double b2 = params["b2"], b3 = params["b3"], c = params["c"];
  FrameVectorField v;
  v[0] = -c * F2 + a1 * x3 + a2;
  v[1] = c * F1 + b1 * x3 + b2;
  v[2] = -a1 * k3 * F1 - b1 * k3 * F2 + b3;
  return v;
}

FrameVectorField generate_const_metric(const DiagonalMetric& m, const FamilyParams& params,
                                       const GenerateOptions& /*opts*/) {
  require_tag(params, FamilyTag::CONST_METRIC);
  if (!const_hypotheses(m)) throw CaseNotApplicable("CONST_METRIC", "needs every f_i constant");
  const double k1 = m.lame(0).constant_value();
  const double k2 = m.lame(1).constant_value();
  const double k3 = m.lame(2).constant_value();
  const ScalarField x1 = expr::x1(), x2 = expr::x2(), x3 = expr::x3();
  const double a1 = params["a1"], a2 = params["a2"], a3 = params["a3"];
  FrameVectorField v;
  v[0] = -a1 / k2 * x2 + a2 / k3 * x3 + params["b1"];
  v[1] = a1 / k1 * x1 - a3 / k3 * x3 + params["b2"];
  v[2] = -a2 / k1 * x1 + a3 / k2 * x2 + params["b3"];
  return v;
}

FrameVectorField generate_restricted(const DiagonalMetric& m, FamilyTag which, const FamilyParams& params,
                                     const GenerateOptions& /*opts*/) {
  require_tag(params, which);
  const auto& c = params.values;
  FrameVectorField v;
  if (which == FamilyTag::PR1_RESTRICTED) {
    if (!pr1_metric(m)) throw CaseNotApplicable("PR1_RESTRICTED", "needs every f_i a function of x1");
    const bool flat_tail = m.lame(1).dependency_mask() == 0u && m.lame(2).dependency_mask() == 0u;
    if (c[0] != 0.0 && !flat_tail) throw CaseNotApplicable("PR1_RESTRICTED", "c1 != 0 needs f2, f3 constant");
    v[0] = ScalarField::constant(c[0]);
    v[1] = c[1] / m.lame(1);
    v[2] = c[2] / m.lame(2);
    return v;
  }
  if (which == FamilyTag::PR2_RESTRICTED) {
    if (!pr2_metric(m)) throw CaseNotApplicable("PR2_RESTRICTED", "needs f_i a function of x^i");
    for (int i = 0; i < 3; ++i) v[i] = ScalarField::constant(c[i]);
    return v;
  }
  throw std::invalid_argument(to_string(which) + " is not a restricted family");
}

FrameVectorField generate_frame_field(const DiagonalMetric& m, FamilyTag which, const FamilyParams& params) {
  require_tag(params, which);
  const int i = static_cast<int>(which) - static_cast<int>(FamilyTag::FRAME_FIELD_E1);
  if (i < 0 || i > 2) throw std::invalid_argument(to_string(which) + " is not a frame-field family");
  const auto fields = killing_frame_fields(m);
  if (std::find(fields.begin(), fields.end(), i + 1) == fields.end()) {
    throw CaseNotApplicable(to_string(which), "E" + std::to_string(i + 1) + " is not Killing for this metric");
  }
  FrameVectorField v;
  v[i] = ScalarField::constant(params.values[0]);
  return v;
}

FrameVectorField generate(const DiagonalMetric& m, const FamilyParams& params, const GenerateOptions& opts) {
  switch (params.tag) {
    case FamilyTag::TE1_I:
    case FamilyTag::TE1_II:
    case FamilyTag::TE1_III:
    case FamilyTag::TE1_IV:
    case FamilyTag::TE1_V:
      return generate_te1(m, params.tag, params, opts);
    case FamilyTag::SPLIT_X1X2K3:
      return generate_split(m, params, opts);
    case FamilyTag::CONST_METRIC:
      return generate_const_metric(m, params, opts);
    case FamilyTag::FRAME_FIELD_E1:
    case FamilyTag::FRAME_FIELD_E2:
    case FamilyTag::FRAME_FIELD_E3:
      return generate_frame_field(m, params.tag, params);
    case FamilyTag::PR1_RESTRICTED:
    case FamilyTag::PR2_RESTRICTED:
      return generate_restricted(m, params.tag, params, opts);
    case FamilyTag::NONE:
      break;
  }
  throw CaseNotApplicable("NONE", "no family to generate");
}

// ---------------------------------------------------------------------------

bool restricted_family_check(const DiagonalMetric& m, const FrameVectorField& v, const RestrictedCheckOptions& opts) {
  bool x1_only = pr1_metric(m);
  bool own_axis = pr2_metric(m);
  for (int i = 0; i < 3; ++i) {
    x1_only = x1_only && only(v[i], kX1);
    own_axis = own_axis && only(v[i], 1u << i);
  }
  if (!x1_only && !own_axis) {
    throw HypothesisViolation("metric and field depend neither on x1 only nor each on its own coordinate");
  }
  const Grid grid{m.domain(), opts.grid};
  if (!is_killing(m, v, grid, opts.residual_tol)) return false;

  auto constant = [&](const ScalarField& f) {
    return expr::is_constant(f, m.domain(), 64, opts.constancy_tol);
  };
  if (x1_only) {
    const auto v1 = constant(v[0]);
    if (!v1.constant) return false;
    if (!constant(m.lame(1) * v[1]).constant || !constant(m.lame(2) * v[2]).constant) return false;
    const bool flat_tail = m.lame(1).dependency_mask() == 0u && m.lame(2).dependency_mask() == 0u;
    return std::fabs(v1.witness) <= opts.constancy_tol || flat_tail;
  }
  for (int i = 0; i < 3; ++i) {
    if (!constant(v[i]).constant) return false;
  }
  return true;
}

}  // namespace diagkill
