#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "diagkill/errors.hpp"
#include "diagkill/families.hpp"
#include "diagkill/killing.hpp"
#include "support/random_fields.hpp"

namespace diagkill {
namespace {

using expr::eval;

// A metric on which each family's hypotheses hold.
DiagonalMetric representative(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::TE1_I: return DiagonalMetric::parse("1 + 0.2*x1^2", "exp(0.3*x1)", "1.5");
    case FamilyTag::TE1_II: return DiagonalMetric::parse("exp(x1)", "2", "0.5");
    case FamilyTag::TE1_III: return DiagonalMetric::parse("1", "exp(x1)", "1");
    case FamilyTag::TE1_IV: return DiagonalMetric::parse("(exp(x1) + exp(-x1))/2", "(exp(x1) + exp(-x1))/2", "1");
    case FamilyTag::TE1_V: return DiagonalMetric::parse("cos(x1)", "cos(x1)", "1");
    case FamilyTag::SPLIT_X1X2K3: return DiagonalMetric::parse("exp(0.5*x1)", "1 + x2^2", "2");
    case FamilyTag::CONST_METRIC: return DiagonalMetric::parse("2", "3", "0.5");
    case FamilyTag::FRAME_FIELD_E1:
    case FamilyTag::FRAME_FIELD_E2:
    case FamilyTag::FRAME_FIELD_E3: return DiagonalMetric::parse("exp(x1)", "exp(-x2)", "1 + x3^2");
    case FamilyTag::PR1_RESTRICTED: return DiagonalMetric::parse("1 + x1^2", "exp(x1)", "2 + sin(x1)");
    case FamilyTag::PR2_RESTRICTED: return DiagonalMetric::parse("exp(x1)", "2 + cos(x2)", "1 + x3^2");
    case FamilyTag::NONE: break;
  }
  return DiagonalMetric::parse("1", "1", "1");
}

std::vector<FamilyTag> generating_tags() {
  std::vector<FamilyTag> tags = all_family_tags();
  tags.pop_back();  // NONE
  return tags;
}

TEST(Tags, NamesRoundTrip) {
  for (FamilyTag t : all_family_tags()) EXPECT_EQ(family_tag_from_string(to_string(t)), t);
  EXPECT_EQ(family_tag_from_string("te1-iv"), FamilyTag::TE1_IV);
  EXPECT_EQ(family_tag_from_string("const_metric"), FamilyTag::CONST_METRIC);
  EXPECT_THROW(family_tag_from_string("TE1_VI"), std::invalid_argument);
}

TEST(Tags, Dimensions) {
  const std::map<FamilyTag, int> expected = {
      {FamilyTag::TE1_I, 2},          {FamilyTag::TE1_II, 6},         {FamilyTag::TE1_III, 4},
      {FamilyTag::TE1_IV, 4},         {FamilyTag::TE1_V, 4},          {FamilyTag::SPLIT_X1X2K3, 6},
      {FamilyTag::CONST_METRIC, 6},   {FamilyTag::FRAME_FIELD_E1, 1}, {FamilyTag::FRAME_FIELD_E2, 1},
      {FamilyTag::FRAME_FIELD_E3, 1}, {FamilyTag::PR1_RESTRICTED, 3}, {FamilyTag::PR2_RESTRICTED, 3},
      {FamilyTag::NONE, 0},
  };
  for (const auto& [tag, dim] : expected) {
    EXPECT_EQ(family_dimension(tag), dim) << to_string(tag);
    EXPECT_EQ(param_names(tag).size(), static_cast<std::size_t>(dim));
  }
}

TEST(Params, MakeAndLookup) {
  const auto p = FamilyParams::make(FamilyTag::SPLIT_X1X2K3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(p["b1"], 3);
  EXPECT_EQ(p["c"], 6);
  EXPECT_THROW(p["c7"], std::out_of_range);
  EXPECT_THROW(FamilyParams::make(FamilyTag::TE1_I, {1, 2, 3}), ParamDimensionMismatch);
  EXPECT_EQ(FamilyParams::unit(FamilyTag::TE1_III, 2).values, (std::vector<double>{0, 0, 1, 0}));
}

TEST(Classify, ConstantMetric) {
  const auto d = classify(DiagonalMetric::parse("2", "3", "0.5"));
  EXPECT_EQ(d.tag, FamilyTag::CONST_METRIC);
  EXPECT_EQ(d.frame_killing_fields, (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(d.admits(FamilyTag::TE1_II));
  EXPECT_TRUE(d.admits(FamilyTag::PR2_RESTRICTED));
  EXPECT_TRUE(d.reason.empty());
}

TEST(Classify, Te1CasesFromTheClassifierConstant) {
  // k = (f1/f2)^2 [f1'/f1 f2'/f2 + (f2'/f2)'] by hand:
  //   cosh, cosh: tanh^2 + sech^2 = 1;  cos, cos: tan^2 - sec^2 = -1;  1, e^x1: 0.
  auto d = classify(representative(FamilyTag::TE1_IV));
  EXPECT_EQ(d.tag, FamilyTag::TE1_IV);
  ASSERT_TRUE(d.k.has_value());
  EXPECT_NEAR(*d.k, 1.0, 1e-10);

  d = classify(representative(FamilyTag::TE1_V));
  EXPECT_EQ(d.tag, FamilyTag::TE1_V);
  EXPECT_NEAR(*d.k, -1.0, 1e-10);

  d = classify(representative(FamilyTag::TE1_III));
  EXPECT_EQ(d.tag, FamilyTag::TE1_III);
  EXPECT_NEAR(*d.k, 0.0, 1e-12);

  d = classify(representative(FamilyTag::TE1_II));
  EXPECT_EQ(d.tag, FamilyTag::TE1_II);
  EXPECT_FALSE(d.k.has_value());
  EXPECT_TRUE(d.admits(FamilyTag::TE1_I));
}

TEST(Classify, NonTrigonometricNegativeConstant) {
  // f1 = sqrt(8 - e^(-2 x1)), f2 = e^(-x1): (f2'/f2)' = 0 and f1 f1' = e^(-2 x1), so k = -1.
  const auto d = classify(DiagonalMetric::parse("sqrt(8 - exp(-2*x1))", "exp(-x1)", "1"));
  EXPECT_EQ(d.tag, FamilyTag::TE1_V);
  EXPECT_NEAR(*d.k, -1.0, 1e-9);
  EXPECT_EQ(classify(DiagonalMetric::parse("2", "exp(x1)", "1")).tag, FamilyTag::TE1_III);
}

TEST(Classify, ClassifierExpressionAgreesWithFiniteDifferences) {
  testing::RandomFields gen(17);
  for (int n = 0; n < 20; ++n) {
    const DiagonalMetric m(gen.scale(1u), gen.scale(1u), ScalarField::constant(1.0), Box::cube(-1.5, 1.5));
    const double x = gen.uniform(-1, 1), h = 1e-4;
    auto f = [&](int i, double t) { return eval(m.lame(i), {t, 0, 0}); };
    auto u = [&](double t) { return (f(1, t + h) - f(1, t - h)) / (2 * h) / f(1, t); };
    const double f1p = (f(0, x + h) - f(0, x - h)) / (2 * h);
    const double up = (u(x + h) - u(x - h)) / (2 * h);
    const double k = std::pow(f(0, x) / f(1, x), 2) * (f1p / f(0, x) * u(x) + up);
    EXPECT_NEAR(eval(classifier_k_expression(m), {x, 0, 0}), k, 1e-5 * (1 + std::fabs(k)));
  }
}

TEST(Classify, NonconstantClassifier) {
  const auto d = classify(DiagonalMetric::parse("1", "1 + x1^2", "1"));
  EXPECT_EQ(d.tag, FamilyTag::NONE);
  EXPECT_EQ(d.reason, "k nonconstant");
  EXPECT_TRUE(d.admits(FamilyTag::TE1_I));
  EXPECT_FALSE(d.k.has_value());
}

TEST(Classify, NoRegime) {
  const auto d = classify(DiagonalMetric::parse("exp(x1)", "exp(-(x2+x3)/2)", "exp(-(x2*x3)/2)"));
  EXPECT_EQ(d.tag, FamilyTag::NONE);
  EXPECT_EQ(d.reason, "no solved regime matches the metric");
  EXPECT_EQ(d.frame_killing_fields, (std::vector<int>{1}));
  EXPECT_EQ(d.applicable, (std::vector<FamilyTag>{FamilyTag::FRAME_FIELD_E1}));
}

TEST(Classify, Split) {
  const auto d = classify(representative(FamilyTag::SPLIT_X1X2K3));
  EXPECT_EQ(d.tag, FamilyTag::SPLIT_X1X2K3);
  EXPECT_EQ(d.frame_killing_fields, (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(d.admits(FamilyTag::PR2_RESTRICTED));
  EXPECT_FALSE(d.admits(FamilyTag::TE1_I));
}

TEST(Generate, ConstantMetricMatchesHandDerivedField) {
  const auto m = DiagonalMetric::parse("2", "3", "0.5");
  const auto v = generate(m, FamilyParams::make(FamilyTag::CONST_METRIC, {1, 0, 0, 0, 0, 0}));
  // a1 alone rotates in the x1-x2 plane: V1 = -x2/k2, V2 = x1/k1.
  const Point p{0.3, -0.7, 0.2};
  EXPECT_NEAR(eval(v[0], p), 0.7 / 3, 1e-15);
  EXPECT_NEAR(eval(v[1], p), 0.3 / 2, 1e-15);
  EXPECT_EQ(eval(v[2], p), 0.0);
}

TEST(Generate, SplitOnUnitMetricIsEuclideanMotion) {
  // f = 1 gives F1 = x1, F2 = x2: c rotates in x1-x2, a1 and b1 rotate through x3.
  const auto m = DiagonalMetric::parse("1", "1", "1");
  const auto v = generate(m, FamilyParams::make(FamilyTag::SPLIT_X1X2K3, {1, 0, 0, 0, 0, 1}));
  const Point p{0.4, -0.5, 0.9};
  EXPECT_NEAR(eval(v[0], p), 0.5 + 0.9, 1e-12);
  EXPECT_NEAR(eval(v[1], p), 0.4, 1e-12);
  EXPECT_NEAR(eval(v[2], p), -0.4, 1e-12);
}

TEST(Generate, Te1TranslationPieces) {
  const auto m = representative(FamilyTag::TE1_I);
  const auto v = generate(m, FamilyParams::make(FamilyTag::TE1_I, {2, 3}));
  const Point p{0.5, 0, 0};
  EXPECT_NEAR(eval(v[1], p), 2 / std::exp(0.15), 1e-14);
  EXPECT_EQ(eval(v[2], p), 3.0);
  EXPECT_TRUE(v[0].is_constant(0.0));
}

TEST(Generate, FrameField) {
  const auto m = representative(FamilyTag::FRAME_FIELD_E2);
  const auto v = generate(m, FamilyParams::make(FamilyTag::FRAME_FIELD_E2, {2.5}));
  EXPECT_TRUE(v[1].is_constant(2.5));
  EXPECT_THROW(generate(DiagonalMetric::parse("exp(x1)", "exp(x1)", "1"), FamilyParams::make(FamilyTag::FRAME_FIELD_E2, {1})),
               CaseNotApplicable);
}

TEST(Generate, Errors) {
  const auto te1_iv = representative(FamilyTag::TE1_IV);
  EXPECT_THROW(generate(te1_iv, FamilyParams::zeros(FamilyTag::TE1_V)), CaseNotApplicable);
  EXPECT_THROW(generate(te1_iv, FamilyParams::zeros(FamilyTag::NONE)), CaseNotApplicable);
  EXPECT_THROW(generate(te1_iv, FamilyParams::zeros(FamilyTag::SPLIT_X1X2K3)), CaseNotApplicable);
  EXPECT_THROW(generate(te1_iv, FamilyParams{FamilyTag::TE1_IV, {1, 2}}), ParamDimensionMismatch);
  EXPECT_THROW(generate(DiagonalMetric::parse("1", "1 + x1^2", "1"), FamilyParams::zeros(FamilyTag::TE1_III)),
               CaseNotApplicable);
  EXPECT_THROW(generate(representative(FamilyTag::PR1_RESTRICTED),
                        FamilyParams::make(FamilyTag::PR1_RESTRICTED, {1, 0, 0})),
               CaseNotApplicable);
}

TEST(Generate, Te1FirstCaseIsScaledSecondFrameField) {
  const auto m = DiagonalMetric::parse("exp(x1)", "1 + 0.5*x1^2", "3");
  const auto v = generate(m, FamilyParams::make(FamilyTag::TE1_I, {1, 0}));
  const Point p{0.6, -0.2, 0.4};
  EXPECT_TRUE(v[0].is_constant(0.0));
  EXPECT_NEAR(eval(v[1], p), 1 / 1.18, 1e-15);
  EXPECT_TRUE(v[2].is_constant(0.0));
  EXPECT_LE(max_residual_grid(m, v, Grid::standard()).value, 1e-15);
}

TEST(Generate, Te1SecondCaseOnFlatSpaceIsRotation) {
  const auto m = DiagonalMetric::parse("1", "1", "1");
  const auto v = generate(m, FamilyParams::make(FamilyTag::TE1_II, {1, 0, 0, 0, 0, 0}));
  const Point p{0.3, 0.8, -0.5};
  EXPECT_NEAR(eval(v[0], p), 0.8, 1e-15);
  EXPECT_NEAR(eval(v[1], p), -0.3, 1e-12);
  EXPECT_EQ(eval(v[2], p), 0.0);
  EXPECT_LE(max_residual_grid(m, v, Grid::standard()).value, 1e-12);
}

TEST(Generate, Te1FourthCaseOnEqualExponentials) {
  const auto m = DiagonalMetric::parse("exp(x1)", "exp(x1)", "1");
  const auto v = generate(m, FamilyParams::make(FamilyTag::TE1_IV, {1, 0, 0, 0}));
  for (const Point& p : {Point{0.2, 0.7, 0.1}, Point{-0.9, -0.4, 0.5}}) {
    EXPECT_NEAR(eval(v[0], p), std::cos(p[1]), 1e-14);
    EXPECT_NEAR(eval(v[1], p), std::sin(p[1]), 1e-14);
    EXPECT_EQ(eval(v[2], p), 0.0);
  }
  EXPECT_LE(max_residual_grid(m, v, Grid::standard()).value, 1e-7);
}

TEST(Generate, SplitExponentialMemberUpToConstants) {
  const auto m = DiagonalMetric::parse("exp(x1)", "exp(x2)", "1");
  const auto v = generate(m, FamilyParams::make(FamilyTag::SPLIT_X1X2K3, {1, 0, 1, 0, 0, -1}));
  // Compare differences between points so the base-point constants cancel.
  // With F_i = -e^(-x_i), V3 = -F1 - F2 = e^(-x1) + e^(-x2).
  const Point a{0.1, -0.3, 0.4}, b{-0.6, 0.5, -0.2};
  auto want = [](const Point& p) {
    return std::array<double, 3>{p[2] - std::exp(-p[1]), p[2] + std::exp(-p[0]), std::exp(-p[0]) + std::exp(-p[1])};
  };
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(eval(v[k], a) - eval(v[k], b), want(a)[k] - want(b)[k], 1e-9);
  }
  EXPECT_LE(max_residual_grid(m, v, Grid::standard()).value, 1e-7);
  const auto flipped = FrameVectorField::parse({"x3 - exp(-x2)", "x3 + exp(-x1)", "-exp(-x1) - exp(-x2)"});
  EXPECT_GT(max_residual_grid(m, flipped, Grid::standard()).value, 1e-3);
  const auto zero = generate(m, FamilyParams::zeros(FamilyTag::SPLIT_X1X2K3));
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(zero[k].is_constant(0.0));
}

TEST(Generate, ConstantMetricMatchesRotationExample) {
  // W = (k1^2(-k3 x2 + k2 x3), k2^2(k3 x1 - k1 x3), k3^2(-k2 x1 + k1 x2)) in coordinates.
  const double k1 = 2, k2 = 3, k3 = 0.5, a = k1 * k2 * k3;
  const auto m = DiagonalMetric::parse("2", "3", "0.5");
  const auto v = frame_to_coordinate(generate(m, FamilyParams::make(FamilyTag::CONST_METRIC, {a, a, a, 0, 0, 0})), m);
  testing::RandomFields gen(4);
  for (int n = 0; n < 10; ++n) {
    const Point p = gen.point();
    EXPECT_NEAR(eval(v[0], p), k1 * k1 * (-k3 * p[1] + k2 * p[2]), 1e-13);
    EXPECT_NEAR(eval(v[1], p), k2 * k2 * (k3 * p[0] - k1 * p[2]), 1e-13);
    EXPECT_NEAR(eval(v[2], p), k3 * k3 * (-k2 * p[0] + k1 * p[1]), 1e-13);
  }
  const auto t = generate(m, FamilyParams::make(FamilyTag::CONST_METRIC, {0, 0, 0, 1, 1, 1}));
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(t[k].is_constant(1.0));
}

TEST(FrameFields, DependenceOnAnotherAxisExcludesBoth) {
  const auto m = DiagonalMetric::parse("exp(x2)", "2", "3");
  EXPECT_EQ(killing_frame_fields(m), (std::vector<int>{3}));
  for (int i = 0; i < 3; ++i) {
    FrameVectorField e;
    e[i] = ScalarField::constant(1.0);
    const double r = max_residual_grid(m, e, Grid::standard()).value;
    if (i == 2) {
      EXPECT_EQ(r, 0.0);
    } else {
      EXPECT_GT(r, 1e-3) << "E" << i + 1;
    }
  }
}

// Every member of every family is Killing on its representative metric.
class Soundness : public ::testing::TestWithParam<FamilyTag> {};

TEST_P(Soundness, RandomMembersAreKilling) {
  const FamilyTag tag = GetParam();
  const auto m = representative(tag);
  testing::RandomFields gen(static_cast<std::uint64_t>(tag) + 100);
  for (int n = 0; n < 100; ++n) {
    FamilyParams p = FamilyParams::zeros(tag);
    for (double& c : p.values) c = gen.uniform(-2, 2);
    if (tag == FamilyTag::PR1_RESTRICTED) p.values[0] = 0.0;
    const auto v = generate(m, p);
    const Point x = gen.point();
    EXPECT_LE(residual_frame(m, v, x).max_abs(), 1e-7) << "draw " << n;
    EXPECT_LE(residual_coordinate_oracle(m, v, x).max_abs(), 1e-7) << "draw " << n;
  }
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, Soundness, ::testing::ValuesIn(generating_tags()),
                         [](const auto& info) { return to_string(info.param); });

// Field values at sample points, stacked: one column per unit parameter.
Eigen::MatrixXd sample_matrix(const DiagonalMetric& m, FamilyTag tag, const GenerateOptions& opts = {}) {
  testing::RandomFields gen(7);
  std::vector<Point> points;
  for (int s = 0; s < 12; ++s) points.push_back(gen.point());
  const int dim = family_dimension(tag);
  Eigen::MatrixXd a(3 * static_cast<int>(points.size()), dim);
  for (int c = 0; c < dim; ++c) {
    const auto v = generate(m, FamilyParams::unit(tag, c), opts);
    for (std::size_t s = 0; s < points.size(); ++s) {
      for (int k = 0; k < 3; ++k) a(3 * static_cast<int>(s) + k, c) = eval(v[k], points[s]);
    }
  }
  return a;
}

TEST(Rank, UnitParametersAreIndependent) {
  for (FamilyTag tag : generating_tags()) {
    if (tag == FamilyTag::PR1_RESTRICTED) continue;  // c1 is pinned to zero on non-flat tails
    const Eigen::MatrixXd a = sample_matrix(representative(tag), tag);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    svd.setThreshold(1e-9);
    EXPECT_EQ(svd.rank(), family_dimension(tag)) << to_string(tag);
  }
  const auto flat_tail = DiagonalMetric::parse("exp(x1)", "2", "3");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sample_matrix(flat_tail, FamilyTag::PR1_RESTRICTED));
  EXPECT_EQ(svd.rank(), 3);
}

TEST(Linearity, DifferenceOfMembersIsAMember) {
  for (FamilyTag tag : generating_tags()) {
    if (tag == FamilyTag::PR1_RESTRICTED) continue;
    const auto m = representative(tag);
    testing::RandomFields gen(static_cast<std::uint64_t>(tag) + 300);
    FamilyParams p = FamilyParams::zeros(tag), q = FamilyParams::zeros(tag), d = FamilyParams::zeros(tag);
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      p.values[i] = gen.uniform(-2, 2);
      q.values[i] = gen.uniform(-2, 2);
      d.values[i] = p.values[i] - q.values[i];
    }
    const auto vp = generate(m, p), vq = generate(m, q), vd = generate(m, d);
    for (int s = 0; s < 10; ++s) {
      const Point x = gen.point();
      for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(eval(vp[k], x) - eval(vq[k], x), eval(vd[k], x), 1e-10) << to_string(tag);
      }
    }
  }
}

TEST(BasePoint, MovingItStaysInsideTheFamily) {
  for (FamilyTag tag : {FamilyTag::TE1_II, FamilyTag::TE1_III, FamilyTag::TE1_IV, FamilyTag::TE1_V,
                        FamilyTag::SPLIT_X1X2K3}) {
    const auto m = representative(tag);
    GenerateOptions moved;
    moved.base_point = 0.4;
    const Eigen::MatrixXd a = sample_matrix(m, tag);
    const Eigen::MatrixXd b = sample_matrix(m, tag, moved);
    // Each moved unit field is a combination of the unmoved ones.
    for (int c = 0; c < b.cols(); ++c) {
      const Eigen::VectorXd coeffs = a.colPivHouseholderQr().solve(b.col(c));
      EXPECT_LE((a * coeffs - b.col(c)).norm(), 1e-8) << to_string(tag) << " column " << c;
    }
  }
}

TEST(BasePoint, DefaultsToZeroOrLowerEnd) {
  const auto inside = DiagonalMetric::parse("exp(x1)", "2", "0.5");
  const auto v = generate(inside, FamilyParams::make(FamilyTag::TE1_II, {1, 0, 0, 0, 0, 0}));
  // c1 feeds -k2 F into V2, F(0) = 0.
  EXPECT_NEAR(eval(v[1], {0, 0, 0}), 0.0, 1e-14);

  const auto outside = DiagonalMetric::parse("exp(x1)", "2", "0.5", Box{{0.5, -1, -1}, {2, 1, 1}});
  const auto w = generate(outside, FamilyParams::make(FamilyTag::TE1_II, {1, 0, 0, 0, 0, 0}));
  EXPECT_NEAR(eval(w[1], {0.5, 0, 0}), 0.0, 1e-14);
  EXPECT_NEAR(eval(w[1], {1.5, 0, 0}), -2 * (std::exp(-0.5) - std::exp(-1.5)), 1e-9);
}

TEST(BranchB, ExponentialProfilesAreConstant) {
  for (double lambda : {0.5, 1.0, -0.7}) {
    const auto f = expr::exp(lambda * expr::x1());
    const auto p = branch_b_profile(f, f, Interval{-1, 1});
    ASSERT_TRUE(p.constant());
    EXPECT_NEAR(p.h_constancy.witness, lambda * lambda, 1e-12);
    EXPECT_NEAR(p.l_constancy.witness, -lambda * lambda, 1e-12);
  }
}

TEST(BranchB, NonExponentialProfileIsNot) {
  const auto p = branch_b_profile(ScalarField::constant(1.0), 1.0 + expr::pow(expr::x1(), 2.0), Interval{-1, 1});
  EXPECT_FALSE(p.constant());
  EXPECT_THROW(branch_b_profile(expr::x2(), ScalarField::constant(1.0), Interval{-1, 1}), HypothesisViolation);
}

TEST(Restricted, X1OnlyFamily) {
  const auto m = representative(FamilyTag::PR1_RESTRICTED);
  const auto v = generate(m, FamilyParams::make(FamilyTag::PR1_RESTRICTED, {0, 1.5, -2}));
  EXPECT_TRUE(restricted_family_check(m, v));
  // A nonzero first component is Killing only with a flat tail.
  const auto shifted = FrameVectorField::parse({"1", "0", "0"});
  EXPECT_FALSE(restricted_family_check(m, shifted));
  const auto flat = DiagonalMetric::parse("exp(x1)", "2", "3");
  EXPECT_TRUE(restricted_family_check(flat, shifted));
  EXPECT_FALSE(restricted_family_check(m, FrameVectorField::parse({"0", "x1", "0"})));
}

TEST(Restricted, WorkedExampleMetrics) {
  // g = e^x1 dx1^2 + e^(2 x1) dx2^2 + e^(3 x1) dx3^2 with V = d2 + d3.
  const auto pr1 = DiagonalMetric::parse("exp(-x1/2)", "exp(-x1)", "exp(-3*x1/2)");
  EXPECT_TRUE(restricted_family_check(pr1, coordinate_to_frame(CoordinateVectorField::parse({"0", "1", "1"}), pr1)));
  // g = sum e^(-2 x^i) (dx^i)^2 with V = sum e^(x^i) d_i, i.e. E1 + E2 + E3.
  const auto pr2 = DiagonalMetric::parse("exp(x1)", "exp(x2)", "exp(x3)");
  EXPECT_TRUE(restricted_family_check(pr2, FrameVectorField::parse({"1", "1", "1"})));
  EXPECT_FALSE(restricted_family_check(pr2, FrameVectorField::parse({"x1", "1", "1"})));
}

TEST(Restricted, OwnAxisFamily) {
  const auto m = representative(FamilyTag::PR2_RESTRICTED);
  EXPECT_TRUE(restricted_family_check(m, FrameVectorField::parse({"1", "-2", "0.5"})));
  EXPECT_FALSE(restricted_family_check(m, FrameVectorField::parse({"x1", "0", "0"})));
}

TEST(Restricted, HypothesisViolation) {
  const auto m = DiagonalMetric::parse("exp(x2)", "1", "1");
  EXPECT_THROW(restricted_family_check(m, FrameVectorField::parse({"1", "0", "0"})), HypothesisViolation);
  const auto pr2 = representative(FamilyTag::PR2_RESTRICTED);
  EXPECT_THROW(restricted_family_check(pr2, FrameVectorField::parse({"x2", "0", "0"})), HypothesisViolation);
}

}  // namespace
}  // namespace diagkill
