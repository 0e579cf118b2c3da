#include <cmath>

#include <gtest/gtest.h>

#include "diagkill/errors.hpp"
#include "diagkill/killing.hpp"
#include "support/random_fields.hpp"

namespace diagkill {
namespace {

using expr::eval;

const DiagonalMetric& euclidean() {
  static const DiagonalMetric m = DiagonalMetric::parse("1", "1", "1");
  return m;
}

void expect_residual(const KillingResidual& r, std::array<double, 6> expected, double tol) {
  const auto v = r.values();
  for (int e = 0; e < 6; ++e) EXPECT_NEAR(v[e], expected[e], tol) << "entry " << e;
}

TEST(Residual, RotationIsKilling) {
  const auto v = FrameVectorField::parse({"-x2", "x1", "0"});
  testing::RandomFields gen(1);
  for (int n = 0; n < 10; ++n) {
    const Point p = gen.point();
    expect_residual(residual_frame(euclidean(), v, p), {0, 0, 0, 0, 0, 0}, 0.0);
    expect_residual(residual_coordinate_oracle(euclidean(), v, p), {0, 0, 0, 0, 0, 0}, 0.0);
  }
}

TEST(Residual, ShearHasUnitOffDiagonal) {
  const auto v = FrameVectorField::parse({"x2", "0", "0"});
  const Point p{0.3, -0.2, 0.8};
  expect_residual(residual_frame(euclidean(), v, p), {0, 0, 0, 1, 0, 0}, 0.0);
  expect_residual(residual_coordinate_oracle(euclidean(), v, p), {0, 0, 0, 1, 0, 0}, 0.0);
  EXPECT_DOUBLE_EQ(max_residual_grid(euclidean(), v, Grid::standard()).value, 1.0);
}

TEST(Residual, DiagonalEntriesCarryTheHalf) {
  // V = x1 d1 on flat space: (L_V g)(E1,E1) = 2, so r11 = 1.
  const auto v = FrameVectorField::parse({"x1", "0", "0"});
  expect_residual(residual_frame(euclidean(), v, {0.1, 0.2, 0.3}), {1, 0, 0, 0, 0, 0}, 0.0);
  expect_residual(residual_coordinate_oracle(euclidean(), v, {0.1, 0.2, 0.3}), {1, 0, 0, 0, 0, 0}, 1e-15);
}

TEST(Residual, FirstExampleFrameField) {
  const auto m = DiagonalMetric::parse("exp(x1)", "exp(-(x2+x3)/2)", "exp(-(x2*x3)/2)");
  const auto v = FrameVectorField::parse({"1", "0", "0"});
  testing::RandomFields gen(2);
  for (int n = 0; n < 20; ++n) {
    const Point p = gen.point();
    EXPECT_EQ(residual_frame(m, v, p).max_abs(), 0.0);
    EXPECT_LE(residual_coordinate_oracle(m, v, p).max_abs(), 1e-14);
  }
}

TEST(Residual, ZeroFieldOnAnyMetric) {
  testing::RandomFields gen(4);
  for (int n = 0; n < 10; ++n) {
    const auto m = gen.metric();
    const Point p = gen.point();
    EXPECT_EQ(residual_frame(m, FrameVectorField::zero(), p).max_abs(), 0.0);
    EXPECT_EQ(residual_coordinate_oracle(m, FrameVectorField::zero(), p).max_abs(), 0.0);
  }
}

TEST(Residual, SymmetricAccess) {
  KillingResidual r{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(r.at(0, 1), r.at(1, 0));
  EXPECT_EQ(r.at(2, 0), 6);
  EXPECT_EQ(r.at(1, 2), 5);
  EXPECT_EQ(r.at(2, 2), 3);
  EXPECT_EQ((KillingResidual{0, -7, 0, 0, 0, 0}).max_abs(), 7);
}

TEST(OracleProperty, FrameAndCoordinateFormsAgree) {
  testing::RandomFields gen(2024);
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const auto m = gen.metric();
    const auto v = gen.field();
    const Point p = gen.point(-1.5, 1.5);
    const auto a = residual_frame(m, v, p).values();
    const auto b = residual_coordinate_oracle(m, v, p).values();
    for (int e = 0; e < 6; ++e) worst = std::max(worst, std::fabs(a[e] - b[e]));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(OracleProperty, LinearInTheField) {
  testing::RandomFields gen(31);
  for (int n = 0; n < 50; ++n) {
    const auto m = gen.metric();
    const auto v = gen.field();
    const auto w = gen.field();
    const double a = gen.uniform(-3, 3), b = gen.uniform(-3, 3);
    const Point p = gen.point();
    const auto lhs = residual_frame(m, a * v + b * w, p).values();
    const auto rv = residual_frame(m, v, p).values();
    const auto rw = residual_frame(m, w, p).values();
    for (int e = 0; e < 6; ++e) {
      EXPECT_NEAR(lhs[e], a * rv[e] + b * rw[e], 1e-10 * std::max(1.0, std::fabs(lhs[e])));
    }
  }
}

TEST(Grid, MaxAndWorstPoint) {
  const auto v = FrameVectorField::parse({"0.5*x1^2", "0", "0"});  // r11 = x1
  const auto g = max_residual_grid(euclidean(), v, Grid::standard());
  EXPECT_DOUBLE_EQ(g.value, 1.0);
  EXPECT_EQ(std::fabs(g.worst[0]), 1.0);
}

TEST(Grid, ConstantMetricExampleField) {
  // k1 = k2 = k3 = 1 specialization of the rotation example.
  const auto v = FrameVectorField::parse({"-x2+x3", "x1-x3", "-x1+x2"});
  EXPECT_LE(max_residual_grid(euclidean(), v, Grid::standard()).value, 1e-12);
}

TEST(Grid, EvaluationErrorsCarryThePoint) {
  const auto v = FrameVectorField::parse({"1/x2", "0", "0"});
  try {
    max_residual_grid(euclidean(), v, Grid::standard());
    FAIL() << "expected EvalDomainError";
  } catch (const EvalDomainError& e) {
    EXPECT_EQ(e.point()[1], 0.0);
  }
}

TEST(IsKilling, TranslationOnExponentialX1Metric) {
  // g = e^x1 dx1^2 + e^(2 x1) dx2^2 + e^(3 x1) dx3^2, V = d2 + d3.
  const auto m = DiagonalMetric::parse("exp(-x1/2)", "exp(-x1)", "exp(-3*x1/2)");
  const auto v = coordinate_to_frame(CoordinateVectorField::parse({"0", "1", "1"}), m);
  EXPECT_TRUE(is_killing(m, v, Grid::standard(), 1e-7));
}

TEST(IsKilling, UnitFrameSumOnOwnAxisMetric) {
  const auto m = DiagonalMetric::parse("exp(x1)", "exp(x2)", "exp(x3)");
  const auto v = FrameVectorField::parse({"1", "1", "1"});
  EXPECT_TRUE(is_killing(m, v, Grid::standard(), 1e-7));
  const auto perturbed = FrameVectorField::parse({"1", "1 + 0.1*x1", "1"});
  EXPECT_FALSE(is_killing(m, perturbed, Grid::standard(), 1e-7));
  EXPECT_GT(max_residual_grid(m, perturbed, Grid::standard()).value, 1e-3);
  EXPECT_GT(max_residual_grid_oracle(m, perturbed, Grid::standard()).value, 1e-3);
}

TEST(IsKilling, ToleranceMustBePositive) {
  EXPECT_THROW(is_killing(euclidean(), FrameVectorField::zero(), Grid::standard(), 0.0), std::invalid_argument);
}

TEST(Bracket, SelfBracketVanishes) {
  testing::RandomFields gen(8);
  for (int n = 0; n < 10; ++n) {
    const auto m = gen.metric();
    const auto v = gen.field();
    const auto b = lie_bracket(m, v, v);
    const Point p = gen.point();
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(eval(b[k], p), 0.0, 1e-12);
  }
}

TEST(Bracket, RotationWithTranslation) {
  const auto rot = FrameVectorField::parse({"-x2", "x1", "0"});
  const auto t1 = FrameVectorField::parse({"1", "0", "0"});
  const auto b = lie_bracket(euclidean(), rot, t1);
  const Point p{0.4, -0.1, 0.6};
  EXPECT_DOUBLE_EQ(eval(b[0], p), 0.0);
  EXPECT_DOUBLE_EQ(eval(b[1], p), -1.0);
  EXPECT_DOUBLE_EQ(eval(b[2], p), 0.0);
}

TEST(Bracket, AntisymmetricOnRandomFields) {
  testing::RandomFields gen(9);
  for (int n = 0; n < 10; ++n) {
    const auto m = gen.metric();
    const auto v = gen.field(), w = gen.field();
    const auto a = lie_bracket(m, v, w), b = lie_bracket(m, w, v);
    const Point p = gen.point();
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(eval(a[k], p), -eval(b[k], p), 1e-10 * (1 + std::fabs(eval(a[k], p))));
  }
}

TEST(Bracket, KillingFieldsCloseOnNonFlatMetric) {
  // E3 and the unit-frame translation pieces on an own-axis metric.
  const auto m = DiagonalMetric::parse("exp(x1)", "exp(x2)", "1");
  const auto v = FrameVectorField::parse({"x3 - exp(-x2)", "x3 + exp(-x1)", "exp(-x1) + exp(-x2)"});
  const auto w = FrameVectorField::parse({"0", "0", "1"});
  ASSERT_LE(max_residual_grid(m, v, Grid::standard()).value, 1e-9);
  ASSERT_LE(max_residual_grid(m, w, Grid::standard()).value, 1e-9);
  EXPECT_LE(max_residual_grid(m, lie_bracket(m, v, w), Grid::standard()).value, 1e-6);
}

}  // namespace
}  // namespace diagkill
