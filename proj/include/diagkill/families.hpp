// Classification of diagonal metrics into solved regimes and generators for the
// closed-form Killing families of each regime. All generated fields are in frame
// components; primitives (F, F0, F1, F2) are quadrature-backed univariate leaves.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagkill/expr.hpp"
#include "diagkill/metric.hpp"

namespace diagkill {

enum class FamilyTag {
  TE1_I,
  TE1_II,
  TE1_III,
  TE1_IV,
  TE1_V,
  SPLIT_X1X2K3,
  CONST_METRIC,
  FRAME_FIELD_E1,
  FRAME_FIELD_E2,
  FRAME_FIELD_E3,
  PR1_RESTRICTED,
  PR2_RESTRICTED,
  NONE,
};

std::string to_string(FamilyTag tag);
/// Inverse of to_string; also accepts lower case. Throws std::invalid_argument.
FamilyTag family_tag_from_string(std::string_view name);
std::vector<FamilyTag> all_family_tags();

/// Number of free parameters of the family; 0 for NONE.
int family_dimension(FamilyTag tag);
const std::vector<std::string>& param_names(FamilyTag tag);

struct FamilyParams {
  FamilyTag tag = FamilyTag::NONE;
  std::vector<double> values;

  /// Throws ParamDimensionMismatch unless values.size() == family_dimension(tag).
  static FamilyParams make(FamilyTag tag, std::vector<double> values);
  static FamilyParams zeros(FamilyTag tag);
  /// The i-th unit parameter vector.
  static FamilyParams unit(FamilyTag tag, int i);

  double operator[](std::string_view name) const;
};

struct FamilyDescriptor {
  FamilyTag tag = FamilyTag::NONE;
  std::optional<double> k;               // classifier constant, te1 regime only
  std::vector<int> frame_killing_fields;  // 1-based indices i with E_i Killing
  std::vector<FamilyTag> applicable;      // every family whose hypotheses hold
  std::string reason;                     // set when tag == NONE

  bool admits(FamilyTag t) const;
};

struct ClassifyOptions {
  int samples = 64;
  double constancy_tol = 1e-8;
  /// |k| at or below this counts as zero.
  double zero_threshold = 1e-8;
};

/// E_i is Killing iff f_i depends on x^i at most and the other two scales do
/// not depend on x^i. Decided on variable occurrence.
std::vector<int> killing_frame_fields(const DiagonalMetric& m);

/// k = (f1/f2)^2 [f1'/f1 * f2'/f2 + (f2'/f2)'], derivatives in x1.
ScalarField classifier_k_expression(const DiagonalMetric& m);

FamilyDescriptor classify(const DiagonalMetric& m, const ClassifyOptions& opts = {});

/// The pair (h, l) whose simultaneous constancy is the second branch of the
/// te1 case analysis; both are functions of x1.
struct BranchBProfile {
  ScalarField h;
  ScalarField l;
  expr::ConstancyResult h_constancy;
  expr::ConstancyResult l_constancy;
  bool constant() const { return h_constancy.constant && l_constancy.constant; }
};

BranchBProfile branch_b_profile(const ScalarField& f1, const ScalarField& f2, Interval interval,
                                const ClassifyOptions& opts = {});

struct GenerateOptions {
  /// Base point of every primitive. Unset: 0 when it lies in the domain
  /// interval of the integration axis, otherwise the interval's lower end.
  std::optional<double> base_point;
  double quadrature_tol = 1e-10;
  ClassifyOptions classify;
};

FrameVectorField generate_te1(const DiagonalMetric& m, FamilyTag te1_case, const FamilyParams& params,
                              const GenerateOptions& opts = {});
FrameVectorField generate_split(const DiagonalMetric& m, const FamilyParams& params, const GenerateOptions& opts = {});
/// The split-family formula with caller-supplied primitives F1' = 1/f1, F2' = 1/f2.
FrameVectorField split_family(const ScalarField& F1, const ScalarField& F2, double k3, const FamilyParams& params);
FrameVectorField generate_const_metric(const DiagonalMetric& m, const FamilyParams& params,
                                       const GenerateOptions& opts = {});
/// PR1: (c1, c2/f2, c3/f3) with c1 != 0 only when f2, f3 are constant.
/// PR2: constant components (c1, c2, c3).
FrameVectorField generate_restricted(const DiagonalMetric& m, FamilyTag which, const FamilyParams& params,
                                     const GenerateOptions& opts = {});
/// c E_i.
FrameVectorField generate_frame_field(const DiagonalMetric& m, FamilyTag which, const FamilyParams& params);

/// Dispatches on params.tag. Throws CaseNotApplicable for NONE or a family whose
/// hypotheses fail on m.
FrameVectorField generate(const DiagonalMetric& m, const FamilyParams& params, const GenerateOptions& opts = {});

struct RestrictedCheckOptions {
  std::array<int, 3> grid{5, 5, 5};
  double residual_tol = 1e-7;
  double constancy_tol = 1e-8;
};

/// True iff V is Killing and has the solution form of the restricted family
/// whose hypotheses V and m satisfy. Throws HypothesisViolation when
/// neither the x1-only nor the x^i-only hypothesis holds.
bool restricted_family_check(const DiagonalMetric& m, const FrameVectorField& v,
                             const RestrictedCheckOptions& opts = {});

}  // namespace diagkill
