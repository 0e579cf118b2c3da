// Text export of frame fields. Quadrature-backed primitives have no DSL form, so
// each one is written as a table of values on evenly spaced knots spanning the
// domain interval of its variable, together with the DSL of its exact
// derivative. Import rebuilds them as clamped cubic splines.
#pragma once

#include "json.hpp"

#include "diagkill/geometry.hpp"
#include "diagkill/metric.hpp"

namespace diagkill {

inline constexpr int kExportKnots = 129;

/// {"frame": [3 DSL strings], "tables": [{name, variable, knots, values, derivative}]}
nlohmann::ordered_json export_field(const FrameVectorField& v, const Box& box, int knots = kExportKnots);

/// Inverse of export_field. Throws SpecError on a malformed document.
FrameVectorField import_field(const nlohmann::json& doc);

}  // namespace diagkill
