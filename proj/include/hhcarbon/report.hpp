#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "hhcarbon/regression.hpp"

namespace hhcarbon {

using Json = nlohmann::ordered_json;

/// Two-sided normal-approximation significance: 3 stars at 1%, 2 at 5%, 1 at 10%.
int significance_stars(double estimate, double std_error);

/// Machine-readable fit, coefficients keyed by label, full double precision.
Json fit_to_json(const FitResult& fit, const RegressionSpec& spec);

/// Restores what effect curves need: labels, coefficients, standard errors,
/// regressor means and the level constant. Residuals are not stored.
FitResult fit_from_json(const Json& j);

Json identity_to_json(const IdentityReport& report, Estimator estimator);

struct ReportColumn {
  std::string title;  // e.g. "(2) FE"
  RegressionSpec spec;
  FitResult fit;
};

/// Aligned text table: one coefficient row and one standard-error row per
/// regressor, then Province / Year / Observations / Adjusted R^2.
/// Dummy coefficients are summarised by the Province and Year rows.
std::string format_fit_table(const std::vector<ReportColumn>& columns);

}  // namespace hhcarbon
