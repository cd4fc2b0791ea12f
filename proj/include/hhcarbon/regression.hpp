#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhcarbon/intensity.hpp"
#include "hhcarbon/record.hpp"

namespace hhcarbon {

enum class Outcome { LnEnergy, LnCarbon, LnEfficiency };
enum class Estimator { PooledOls, WithinFe };
enum class SeType { Classical, ClusterHousehold };

std::string_view to_string(Outcome o);    // "energy", "carbon", "efficiency"
std::string_view to_string(Estimator e);  // "OLS", "FE"
std::string_view to_string(SeType s);     // "classical", "cluster"
std::optional<Outcome> parse_outcome(std::string_view s);
std::optional<Estimator> parse_estimator(std::string_view s);
std::optional<SeType> parse_se_type(std::string_view s);

/// Column id used in fit reports and the published-coefficient file,
/// e.g. "FE-efficiency".
std::string column_id(Estimator e, Outcome o);

namespace label {
inline constexpr std::string_view kIntercept = "Intercept";
inline constexpr std::string_view kLnCredit = "ln(Credit Access)";
inline constexpr std::string_view kLnCreditSq = "ln(Credit Access)^2";
inline constexpr std::string_view kAge = "Age";
inline constexpr std::string_view kAgeSq = "Age^2/100";
inline constexpr std::string_view kMale = "Male";
inline constexpr std::string_view kSchooling = "Schooling";
inline constexpr std::string_view kSchoolingSq = "Schooling^2/100";
inline constexpr std::string_view kMarried = "Married";
inline constexpr std::string_view kEmployed = "Employed";
inline constexpr std::string_view kHealth = "Health";
inline constexpr std::string_view kLnIncome = "ln(Income)";
inline constexpr std::string_view kLnIncomeSq = "ln(Income)^2";
inline constexpr std::string_view kLnWealth = "ln(Wealth)";
inline constexpr std::string_view kLnWealthSq = "ln(Wealth)^2";
inline constexpr std::string_view kBusiness = "Business";
inline constexpr std::string_view kFamilySize = "Family Size";
inline constexpr std::string_view kRural = "Rural";
inline constexpr std::string_view kProvincePrefix = "province:";
inline constexpr std::string_view kYearPrefix = "year:";
}  // namespace label

/// The household-level regressors in build order (credit square optional).
std::vector<std::string> control_labels(bool include_credit_square);

struct RegressionSpec {
  Outcome outcome = Outcome::LnEnergy;
  bool include_credit_square = false;
  Estimator estimator = Estimator::PooledOls;
  bool province_dummies = true;  // ignored (always off) for WithinFe
  bool year_dummies = true;
  SeType se_type = SeType::Classical;
};

/// Numeric inputs to a fit. `group` maps each row to a dense household
/// index; `group_names` holds the household ids.
struct Design {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  std::vector<std::string> labels;
  bool has_intercept = false;
  std::vector<int> group;
  std::vector<std::string> group_names;
  std::vector<int> years;
  std::vector<RowError> deleted_rows;  // listwise deletions with cause
};

/// Applies the regression transforms: ln(1 + credit), squares of age and
/// schooling over 100, squared logs of income and wealth, 0/1 controls,
/// province dummies (pooled OLS only) and year dummies, first category
/// dropped. The outcome is the log of the footprint quantity.
Design build_design(std::span<const HouseholdRecord> records, const RegressionSpec& spec,
                    const IntensityTable& table = builtin_table());

struct DroppedTerm {
  std::string label;
  std::string reason;
};

enum class RankPolicy { DropAndReport, Strict };

struct FitOptions {
  SeType se_type = SeType::Classical;
  RankPolicy rank_policy = RankPolicy::DropAndReport;
  bool parallel = true;
};

struct FitResult {
  Estimator estimator = Estimator::PooledOls;
  SeType se_type = SeType::Classical;
  std::vector<std::string> labels;  // retained regressors, build order
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  std::vector<DroppedTerm> dropped_terms;
  std::size_t n_obs = 0;         // rows in the design
  std::size_t n_identified = 0;  // rows contributing to estimation
  std::size_t n_groups = 0;      // households with >= 2 rows (FE) or all households (OLS)
  std::size_t n_singletons = 0;  // FE only
  std::size_t df_resid = 0;
  double r2 = 0;
  double adjusted_r2 = 0;  // within adjusted R^2 for FE
  Eigen::VectorXd residuals;  // per design row; zero for FE singletons
  std::vector<double> fixed_effects;  // per household (FE only), in group order
  std::map<std::string, double> regressor_means;  // raw (undemeaned) sample means of retained columns
  double outcome_mean = 0;

  std::optional<double> coefficient(std::string_view label) const;
  std::optional<double> standard_error(std::string_view label) const;
  /// Intercept for OLS; observation-weighted mean fixed effect for FE.
  double level_constant() const;
};

/// Least squares with intercept and dummies as given in the design.
/// Throws Underdetermined, or RankDeficient under RankPolicy::Strict.
FitResult fit_pooled_ols(const Design& design, const FitOptions& opts = {});

/// Within-household demeaned least squares. Regressors without
/// within-household variation are dropped and reported. Throws
/// InsufficientPanel, NoWithinVariation, Underdetermined.
FitResult fit_within_fe(const Design& design, const FitOptions& opts = {});

/// Builds the design and dispatches on spec.estimator.
FitResult fit(std::span<const HouseholdRecord> records, const RegressionSpec& spec,
              const IntensityTable& table = builtin_table());

struct IdentityRow {
  std::string label;
  double energy = 0;
  double carbon = 0;
  double efficiency = 0;
  double residual = 0;  // efficiency - (carbon - energy)
  bool ok = false;
};

struct IdentityReport {
  std::vector<IdentityRow> rows;
  bool all_ok = true;
};

/// Checks beta_efficiency = beta_carbon - beta_energy for every retained
/// regressor. Throws SpecMismatch unless the fits share estimator, sample
/// size and retained regressors.
IdentityReport coefficient_identity_check(const FitResult& energy, const FitResult& carbon,
                                          const FitResult& efficiency, double tolerance = 1e-9);

}  // namespace hhcarbon
