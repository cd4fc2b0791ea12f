#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hhcarbon/regression.hpp"

namespace hhcarbon {

/// One published coefficient at 5-decimal precision.
struct PublishedCell {
  std::int64_t coefficient_e5 = 0;  // coefficient x 10^5
  std::int64_t std_error_e5 = 0;
  int stars = 0;

  double coefficient() const { return static_cast<double>(coefficient_e5) / 1e5; }
  double std_error() const { return static_cast<double>(std_error_e5) / 1e5; }
};

/// Published coefficient tables keyed by (table, row label, column id).
/// Blank cells (terms absent from a column) are stored as std::nullopt.
class PublishedTables {
 public:
  static PublishedTables parse(std::istream& in);
  static PublishedTables load_file(const std::string& path);

  bool contains(int table, std::string_view row, std::string_view column) const;
  /// nullopt for a blank cell; throws Error(Parse) for an unknown key.
  std::optional<PublishedCell> cell(int table, std::string_view row, std::string_view column) const;

  std::vector<int> tables() const;
  std::vector<std::string> row_labels(int table) const;  // file order
  std::size_t size() const { return cells_.size(); }

 private:
  using Key = std::tuple<int, std::string, std::string>;
  std::map<Key, std::optional<PublishedCell>> cells_;
  std::map<int, std::vector<std::string>> rows_;
};

/// Embedded copy of data/published_coefficients.csv.
std::string_view builtin_published_csv();
const PublishedTables& builtin_published();

/// Predicted log outcome as a function of credit only:
/// constant + b1 * ln(1+c) + b2 * ln(1+c)^2.
struct CreditModel {
  double constant = 0;
  double b1 = 0;
  double b2 = 0;

  double predict(double credit) const;
  /// Turning point in ln(1+credit) units; nullopt when b2 == 0.
  std::optional<double> vertex() const;
};

/// Means override the fit's own regressor means, label by label.
/// Throws MissingCreditTerm when ln(Credit Access) was not retained.
CreditModel credit_model(const FitResult& fit, const std::map<std::string, double>& means = {});

/// Published columns carry no intercept, so the constant is the sum of
/// coefficient x mean over whatever means are supplied.
CreditModel credit_model(const PublishedTables& tables, int table, std::string_view column,
                         const std::map<std::string, double>& means = {});

struct EffectCurve {
  std::vector<double> grid;       // credit, Yuan
  std::vector<double> predicted;  // log units
};

/// Throws InvalidValue for negative grid points.
EffectCurve effect_curve(const CreditModel& model, std::span<const double> grid);

/// 50 log-spaced points from 1e2 to 1e6 Yuan.
std::vector<double> default_grid();
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct ValidationRow {
  int table = 0;
  std::string row_label;
  Estimator estimator = Estimator::PooledOls;
  std::int64_t energy_e5 = 0;
  std::int64_t carbon_e5 = 0;
  std::int64_t efficiency_e5 = 0;
  std::int64_t residual_e5 = 0;  // efficiency - (carbon - energy)
  bool ok = false;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::size_t blank = 0;  // (row, estimator) pairs left blank in all three columns
  bool all_ok = true;
};

inline constexpr double kPublishedIdentityTolerance = 1.5e-5;

ValidationReport validate_published(const PublishedTables& tables, double tolerance = kPublishedIdentityTolerance);

struct DeclineCheck {
  double change = 0;     // predicted(high) - predicted(low), log points
  double magnitude = 0;  // |change|
  bool holds = false;    // change < 0 and magnitude > threshold
};

inline constexpr double kDeclineThreshold = 3e-4;

DeclineCheck decline_claim_check(const CreditModel& model, double low = 1000.0, double high = 100000.0,
                                 double threshold = kDeclineThreshold);

}  // namespace hhcarbon
