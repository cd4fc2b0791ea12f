#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "hhcarbon/intensity.hpp"

namespace hhcarbon {

/// Yuan spent in each sector during one survey year.
struct ConsumptionBundle {
  int year = 0;
  std::array<double, kSectorCount> spend{};

  double total() const;
  double& operator[](Sector s) { return spend[index(s)]; }
  double operator[](Sector s) const { return spend[index(s)]; }
};

/// One household-year observation.
struct HouseholdRecord {
  std::string household_id;
  int year = 0;
  std::string province;
  int rural = 0;
  double age = 0;
  int male = 0;
  double schooling = 0;
  int married = 0;
  int employed = 0;
  int health = 0;
  double income = 0;  // Yuan
  double wealth = 0;  // Yuan
  int business = 0;
  int family_size = 1;
  double credit_access = 0;  // outstanding loans, Yuan
  std::array<double, kSectorCount> spend{};

  ConsumptionBundle bundle() const { return {year, spend}; }
};

enum class Severity { Warning, Reject };

struct RecordIssue {
  Severity severity;
  std::string field;
  std::string message;
};

/// Range policy for the survey variables. Soft ranges produce warnings,
/// hard ranges produce rejections. Structural problems (negative spend,
/// non-binary flags, non-positive income) always reject.
struct RangePolicy {
  bool hard = false;
};

std::vector<RecordIssue> validate_record(const HouseholdRecord& rec, RangePolicy policy = {});

/// Panel file column names, in file order.
const std::vector<std::string>& panel_columns();

struct RowError {
  std::size_t row = 0;   // 0-based data row index
  std::size_t line = 0;  // 1-based source line, 0 when not from a file
  std::string cause;
};

struct PanelReadResult {
  std::vector<HouseholdRecord> records;
  std::vector<std::size_t> source_rows;  // data row index of each accepted record
  std::vector<RowError> errors;          // rejected rows
  std::vector<RowError> warnings;        // accepted rows with soft range issues
};

/// Parses a panel file. Throws Error(Parse) when the header does not match
/// panel_columns() exactly; row-level problems are collected, never dropped.
PanelReadResult read_panel(std::istream& in, RangePolicy policy = {});
PanelReadResult read_panel_file(const std::string& path, RangePolicy policy = {});

void write_panel(std::ostream& out, const std::vector<HouseholdRecord>& records);

void write_row_errors(std::ostream& out, const std::vector<RowError>& errors);

}  // namespace hhcarbon
