#include "hhcarbon/record.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "hhcarbon/csv.hpp"
#include "hhcarbon/error.hpp"

namespace hhcarbon {

double ConsumptionBundle::total() const {
  double t = 0.0;
  for (double v : spend) t += v;
  return t;
}

namespace {

void range(std::vector<RecordIssue>& out, Severity sev, std::string_view field, double v, double lo, double hi) {
  if (v < lo || v > hi) {
    out.push_back({sev, std::string(field),
                   std::string(field) + "=" + csv::format_short(v) + " outside [" + csv::format_short(lo) + ", " +
                       csv::format_short(hi) + "]"});
  }
}

void binary(std::vector<RecordIssue>& out, std::string_view field, int v) {
  if (v != 0 && v != 1)
    out.push_back({Severity::Reject, std::string(field), std::string(field) + " must be 0 or 1"});
}

}  // namespace

std::vector<RecordIssue> validate_record(const HouseholdRecord& rec, RangePolicy policy) {
  std::vector<RecordIssue> out;
  const Severity soft = policy.hard ? Severity::Reject : Severity::Warning;

  if (rec.household_id.empty()) out.push_back({Severity::Reject, "household_id", "empty household_id"});
  if (!year_covered(rec.year))
    out.push_back({Severity::Reject, "year", "YearOutOfRange: year " + std::to_string(rec.year) + " outside 2005-2019"});
  binary(out, "rural", rec.rural);
  binary(out, "male", rec.male);
  binary(out, "married", rec.married);
  binary(out, "employed", rec.employed);
  binary(out, "health", rec.health);
  binary(out, "business", rec.business);

  if (rec.income <= 0) out.push_back({Severity::Reject, "income", "income must be positive"});
  if (rec.wealth <= 0) out.push_back({Severity::Reject, "wealth", "wealth must be positive"});
  if (rec.credit_access < 0) out.push_back({Severity::Reject, "credit_access", "credit_access must be non-negative"});
  if (rec.family_size < 1) out.push_back({Severity::Reject, "family_size", "family_size must be at least 1"});

  range(out, soft, "age", rec.age, 16, 80);
  range(out, soft, "schooling", rec.schooling, 0, 22);
  range(out, soft, "family_size", rec.family_size, 1, 20);
  if (rec.income > 0) range(out, soft, "income", rec.income, 1.05, INFINITY);
  if (rec.wealth > 0) range(out, soft, "wealth", rec.wealth, 4, INFINITY);
  if (rec.credit_access >= 0) range(out, soft, "credit_access", rec.credit_access, 0, 1e6);

  double total = 0.0;
  for (Sector s : kAllSectors) {
    double v = rec.spend[index(s)];
    if (v < 0)
      out.push_back({Severity::Reject, "spend_" + std::string(sector_key(s)),
                     "negative spend in " + std::string(sector_name(s))});
    total += v;
  }
  if (total <= 0) out.push_back({Severity::Reject, "spend", "EmptyBundle: total spend is zero"});
  return out;
}

const std::vector<std::string>& panel_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"household_id", "year",     "province", "rural",  "age",
                               "male",         "schooling", "married", "employed", "health",
                               "income",       "wealth",   "business", "family_size", "credit_access"};
    for (Sector s : kAllSectors) c.push_back("spend_" + std::string(sector_key(s)));
    return c;
  }();
  return cols;
}

namespace {

struct FieldReader {
  const std::vector<std::string>& fields;
  std::vector<std::string> missing;
  std::vector<std::string> bad;

  const std::string& raw(std::size_t i) {
    if (fields[i].empty()) missing.push_back(panel_columns()[i]);
    return fields[i];
  }
  double num(std::size_t i) {
    const std::string& f = raw(i);
    if (f.empty()) return 0.0;
    auto v = csv::parse_double(f);
    if (!v) {
      bad.push_back(panel_columns()[i]);
      return 0.0;
    }
    return *v;
  }
  int integer(std::size_t i) {
    double v = num(i);
    if (v != std::floor(v)) {
      bad.push_back(panel_columns()[i]);
      return 0;
    }
    return static_cast<int>(v);
  }
};

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ";") + n;
  return s;
}

}  // namespace

PanelReadResult read_panel(std::istream& in, RangePolicy policy) {
  csv::Table t = csv::read(in);
  const auto& cols = panel_columns();
  if (t.header != cols) {
    std::string detail;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i >= t.header.size()) {
        detail = "missing column '" + cols[i] + "'";
        break;
      }
      if (t.header[i] != cols[i]) {
        detail = "column " + std::to_string(i + 1) + " is '" + t.header[i] + "', expected '" + cols[i] + "'";
        break;
      }
    }
    if (detail.empty()) detail = "unexpected extra column '" + t.header[cols.size()] + "'";
    throw Error(ErrorKind::Parse, "panel header mismatch: " + detail);
  }

  PanelReadResult result;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    const std::size_t line = t.line_numbers[r];
    if (f.size() != cols.size()) {
      result.errors.push_back({r, line, "expected " + std::to_string(cols.size()) + " fields, found " +
                                            std::to_string(f.size())});
      continue;
    }
    FieldReader rd{f, {}, {}};
    HouseholdRecord rec;
    rec.household_id = rd.raw(0);
    rec.year = rd.integer(1);
    rec.province = rd.raw(2);
    rec.rural = rd.integer(3);
    rec.age = rd.num(4);
    rec.male = rd.integer(5);
    rec.schooling = rd.num(6);
    rec.married = rd.integer(7);
    rec.employed = rd.integer(8);
    rec.health = rd.integer(9);
    rec.income = rd.num(10);
    rec.wealth = rd.num(11);
    rec.business = rd.integer(12);
    rec.family_size = rd.integer(13);
    rec.credit_access = rd.num(14);
    for (std::size_t s = 0; s < kSectorCount; ++s) rec.spend[s] = rd.num(15 + s);

    if (!rd.missing.empty()) {
      result.errors.push_back({r, line, "missing field(s): " + join_names(rd.missing)});
      continue;
    }
    if (!rd.bad.empty()) {
      result.errors.push_back({r, line, "unparseable field(s): " + join_names(rd.bad)});
      continue;
    }
    std::string rejects, warns;
    for (const auto& issue : validate_record(rec, policy)) {
      auto& dst = issue.severity == Severity::Reject ? rejects : warns;
      dst += (dst.empty() ? "" : "; ") + issue.message;
    }
    if (!rejects.empty()) {
      result.errors.push_back({r, line, rejects});
      continue;
    }
    if (!warns.empty()) result.warnings.push_back({r, line, warns});
    result.records.push_back(std::move(rec));
    result.source_rows.push_back(r);
  }
  return result;
}

PanelReadResult read_panel_file(const std::string& path, RangePolicy policy) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open panel " + path);
  return read_panel(in, policy);
}

void write_panel(std::ostream& out, const std::vector<HouseholdRecord>& records) {
  out << csv::join(panel_columns()) << '\n';
  for (const auto& r : records) {
    std::vector<std::string> f{r.household_id,
                               std::to_string(r.year),
                               r.province,
                               std::to_string(r.rural),
                               csv::format_exact(r.age),
                               std::to_string(r.male),
                               csv::format_exact(r.schooling),
                               std::to_string(r.married),
                               std::to_string(r.employed),
                               std::to_string(r.health),
                               csv::format_exact(r.income),
                               csv::format_exact(r.wealth),
                               std::to_string(r.business),
                               std::to_string(r.family_size),
                               csv::format_exact(r.credit_access)};
    for (double v : r.spend) f.push_back(csv::format_exact(v));
    out << csv::join(f) << '\n';
  }
}

void write_row_errors(std::ostream& out, const std::vector<RowError>& errors) {
  out << "row,line,cause\n";
  for (const auto& e : errors) out << csv::join({std::to_string(e.row), std::to_string(e.line), e.cause}) << '\n';
}

}  // namespace hhcarbon
