#include "hhcarbon/effects.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "hhcarbon/csv.hpp"
#include "hhcarbon/error.hpp"

namespace hhcarbon {

namespace {

std::optional<std::int64_t> parse_e5(std::string_view text) {
  bool neg = false;
  if (!text.empty() && text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 5) return std::nullopt;
  auto w = csv::parse_int(whole);
  if (!w || *w < 0) return std::nullopt;
  std::int64_t f = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    char c = i < frac.size() ? frac[i] : '0';
    if (c < '0' || c > '9') return std::nullopt;
    f = f * 10 + (c - '0');
  }
  std::int64_t v = *w * 100000 + f;
  return neg ? -v : v;
}

}  // namespace

PublishedTables PublishedTables::parse(std::istream& in) {
  csv::Table t = csv::read(in);
  const std::vector<std::string> expected{"table", "row_label", "column_id", "coefficient", "std_error", "stars"};
  if (t.header != expected) throw Error(ErrorKind::Parse, "published table header mismatch");
  PublishedTables out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    const std::string where = "line " + std::to_string(t.line_numbers[r]) + ": ";
    if (f.size() != expected.size()) throw Error(ErrorKind::Parse, where + "wrong field count");
    auto table = csv::parse_int(f[0]);
    if (!table) throw Error(ErrorKind::Parse, where + "bad table id");
    std::optional<PublishedCell> cell;
    if (!(f[3].empty() && f[4].empty() && f[5].empty())) {
      auto c = parse_e5(f[3]);
      auto se = parse_e5(f[4]);
      auto stars = csv::parse_int(f[5]);
      if (!c || !se || !stars || *stars < 0 || *stars > 3)
        throw Error(ErrorKind::Parse, where + "bad coefficient cell");
      cell = PublishedCell{*c, *se, static_cast<int>(*stars)};
    }
    Key key{static_cast<int>(*table), f[1], f[2]};
    if (out.cells_.count(key)) throw Error(ErrorKind::Parse, where + "duplicate cell");
    auto& rows = out.rows_[static_cast<int>(*table)];
    if (std::find(rows.begin(), rows.end(), f[1]) == rows.end()) rows.push_back(f[1]);
    out.cells_.emplace(std::move(key), cell);
  }
  return out;
}

PublishedTables PublishedTables::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return parse(in);
}

bool PublishedTables::contains(int table, std::string_view row, std::string_view column) const {
  return cells_.count(Key{table, std::string(row), std::string(column)}) > 0;
}

std::optional<PublishedCell> PublishedTables::cell(int table, std::string_view row, std::string_view column) const {
  auto it = cells_.find(Key{table, std::string(row), std::string(column)});
  if (it == cells_.end())
    throw Error(ErrorKind::Parse, "no published cell (" + std::to_string(table) + ", " + std::string(row) + ", " +
                                      std::string(column) + ")");
  return it->second;
}

std::vector<int> PublishedTables::tables() const {
  std::vector<int> t;
  for (const auto& [k, _] : rows_) t.push_back(k);
  return t;
}

std::vector<std::string> PublishedTables::row_labels(int table) const {
  auto it = rows_.find(table);
  return it == rows_.end() ? std::vector<std::string>{} : it->second;
}

const PublishedTables& builtin_published() {
  static const PublishedTables t = [] {
    std::istringstream in{std::string(builtin_published_csv())};
    return PublishedTables::parse(in);
  }();
  return t;
}

double CreditModel::predict(double credit) const {
  const double l = std::log1p(credit);
  return constant + b1 * l + b2 * l * l;
}

std::optional<double> CreditModel::vertex() const {
  if (b2 == 0.0) return std::nullopt;
  return -b1 / (2.0 * b2);
}

CreditModel credit_model(const FitResult& fit, const std::map<std::string, double>& means) {
  auto b1 = fit.coefficient(label::kLnCredit);
  if (!b1) throw Error(ErrorKind::MissingCreditTerm, "fit has no ln(Credit Access) coefficient");
  CreditModel m;
  m.b1 = *b1;
  m.b2 = fit.coefficient(label::kLnCreditSq).value_or(0.0);
  m.constant = fit.level_constant();
  for (std::size_t i = 0; i < fit.labels.size(); ++i) {
    const auto& l = fit.labels[i];
    if (l == label::kLnCredit || l == label::kLnCreditSq || l == label::kIntercept) continue;
    auto it = means.find(l);
    double mean = 0.0;
    if (it != means.end()) {
      mean = it->second;
    } else if (auto own = fit.regressor_means.find(l); own != fit.regressor_means.end()) {
      mean = own->second;
    }
    m.constant += fit.coefficients(static_cast<Eigen::Index>(i)) * mean;
  }
  return m;
}

CreditModel credit_model(const PublishedTables& tables, int table, std::string_view column,
                         const std::map<std::string, double>& means) {
  if (!tables.contains(table, label::kLnCredit, column))
    throw Error(ErrorKind::MissingCreditTerm,
                "table " + std::to_string(table) + " column " + std::string(column) + " has no credit term");
  auto b1 = tables.cell(table, label::kLnCredit, column);
  if (!b1) throw Error(ErrorKind::MissingCreditTerm, "credit coefficient is blank");
  CreditModel m;
  m.b1 = b1->coefficient();
  if (tables.contains(table, label::kLnCreditSq, column))
    if (auto b2 = tables.cell(table, label::kLnCreditSq, column)) m.b2 = b2->coefficient();
  for (const auto& [l, mean] : means) {
    if (l == label::kLnCredit || l == label::kLnCreditSq || !tables.contains(table, l, column)) continue;
    if (auto c = tables.cell(table, l, column)) m.constant += c->coefficient() * mean;
  }
  return m;
}

EffectCurve effect_curve(const CreditModel& model, std::span<const double> grid) {
  EffectCurve c;
  for (double g : grid) {
    if (!(g >= 0.0) || !std::isfinite(g))
      throw Error(ErrorKind::InvalidValue, "credit grid values must be finite and non-negative");
    c.grid.push_back(g);
    c.predicted.push_back(model.predict(g));
  }
  return c;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0 && hi > lo) || points < 2) throw Error(ErrorKind::InvalidValue, "log grid needs 0 < lo < hi, >= 2 points");
  std::vector<double> g(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_grid() { return log_grid(1e2, 1e6, 50); }

ValidationReport validate_published(const PublishedTables& tables, double tolerance) {
  ValidationReport rep;
  const auto limit = static_cast<std::int64_t>(std::floor(tolerance * 1e5 + 1e-9));
  for (int t : tables.tables()) {
    for (const auto& row : tables.row_labels(t)) {
      for (Estimator est : {Estimator::PooledOls, Estimator::WithinFe}) {
        const std::string ce = column_id(est, Outcome::LnEnergy);
        const std::string cc = column_id(est, Outcome::LnCarbon);
        const std::string cee = column_id(est, Outcome::LnEfficiency);
        ValidationRow vr;
        vr.table = t;
        vr.row_label = row;
        vr.estimator = est;
        if (!tables.contains(t, row, ce) || !tables.contains(t, row, cc) || !tables.contains(t, row, cee)) {
          vr.note = "missing column entry";
          rep.all_ok = false;
          rep.rows.push_back(std::move(vr));
          continue;
        }
        auto e = tables.cell(t, row, ce), c = tables.cell(t, row, cc), ee = tables.cell(t, row, cee);
        if (!e && !c && !ee) {
          ++rep.blank;
          continue;
        }
        if (!e || !c || !ee) {
          vr.note = "blank in some but not all outcome columns";
          rep.all_ok = false;
          rep.rows.push_back(std::move(vr));
          continue;
        }
        vr.energy_e5 = e->coefficient_e5;
        vr.carbon_e5 = c->coefficient_e5;
        vr.efficiency_e5 = ee->coefficient_e5;
        vr.residual_e5 = vr.efficiency_e5 - (vr.carbon_e5 - vr.energy_e5);
        vr.ok = (vr.residual_e5 < 0 ? -vr.residual_e5 : vr.residual_e5) <= limit;
        rep.all_ok = rep.all_ok && vr.ok;
        rep.rows.push_back(std::move(vr));
      }
    }
  }
  return rep;
}

DeclineCheck decline_claim_check(const CreditModel& model, double low, double high, double threshold) {
  DeclineCheck d;
  d.change = model.predict(high) - model.predict(low);
  d.magnitude = std::abs(d.change);
  d.holds = d.change < 0 && d.magnitude > threshold;
  return d;
}

}  // namespace hhcarbon
