// hhcarbon: household indirect energy, carbon and efficiency pipeline.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hhcarbon/csv.hpp"
#include "hhcarbon/effects.hpp"
#include "hhcarbon/error.hpp"
#include "hhcarbon/footprint.hpp"
#include "hhcarbon/inequality.hpp"
#include "hhcarbon/intensity.hpp"
#include "hhcarbon/record.hpp"
#include "hhcarbon/regression.hpp"
#include "hhcarbon/report.hpp"
#include "hhcarbon/synth.hpp"

namespace {

using namespace hhcarbon;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Destination that is either a file or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorKind::Io, "cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string sidecar(const std::string& out, const std::string& suffix) {
  if (out.empty() || out == "-") return "";
  auto dot = out.rfind('.');
  auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + suffix + ".csv";
  return out.substr(0, dot) + suffix + out.substr(dot);
}

IntensityTable load_table(const std::string& flag) {
  std::string path = flag;
  if (path.empty())
    if (const char* env = std::getenv("HHCARBON_TABLE")) path = env;
  if (path.empty()) return builtin_table();
  std::clog << "intensity table: " << path << '\n';
  return IntensityTable::load_file(path);
}

PanelReadResult read_panel_checked(const std::string& path, bool strict, const std::string& errors_path,
                                   const std::string& out_path) {
  PanelReadResult p = read_panel_file(path, {strict});
  for (const auto& w : p.warnings) std::clog << "warning: line " << w.line << ": " << w.cause << '\n';
  if (!p.errors.empty()) {
    std::string dst = errors_path.empty() ? sidecar(out_path, ".errors") : errors_path;
    if (dst.empty()) {
      write_row_errors(std::clog, p.errors);
    } else {
      std::ofstream e(dst, std::ios::binary);
      write_row_errors(e, p.errors);
      std::clog << p.errors.size() << " rejected row(s) written to " << dst << '\n';
    }
  }
  return p;
}

// ---------------------------------------------------------------- footprint

struct FootprintArgs {
  std::string input, table, group_by, out, cohort_out, errors;
  bool strict = false;
};

int cmd_footprint(const FootprintArgs& a) {
  IntensityTable table = load_table(a.table);
  PanelReadResult p = read_panel_checked(a.input, a.strict, a.errors, a.out);
  FootprintPanel fp = footprint_panel(p.records, table);

  Output out(a.out);
  auto& os = out.stream();
  os << "household_id,year,energy_gj,carbon_kg,efficiency\n";
  for (const auto& r : fp.rows)
    os << csv::join({r.household_id, std::to_string(r.year), csv::format_exact(r.footprint.energy_use),
                     csv::format_exact(r.footprint.carbon_emissions), csv::format_exact(r.footprint.efficiency)})
       << '\n';

  if (!a.group_by.empty()) {
    std::map<std::string, std::vector<Footprint>> cohorts;
    for (const auto& r : fp.rows) {
      const HouseholdRecord& rec = p.records[r.row];
      std::string key = a.group_by == "year"    ? std::to_string(rec.year)
                        : a.group_by == "rural" ? (rec.rural ? "rural" : "urban")
                                                : rec.province;
      cohorts[key].push_back(r.footprint);
    }
    std::string dst = a.cohort_out.empty() ? sidecar(a.out, ".cohorts") : a.cohort_out;
    Output cout_(dst);
    auto& cs = cout_.stream();
    if (dst.empty()) cs << '\n';
    cs << "group_by,cohort,households,energy_gj,carbon_kg,efficiency\n";
    for (const auto& [k, v] : cohorts) {
      double e = 0, c = 0;
      for (const auto& f : v) {
        e += f.energy_use;
        c += f.carbon_emissions;
      }
      cs << csv::join({a.group_by, k, std::to_string(v.size()), csv::format_exact(e), csv::format_exact(c),
                       csv::format_exact(cohort_efficiency(v))})
         << '\n';
    }
  }
  return p.errors.empty() && fp.errors.empty() ? kOk : kValidation;
}

// --------------------------------------------------------------- inequality

struct InequalityArgs {
  std::string input, attribute, out, summary, table;
  std::optional<int> year;
  double quantile = 0.1;
};

std::vector<double> attribute_values(const InequalityArgs& a) {
  csv::Table t = csv::read_file(a.input);
  const bool is_panel = t.header == panel_columns();
  auto year_col = t.column("year");
  if (a.year && !year_col) throw UsageError("--year given but input has no year column");

  if (is_panel && (a.attribute == "energy" || a.attribute == "carbon" || a.attribute == "efficiency" ||
                   a.attribute == "consumption")) {
    PanelReadResult p = read_panel_file(a.input);
    if (!p.errors.empty()) throw Error(ErrorKind::Parse, std::to_string(p.errors.size()) + " invalid panel row(s)");
    std::vector<HouseholdRecord> recs;
    for (auto& r : p.records)
      if (!a.year || r.year == *a.year) recs.push_back(r);
    std::vector<double> v;
    if (a.attribute == "consumption") {
      for (const auto& r : recs) v.push_back(r.bundle().total());
      return v;
    }
    FootprintPanel fp = footprint_panel(recs, load_table(a.table));
    for (const auto& r : fp.rows)
      v.push_back(a.attribute == "energy"   ? r.footprint.energy_use
                  : a.attribute == "carbon" ? r.footprint.carbon_emissions
                                            : r.footprint.efficiency);
    return v;
  }

  std::string column = a.attribute;
  if (!t.column(column)) {
    static const std::map<std::string, std::string> aliases{
        {"energy", "energy_gj"}, {"carbon", "carbon_kg"}, {"efficiency", "efficiency"}};
    auto it = aliases.find(a.attribute);
    if (it != aliases.end()) column = it->second;
  }
  auto col = t.column(column);
  if (!col) throw UsageError("input has no column '" + a.attribute + "'");
  std::vector<double> v;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    if (a.year) {
      auto y = csv::parse_int(f.at(*year_col));
      if (!y || *y != *a.year) continue;
    }
    auto x = *col < f.size() ? csv::parse_double(f[*col]) : std::nullopt;
    if (!x)
      throw Error(ErrorKind::Parse, "line " + std::to_string(t.line_numbers[r]) + ": bad value in " + column);
    v.push_back(*x);
  }
  return v;
}

int cmd_inequality(const InequalityArgs& a) {
  if (!(a.quantile > 0 && a.quantile < 1)) throw UsageError("--quantile must lie in (0, 1)");
  std::vector<double> values = attribute_values(a);
  LorenzResult l = lorenz(values);
  if (!a.out.empty()) {
    Output out(a.out);
    out.stream() << "population_share,value_share\n";
    for (const auto& [p, s] : l.points) out.stream() << csv::format_exact(p) << ',' << csv::format_exact(s) << '\n';
  }
  Json s;
  s["attribute"] = a.attribute;
  if (a.year) s["year"] = *a.year;
  s["n"] = values.size();
  s["total"] = l.total;
  s["gini"] = l.gini;
  s["quantile"] = a.quantile;
  s["tail_count"] = tail_count(a.quantile, values.size());
  s["top_share"] = l.top_share(a.quantile);
  s["bottom_share"] = l.bottom_share(a.quantile);
  Output sum(a.summary);
  sum.stream() << s.dump(2) << '\n';
  return kOk;
}

// ------------------------------------------------------------------ regress

struct RegressArgs {
  std::string input, outcome = "all", estimator = "both", se = "classical", out, table, errors;
  bool credit_square = false, repeated_only = false, strict = false;
};

int cmd_regress(const RegressArgs& a) {
  std::vector<Outcome> outcomes;
  if (a.outcome == "all") {
    outcomes = {Outcome::LnEnergy, Outcome::LnCarbon, Outcome::LnEfficiency};
  } else if (auto o = parse_outcome(a.outcome)) {
    outcomes = {*o};
  } else {
    throw UsageError("unknown --outcome " + a.outcome);
  }
  std::vector<Estimator> estimators;
  if (a.estimator == "both") {
    estimators = {Estimator::PooledOls, Estimator::WithinFe};
  } else if (auto e = parse_estimator(a.estimator)) {
    estimators = {*e};
  } else {
    throw UsageError("unknown --estimator " + a.estimator);
  }
  auto se = parse_se_type(a.se);
  if (!se) throw UsageError("unknown --se " + a.se);

  IntensityTable table = load_table(a.table);
  PanelReadResult p = read_panel_checked(a.input, a.strict, a.errors, a.out);
  std::vector<HouseholdRecord> records = a.repeated_only ? repeated_households_filter(p.records) : p.records;

  Json report;
  report["format"] = "hhcarbon-fit-report";
  report["version"] = 1;
  report["input"] = {{"rows_accepted", p.records.size()},
                     {"rows_rejected", p.errors.size()},
                     {"repeated_only", a.repeated_only},
                     {"rows_used", records.size()}};
  Json fits = Json::array();
  std::vector<ReportColumn> columns;
  int col = 0;
  for (Outcome o : outcomes) {
    for (Estimator e : estimators) {
      RegressionSpec spec;
      spec.outcome = o;
      spec.estimator = e;
      spec.include_credit_square = a.credit_square;
      spec.se_type = *se;
      Design d = build_design(records, spec, table);
      FitOptions opts;
      opts.se_type = *se;
      FitResult f = e == Estimator::PooledOls ? fit_pooled_ols(d, opts) : fit_within_fe(d, opts);
      Json fj = fit_to_json(f, spec);
      fj["deleted_rows"] = d.deleted_rows.size();
      fits.push_back(std::move(fj));
      columns.push_back({"(" + std::to_string(++col) + ") " + std::string(to_string(e)), spec, std::move(f)});
    }
  }
  report["fits"] = std::move(fits);

  Json checks = Json::array();
  bool identity_ok = true;
  if (outcomes.size() == 3) {
    for (Estimator e : estimators) {
      const FitResult* by[3] = {nullptr, nullptr, nullptr};
      for (const auto& c : columns)
        if (c.fit.estimator == e) by[static_cast<int>(c.spec.outcome)] = &c.fit;
      IdentityReport id = coefficient_identity_check(*by[0], *by[1], *by[2]);
      identity_ok = identity_ok && id.all_ok;
      checks.push_back(identity_to_json(id, e));
    }
  }
  report["identity_checks"] = std::move(checks);

  if (!a.out.empty() && a.out != "-") {
    Output out(a.out);
    out.stream() << report.dump(2) << '\n';
    std::cout << format_fit_table(columns);
  } else {
    std::cout << report.dump(2) << '\n';
    std::clog << format_fit_table(columns);
  }
  if (!identity_ok) std::clog << "coefficient identity check FAILED\n";
  return p.errors.empty() && identity_ok ? kOk : kValidation;
}

// ------------------------------------------------------------------ effects

struct EffectsArgs {
  std::string fit, column, published, grid, means, out;
  double low = 1000, high = 100000;
};

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) return default_grid();
  if (spec.rfind("log:", 0) == 0) {
    std::vector<std::string> p;
    std::stringstream ss(spec.substr(4));
    for (std::string s; std::getline(ss, s, ':');) p.push_back(s);
    if (p.size() != 3) throw UsageError("--grid log:LO:HI:N");
    auto lo = csv::parse_double(p[0]), hi = csv::parse_double(p[1]);
    auto n = csv::parse_int(p[2]);
    if (!lo || !hi || !n || *lo <= 0 || *hi <= *lo || *n < 2) throw UsageError("bad log grid " + spec);
    return log_grid(*lo, *hi, static_cast<std::size_t>(*n));
  }
  std::vector<double> g;
  for (const auto& f : csv::split(spec)) {
    auto v = csv::parse_double(f);
    if (!v) throw UsageError("bad grid value '" + f + "'");
    if (*v < 0) throw UsageError("grid values must be non-negative, got " + f);
    g.push_back(*v);
  }
  return g;
}

std::map<std::string, double> load_means(const std::string& path) {
  std::map<std::string, double> m;
  if (path.empty()) return m;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    Json j = Json::parse(in);
    for (const auto& [k, v] : j.items()) m[k] = v.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "means file: " + std::string(e.what()));
  }
  return m;
}

int cmd_effects(const EffectsArgs& a) {
  if (a.fit.empty() == a.published.empty()) throw UsageError("give exactly one of --fit or --published");
  std::vector<double> grid = parse_grid(a.grid);
  auto means = load_means(a.means);

  CreditModel model;
  std::string source;
  if (!a.published.empty()) {
    auto colon = a.published.find(':');
    if (colon == std::string::npos) throw UsageError("--published TABLE:COLUMN, e.g. 3:FE-efficiency");
    auto t = csv::parse_int(a.published.substr(0, colon));
    if (!t) throw UsageError("bad table id in --published");
    model = credit_model(builtin_published(), static_cast<int>(*t), a.published.substr(colon + 1), means);
    source = "published " + a.published;
  } else {
    std::ifstream in(a.fit);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + a.fit);
    Json report;
    try {
      report = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, "fit report: " + std::string(e.what()));
    }
    const Json* chosen = nullptr;
    for (const auto& f : report.at("fits"))
      if (a.column.empty() || f.at("column_id").get<std::string>() == a.column) {
        chosen = &f;
        break;
      }
    if (!chosen) throw UsageError("no fit with column id '" + a.column + "'");
    model = credit_model(fit_from_json(*chosen), means);
    source = "fit " + chosen->at("column_id").get<std::string>();
  }

  EffectCurve c = effect_curve(model, grid);
  Output out(a.out);
  auto& os = out.stream();
  os << "credit,ln1p_credit,predicted,change_from_first\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    os << csv::join({csv::format_exact(c.grid[i]), csv::format_exact(std::log1p(c.grid[i])),
                     csv::format_exact(c.predicted[i]), csv::format_exact(c.predicted[i] - c.predicted.front())})
       << '\n';

  DeclineCheck d = decline_claim_check(model, a.low, a.high);
  std::clog << "source: " << source << "\n"
            << "b1=" << csv::format_short(model.b1) << " b2=" << csv::format_short(model.b2) << '\n';
  if (auto v = model.vertex()) std::clog << "vertex at ln(1+credit)=" << csv::format_short(*v) << '\n';
  std::clog << "change " << csv::format_short(a.low) << " -> " << csv::format_short(a.high) << ": "
            << csv::format_short(d.change) << (d.holds ? " (decline beyond threshold)" : "") << '\n';
  return kOk;
}

// ----------------------------------------------------------------- dynamics

struct DynamicsArgs {
  std::string by, input, table, out;
};

int cmd_dynamics(const DynamicsArgs& a) {
  if (a.by == "cohort" && a.input.empty()) throw UsageError("--by cohort needs --input PANEL");
  IntensityTable table = load_table(a.table);
  Output out(a.out);
  auto& os = out.stream();
  os << "series,year,efficiency,households\n";
  if (a.by == "sector") {
    auto series = sector_efficiency_series(table);
    for (Sector s : kAllSectors)
      for (const auto& [y, r] : series[index(s)])
        os << csv::join({std::string(sector_name(s)), std::to_string(y), csv::format_exact(r), ""}) << '\n';
    return kOk;
  }
  PanelReadResult p = read_panel_file(a.input);
  FootprintPanel fp = footprint_panel(p.records, table);
  std::map<std::pair<std::string, int>, std::vector<Footprint>> groups;
  for (const auto& r : fp.rows) {
    groups[{"all", r.year}].push_back(r.footprint);
    groups[{p.records[r.row].rural ? "rural" : "urban", r.year}].push_back(r.footprint);
  }
  for (const auto& [k, v] : groups)
    os << csv::join({k.first, std::to_string(k.second), csv::format_exact(cohort_efficiency(v)),
                     std::to_string(v.size())})
       << '\n';
  return p.errors.empty() && fp.errors.empty() ? kOk : kValidation;
}

// ------------------------------------------------------- validate-published

int cmd_validate_published(const std::string& file, double tolerance) {
  PublishedTables t = file.empty() ? builtin_published() : PublishedTables::load_file(file);
  ValidationReport rep = validate_published(t, tolerance);
  std::cout << "table,row_label,estimator,energy,carbon,efficiency,carbon_minus_energy,residual,status\n";
  auto e5 = [](std::int64_t v) {
    const std::int64_t a = v < 0 ? -v : v;
    char frac[8];
    std::snprintf(frac, sizeof frac, "%05lld", static_cast<long long>(a % 100000));
    return std::string(v < 0 ? "-" : "") + std::to_string(a / 100000) + "." + frac;
  };
  std::size_t pass = 0;
  for (const auto& r : rep.rows) {
    pass += r.ok ? 1 : 0;
    std::cout << csv::join({std::to_string(r.table), r.row_label, std::string(to_string(r.estimator)),
                            e5(r.energy_e5), e5(r.carbon_e5), e5(r.efficiency_e5), e5(r.carbon_e5 - r.energy_e5),
                            e5(r.residual_e5), r.ok ? "pass" : ("FAIL " + r.note)})
              << '\n';
  }
  std::clog << pass << "/" << rep.rows.size() << " identity checks pass at tolerance " << tolerance << " ("
            << rep.blank << " blank cells skipped)\n";
  return rep.all_ok ? kOk : kValidation;
}

// -------------------------------------------------------------------- synth

struct SynthArgs {
  std::size_t households = 500;
  std::string years = "2011,2013,2015,2017,2019";
  std::uint64_t seed = 7;
  double beta = 0.012, noise_sd = 0.3, effect_sd = 0.5, presence = 0.85, intercept = 3.5;
  std::optional<double> beta_square;
  std::string allocation = "random", out;
};

int cmd_synth(const SynthArgs& a) {
  DGPConfig c;
  c.n_households = a.households;
  c.seed = a.seed;
  c.beta_credit = a.beta;
  c.beta_credit_square = a.beta_square;
  c.noise_sd = a.noise_sd;
  c.effect_sd = a.effect_sd;
  c.presence = a.presence;
  c.intercept = a.intercept;
  c.allocation = a.allocation == "equal" ? Allocation::EqualShares : Allocation::RandomFixedShares;
  c.years.clear();
  for (const auto& f : csv::split(a.years)) {
    auto y = csv::parse_int(f);
    if (!y) throw UsageError("bad year '" + f + "'");
    c.years.push_back(static_cast<int>(*y));
  }
  auto records = generate(c);
  Output out(a.out);
  write_panel(out.stream(), records);
  std::clog << records.size() << " household-year rows\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Household indirect energy use, carbon emissions and efficiency"};
  app.require_subcommand(1);

  FootprintArgs fa;
  auto* fp = app.add_subcommand("footprint", "Per-household energy, carbon and efficiency from a panel file");
  fp->add_option("-i,--input", fa.input, "Panel file")->required();
  fp->add_option("--table", fa.table, "Intensity table override (default: $HHCARBON_TABLE or built-in)");
  fp->add_option("--group-by", fa.group_by, "Append cohort efficiency rows")
      ->check(CLI::IsMember({"year", "rural", "province"}));
  fp->add_option("-o,--out", fa.out, "Footprint file (default stdout)");
  fp->add_option("--cohort-out", fa.cohort_out, "Cohort summary file (default <out>.cohorts.csv)");
  fp->add_option("--errors", fa.errors, "Rejected-row sidecar (default <out>.errors.csv)");
  fp->add_flag("--strict-ranges", fa.strict, "Reject rows outside the survey variable ranges");

  InequalityArgs ia;
  auto* iq = app.add_subcommand("inequality", "Lorenz curve, Gini and tail shares for one attribute");
  iq->add_option("-i,--input", ia.input, "Panel or footprint file, or any headered CSV")->required();
  iq->add_option("-a,--attribute", ia.attribute,
                 "Column name, or energy|carbon|efficiency|consumption for panel input")
      ->required();
  iq->add_option("--year", ia.year, "Restrict to one survey year");
  iq->add_option("-q,--quantile", ia.quantile, "Tail fraction for top/bottom shares");
  iq->add_option("--table", ia.table, "Intensity table override");
  iq->add_option("-o,--out", ia.out, "Lorenz points file");
  iq->add_option("--summary", ia.summary, "Summary JSON (default stdout)");

  RegressArgs ra;
  auto* rg = app.add_subcommand("regress", "Pooled OLS and household fixed-effects regressions");
  rg->add_option("-i,--input", ra.input, "Panel file")->required();
  rg->add_option("--outcome", ra.outcome, "energy|carbon|efficiency|all");
  rg->add_option("--estimator", ra.estimator, "ols|fe|both");
  rg->add_flag("--credit-square", ra.credit_square, "Add ln(Credit Access)^2");
  rg->add_option("--se", ra.se, "classical|cluster");
  rg->add_flag("--repeated-only", ra.repeated_only, "Keep households observed in at least two years");
  rg->add_option("--table", ra.table, "Intensity table override");
  rg->add_option("-o,--out", ra.out, "Fit report JSON (text table then goes to stdout)");
  rg->add_option("--errors", ra.errors, "Rejected-row sidecar");
  rg->add_flag("--strict-ranges", ra.strict, "Reject rows outside the survey variable ranges");

  EffectsArgs ea;
  auto* ef = app.add_subcommand("effects", "Predicted outcome over a credit grid");
  ef->add_option("--fit", ea.fit, "Fit report from `regress`");
  ef->add_option("--column", ea.column, "Column id inside the fit report, e.g. FE-efficiency");
  ef->add_option("--published", ea.published, "Published column TABLE:COLUMN, e.g. 3:FE-efficiency");
  ef->add_option("--grid", ea.grid, "Comma list, or log:LO:HI:N (default log:100:1000000:50)");
  ef->add_option("--means", ea.means, "JSON object of regressor means");
  ef->add_option("--low", ea.low, "Low credit for the decline check");
  ef->add_option("--high", ea.high, "High credit for the decline check");
  ef->add_option("-o,--out", ea.out, "Curve file (default stdout)");

  DynamicsArgs da;
  auto* dy = app.add_subcommand("dynamics", "Efficiency time series by sector or by urban/rural cohort");
  dy->add_option("--by", da.by, "sector|cohort")->required()->check(CLI::IsMember({"sector", "cohort"}));
  dy->add_option("-i,--input", da.input, "Panel file (cohort mode)");
  dy->add_option("--table", da.table, "Intensity table override");
  dy->add_option("-o,--out", da.out, "Series file (default stdout)");

  std::string vp_file;
  double vp_tol = kPublishedIdentityTolerance;
  auto* vp = app.add_subcommand("validate-published", "Check the outcome identity on the published tables");
  vp->add_option("--file", vp_file, "Published-coefficient file (default built-in)");
  vp->add_option("--tolerance", vp_tol, "Absolute tolerance");

  SynthArgs sa;
  auto* sy = app.add_subcommand("synth", "Generate a synthetic panel with a known data-generating process");
  sy->add_option("-n,--households", sa.households, "Number of households");
  sy->add_option("--years", sa.years, "Comma-separated survey years");
  sy->add_option("--seed", sa.seed, "Random seed");
  sy->add_option("--beta", sa.beta, "True ln(Credit Access) coefficient");
  sy->add_option("--beta-square", sa.beta_square, "True ln(Credit Access)^2 coefficient");
  sy->add_option("--intercept", sa.intercept, "DGP intercept");
  sy->add_option("--noise-sd", sa.noise_sd, "Idiosyncratic noise standard deviation");
  sy->add_option("--effect-sd", sa.effect_sd, "Household effect standard deviation");
  sy->add_option("--presence", sa.presence, "Probability a household appears in a given year");
  sy->add_option("--allocation", sa.allocation, "random|equal sector shares")
      ->check(CLI::IsMember({"random", "equal"}));
  sy->add_option("-o,--out", sa.out, "Panel file (default stdout)");

  std::string table_out;
  auto* tb = app.add_subcommand("table", "Write the built-in intensity table");
  tb->add_option("-o,--out", table_out, "Destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*fp) return cmd_footprint(fa);
    if (*iq) return cmd_inequality(ia);
    if (*rg) return cmd_regress(ra);
    if (*ef) return cmd_effects(ea);
    if (*dy) return cmd_dynamics(da);
    if (*vp) return cmd_validate_published(vp_file, vp_tol);
    if (*sy) return cmd_synth(sa);
    if (*tb) {
      Output out(table_out);
      out.stream() << builtin_table().to_csv();
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidValue ? kUsage : kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}
