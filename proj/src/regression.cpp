#include "hhcarbon/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "hhcarbon/error.hpp"
#include "hhcarbon/footprint.hpp"
#include "hhcarbon/kernels.hpp"
#include "hhcarbon/lsq.hpp"

namespace hhcarbon {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::LnEnergy: return "energy";
    case Outcome::LnCarbon: return "carbon";
    case Outcome::LnEfficiency: return "efficiency";
  }
  return "";
}

std::string_view to_string(Estimator e) { return e == Estimator::PooledOls ? "OLS" : "FE"; }
std::string_view to_string(SeType s) { return s == SeType::Classical ? "classical" : "cluster"; }

std::optional<Outcome> parse_outcome(std::string_view s) {
  if (s == "energy" || s == "ln_energy") return Outcome::LnEnergy;
  if (s == "carbon" || s == "ln_carbon") return Outcome::LnCarbon;
  if (s == "efficiency" || s == "ln_efficiency") return Outcome::LnEfficiency;
  return std::nullopt;
}

std::optional<Estimator> parse_estimator(std::string_view s) {
  if (s == "ols" || s == "OLS" || s == "pooled_ols") return Estimator::PooledOls;
  if (s == "fe" || s == "FE" || s == "within_fe") return Estimator::WithinFe;
  return std::nullopt;
}

std::optional<SeType> parse_se_type(std::string_view s) {
  if (s == "classical") return SeType::Classical;
  if (s == "cluster" || s == "cluster_by_household") return SeType::ClusterHousehold;
  return std::nullopt;
}

std::string column_id(Estimator e, Outcome o) { return std::string(to_string(e)) + "-" + std::string(to_string(o)); }

std::vector<std::string> control_labels(bool include_credit_square) {
  using namespace label;
  std::vector<std::string> l{std::string(kLnCredit)};
  if (include_credit_square) l.emplace_back(kLnCreditSq);
  for (auto s : {kAge, kAgeSq, kMale, kSchooling, kSchoolingSq, kMarried, kEmployed, kHealth, kLnIncome,
                 kLnIncomeSq, kLnWealth, kLnWealthSq, kBusiness, kFamilySize, kRural})
    l.emplace_back(s);
  return l;
}

namespace {

std::vector<double> control_values(const HouseholdRecord& r, bool credit_square) {
  const double lc = std::log1p(r.credit_access);
  const double li = std::log(r.income);
  const double lw = std::log(r.wealth);
  std::vector<double> v{lc};
  if (credit_square) v.push_back(lc * lc);
  v.insert(v.end(), {r.age, r.age * r.age / 100.0, double(r.male), r.schooling, r.schooling * r.schooling / 100.0,
                     double(r.married), double(r.employed), double(r.health), li, li * li, lw, lw * lw,
                     double(r.business), double(r.family_size), double(r.rural)});
  return v;
}

}  // namespace

Design build_design(std::span<const HouseholdRecord> records, const RegressionSpec& spec,
                    const IntensityTable& table) {
  Design d;
  const bool fe = spec.estimator == Estimator::WithinFe;
  d.has_intercept = !fe;

  FootprintPanel fp = footprint_panel(records, table);
  d.deleted_rows = fp.errors;

  std::vector<std::size_t> rows;
  std::vector<double> outcome;
  for (const auto& pf : fp.rows) {
    const HouseholdRecord& r = records[pf.row];
    std::string cause;
    if (!(r.income > 0)) cause = "income must be positive for ln(Income)";
    else if (!(r.wealth > 0)) cause = "wealth must be positive for ln(Wealth)";
    else if (r.credit_access < 0) cause = "negative credit_access";
    if (!cause.empty()) {
      d.deleted_rows.push_back({pf.row, 0, cause});
      continue;
    }
    double y = 0;
    switch (spec.outcome) {
      case Outcome::LnEnergy: y = std::log(pf.footprint.energy_use); break;
      case Outcome::LnCarbon: y = std::log(pf.footprint.carbon_emissions); break;
      case Outcome::LnEfficiency: y = std::log(pf.footprint.efficiency); break;
    }
    rows.push_back(pf.row);
    outcome.push_back(y);
  }
  std::sort(d.deleted_rows.begin(), d.deleted_rows.end(),
            [](const RowError& a, const RowError& b) { return a.row < b.row; });

  std::vector<std::string> provinces, years;
  {
    std::set<std::string> ps;
    std::set<int> ys;
    for (std::size_t i : rows) {
      ps.insert(records[i].province);
      ys.insert(records[i].year);
    }
    if (spec.province_dummies && !fe)
      for (auto it = std::next(ps.begin(), ps.empty() ? 0 : 1); it != ps.end(); ++it) provinces.push_back(*it);
    if (spec.year_dummies)
      for (auto it = std::next(ys.begin(), ys.empty() ? 0 : 1); it != ys.end(); ++it)
        years.push_back(std::to_string(*it));
  }

  if (d.has_intercept) d.labels.emplace_back(label::kIntercept);
  for (auto& l : control_labels(spec.include_credit_square)) d.labels.push_back(l);
  for (auto& p : provinces) d.labels.push_back(std::string(label::kProvincePrefix) + p);
  for (auto& y : years) d.labels.push_back(std::string(label::kYearPrefix) + y);

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(d.labels.size());
  d.y = Eigen::Map<const Eigen::VectorXd>(outcome.data(), n);
  d.x = Eigen::MatrixXd::Zero(n, p);
  d.group.resize(rows.size());
  d.years.resize(rows.size());

  std::unordered_map<std::string, int> gid;
  const Eigen::Index controls_at = d.has_intercept ? 1 : 0;
  const Eigen::Index provinces_at = controls_at + static_cast<Eigen::Index>(control_labels(spec.include_credit_square).size());
  const Eigen::Index years_at = provinces_at + static_cast<Eigen::Index>(provinces.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const HouseholdRecord& r = records[rows[static_cast<std::size_t>(i)]];
    if (d.has_intercept) d.x(i, 0) = 1.0;
    auto v = control_values(r, spec.include_credit_square);
    for (std::size_t c = 0; c < v.size(); ++c) d.x(i, controls_at + static_cast<Eigen::Index>(c)) = v[c];
    auto pit = std::lower_bound(provinces.begin(), provinces.end(), r.province);
    if (pit != provinces.end() && *pit == r.province) d.x(i, provinces_at + (pit - provinces.begin())) = 1.0;
    auto ys = std::to_string(r.year);
    auto yit = std::find(years.begin(), years.end(), ys);
    if (yit != years.end()) d.x(i, years_at + (yit - years.begin())) = 1.0;

    auto [it, inserted] = gid.try_emplace(r.household_id, static_cast<int>(d.group_names.size()));
    if (inserted) d.group_names.push_back(r.household_id);
    d.group[static_cast<std::size_t>(i)] = it->second;
    d.years[static_cast<std::size_t>(i)] = r.year;
  }
  return d;
}

std::optional<double> FitResult::coefficient(std::string_view l) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return coefficients(static_cast<Eigen::Index>(i));
  return std::nullopt;
}

std::optional<double> FitResult::standard_error(std::string_view l) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return standard_errors(static_cast<Eigen::Index>(i));
  return std::nullopt;
}

double FitResult::level_constant() const {
  if (estimator == Estimator::PooledOls) return coefficient(label::kIntercept).value_or(0.0);
  double c = outcome_mean;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = regressor_means.find(labels[i]);
    if (it != regressor_means.end()) c -= coefficients(static_cast<Eigen::Index>(i)) * it->second;
  }
  return c;
}

namespace {

int group_count(const std::vector<int>& group) {
  int g = 0;
  for (int v : group) g = std::max(g, v + 1);
  return g;
}

Eigen::VectorXd cluster_se(const Eigen::MatrixXd& x, const Eigen::VectorXd& u, const std::vector<int>& group,
                           const Eigen::MatrixXd& bread, std::size_t n, std::size_t k, bool parallel) {
  const int g = group_count(group);
  Eigen::MatrixXd s = parallel ? kernels::cluster_scores_parallel(x, u, group, g)
                               : kernels::cluster_scores_serial(x, u, group, g);
  Eigen::MatrixXd meat = s.transpose() * s;
  double c = 1.0;
  if (g > 1 && n > k) c = double(g) / double(g - 1) * double(n - 1) / double(n - k);
  Eigen::MatrixXd v = c * bread * meat * bread;
  return v.diagonal().cwiseMax(0.0).cwiseSqrt();
}

void record_drops(FitResult& fit, const std::vector<std::string>& labels, const std::vector<int>& dropped,
                  RankPolicy policy) {
  if (dropped.empty()) return;
  std::string names;
  for (int j : dropped) names += (names.empty() ? "" : ", ") + labels[static_cast<std::size_t>(j)];
  if (policy == RankPolicy::Strict)
    throw Error(ErrorKind::RankDeficient, "collinear column(s): " + names);
  for (int j : dropped)
    fit.dropped_terms.push_back({labels[static_cast<std::size_t>(j)], "RankDeficient: collinear with earlier columns"});
}

}  // namespace

FitResult fit_pooled_ols(const Design& d, const FitOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(d.x.rows());
  LeastSquares ls = householder_least_squares(d.x, d.y);
  FitResult fit;
  fit.estimator = Estimator::PooledOls;
  fit.se_type = opts.se_type;
  record_drops(fit, d.labels, ls.dropped, opts.rank_policy);
  const std::size_t k = ls.kept.size();
  if (n <= k) throw Error(ErrorKind::Underdetermined, std::to_string(n) + " rows for " + std::to_string(k) + " columns");

  fit.n_obs = fit.n_identified = n;
  fit.n_groups = static_cast<std::size_t>(group_count(d.group));
  fit.df_resid = n - k;
  fit.coefficients = ls.beta;
  fit.residuals = ls.residuals;
  fit.outcome_mean = d.y.mean();

  Eigen::MatrixXd xk(d.x.rows(), static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c) {
    xk.col(static_cast<Eigen::Index>(c)) = d.x.col(ls.kept[c]);
    fit.labels.push_back(d.labels[static_cast<std::size_t>(ls.kept[c])]);
    fit.regressor_means[fit.labels.back()] = xk.col(static_cast<Eigen::Index>(c)).mean();
  }

  const double ssr = ls.residuals.squaredNorm();
  const double tss = d.has_intercept ? (d.y.array() - fit.outcome_mean).square().sum() : d.y.squaredNorm();
  fit.r2 = tss > 0 ? 1.0 - ssr / tss : 0.0;
  const double slopes = d.has_intercept ? double(k) - 1.0 : double(k);
  const double dft = d.has_intercept ? double(n) - 1.0 : double(n);
  fit.adjusted_r2 = 1.0 - (1.0 - fit.r2) * dft / (dft - slopes);

  Eigen::MatrixXd bread = ls.unscaled_covariance();
  if (opts.se_type == SeType::Classical) {
    const double sigma2 = ssr / double(fit.df_resid);
    fit.standard_errors = (sigma2 * bread.diagonal()).cwiseMax(0.0).cwiseSqrt();
  } else {
    fit.standard_errors = cluster_se(xk, ls.residuals, d.group, bread, n, k, opts.parallel);
  }
  return fit;
}

FitResult fit_within_fe(const Design& d, const FitOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(d.x.rows());
  const int groups = group_count(d.group);
  std::vector<int> size(static_cast<std::size_t>(groups), 0);
  for (int g : d.group) ++size[static_cast<std::size_t>(g)];

  // Identified sample: households observed at least twice, re-indexed densely.
  std::vector<int> dense(static_cast<std::size_t>(groups), -1);
  int g2 = 0;
  for (int g = 0; g < groups; ++g)
    if (size[static_cast<std::size_t>(g)] >= 2) dense[static_cast<std::size_t>(g)] = g2++;
  std::vector<Eigen::Index> idx;
  std::vector<int> sub_group;
  for (std::size_t i = 0; i < n; ++i) {
    int dg = dense[static_cast<std::size_t>(d.group[i])];
    if (dg < 0) continue;
    idx.push_back(static_cast<Eigen::Index>(i));
    sub_group.push_back(dg);
  }
  if (g2 == 0) throw Error(ErrorKind::InsufficientPanel, "no household is observed more than once");

  const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
  const Eigen::Index p = d.x.cols();
  Eigen::MatrixXd work(m, p + 1);
  for (Eigen::Index r = 0; r < m; ++r) {
    work.row(r).head(p) = d.x.row(idx[static_cast<std::size_t>(r)]);
    work(r, p) = d.y(idx[static_cast<std::size_t>(r)]);
  }
  Eigen::MatrixXd raw_x = work.leftCols(p);
  if (opts.parallel)
    kernels::demean_parallel(work, sub_group, g2);
  else
    kernels::demean_serial(work, sub_group, g2);

  FitResult fit;
  fit.estimator = Estimator::WithinFe;
  fit.se_type = opts.se_type;

  std::vector<int> varying;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double before = raw_x.col(j).norm();
    const double after = work.col(j).norm();
    if (before == 0.0 || after <= 1e-10 * before)
      fit.dropped_terms.push_back({d.labels[static_cast<std::size_t>(j)], "no within-household variation"});
    else
      varying.push_back(static_cast<int>(j));
  }
  if (varying.empty()) throw Error(ErrorKind::NoWithinVariation, "every regressor is time-invariant");

  Eigen::MatrixXd xv(m, static_cast<Eigen::Index>(varying.size()));
  std::vector<std::string> vlabels;
  for (std::size_t c = 0; c < varying.size(); ++c) {
    xv.col(static_cast<Eigen::Index>(c)) = work.col(varying[c]);
    vlabels.push_back(d.labels[static_cast<std::size_t>(varying[c])]);
  }
  const Eigen::VectorXd yw = work.col(p);
  LeastSquares ls = householder_least_squares(xv, yw);
  record_drops(fit, vlabels, ls.dropped, opts.rank_policy);
  const std::size_t k = ls.kept.size();
  if (static_cast<std::size_t>(m) <= k + static_cast<std::size_t>(g2))
    throw Error(ErrorKind::Underdetermined, "no residual degrees of freedom after absorbing household effects");

  fit.n_obs = n;
  fit.n_identified = static_cast<std::size_t>(m);
  fit.n_groups = static_cast<std::size_t>(g2);
  fit.n_singletons = static_cast<std::size_t>(groups - g2);
  fit.df_resid = static_cast<std::size_t>(m) - k - static_cast<std::size_t>(g2);
  fit.coefficients = ls.beta;
  fit.outcome_mean = d.y.mean();

  Eigen::MatrixXd xk(m, static_cast<Eigen::Index>(k));
  std::vector<int> kept_cols;
  for (std::size_t c = 0; c < k; ++c) {
    xk.col(static_cast<Eigen::Index>(c)) = xv.col(ls.kept[c]);
    kept_cols.push_back(varying[static_cast<std::size_t>(ls.kept[c])]);
    fit.labels.push_back(vlabels[static_cast<std::size_t>(ls.kept[c])]);
    fit.regressor_means[fit.labels.back()] = d.x.col(kept_cols.back()).mean();
  }

  fit.residuals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < m; ++r) fit.residuals(idx[static_cast<std::size_t>(r)]) = ls.residuals(r);

  // c_i = mean_i(y - x * beta), for every household including singletons.
  std::vector<double> sum(static_cast<std::size_t>(groups), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double xb = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      xb += d.x(static_cast<Eigen::Index>(i), kept_cols[c]) * fit.coefficients(static_cast<Eigen::Index>(c));
    sum[static_cast<std::size_t>(d.group[i])] += d.y(static_cast<Eigen::Index>(i)) - xb;
  }
  fit.fixed_effects.resize(static_cast<std::size_t>(groups));
  for (int g = 0; g < groups; ++g)
    fit.fixed_effects[static_cast<std::size_t>(g)] = sum[static_cast<std::size_t>(g)] / size[static_cast<std::size_t>(g)];

  const double ssr = ls.residuals.squaredNorm();
  const double tss = yw.squaredNorm();
  fit.r2 = tss > 0 ? 1.0 - ssr / tss : 0.0;
  fit.adjusted_r2 = tss > 0 ? 1.0 - (ssr / double(fit.df_resid)) / (tss / double(m - g2)) : 0.0;

  Eigen::MatrixXd bread = ls.unscaled_covariance();
  if (opts.se_type == SeType::Classical) {
    const double sigma2 = ssr / double(fit.df_resid);
    fit.standard_errors = (sigma2 * bread.diagonal()).cwiseMax(0.0).cwiseSqrt();
  } else {
    fit.standard_errors =
        cluster_se(xk, ls.residuals, sub_group, bread, static_cast<std::size_t>(m), k, opts.parallel);
  }
  return fit;
}

FitResult fit(std::span<const HouseholdRecord> records, const RegressionSpec& spec, const IntensityTable& table) {
  Design d = build_design(records, spec, table);
  FitOptions opts;
  opts.se_type = spec.se_type;
  return spec.estimator == Estimator::PooledOls ? fit_pooled_ols(d, opts) : fit_within_fe(d, opts);
}

IdentityReport coefficient_identity_check(const FitResult& e, const FitResult& c, const FitResult& ee,
                                          double tolerance) {
  if (e.estimator != c.estimator || e.estimator != ee.estimator)
    throw Error(ErrorKind::SpecMismatch, "fits use different estimators");
  if (e.n_obs != c.n_obs || e.n_obs != ee.n_obs)
    throw Error(ErrorKind::SpecMismatch, "fits use different samples");
  if (e.labels != c.labels || e.labels != ee.labels)
    throw Error(ErrorKind::SpecMismatch, "fits retain different regressors");
  IdentityReport rep;
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i);
    IdentityRow row{e.labels[i], e.coefficients(j), c.coefficients(j), ee.coefficients(j), 0, false};
    row.residual = row.efficiency - (row.carbon - row.energy);
    row.ok = std::abs(row.residual) <= tolerance;
    rep.all_ok = rep.all_ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace hhcarbon
