#include "hhcarbon/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hhcarbon/csv.hpp"
#include "hhcarbon/error.hpp"

namespace hhcarbon {

int significance_stars(double estimate, double std_error) {
  if (!(std_error > 0)) return 0;
  const double p = std::erfc(std::abs(estimate / std_error) / std::sqrt(2.0));
  return p < 0.01 ? 3 : p < 0.05 ? 2 : p < 0.10 ? 1 : 0;
}

Json fit_to_json(const FitResult& fit, const RegressionSpec& spec) {
  Json j;
  j["column_id"] = column_id(fit.estimator, spec.outcome);
  j["outcome"] = std::string(to_string(spec.outcome));
  j["estimator"] = std::string(to_string(fit.estimator));
  j["se_type"] = std::string(to_string(fit.se_type));
  j["credit_square"] = spec.include_credit_square;
  j["n_obs"] = fit.n_obs;
  j["n_identified"] = fit.n_identified;
  j["n_groups"] = fit.n_groups;
  j["n_singletons"] = fit.n_singletons;
  j["df_resid"] = fit.df_resid;
  j["r2"] = fit.r2;
  j["adjusted_r2"] = fit.adjusted_r2;
  j["adjusted_r2_kind"] = fit.estimator == Estimator::WithinFe ? "within" : "overall";
  j["outcome_mean"] = fit.outcome_mean;
  j["level_constant"] = fit.level_constant();
  Json coefs = Json::array();
  for (std::size_t i = 0; i < fit.labels.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    coefs.push_back({{"label", fit.labels[i]},
                     {"estimate", fit.coefficients(k)},
                     {"std_error", fit.standard_errors(k)},
                     {"stars", significance_stars(fit.coefficients(k), fit.standard_errors(k))}});
  }
  j["coefficients"] = std::move(coefs);
  Json dropped = Json::array();
  for (const auto& d : fit.dropped_terms) dropped.push_back({{"label", d.label}, {"reason", d.reason}});
  j["dropped_terms"] = std::move(dropped);
  Json means = Json::object();
  for (const auto& l : fit.labels) means[l] = fit.regressor_means.at(l);
  j["regressor_means"] = std::move(means);
  return j;
}

FitResult fit_from_json(const Json& j) {
  try {
    FitResult f;
    auto est = parse_estimator(j.at("estimator").get<std::string>());
    auto se = parse_se_type(j.at("se_type").get<std::string>());
    if (!est || !se) throw Error(ErrorKind::Parse, "fit report has unknown estimator or se_type");
    f.estimator = *est;
    f.se_type = *se;
    const auto& coefs = j.at("coefficients");
    f.coefficients.resize(static_cast<Eigen::Index>(coefs.size()));
    f.standard_errors.resize(static_cast<Eigen::Index>(coefs.size()));
    for (std::size_t i = 0; i < coefs.size(); ++i) {
      f.labels.push_back(coefs[i].at("label").get<std::string>());
      f.coefficients(static_cast<Eigen::Index>(i)) = coefs[i].at("estimate").get<double>();
      f.standard_errors(static_cast<Eigen::Index>(i)) = coefs[i].at("std_error").get<double>();
    }
    for (const auto& d : j.at("dropped_terms"))
      f.dropped_terms.push_back({d.at("label").get<std::string>(), d.at("reason").get<std::string>()});
    for (const auto& [k, v] : j.at("regressor_means").items()) f.regressor_means[k] = v.get<double>();
    f.n_obs = j.at("n_obs").get<std::size_t>();
    f.n_identified = j.value("n_identified", f.n_obs);
    f.n_groups = j.value("n_groups", std::size_t{0});
    f.n_singletons = j.value("n_singletons", std::size_t{0});
    f.df_resid = j.value("df_resid", std::size_t{0});
    f.r2 = j.value("r2", 0.0);
    f.adjusted_r2 = j.at("adjusted_r2").get<double>();
    f.outcome_mean = j.at("outcome_mean").get<double>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed fit report: ") + e.what());
  }
}

Json identity_to_json(const IdentityReport& report, Estimator estimator) {
  Json j;
  j["estimator"] = std::string(to_string(estimator));
  j["all_ok"] = report.all_ok;
  Json rows = Json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"label", r.label},
                    {"energy", r.energy},
                    {"carbon", r.carbon},
                    {"efficiency", r.efficiency},
                    {"residual", r.residual},
                    {"ok", r.ok}});
  j["rows"] = std::move(rows);
  return j;
}

namespace {

bool is_dummy(const std::string& l) {
  return l.rfind(label::kProvincePrefix, 0) == 0 || l.rfind(label::kYearPrefix, 0) == 0;
}

}  // namespace

std::string format_fit_table(const std::vector<ReportColumn>& columns) {
  std::vector<std::string> rows;
  auto add_row = [&](const std::string& l) {
    if (std::find(rows.begin(), rows.end(), l) == rows.end()) rows.push_back(l);
  };
  // Paper row order first, then anything else the fits carry (e.g. Intercept).
  for (const auto& l : control_labels(true))
    for (const auto& c : columns)
      if (c.fit.coefficient(l)) add_row(l);
  for (const auto& c : columns)
    for (const auto& l : c.fit.labels)
      if (!is_dummy(l)) add_row(l);

  std::vector<std::vector<std::string>> cells;  // first column = row label
  std::vector<std::string> head{""};
  for (const auto& c : columns) head.push_back(c.title);
  cells.push_back(head);
  std::vector<std::string> outcomes{""};
  for (const auto& c : columns) outcomes.push_back("ln(" + std::string(to_string(c.spec.outcome)) + ")");
  cells.push_back(outcomes);

  for (const auto& l : rows) {
    std::vector<std::string> est{l}, se{""};
    for (const auto& c : columns) {
      auto b = c.fit.coefficient(l);
      if (!b) {
        est.emplace_back("");
        se.emplace_back("");
        continue;
      }
      double s = *c.fit.standard_error(l);
      est.push_back(csv::format_short(*b) + std::string(static_cast<std::size_t>(significance_stars(*b, s)), '*'));
      se.push_back("(" + csv::format_short(s) + ")");
    }
    cells.push_back(std::move(est));
    cells.push_back(std::move(se));
  }
  auto has_prefix = [](const FitResult& f, std::string_view p) {
    for (const auto& l : f.labels)
      if (l.rfind(p, 0) == 0) return true;
    for (const auto& d : f.dropped_terms)
      if (d.label.rfind(p, 0) == 0) return true;
    return false;
  };
  std::vector<std::string> prov{"Province"}, year{"Year"}, obs{"Observations"}, r2{"Adjusted R^2"};
  for (const auto& c : columns) {
    prov.push_back(has_prefix(c.fit, label::kProvincePrefix) ? "Yes" : "");
    year.push_back(has_prefix(c.fit, label::kYearPrefix) ? "Yes" : "");
    obs.push_back(std::to_string(c.fit.n_obs));
    r2.push_back(csv::format_short(c.fit.adjusted_r2));
  }
  cells.push_back(prov);
  cells.push_back(year);
  cells.push_back(obs);
  cells.push_back(r2);

  std::vector<std::size_t> width(columns.size() + 1, 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        line += row[i] + std::string(width[i] - row[i].size(), ' ');
      } else {
        line += "  " + std::string(width[i] - row[i].size(), ' ') + row[i];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  std::string dropped;
  for (const auto& c : columns)
    for (const auto& d : c.fit.dropped_terms)
      dropped += "  " + c.title + ": " + d.label + " (" + d.reason + ")\n";
  if (!dropped.empty()) out << "Dropped terms:\n" << dropped;
  return out.str();
}

}  // namespace hhcarbon
