#include "hhcarbon/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "hhcarbon/error.hpp"
#include "hhcarbon/regression.hpp"
#include "hhcarbon/rng.hpp"

namespace hhcarbon {

std::map<std::string, double> DGPConfig::default_gamma() {
  using namespace label;
  return {
      {std::string(kAge), -0.010},         {std::string(kAgeSq), 0.004},
      {std::string(kMale), -0.048},        {std::string(kSchooling), 0.010},
      {std::string(kSchoolingSq), -0.015}, {std::string(kMarried), 0.060},
      {std::string(kEmployed), -0.036},    {std::string(kHealth), -0.034},
      {std::string(kLnIncome), -0.145},    {std::string(kLnIncomeSq), 0.012},
      {std::string(kLnWealth), -0.056},    {std::string(kLnWealthSq), 0.006},
      {std::string(kBusiness), 0.078},     {std::string(kFamilySize), 0.089},
      {std::string(kRural), -0.133},
  };
}

namespace {

constexpr double kMaxTotalSpend = 1e12;

void check_config(const DGPConfig& c) {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InfeasibleConfig, why); };
  if (c.n_households < 1) fail("n_households must be at least 1");
  if (c.years.empty()) fail("years must be non-empty");
  std::set<int> seen;
  for (int y : c.years) {
    if (!year_covered(y)) fail("year " + std::to_string(y) + " outside 2005-2019");
    if (!seen.insert(y).second) fail("duplicate year " + std::to_string(y));
  }
  if (!(c.effect_sd >= 0) || !(c.noise_sd >= 0)) fail("standard deviations must be non-negative");
  if (!(c.presence > 0 && c.presence <= 1)) fail("presence must lie in (0, 1]");
  if (!(c.credit_zero_share >= 0 && c.credit_zero_share < 1)) fail("credit_zero_share must lie in [0, 1)");
  if (c.n_provinces < 1) fail("n_provinces must be at least 1");
  const auto known = control_labels(true);
  for (const auto& [k, _] : c.gamma)
    if (std::find(known.begin(), known.end(), k) == known.end() || k == label::kLnCredit || k == label::kLnCreditSq)
      fail("unknown control in gamma: " + k);
  if (c.allocation == Allocation::CustomShares) {
    double total = 0;
    for (double s : c.custom_shares) {
      if (!(s >= 0) || !std::isfinite(s)) fail("custom shares must be finite and non-negative");
      total += s;
    }
    if (!(total > 0)) fail("custom shares sum to zero");
  }
}

std::string province_name(int p) {
  std::string s = std::to_string(p);
  return "P" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

std::string household_name(std::size_t h) {
  std::string s = std::to_string(h);
  return "H" + std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

double gamma_of(const DGPConfig& c, std::string_view l) {
  auto it = c.gamma.find(std::string(l));
  return it == c.gamma.end() ? 0.0 : it->second;
}

struct HouseholdDraw {
  std::vector<HouseholdRecord> records;
  std::vector<double> targets;
};

HouseholdDraw draw_household(const DGPConfig& c, const std::vector<int>& years, std::size_t h,
                             const IntensityTable& table) {
  using namespace label;
  Rng rng(c.seed, h);
  HouseholdDraw out;

  // Time-invariant traits.
  const std::string id = household_name(h);
  const std::string province = province_name(rng.uniform_int(1, c.n_provinces));
  const int rural = rng.bernoulli(0.33) ? 1 : 0;
  const int male = rng.bernoulli(0.77) ? 1 : 0;
  const double base_age = rng.uniform_int(20, 68);
  double schooling = rng.uniform_int(0, 16);
  int married = rng.bernoulli(0.85) ? 1 : 0;
  int business = rng.bernoulli(0.14) ? 1 : 0;
  int family = rng.uniform_int(1, 7);
  const double ln_income_base = rng.normal(10.8, 0.8);
  const double ln_wealth_base = rng.normal(12.8, 1.2);
  const double effect = rng.normal(0.0, c.effect_sd);

  std::array<double, kSectorCount> shares{};
  switch (c.allocation) {
    case Allocation::RandomFixedShares:
      for (auto& s : shares) s = 0.2 + rng.uniform();
      break;
    case Allocation::EqualShares: shares.fill(1.0); break;
    case Allocation::CustomShares: shares = c.custom_shares; break;
  }
  double share_total = 0;
  for (double s : shares) share_total += s;
  for (auto& s : shares) s /= share_total;

  bool any = false;
  for (std::size_t w = 0; w < years.size(); ++w) {
    const int year = years[w];
    // Every draw happens whether or not the wave is kept, so presence does
    // not shift the stream.
    const bool present = rng.bernoulli(c.presence) || (!any && w + 1 == years.size());
    const double age = std::clamp(base_age + (year - years.front()) + rng.uniform_int(-1, 1), 16.0, 80.0);
    if (rng.bernoulli(0.1)) schooling = std::min(schooling + 1.0, 22.0);
    if (rng.bernoulli(0.05)) married = 1 - married;
    const int employed = rng.bernoulli(0.67) ? 1 : 0;
    const int health = rng.bernoulli(0.42) ? 1 : 0;
    if (rng.bernoulli(0.08)) business = 1 - business;
    if (rng.bernoulli(0.15)) family = std::clamp(family + (rng.bernoulli(0.5) ? 1 : -1), 1, 20);
    const double income = std::clamp(std::exp(ln_income_base + rng.normal(0.0, 0.3)), 1.05, 690180.0);
    const double wealth = std::clamp(std::exp(ln_wealth_base + rng.normal(0.0, 0.3)), 4.0, 9794016.0);
    const bool zero_credit = rng.bernoulli(c.credit_zero_share);
    const double credit_draw = std::exp(rng.normal(10.0, 1.2));
    const double credit = zero_credit ? 0.0 : std::min(std::round(credit_draw), 1e6);
    const double noise = rng.normal(0.0, c.noise_sd);
    if (!present) continue;
    any = true;

    HouseholdRecord r;
    r.household_id = id;
    r.year = year;
    r.province = province;
    r.rural = rural;
    r.age = age;
    r.male = male;
    r.schooling = schooling;
    r.married = married;
    r.employed = employed;
    r.health = health;
    r.income = income;
    r.wealth = wealth;
    r.business = business;
    r.family_size = family;
    r.credit_access = credit;

    const double lc = std::log1p(credit);
    const double li = std::log(income);
    const double lw = std::log(wealth);
    double target = c.intercept + c.beta_credit * lc + c.beta_credit_square.value_or(0.0) * lc * lc;
    target += gamma_of(c, kAge) * age + gamma_of(c, kAgeSq) * age * age / 100.0;
    target += gamma_of(c, kMale) * male;
    target += gamma_of(c, kSchooling) * schooling + gamma_of(c, kSchoolingSq) * schooling * schooling / 100.0;
    target += gamma_of(c, kMarried) * married + gamma_of(c, kEmployed) * employed + gamma_of(c, kHealth) * health;
    target += gamma_of(c, kLnIncome) * li + gamma_of(c, kLnIncomeSq) * li * li;
    target += gamma_of(c, kLnWealth) * lw + gamma_of(c, kLnWealthSq) * lw * lw;
    target += gamma_of(c, kBusiness) * business + gamma_of(c, kFamilySize) * family + gamma_of(c, kRural) * rural;
    if (auto it = c.year_effects.find(year); it != c.year_effects.end()) target += it->second;
    target += effect + noise;

    // energy = total * sum_s share_s * e_s / 1e4 must equal exp(target).
    const auto& row = table.rows()[static_cast<std::size_t>(year - kFirstYear)];
    double per_yuan = 0;
    for (std::size_t s = 0; s < kSectorCount; ++s) per_yuan += shares[s] * row.energy[s].value() / 1e4;
    const double total = std::exp(target) / per_yuan;
    if (!std::isfinite(total) || !(total > 0) || total > kMaxTotalSpend)
      throw Error(ErrorKind::InfeasibleConfig, "target footprint needs total spend " + std::to_string(total) +
                                                   " for household " + id + " in " + std::to_string(year));
    for (std::size_t s = 0; s < kSectorCount; ++s) r.spend[s] = total * shares[s];

    out.records.push_back(std::move(r));
    out.targets.push_back(target);
  }
  return out;
}

}  // namespace

SynthPanel generate_panel(const DGPConfig& config, Execution exec) {
  check_config(config);
  std::vector<int> years = config.years;
  std::sort(years.begin(), years.end());
  const IntensityTable& table = builtin_table();

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(config.n_households);
  std::vector<HouseholdDraw> draws(config.n_households);
  if (exec == Execution::Parallel) {
    std::string failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t h = 0; h < n; ++h) {
      try {
        draws[static_cast<std::size_t>(h)] = draw_household(config, years, static_cast<std::size_t>(h), table);
      } catch (const Error& e) {
#pragma omp critical
        if (failure.empty()) failure = e.what();
      }
    }
    if (!failure.empty()) throw Error(ErrorKind::InfeasibleConfig, failure);
  } else {
    for (std::ptrdiff_t h = 0; h < n; ++h)
      draws[static_cast<std::size_t>(h)] = draw_household(config, years, static_cast<std::size_t>(h), table);
  }

  SynthPanel panel;
  for (auto& d : draws) {
    std::move(d.records.begin(), d.records.end(), std::back_inserter(panel.records));
    panel.target_ln_energy.insert(panel.target_ln_energy.end(), d.targets.begin(), d.targets.end());
  }
  return panel;
}

std::vector<HouseholdRecord> generate(const DGPConfig& config) { return generate_panel(config).records; }

std::vector<HouseholdRecord> repeated_households_filter(std::span<const HouseholdRecord> records) {
  std::unordered_map<std::string, std::set<int>> years;
  for (const auto& r : records) years[r.household_id].insert(r.year);
  std::vector<HouseholdRecord> out;
  for (const auto& r : records)
    if (years[r.household_id].size() >= 2) out.push_back(r);
  return out;
}

namespace {

CoverageDraw coverage_draw(const DGPConfig& base, std::uint64_t seed) {
  DGPConfig c = base;
  c.seed = seed;
  SynthPanel p = generate_panel(c, Execution::Serial);
  RegressionSpec spec;
  spec.outcome = Outcome::LnEnergy;
  spec.estimator = Estimator::WithinFe;
  spec.include_credit_square = c.beta_credit_square.has_value();
  Design d = build_design(p.records, spec);
  FitOptions opts;
  opts.parallel = false;
  FitResult f = fit_within_fe(d, opts);
  CoverageDraw draw;
  draw.seed = seed;
  draw.estimate = *f.coefficient(label::kLnCredit);
  draw.std_error = *f.standard_error(label::kLnCredit);
  draw.covered = std::abs(draw.estimate - c.beta_credit) < 3.0 * draw.std_error;
  return draw;
}

}  // namespace

CoverageResult credit_coverage(const DGPConfig& config, std::size_t replications, Execution exec) {
  CoverageResult res;
  res.draws.resize(replications);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(replications);
  if (exec == Execution::Parallel) {
    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      try {
        res.draws[static_cast<std::size_t>(r)] = coverage_draw(config, config.seed + static_cast<std::uint64_t>(r));
      } catch (const std::exception& e) {
#pragma omp critical
        if (failure.empty()) failure = e.what();
      }
    }
    if (!failure.empty()) throw Error(ErrorKind::InfeasibleConfig, failure);
  } else {
    for (std::ptrdiff_t r = 0; r < n; ++r)
      res.draws[static_cast<std::size_t>(r)] = coverage_draw(config, config.seed + static_cast<std::uint64_t>(r));
  }
  for (const auto& d : res.draws) res.covered += d.covered ? 1 : 0;
  return res;
}

}  // namespace hhcarbon
