#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hhcarbon/error.hpp"
#include "hhcarbon/regression.hpp"
#include "hhcarbon/rng.hpp"
#include "hhcarbon/synth.hpp"

using namespace hhcarbon;

namespace {

std::string to_text(const std::vector<HouseholdRecord>& r) {
  std::ostringstream out;
  write_panel(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(0x9E3779B97F4A7C15ULL) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("rng streams are reproducible and in range") {
  Rng a(7, 3), b(7, 3), c(7, 4);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs |= x != c.uniform();
  }
  CHECK(differs);
  Rng d(1, 0);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = d.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sq / n - 1) < 0.05);
  for (int i = 0; i < 1000; ++i) {
    int k = d.uniform_int(2, 5);
    CHECK(k >= 2);
    CHECK(k <= 5);
  }
}

TEST_CASE("generation is deterministic and partition independent") {
  DGPConfig cfg;
  cfg.n_households = 300;
  auto a = generate_panel(cfg, Execution::Parallel);
  auto b = generate_panel(cfg, Execution::Serial);
  CHECK(to_text(a.records) == to_text(b.records));
  CHECK(a.target_ln_energy == b.target_ln_energy);
  CHECK(to_text(generate(cfg)) == to_text(a.records));
  cfg.seed = 8;
  CHECK(to_text(generate(cfg)) != to_text(a.records));
}

TEST_CASE("generated records satisfy the ingestion ranges and round-trip the target") {
  DGPConfig cfg;
  cfg.n_households = 400;
  auto p = generate_panel(cfg);
  REQUIRE(p.records.size() == p.target_ln_energy.size());
  std::set<std::string> male_flip;
  std::map<std::string, int> male;
  for (std::size_t i = 0; i < p.records.size(); ++i) {
    const auto& r = p.records[i];
    CHECK(validate_record(r, RangePolicy{true}).empty());
    CHECK(std::abs(std::log(estimate_footprint(r.bundle()).energy_use) - p.target_ln_energy[i]) < 1e-9);
    auto [it, fresh] = male.try_emplace(r.household_id, r.male);
    if (!fresh && it->second != r.male) male_flip.insert(r.household_id);
  }
  CHECK(male_flip.empty());

  std::ostringstream out;
  write_panel(out, p.records);
  std::istringstream in(out.str());
  auto back = read_panel(in, RangePolicy{true});
  CHECK(back.errors.empty());
  CHECK(back.warnings.empty());
  CHECK(to_text(back.records) == out.str());
}

TEST_CASE("noiseless DGP recovers beta exactly") {
  for (bool square : {false, true}) {
    DGPConfig cfg;
    cfg.n_households = 200;
    cfg.noise_sd = 0;
    cfg.beta_credit = 0.0123;
    if (square) cfg.beta_credit_square = -0.0007;
    auto p = generate_panel(cfg);
    RegressionSpec spec;
    spec.estimator = Estimator::WithinFe;
    spec.include_credit_square = square;
    FitResult f = fit(p.records, spec);
    CHECK(std::abs(*f.coefficient(label::kLnCredit) - 0.0123) < 1e-6);
    if (square) CHECK(std::abs(*f.coefficient(label::kLnCreditSq) + 0.0007) < 1e-6);
    for (const auto& [name, g] : cfg.gamma)
      if (auto b = f.coefficient(name)) CHECK(std::abs(*b - g) < 1e-6);
  }
}

TEST_CASE("small Monte Carlo coverage run") {
  DGPConfig cfg;
  cfg.n_households = 300;
  auto a = credit_coverage(cfg, 20, Execution::Parallel);
  auto b = credit_coverage(cfg, 20, Execution::Serial);
  REQUIRE(a.draws.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(a.draws[i].seed == cfg.seed + i);
    CHECK(a.draws[i].estimate == b.draws[i].estimate);
  }
  CHECK(a.covered >= 18);
}

TEST_CASE("repeated households filter") {
  auto rec = [](std::string id, int year) {
    HouseholdRecord r;
    r.household_id = std::move(id);
    r.year = year;
    return r;
  };
  std::vector<HouseholdRecord> in{rec("a", 2011), rec("b", 2011), rec("a", 2013), rec("c", 2015), rec("c", 2015)};
  auto out = repeated_households_filter(in);
  REQUIRE(out.size() == 2);
  CHECK(out[0].household_id == "a");
  CHECK(out[1].household_id == "a");
  CHECK(repeated_households_filter(std::vector<HouseholdRecord>{}).empty());
}

TEST_CASE("infeasible configurations") {
  auto kind = [](const DGPConfig& c) {
    try {
      generate(c);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  DGPConfig c;
  c.n_households = 0;
  CHECK(kind(c) == ErrorKind::InfeasibleConfig);
  c = DGPConfig{};
  c.years.clear();
  CHECK(kind(c) == ErrorKind::InfeasibleConfig);
  c = DGPConfig{};
  c.years = {2003};
  CHECK(kind(c) == ErrorKind::InfeasibleConfig);
  c = DGPConfig{};
  c.allocation = Allocation::CustomShares;
  c.custom_shares = {};
  CHECK(kind(c) == ErrorKind::InfeasibleConfig);
  c.custom_shares = {1, -0.5, 0.5, 0, 0, 0, 0, 0};
  CHECK(kind(c) == ErrorKind::InfeasibleConfig);
  c = DGPConfig{};
  c.intercept = 800;  // exp overflows
  CHECK(kind(c) == ErrorKind::InfeasibleConfig);
}

TEST_CASE("equal shares allocation") {
  DGPConfig c;
  c.n_households = 5;
  c.allocation = Allocation::EqualShares;
  for (const auto& r : generate(c))
    for (double s : r.spend) CHECK(s == doctest::Approx(r.spend[0]).epsilon(1e-15));
}
