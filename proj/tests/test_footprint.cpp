#include <doctest.h>

#include <cmath>
#include <random>

#include "hhcarbon/error.hpp"
#include "hhcarbon/footprint.hpp"

using namespace hhcarbon;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

HouseholdRecord record(std::string id, int year, std::array<double, kSectorCount> spend) {
  HouseholdRecord r;
  r.household_id = std::move(id);
  r.year = year;
  r.spend = spend;
  return r;
}

}  // namespace

TEST_CASE("single-sector bundle reproduces the table row") {
  ConsumptionBundle b{2005, {}};
  b[Sector::Food] = 10000;
  Footprint f = estimate_footprint(b);
  CHECK(f.energy_use == doctest::Approx(17.64).epsilon(1e-14));
  CHECK(f.carbon_emissions == doctest::Approx(163.68).epsilon(1e-14));
  CHECK(f.efficiency == doctest::Approx(163.68 / 17.64).epsilon(1e-14));
}

TEST_CASE("mixed bundle") {
  ConsumptionBundle b{2019, {}};
  b[Sector::Residence] = 5000;
  b[Sector::Education] = 5000;
  Footprint f = estimate_footprint(b);
  // 0.5 * (35.71 + 17.26) and 0.5 * (311.67 + 155.50)
  CHECK(f.energy_use == doctest::Approx(26.485).epsilon(1e-14));
  CHECK(f.carbon_emissions == doctest::Approx(233.585).epsilon(1e-14));
  CHECK(f.efficiency == doctest::Approx(8.819520483292430).epsilon(1e-13));
}

TEST_CASE("footprint errors") {
  CHECK(kind_of([] { estimate_footprint({2010, {}}); }) == ErrorKind::EmptyBundle);
  ConsumptionBundle early{2004, {}};
  early[Sector::Food] = 1;
  CHECK(kind_of([&] { estimate_footprint(early); }) == ErrorKind::YearOutOfRange);
  ConsumptionBundle neg{2010, {}};
  neg[Sector::Food] = -1;
  neg[Sector::Clothing] = 5;
  CHECK_THROWS_AS(estimate_footprint(neg), Error);
}

TEST_CASE("cohort efficiency is an aggregate ratio") {
  std::vector<Footprint> a{{10, 90, 9.0}, {10, 92, 9.2}};
  CHECK(cohort_efficiency(a) == doctest::Approx(9.1).epsilon(1e-15));
  std::vector<Footprint> b{{1, 9.0, 9.0}, {3, 27.6, 9.2}};
  CHECK(cohort_efficiency(b) == doctest::Approx(9.15).epsilon(1e-15));
  std::vector<Footprint> one{{4, 37, 9.25}};
  CHECK(cohort_efficiency(one) == 9.25);
  CHECK(kind_of([] { cohort_efficiency({}); }) == ErrorKind::EmptyCohort);
}

TEST_CASE("sector efficiency series") {
  auto s = sector_efficiency_series();
  for (const auto& series : s) CHECK(series.size() == 15);
  CHECK(s[index(Sector::Residence)].at(2005) == doctest::Approx(753.62 / 82.53).epsilon(1e-15));
  CHECK(s[index(Sector::Residence)].at(2019) == doctest::Approx(311.67 / 35.71).epsilon(1e-15));
  CHECK(s[index(Sector::Residence)].at(2005) == doctest::Approx(9.13146).epsilon(1e-6));
}

TEST_CASE("footprint panel keeps order and reports bad rows") {
  std::array<double, kSectorCount> food{};
  food[0] = 10000;
  std::vector<HouseholdRecord> two{record("a", 2005, food), record("b", 2019, food)};
  auto p = footprint_panel(two);
  REQUIRE(p.rows.size() == 2);
  CHECK(p.rows[0].household_id == "a");
  CHECK(p.rows[1].household_id == "b");
  CHECK(p.errors.empty());

  std::vector<HouseholdRecord> mixed{record("a", 2005, food), record("z", 2005, {})};
  p = footprint_panel(mixed);
  CHECK(p.rows.size() == 1);
  REQUIRE(p.errors.size() == 1);
  CHECK(p.errors[0].row == 1);
  CHECK(p.errors[0].cause.find("EmptyBundle") != std::string::npos);

  CHECK(footprint_panel(std::vector<HouseholdRecord>{}).rows.empty());
}

TEST_CASE("property: scaling, ln identity and convexity over random bundles") {
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto& t = builtin_table();
  for (int trial = 0; trial < 2000; ++trial) {
    ConsumptionBundle b{kFirstYear + static_cast<int>(gen() % kYearCount), {}};
    double lo = 1e9, hi = 0;
    for (Sector s : kAllSectors) {
      if (u(gen) < 0.3) continue;
      b[s] = std::exp(10.0 * u(gen));
      lo = std::min(lo, t.sector_ratio(b.year, s));
      hi = std::max(hi, t.sector_ratio(b.year, s));
    }
    if (b.total() == 0) continue;
    Footprint f = estimate_footprint(b);
    CHECK(f.efficiency >= lo * (1 - 1e-14));
    CHECK(f.efficiency <= hi * (1 + 1e-14));
    CHECK(std::abs(std::log(f.efficiency) - (std::log(f.carbon_emissions) - std::log(f.energy_use))) <= 1e-12);

    const double a = 0.01 + 100 * u(gen);
    ConsumptionBundle scaled = b;
    for (auto& v : scaled.spend) v *= a;
    Footprint g = estimate_footprint(scaled);
    CHECK(g.energy_use == doctest::Approx(a * f.energy_use).epsilon(1e-12));
    CHECK(g.carbon_emissions == doctest::Approx(a * f.carbon_emissions).epsilon(1e-12));
    CHECK(g.efficiency == doctest::Approx(f.efficiency).epsilon(1e-12));
  }
}

TEST_CASE("property: cohort efficiency equals the footprint of the summed bundle") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 5000.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int year = kFirstYear + static_cast<int>(gen() % kYearCount);
    std::vector<Footprint> fs;
    ConsumptionBundle sum{year, {}};
    const int households = 1 + static_cast<int>(gen() % 20);
    for (int h = 0; h < households; ++h) {
      ConsumptionBundle b{year, {}};
      for (auto& v : b.spend) v = u(gen);
      for (std::size_t s = 0; s < kSectorCount; ++s) sum.spend[s] += b.spend[s];
      fs.push_back(estimate_footprint(b));
    }
    CHECK(cohort_efficiency(fs) == doctest::Approx(estimate_footprint(sum).efficiency).epsilon(1e-12));
  }
}
