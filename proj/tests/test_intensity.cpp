#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hhcarbon/error.hpp"
#include "hhcarbon/intensity.hpp"

using namespace hhcarbon;

TEST_CASE("published spot values") {
  const auto& t = builtin_table();
  CHECK(t.energy_exact(2005, Sector::Food).str() == "17.64");
  CHECK(t.carbon_exact(2019, Sector::Commodities).str() == "19.05");
  CHECK(t.energy_exact(2012, Sector::Communication).str() == "1.99");
  CHECK(t.energy_exact(2005, Sector::Residence).hundredths() == 8253);
  CHECK(t.carbon_exact(2019, Sector::Food).hundredths() == 6392);
}

TEST_CASE("lookup") {
  const auto& t = builtin_table();
  auto a = lookup(t, 2005, Sector::Residence);
  CHECK(a.energy == 82.53);
  CHECK(a.carbon == 753.62);
  auto b = lookup(t, 2019, Sector::Education);
  CHECK(b.energy == 17.26);
  CHECK(b.carbon == 155.50);

  for (int bad : {2004, 2020, 0}) {
    try {
      lookup(t, bad, Sector::Food);
      FAIL("expected YearOutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::YearOutOfRange);
    }
  }
}

TEST_CASE("sector ratios") {
  const auto& t = builtin_table();
  CHECK(sector_ratio(t, 2005, Sector::Food) == doctest::Approx(163.68 / 17.64).epsilon(1e-15));
  CHECK(sector_ratio(t, 2005, Sector::Food) == doctest::Approx(9.27891).epsilon(1e-6));
  CHECK(sector_ratio(t, 2019, Sector::Residence) == doctest::Approx(8.72781).epsilon(1e-6));
  CHECK(sector_ratio(t, 2005, Sector::Education) == doctest::Approx(9.36529).epsilon(1e-6));
  CHECK_THROWS_AS(sector_ratio(t, 2021, Sector::Food), Error);
}

TEST_CASE("table invariants") {
  const auto& t = builtin_table();
  CHECK(t.endpoints_decline());

  // Extremes frozen from a cell-wise division of the two published tables.
  double lo = 1e9, hi = 0;
  for (int y = kFirstYear; y <= kLastYear; ++y)
    for (Sector s : kAllSectors) {
      CHECK(t.energy_exact(y, s).hundredths() > 0);
      CHECK(t.carbon_exact(y, s).hundredths() > 0);
      lo = std::min(lo, t.sector_ratio(y, s));
      hi = std::max(hi, t.sector_ratio(y, s));
    }
  CHECK(lo == doctest::Approx(16.86 / 2.15).epsilon(1e-15));   // 2018 Communication
  CHECK(hi == doctest::Approx(245.25 / 26.16).epsilon(1e-15));  // 2011 Education
  CHECK(lo == doctest::Approx(7.841860465116279));
  CHECK(hi == doctest::Approx(9.375));
}

TEST_CASE("csv round trip is byte identical") {
  const std::string text = builtin_table().to_csv();
  std::istringstream in(text);
  IntensityTable back = IntensityTable::from_csv(in);
  CHECK(back.to_csv() == text);
  CHECK(back.rows()[3].energy == builtin_table().rows()[3].energy);
}

TEST_CASE("shipped data file matches the embedded table") {
  std::ifstream in(HHCARBON_DATA_DIR "/intensity_tables.csv", std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == builtin_table().to_csv());
}

TEST_CASE("malformed tables are rejected") {
  std::string text = builtin_table().to_csv();
  SUBCASE("non-positive cell") {
    auto pos = text.find("17.64");
    text.replace(pos, 5, "0.00");
  }
  SUBCASE("missing year") {
    auto nl = text.find('\n');
    auto nl2 = text.find('\n', nl + 1);
    text.erase(nl + 1, nl2 - nl);
  }
  SUBCASE("three decimals") {
    auto pos = text.find("17.64");
    text.replace(pos, 5, "17.645");
  }
  SUBCASE("header") { text[0] = 'Y'; }
  std::istringstream in(text);
  CHECK_THROWS_AS(IntensityTable::from_csv(in), Error);
}

TEST_CASE("Centi parsing") {
  CHECK(Centi::parse("155.5")->hundredths() == 15550);
  CHECK(Centi::parse("7")->hundredths() == 700);
  CHECK(Centi::parse("-1.05")->hundredths() == -105);
  CHECK(Centi::parse("-1.05")->str() == "-1.05");
  CHECK_FALSE(Centi::parse("1.").has_value());
  CHECK_FALSE(Centi::parse("a.12").has_value());
  CHECK_FALSE(Centi::parse("").has_value());
}

TEST_CASE("sector names") {
  CHECK(kAllSectors.size() == 8);
  CHECK(sector_name(Sector::Communication) == "Communication");
  CHECK(sector_from_name("residence") == Sector::Residence);
  CHECK(sector_from_name("Commodities") == Sector::Commodities);
  CHECK_FALSE(sector_from_name("fuel").has_value());
}
