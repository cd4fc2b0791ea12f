#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace hhcarbon {

/// Consumption sectors, in the column order of the published intensity tables.
enum class Sector : std::uint8_t {
  Food,
  Clothing,
  Facilities,
  Medicine,
  Communication,
  Education,
  Residence,
  Commodities,
};

inline constexpr std::size_t kSectorCount = 8;

inline constexpr std::array<Sector, kSectorCount> kAllSectors = {
    Sector::Food,      Sector::Clothing,      Sector::Facilities, Sector::Medicine,
    Sector::Communication, Sector::Education, Sector::Residence,  Sector::Commodities,
};

inline constexpr std::size_t index(Sector s) { return static_cast<std::size_t>(s); }

std::string_view sector_name(Sector s);  // "Food", "Clothing", ...
std::string_view sector_key(Sector s);   // "food", "clothing", ...
std::optional<Sector> sector_from_name(std::string_view name);  // accepts either form

inline constexpr int kFirstYear = 2005;
inline constexpr int kLastYear = 2019;
inline constexpr std::size_t kYearCount = kLastYear - kFirstYear + 1;

inline constexpr bool year_covered(int year) { return year >= kFirstYear && year <= kLastYear; }

/// Fixed-point decimal with two fractional digits.
class Centi {
 public:
  constexpr Centi() = default;
  static constexpr Centi from_hundredths(std::int64_t h) { return Centi(h); }
  static std::optional<Centi> parse(std::string_view text);

  constexpr std::int64_t hundredths() const { return h_; }
  constexpr double value() const { return static_cast<double>(h_) / 100.0; }
  std::string str() const;

  friend constexpr auto operator<=>(Centi, Centi) = default;

 private:
  constexpr explicit Centi(std::int64_t h) : h_(h) {}
  std::int64_t h_ = 0;
};

struct IntensityPair {
  double energy;  // GJ per 10^4 Yuan
  double carbon;  // kg per 10^4 Yuan
};

/// Year x sector grid of energy and carbon intensities, 2005-2019.
/// Immutable once constructed.
class IntensityTable {
 public:
  struct Row {
    int year = 0;
    std::array<Centi, kSectorCount> energy{};
    std::array<Centi, kSectorCount> carbon{};
  };
  using Rows = std::array<Row, kYearCount>;

  /// Throws Error(Parse) unless every year 2005..2019 appears exactly once
  /// (in order) and every cell is strictly positive.
  explicit IntensityTable(const Rows& rows);

  Centi energy_exact(int year, Sector s) const;
  Centi carbon_exact(int year, Sector s) const;

  /// Throws Error(YearOutOfRange) outside 2005..2019.
  IntensityPair lookup(int year, Sector s) const;

  /// carbon / energy for one cell, in kg per GJ.
  double sector_ratio(int year, Sector s) const;

  /// True when every sector's 2019 value is strictly below its 2005 value
  /// for both quantities.
  bool endpoints_decline() const;

  const Rows& rows() const { return rows_; }

  std::string to_csv() const;
  static IntensityTable from_csv(std::istream& in);
  static IntensityTable load_file(const std::string& path);

 private:
  const Row& row(int year) const;
  Rows rows_;
};

/// The published 2005-2019 tables, embedded in the binary.
const IntensityTable& builtin_table();

IntensityPair lookup(const IntensityTable& table, int year, Sector s);
double sector_ratio(const IntensityTable& table, int year, Sector s);

}  // namespace hhcarbon
