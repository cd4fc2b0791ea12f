#include "hhcarbon/intensity.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "hhcarbon/csv.hpp"
#include "hhcarbon/error.hpp"

namespace hhcarbon {

namespace {

constexpr std::array<std::string_view, kSectorCount> kNames = {
    "Food", "Clothing", "Facilities", "Medicine", "Communication", "Education", "Residence", "Commodities",
};
constexpr std::array<std::string_view, kSectorCount> kKeys = {
    "food", "clothing", "facilities", "medicine", "communication", "education", "residence", "commodities",
};

struct RawRow {
  int year;
  std::array<std::int64_t, kSectorCount> energy;
  std::array<std::int64_t, kSectorCount> carbon;
};

// Energy in hundredths of GJ per 10^4 Yuan, carbon in hundredths of kg per 10^4 Yuan.
constexpr std::array<RawRow, kYearCount> kPublished = {{
    {2005, {1764, 1806, 656, 1385, 585, 4818, 8253, 823}, {16368, 16791, 5945, 12884, 5234, 45122, 75362, 7643}},
    {2006, {1482, 1659, 557, 1241, 515, 4393, 6995, 723}, {13760, 15450, 5058, 11541, 4615, 41156, 63938, 6707}},
    {2007, {1209, 1403, 459, 980, 459, 3537, 5502, 581}, {11234, 13070, 4172, 9088, 4118, 33135, 50136, 5389}},
    {2008, {1122, 1260, 466, 916, 518, 3361, 5758, 556}, {10402, 11695, 4212, 8451, 4585, 31396, 52518, 5135}},
    {2009, {1027, 1108, 419, 780, 427, 3003, 5166, 470}, {9506, 10295, 3773, 7169, 3810, 28093, 46950, 4337}},
    {2010, {963, 1083, 399, 732, 434, 2806, 4852, 411}, {8898, 10075, 3588, 6718, 3895, 26253, 43899, 3790}},
    {2011, {839, 919, 364, 665, 399, 2616, 4750, 400}, {7762, 8569, 3303, 6105, 3577, 24525, 42918, 3675}},
    {2012, {1169, 1022, 378, 870, 199, 2765, 5117, 524}, {10880, 9565, 3449, 8027, 1764, 25863, 46541, 4839}},
    {2013, {1107, 955, 346, 791, 180, 2535, 4907, 503}, {10284, 8938, 3152, 7285, 1592, 23646, 44502, 4637}},
    {2014, {948, 836, 318, 729, 151, 2207, 4864, 401}, {8789, 7809, 2903, 6706, 1330, 20545, 44060, 3673}},
    {2015, {889, 1079, 291, 720, 148, 2082, 4701, 330}, {8237, 10099, 2660, 6622, 1307, 19307, 42186, 3003}},
    {2016, {866, 1021, 264, 644, 150, 1991, 4489, 281}, {7959, 9438, 2396, 5905, 1305, 18407, 40041, 2541}},
    {2017, {766, 915, 234, 524, 154, 1980, 4146, 265}, {6962, 8324, 2100, 4770, 1329, 18087, 36631, 2365}},
    {2018, {706, 640, 220, 433, 215, 1849, 3817, 248}, {6374, 5692, 1965, 3895, 1686, 16710, 33440, 2146}},
    {2019, {718, 646, 205, 402, 167, 1726, 3571, 223}, {6392, 5659, 1841, 3569, 1420, 15550, 31167, 1905}},
}};

std::string year_error(int year) {
  return "year " + std::to_string(year) + " outside " + std::to_string(kFirstYear) + "-" +
         std::to_string(kLastYear);
}

}  // namespace

std::string_view sector_name(Sector s) { return kNames[index(s)]; }
std::string_view sector_key(Sector s) { return kKeys[index(s)]; }

std::optional<Sector> sector_from_name(std::string_view name) {
  for (Sector s : kAllSectors)
    if (name == kNames[index(s)] || name == kKeys[index(s)]) return s;
  return std::nullopt;
}

std::optional<Centi> Centi::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  if (text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 2 || (dot != std::string_view::npos && frac.empty())) return std::nullopt;
  std::int64_t w = 0;
  auto r = std::from_chars(whole.data(), whole.data() + whole.size(), w);
  if (r.ec != std::errc{} || r.ptr != whole.data() + whole.size()) return std::nullopt;
  std::int64_t f = 0;
  for (char c : frac) {
    if (c < '0' || c > '9') return std::nullopt;
    f = f * 10 + (c - '0');
  }
  if (frac.size() == 1) f *= 10;
  std::int64_t h = w * 100 + f;
  return Centi(neg ? -h : h);
}

std::string Centi::str() const {
  std::int64_t a = h_ < 0 ? -h_ : h_;
  std::string frac = std::to_string(a % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (h_ < 0 ? "-" : "") + std::to_string(a / 100) + "." + frac;
}

IntensityTable::IntensityTable(const Rows& rows) : rows_(rows) {
  for (std::size_t i = 0; i < kYearCount; ++i) {
    const Row& r = rows_[i];
    if (r.year != kFirstYear + static_cast<int>(i))
      throw Error(ErrorKind::Parse, "intensity rows must cover 2005-2019 in order; got year " +
                                        std::to_string(r.year) + " at position " + std::to_string(i));
    for (Sector s : kAllSectors) {
      if (r.energy[index(s)].hundredths() <= 0 || r.carbon[index(s)].hundredths() <= 0)
        throw Error(ErrorKind::Parse, "non-positive intensity for " + std::string(sector_name(s)) + " in " +
                                          std::to_string(r.year));
    }
  }
}

const IntensityTable::Row& IntensityTable::row(int year) const {
  if (!year_covered(year)) throw Error(ErrorKind::YearOutOfRange, year_error(year));
  return rows_[static_cast<std::size_t>(year - kFirstYear)];
}

Centi IntensityTable::energy_exact(int year, Sector s) const { return row(year).energy[index(s)]; }
Centi IntensityTable::carbon_exact(int year, Sector s) const { return row(year).carbon[index(s)]; }

IntensityPair IntensityTable::lookup(int year, Sector s) const {
  const Row& r = row(year);
  return {r.energy[index(s)].value(), r.carbon[index(s)].value()};
}

double IntensityTable::sector_ratio(int year, Sector s) const {
  auto p = lookup(year, s);
  return p.carbon / p.energy;
}

bool IntensityTable::endpoints_decline() const {
  const Row& first = rows_.front();
  const Row& last = rows_.back();
  for (Sector s : kAllSectors) {
    if (!(last.energy[index(s)] < first.energy[index(s)])) return false;
    if (!(last.carbon[index(s)] < first.carbon[index(s)])) return false;
  }
  return true;
}

std::string IntensityTable::to_csv() const {
  std::vector<std::string> header{"year"};
  for (Sector s : kAllSectors) header.push_back("energy_" + std::string(sector_key(s)));
  for (Sector s : kAllSectors) header.push_back("carbon_" + std::string(sector_key(s)));
  std::string out = csv::join(header) + "\n";
  for (const Row& r : rows_) {
    std::vector<std::string> f{std::to_string(r.year)};
    for (Centi c : r.energy) f.push_back(c.str());
    for (Centi c : r.carbon) f.push_back(c.str());
    out += csv::join(f) + "\n";
  }
  return out;
}

IntensityTable IntensityTable::from_csv(std::istream& in) {
  csv::Table t = csv::read(in);
  std::vector<std::string> expected{"year"};
  for (Sector s : kAllSectors) expected.push_back("energy_" + std::string(sector_key(s)));
  for (Sector s : kAllSectors) expected.push_back("carbon_" + std::string(sector_key(s)));
  if (t.header != expected) throw Error(ErrorKind::Parse, "intensity table header does not match expected columns");
  if (t.rows.size() != kYearCount)
    throw Error(ErrorKind::Parse, "intensity table needs " + std::to_string(kYearCount) + " rows, found " +
                                      std::to_string(t.rows.size()));
  Rows rows{};
  for (std::size_t i = 0; i < kYearCount; ++i) {
    const auto& f = t.rows[i];
    if (f.size() != expected.size())
      throw Error(ErrorKind::Parse, "line " + std::to_string(t.line_numbers[i]) + ": wrong field count");
    auto year = csv::parse_int(f[0]);
    if (!year) throw Error(ErrorKind::Parse, "line " + std::to_string(t.line_numbers[i]) + ": bad year");
    rows[i].year = static_cast<int>(*year);
    for (std::size_t k = 0; k < 2 * kSectorCount; ++k) {
      auto v = Centi::parse(f[k + 1]);
      if (!v)
        throw Error(ErrorKind::Parse, "line " + std::to_string(t.line_numbers[i]) + ": bad value '" + f[k + 1] + "'");
      (k < kSectorCount ? rows[i].energy[k] : rows[i].carbon[k - kSectorCount]) = *v;
    }
  }
  return IntensityTable(rows);
}

IntensityTable IntensityTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open intensity table " + path);
  return from_csv(in);
}

const IntensityTable& builtin_table() {
  static const IntensityTable table = [] {
    IntensityTable::Rows rows{};
    for (std::size_t i = 0; i < kYearCount; ++i) {
      rows[i].year = kPublished[i].year;
      for (std::size_t s = 0; s < kSectorCount; ++s) {
        rows[i].energy[s] = Centi::from_hundredths(kPublished[i].energy[s]);
        rows[i].carbon[s] = Centi::from_hundredths(kPublished[i].carbon[s]);
      }
    }
    return IntensityTable(rows);
  }();
  return table;
}

IntensityPair lookup(const IntensityTable& table, int year, Sector s) { return table.lookup(year, s); }
double sector_ratio(const IntensityTable& table, int year, Sector s) { return table.sector_ratio(year, s); }

}  // namespace hhcarbon
