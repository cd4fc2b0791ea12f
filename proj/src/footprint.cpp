#include "hhcarbon/footprint.hpp"

#include "hhcarbon/error.hpp"
#include "hhcarbon/kernels.hpp"

namespace hhcarbon {

Footprint estimate_footprint(const ConsumptionBundle& bundle, const IntensityTable& table) {
  double energy = 0, carbon = 0;
  kernels::FootprintStatus status{};
  kernels::footprint_rows_serial(table, {std::span(&bundle.year, 1), std::span(&bundle.spend, 1)},
                                 {std::span(&energy, 1), std::span(&carbon, 1), std::span(&status, 1)});
  switch (status) {
    case kernels::FootprintStatus::Ok: break;
    case kernels::FootprintStatus::YearOutOfRange:
      throw Error(ErrorKind::YearOutOfRange, "bundle year " + std::to_string(bundle.year));
    case kernels::FootprintStatus::NegativeSpend: throw Error(ErrorKind::Parse, "negative sector spend");
    case kernels::FootprintStatus::EmptyBundle: throw Error(ErrorKind::EmptyBundle, "total spend is zero");
  }
  return {energy, carbon, carbon / energy};
}

double cohort_efficiency(std::span<const Footprint> footprints) {
  if (footprints.empty()) throw Error(ErrorKind::EmptyCohort, "no footprints");
  double energy = 0, carbon = 0;
  for (const auto& f : footprints) {
    energy += f.energy_use;
    carbon += f.carbon_emissions;
  }
  if (!(energy > 0)) throw Error(ErrorKind::EmptyCohort, "cohort has zero energy use");
  return carbon / energy;
}

SectorSeries sector_efficiency_series(const IntensityTable& table) {
  SectorSeries out;
  for (Sector s : kAllSectors)
    for (int y = kFirstYear; y <= kLastYear; ++y) out[index(s)][y] = table.sector_ratio(y, s);
  return out;
}

FootprintPanel footprint_panel(std::span<const HouseholdRecord> records, const IntensityTable& table,
                               Execution exec) {
  const std::size_t n = records.size();
  std::vector<int> years(n);
  std::vector<std::array<double, kSectorCount>> spend(n);
  for (std::size_t i = 0; i < n; ++i) {
    years[i] = records[i].year;
    spend[i] = records[i].spend;
  }
  std::vector<double> energy(n), carbon(n);
  std::vector<kernels::FootprintStatus> status(n);
  kernels::FootprintInputs in{years, spend};
  kernels::FootprintOutputs out{energy, carbon, status};
  if (exec == Execution::Parallel)
    kernels::footprint_rows_parallel(table, in, out);
  else
    kernels::footprint_rows_serial(table, in, out);

  FootprintPanel panel;
  panel.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (status[i]) {
      case kernels::FootprintStatus::Ok:
        panel.rows.push_back({records[i].household_id, records[i].year, i,
                              {energy[i], carbon[i], carbon[i] / energy[i]}});
        break;
      case kernels::FootprintStatus::YearOutOfRange:
        panel.errors.push_back({i, 0, "YearOutOfRange: year " + std::to_string(years[i])});
        break;
      case kernels::FootprintStatus::NegativeSpend:
        panel.errors.push_back({i, 0, "negative sector spend"});
        break;
      case kernels::FootprintStatus::EmptyBundle:
        panel.errors.push_back({i, 0, "EmptyBundle: total spend is zero"});
        break;
    }
  }
  return panel;
}

}  // namespace hhcarbon
