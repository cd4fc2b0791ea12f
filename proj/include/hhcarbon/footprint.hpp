#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hhcarbon/intensity.hpp"
#include "hhcarbon/record.hpp"

namespace hhcarbon {

/// Indirect energy use, carbon emissions and their ratio for one household-year.
struct Footprint {
  double energy_use = 0;        // GJ
  double carbon_emissions = 0;  // kg
  double efficiency = 0;        // kg per GJ; lower is better
};

/// Sums spend x intensity over the eight sectors.
/// Throws EmptyBundle when total spend is zero, YearOutOfRange when the
/// bundle year is not covered, and Parse for negative spend.
Footprint estimate_footprint(const ConsumptionBundle& bundle, const IntensityTable& table = builtin_table());

/// Aggregate ratio sum(carbon) / sum(energy). Throws EmptyCohort.
double cohort_efficiency(std::span<const Footprint> footprints);

/// Year -> carbon/energy for each sector; 8 series of 15 points.
using SectorSeries = std::array<std::map<int, double>, kSectorCount>;
SectorSeries sector_efficiency_series(const IntensityTable& table = builtin_table());

struct PanelFootprint {
  std::string household_id;
  int year = 0;
  std::size_t row = 0;  // position in the input list
  Footprint footprint;
};

struct FootprintPanel {
  std::vector<PanelFootprint> rows;  // input order
  std::vector<RowError> errors;
};

enum class Execution { Serial, Parallel };

/// One footprint per valid record, order-preserving; invalid rows are
/// reported with their index and cause.
FootprintPanel footprint_panel(std::span<const HouseholdRecord> records, const IntensityTable& table = builtin_table(),
                               Execution exec = Execution::Parallel);

}  // namespace hhcarbon
