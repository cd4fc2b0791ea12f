#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hhcarbon/footprint.hpp"
#include "hhcarbon/intensity.hpp"
#include "hhcarbon/record.hpp"

namespace hhcarbon {

enum class Allocation {
  RandomFixedShares,  // per-household shares drawn once, held across years
  EqualShares,
  CustomShares,
};

/// Data-generating process for synthetic panels:
///   ln(energy_it) = intercept + beta * ln(1 + credit_it) [+ beta_sq * ln(1 + credit_it)^2]
///                   + sum_j gamma_j * x_itj + year_effect_t + c_i + e_it
/// with c_i ~ N(0, effect_sd) and e_it ~ N(0, noise_sd). Sector spending is
/// total_it * share_is, total chosen so the footprint hits the target exactly.
struct DGPConfig {
  std::size_t n_households = 500;
  std::vector<int> years{2011, 2013, 2015, 2017, 2019};
  std::uint64_t seed = 7;
  double intercept = 3.5;
  double beta_credit = 0.012;
  std::optional<double> beta_credit_square;
  std::map<std::string, double> gamma = default_gamma();
  std::map<int, double> year_effects;
  double effect_sd = 0.5;
  double noise_sd = 0.3;
  double presence = 0.85;  // probability a household is surveyed in a given year
  double credit_zero_share = 0.6;
  int n_provinces = 10;
  Allocation allocation = Allocation::RandomFixedShares;
  std::array<double, kSectorCount> custom_shares{};

  static std::map<std::string, double> default_gamma();
};

struct SynthPanel {
  std::vector<HouseholdRecord> records;  // household-major, years ascending
  std::vector<double> target_ln_energy;  // DGP value per record
};

/// Throws InfeasibleConfig for unusable configurations or when a target
/// footprint cannot be realised with finite, non-negative spending.
SynthPanel generate_panel(const DGPConfig& config, Execution exec = Execution::Parallel);
std::vector<HouseholdRecord> generate(const DGPConfig& config);

/// Keeps households observed in at least two distinct years, in input order.
std::vector<HouseholdRecord> repeated_households_filter(std::span<const HouseholdRecord> records);

struct CoverageDraw {
  std::uint64_t seed = 0;
  double estimate = 0;
  double std_error = 0;
  bool covered = false;  // |estimate - truth| < 3 * std_error
};

struct CoverageResult {
  std::vector<CoverageDraw> draws;
  std::size_t covered = 0;
  double rate() const { return draws.empty() ? 0.0 : double(covered) / double(draws.size()); }
};

/// Monte Carlo check of the within estimator for ln(Credit Access) on the
/// ln-energy outcome. Replication r uses seed config.seed + r.
CoverageResult credit_coverage(const DGPConfig& config, std::size_t replications,
                               Execution exec = Execution::Parallel);

}  // namespace hhcarbon
