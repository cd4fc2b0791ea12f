#pragma once

// Data-parallel inner loops. Every kernel has a serial reference with the
// same per-element arithmetic; the OpenMP versions only partition work, so
// both produce bit-identical output.

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <span>

#include "hhcarbon/intensity.hpp"

namespace hhcarbon::kernels {

enum class FootprintStatus : std::uint8_t { Ok, YearOutOfRange, NegativeSpend, EmptyBundle };

struct FootprintInputs {
  std::span<const int> years;
  std::span<const std::array<double, kSectorCount>> spend;
};

struct FootprintOutputs {
  std::span<double> energy;
  std::span<double> carbon;
  std::span<FootprintStatus> status;
};

void footprint_rows_serial(const IntensityTable& table, FootprintInputs in, FootprintOutputs out);
void footprint_rows_parallel(const IntensityTable& table, FootprintInputs in, FootprintOutputs out);

/// Subtracts group means from every column in place. `group` holds dense
/// ids in [0, n_groups).
void demean_serial(Eigen::Ref<Eigen::MatrixXd> m, std::span<const int> group, int n_groups);
void demean_parallel(Eigen::Ref<Eigen::MatrixXd> m, std::span<const int> group, int n_groups);

/// S(g, j) = sum over rows i in group g of x(i, j) * u(i).
Eigen::MatrixXd cluster_scores_serial(const Eigen::MatrixXd& x, const Eigen::VectorXd& u,
                                      std::span<const int> group, int n_groups);
Eigen::MatrixXd cluster_scores_parallel(const Eigen::MatrixXd& x, const Eigen::VectorXd& u,
                                        std::span<const int> group, int n_groups);

/// Thread count OpenMP would use; 1 when built without OpenMP.
int max_threads();

}  // namespace hhcarbon::kernels
