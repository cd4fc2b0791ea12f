#include "hhcarbon/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hhcarbon::kernels {

namespace {

inline void footprint_one(const IntensityTable& table, int year, const std::array<double, kSectorCount>& spend,
                          double& energy, double& carbon, FootprintStatus& status) {
  energy = 0.0;
  carbon = 0.0;
  if (!year_covered(year)) {
    status = FootprintStatus::YearOutOfRange;
    return;
  }
  const auto& row = table.rows()[static_cast<std::size_t>(year - kFirstYear)];
  double total = 0.0;
  for (std::size_t s = 0; s < kSectorCount; ++s) {
    if (spend[s] < 0) {
      status = FootprintStatus::NegativeSpend;
      energy = carbon = 0.0;
      return;
    }
    total += spend[s];
    energy += spend[s] * row.energy[s].value() / 1e4;
    carbon += spend[s] * row.carbon[s].value() / 1e4;
  }
  status = total > 0 ? FootprintStatus::Ok : FootprintStatus::EmptyBundle;
}

inline void demean_column(double* col, std::span<const int> group, std::vector<double>& sum,
                          std::vector<double>& count) {
  std::fill(sum.begin(), sum.end(), 0.0);
  std::fill(count.begin(), count.end(), 0.0);
  const std::size_t n = group.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum[group[i]] += col[i];
    count[group[i]] += 1.0;
  }
  for (std::size_t g = 0; g < sum.size(); ++g)
    if (count[g] > 0) sum[g] /= count[g];
  for (std::size_t i = 0; i < n; ++i) col[i] -= sum[group[i]];
}

inline void scores_column(const double* x, const Eigen::VectorXd& u, std::span<const int> group, double* out) {
  for (std::size_t i = 0; i < group.size(); ++i) out[group[i]] += x[i] * u[static_cast<Eigen::Index>(i)];
}

}  // namespace

void footprint_rows_serial(const IntensityTable& table, FootprintInputs in, FootprintOutputs out) {
  for (std::size_t i = 0; i < in.years.size(); ++i)
    footprint_one(table, in.years[i], in.spend[i], out.energy[i], out.carbon[i], out.status[i]);
}

void footprint_rows_parallel(const IntensityTable& table, FootprintInputs in, FootprintOutputs out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.years.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    footprint_one(table, in.years[i], in.spend[i], out.energy[i], out.carbon[i], out.status[i]);
}

void demean_serial(Eigen::Ref<Eigen::MatrixXd> m, std::span<const int> group, int n_groups) {
  std::vector<double> sum(n_groups), count(n_groups);
  for (Eigen::Index j = 0; j < m.cols(); ++j) demean_column(m.col(j).data(), group, sum, count);
}

void demean_parallel(Eigen::Ref<Eigen::MatrixXd> m, std::span<const int> group, int n_groups) {
  const Eigen::Index cols = m.cols();
#pragma omp parallel
  {
    std::vector<double> sum(n_groups), count(n_groups);
#pragma omp for schedule(dynamic)
    for (Eigen::Index j = 0; j < cols; ++j) demean_column(m.col(j).data(), group, sum, count);
  }
}

Eigen::MatrixXd cluster_scores_serial(const Eigen::MatrixXd& x, const Eigen::VectorXd& u,
                                      std::span<const int> group, int n_groups) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_groups, x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) scores_column(x.col(j).data(), u, group, s.col(j).data());
  return s;
}

Eigen::MatrixXd cluster_scores_parallel(const Eigen::MatrixXd& x, const Eigen::VectorXd& u,
                                        std::span<const int> group, int n_groups) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_groups, x.cols());
  const Eigen::Index cols = x.cols();
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index j = 0; j < cols; ++j) scores_column(x.col(j).data(), u, group, s.col(j).data());
  return s;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hhcarbon::kernels
