#pragma once

#include <span>
#include <utility>
#include <vector>

namespace hhcarbon {

enum class Tail { Top, Bottom };

/// Empirical Lorenz curve over household counts.
struct LorenzResult {
  /// (population share, cumulative value share), from (0,0) to (1,1).
  std::vector<std::pair<double, double>> points;
  double gini = 0;
  std::vector<double> sorted;  // ascending, ties in input order
  double total = 0;

  /// Share of the total held by the ceil(q*n) largest / smallest values.
  double top_share(double q) const;
  double bottom_share(double q) const;
};

/// Requires a non-empty list of finite, non-negative values with a positive
/// sum. Throws EmptyInput, AllZero or InvalidValue.
LorenzResult lorenz(std::span<const double> values);

/// Sorted-rank Gini, O(n log n).
double gini(std::span<const double> values);

/// Throws EmptyInput, AllZero, InvalidValue, or InvalidQuantile unless 0 < q < 1.
double tail_share(std::span<const double> values, double q, Tail which);

/// Number of observations in a q-tail of n: ceil(q*n), robust to q*n
/// landing a rounding error above an integer.
std::size_t tail_count(double q, std::size_t n);

}  // namespace hhcarbon
