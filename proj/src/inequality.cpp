#include "hhcarbon/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hhcarbon/error.hpp"

namespace hhcarbon {

namespace {

std::vector<double> checked_sorted(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "no values");
  for (double v : values)
    if (!std::isfinite(v) || v < 0) throw Error(ErrorKind::InvalidValue, "values must be finite and non-negative");
  std::vector<double> s(values.begin(), values.end());
  std::stable_sort(s.begin(), s.end());
  if (!(s.back() > 0)) throw Error(ErrorKind::AllZero, "all values are zero");
  return s;
}

double gini_sorted(const std::vector<double>& s, double total) {
  // G = 2 * sum_i i * x_(i) / (n * total) - (n + 1) / n, ranks 1-based.
  const double n = static_cast<double>(s.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) weighted += static_cast<double>(i + 1) * s[i];
  double g = 2.0 * weighted / (n * total) - (n + 1.0) / n;
  return std::max(g, 0.0);
}

double share(const std::vector<double>& s, double total, double q, Tail which) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::InvalidQuantile, "quantile must lie in (0, 1)");
  std::size_t k = tail_count(q, s.size());
  double part = which == Tail::Bottom ? std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), 0.0)
                                      : std::accumulate(s.end() - static_cast<std::ptrdiff_t>(k), s.end(), 0.0);
  return part / total;
}

}  // namespace

std::size_t tail_count(double q, std::size_t n) {
  const double x = q * static_cast<double>(n);
  const double r = std::round(x);
  double k = std::abs(x - r) <= 1e-9 * std::max(1.0, x) ? r : std::ceil(x);
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, n);
}

LorenzResult lorenz(std::span<const double> values) {
  LorenzResult r;
  r.sorted = checked_sorted(values);
  r.total = std::accumulate(r.sorted.begin(), r.sorted.end(), 0.0);
  const std::size_t n = r.sorted.size();
  r.points.reserve(n + 1);
  r.points.emplace_back(0.0, 0.0);
  double cum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    cum += r.sorted[k - 1];
    double share = k == n ? 1.0 : std::min(cum / r.total, 1.0);
    r.points.emplace_back(static_cast<double>(k) / static_cast<double>(n), share);
  }
  r.gini = gini_sorted(r.sorted, r.total);
  return r;
}

double LorenzResult::top_share(double q) const { return share(sorted, total, q, Tail::Top); }
double LorenzResult::bottom_share(double q) const { return share(sorted, total, q, Tail::Bottom); }

double gini(std::span<const double> values) {
  auto s = checked_sorted(values);
  return gini_sorted(s, std::accumulate(s.begin(), s.end(), 0.0));
}

double tail_share(std::span<const double> values, double q, Tail which) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "no values");
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::InvalidQuantile, "quantile must lie in (0, 1)");
  auto s = checked_sorted(values);
  return share(s, std::accumulate(s.begin(), s.end(), 0.0), q, which);
}

}  // namespace hhcarbon
