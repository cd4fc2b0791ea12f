#include "hhcarbon/lsq.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hhcarbon {

namespace {

struct Reflector {
  Eigen::Index start;
  Eigen::VectorXd v;  // unit-norm Householder vector on rows [start, n)
};

void apply(const Reflector& h, Eigen::Ref<Eigen::VectorXd> col) {
  auto tail = col.tail(col.size() - h.start);
  tail -= 2.0 * h.v.dot(tail) * h.v;
}

}  // namespace

LeastSquares householder_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double rel_tol) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  LeastSquares out;
  std::vector<Reflector> hs;
  std::vector<Eigen::VectorXd> rcols;  // top `rank` entries of each kept transformed column

  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::VectorXd col = x.col(j);
    const double orig = col.norm();
    for (const auto& h : hs) apply(h, col);
    const Eigen::Index k = static_cast<Eigen::Index>(hs.size());
    if (k >= n) {
      out.dropped.push_back(static_cast<int>(j));
      continue;
    }
    const double rest = col.tail(n - k).norm();
    if (orig == 0.0 || rest <= rel_tol * orig) {
      out.dropped.push_back(static_cast<int>(j));
      continue;
    }
    Eigen::VectorXd v = col.tail(n - k);
    const double alpha = v(0) >= 0 ? -rest : rest;
    v(0) -= alpha;
    const double vn = v.norm();
    if (vn > 0) v /= vn;
    Reflector h{k, std::move(v)};
    apply(h, col);
    hs.push_back(std::move(h));
    rcols.push_back(col.head(k + 1));
    out.kept.push_back(static_cast<int>(j));
  }

  const Eigen::Index rank = static_cast<Eigen::Index>(hs.size());
  out.r = Eigen::MatrixXd::Zero(rank, rank);
  for (Eigen::Index c = 0; c < rank; ++c) out.r.col(c).head(c + 1) = rcols[static_cast<std::size_t>(c)];

  Eigen::VectorXd qty = y;
  for (const auto& h : hs) apply(h, qty);
  out.beta = out.r.triangularView<Eigen::Upper>().solve(qty.head(rank));

  out.residuals = y;
  for (Eigen::Index c = 0; c < rank; ++c) out.residuals -= out.beta(c) * x.col(out.kept[static_cast<std::size_t>(c)]);
  return out;
}

Eigen::MatrixXd LeastSquares::unscaled_covariance() const {
  const Eigen::Index k = r.rows();
  Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  return rinv * rinv.transpose();
}

}  // namespace hhcarbon
