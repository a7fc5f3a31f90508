#include "mmrec/svd.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mmrec/rng.hpp"

namespace mmrec {

namespace {

// Orthogonalizes the columns of `b` in place by plane rotations, accumulating
// them into `v`. On exit b = U * diag(sigma) with U orthonormal.
void one_sided_jacobi(Eigen::MatrixXd& b, Eigen::MatrixXd& v) {
  const Eigen::Index n = b.cols();
  constexpr int kMaxSweeps = 60;
  constexpr double kTol = 1e-14;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = b.col(p).squaredNorm();
        const double beta = b.col(q).squaredNorm();
        const double gamma = b.col(p).dot(b.col(q));
        if (alpha == 0.0 || beta == 0.0) continue;
        const double denom = std::sqrt(alpha * beta);
        if (std::abs(gamma) <= kTol * denom) continue;
        off = std::max(off, std::abs(gamma) / denom);

        // rotation angle that zeroes the (p,q) inner product
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        const Eigen::VectorXd bp = b.col(p);
        b.col(p) = c * bp - s * b.col(q);
        b.col(q) = s * bp + c * b.col(q);
        const Eigen::VectorXd vp = v.col(p);
        v.col(p) = c * vp - s * v.col(q);
        v.col(q) = s * vp + c * v.col(q);
      }
    }
    if (off <= kTol) break;
  }
}

SvdResult svd_tall(const Eigen::MatrixXd& a) {
  // a is m x n with m >= n
  Eigen::MatrixXd b = a;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(a.cols(), a.cols());
  one_sided_jacobi(b, v);

  const Eigen::Index n = a.cols();
  Eigen::VectorXd sigma(n);
  for (Eigen::Index j = 0; j < n; ++j) sigma[j] = b.col(j).norm();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return sigma[i] > sigma[j]; });

  SvdResult out;
  out.u.resize(a.rows(), n);
  out.sigma.resize(n);
  out.v.resize(a.cols(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[j];
    out.sigma[j] = sigma[src];
    out.v.col(j) = v.col(src);
    if (sigma[src] > 0.0)
      out.u.col(j) = b.col(src) / sigma[src];
    else
      out.u.col(j).setZero();
  }
  return out;
}

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

SvdResult jacobi_svd(const Eigen::MatrixXd& a) {
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(a.transpose());
  SvdResult out;
  out.u = std::move(t.v);
  out.sigma = std::move(t.sigma);
  out.v = std::move(t.u);
  return out;
}

int numerical_rank(const Eigen::VectorXd& sigma, double rel_tol) {
  if (sigma.size() == 0) return 0;
  const double cutoff = sigma[0] * rel_tol;
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] > cutoff) ++r;
  return r;
}

SvdResult truncated_svd(const Eigen::MatrixXd& a, int k, std::uint64_t seed, int dense_limit) {
  const Eigen::Index m = a.rows(), n = a.cols();
  const Eigen::Index min_dim = std::min(m, n);
  k = static_cast<int>(std::min<Eigen::Index>(k, min_dim));

  SvdResult full;
  if (min_dim <= dense_limit) {
    full = jacobi_svd(a);
  } else {
    constexpr int kOversample = 10;
    constexpr int kPowerIterations = 4;
    const Eigen::Index p = std::min<Eigen::Index>(k + kOversample, min_dim);

    Rng rng(seed);
    Eigen::MatrixXd omega(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < p; ++j) omega(i, j) = rng.gaussian();

    Eigen::MatrixXd q = thin_q(a * omega);
    for (int it = 0; it < kPowerIterations; ++it) {
      q = thin_q(a.transpose() * q);
      q = thin_q(a * q);
    }

    const Eigen::MatrixXd b = q.transpose() * a;  // p x n
    full = jacobi_svd(b);
    full.u = q * full.u;
  }

  SvdResult out;
  out.u = full.u.leftCols(k);
  out.sigma = full.sigma.head(k);
  out.v = full.v.leftCols(k);
  return out;
}

}  // namespace mmrec
