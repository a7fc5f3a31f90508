#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace mmrec {

struct SvdResult {
  Eigen::MatrixXd u;       // m x r, orthonormal columns
  Eigen::VectorXd sigma;   // r, non-increasing, >= 0
  Eigen::MatrixXd v;       // n x r, orthonormal columns
};

// Exact SVD by one-sided Jacobi rotations. Suitable for small/medium dense
// matrices; singular values sorted non-increasing.
SvdResult jacobi_svd(const Eigen::MatrixXd& a);

// Rank-k truncated SVD. Uses the exact route when min(m, n) <= dense_limit,
// otherwise a seeded randomized range finder (oversampling 10, 4 power
// iterations with QR re-orthonormalization).
SvdResult truncated_svd(const Eigen::MatrixXd& a, int k, std::uint64_t seed,
                        int dense_limit = 64);

// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const Eigen::VectorXd& sigma, double rel_tol = 1e-10);

}  // namespace mmrec
