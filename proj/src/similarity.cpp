#include "mmrec/similarity.hpp"

#include <algorithm>

#include "mmrec/errors.hpp"
#include "mmrec/util.hpp"

namespace mmrec {

double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size())
    fail(ErrorCode::DimensionMismatch,
         std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu < 1e-12 || nv < 1e-12) return 0.0;
  return u.dot(v) / (nu * nv);
}

SimilarityMatrix similarity_matrix(const VectorSet& vectors, int jobs) {
  const Eigen::Index n = vectors.rows.rows();
  SimilarityMatrix sim;
  sim.ids = vectors.ids;
  sim.label = vectors.label;
  sim.values.resize(n, n);

  // upper triangle once, mirrored; diagonal pinned to 1
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t i) {
    const Eigen::Index r = static_cast<Eigen::Index>(i);
    sim.values(r, r) = 1.0;
    for (Eigen::Index c = r + 1; c < n; ++c) {
      const double s = cosine(vectors.rows.row(r).transpose(),
                              vectors.rows.row(c).transpose());
      sim.values(r, c) = s;
      sim.values(c, r) = s;
    }
  });
  return sim;
}

std::vector<RankedItem> rank_items(const SimilarityMatrix& sim, Eigen::Index query_index,
                                   Eigen::Index top_n) {
  const Eigen::Index n = sim.size();
  if (query_index < 0 || query_index >= n)
    fail(ErrorCode::IndexOutOfRange,
         "query index " + std::to_string(query_index) + " for n=" + std::to_string(n));

  std::vector<RankedItem> items;
  items.reserve(static_cast<std::size_t>(n) - 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == query_index) continue;
    items.push_back({sim.ids[static_cast<std::size_t>(j)], sim.values(query_index, j)});
  }
  std::sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (top_n < static_cast<Eigen::Index>(items.size()))
    items.resize(static_cast<std::size_t>(std::max<Eigen::Index>(top_n, 0)));
  return items;
}

}  // namespace mmrec
