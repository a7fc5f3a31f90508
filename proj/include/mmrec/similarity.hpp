#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace mmrec {

// Symmetric cosine-similarity matrix for one modality (or a fusion of them).
// Row/column order follows `ids`.
struct SimilarityMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> ids;
  std::string label;

  Eigen::Index size() const { return values.rows(); }
};

// u.v / (|u||v|); 0 if either norm is below 1e-12.
double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// Vector set for one modality, one row per programme, in corpus order.
struct VectorSet {
  Eigen::MatrixXd rows;
  std::vector<std::string> ids;
  std::string label;
};

SimilarityMatrix similarity_matrix(const VectorSet& vectors, int jobs = 1);

struct RankedItem {
  std::string id;
  double score;
};

// Sorted non-query items, score descending, ties by ascending id.
std::vector<RankedItem> rank_items(const SimilarityMatrix& sim,
                                   Eigen::Index query_index,
                                   Eigen::Index top_n);

}  // namespace mmrec
