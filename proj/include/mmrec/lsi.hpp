#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mmrec/vocabulary.hpp"

namespace mmrec {

struct LsiOptions {
  int k = 50;
  bool tfidf = false;  // off by default: the term-document matrix holds raw counts
  std::uint64_t seed = 0;
};

// Rank-k factorization of the V x n term-document matrix X ~ U S V^T.
// Documents live in the latent space as U^T x.
struct LsiModel {
  Eigen::MatrixXd term_topic;      // V x k, orthonormal columns
  Eigen::VectorXd singular_values; // k, non-increasing
  int k = 0;
  LsiOptions options;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  Eigen::MatrixXd doc_latent;      // n x k, row i = projection of training doc i
};

LsiModel fit_lsi(const std::vector<BowVector>& bows, const Vocabulary& vocab,
                 const LsiOptions& options = {});

Eigen::VectorXd project_lsi(const LsiModel& model, const BowVector& bow);

void save_lsi(const LsiModel& model, const std::filesystem::path& path);
LsiModel load_lsi(const std::filesystem::path& path);

}  // namespace mmrec
