#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>

#include "mmrec/audio_features.hpp"

namespace mmrec {

struct CodebookOptions {
  int k = 50;
  int batch_size = 1024;
  int iterations = 300;
  std::uint64_t seed = 0;
};

// K acoustic centroids in normalized feature space plus the statistics used
// to get there.
struct Codebook {
  Eigen::MatrixXd centroids;  // K x 17
  NormalizationStats stats;
  CodebookOptions options;
};

// Mini-batch k-means (k-means++ init, per-centroid 1/count learning rate,
// counts persisting across batches). `all_frames` must already be normalized
// with the stats stored alongside.
Codebook fit_codebook(const Eigen::MatrixXd& all_frames, const NormalizationStats& stats,
                      const CodebookOptions& options);

// Objective trace (sum of squared min-distances at the start of each batch),
// recorded when a non-null pointer is supplied.
Codebook fit_codebook(const Eigen::MatrixXd& all_frames, const NormalizationStats& stats,
                      const CodebookOptions& options, std::vector<double>* objective_trace);

// Index of the nearest centroid, ties broken by lowest index.
Eigen::Index nearest_centroid(const Codebook& codebook, const Eigen::VectorXd& point);

// L1-normalized histogram of frame-to-centroid assignments.
struct BoawVector {
  std::string programme_id;
  Eigen::VectorXd histogram;
};

BoawVector encode_boaw(const FrameFeatureMatrix& features, const Codebook& codebook);

void save_codebook(const Codebook& codebook, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace mmrec
