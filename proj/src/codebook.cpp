#include "mmrec/codebook.hpp"

#include <json.hpp>
#include <limits>
#include <vector>

#include "mmrec/artifacts.hpp"
#include "mmrec/errors.hpp"
#include "mmrec/rng.hpp"

namespace mmrec {

namespace {

Eigen::Index nearest_row(const Eigen::MatrixXd& centroids, const Eigen::VectorXd& point,
                         double* dist_sq = nullptr) {
  Eigen::Index best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c).transpose() - point).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist_sq) *dist_sq = best_d;
  return best;
}

Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centroids(k, points.cols());

  const Eigen::Index first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
  centroids.row(0) = points.row(first);

  Eigen::VectorXd dist_sq(n);
  for (Eigen::Index i = 0; i < n; ++i)
    dist_sq[i] = (points.row(i) - centroids.row(0)).squaredNorm();

  for (int c = 1; c < k; ++c) {
    const double total = dist_sq.sum();
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      const double target = rng.uniform01() * total;
      double acc = 0.0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += dist_sq[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      // all remaining points coincide with chosen centroids; fall back to the
      // first point not yet selected
      for (Eigen::Index i = 0; i < n; ++i) {
        bool taken = false;
        for (int j = 0; j < c; ++j)
          if ((points.row(i) - centroids.row(j)).squaredNorm() == 0.0) {
            taken = true;
            break;
          }
        if (!taken) {
          chosen = i;
          break;
        }
      }
    }
    centroids.row(c) = points.row(chosen);
    for (Eigen::Index i = 0; i < n; ++i)
      dist_sq[i] = std::min(dist_sq[i],
                            (points.row(i) - centroids.row(c)).squaredNorm());
  }
  return centroids;
}

}  // namespace

Codebook fit_codebook(const Eigen::MatrixXd& all_frames, const NormalizationStats& stats,
                      const CodebookOptions& options) {
  return fit_codebook(all_frames, stats, options, nullptr);
}

Codebook fit_codebook(const Eigen::MatrixXd& all_frames, const NormalizationStats& stats,
                      const CodebookOptions& options, std::vector<double>* objective_trace) {
  const Eigen::Index n = all_frames.rows();
  if (n < options.k)
    fail(ErrorCode::TooFewFrames, std::to_string(n) + " frames for K=" +
                                      std::to_string(options.k));

  Rng rng(Rng::derive(options.seed, 0));
  Codebook cb;
  cb.stats = stats;
  cb.options = options;
  cb.centroids = kmeanspp_init(all_frames, options.k, rng);

  std::vector<std::int64_t> counts(static_cast<std::size_t>(options.k), 0);
  std::vector<Eigen::Index> batch(static_cast<std::size_t>(options.batch_size));
  std::vector<Eigen::Index> assignment(static_cast<std::size_t>(options.batch_size));

  Rng sample_rng(Rng::derive(options.seed, 1));
  for (int it = 0; it < options.iterations; ++it) {
    const bool full_batch = options.batch_size >= n;
    const std::size_t b = full_batch ? static_cast<std::size_t>(n)
                                     : static_cast<std::size_t>(options.batch_size);
    for (std::size_t i = 0; i < b; ++i)
      batch[i] = full_batch ? static_cast<Eigen::Index>(i)
                            : static_cast<Eigen::Index>(
                                  sample_rng.below(static_cast<std::uint64_t>(n)));

    if (objective_trace) {
      double obj = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        double d;
        nearest_row(cb.centroids, all_frames.row(i).transpose(), &d);
        obj += d;
      }
      objective_trace->push_back(obj);
    }

    // assignments are fixed at batch start, updates applied sequentially
    std::vector<int> batch_hits(static_cast<std::size_t>(options.k), 0);
    for (std::size_t i = 0; i < b; ++i) {
      assignment[i] = nearest_row(cb.centroids, all_frames.row(batch[i]).transpose());
      ++batch_hits[static_cast<std::size_t>(assignment[i])];
    }
    for (std::size_t i = 0; i < b; ++i) {
      const Eigen::Index c = assignment[i];
      ++counts[static_cast<std::size_t>(c)];
      const double eta = 1.0 / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      cb.centroids.row(c) += eta * (all_frames.row(batch[i]) - cb.centroids.row(c));
    }

    // re-seed clusters that saw no points this batch from the farthest
    // member of the largest cluster
    for (int c = 0; c < options.k; ++c) {
      if (batch_hits[static_cast<std::size_t>(c)] != 0) continue;
      int largest = 0;
      for (int j = 1; j < options.k; ++j)
        if (batch_hits[static_cast<std::size_t>(j)] > batch_hits[static_cast<std::size_t>(largest)])
          largest = j;
      if (batch_hits[static_cast<std::size_t>(largest)] == 0) continue;
      Eigen::Index farthest = -1;
      double far_d = -1.0;
      for (std::size_t i = 0; i < b; ++i) {
        if (assignment[i] != largest) continue;
        const double d =
            (all_frames.row(batch[i]) - cb.centroids.row(largest)).squaredNorm();
        if (d > far_d) {
          far_d = d;
          farthest = batch[i];
        }
      }
      if (farthest >= 0) {
        cb.centroids.row(c) = all_frames.row(farthest);
        counts[static_cast<std::size_t>(c)] = 1;
      }
    }
  }
  return cb;
}

Eigen::Index nearest_centroid(const Codebook& codebook, const Eigen::VectorXd& point) {
  return nearest_row(codebook.centroids, point);
}

BoawVector encode_boaw(const FrameFeatureMatrix& features, const Codebook& codebook) {
  BoawVector out;
  out.programme_id = features.programme_id;
  out.histogram = Eigen::VectorXd::Zero(codebook.centroids.rows());
  const Eigen::MatrixXd normalized = apply_normalization(features.features, codebook.stats);
  for (Eigen::Index i = 0; i < normalized.rows(); ++i)
    out.histogram[nearest_row(codebook.centroids, normalized.row(i).transpose())] += 1.0;
  const double total = out.histogram.sum();
  if (total > 0.0) out.histogram /= total;
  return out;
}

void save_codebook(const Codebook& codebook, const std::filesystem::path& path) {
  nlohmann::json header{
      {"format_version", 1},
      {"type", "codebook"},
      {"k", codebook.options.k},
      {"batch_size", codebook.options.batch_size},
      {"iterations", codebook.options.iterations},
      {"seed", codebook.options.seed},
      {"parallel_mode", false},
      {"zero_variance_columns", codebook.stats.zero_variance_columns},
      {"matrices", {"centroids", "mean", "stddev"}},
  };
  write_matrix_artifact(path, header,
                        {codebook.centroids, codebook.stats.mean.transpose(),
                         codebook.stats.stddev.transpose()});
}

Codebook load_codebook(const std::filesystem::path& path) {
  MatrixArtifact art = read_matrix_artifact(path);
  if (art.header.value("type", "") != "codebook" || art.matrices.size() != 3)
    fail(ErrorCode::MalformedArtifact, "not a codebook artifact: " + path.string());
  Codebook cb;
  cb.options.k = art.header.at("k").get<int>();
  cb.options.batch_size = art.header.at("batch_size").get<int>();
  cb.options.iterations = art.header.at("iterations").get<int>();
  cb.options.seed = art.header.at("seed").get<std::uint64_t>();
  cb.stats.zero_variance_columns =
      art.header.value("zero_variance_columns", std::vector<int>{});
  cb.centroids = std::move(art.matrices[0]);
  cb.stats.mean = art.matrices[1].row(0).transpose();
  cb.stats.stddev = art.matrices[2].row(0).transpose();
  return cb;
}

}  // namespace mmrec
