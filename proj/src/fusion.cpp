#include "mmrec/fusion.hpp"

#include <cmath>

#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"

namespace mmrec {

VectorSet middle_fuse(const std::vector<VectorSet>& modalities,
                      const std::map<std::string, double>& block_weights) {
  if (modalities.empty()) fail(ErrorCode::MissingModality, "no modalities supplied");

  const auto& ids = modalities.front().ids;
  Eigen::Index total_dim = 0;
  for (const auto& m : modalities) {
    if (m.ids != ids)
      fail(ErrorCode::MissingModality,
           "modality \"" + m.label + "\" does not cover the same programme set");
    total_dim += m.rows.cols();
  }

  VectorSet fused;
  fused.ids = ids;
  fused.label = "MID";
  fused.rows.resize(static_cast<Eigen::Index>(ids.size()), total_dim);

  for (Eigen::Index r = 0; r < fused.rows.rows(); ++r) {
    Eigen::Index offset = 0;
    for (const auto& m : modalities) {
      double w = 1.0;
      if (const auto it = block_weights.find(m.label); it != block_weights.end())
        w = it->second;
      Eigen::VectorXd block = m.rows.row(r).transpose();
      const double norm = block.norm();
      if (norm > 0.0) block /= norm;
      fused.rows.row(r).segment(offset, m.rows.cols()) = (w * block).transpose();
      offset += m.rows.cols();
    }
  }
  return fused;
}

SimilarityMatrix late_fuse(const std::vector<SimilarityMatrix>& matrices,
                           const FusionWeights& weights) {
  if (matrices.empty()) fail(ErrorCode::ShapeMismatch, "no matrices supplied");

  const Eigen::Index n = matrices.front().size();
  const auto& ids = matrices.front().ids;
  double weight_sum = 0.0;
  for (const auto& m : matrices) {
    if (m.size() != n || m.ids != ids)
      fail(ErrorCode::ShapeMismatch,
           "matrix \"" + m.label + "\" disagrees on size or programme order");
    const auto it = weights.find(m.label);
    if (it == weights.end())
      fail(ErrorCode::UnknownModalityWeight, "no weight for modality \"" + m.label + "\"");
    if (!(it->second >= 0.0) || !std::isfinite(it->second))
      fail(ErrorCode::UnknownModalityWeight,
           "weight for \"" + m.label + "\" must be finite and non-negative");
    weight_sum += it->second;
  }
  if (weight_sum <= 0.0) fail(ErrorCode::AllZeroWeights, "fusion weights sum to zero");

  SimilarityMatrix fused;
  fused.ids = ids;
  fused.label = "FUS";
  fused.values = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : matrices)
    fused.values += (weights.at(m.label) / weight_sum) * m.values;
  return fused;
}

}  // namespace mmrec
