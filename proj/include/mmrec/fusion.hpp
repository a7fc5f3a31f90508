#pragma once

#include <map>
#include <string>
#include <vector>

#include "mmrec/similarity.hpp"

namespace mmrec {

// modality label -> non-negative weight
using FusionWeights = std::map<std::string, double>;

// Concatenates per-modality vectors in the given order. Each block is
// L2-normalized (zero vectors stay zero) and scaled by its weight before
// concatenation.
VectorSet middle_fuse(const std::vector<VectorSet>& modalities,
                      const std::map<std::string, double>& block_weights = {});

// Weighted average of similarity matrices: sum(w_m S_m) / sum(w_m),
// labelled "FUS".
SimilarityMatrix late_fuse(const std::vector<SimilarityMatrix>& matrices,
                           const FusionWeights& weights);

}  // namespace mmrec
