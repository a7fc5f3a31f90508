#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmrec/similarity.hpp"

namespace mmrec {

// Shared model-artifact layout: one line of compact UTF-8 JSON (terminated by
// '\n'), then each matrix as (rows: u64, cols: u64) followed by row-major
// little-endian float64 payload. The header's "matrices" array names the
// blocks in file order.
void write_matrix_artifact(const std::filesystem::path& path,
                           const nlohmann::json& header,
                           const std::vector<Eigen::MatrixXd>& matrices);

struct MatrixArtifact {
  nlohmann::json header;
  std::vector<Eigen::MatrixXd> matrices;
};

MatrixArtifact read_matrix_artifact(const std::filesystem::path& path);

// Similarity matrices travel as: magic "SIMM", u32 version, u64 n,
// n length-prefixed (u32) UTF-8 programme ids, n*n float64 LE row-major.
void write_simm(const std::filesystem::path& path, const SimilarityMatrix& sim);
SimilarityMatrix read_simm(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mmrec
