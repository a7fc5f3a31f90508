#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmrec/codebook.hpp"
#include "mmrec/fusion.hpp"
#include "mmrec/metrics.hpp"
#include "mmrec/pvdm.hpp"
#include "mmrec/subtitles.hpp"

namespace mmrec {

// Everything the pipeline stages need, loaded from one JSON config file.
// Command-line flags override individual fields.
struct PipelineConfig {
  std::filesystem::path manifest_path;
  std::filesystem::path out_dir;
  std::uint64_t seed = 42;
  int jobs = 0;  // 0 = hardware concurrency
  bool deterministic = false;

  SubtitleOptions subtitles;

  int lsi_k = 50;
  int lsi_min_df = 2;
  bool lsi_tfidf = false;
  bool lsi_remove_stopwords = false;
  PvdmParams pvdm;

  CodebookOptions codebook;
  bool pooled_audio = false;

  std::vector<double> metadata_level_weights;

  FusionWeights fusion_weights{{"LSI", 0.7}, {"D2V", 1.5}, {"AUD", 0.2}, {"MD", 0.65}};
  bool middle_fusion = false;

  std::string relevance_file;  // JSON relevance sets
  std::string user_sim_file;   // SIMM behavioural similarity
  int relevance_m = 20;
  std::string ild_distance = "MD";
  std::vector<int> cutoffs{10, 20};

  std::map<std::string, std::vector<double>> weight_grid;

  int effective_jobs() const;
};

PipelineConfig load_config(const std::filesystem::path& path);

inline const std::vector<std::string> kModalities{"LSI", "D2V", "AUD", "MD"};

// Stage entry points. Each ensures its prerequisites, reusing on-disk
// artifacts whose content hash still matches ("skipped" in the log).
void cmd_ingest(const PipelineConfig& config);
void cmd_vectorize(const PipelineConfig& config,
                   const std::vector<std::string>& modalities = kModalities);
void cmd_fuse(const PipelineConfig& config);
EvalReport cmd_evaluate(const PipelineConfig& config);
std::string cmd_inspect(const PipelineConfig& config, const std::string& programme_id,
                        const std::string& modality, int top_n);
GridSearchResult cmd_search_weights(const PipelineConfig& config);

// Per-modality vectors as stored by cmd_vectorize.
VectorSet load_vectors(const PipelineConfig& config, const std::string& modality);
SimilarityMatrix load_similarity(const PipelineConfig& config, const std::string& label);

}  // namespace mmrec
