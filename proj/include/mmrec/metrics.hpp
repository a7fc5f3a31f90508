#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mmrec/fusion.hpp"
#include "mmrec/similarity.hpp"

namespace mmrec {

// Ground-truth relevance, either loaded from file or derived from a
// behavioural similarity matrix; provenance travels with it into reports.
struct RelevanceSets {
  std::map<std::string, std::set<std::string>> relevant;
  std::string source;  // "file:<path>" or "derived:top-m"
  int m = 0;           // top-m used when derived, 0 otherwise
};

// Top-m other programmes per row (ties by ascending id) become relevant.
RelevanceSets derive_relevance(const SimilarityMatrix& user_sim, int m);

RelevanceSets load_relevance(const std::filesystem::path& path);
void save_relevance(const RelevanceSets& relevance, const std::filesystem::path& path);

// AP@k = (1/min(|relevant|, k)) * sum of precision@i at each hit i <= k.
double average_precision(const std::vector<std::string>& ranked,
                         const std::set<std::string>& relevant, int k);

// Mean AP@k over programmes with non-empty relevant sets, as a percentage.
double map_at_k(const SimilarityMatrix& model, const RelevanceSets& relevance, int k);

// Mean over queries of the mean pairwise distance (1 - distance_sim) among
// the query's top-k items, as a percentage. k < 2 yields 0.
double ild_at_k(const SimilarityMatrix& model, const SimilarityMatrix& distance_sim, int k);

struct EvalReport {
  struct Row {
    std::string model;
    std::map<int, double> map_at;  // cutoff -> percentage
    std::map<int, double> ild_at;
  };
  std::vector<Row> rows;
  std::map<std::string, std::string> config;  // weights/seeds/provenance echo

  std::string to_json() const;
  std::string to_table() const;
};

EvalReport evaluate(const std::vector<SimilarityMatrix>& models,
                    const RelevanceSets& relevance, const SimilarityMatrix& diversity_source,
                    const std::vector<int>& cutoffs = {10, 20});

struct GridSearchResult {
  FusionWeights best;
  EvalReport report;                     // evaluation of the winning fusion
  std::vector<std::pair<FusionWeights, std::pair<double, double>>> sweep;  // (MAP@10, ILD@10)
};

// Exhaustive sweep over the weight lattice; objective MAP@10, ties broken by
// higher ILD@10, then by lexicographically smaller weight tuple.
GridSearchResult grid_search_weights(const std::vector<SimilarityMatrix>& matrices,
                                     const RelevanceSets& relevance,
                                     const SimilarityMatrix& diversity_source,
                                     const std::map<std::string, std::vector<double>>& grid);

}  // namespace mmrec
