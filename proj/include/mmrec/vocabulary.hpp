#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mmrec/tokenize.hpp"

namespace mmrec {

// Term space shared by the BoW/LSI path and PV-DM. Indices are dense 0..V-1,
// assigned by descending corpus frequency with lexicographic tie-break.
struct Vocabulary {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> tokens;         // index -> token
  std::vector<int> document_frequency;     // by index
  std::vector<std::int64_t> corpus_frequency;  // by index (PV-DM noise distribution)
  int total_docs = 0;
  int min_df = 1;

  int size() const { return static_cast<int>(tokens.size()); }
};

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, int min_df);

// Sparse count vector over the vocabulary; OOV tokens are ignored.
struct BowVector {
  std::string programme_id;
  std::map<int, int> counts;
};

BowVector to_bow(const TokenizedDoc& doc, const Vocabulary& vocab);

}  // namespace mmrec
