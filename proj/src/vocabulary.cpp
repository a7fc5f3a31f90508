#include "mmrec/vocabulary.hpp"

#include <algorithm>
#include <set>

#include "mmrec/errors.hpp"

namespace mmrec {

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, int min_df) {
  if (docs.empty()) fail(ErrorCode::EmptyCorpus, "no documents");

  std::map<std::string, std::int64_t> corpus_freq;
  std::map<std::string, int> doc_freq;
  for (const auto& doc : docs) {
    std::set<std::string> seen;
    for (const auto& tok : doc.tokens) {
      ++corpus_freq[tok];
      if (seen.insert(tok).second) ++doc_freq[tok];
    }
  }

  struct Term {
    std::string token;
    std::int64_t cf;
    int df;
  };
  std::vector<Term> retained;
  for (const auto& [tok, df] : doc_freq)
    if (df >= min_df) retained.push_back({tok, corpus_freq[tok], df});
  if (retained.empty())
    fail(ErrorCode::EmptyVocabulary,
         "no token reaches min_df=" + std::to_string(min_df));

  std::sort(retained.begin(), retained.end(), [](const Term& a, const Term& b) {
    if (a.cf != b.cf) return a.cf > b.cf;
    return a.token < b.token;
  });

  Vocabulary vocab;
  vocab.total_docs = static_cast<int>(docs.size());
  vocab.min_df = min_df;
  for (const auto& term : retained) {
    vocab.index.emplace(term.token, static_cast<int>(vocab.tokens.size()));
    vocab.tokens.push_back(term.token);
    vocab.document_frequency.push_back(term.df);
    vocab.corpus_frequency.push_back(term.cf);
  }
  return vocab;
}

BowVector to_bow(const TokenizedDoc& doc, const Vocabulary& vocab) {
  BowVector bow;
  bow.programme_id = doc.programme_id;
  for (const auto& tok : doc.tokens) {
    const auto it = vocab.index.find(tok);
    if (it != vocab.index.end()) ++bow.counts[it->second];
  }
  return bow;
}

}  // namespace mmrec
