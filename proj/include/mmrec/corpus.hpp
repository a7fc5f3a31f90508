#pragma once

#include <string>
#include <vector>

#include "mmrec/audio_features.hpp"
#include "mmrec/genres.hpp"
#include "mmrec/manifest.hpp"
#include "mmrec/subtitles.hpp"
#include "mmrec/tokenize.hpp"

namespace mmrec {

// One fully ingested programme: tokenized subtitles, extracted audio frame
// features, parsed genre paths.
struct Programme {
  std::string id;
  std::string title;
  TokenizedDoc doc;
  std::vector<GenrePath> genre_paths;
  FrameFeatureMatrix features;
};

struct Corpus {
  std::vector<Programme> programmes;

  std::vector<std::string> ids() const;
  std::vector<TokenizedDoc> docs() const;
};

// Ingests every manifest entry. Programmes are independent, so ingestion
// parallelizes across them; the result is immutable afterwards. Failures are
// reported with the offending programme id.
Corpus ingest_corpus(const Manifest& manifest, const SubtitleOptions& options = {},
                     int jobs = 1);

}  // namespace mmrec
