#include "mmrec/corpus.hpp"

#include <exception>
#include <mutex>

#include "mmrec/audio_io.hpp"
#include "mmrec/errors.hpp"
#include "mmrec/util.hpp"

namespace mmrec {

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  out.reserve(programmes.size());
  for (const auto& p : programmes) out.push_back(p.id);
  return out;
}

std::vector<TokenizedDoc> Corpus::docs() const {
  std::vector<TokenizedDoc> out;
  out.reserve(programmes.size());
  for (const auto& p : programmes) out.push_back(p.doc);
  return out;
}

Corpus ingest_corpus(const Manifest& manifest, const SubtitleOptions& options, int jobs) {
  Corpus corpus;
  corpus.programmes.resize(manifest.entries.size());

  std::mutex error_mutex;
  std::exception_ptr first_error;

  parallel_for(manifest.entries.size(), jobs, [&](std::size_t i) {
    const auto& entry = manifest.entries[i];
    try {
      Programme p;
      p.id = entry.id;
      p.title = entry.title;
      p.doc.programme_id = entry.id;
      p.doc.tokens = tokenize(load_subtitles(entry.subtitle_path, options));
      for (const auto& g : entry.genres) p.genre_paths.push_back(parse_genre_path(g));
      MonoSignal signal = load_audio(entry.audio_path);
      signal.programme_id = entry.id;
      p.features = extract_features(signal);
      corpus.programmes[i] = std::move(p);
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error)
        first_error = std::make_exception_ptr(
            Error(e.code(), "programme \"" + entry.id + "\": " + e.what()));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);
  return corpus;
}

}  // namespace mmrec
