#include "mmrec/lsi.hpp"

#include <cmath>

#include <json.hpp>

#include "mmrec/artifacts.hpp"
#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"
#include "mmrec/svd.hpp"

namespace mmrec {

namespace {

Eigen::MatrixXd term_document_matrix(const std::vector<BowVector>& bows,
                                     const Vocabulary& vocab, bool tfidf) {
  const int v = vocab.size();
  const int n = static_cast<int>(bows.size());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(v, n);
  for (int j = 0; j < n; ++j)
    for (const auto& [idx, count] : bows[j].counts) x(idx, j) = count;
  if (tfidf) {
    for (int i = 0; i < v; ++i) {
      const double idf =
          std::log((1.0 + vocab.total_docs) / (1.0 + vocab.document_frequency[i])) + 1.0;
      x.row(i) *= idf;
    }
  }
  return x;
}

}  // namespace

LsiModel fit_lsi(const std::vector<BowVector>& bows, const Vocabulary& vocab,
                 const LsiOptions& options) {
  if (bows.empty()) fail(ErrorCode::EmptyCorpus, "no documents to fit LSI");
  if (vocab.size() == 0) fail(ErrorCode::EmptyVocabulary, "empty vocabulary");

  const Eigen::MatrixXd x = term_document_matrix(bows, vocab, options.tfidf);
  SvdResult svd = truncated_svd(x, options.k, options.seed);
  const int rank = numerical_rank(svd.sigma);
  int k = std::min(options.k, rank);
  if (k < 1) k = 1;  // degenerate all-zero corpus keeps a single axis
  if (k < options.k)
    log::warn("LSI k=" + std::to_string(options.k) + " exceeds rank(X)=" +
              std::to_string(rank) + ", clamped to " + std::to_string(k));

  LsiModel model;
  model.term_topic = svd.u.leftCols(k);
  model.singular_values = svd.sigma.head(k);
  model.k = k;
  model.options = options;
  model.vocab = vocab;
  model.doc_ids.reserve(bows.size());
  for (const auto& b : bows) model.doc_ids.push_back(b.programme_id);

  model.doc_latent.resize(static_cast<Eigen::Index>(bows.size()), k);
  for (std::size_t j = 0; j < bows.size(); ++j)
    model.doc_latent.row(static_cast<Eigen::Index>(j)) = project_lsi(model, bows[j]);
  return model;
}

Eigen::VectorXd project_lsi(const LsiModel& model, const BowVector& bow) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(model.term_topic.rows());
  for (const auto& [idx, count] : bow.counts) {
    if (idx < 0 || idx >= model.term_topic.rows())
      fail(ErrorCode::IndexOutOfRange,
           "bow index " + std::to_string(idx) + " outside vocabulary");
    x[idx] = count;
  }
  if (model.options.tfidf) {
    for (const auto& [idx, count] : bow.counts) {
      const double idf = std::log((1.0 + model.vocab.total_docs) /
                                  (1.0 + model.vocab.document_frequency[idx])) +
                         1.0;
      x[idx] = count * idf;
    }
  }
  return model.term_topic.transpose() * x;
}

void save_lsi(const LsiModel& model, const std::filesystem::path& path) {
  nlohmann::json header{
      {"format_version", 1},
      {"type", "lsi"},
      {"k", model.k},
      {"tfidf", model.options.tfidf},
      {"seed", model.options.seed},
      {"parallel_mode", false},
      {"vocabulary", model.vocab.tokens},
      {"document_frequency", model.vocab.document_frequency},
      {"corpus_frequency", model.vocab.corpus_frequency},
      {"total_docs", model.vocab.total_docs},
      {"min_df", model.vocab.min_df},
      {"doc_ids", model.doc_ids},
      {"matrices", {"term_topic", "singular_values", "doc_latent"}},
  };
  Eigen::MatrixXd sigma_row = model.singular_values.transpose();
  write_matrix_artifact(path, header, {model.term_topic, sigma_row, model.doc_latent});
}

LsiModel load_lsi(const std::filesystem::path& path) {
  MatrixArtifact art = read_matrix_artifact(path);
  if (art.header.value("type", "") != "lsi" || art.matrices.size() != 3)
    fail(ErrorCode::MalformedArtifact, "not an LSI artifact: " + path.string());

  LsiModel model;
  model.k = art.header.at("k").get<int>();
  model.options.k = model.k;
  model.options.tfidf = art.header.value("tfidf", false);
  model.options.seed = art.header.value("seed", 0ULL);
  model.vocab.tokens = art.header.at("vocabulary").get<std::vector<std::string>>();
  model.vocab.document_frequency = art.header.at("document_frequency").get<std::vector<int>>();
  model.vocab.corpus_frequency =
      art.header.at("corpus_frequency").get<std::vector<std::int64_t>>();
  model.vocab.total_docs = art.header.at("total_docs").get<int>();
  model.vocab.min_df = art.header.at("min_df").get<int>();
  for (std::size_t i = 0; i < model.vocab.tokens.size(); ++i)
    model.vocab.index.emplace(model.vocab.tokens[i], static_cast<int>(i));
  model.doc_ids = art.header.at("doc_ids").get<std::vector<std::string>>();
  model.term_topic = std::move(art.matrices[0]);
  model.singular_values = art.matrices[1].row(0).transpose();
  model.doc_latent = std::move(art.matrices[2]);
  return model;
}

}  // namespace mmrec
