#include "mmrec/pvdm.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mmrec/artifacts.hpp"
#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"
#include "mmrec/rng.hpp"

namespace mmrec {

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// -log sigma(x), numerically stable on both tails
double softplus_neg(double x) {
  if (x >= 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

Eigen::VectorXd concat_input(const PvdmModel& m, const PvdmStep& s) {
  const int d = m.params.dim;
  Eigen::VectorXd h(m.concat_dim());
  h.segment(0, d) = m.doc_vectors.row(s.doc).transpose();
  for (std::size_t i = 0; i < s.context.size(); ++i) {
    const int w = s.context[i];
    h.segment(static_cast<Eigen::Index>(d) * (i + 1), d) =
        w < 0 ? m.pad_vector : m.word_vectors.row(w).transpose();
  }
  return h;
}

void validate(const PvdmParams& p) {
  if (p.dim < 1 || p.window < 1 || p.negative < 1 || p.epochs < 1 ||
      !(p.initial_lr > p.min_lr) || !(p.min_lr > 0.0))
    fail(ErrorCode::InvalidHyperparameters,
         "require dim/window/negative/epochs >= 1 and initial_lr > min_lr > 0");
}

// cumulative unigram^0.75 noise distribution
std::vector<double> noise_cdf(const Vocabulary& vocab) {
  std::vector<double> cdf(vocab.size());
  double acc = 0.0;
  for (int i = 0; i < vocab.size(); ++i) {
    acc += std::pow(static_cast<double>(vocab.corpus_frequency[i]), 0.75);
    cdf[i] = acc;
  }
  return cdf;
}

int draw_noise(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform01() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                   static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

void check_finite(const Eigen::Ref<const Eigen::VectorXd>& v, const char* what) {
  if (!v.allFinite())
    fail(ErrorCode::Internal, std::string("non-finite ") + what + " during PV-DM training");
}

}  // namespace

double pvdm_step_loss(const PvdmModel& model, const PvdmStep& step) {
  const Eigen::VectorXd h = concat_input(model, step);
  double loss = softplus_neg(model.output_weights.row(step.target).dot(h));
  for (int neg : step.negatives)
    loss += softplus_neg(-model.output_weights.row(neg).dot(h));
  return loss;
}

double pvdm_step_loss_and_grad(const PvdmModel& model, const PvdmStep& step,
                               PvdmGradients& grads) {
  const int d = model.params.dim;
  const Eigen::VectorXd h = concat_input(model, step);

  double loss = 0.0;
  Eigen::VectorXd dh = Eigen::VectorXd::Zero(h.size());

  auto accumulate = [&](int word, double label) {
    const double score = model.output_weights.row(word).dot(h);
    loss += label > 0.5 ? softplus_neg(score) : softplus_neg(-score);
    const double g = sigmoid(score) - label;  // d(loss)/d(score)
    auto [it, inserted] = grads.outputs.try_emplace(word, Eigen::VectorXd::Zero(h.size()));
    it->second += g * h;
    dh += g * model.output_weights.row(word).transpose();
  };

  grads.doc = Eigen::VectorXd::Zero(d);
  grads.pad = Eigen::VectorXd::Zero(d);
  grads.words.clear();
  grads.outputs.clear();

  accumulate(step.target, 1.0);
  for (int neg : step.negatives) accumulate(neg, 0.0);

  grads.doc = dh.segment(0, d);
  for (std::size_t i = 0; i < step.context.size(); ++i) {
    const auto block = dh.segment(static_cast<Eigen::Index>(d) * (i + 1), d);
    const int w = step.context[i];
    if (w < 0) {
      grads.pad += block;
    } else {
      auto [it, inserted] = grads.words.try_emplace(w, Eigen::VectorXd::Zero(d));
      it->second += block;
    }
  }
  return loss;
}

PvdmModel train_pvdm(const std::vector<TokenizedDoc>& docs, const PvdmParams& params) {
  validate(params);
  if (docs.empty()) fail(ErrorCode::EmptyCorpus, "no documents to train PV-DM");

  PvdmModel model;
  model.params = params;
  model.vocab = build_vocabulary(docs, params.min_df);
  const int v = model.vocab.size();
  const int d = params.dim;
  const int span = 2 * params.window;

  // in-vocabulary token index sequences, original order preserved
  std::vector<std::vector<int>> sequences(docs.size());
  std::size_t total_positions = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    model.doc_ids.push_back(docs[i].programme_id);
    model.doc_index.emplace(docs[i].programme_id, static_cast<int>(i));
    for (const auto& tok : docs[i].tokens) {
      const auto it = model.vocab.index.find(tok);
      if (it != model.vocab.index.end()) sequences[i].push_back(it->second);
    }
    if (sequences[i].empty())
      log::warn("document \"" + docs[i].programme_id +
                "\" has no in-vocabulary tokens; its vector stays at initialization");
    total_positions += sequences[i].size();
  }
  if (total_positions == 0)
    fail(ErrorCode::EmptyCorpus, "no in-vocabulary tokens in any document");

  // uniform init in [-0.5/d, 0.5/d], one seeded stream for all matrices
  const double half = 0.5 / d;
  Rng init_rng(Rng::derive(params.seed, 0));
  auto init_matrix = [&](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = init_rng.uniform(-half, half);
    return m;
  };
  model.word_vectors = init_matrix(v, d);
  model.doc_vectors = init_matrix(static_cast<Eigen::Index>(docs.size()), d);
  model.output_weights = init_matrix(v, model.concat_dim());
  model.pad_vector = init_matrix(1, d).row(0).transpose();

  const std::vector<double> cdf = noise_cdf(model.vocab);
  Rng noise_rng(Rng::derive(params.seed, 1));

  const std::size_t total_steps = total_positions * static_cast<std::size_t>(params.epochs);
  std::size_t step_index = 0;
  PvdmStep step;
  step.context.resize(span);
  PvdmGradients grads;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::size_t epoch_steps = 0;
    for (std::size_t di = 0; di < sequences.size(); ++di) {
      const auto& seq = sequences[di];
      step.doc = static_cast<int>(di);
      for (std::size_t t = 0; t < seq.size(); ++t) {
        const double frac = total_steps > 1
                                ? static_cast<double>(step_index) / (total_steps - 1)
                                : 0.0;
        const double lr = params.initial_lr - (params.initial_lr - params.min_lr) * frac;

        step.target = seq[t];
        for (int o = 0; o < params.window; ++o) {
          const std::ptrdiff_t left = static_cast<std::ptrdiff_t>(t) - params.window + o;
          step.context[o] = left >= 0 ? seq[left] : -1;
          const std::size_t right = t + 1 + o;
          step.context[params.window + o] = right < seq.size() ? seq[right] : -1;
        }

        step.negatives.clear();
        for (int tries = 0;
             tries < 10 * params.negative &&
             static_cast<int>(step.negatives.size()) < params.negative;
             ++tries) {
          const int cand = draw_noise(cdf, noise_rng);
          if (cand != step.target) step.negatives.push_back(cand);
        }

        epoch_loss += pvdm_step_loss_and_grad(model, step, grads);
        ++epoch_steps;

        model.doc_vectors.row(step.doc) -= lr * grads.doc.transpose();
        check_finite(model.doc_vectors.row(step.doc).transpose(), "doc vector");
        if (!grads.pad.isZero(0.0)) {
          model.pad_vector -= lr * grads.pad;
          check_finite(model.pad_vector, "pad vector");
        }
        for (const auto& [w, g] : grads.words) {
          model.word_vectors.row(w) -= lr * g.transpose();
          check_finite(model.word_vectors.row(w).transpose(), "word vector");
        }
        for (const auto& [w, g] : grads.outputs) {
          model.output_weights.row(w) -= lr * g.transpose();
          check_finite(model.output_weights.row(w).transpose(), "output row");
        }
        ++step_index;
      }
    }
    model.epoch_losses.push_back(epoch_loss / static_cast<double>(epoch_steps));
  }
  return model;
}

Eigen::VectorXd pvdm_doc_vector(const PvdmModel& model, const std::string& programme_id) {
  const auto it = model.doc_index.find(programme_id);
  if (it == model.doc_index.end())
    fail(ErrorCode::UnknownDocument, "\"" + programme_id + "\" was not in the training corpus");
  return model.doc_vectors.row(it->second).transpose();
}

void save_pvdm(const PvdmModel& model, const std::filesystem::path& path) {
  nlohmann::json header{
      {"format_version", 1},
      {"type", "pvdm"},
      {"dim", model.params.dim},
      {"window", model.params.window},
      {"negative", model.params.negative},
      {"epochs", model.params.epochs},
      {"initial_lr", model.params.initial_lr},
      {"min_lr", model.params.min_lr},
      {"seed", model.params.seed},
      {"min_df", model.params.min_df},
      {"parallel_mode", model.parallel_mode},
      {"vocabulary", model.vocab.tokens},
      {"document_frequency", model.vocab.document_frequency},
      {"corpus_frequency", model.vocab.corpus_frequency},
      {"total_docs", model.vocab.total_docs},
      {"doc_ids", model.doc_ids},
      {"epoch_losses", model.epoch_losses},
      {"matrices", {"word_vectors", "doc_vectors", "output_weights", "pad_vector"}},
  };
  Eigen::MatrixXd pad_row = model.pad_vector.transpose();
  write_matrix_artifact(path, header,
                        {model.word_vectors, model.doc_vectors, model.output_weights, pad_row});
}

PvdmModel load_pvdm(const std::filesystem::path& path) {
  MatrixArtifact art = read_matrix_artifact(path);
  if (art.header.value("type", "") != "pvdm" || art.matrices.size() != 4)
    fail(ErrorCode::MalformedArtifact, "not a PV-DM artifact: " + path.string());

  PvdmModel model;
  model.params.dim = art.header.at("dim").get<int>();
  model.params.window = art.header.at("window").get<int>();
  model.params.negative = art.header.at("negative").get<int>();
  model.params.epochs = art.header.at("epochs").get<int>();
  model.params.initial_lr = art.header.at("initial_lr").get<double>();
  model.params.min_lr = art.header.at("min_lr").get<double>();
  model.params.seed = art.header.at("seed").get<std::uint64_t>();
  model.params.min_df = art.header.at("min_df").get<int>();
  model.parallel_mode = art.header.value("parallel_mode", false);
  model.vocab.tokens = art.header.at("vocabulary").get<std::vector<std::string>>();
  model.vocab.document_frequency = art.header.at("document_frequency").get<std::vector<int>>();
  model.vocab.corpus_frequency =
      art.header.at("corpus_frequency").get<std::vector<std::int64_t>>();
  model.vocab.total_docs = art.header.at("total_docs").get<int>();
  model.vocab.min_df = model.params.min_df;
  for (std::size_t i = 0; i < model.vocab.tokens.size(); ++i)
    model.vocab.index.emplace(model.vocab.tokens[i], static_cast<int>(i));
  model.doc_ids = art.header.at("doc_ids").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < model.doc_ids.size(); ++i)
    model.doc_index.emplace(model.doc_ids[i], static_cast<int>(i));
  model.epoch_losses = art.header.value("epoch_losses", std::vector<double>{});
  model.word_vectors = std::move(art.matrices[0]);
  model.doc_vectors = std::move(art.matrices[1]);
  model.output_weights = std::move(art.matrices[2]);
  model.pad_vector = art.matrices[3].row(0).transpose();
  return model;
}

}  // namespace mmrec
