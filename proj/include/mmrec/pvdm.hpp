#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mmrec/vocabulary.hpp"

namespace mmrec {

struct PvdmParams {
  int dim = 50;
  int window = 5;    // context half-width in tokens
  int negative = 5;  // noise samples per step
  int epochs = 40;
  double initial_lr = 0.025;
  double min_lr = 1e-4;
  std::uint64_t seed = 1;
  int min_df = 2;
};

// Distributed-memory paragraph vectors: the document vector is concatenated
// with the 2*window ordered context word vectors (a shared trainable pad
// vector fills positions beyond the document boundary) to predict the target
// word through negative sampling.
struct PvdmModel {
  PvdmParams params;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  std::unordered_map<std::string, int> doc_index;
  Eigen::MatrixXd word_vectors;    // V x d
  Eigen::MatrixXd doc_vectors;     // n x d, row i belongs to docs[i]
  Eigen::MatrixXd output_weights;  // V x d*(2*window + 1)
  Eigen::VectorXd pad_vector;      // d
  std::vector<double> epoch_losses;
  bool parallel_mode = false;  // recorded in the artifact; training is single-threaded

  int concat_dim() const { return params.dim * (2 * params.window + 1); }
};

// One SGD step: predict `target` (an index into the vocabulary) from
// document `doc` and the surrounding context (-1 marks a pad position).
struct PvdmStep {
  int doc = 0;
  int target = 0;
  std::vector<int> context;
  std::vector<int> negatives;
};

struct PvdmGradients {
  Eigen::VectorXd doc;
  Eigen::VectorXd pad;
  std::map<int, Eigen::VectorXd> words;    // word index -> d(loss)/d(word vector)
  std::map<int, Eigen::VectorXd> outputs;  // word index -> d(loss)/d(output row)
};

double pvdm_step_loss(const PvdmModel& model, const PvdmStep& step);
double pvdm_step_loss_and_grad(const PvdmModel& model, const PvdmStep& step,
                               PvdmGradients& grads);

PvdmModel train_pvdm(const std::vector<TokenizedDoc>& docs, const PvdmParams& params);

Eigen::VectorXd pvdm_doc_vector(const PvdmModel& model, const std::string& programme_id);

void save_pvdm(const PvdmModel& model, const std::filesystem::path& path);
PvdmModel load_pvdm(const std::filesystem::path& path);

}  // namespace mmrec
