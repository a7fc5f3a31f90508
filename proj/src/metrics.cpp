#include "mmrec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mmrec/artifacts.hpp"
#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"

namespace mmrec {

RelevanceSets derive_relevance(const SimilarityMatrix& user_sim, int m) {
  const Eigen::Index n = user_sim.size();
  if (m < 1 || m > n - 1)
    fail(ErrorCode::InvalidM,
         "m=" + std::to_string(m) + " outside [1, " + std::to_string(n - 1) + "]");

  RelevanceSets out;
  out.source = "derived:top-m";
  out.m = m;
  for (Eigen::Index q = 0; q < n; ++q) {
    const auto top = rank_items(user_sim, q, m);
    auto& set = out.relevant[user_sim.ids[static_cast<std::size_t>(q)]];
    for (const auto& item : top) set.insert(item.id);
  }
  return out;
}

RelevanceSets load_relevance(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedArtifact, path.string() + ": " + e.what());
  }
  if (!doc.is_object())
    fail(ErrorCode::MalformedArtifact, path.string() + ": expected an object");
  RelevanceSets out;
  out.source = "file:" + path.string();
  for (const auto& [id, arr] : doc.items()) {
    std::set<std::string> rel;
    for (const auto& v : arr) {
      const std::string rid = v.get<std::string>();
      if (rid != id) rel.insert(rid);
    }
    out.relevant.emplace(id, std::move(rel));
  }
  return out;
}

void save_relevance(const RelevanceSets& relevance, const std::filesystem::path& path) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [id, rel] : relevance.relevant)
    doc[id] = std::vector<std::string>(rel.begin(), rel.end());
  write_text_file(path, doc.dump(2) + "\n");
}

double average_precision(const std::vector<std::string>& ranked,
                         const std::set<std::string>& relevant, int k) {
  if (relevant.empty()) {
    log::warn("average_precision over an empty relevant set, returning 0");
    return 0.0;
  }
  const int limit = std::min<int>(k, static_cast<int>(ranked.size()));
  int hits = 0;
  double sum = 0.0;
  for (int i = 0; i < limit; ++i) {
    if (relevant.count(ranked[static_cast<std::size_t>(i)])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  const int denom = std::min<int>(static_cast<int>(relevant.size()), k);
  return sum / static_cast<double>(denom);
}

namespace {

std::vector<std::string> ranked_ids(const SimilarityMatrix& model, Eigen::Index q, int k) {
  const Eigen::Index top_n = std::min<Eigen::Index>(k, model.size() - 1);
  const auto items = rank_items(model, q, top_n);
  std::vector<std::string> ids;
  ids.reserve(items.size());
  for (const auto& item : items) ids.push_back(item.id);
  return ids;
}

}  // namespace

double map_at_k(const SimilarityMatrix& model, const RelevanceSets& relevance, int k) {
  double sum = 0.0;
  int evaluable = 0;
  for (Eigen::Index q = 0; q < model.size(); ++q) {
    const auto& id = model.ids[static_cast<std::size_t>(q)];
    const auto it = relevance.relevant.find(id);
    if (it == relevance.relevant.end() || it->second.empty()) continue;
    sum += average_precision(ranked_ids(model, q, k), it->second, k);
    ++evaluable;
  }
  if (evaluable == 0)
    fail(ErrorCode::NoEvaluableQueries, "no programme has a non-empty relevant set");
  return 100.0 * sum / static_cast<double>(evaluable);
}

double ild_at_k(const SimilarityMatrix& model, const SimilarityMatrix& distance_sim, int k) {
  if (model.size() != distance_sim.size() || model.ids != distance_sim.ids)
    fail(ErrorCode::ShapeMismatch, "diversity source disagrees on size or programme order");
  if (k < 2) {
    log::warn("ILD@k with k < 2 has no pairs, returning 0");
    return 0.0;
  }

  std::map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < distance_sim.size(); ++i)
    index.emplace(distance_sim.ids[static_cast<std::size_t>(i)], i);

  double query_sum = 0.0;
  Eigen::Index queries = 0;
  for (Eigen::Index q = 0; q < model.size(); ++q) {
    const auto ids = ranked_ids(model, q, k);
    if (ids.size() < 2) continue;
    double pair_sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        pair_sum += 1.0 - distance_sim.values(index.at(ids[i]), index.at(ids[j]));
        ++pairs;
      }
    query_sum += pair_sum / static_cast<double>(pairs);
    ++queries;
  }
  if (queries == 0) return 0.0;
  return 100.0 * query_sum / static_cast<double>(queries);
}

EvalReport evaluate(const std::vector<SimilarityMatrix>& models,
                    const RelevanceSets& relevance, const SimilarityMatrix& diversity_source,
                    const std::vector<int>& cutoffs) {
  if (models.empty()) fail(ErrorCode::NoModels, "no models to evaluate");
  EvalReport report;
  report.config["relevance_source"] = relevance.source;
  if (relevance.m > 0) report.config["relevance_m"] = std::to_string(relevance.m);
  report.config["ild_distance_source"] = diversity_source.label;
  for (const auto& model : models) {
    EvalReport::Row row;
    row.model = model.label;
    for (int k : cutoffs) {
      row.map_at[k] = map_at_k(model, relevance, k);
      row.ild_at[k] = ild_at_k(model, diversity_source, k);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::json doc;
  doc["models"] = nlohmann::json::object();
  for (const auto& row : rows) {
    nlohmann::json entry = nlohmann::json::object();
    for (const auto& [k, v] : row.map_at) entry["MAP@" + std::to_string(k)] = v;
    for (const auto& [k, v] : row.ild_at) entry["ILD@" + std::to_string(k)] = v;
    doc["models"][row.model] = entry;
  }
  doc["config"] = config;
  return doc.dump(2) + "\n";
}

std::string EvalReport::to_table() const {
  std::vector<int> cutoffs;
  if (!rows.empty())
    for (const auto& [k, _] : rows.front().map_at) cutoffs.push_back(k);

  std::ostringstream out;
  out << std::left;
  out.setf(std::ios::fixed);
  out.precision(2);
  out.width(8);
  out << "Model";
  for (int k : cutoffs) {
    out << "  MAP@" << k << "  ILD@" << k;
  }
  out << '\n';
  for (const auto& row : rows) {
    out.width(8);
    out << row.model;
    for (int k : cutoffs) {
      std::ostringstream map_s, ild_s;
      map_s.setf(std::ios::fixed);
      map_s.precision(2);
      map_s << row.map_at.at(k);
      ild_s.setf(std::ios::fixed);
      ild_s.precision(2);
      ild_s << row.ild_at.at(k);
      out << "  ";
      out.width(6 + static_cast<int>(std::to_string(k).size()) - 1);
      out << map_s.str();
      out << "  ";
      out.width(6 + static_cast<int>(std::to_string(k).size()) - 1);
      out << ild_s.str();
    }
    out << '\n';
  }
  return out.str();
}

GridSearchResult grid_search_weights(const std::vector<SimilarityMatrix>& matrices,
                                     const RelevanceSets& relevance,
                                     const SimilarityMatrix& diversity_source,
                                     const std::map<std::string, std::vector<double>>& grid) {
  if (grid.empty()) fail(ErrorCode::EmptyGrid, "empty weight grid");
  for (const auto& [label, values] : grid)
    if (values.empty())
      fail(ErrorCode::EmptyGrid, "empty grid for modality \"" + label + "\"");

  std::vector<std::string> labels;
  for (const auto& [label, _] : grid) labels.push_back(label);

  GridSearchResult result;
  bool have_best = false;
  double best_map = -1.0, best_ild = -1.0;
  std::vector<double> best_tuple;

  std::vector<std::size_t> idx(labels.size(), 0);
  while (true) {
    FusionWeights weights;
    std::vector<double> tuple;
    double total = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double w = grid.at(labels[i])[idx[i]];
      weights[labels[i]] = w;
      tuple.push_back(w);
      total += w;
    }
    if (total > 0.0) {
      const SimilarityMatrix fused = late_fuse(matrices, weights);
      const double map10 = map_at_k(fused, relevance, 10);
      const double ild10 = ild_at_k(fused, diversity_source, 10);
      result.sweep.emplace_back(weights, std::make_pair(map10, ild10));
      const bool better = !have_best || map10 > best_map ||
                          (map10 == best_map && ild10 > best_ild) ||
                          (map10 == best_map && ild10 == best_ild && tuple < best_tuple);
      if (better) {
        have_best = true;
        best_map = map10;
        best_ild = ild10;
        best_tuple = tuple;
        result.best = weights;
      }
    }
    // advance the lattice counter
    std::size_t pos = 0;
    while (pos < idx.size()) {
      if (++idx[pos] < grid.at(labels[pos]).size()) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) break;
  }
  if (!have_best)
    fail(ErrorCode::AllZeroWeights, "every lattice point has all-zero weights");

  const SimilarityMatrix fused = late_fuse(matrices, result.best);
  result.report = evaluate({fused}, relevance, diversity_source);
  std::ostringstream ws;
  for (const auto& [label, w] : result.best) ws << label << "=" << w << " ";
  result.report.config["weights"] = ws.str();
  return result;
}

}  // namespace mmrec
