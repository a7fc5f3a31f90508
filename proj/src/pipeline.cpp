#include "mmrec/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mmrec/artifacts.hpp"
#include "mmrec/corpus.hpp"
#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"
#include "mmrec/lsi.hpp"
#include "mmrec/rng.hpp"
#include "mmrec/util.hpp"

namespace mmrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words{
      "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "from",
      "had", "has", "have", "he", "her", "his", "i", "in", "is", "it", "its",
      "me", "my", "no", "not", "of", "on", "or", "she", "so", "that", "the",
      "their", "them", "they", "this", "to", "was", "we", "were", "what",
      "when", "which", "who", "will", "with", "you", "your"};
  return words;
}

// stage seeds: distinct sub-streams per stochastic stage
enum class Stage : std::uint64_t { Lsi = 1, Pvdm = 2, Codebook = 3 };

std::uint64_t stage_seed(const PipelineConfig& config, Stage stage) {
  return Rng::derive(config.seed, static_cast<std::uint64_t>(stage));
}

fs::path corpus_dir(const PipelineConfig& c) { return c.out_dir / "corpus"; }
fs::path models_dir(const PipelineConfig& c) { return c.out_dir / "models"; }
fs::path vectors_dir(const PipelineConfig& c) { return c.out_dir / "vectors"; }
fs::path sims_dir(const PipelineConfig& c) { return c.out_dir / "sims"; }
fs::path reports_dir(const PipelineConfig& c) { return c.out_dir / "reports"; }

std::string read_stamp(const fs::path& path) {
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  return s;
}

bool stamp_matches(const fs::path& path, const std::string& expected) {
  return fs::exists(path) && read_stamp(path) == expected;
}

void write_stamp(const fs::path& path, const std::string& value) {
  write_text_file(path, value + "\n");
}

std::string ingest_stamp_value(const PipelineConfig& config) {
  std::uint64_t h = fnv1a(read_text_file(config.manifest_path));
  h = fnv1a(config.subtitles.strip_bracketed_captions ? "brackets:on" : "brackets:off", h);
  return hex64(h);
}

std::string modality_stamp_value(const PipelineConfig& config, const std::string& modality) {
  std::uint64_t h = fnv1a(ingest_stamp_value(config));
  json params;
  if (modality == "LSI") {
    params = {{"k", config.lsi_k},
              {"min_df", config.lsi_min_df},
              {"tfidf", config.lsi_tfidf},
              {"stopwords", config.lsi_remove_stopwords},
              {"seed", stage_seed(config, Stage::Lsi)}};
  } else if (modality == "D2V") {
    params = {{"dim", config.pvdm.dim},        {"window", config.pvdm.window},
              {"negative", config.pvdm.negative}, {"epochs", config.pvdm.epochs},
              {"initial_lr", config.pvdm.initial_lr}, {"min_lr", config.pvdm.min_lr},
              {"min_df", config.pvdm.min_df},  {"seed", stage_seed(config, Stage::Pvdm)}};
  } else if (modality == "AUD") {
    params = {{"k", config.codebook.k},
              {"batch_size", config.codebook.batch_size},
              {"iterations", config.codebook.iterations},
              {"pooled", config.pooled_audio},
              {"seed", stage_seed(config, Stage::Codebook)}};
  } else if (modality == "MD") {
    params = {{"level_weights", config.metadata_level_weights}};
  }
  h = fnv1a(params.dump(), h);
  return hex64(h);
}

std::string fuse_stamp_value(const PipelineConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& m : kModalities) h = fnv1a(modality_stamp_value(config, m), h);
  json fusion{{"weights", config.fusion_weights}, {"middle", config.middle_fusion}};
  h = fnv1a(fusion.dump(), h);
  return hex64(h);
}

Corpus load_cached_corpus(const PipelineConfig& config) {
  const fs::path dir = corpus_dir(config);
  json doc;
  try {
    doc = json::parse(read_text_file(dir / "corpus.json"));
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedArtifact, "corpus cache: " + std::string(e.what()));
  }
  MatrixArtifact features = read_matrix_artifact(dir / "features.mat");

  Corpus corpus;
  std::size_t i = 0;
  for (const auto& item : doc.at("programmes")) {
    Programme p;
    p.id = item.at("id").get<std::string>();
    p.title = item.value("title", std::string{});
    p.doc.programme_id = p.id;
    p.doc.tokens = item.at("tokens").get<std::vector<std::string>>();
    for (const auto& path : item.at("genre_paths"))
      p.genre_paths.push_back(path.get<GenrePath>());
    p.features.programme_id = p.id;
    p.features.features = std::move(features.matrices.at(i));
    corpus.programmes.push_back(std::move(p));
    ++i;
  }
  return corpus;
}

void save_corpus_cache(const PipelineConfig& config, const Corpus& corpus) {
  const fs::path dir = corpus_dir(config);
  fs::create_directories(dir);
  json doc;
  doc["programmes"] = json::array();
  std::vector<Eigen::MatrixXd> features;
  for (const auto& p : corpus.programmes) {
    doc["programmes"].push_back(
        {{"id", p.id}, {"title", p.title}, {"tokens", p.doc.tokens},
         {"genre_paths", p.genre_paths}});
    features.push_back(p.features.features);
  }
  write_text_file(dir / "corpus.json", doc.dump() + "\n");
  json header{{"format_version", 1},
              {"type", "frame_features"},
              {"ids", corpus.ids()},
              {"matrices", "one block per programme, corpus order"}};
  write_matrix_artifact(dir / "features.mat", header, features);
}

Corpus ensure_ingested(const PipelineConfig& config) {
  const std::string stamp = ingest_stamp_value(config);
  const fs::path stamp_path = corpus_dir(config) / "ingest.stamp";
  if (stamp_matches(stamp_path, stamp) && fs::exists(corpus_dir(config) / "corpus.json") &&
      fs::exists(corpus_dir(config) / "features.mat")) {
    log::info("ingest: skipped (cache " + stamp + " up to date)");
    return load_cached_corpus(config);
  }
  const Manifest manifest = load_manifest(config.manifest_path);
  log::info("ingest: " + std::to_string(manifest.entries.size()) + " programmes from " +
            config.manifest_path.string());
  Corpus corpus = ingest_corpus(manifest, config.subtitles, config.effective_jobs());
  for (const auto& p : corpus.programmes)
    log::info("ingest: " + p.id + " ok (" + std::to_string(p.doc.tokens.size()) +
              " tokens, " + std::to_string(p.features.features.rows()) + " frames)");
  save_corpus_cache(config, corpus);
  write_stamp(stamp_path, stamp);
  return corpus;
}

void save_vectors(const PipelineConfig& config, const VectorSet& vectors) {
  fs::create_directories(vectors_dir(config));
  json header{{"format_version", 1},
              {"type", "vectors"},
              {"modality", vectors.label},
              {"ids", vectors.ids},
              {"matrices", {"rows"}}};
  write_matrix_artifact(vectors_dir(config) / (vectors.label + ".mat"), header,
                        {vectors.rows});
}

std::vector<TokenizedDoc> lsi_documents(const PipelineConfig& config, const Corpus& corpus) {
  std::vector<TokenizedDoc> docs = corpus.docs();
  if (config.lsi_remove_stopwords) {
    for (auto& doc : docs) {
      std::vector<std::string> kept;
      for (auto& tok : doc.tokens)
        if (!stopwords().count(tok)) kept.push_back(std::move(tok));
      doc.tokens = std::move(kept);
    }
  }
  return docs;
}

void vectorize_lsi(const PipelineConfig& config, const Corpus& corpus) {
  const auto docs = lsi_documents(config, corpus);
  const Vocabulary vocab = build_vocabulary(docs, config.lsi_min_df);
  std::vector<BowVector> bows;
  bows.reserve(docs.size());
  for (const auto& d : docs) bows.push_back(to_bow(d, vocab));
  LsiOptions options;
  options.k = config.lsi_k;
  options.tfidf = config.lsi_tfidf;
  options.seed = stage_seed(config, Stage::Lsi);
  const LsiModel model = fit_lsi(bows, vocab, options);
  fs::create_directories(models_dir(config));
  save_lsi(model, models_dir(config) / "lsi.model");
  save_vectors(config, {model.doc_latent, model.doc_ids, "LSI"});
}

void vectorize_pvdm(const PipelineConfig& config, const Corpus& corpus) {
  PvdmParams params = config.pvdm;
  params.seed = stage_seed(config, Stage::Pvdm);
  const PvdmModel model = train_pvdm(corpus.docs(), params);
  fs::create_directories(models_dir(config));
  save_pvdm(model, models_dir(config) / "pvdm.model");
  save_vectors(config, {model.doc_vectors, model.doc_ids, "D2V"});
}

void vectorize_audio(const PipelineConfig& config, const Corpus& corpus) {
  if (config.pooled_audio) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(corpus.programmes.size()),
                         2 * kNumFeatures);
    for (std::size_t i = 0; i < corpus.programmes.size(); ++i)
      rows.row(static_cast<Eigen::Index>(i)) =
          pooled_feature_vector(corpus.programmes[i].features).transpose();
    save_vectors(config, {rows, corpus.ids(), "AUD"});
    return;
  }

  Eigen::Index total = 0;
  for (const auto& p : corpus.programmes) total += p.features.features.rows();
  Eigen::MatrixXd all_frames(total, kNumFeatures);
  Eigen::Index offset = 0;
  for (const auto& p : corpus.programmes) {
    all_frames.middleRows(offset, p.features.features.rows()) = p.features.features;
    offset += p.features.features.rows();
  }

  const NormalizationStats stats = fit_normalization(all_frames);
  const Eigen::MatrixXd normalized = apply_normalization(all_frames, stats);
  CodebookOptions options = config.codebook;
  options.seed = stage_seed(config, Stage::Codebook);
  const Codebook codebook = fit_codebook(normalized, stats, options);
  fs::create_directories(models_dir(config));
  save_codebook(codebook, models_dir(config) / "codebook.model");

  Eigen::MatrixXd rows(static_cast<Eigen::Index>(corpus.programmes.size()), options.k);
  for (std::size_t i = 0; i < corpus.programmes.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) =
        encode_boaw(corpus.programmes[i].features, codebook).histogram.transpose();
  save_vectors(config, {rows, corpus.ids(), "AUD"});
}

void vectorize_metadata(const PipelineConfig& config, const Corpus& corpus) {
  std::vector<std::vector<GenrePath>> corpus_paths;
  for (const auto& p : corpus.programmes) corpus_paths.push_back(p.genre_paths);
  const AttributeSpace space = build_attribute_space(corpus_paths);

  fs::create_directories(models_dir(config));
  write_text_file(models_dir(config) / "attribute_space.json",
                  json(space.nodes).dump(2) + "\n");

  Eigen::MatrixXd rows(static_cast<Eigen::Index>(corpus.programmes.size()),
                       space.dimension());
  for (std::size_t i = 0; i < corpus.programmes.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) =
        encode_metadata(corpus.programmes[i].genre_paths, space,
                        config.metadata_level_weights)
            .transpose();
  save_vectors(config, {rows, corpus.ids(), "MD"});
}

void ensure_vectorized(const PipelineConfig& config, const std::vector<std::string>& modalities) {
  std::optional<Corpus> corpus;
  for (const auto& m : modalities) {
    if (std::find(kModalities.begin(), kModalities.end(), m) == kModalities.end())
      fail(ErrorCode::UsageError, "unknown modality \"" + m + "\"");
    const std::string stamp = modality_stamp_value(config, m);
    const fs::path stamp_path = vectors_dir(config) / (m + ".stamp");
    if (stamp_matches(stamp_path, stamp) &&
        fs::exists(vectors_dir(config) / (m + ".mat"))) {
      log::info("vectorize " + m + ": skipped (cache " + stamp + " up to date)");
      continue;
    }
    if (!corpus) corpus = ensure_ingested(config);
    log::info("vectorize " + m + ": fitting");
    if (m == "LSI") vectorize_lsi(config, *corpus);
    else if (m == "D2V") vectorize_pvdm(config, *corpus);
    else if (m == "AUD") vectorize_audio(config, *corpus);
    else vectorize_metadata(config, *corpus);
    write_stamp(stamp_path, stamp);
  }
}

void ensure_fused(const PipelineConfig& config) {
  const std::string stamp = fuse_stamp_value(config);
  const fs::path stamp_path = sims_dir(config) / "fuse.stamp";
  bool all_present = fs::exists(sims_dir(config) / "FUS.simm");
  for (const auto& m : kModalities)
    all_present = all_present && fs::exists(sims_dir(config) / (m + ".simm"));
  if (config.middle_fusion)
    all_present = all_present && fs::exists(sims_dir(config) / "MID.simm");
  if (stamp_matches(stamp_path, stamp) && all_present) {
    log::info("fuse: skipped (cache " + stamp + " up to date)");
    return;
  }

  ensure_vectorized(config, kModalities);
  fs::create_directories(sims_dir(config));
  std::vector<SimilarityMatrix> matrices;
  std::vector<VectorSet> vector_sets;
  for (const auto& m : kModalities) {
    VectorSet vectors = load_vectors(config, m);
    SimilarityMatrix sim = similarity_matrix(vectors, config.effective_jobs());
    write_simm(sims_dir(config) / (m + ".simm"), sim);
    matrices.push_back(std::move(sim));
    vector_sets.push_back(std::move(vectors));
  }
  const SimilarityMatrix fused = late_fuse(matrices, config.fusion_weights);
  write_simm(sims_dir(config) / "FUS.simm", fused);
  log::info("fuse: wrote FUS.simm with weights " + json(config.fusion_weights).dump());

  if (config.middle_fusion) {
    VectorSet mid = middle_fuse(vector_sets, config.fusion_weights);
    SimilarityMatrix mid_sim = similarity_matrix(mid, config.effective_jobs());
    mid_sim.label = "MID";
    write_simm(sims_dir(config) / "MID.simm", mid_sim);
    log::info("fuse: wrote MID.simm (middle fusion)");
  }
  write_stamp(stamp_path, stamp);
}

RelevanceSets resolve_relevance(const PipelineConfig& config) {
  if (!config.relevance_file.empty()) return load_relevance(config.relevance_file);
  if (!config.user_sim_file.empty()) {
    SimilarityMatrix user = read_simm(config.user_sim_file);
    RelevanceSets rel = derive_relevance(user, config.relevance_m);
    rel.source = "derived:top-" + std::to_string(config.relevance_m) + " of " +
                 config.user_sim_file;
    return rel;
  }
  fail(ErrorCode::UsageError,
       "no relevance source configured; set evaluation.relevance_file or "
       "evaluation.user_sim with evaluation.m");
}

}  // namespace

int PipelineConfig::effective_jobs() const {
  if (deterministic) return 1;
  return jobs <= 0 ? default_jobs() : jobs;
}

PipelineConfig load_config(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::UsageError, "config " + path.string() + ": " + e.what());
  }

  PipelineConfig c;
  try {
    c.manifest_path = doc.at("manifest").get<std::string>();
    c.out_dir = doc.at("out_dir").get<std::string>();
    c.seed = doc.value("seed", 42ULL);
    c.jobs = doc.value("jobs", 0);
    c.deterministic = doc.value("deterministic", false);

    if (doc.contains("corpus"))
      c.subtitles.strip_bracketed_captions =
          doc["corpus"].value("strip_bracketed_captions", false);

    if (doc.contains("text")) {
      const auto& t = doc["text"];
      c.lsi_k = t.value("lsi_k", 50);
      c.lsi_min_df = t.value("lsi_min_df", 2);
      c.lsi_tfidf = t.value("lsi_tfidf", false);
      c.lsi_remove_stopwords = t.value("lsi_remove_stopwords", false);
      if (t.contains("pvdm")) {
        const auto& p = t["pvdm"];
        c.pvdm.dim = p.value("dim", 50);
        c.pvdm.window = p.value("window", 5);
        c.pvdm.negative = p.value("negative", 5);
        c.pvdm.epochs = p.value("epochs", 40);
        c.pvdm.initial_lr = p.value("initial_lr", 0.025);
        c.pvdm.min_lr = p.value("min_lr", 1e-4);
        c.pvdm.min_df = p.value("min_df", 2);
      }
    }

    if (doc.contains("audio")) {
      const auto& a = doc["audio"];
      c.codebook.k = a.value("codebook_k", 50);
      c.codebook.batch_size = a.value("batch_size", 1024);
      c.codebook.iterations = a.value("iterations", 300);
      c.pooled_audio = a.value("pooled_features", false);
    }

    if (doc.contains("metadata"))
      c.metadata_level_weights =
          doc["metadata"].value("level_weights", std::vector<double>{});

    if (doc.contains("fusion")) {
      const auto& f = doc["fusion"];
      if (f.contains("weights"))
        c.fusion_weights = f["weights"].get<FusionWeights>();
      c.middle_fusion = f.value("middle", false);
    }

    if (doc.contains("evaluation")) {
      const auto& e = doc["evaluation"];
      c.relevance_file = e.value("relevance_file", std::string{});
      c.user_sim_file = e.value("user_sim", std::string{});
      c.relevance_m = e.value("m", 20);
      c.ild_distance = e.value("ild_distance", std::string{"MD"});
      c.cutoffs = e.value("cutoffs", std::vector<int>{10, 20});
    }

    if (doc.contains("grid"))
      c.weight_grid = doc["grid"].get<std::map<std::string, std::vector<double>>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::UsageError, "config " + path.string() + ": " + e.what());
  }

  // relative data paths resolve against the config file's directory
  const fs::path base = path.has_parent_path() ? path.parent_path() : ".";
  if (c.manifest_path.is_relative()) c.manifest_path = base / c.manifest_path;
  if (c.out_dir.is_relative()) c.out_dir = base / c.out_dir;
  if (!c.relevance_file.empty() && fs::path(c.relevance_file).is_relative())
    c.relevance_file = (base / c.relevance_file).string();
  if (!c.user_sim_file.empty() && fs::path(c.user_sim_file).is_relative())
    c.user_sim_file = (base / c.user_sim_file).string();
  return c;
}

VectorSet load_vectors(const PipelineConfig& config, const std::string& modality) {
  const fs::path path = vectors_dir(config) / (modality + ".mat");
  if (!fs::exists(path))
    fail(ErrorCode::MissingModality,
         "no vectors for modality \"" + modality + "\" (expected " + path.string() + ")");
  MatrixArtifact art = read_matrix_artifact(path);
  VectorSet out;
  out.label = art.header.value("modality", modality);
  out.ids = art.header.at("ids").get<std::vector<std::string>>();
  out.rows = std::move(art.matrices.at(0));
  return out;
}

SimilarityMatrix load_similarity(const PipelineConfig& config, const std::string& label) {
  const fs::path path = sims_dir(config) / (label + ".simm");
  if (!fs::exists(path))
    fail(ErrorCode::MissingModality,
         "no similarity matrix \"" + label + "\" (expected " + path.string() + ")");
  SimilarityMatrix sim = read_simm(path);
  sim.label = label;
  return sim;
}

void cmd_ingest(const PipelineConfig& config) {
  fs::create_directories(config.out_dir);
  ensure_ingested(config);
}

void cmd_vectorize(const PipelineConfig& config, const std::vector<std::string>& modalities) {
  fs::create_directories(config.out_dir);
  ensure_vectorized(config, modalities);
}

void cmd_fuse(const PipelineConfig& config) {
  fs::create_directories(config.out_dir);
  ensure_fused(config);
}

EvalReport cmd_evaluate(const PipelineConfig& config) {
  ensure_fused(config);
  const RelevanceSets relevance = resolve_relevance(config);

  std::vector<SimilarityMatrix> models;
  for (const auto& m : kModalities) models.push_back(load_similarity(config, m));
  models.push_back(load_similarity(config, "FUS"));
  if (config.middle_fusion) models.push_back(load_similarity(config, "MID"));
  if (!config.user_sim_file.empty()) {
    SimilarityMatrix user = read_simm(config.user_sim_file);
    user.label = "USER";
    models.push_back(std::move(user));
  }

  SimilarityMatrix diversity;
  if (config.ild_distance == "USER") {
    if (config.user_sim_file.empty())
      fail(ErrorCode::UsageError, "ild_distance USER requires evaluation.user_sim");
    diversity = read_simm(config.user_sim_file);
    diversity.label = "USER";
  } else {
    diversity = load_similarity(config, config.ild_distance);
  }

  EvalReport report = evaluate(models, relevance, diversity, config.cutoffs);
  report.config["seed"] = std::to_string(config.seed);
  report.config["fusion_weights"] = json(config.fusion_weights).dump();

  fs::create_directories(reports_dir(config));
  write_text_file(reports_dir(config) / "report.json", report.to_json());
  write_text_file(reports_dir(config) / "report.txt", report.to_table());
  return report;
}

std::string cmd_inspect(const PipelineConfig& config, const std::string& programme_id,
                        const std::string& modality, int top_n) {
  ensure_fused(config);
  std::vector<std::string> labels;
  if (modality == "ALL") {
    labels = kModalities;
    labels.push_back("FUS");
  } else {
    labels.push_back(modality);
  }

  std::ostringstream out;
  for (const auto& label : labels) {
    const SimilarityMatrix sim = load_similarity(config, label);
    const auto it = std::find(sim.ids.begin(), sim.ids.end(), programme_id);
    if (it == sim.ids.end())
      fail(ErrorCode::UnknownDocument, "programme \"" + programme_id + "\" not in corpus");
    const auto query = static_cast<Eigen::Index>(it - sim.ids.begin());
    const auto items =
        rank_items(sim, query, std::min<Eigen::Index>(top_n, sim.size() - 1));
    out << label << " neighbours of " << programme_id << ":\n";
    for (std::size_t r = 0; r < items.size(); ++r) {
      std::ostringstream score;
      score.setf(std::ios::fixed);
      score.precision(4);
      score << items[r].score;
      out << "  " << (r + 1) << ". " << items[r].id << "  " << score.str() << "\n";
    }
  }
  return out.str();
}

GridSearchResult cmd_search_weights(const PipelineConfig& config) {
  if (config.weight_grid.empty())
    fail(ErrorCode::EmptyGrid, "config has no \"grid\" section");
  ensure_fused(config);

  std::vector<SimilarityMatrix> matrices;
  for (const auto& [label, _] : config.weight_grid)
    matrices.push_back(load_similarity(config, label));
  const RelevanceSets relevance = resolve_relevance(config);
  SimilarityMatrix diversity = load_similarity(config, config.ild_distance);

  GridSearchResult result =
      grid_search_weights(matrices, relevance, diversity, config.weight_grid);

  fs::create_directories(reports_dir(config));
  std::ostringstream csv;
  for (const auto& [label, _] : config.weight_grid) csv << label << ",";
  csv << "MAP@10,ILD@10\n";
  for (const auto& [weights, scores] : result.sweep) {
    for (const auto& [_, w] : weights) csv << w << ",";
    csv << scores.first << "," << scores.second << "\n";
  }
  write_text_file(reports_dir(config) / "sweep.csv", csv.str());
  write_text_file(reports_dir(config) / "best_weights.json",
                  json(result.best).dump(2) + "\n");
  return result;
}

}  // namespace mmrec
