#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"
#include "mmrec/pipeline.hpp"

namespace {

// 0 success, 1 usage error, 2 data error, 3 internal error
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

int exit_code_for(const mmrec::Error& e) {
  switch (e.code()) {
    case mmrec::ErrorCode::UsageError:
      return kExitUsage;
    case mmrec::ErrorCode::Internal:
      return kExitInternal;
    default:
      return kExitData;
  }
}

struct CommonFlags {
  std::string config_path;
  int jobs = -1;
  long long seed = -1;
  bool deterministic = false;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "pipeline config JSON")->required();
  cmd->add_option("--jobs", flags.jobs, "worker cap (0 = hardware)");
  cmd->add_option("--seed", flags.seed, "override config seed");
  cmd->add_flag("--deterministic", flags.deterministic,
                "force single-threaded stochastic stages");
  cmd->add_option("--out", flags.out_dir, "override output directory");
}

mmrec::PipelineConfig make_config(const CommonFlags& flags) {
  mmrec::PipelineConfig config = mmrec::load_config(flags.config_path);
  if (flags.jobs >= 0) config.jobs = flags.jobs;
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.deterministic) config.deterministic = true;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  return config;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto token = csv.substr(start, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - start);
    if (!token.empty()) out.push_back(token);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multimodal content similarity and recommendation pipeline"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string modalities_csv;
  std::string inspect_id, inspect_modality = "ALL";
  int inspect_top = 10;

  auto* ingest = app.add_subcommand("ingest", "ingest manifest, subtitles, audio, metadata");
  add_common(ingest, flags);

  auto* vectorize = app.add_subcommand("vectorize", "fit models and write per-modality vectors");
  add_common(vectorize, flags);
  vectorize->add_option("--modalities", modalities_csv, "subset, e.g. LSI,D2V,AUD,MD");

  auto* fuse = app.add_subcommand("fuse", "build similarity matrices and the fused model");
  add_common(fuse, flags);

  auto* evaluate = app.add_subcommand("evaluate", "score models with MAP@k and ILD@k");
  add_common(evaluate, flags);

  auto* inspect = app.add_subcommand("inspect", "print nearest neighbours per modality");
  add_common(inspect, flags);
  inspect->add_option("programme_id", inspect_id, "query programme")->required();
  inspect->add_option("--modality", inspect_modality, "LSI|D2V|AUD|MD|FUS|ALL");
  inspect->add_option("--top", inspect_top, "neighbours to print");

  auto* search = app.add_subcommand("search-weights", "grid-search late-fusion weights");
  add_common(search, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const mmrec::PipelineConfig config = make_config(flags);
    if (ingest->parsed()) {
      mmrec::cmd_ingest(config);
    } else if (vectorize->parsed()) {
      if (modalities_csv.empty())
        mmrec::cmd_vectorize(config);
      else
        mmrec::cmd_vectorize(config, split_csv(modalities_csv));
    } else if (fuse->parsed()) {
      mmrec::cmd_fuse(config);
    } else if (evaluate->parsed()) {
      const mmrec::EvalReport report = mmrec::cmd_evaluate(config);
      std::fputs(report.to_table().c_str(), stdout);
    } else if (inspect->parsed()) {
      std::fputs(mmrec::cmd_inspect(config, inspect_id, inspect_modality, inspect_top).c_str(),
                 stdout);
    } else if (search->parsed()) {
      const mmrec::GridSearchResult result = mmrec::cmd_search_weights(config);
      std::printf("best weights:\n");
      for (const auto& [label, w] : result.best) std::printf("  %s = %g\n", label.c_str(), w);
      std::fputs(result.report.to_table().c_str(), stdout);
    }
    return kExitOk;
  } catch (const mmrec::Error& e) {
    mmrec::log::error(e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    mmrec::log::error(std::string("internal error: ") + e.what());
    return kExitInternal;
  }
}
