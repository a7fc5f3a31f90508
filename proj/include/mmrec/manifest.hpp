#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mmrec {

struct ManifestEntry {
  std::string id;
  std::string title;
  std::filesystem::path subtitle_path;
  std::filesystem::path audio_path;
  std::vector<std::string> genres;  // slash-separated paths, as listed
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;
};

// Parses the UTF-8 JSON manifest and checks its invariants (unique non-empty
// ids, >=1 genre path per entry, no empty path segments). Relative paths are
// resolved against the manifest's directory.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace mmrec
