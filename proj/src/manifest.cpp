#include "mmrec/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "mmrec/errors.hpp"

namespace mmrec {

namespace {

std::string entry_ctx(std::size_t i, const std::string& id) {
  std::string ctx = "entry " + std::to_string(i);
  if (!id.empty()) ctx += " (id \"" + id + "\")";
  return ctx;
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedManifest, path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("programmes") || !doc["programmes"].is_array())
    fail(ErrorCode::MalformedManifest, path.string() + ": expected top-level \"programmes\" array");

  Manifest manifest;
  manifest.base_dir = path.has_parent_path() ? path.parent_path() : ".";

  std::unordered_set<std::string> seen;
  std::size_t i = 0;
  for (const auto& item : doc["programmes"]) {
    ++i;
    if (!item.is_object())
      fail(ErrorCode::MalformedManifest, entry_ctx(i, "") + ": not an object");
    ManifestEntry entry;
    try {
      entry.id = item.at("id").get<std::string>();
      entry.title = item.value("title", std::string{});
      entry.subtitle_path = item.at("subtitle_path").get<std::string>();
      entry.audio_path = item.at("audio_path").get<std::string>();
      entry.genres = item.at("genres").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedManifest, entry_ctx(i, entry.id) + ": " + e.what());
    }
    if (entry.id.empty())
      fail(ErrorCode::MalformedManifest, entry_ctx(i, "") + ": empty id");
    if (!seen.insert(entry.id).second)
      fail(ErrorCode::DuplicateId, "duplicate programme id \"" + entry.id + "\"");
    if (entry.genres.empty())
      fail(ErrorCode::MalformedManifest, entry_ctx(i, entry.id) + ": no genre paths");
    for (const auto& g : entry.genres) {
      if (g.empty())
        fail(ErrorCode::MalformedManifest, entry_ctx(i, entry.id) + ": empty genre path");
      std::string segment;
      bool bad = false;
      std::size_t start = 0;
      while (true) {
        const auto slash = g.find('/', start);
        segment = g.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
        if (segment.find_first_not_of(" \t") == std::string::npos) {
          bad = true;
          break;
        }
        if (slash == std::string::npos) break;
        start = slash + 1;
      }
      if (bad)
        fail(ErrorCode::MalformedManifest,
             entry_ctx(i, entry.id) + ": empty segment in genre path \"" + g + "\"");
    }
    if (entry.subtitle_path.is_relative())
      entry.subtitle_path = manifest.base_dir / entry.subtitle_path;
    if (entry.audio_path.is_relative())
      entry.audio_path = manifest.base_dir / entry.audio_path;
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

}  // namespace mmrec
