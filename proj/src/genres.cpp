#include "mmrec/genres.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mmrec/errors.hpp"

namespace mmrec {

namespace {

std::string join_prefix(const GenrePath& path, std::size_t depth) {
  std::string s;
  for (std::size_t i = 0; i < depth; ++i) {
    if (i) s += '/';
    s += path[i];
  }
  return s;
}

}  // namespace

GenrePath parse_genre_path(const std::string& raw) {
  if (raw.empty()) fail(ErrorCode::EmptyPath, "empty genre path");
  GenrePath segments;
  std::size_t start = 0;
  while (true) {
    const auto slash = raw.find('/', start);
    std::string seg = raw.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
    const auto b = seg.find_first_not_of(" \t");
    const auto e = seg.find_last_not_of(" \t");
    seg = b == std::string::npos ? "" : seg.substr(b, e - b + 1);
    if (seg.empty())
      fail(ErrorCode::EmptySegment, "empty segment in genre path \"" + raw + "\"");
    std::transform(seg.begin(), seg.end(), seg.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    segments.push_back(std::move(seg));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  return segments;
}

AttributeSpace build_attribute_space(const std::vector<std::vector<GenrePath>>& corpus_paths) {
  std::set<std::string> prefixes;
  for (const auto& programme : corpus_paths)
    for (const auto& path : programme)
      for (std::size_t depth = 1; depth <= path.size(); ++depth)
        prefixes.insert(join_prefix(path, depth));
  if (prefixes.empty()) fail(ErrorCode::NoMetadata, "no genre paths in corpus");

  AttributeSpace space;
  for (const auto& p : prefixes) {
    space.node_index.emplace(p, static_cast<int>(space.nodes.size()));
    space.nodes.push_back(p);
  }
  return space;
}

Eigen::VectorXd encode_metadata(const std::vector<GenrePath>& paths,
                                const AttributeSpace& space,
                                const std::vector<double>& level_weights) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space.dimension());
  for (const auto& path : paths) {
    for (std::size_t depth = 1; depth <= path.size(); ++depth) {
      const std::string node = join_prefix(path, depth);
      const auto it = space.node_index.find(node);
      if (it == space.node_index.end())
        fail(ErrorCode::UnknownNode, "node \"" + node + "\" not in attribute space");
      double w = 1.0;
      if (!level_weights.empty())
        w = level_weights[std::min(depth, level_weights.size()) - 1];
      v[it->second] = std::max(v[it->second], w);
    }
  }
  return v;
}

}  // namespace mmrec
