#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace mmrec {

// Ordered segments of one hierarchical genre path, lowercase, no slashes.
using GenrePath = std::vector<std::string>;

GenrePath parse_genre_path(const std::string& raw);

// Every distinct path prefix observed in the corpus gets its own node; a
// match can therefore occur at any tree level. Indices follow the
// lexicographic order of the "/"-joined prefix strings.
struct AttributeSpace {
  std::map<std::string, int> node_index;
  std::vector<std::string> nodes;  // index -> joined prefix

  int dimension() const { return static_cast<int>(nodes.size()); }
};

AttributeSpace build_attribute_space(const std::vector<std::vector<GenrePath>>& corpus_paths);

// Activates every prefix of every assigned path. level_weights, when
// non-empty, replaces the binary 1 at depth d (1-based) with
// level_weights[min(d, size) - 1].
Eigen::VectorXd encode_metadata(const std::vector<GenrePath>& paths,
                                const AttributeSpace& space,
                                const std::vector<double>& level_weights = {});

}  // namespace mmrec
