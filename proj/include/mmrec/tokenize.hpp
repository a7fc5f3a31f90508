#pragma once

#include <string>
#include <vector>

namespace mmrec {

// Ordered subtitle document; token order follows the original text.
struct TokenizedDoc {
  std::string programme_id;
  std::vector<std::string> tokens;
};

// Lowercases, splits on whitespace, strips leading/trailing non-alphanumeric
// characters per token (internal apostrophes/hyphens survive). Tokens reduced
// to nothing are dropped.
std::vector<std::string> tokenize(const std::string& text);

}  // namespace mmrec
