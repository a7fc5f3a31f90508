#include "mmrec/tokenize.hpp"

#include <cstdint>

namespace mmrec {

namespace {

// decode one UTF-8 code point; malformed bytes come back as themselves
std::uint32_t decode(const std::string& s, std::size_t& i) {
  const unsigned char c = s[i];
  std::size_t extra = 0;
  std::uint32_t cp = c;
  if ((c >> 5) == 0x6) {
    extra = 1;
    cp = c & 0x1f;
  } else if ((c >> 4) == 0xe) {
    extra = 2;
    cp = c & 0x0f;
  } else if ((c >> 3) == 0x1e) {
    extra = 3;
    cp = c & 0x07;
  } else {
    ++i;
    return c;
  }
  if (i + extra >= s.size()) {
    ++i;
    return c;
  }
  for (std::size_t k = 1; k <= extra; ++k) cp = (cp << 6) | (s[i + k] & 0x3f);
  i += extra + 1;
  return cp;
}

bool is_space_cp(std::uint32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0x00a0: case 0x1680: case 0x2028: case 0x2029: case 0x202f:
    case 0x205f: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

// ASCII letters/digits count; non-ASCII is treated as word material
bool is_word_cp(std::uint32_t cp) {
  if (cp >= 0x80) return true;
  return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

void append_cp(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::vector<std::uint32_t> word;

  auto flush = [&] {
    if (word.empty()) return;
    // strip leading/trailing non-alphanumerics
    std::size_t b = 0, e = word.size();
    while (b < e && !is_word_cp(word[b])) ++b;
    while (e > b && !is_word_cp(word[e - 1])) --e;
    if (b < e) {
      std::string tok;
      for (std::size_t k = b; k < e; ++k) append_cp(tok, word[k]);
      tokens.push_back(std::move(tok));
    }
    word.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    std::uint32_t cp = decode(text, i);
    if (is_space_cp(cp)) {
      flush();
      continue;
    }
    if (cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
    word.push_back(cp);
  }
  flush();
  return tokens;
}

}  // namespace mmrec
