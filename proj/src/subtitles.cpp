#include "mmrec/subtitles.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "mmrec/artifacts.hpp"
#include "mmrec/errors.hpp"

namespace mmrec {

namespace {

bool valid_utf8(const std::string& s) {
  std::size_t i = 0;
  const auto n = s.size();
  while (i < n) {
    const unsigned char c = s[i];
    std::size_t extra;
    if (c < 0x80) {
      i += 1;
      continue;
    } else if ((c >> 5) == 0x6) {
      extra = 1;
    } else if ((c >> 4) == 0xe) {
      extra = 2;
    } else if ((c >> 3) == 0x1e) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k)
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    i += extra + 1;
  }
  return true;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// "HH:MM:SS,mmm --> HH:MM:SS,mmm", trailing cue settings ignored
bool is_timestamp_line(const std::string& line) {
  auto parse_time = [](const std::string& t) {
    // hours may exceed two digits
    std::size_t colon1 = t.find(':');
    if (colon1 == std::string::npos || colon1 < 2) return false;
    if (t.size() < colon1 + 10) return false;
    for (std::size_t i = 0; i < colon1; ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    const std::string rest = t.substr(colon1);  // ":MM:SS,mmm"
    if (rest.size() != 10) return false;
    const char* pattern = ":dd:dd,ddd";
    for (std::size_t i = 0; i < 10; ++i) {
      if (pattern[i] == 'd') {
        if (!std::isdigit(static_cast<unsigned char>(rest[i]))) return false;
      } else if (rest[i] != pattern[i]) {
        return false;
      }
    }
    return true;
  };
  const std::string t = trim(line);
  const auto arrow = t.find(" --> ");
  if (arrow == std::string::npos) return false;
  std::string lhs = trim(t.substr(0, arrow));
  std::string rhs = trim(t.substr(arrow + 5));
  // cue settings like "X1:40" may follow the end time
  const auto space = rhs.find(' ');
  if (space != std::string::npos) rhs = rhs.substr(0, space);
  return parse_time(lhs) && parse_time(rhs);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() && cur.back() == '\r') cur.pop_back();
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::string strip_markup(const std::string& s, bool strip_brackets) {
  std::string out;
  out.reserve(s.size());
  int angle_depth = 0;
  int bracket_depth = 0;
  for (char c : s) {
    if (c == '<') {
      ++angle_depth;
    } else if (c == '>' && angle_depth > 0) {
      --angle_depth;
    } else if (strip_brackets && c == '[') {
      ++bracket_depth;
    } else if (strip_brackets && c == ']' && bracket_depth > 0) {
      --bracket_depth;
    } else if (angle_depth == 0 && bracket_depth == 0) {
      out.push_back(c);
    }
  }
  return out;
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool prev_space = false;
  for (char c : s) {
    const bool space = (c == ' ' || c == '\t');
    if (space && prev_space) continue;
    out.push_back(space ? ' ' : c);
    prev_space = space;
  }
  const std::string t = trim(out);
  return t;
}

}  // namespace

std::string strip_subtitle_text(const std::string& raw, const SubtitleOptions& options) {
  std::string text = raw;
  // drop a UTF-8 BOM if present
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xef &&
      static_cast<unsigned char>(text[1]) == 0xbb &&
      static_cast<unsigned char>(text[2]) == 0xbf)
    text.erase(0, 3);
  if (!valid_utf8(text)) fail(ErrorCode::InvalidEncoding, "subtitle text is not valid UTF-8");

  const auto lines = split_lines(text);

  // SRT iff the first non-blank line is an integer cue index followed by a
  // timestamp line
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  const bool is_srt = first + 1 < lines.size() && is_integer(trim(lines[first])) &&
                      is_timestamp_line(lines[first + 1]);
  if (!is_srt) return text;

  std::vector<std::string> cue_texts;
  std::size_t i = first;
  while (i < lines.size()) {
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    if (i >= lines.size()) break;
    if (!is_integer(trim(lines[i])))
      fail(ErrorCode::MalformedSrt, "expected cue index, got \"" + lines[i] + "\"");
    ++i;
    if (i >= lines.size() || !is_timestamp_line(lines[i]))
      fail(ErrorCode::MalformedSrt,
           "bad timestamp line" + (i < lines.size() ? ": \"" + lines[i] + "\"" : ""));
    ++i;
    std::vector<std::string> text_lines;
    while (i < lines.size() && !trim(lines[i]).empty()) {
      text_lines.push_back(strip_markup(lines[i], options.strip_bracketed_captions));
      ++i;
    }
    std::string joined;
    for (const auto& l : text_lines) {
      if (!joined.empty()) joined += ' ';
      joined += l;
    }
    joined = collapse_spaces(joined);
    if (!joined.empty()) cue_texts.push_back(joined);
  }

  std::string out;
  for (const auto& cue : cue_texts) {
    if (!out.empty()) out += ' ';
    out += cue;
  }
  return out;
}

std::string load_subtitles(const std::filesystem::path& path, const SubtitleOptions& options) {
  return strip_subtitle_text(read_text_file(path), options);
}

}  // namespace mmrec
