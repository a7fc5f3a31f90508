#pragma once

#include <filesystem>
#include <string>

namespace mmrec {

struct SubtitleOptions {
  // opt-in removal of bracketed captions like "[APPLAUSE]"
  bool strip_bracketed_captions = false;
};

// Returns the subtitle text. SRT files (detected by a leading cue index plus
// timestamp line) are reduced to their cue texts joined by single spaces,
// with angle-bracket markup removed; anything else is returned verbatim.
std::string load_subtitles(const std::filesystem::path& path,
                           const SubtitleOptions& options = {});

// Same stripping applied to in-memory text (used by load_subtitles and tests).
std::string strip_subtitle_text(const std::string& raw,
                                const SubtitleOptions& options = {});

}  // namespace mmrec
