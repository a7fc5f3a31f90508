#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mmrec {

inline constexpr int kTargetSampleRate = 22050;
inline constexpr int kFrameLength = 2048;
inline constexpr int kHopLength = 512;

// Mono amplitude signal in [-1, 1], always 22050 Hz after ingestion.
struct MonoSignal {
  std::string programme_id;
  std::vector<double> samples;
  int sample_rate = kTargetSampleRate;
};

// Decodes a RIFF/WAVE file (PCM16 or float32, mono/stereo, any rate),
// downmixes stereo by channel mean, resamples to 22050 Hz and clamps to
// [-1, 1]. Signals shorter than one frame are zero-padded to frame length.
MonoSignal load_audio(const std::filesystem::path& path);

// Band-limited polyphase resampler (windowed sinc, 64 taps per phase).
// Output length is round(len * dst_rate / src_rate). Pass-through when the
// rates already match.
std::vector<double> resample(const std::vector<double>& input, int src_rate, int dst_rate);

}  // namespace mmrec
