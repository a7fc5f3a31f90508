#include "mmrec/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>

#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"

namespace mmrec {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;

struct WavData {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::vector<char> payload;
};

template <typename T>
T read_le(std::istream& in, const std::string& ctx) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    fail(ErrorCode::UnsupportedWavFormat, "truncated WAV: " + ctx);
  return v;
}

WavData parse_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingFile, path.string());

  char riff[4], wave[4];
  if (!in.read(riff, 4) || std::memcmp(riff, "RIFF", 4) != 0)
    fail(ErrorCode::UnsupportedWavFormat, "not a RIFF file: " + path.string());
  read_le<std::uint32_t>(in, path.string());  // riff size, untrusted
  if (!in.read(wave, 4) || std::memcmp(wave, "WAVE", 4) != 0)
    fail(ErrorCode::UnsupportedWavFormat, "not a WAVE file: " + path.string());

  WavData wav;
  bool have_fmt = false, have_data = false;
  while (in && !(have_fmt && have_data)) {
    char id[4];
    if (!in.read(id, 4)) break;
    const auto size = read_le<std::uint32_t>(in, path.string());
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) fail(ErrorCode::UnsupportedWavFormat, "short fmt chunk: " + path.string());
      wav.format = read_le<std::uint16_t>(in, path.string());
      wav.channels = read_le<std::uint16_t>(in, path.string());
      wav.sample_rate = read_le<std::uint32_t>(in, path.string());
      read_le<std::uint32_t>(in, path.string());  // byte rate
      read_le<std::uint16_t>(in, path.string());  // block align
      wav.bits_per_sample = read_le<std::uint16_t>(in, path.string());
      in.seekg(size - 16 + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      wav.payload.resize(size);
      if (size > 0 && !in.read(wav.payload.data(), size))
        fail(ErrorCode::UnsupportedWavFormat, "truncated data chunk: " + path.string());
      if (size & 1) in.seekg(1, std::ios::cur);
      have_data = true;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
    }
  }
  if (!have_fmt || !have_data)
    fail(ErrorCode::UnsupportedWavFormat, "missing fmt/data chunk: " + path.string());
  return wav;
}

// one Blackman-windowed sinc prototype per filter design
std::vector<double> design_lowpass(int total_taps, double cutoff, int up_factor) {
  std::vector<double> h(total_taps);
  const double center = 0.5 * (total_taps - 1);
  for (int i = 0; i < total_taps; ++i) {
    const double t = i - center;
    const double sinc = t == 0.0 ? 2.0 * cutoff
                                 : std::sin(2.0 * M_PI * cutoff * t) / (M_PI * t);
    const double w = 0.42 - 0.5 * std::cos(2.0 * M_PI * i / (total_taps - 1)) +
                     0.08 * std::cos(4.0 * M_PI * i / (total_taps - 1));
    h[i] = sinc * w * up_factor;
  }
  return h;
}

}  // namespace

std::vector<double> resample(const std::vector<double>& input, int src_rate, int dst_rate) {
  if (src_rate == dst_rate || input.empty()) return input;

  const long long g = std::gcd(src_rate, dst_rate);
  const long long up = dst_rate / g;    // L
  const long long down = src_rate / g;  // M

  constexpr int kTapsPerPhase = 64;
  const int total_taps = static_cast<int>(kTapsPerPhase * up);
  // cutoff at the lower of the two Nyquist frequencies, in units of the
  // upsampled rate
  const double cutoff = 0.5 / static_cast<double>(std::max(up, down));
  std::vector<double> h = design_lowpass(total_taps, cutoff, static_cast<int>(up));

  // normalize each phase to unit tap sum so DC passes at unit gain
  for (long long p = 0; p < up; ++p) {
    double s = 0.0;
    for (int j = p; j < total_taps; j += static_cast<int>(up)) s += h[j];
    if (s != 0.0)
      for (int j = p; j < total_taps; j += static_cast<int>(up)) h[j] /= s;
  }

  const long long in_len = static_cast<long long>(input.size());
  const long long out_len = (in_len * up + down / 2) / down;
  const long long center = total_taps / 2;

  std::vector<double> out(static_cast<std::size_t>(out_len));
  for (long long n = 0; n < out_len; ++n) {
    // position of this output sample on the up-sampled grid
    const long long u = n * down;
    double acc = 0.0;
    // x_up[u - i + center] is nonzero only where the index is a multiple of up
    const long long k_hi = (u + center) / up;
    for (long long k = k_hi; k >= 0; --k) {
      const long long tap = u + center - k * up;
      if (tap >= total_taps) break;
      if (k >= in_len) continue;
      acc += h[static_cast<std::size_t>(tap)] * input[static_cast<std::size_t>(k)];
    }
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

MonoSignal load_audio(const std::filesystem::path& path) {
  const WavData wav = parse_wav(path);

  if (wav.channels == 0 || wav.channels > 2)
    fail(ErrorCode::UnsupportedWavFormat,
         std::to_string(wav.channels) + " channels in " + path.string());
  const bool pcm16 = wav.format == kFormatPcm && wav.bits_per_sample == 16;
  const bool float32 = wav.format == kFormatFloat && wav.bits_per_sample == 32;
  if (!pcm16 && !float32)
    fail(ErrorCode::UnsupportedWavFormat,
         "format tag " + std::to_string(wav.format) + " at " +
             std::to_string(wav.bits_per_sample) + " bits in " + path.string());

  const std::size_t bytes_per_sample = pcm16 ? 2 : 4;
  const std::size_t stride = bytes_per_sample * wav.channels;
  const std::size_t n_frames = wav.payload.size() / stride;
  if (n_frames == 0) fail(ErrorCode::EmptyAudio, path.string());

  std::vector<double> mono(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (unsigned ch = 0; ch < wav.channels; ++ch) {
      const char* p = wav.payload.data() + i * stride + ch * bytes_per_sample;
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        acc += static_cast<double>(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        acc += static_cast<double>(v);
      }
    }
    mono[i] = acc / wav.channels;
  }

  MonoSignal signal;
  signal.sample_rate = kTargetSampleRate;
  signal.samples = resample(mono, static_cast<int>(wav.sample_rate), kTargetSampleRate);
  for (double& v : signal.samples) v = std::clamp(v, -1.0, 1.0);

  if (signal.samples.size() < static_cast<std::size_t>(kFrameLength)) {
    log::warn(path.string() + ": signal shorter than one frame, zero-padding to " +
              std::to_string(kFrameLength) + " samples");
    signal.samples.resize(kFrameLength, 0.0);
  }
  return signal;
}

}  // namespace mmrec
