#include "mmrec/audio_features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mmrec/errors.hpp"
#include "mmrec/log.hpp"

namespace mmrec {

namespace {

constexpr double kLogFloor = 1e-10;

// iterative radix-2 FFT; frame lengths are powers of two by construction
void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> t = w * a[i + k + len / 2];
        a[i + k] = u + t;
        a[i + k + len / 2] = u - t;
        w *= wl;
      }
    }
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// triangular filterbank, rows = filters, cols = spectrum bins
const Eigen::MatrixXd& mel_filterbank() {
  static const Eigen::MatrixXd bank = [] {
    Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(kNumMelFilters, kSpectrumBins);
    const double nyquist = kTargetSampleRate / 2.0;
    const double mel_max = hz_to_mel(nyquist);
    std::vector<double> edges(kNumMelFilters + 2);
    for (int i = 0; i < kNumMelFilters + 2; ++i)
      edges[i] = mel_to_hz(mel_max * i / (kNumMelFilters + 1));
    const double bin_hz = static_cast<double>(kTargetSampleRate) / kFrameLength;
    for (int m = 0; m < kNumMelFilters; ++m) {
      const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
      const double area_norm = 2.0 / (hi - lo);
      for (int b = 0; b < kSpectrumBins; ++b) {
        const double f = b * bin_hz;
        double w = 0.0;
        if (f >= lo && f <= mid && mid > lo)
          w = (f - lo) / (mid - lo);
        else if (f > mid && f <= hi && hi > mid)
          w = (hi - f) / (hi - mid);
        fb(m, b) = w * area_norm;
      }
    }
    return fb;
  }();
  return bank;
}

}  // namespace

std::vector<std::vector<double>> frame_signal(const std::vector<double>& samples,
                                              int frame_length, int hop) {
  const std::size_t len = samples.size();
  const std::size_t pad = static_cast<std::size_t>(frame_length) / 2;

  // reflection indexing without duplicating the edge sample
  auto sample_at = [&](std::ptrdiff_t idx) -> double {
    if (len == 1) return samples[0];
    const std::ptrdiff_t period = 2 * (static_cast<std::ptrdiff_t>(len) - 1);
    std::ptrdiff_t k = idx % period;
    if (k < 0) k += period;
    if (k >= static_cast<std::ptrdiff_t>(len)) k = period - k;
    return samples[static_cast<std::size_t>(k)];
  };

  const std::size_t count = 1 + len / static_cast<std::size_t>(hop);
  std::vector<std::vector<double>> frames(count, std::vector<double>(frame_length));
  for (std::size_t i = 0; i < count; ++i) {
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(i * hop) -
                                 static_cast<std::ptrdiff_t>(pad);
    for (int j = 0; j < frame_length; ++j)
      frames[i][static_cast<std::size_t>(j)] = sample_at(start + j);
  }
  return frames;
}

std::vector<double> power_spectrum(const std::vector<double>& frame) {
  const std::size_t n = frame.size();
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / n);
    buf[i] = frame[i] * w;
  }
  fft_inplace(buf);
  std::vector<double> spectrum(n / 2 + 1);
  for (std::size_t b = 0; b <= n / 2; ++b) spectrum[b] = std::norm(buf[b]);
  return spectrum;
}

std::vector<double> mfcc(const std::vector<double>& spectrum) {
  const Eigen::MatrixXd& bank = mel_filterbank();
  Eigen::Map<const Eigen::VectorXd> s(spectrum.data(),
                                      static_cast<Eigen::Index>(spectrum.size()));
  Eigen::VectorXd mel = bank * s;

  Eigen::VectorXd log_mel(kNumMelFilters);
  for (int m = 0; m < kNumMelFilters; ++m)
    log_mel[m] = 10.0 * std::log10(std::max(mel[m], kLogFloor));

  // orthonormal DCT-II, coefficients 0..12
  std::vector<double> coeffs(kNumMfcc);
  const double n = kNumMelFilters;
  for (int k = 0; k < kNumMfcc; ++k) {
    double acc = 0.0;
    for (int j = 0; j < kNumMelFilters; ++j)
      acc += log_mel[j] * std::cos(M_PI * (j + 0.5) * k / n);
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    coeffs[static_cast<std::size_t>(k)] = acc * scale;
  }
  return coeffs;
}

double spectral_centroid(const std::vector<double>& spectrum) {
  const double bin_hz = static_cast<double>(kTargetSampleRate) / kFrameLength;
  double total = 0.0, weighted = 0.0;
  for (std::size_t b = 0; b < spectrum.size(); ++b) {
    total += spectrum[b];
    weighted += spectrum[b] * (static_cast<double>(b) * bin_hz);
  }
  if (total < 1e-12) return 0.0;
  return weighted / total;
}

double zero_crossing_rate(const std::vector<double>& frame) {
  if (frame.size() < 2) return 0.0;
  std::size_t crossings = 0;
  for (std::size_t i = 1; i < frame.size(); ++i) {
    const bool a = frame[i - 1] >= 0.0;
    const bool b = frame[i] >= 0.0;
    if (a != b) ++crossings;
  }
  return static_cast<double>(crossings) / static_cast<double>(frame.size() - 1);
}

double spectral_flatness(const std::vector<double>& spectrum) {
  double log_sum = 0.0, sum = 0.0;
  for (double v : spectrum) {
    const double f = std::max(v, kLogFloor);
    log_sum += std::log(f);
    sum += f;
  }
  const double n = static_cast<double>(spectrum.size());
  const double geometric = std::exp(log_sum / n);
  const double arithmetic = sum / n;
  return geometric / arithmetic;
}

double rms(const std::vector<double>& frame) {
  double acc = 0.0;
  for (double v : frame) acc += v * v;
  return std::sqrt(acc / static_cast<double>(frame.size()));
}

FrameFeatureMatrix extract_features(const MonoSignal& signal) {
  const auto frames = frame_signal(signal.samples);
  FrameFeatureMatrix out;
  out.programme_id = signal.programme_id;
  out.features.resize(static_cast<Eigen::Index>(frames.size()), kNumFeatures);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto spectrum = power_spectrum(frames[i]);
    const auto cepstral = mfcc(spectrum);
    const Eigen::Index r = static_cast<Eigen::Index>(i);
    for (int c = 0; c < kNumMfcc; ++c) out.features(r, c) = cepstral[static_cast<std::size_t>(c)];
    out.features(r, kNumMfcc + 0) = spectral_centroid(spectrum);
    out.features(r, kNumMfcc + 1) = zero_crossing_rate(frames[i]);
    out.features(r, kNumMfcc + 2) = spectral_flatness(spectrum);
    out.features(r, kNumMfcc + 3) = rms(frames[i]);
  }
  return out;
}

NormalizationStats fit_normalization(const Eigen::MatrixXd& all_frames) {
  if (all_frames.rows() < 2)
    fail(ErrorCode::InsufficientFrames,
         "need >= 2 frames to fit normalization, got " + std::to_string(all_frames.rows()));
  NormalizationStats stats;
  stats.mean = all_frames.colwise().mean();
  const Eigen::MatrixXd centered = all_frames.rowwise() - stats.mean.transpose();
  // population standard deviation
  stats.stddev = (centered.array().square().colwise().mean()).sqrt();
  for (Eigen::Index c = 0; c < stats.stddev.size(); ++c) {
    if (stats.stddev[c] <= 0.0) {
      stats.zero_variance_columns.push_back(static_cast<int>(c));
      stats.stddev[c] = 1.0;
    }
  }
  if (!stats.zero_variance_columns.empty())
    log::warn(std::to_string(stats.zero_variance_columns.size()) +
              " zero-variance feature column(s); std left at 1");
  return stats;
}

Eigen::MatrixXd apply_normalization(const Eigen::MatrixXd& frames,
                                    const NormalizationStats& stats) {
  Eigen::MatrixXd out = frames.rowwise() - stats.mean.transpose();
  out.array().rowwise() /= stats.stddev.transpose().array();
  return out;
}

Eigen::VectorXd pooled_feature_vector(const FrameFeatureMatrix& features) {
  const Eigen::MatrixXd& f = features.features;
  Eigen::VectorXd mean = f.colwise().mean();
  const Eigen::MatrixXd centered = f.rowwise() - mean.transpose();
  Eigen::VectorXd stddev = (centered.array().square().colwise().mean()).sqrt();
  Eigen::VectorXd pooled(2 * kNumFeatures);
  pooled << mean, stddev;
  return pooled;
}

}  // namespace mmrec
