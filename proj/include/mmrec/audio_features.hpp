#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "mmrec/audio_io.hpp"

namespace mmrec {

inline constexpr int kNumMfcc = 13;
inline constexpr int kNumMelFilters = 128;
inline constexpr int kNumFeatures = 17;  // 13 MFCC + centroid + ZCR + flatness + RMS
inline constexpr int kSpectrumBins = kFrameLength / 2 + 1;

// Per-frame acoustic features; rows = frames, 17 columns in the order
// [mfcc 0..12, spectral centroid Hz, ZCR, spectral flatness, RMS].
struct FrameFeatureMatrix {
  std::string programme_id;
  Eigen::MatrixXd features;
};

// Centered framing: the signal is reflection-padded by frame_length/2 on both
// ends; frame i covers padded samples [i*hop, i*hop + frame_length).
// Frame count is 1 + floor(len / hop).
std::vector<std::vector<double>> frame_signal(const std::vector<double>& samples,
                                              int frame_length = kFrameLength,
                                              int hop = kHopLength);

// Hann-windowed squared-magnitude spectrum, bins 0..frame_length/2.
std::vector<double> power_spectrum(const std::vector<double>& frame);

// 128-filter HTK-mel triangular bank (area-normalized), dB via 10*log10 with
// a 1e-10 floor, orthonormal DCT-II, coefficients 0..12.
std::vector<double> mfcc(const std::vector<double>& spectrum);

double spectral_centroid(const std::vector<double>& spectrum);
double zero_crossing_rate(const std::vector<double>& frame);
double spectral_flatness(const std::vector<double>& spectrum);
double rms(const std::vector<double>& frame);

FrameFeatureMatrix extract_features(const MonoSignal& signal);

// Per-column z-score statistics over the pooled training frames. Zero-variance
// columns keep std 1 and are flagged.
struct NormalizationStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;
  std::vector<int> zero_variance_columns;
};

NormalizationStats fit_normalization(const Eigen::MatrixXd& all_frames);

Eigen::MatrixXd apply_normalization(const Eigen::MatrixXd& frames,
                                    const NormalizationStats& stats);

// Mean+std pooling over frames (17 + 17 columns); the flag-gated alternative
// audio representation.
Eigen::VectorXd pooled_feature_vector(const FrameFeatureMatrix& features);

}  // namespace mmrec
