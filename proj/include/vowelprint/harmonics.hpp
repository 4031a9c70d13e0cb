// Copyright 2026 The vowelprint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOWELPRINT_HARMONICS_HPP_
#define VOWELPRINT_HARMONICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vowelprint/pitch.hpp"
#include "vowelprint/spectral.hpp"

namespace vowelprint {

struct Band {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double f) const { return f >= lo && f <= hi; }
  double mid() const { return 0.5 * (lo + hi); }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Lower (first formant) and upper (second formant) search bands.
struct BandConfig {
  Band lower{60.0, 750.0};
  Band upper{750.0, 2500.0};

  void validate() const;
  friend bool operator==(const BandConfig&, const BandConfig&) = default;
};

struct HarmonicsConfig {
  /// Peaks farther than this fraction of F0 from every multiple of F0 are
  /// rejected as non-harmonic.
  double gate_fraction = 0.25;
  /// Peaks more than this many dB below the strongest harmonic of their band
  /// are masked.
  double masking_db = 20.0;

  void validate() const;
};

/// Voicing flag plus the two most intense harmonics of each band.
struct FrameHarmonics {
  bool voiced = false;
  std::optional<SpectralPeak> low1, low2;
  std::optional<SpectralPeak> up1, up2;

  friend bool operator==(const FrameHarmonics&, const FrameHarmonics&) = default;
};

FrameHarmonics extract_frame_harmonics(const FrameSpectrum& spec, const PitchEstimate& pitch,
                                       const BandConfig& bands,
                                       const HarmonicsConfig& cfg = {});

enum class Trend { kRising, kFalling, kFlat, kConvexUp };

std::string_view trend_name(Trend t);
Trend parse_trend(std::string_view name);

struct TrendConfig {
  double slope_threshold = 100.0;     // Hz/s
  double curvature_threshold = 100.0;  // Hz/s^2
  /// Relative residual reduction the quadratic fit must achieve over the line.
  double min_improvement = 0.2;
};

struct TrendFit {
  Trend trend = Trend::kFlat;
  double slope = 0.0;      // linear fit, Hz/s
  double curvature = 0.0;  // quadratic coefficient over centred time, Hz/s^2
  double improvement = 0.0;
};

/// Classifies (time, value) samples. nullopt with fewer than 3 points.
std::optional<TrendFit> fit_trend(std::span<const double> times, std::span<const double> values,
                                  const TrendConfig& cfg = {});

struct BandTrack {
  std::vector<FrameHarmonics> frames;
  double hop_seconds = 0.0;
  std::optional<Trend> trend_up1;
  std::optional<double> trend_strength;  // slope (Hz/s) or curvature (Hz/s^2) for convex_up
  std::optional<double> up1_slope;
  std::optional<double> up1_curvature;
  std::optional<double> up1_mean;
};

/// Trend of the up1 frequency over voiced frames.
BandTrack band_track(std::vector<FrameHarmonics> frames, double hop_seconds,
                     const TrendConfig& cfg = {});

struct Segment {
  std::size_t start_frame = 0;  // inclusive
  std::size_t end_frame = 0;    // exclusive
  bool voiced = false;
  bool dynamics_split = false;  // starts at a formant jump rather than a voicing change

  std::size_t length() const { return end_frame - start_frame; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentParams {
  double jump_threshold = 200.0;  // Hz
  std::size_t jump_frames = 2;
  double harmonic_steps = 1.5;  // jumps must also exceed this many F0 spacings
  std::size_t min_segment_frames = 3;
};

/// Frames where a formant jump starts inside a voiced run: low1 or up1 moves by
/// more than jump_threshold and stays away for jump_frames frames.
std::vector<std::size_t> dynamics_boundaries(std::span<const FrameHarmonics> harmonics,
                                             std::size_t begin, std::size_t end,
                                             const SegmentParams& params,
                                             std::span<const PitchEstimate> pitch = {});

/// Splits at voicing changes, then at formant jumps inside voiced runs; short
/// segments fold into their predecessor. Throws Error(kLengthMismatch).
std::vector<Segment> segment(const PitchTrack& pitch_track,
                             std::span<const FrameHarmonics> harmonics,
                             const SegmentParams& params = {});

}  // namespace vowelprint

#endif  // VOWELPRINT_HARMONICS_HPP_
