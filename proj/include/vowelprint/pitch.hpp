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

#ifndef VOWELPRINT_PITCH_HPP_
#define VOWELPRINT_PITCH_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vowelprint/spectral.hpp"

namespace vowelprint {

struct PitchConfig {
  double f0_min = 70.0;
  double f0_max = 350.0;
  /// Minimum share of band energy carried by harmonic peaks for a voiced frame.
  double voicing_threshold = 0.5;
  /// Band over which the harmonic energy share is measured.
  double voicing_band_lo = 60.0;
  double voicing_band_hi = 2500.0;
  /// Harmonic-product terms.
  int hps_terms = 4;
  /// A sub-multiple of the product-spectrum winner replaces it when its product
  /// is at least this fraction of the winner's and it explains more energy.
  double subharmonic_ratio = 0.05;
  double subharmonic_energy_gain = 0.05;
  double superharmonic_tolerance = 0.01;
  /// Peaks weaker than this (dB below the F0 peak) count as missing harmonics.
  double harmonic_floor_db = 60.0;

  void validate() const;
};

struct PitchEstimate {
  std::optional<double> f0;  // present iff voiced
  double intensity = 0.0;    // magnitude of the F0 peak
  double harmonicity = 0.0;  // harmonic energy share in the voicing band
  bool voiced = false;

  friend bool operator==(const PitchEstimate&, const PitchEstimate&) = default;
};

/// Least-squares slope of y against x. Requires at least 2 points with
/// distinct x; returns nullopt otherwise.
std::optional<double> ols_slope(std::span<const double> x, std::span<const double> y);

/// Sequence statistics over voiced frames; absent when fewer than 2 are voiced.
struct PitchTrack {
  std::vector<PitchEstimate> estimates;
  std::optional<double> f0_mean;
  std::optional<double> f0_deviation;  // population standard deviation
  std::optional<double> f0_slope;      // Hz/s
  std::optional<double> intensity_slope;  // 1/s

  std::size_t voiced_count() const;
};

/// Harmonic-product-spectrum F0 with octave correction and a harmonic-energy
/// voicing decision. Throws Error(kBandNotCovered) if Nyquist < 2 * f0_max.
PitchEstimate estimate_pitch(const FrameSpectrum& spec, const PitchConfig& cfg);

/// Share of [band_lo, band_hi] energy held by the peaks nearest each multiple of
/// f0 (searched within +-f0/4, three bins per peak).
double harmonic_energy_ratio(const FrameSpectrum& spec, double f0, double band_lo,
                             double band_hi);

/// Log harmonic-product score of a candidate F0 (sum of log magnitudes of the
/// strongest bin near each of the first `terms` multiples).
double hps_log_score(const FrameSpectrum& spec, double f0, int terms, double floor = 1e-300);

PitchTrack track(std::vector<PitchEstimate> estimates, double hop_seconds);

/// Intensity of the peak nearest k * f0 (within +-f0/2) over the F0 intensity.
/// Zero when no peak above the harmonic floor exists there.
double harmonic_ratio(const FrameSpectrum& spec, const PitchEstimate& est, int k,
                      const PitchConfig& cfg = {});

}  // namespace vowelprint

#endif  // VOWELPRINT_PITCH_HPP_
