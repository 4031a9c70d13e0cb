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

#ifndef VOWELPRINT_SPECTRAL_HPP_
#define VOWELPRINT_SPECTRAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "vowelprint/signal_io.hpp"

namespace vowelprint {

/// One-sided magnitude spectrum of a frame: frame_length/2 + 1 bins.
struct FrameSpectrum {
  std::vector<double> magnitudes;
  double bin_hz = 0.0;
  std::size_t frame_index = 0;
  std::size_t frame_length = 0;

  double nyquist() const { return bin_hz * static_cast<double>(frame_length) / 2.0; }
};

/// A spectral component that dominates its immediate neighbours.
struct SpectralPeak {
  double frequency = 0.0;  // Hz, parabolic-interpolated
  double intensity = 0.0;  // linear magnitude at the interpolated vertex
  std::size_t bin = 0;

  friend bool operator==(const SpectralPeak&, const SpectralPeak&) = default;
};

/// |DFT| of the (already windowed) samples. Backed by FFTW; plans are cached
/// per length and shared between threads.
std::vector<double> magnitude_spectrum(std::span<const double> samples);

FrameSpectrum spectrum(const Frame& frame);

/// Local maxima of `spec` whose interpolated frequency lies in [band_lo, band_hi],
/// strongest first (ties: lower frequency first), at most `max_peaks`.
///
/// An empty result is the "empty band" outcome: no bin in the band is strictly
/// greater than both of its neighbours. Throws Error(kInvalidConfig) when the
/// band is not inside [0, Nyquist].
std::vector<SpectralPeak> pick_peaks(const FrameSpectrum& spec, double band_lo, double band_hi,
                                     std::size_t max_peaks);

/// Parabolic vertex through log-magnitudes at bins k-1, k, k+1. Requires
/// 0 < k < size-1. Offset is in bins, |offset| <= 0.5 for a local maximum.
struct Vertex {
  double offset = 0.0;
  double magnitude = 0.0;
};
Vertex parabolic_vertex(std::span<const double> magnitudes, std::size_t k);

}  // namespace vowelprint

#endif  // VOWELPRINT_SPECTRAL_HPP_
