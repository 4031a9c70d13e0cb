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


// Shared oracles and fixtures for the test binaries. Nothing here calls into
// the library's spectral code, so the oracles stay independent of it.

#ifndef VOWELPRINT_TESTS_SUPPORT_HPP_
#define VOWELPRINT_TESTS_SUPPORT_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "vowelprint/harmonics.hpp"
#include "vowelprint/signal_io.hpp"
#include "vowelprint/spectral.hpp"

namespace vptest {

inline constexpr double kPi = std::numbers::pi;

// O(n^2) DFT magnitudes for bins 0..n/2.
inline std::vector<double> naive_dft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce the phase index exactly before converting to an angle.
      const auto idx = static_cast<long double>((k * t) % n);
      const long double a = -2.0L * std::numbers::pi_v<long double> * idx / n;
      re += x[t] * std::cos(a);
      im += x[t] * std::sin(a);
    }
    out[k] = static_cast<double>(std::sqrt(re * re + im * im));
  }
  return out;
}

// Sum of sinusoids at k*f0 (k = 1..amps.size()) with optional phases.
inline std::vector<double> harmonic_series(double f0, const std::vector<double>& amps, int rate,
                                           std::size_t n,
                                           const std::vector<double>& phases = {}) {
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double f = (k + 1) * f0;
    if (f >= rate / 2.0 || amps[k] == 0.0) continue;
    const double ph = k < phases.size() ? phases[k] : 0.0;
    for (std::size_t t = 0; t < n; ++t) x[t] += amps[k] * std::sin(2 * kPi * f * t / rate + ph);
  }
  return x;
}

inline std::vector<double> normalized(std::vector<double> x, double peak = 0.9) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m > 0.0) {
    for (double& v : x) v *= peak / m;
  }
  return x;
}

// Spectrum of one analysis frame taken from the start of x.
inline vowelprint::FrameSpectrum frame_spectrum(const std::vector<double>& x, int rate,
                                                vowelprint::Window w = vowelprint::Window::kHann,
                                                std::size_t frame_length = 4096) {
  vowelprint::AudioBuffer b(normalized(x), rate);
  vowelprint::FrameConfig cfg{frame_length, frame_length, w};
  auto win = vowelprint::window_coefficients(w, frame_length);
  return vowelprint::spectrum(vowelprint::make_frame(b, cfg, 0, win));
}

inline vowelprint::SpectralPeak peak(double hz, double intensity) {
  return {hz, intensity, static_cast<std::size_t>(hz / 3.90625)};
}

inline vowelprint::FrameHarmonics harmonics(std::optional<double> low1, std::optional<double> low2,
                                            std::optional<double> up1, std::optional<double> up2,
                                            double i1 = 10.0, double i2 = 5.0) {
  vowelprint::FrameHarmonics h;
  h.voiced = true;
  if (low1) h.low1 = peak(*low1, i1);
  if (low2) h.low2 = peak(*low2, i2);
  if (up1) h.up1 = peak(*up1, i1);
  if (up2) h.up2 = peak(*up2, i2);
  return h;
}

}  // namespace vptest

#endif  // VOWELPRINT_TESTS_SUPPORT_HPP_
