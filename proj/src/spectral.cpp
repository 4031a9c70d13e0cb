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

#include "vowelprint/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <string>

#include "vowelprint/error.hpp"

namespace vowelprint {

namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is.
class PlanCache {
 public:
  fftw_plan get(std::size_t n) {
    std::lock_guard lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> in(n);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                       reinterpret_cast<fftw_complex*>(out.data()),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

constexpr double kLogFloor = 1e-300;

}  // namespace

std::vector<double> magnitude_spectrum(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plan_cache().get(n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> mags(out.size());
  std::transform(out.begin(), out.end(), mags.begin(),
                 [](const std::complex<double>& c) { return std::abs(c); });
  return mags;
}

FrameSpectrum spectrum(const Frame& frame) {
  FrameSpectrum s;
  s.frame_index = frame.index;
  s.frame_length = frame.samples.size();
  s.bin_hz = s.frame_length ? static_cast<double>(frame.sample_rate) /
                                  static_cast<double>(s.frame_length)
                            : 0.0;
  s.magnitudes = magnitude_spectrum(frame.samples);
  return s;
}

Vertex parabolic_vertex(std::span<const double> m, std::size_t k) {
  const double a = std::log(std::max(m[k - 1], kLogFloor));
  const double b = std::log(std::max(m[k], kLogFloor));
  const double c = std::log(std::max(m[k + 1], kLogFloor));
  const double denom = a - 2.0 * b + c;
  if (denom >= 0.0) return {0.0, m[k]};
  const double p = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  return {p, std::exp(b - 0.25 * (a - c) * p)};
}

std::vector<SpectralPeak> pick_peaks(const FrameSpectrum& spec, double band_lo, double band_hi,
                                     std::size_t max_peaks) {
  if (!(band_lo >= 0.0 && band_lo < band_hi && band_hi <= spec.nyquist() + 1e-9)) {
    throw Error(ErrorCode::kInvalidConfig,
                "band [" + std::to_string(band_lo) + ", " + std::to_string(band_hi) +
                    "] outside [0, Nyquist]");
  }
  const auto& m = spec.magnitudes;
  std::vector<SpectralPeak> peaks;
  if (m.size() < 3 || max_peaks == 0) return peaks;

  // Candidate bins: any bin whose interpolated frequency can land in the band.
  const auto first = static_cast<std::size_t>(
      std::max(1.0, std::floor(band_lo / spec.bin_hz - 1.0)));
  const auto last = static_cast<std::size_t>(
      std::min(static_cast<double>(m.size() - 2), std::ceil(band_hi / spec.bin_hz + 1.0)));
  for (std::size_t k = first; k <= last; ++k) {
    if (!(m[k] > m[k - 1] && m[k] > m[k + 1])) continue;
    const Vertex v = parabolic_vertex(m, k);
    const double freq = (static_cast<double>(k) + v.offset) * spec.bin_hz;
    if (freq < band_lo || freq > band_hi) continue;
    peaks.push_back({freq, v.magnitude, k});
  }
  std::sort(peaks.begin(), peaks.end(), [](const SpectralPeak& x, const SpectralPeak& y) {
    if (x.intensity != y.intensity) return x.intensity > y.intensity;
    return x.frequency < y.frequency;
  });
  if (peaks.size() > max_peaks) peaks.resize(max_peaks);
  return peaks;
}

}  // namespace vowelprint
