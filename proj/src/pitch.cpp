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

#include "vowelprint/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vowelprint/error.hpp"

namespace vowelprint {

namespace {

constexpr double kMagFloor = 1e-300;

double band_energy(const FrameSpectrum& spec, double lo, double hi) {
  double e = 0.0;
  const auto& m = spec.magnitudes;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double f = static_cast<double>(k) * spec.bin_hz;
    if (f >= lo && f <= hi) e += m[k] * m[k];
  }
  return e;
}

std::size_t clamp_bin(double b, std::size_t size) {
  if (b <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(b), size - 1);
}

// Strongest bin with centre in [lo_hz, hi_hz]; nullopt when none.
std::optional<std::size_t> strongest_bin(const FrameSpectrum& spec, double lo_hz, double hi_hz) {
  const auto& m = spec.magnitudes;
  const double lo = std::max(0.0, std::ceil(lo_hz / spec.bin_hz));
  const double hi = std::floor(hi_hz / spec.bin_hz);
  if (hi < lo || lo > static_cast<double>(m.size() - 1)) return std::nullopt;
  std::size_t best = static_cast<std::size_t>(lo);
  const std::size_t end = clamp_bin(hi, m.size());
  for (std::size_t k = best + 1; k <= end; ++k) {
    if (m[k] > m[best]) best = k;
  }
  return best;
}

}  // namespace

void PitchConfig::validate() const {
  if (!(f0_min > 0.0 && f0_min < f0_max)) {
    throw Error(ErrorCode::kInvalidConfig, "require 0 < f0_min < f0_max");
  }
  if (!(voicing_threshold >= 0.0 && voicing_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "voicing threshold outside [0, 1]");
  }
  if (!(voicing_band_lo >= 0.0 && voicing_band_lo < voicing_band_hi)) {
    throw Error(ErrorCode::kInvalidConfig, "invalid voicing band");
  }
  if (hps_terms < 1) throw Error(ErrorCode::kInvalidConfig, "hps_terms < 1");
}

double hps_log_score(const FrameSpectrum& spec, double f0, int terms, double floor) {
  const auto& m = spec.magnitudes;
  double score = 0.0;
  for (int h = 1; h <= terms; ++h) {
    // A one-bin uncertainty in f0 spreads to h bins at the h-th multiple.
    const double centre = h * f0 / spec.bin_hz;
    double lo = std::ceil(centre - 0.5 * h);
    double hi = std::floor(centre + 0.5 * h);
    if (hi < lo) lo = hi = std::round(centre);
    floor = std::max(floor, kMagFloor);
    if (lo > static_cast<double>(m.size() - 1)) {
      score += std::log(floor);
      continue;
    }
    double best = 0.0;
    for (std::size_t k = clamp_bin(lo, m.size()); k <= clamp_bin(hi, m.size()); ++k) {
      best = std::max(best, m[k]);
    }
    score += std::log(std::max(best, floor));
  }
  return score;
}

double harmonic_energy_ratio(const FrameSpectrum& spec, double f0, double band_lo,
                             double band_hi) {
  const double total = band_energy(spec, band_lo, band_hi);
  if (total <= 0.0 || f0 <= 0.0) return 0.0;
  const auto& m = spec.magnitudes;
  const double lo_bin = band_lo / spec.bin_hz;
  const double hi_bin = band_hi / spec.bin_hz;
  double harmonic = 0.0;
  std::size_t last_counted = 0;
  bool any = false;
  for (int k = 1; k * f0 - 0.25 * f0 <= band_hi; ++k) {
    const double c = k * f0;
    auto peak = strongest_bin(spec, std::max(band_lo, c - 0.25 * f0),
                              std::min(band_hi, c + 0.25 * f0));
    if (!peak) continue;
    const std::size_t from = *peak == 0 ? 0 : *peak - 1;
    const std::size_t to = std::min(*peak + 1, m.size() - 1);
    for (std::size_t b = from; b <= to; ++b) {
      const double bd = static_cast<double>(b);
      if (bd < lo_bin || bd > hi_bin) continue;
      if (any && b <= last_counted) continue;
      harmonic += m[b] * m[b];
      last_counted = b;
      any = true;
    }
  }
  return std::min(1.0, harmonic / total);
}

PitchEstimate estimate_pitch(const FrameSpectrum& spec, const PitchConfig& cfg) {
  cfg.validate();
  if (spec.nyquist() < 2.0 * cfg.f0_max) {
    throw Error(ErrorCode::kBandNotCovered,
                "Nyquist " + std::to_string(spec.nyquist()) + " Hz < 2 * f0_max");
  }
  PitchEstimate est;
  const double band_hi = std::min(cfg.voicing_band_hi, spec.nyquist());
  if (band_energy(spec, cfg.voicing_band_lo, band_hi) <= 0.0) return est;

  const auto& m = spec.magnitudes;
  const auto k_lo = static_cast<std::size_t>(std::ceil(cfg.f0_min / spec.bin_hz));
  const auto k_hi = static_cast<std::size_t>(std::floor(cfg.f0_max / spec.bin_hz));
  if (k_hi < k_lo || k_hi >= m.size()) return est;

  // Leakage far below the strongest component should not rank candidates.
  const double hps_floor = *std::max_element(m.begin(), m.end()) *
                           std::pow(10.0, -cfg.harmonic_floor_db / 20.0);
  std::vector<double> scores(k_hi - k_lo + 1);
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    scores[k - k_lo] = hps_log_score(spec, static_cast<double>(k) * spec.bin_hz, cfg.hps_terms, hps_floor);
  }
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
  double offset = 0.0;
  if (best > 0 && best + 1 < scores.size()) {
    const double a = scores[best - 1], b = scores[best], c = scores[best + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  double f0 = std::clamp((static_cast<double>(k_lo + best) + offset) * spec.bin_hz,
                         cfg.f0_min, cfg.f0_max);

  // Product spectra favour an octave above the fundamental when many harmonics
  // have similar weight. Step down while a sub-multiple both keeps a comparable
  // product and accounts for more of the band energy.
  double ratio = harmonic_energy_ratio(spec, f0, cfg.voicing_band_lo, band_hi);
  double snap_bins = 1.5;  // grows when a coarse estimate is multiplied up
  for (bool moved = true; moved;) {
    moved = false;
    const double score = hps_log_score(spec, f0, cfg.hps_terms, hps_floor);
    for (int d : {2, 3}) {
      const double cand = f0 / d;
      if (cand < cfg.f0_min) continue;
      const double cand_score = hps_log_score(spec, cand, cfg.hps_terms, hps_floor);
      const double cand_ratio = harmonic_energy_ratio(spec, cand, cfg.voicing_band_lo, band_hi);
      if (cand_score - score >= std::log(cfg.subharmonic_ratio) &&
          cand_ratio >= ratio + cfg.subharmonic_energy_gain) {
        f0 = cand;
        ratio = cand_ratio;
        snap_bins = std::max(1.5, snap_bins / d);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    // Sparse spectra: every sub-multiple of F0 explains the same peaks, so
    // climb to the highest multiple that loses next to no harmonic energy.
    for (int m : {2, 3}) {
      const double cand = f0 * m;
      if (cand > cfg.f0_max) continue;
      const double cand_ratio = harmonic_energy_ratio(spec, cand, cfg.voicing_band_lo, band_hi);
      if (cand_ratio >= ratio - cfg.superharmonic_tolerance) {
        f0 = cand;
        ratio = cand_ratio;
        snap_bins *= m;
        moved = true;
        break;
      }
    }
  }

  // Snap to the interpolated F0 peak when one sits close enough.
  auto near = pick_peaks(spec, std::max(0.0, f0 - 0.25 * f0), f0 + 0.25 * f0, 64);
  std::optional<SpectralPeak> f0_peak;
  for (const auto& p : near) {
    const double d = std::abs(p.frequency - f0);
    if (d <= snap_bins * spec.bin_hz && (!f0_peak || d < std::abs(f0_peak->frequency - f0))) {
      f0_peak = p;
    }
  }
  if (f0_peak) {
    f0 = std::clamp(f0_peak->frequency, cfg.f0_min, cfg.f0_max);
    est.intensity = f0_peak->intensity;
  } else {
    est.intensity = m[clamp_bin(std::round(f0 / spec.bin_hz), m.size())];
  }
  est.harmonicity = harmonic_energy_ratio(spec, f0, cfg.voicing_band_lo, band_hi);
  est.voiced = est.harmonicity > cfg.voicing_threshold;
  if (est.voiced) est.f0 = f0;
  return est;
}

std::optional<double> ols_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.begin() + n, 0.0) / n;
  const double my = std::accumulate(y.begin(), y.begin() + n, 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  return sxy / sxx;
}

std::size_t PitchTrack::voiced_count() const {
  return static_cast<std::size_t>(
      std::count_if(estimates.begin(), estimates.end(), [](const auto& e) { return e.voiced; }));
}

PitchTrack track(std::vector<PitchEstimate> estimates, double hop_seconds) {
  PitchTrack t;
  t.estimates = std::move(estimates);
  std::vector<double> times, f0s, intensities;
  for (std::size_t i = 0; i < t.estimates.size(); ++i) {
    const auto& e = t.estimates[i];
    if (!e.voiced || !e.f0) continue;
    times.push_back(static_cast<double>(i) * hop_seconds);
    f0s.push_back(*e.f0);
    intensities.push_back(e.intensity);
  }
  if (f0s.size() < 2) return t;
  const double n = static_cast<double>(f0s.size());
  const double mean = std::accumulate(f0s.begin(), f0s.end(), 0.0) / n;
  double var = 0.0;
  for (double f : f0s) var += (f - mean) * (f - mean);
  t.f0_mean = mean;
  t.f0_deviation = std::sqrt(var / n);
  t.f0_slope = ols_slope(times, f0s);
  t.intensity_slope = ols_slope(times, intensities);
  return t;
}

double harmonic_ratio(const FrameSpectrum& spec, const PitchEstimate& est, int k,
                      const PitchConfig& cfg) {
  if (!est.voiced || !est.f0) throw Error(ErrorCode::kUnvoiced, "harmonic ratio needs F0");
  if (k < 2) throw Error(ErrorCode::kInvalidConfig, "harmonic index must be >= 2");
  const double f0 = *est.f0;
  const double centre = k * f0;
  if (centre > spec.nyquist()) {
    throw Error(ErrorCode::kHarmonicAboveNyquist, std::to_string(centre) + " Hz");
  }
  if (est.intensity <= 0.0) return 0.0;
  const double floor = est.intensity * std::pow(10.0, -cfg.harmonic_floor_db / 20.0);
  auto peaks = pick_peaks(spec, std::max(0.0, centre - 0.5 * f0),
                          std::min(spec.nyquist(), centre + 0.5 * f0), 1024);
  std::optional<SpectralPeak> nearest;
  for (const auto& p : peaks) {
    if (p.intensity < floor) continue;
    if (!nearest || std::abs(p.frequency - centre) < std::abs(nearest->frequency - centre)) {
      nearest = p;
    }
  }
  return nearest ? nearest->intensity / est.intensity : 0.0;
}

}  // namespace vowelprint
