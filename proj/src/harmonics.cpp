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

#include "vowelprint/harmonics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "vowelprint/error.hpp"

namespace vowelprint {

void BandConfig::validate() const {
  if (!(lower.lo >= 0.0 && lower.lo < lower.hi && upper.lo < upper.hi)) {
    throw Error(ErrorCode::kInvalidConfig, "band edges must satisfy lo < hi");
  }
  if (lower.hi > upper.lo) {
    throw Error(ErrorCode::kInvalidConfig, "lower band must end at or below the upper band");
  }
}

void HarmonicsConfig::validate() const {
  if (!(gate_fraction > 0.0 && gate_fraction <= 0.5)) {
    throw Error(ErrorCode::kInvalidConfig, "gate fraction outside (0, 0.5]");
  }
  if (!(masking_db >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "negative masking depth");
}

namespace {

std::vector<SpectralPeak> band_harmonics(const FrameSpectrum& spec, const Band& band,
                                         double exclude_below, double f0,
                                         const HarmonicsConfig& cfg) {
  auto peaks = pick_peaks(spec, band.lo, band.hi, spec.magnitudes.size());
  std::vector<SpectralPeak> kept;
  std::map<long, bool> seen;  // one peak per harmonic number
  for (const auto& p : peaks) {
    if (p.frequency <= exclude_below) continue;
    const long k = std::lround(p.frequency / f0);
    if (k < 1 || std::abs(p.frequency - static_cast<double>(k) * f0) > cfg.gate_fraction * f0) {
      continue;
    }
    if (seen[k]) continue;
    seen[k] = true;
    kept.push_back(p);
  }
  if (!kept.empty()) {
    const double floor = kept.front().intensity * std::pow(10.0, -cfg.masking_db / 20.0);
    std::erase_if(kept, [floor](const SpectralPeak& p) { return p.intensity < floor; });
  }
  if (kept.size() > 2) kept.resize(2);
  return kept;
}

}  // namespace

FrameHarmonics extract_frame_harmonics(const FrameSpectrum& spec, const PitchEstimate& pitch,
                                       const BandConfig& bands, const HarmonicsConfig& cfg) {
  bands.validate();
  cfg.validate();
  if (spec.nyquist() < bands.upper.hi) {
    throw Error(ErrorCode::kBandNotCovered,
                "Nyquist " + std::to_string(spec.nyquist()) + " Hz below upper band edge");
  }
  FrameHarmonics fh;
  if (!pitch.voiced || !pitch.f0) return fh;
  fh.voiced = true;
  const double f0 = *pitch.f0;
  auto low = band_harmonics(spec, bands.lower, -1.0, f0, cfg);
  // A harmonic sitting exactly on a shared edge belongs to the lower band.
  auto up = band_harmonics(spec, bands.upper, bands.lower.hi >= bands.upper.lo ? bands.lower.hi : -1.0,
                           f0, cfg);
  if (!low.empty()) fh.low1 = low[0];
  if (low.size() > 1) fh.low2 = low[1];
  if (!up.empty()) fh.up1 = up[0];
  if (up.size() > 1) fh.up2 = up[1];
  return fh;
}

std::string_view trend_name(Trend t) {
  switch (t) {
    case Trend::kRising: return "rising";
    case Trend::kFalling: return "falling";
    case Trend::kFlat: return "flat";
    case Trend::kConvexUp: return "convex_up";
  }
  return "flat";
}

Trend parse_trend(std::string_view name) {
  for (Trend t : {Trend::kRising, Trend::kFalling, Trend::kFlat, Trend::kConvexUp}) {
    if (trend_name(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown trend '" + std::string(name) + "'");
}

namespace {

// Solves the 3x3 system in place by Gaussian elimination with partial pivoting.
std::optional<std::array<double, 3>> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int c = 0; c < 3; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    }
    if (std::abs(m[pivot][c]) < 1e-300) return std::nullopt;
    std::swap(m[c], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return std::array<double, 3>{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

std::optional<TrendFit> fit_trend(std::span<const double> times, std::span<const double> values,
                                  const TrendConfig& cfg) {
  const std::size_t n = std::min(times.size(), values.size());
  if (n < 3) return std::nullopt;
  const double tm = std::accumulate(times.begin(), times.begin() + n, 0.0) / n;
  const double ym = std::accumulate(values.begin(), values.begin() + n, 0.0) / n;
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = times[i] - tm;

  double suu = 0.0, suy = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += u[i] * u[i];
    suy += u[i] * (values[i] - ym);
    sst += (values[i] - ym) * (values[i] - ym);
  }
  if (suu <= 0.0) return std::nullopt;
  TrendFit fit;
  fit.slope = suy / suu;
  double rss_lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = values[i] - (ym + fit.slope * u[i]);
    rss_lin += r * r;
  }

  // y = a u^2 + b u + c
  double s[5] = {0, 0, 0, 0, 0}, t[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * values[i];
      p *= u[i];
    }
  }
  auto coef = solve3({{{s[4], s[3], s[2], t[2]}, {s[3], s[2], s[1], t[1]}, {s[2], s[1], s[0], t[0]}}});
  double rss_quad = rss_lin;
  if (coef) {
    fit.curvature = (*coef)[0];
    rss_quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = values[i] - ((*coef)[0] * u[i] * u[i] + (*coef)[1] * u[i] + (*coef)[2]);
      rss_quad += r * r;
    }
  }
  // A line that already explains everything leaves nothing to improve on.
  if (rss_lin > 1e-12 * (sst + 1e-300)) {
    fit.improvement = std::max(0.0, (rss_lin - rss_quad) / rss_lin);
  }

  if (fit.curvature < -cfg.curvature_threshold && fit.improvement >= cfg.min_improvement) {
    fit.trend = Trend::kConvexUp;
  } else if (fit.slope > cfg.slope_threshold) {
    fit.trend = Trend::kRising;
  } else if (fit.slope < -cfg.slope_threshold) {
    fit.trend = Trend::kFalling;
  } else {
    fit.trend = Trend::kFlat;
  }
  return fit;
}

BandTrack band_track(std::vector<FrameHarmonics> frames, double hop_seconds,
                     const TrendConfig& cfg) {
  BandTrack bt;
  bt.frames = std::move(frames);
  bt.hop_seconds = hop_seconds;
  std::vector<double> times, up1;
  for (std::size_t i = 0; i < bt.frames.size(); ++i) {
    const auto& f = bt.frames[i];
    if (!f.voiced || !f.up1) continue;
    times.push_back(static_cast<double>(i) * hop_seconds);
    up1.push_back(f.up1->frequency);
  }
  if (!up1.empty()) {
    bt.up1_mean = std::accumulate(up1.begin(), up1.end(), 0.0) / static_cast<double>(up1.size());
  }
  if (auto fit = fit_trend(times, up1, cfg)) {
    bt.trend_up1 = fit->trend;
    bt.up1_slope = fit->slope;
    bt.up1_curvature = fit->curvature;
    bt.trend_strength = fit->trend == Trend::kConvexUp ? fit->curvature : fit->slope;
  }
  return bt;
}

std::vector<std::size_t> dynamics_boundaries(std::span<const FrameHarmonics> h, std::size_t begin,
                                             std::size_t end, const SegmentParams& params,
                                             std::span<const PitchEstimate> pitch) {
  std::vector<std::size_t> out;
  const std::size_t need = std::max<std::size_t>(1, params.jump_frames);
  auto value = [&](std::size_t i, bool low) -> std::optional<double> {
    const auto& p = low ? h[i].low1 : h[i].up1;
    if (!h[i].voiced || !p) return std::nullopt;
    return p->frequency;
  };
  auto jumps_at = [&](std::size_t i, bool low) {
    auto ref = value(i - 1, low);
    if (!ref) return false;
    // A moving formant hops between neighbouring harmonics; that is not a jump.
    double limit = params.jump_threshold;
    if (i - 1 < pitch.size() && pitch[i - 1].f0) {
      limit = std::max(limit, params.harmonic_steps * *pitch[i - 1].f0);
    }
    // The level left behind must be steady too, so a one-frame outlier and
    // its return are not read as two jumps.
    if (i >= begin + 2) {
      auto before = value(i - 2, low);
      if (before && std::abs(*before - *ref) > limit) return false;
    }
    for (std::size_t j = i; j < i + need; ++j) {
      auto v = value(j, low);
      if (!v || std::abs(*v - *ref) <= limit) return false;
    }
    return true;
  };
  for (std::size_t i = begin + 1; i + need <= end; ++i) {
    if (jumps_at(i, true) || jumps_at(i, false)) out.push_back(i);
  }
  return out;
}

std::vector<Segment> segment(const PitchTrack& pitch_track,
                             std::span<const FrameHarmonics> harmonics,
                             const SegmentParams& params) {
  const auto& est = pitch_track.estimates;
  if (est.size() != harmonics.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(est.size()) + " pitch estimates vs " +
                                                std::to_string(harmonics.size()) + " frames");
  }
  std::vector<Segment> segs;
  const std::size_t n = est.size();
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && est[end].voiced == est[start].voiced) ++end;
    if (!est[start].voiced) {
      segs.push_back({start, end, false, false});
    } else {
      std::size_t s = start;
      for (std::size_t b : dynamics_boundaries(harmonics, start, end, params, est)) {
        segs.push_back({s, b, true, s != start});
        s = b;
      }
      segs.push_back({s, end, true, s != start});
    }
    start = end;
  }

  // Fold short segments into their predecessor (the first one into its successor).
  for (bool changed = true; changed && segs.size() > 1;) {
    changed = false;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (segs[i].length() >= params.min_segment_frames) continue;
      if (i == 0) {
        segs[1].start_frame = segs[0].start_frame;
        segs[1].dynamics_split = false;
        segs.erase(segs.begin());
      } else {
        segs[i - 1].end_frame = segs[i].end_frame;
        segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(i));
      }
      changed = true;
      break;
    }
  }
  // Neighbours left with equal voicing merge unless a formant jump separates them.
  std::vector<Segment> out;
  for (const auto& s : segs) {
    if (!out.empty() && out.back().voiced == s.voiced && !s.dynamics_split) {
      out.back().end_frame = s.end_frame;
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace vowelprint
