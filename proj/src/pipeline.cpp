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

#include "vowelprint/pipeline.hpp"

#include <exception>
#include <string>

#include "vowelprint/error.hpp"
#include "vowelprint/spectral.hpp"

namespace vowelprint {

void AnalysisConfig::validate(int sample_rate) const {
  frame.validate(sample_rate);
  pitch.validate();
  bands.validate();
  harmonics.validate();
  if (!(classifier.accept_threshold >= 0.0 && classifier.accept_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "accept threshold outside [0, 1]");
  }
  if (!(segmentation.jump_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "jump threshold must be positive");
  }
  if (!(trend.slope_threshold >= 0.0 && trend.curvature_threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "trend thresholds must be non-negative");
  }
  const double nyquist = sample_rate / 2.0;
  if (nyquist < bands.upper.hi || nyquist < 2.0 * pitch.f0_max) {
    throw Error(ErrorCode::kBandNotCovered,
                "sample rate " + std::to_string(sample_rate) + " cannot cover the analysis bands");
  }
}

FrameAnalysis analyze_frame(const AudioBuffer& buffer, const AnalysisConfig& cfg,
                            std::size_t index, std::span<const double> window) {
  const Frame frame = make_frame(buffer, cfg.frame, index, window);
  const FrameSpectrum spec = spectrum(frame);
  FrameAnalysis out;
  out.index = index;
  out.time = frame.start_time;
  out.pitch = estimate_pitch(spec, cfg.pitch);
  out.harmonics = extract_frame_harmonics(spec, out.pitch, cfg.bands, cfg.harmonics);
  return out;
}

namespace {

std::size_t checked_count(const AudioBuffer& buffer, const AnalysisConfig& cfg) {
  cfg.validate(buffer.sample_rate());
  if (buffer.size() < cfg.frame.frame_length) {
    throw Error(ErrorCode::kBufferTooShort,
                std::to_string(buffer.size()) + " samples < frame length " +
                    std::to_string(cfg.frame.frame_length));
  }
  return frame_count(buffer.size(), cfg.frame);
}

}  // namespace

std::vector<FrameAnalysis> analyze_frames_serial(const AudioBuffer& buffer,
                                                 const AnalysisConfig& cfg) {
  const std::size_t n = checked_count(buffer, cfg);
  const auto window = window_coefficients(cfg.frame.window, cfg.frame.frame_length);
  std::vector<FrameAnalysis> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(analyze_frame(buffer, cfg, i, window));
  return out;
}

std::vector<FrameAnalysis> analyze_frames(const AudioBuffer& buffer, const AnalysisConfig& cfg) {
  const std::size_t n = checked_count(buffer, cfg);
  const auto window = window_coefficients(cfg.frame.window, cfg.frame.frame_length);
  std::vector<FrameAnalysis> out(n);
  // Exceptions must not cross the parallel region.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      out[i] = analyze_frame(buffer, cfg, i, window);
    } catch (...) {
#pragma omp critical(vowelprint_frame_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Analysis assemble(std::vector<FrameAnalysis> frames, int sample_rate, std::size_t sample_count,
                  const AnalysisConfig& cfg, const std::vector<VowelTemplate>& templates) {
  Analysis a;
  a.config = cfg;
  a.sample_rate = sample_rate;
  a.sample_count = sample_count;
  a.frames = std::move(frames);
  const double hop = cfg.hop_seconds(sample_rate);
  const double frame_seconds = static_cast<double>(cfg.frame.frame_length) / sample_rate;

  std::vector<PitchEstimate> estimates;
  std::vector<FrameHarmonics> harmonics;
  for (const auto& f : a.frames) {
    estimates.push_back(f.pitch);
    harmonics.push_back(f.harmonics);
  }
  a.pitch = track(estimates, hop);

  for (const Segment& s : segment(a.pitch, harmonics, cfg.segmentation)) {
    SegmentAnalysis sa;
    sa.segment = s;
    sa.start_time = a.frames[s.start_frame].time;
    sa.end_time = a.frames[s.end_frame - 1].time + frame_seconds;
    sa.pitch = track({estimates.begin() + static_cast<std::ptrdiff_t>(s.start_frame),
                      estimates.begin() + static_cast<std::ptrdiff_t>(s.end_frame)},
                     hop);
    sa.track = band_track({harmonics.begin() + static_cast<std::ptrdiff_t>(s.start_frame),
                           harmonics.begin() + static_cast<std::ptrdiff_t>(s.end_frame)},
                          hop, cfg.trend);
    if (s.voiced) {
      try {
        sa.classification = classify_segment(sa.track, templates, cfg.classifier);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoVoicedFrames) throw;
      }
    }
    a.segments.push_back(std::move(sa));
  }
  return a;
}

Analysis analyze(const AudioBuffer& buffer, const AnalysisConfig& cfg,
                 const std::vector<VowelTemplate>& templates) {
  return assemble(analyze_frames(buffer, cfg), buffer.sample_rate(), buffer.size(), cfg,
                  templates);
}

BandTrack whole_track(const Analysis& analysis) {
  std::vector<FrameHarmonics> h;
  h.reserve(analysis.frames.size());
  for (const auto& f : analysis.frames) h.push_back(f.harmonics);
  return band_track(std::move(h), analysis.config.hop_seconds(analysis.sample_rate),
                    analysis.config.trend);
}

const SegmentAnalysis* longest_voiced(const Analysis& analysis) {
  const SegmentAnalysis* best = nullptr;
  for (const auto& s : analysis.segments) {
    if (s.segment.voiced && (!best || s.segment.length() > best->segment.length())) best = &s;
  }
  return best;
}

}  // namespace vowelprint
