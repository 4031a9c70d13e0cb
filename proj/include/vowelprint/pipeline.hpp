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

#ifndef VOWELPRINT_PIPELINE_HPP_
#define VOWELPRINT_PIPELINE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "vowelprint/classifier.hpp"
#include "vowelprint/harmonics.hpp"
#include "vowelprint/pitch.hpp"
#include "vowelprint/signal_io.hpp"

namespace vowelprint {

struct AnalysisConfig {
  FrameConfig frame;
  PitchConfig pitch;
  BandConfig bands;
  HarmonicsConfig harmonics;
  TrendConfig trend;
  SegmentParams segmentation;
  ClassifierConfig classifier;

  void validate(int sample_rate) const;
  double hop_seconds(int sample_rate) const {
    return static_cast<double>(frame.hop_length) / sample_rate;
  }
};

/// Per-frame results of the spectral stages.
struct FrameAnalysis {
  std::size_t index = 0;
  double time = 0.0;
  PitchEstimate pitch;
  FrameHarmonics harmonics;

  friend bool operator==(const FrameAnalysis&, const FrameAnalysis&) = default;
};

/// window -> spectrum -> pitch -> harmonics for one frame.
FrameAnalysis analyze_frame(const AudioBuffer& buffer, const AnalysisConfig& cfg,
                            std::size_t index, std::span<const double> window);

/// Reference implementation: frames in order on the calling thread.
std::vector<FrameAnalysis> analyze_frames_serial(const AudioBuffer& buffer,
                                                 const AnalysisConfig& cfg);

/// Frames distributed over OpenMP threads. Output equals the serial version.
std::vector<FrameAnalysis> analyze_frames(const AudioBuffer& buffer, const AnalysisConfig& cfg);

struct SegmentAnalysis {
  Segment segment;
  double start_time = 0.0;
  double end_time = 0.0;
  PitchTrack pitch;
  BandTrack track;
  std::optional<ClassificationResult> classification;  // voiced segments only
};

struct Analysis {
  AnalysisConfig config;
  int sample_rate = 0;
  std::size_t sample_count = 0;
  std::vector<FrameAnalysis> frames;
  PitchTrack pitch;
  std::vector<SegmentAnalysis> segments;
};

/// Full pipeline: frames, segmentation, per-segment statistics and labels.
Analysis analyze(const AudioBuffer& buffer, const AnalysisConfig& cfg = {},
                 const std::vector<VowelTemplate>& templates = builtin_templates());

/// Sequential stages on top of precomputed frame results.
Analysis assemble(std::vector<FrameAnalysis> frames, int sample_rate, std::size_t sample_count,
                  const AnalysisConfig& cfg, const std::vector<VowelTemplate>& templates);

/// Band track over all frames of an analysis.
BandTrack whole_track(const Analysis& analysis);

/// The longest voiced segment, if any.
const SegmentAnalysis* longest_voiced(const Analysis& analysis);

}  // namespace vowelprint

#endif  // VOWELPRINT_PIPELINE_HPP_
