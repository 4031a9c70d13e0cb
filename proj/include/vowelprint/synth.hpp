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

#ifndef VOWELPRINT_SYNTH_HPP_
#define VOWELPRINT_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "vowelprint/signal_io.hpp"

namespace vowelprint {

enum class Sweep { kNone, kLinear, kSine };

/// Gaussian amplitude bump over harmonic frequency. With a sweep the centre
/// moves from `center` towards `sweep_to`: linearly over the whole duration,
/// or along a half sine (reaching `sweep_to` at mid-duration and returning).
struct FormantPeak {
  double center = 0.0;     // Hz
  double bandwidth = 0.0;  // Hz, Gaussian standard deviation
  double gain = 0.0;       // linear
  Sweep sweep = Sweep::kNone;
  double sweep_to = 0.0;

  double center_at(double t, double duration) const;
};

struct SynthSpec {
  double f0_start = 150.0;
  double f0_end = 150.0;
  double duration = 1.0;
  int sample_rate = 16000;
  std::vector<FormantPeak> formants;
  double noise_level = 0.0;
  std::uint64_t seed = 0;

  /// Throws Error(kInvalidSpec).
  void validate() const;
};

/// Additive harmonic synthesis shaped by the formant bumps, plus seeded
/// uniform noise; peak-normalized to 0.9 unless silent.
AudioBuffer render(const SynthSpec& spec);

/// The SynthSpec behind render_vowel: formant bumps placed on the harmonics of `f0`
/// that best realize the vowel's rule ranges.
/// Throws Error(kUnknownVowel).
SynthSpec vowel_spec(std::string_view label, double f0, double duration, int sample_rate);

AudioBuffer render_vowel(std::string_view label, double f0, double duration, int sample_rate);

/// Encodes 16-bit PCM mono RIFF/WAVE. Throws Error(kEmptyAudio).
std::vector<unsigned char> encode_wav(const AudioBuffer& buffer);

/// Throws Error(kEmptyAudio) or Error(kIoFailure).
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);

/// Joins buffers of equal sample rate end to end.
AudioBuffer concat(const std::vector<AudioBuffer>& parts);

/// Zero-valued buffer.
AudioBuffer silence(double duration, int sample_rate);

/// Same buffer with every sample multiplied by `gain`; samples must stay in [-1, 1].
AudioBuffer scaled(const AudioBuffer& buffer, double gain);

}  // namespace vowelprint

#endif  // VOWELPRINT_SYNTH_HPP_
