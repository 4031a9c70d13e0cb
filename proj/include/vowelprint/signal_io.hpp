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

#ifndef VOWELPRINT_SIGNAL_IO_HPP_
#define VOWELPRINT_SIGNAL_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace vowelprint {

/// Mono PCM audio normalized to [-1, 1].
class AudioBuffer {
 public:
  static constexpr int kMinSampleRate = 8000;

  AudioBuffer() = default;
  /// Throws Error(kInvalidAudio) when a sample lies outside [-1, 1] or the
  /// rate is below kMinSampleRate.
  AudioBuffer(std::vector<double> samples, int sample_rate);

  std::span<const double> samples() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration() const {
    return sample_rate_ > 0 ? static_cast<double>(samples_.size()) / sample_rate_ : 0.0;
  }

 private:
  std::vector<double> samples_;
  int sample_rate_ = 0;
};

enum class Window { kRectangular, kHann, kHamming };

std::string_view window_name(Window w);
/// Accepts "rectangular", "hann", "hamming". Throws Error(kInvalidConfig).
Window parse_window(std::string_view name);

/// Periodic window of length n.
std::vector<double> window_coefficients(Window w, std::size_t n);

struct FrameConfig {
  std::size_t frame_length = 4096;
  std::size_t hop_length = 1024;
  Window window = Window::kHann;

  /// Checks 0 < hop <= frame and the 50 Hz resolution bound at `sample_rate`.
  void validate(int sample_rate) const;
};

struct Frame {
  std::size_t index = 0;
  double start_time = 0.0;
  int sample_rate = 0;
  std::vector<double> samples;  // windowed
};

/// floor((len - frame) / hop) + 1, or 0 when len < frame.
std::size_t frame_count(std::size_t length, const FrameConfig& cfg);

/// Extracts one windowed frame. `window` must hold cfg.frame_length coefficients.
Frame make_frame(const AudioBuffer& buffer, const FrameConfig& cfg, std::size_t index,
                 std::span<const double> window);

/// All frames. Throws Error(kBufferTooShort) when the buffer is shorter than one frame.
std::vector<Frame> frames(const AudioBuffer& buffer, const FrameConfig& cfg);

/// Reads 16-bit PCM or 32-bit IEEE float RIFF/WAVE, mono or stereo.
/// Stereo is averaged to mono.
AudioBuffer load_wav(const std::filesystem::path& path);
AudioBuffer parse_wav(std::span<const unsigned char> bytes);

}  // namespace vowelprint

#endif  // VOWELPRINT_SIGNAL_IO_HPP_
