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

#include "vowelprint/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "vowelprint/error.hpp"

namespace vowelprint {

AudioBuffer::AudioBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ < kMinSampleRate) {
    throw Error(ErrorCode::kInvalidAudio,
                "sample rate " + std::to_string(sample_rate_) + " below " +
                    std::to_string(kMinSampleRate));
  }
  for (double s : samples_) {
    if (!(s >= -1.0 && s <= 1.0)) {
      throw Error(ErrorCode::kInvalidAudio, "sample outside [-1, 1]");
    }
  }
}

std::string_view window_name(Window w) {
  switch (w) {
    case Window::kRectangular: return "rectangular";
    case Window::kHann: return "hann";
    case Window::kHamming: return "hamming";
  }
  return "hann";
}

Window parse_window(std::string_view name) {
  if (name == "rectangular" || name == "rect") return Window::kRectangular;
  if (name == "hann" || name == "hanning") return Window::kHann;
  if (name == "hamming") return Window::kHamming;
  throw Error(ErrorCode::kInvalidConfig, "unknown window '" + std::string(name) + "'");
}

std::vector<double> window_coefficients(Window w, std::size_t n) {
  std::vector<double> out(n, 1.0);
  if (w == Window::kRectangular) return out;
  const double a0 = w == Window::kHann ? 0.5 : 0.54;
  const double a1 = 1.0 - a0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a0 - a1 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return out;
}

void FrameConfig::validate(int sample_rate) const {
  if (frame_length == 0 || hop_length == 0 || hop_length > frame_length) {
    throw Error(ErrorCode::kInvalidConfig, "require 0 < hop_length <= frame_length");
  }
  if (sample_rate <= 0 ||
      static_cast<double>(sample_rate) / static_cast<double>(frame_length) > 50.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "frame_length too short: spectral resolution above 50 Hz");
  }
}

std::size_t frame_count(std::size_t length, const FrameConfig& cfg) {
  if (cfg.hop_length == 0 || length < cfg.frame_length) return 0;
  return (length - cfg.frame_length) / cfg.hop_length + 1;
}

Frame make_frame(const AudioBuffer& buffer, const FrameConfig& cfg, std::size_t index,
                 std::span<const double> window) {
  Frame f;
  f.index = index;
  f.sample_rate = buffer.sample_rate();
  const std::size_t start = index * cfg.hop_length;
  f.start_time = static_cast<double>(start) / buffer.sample_rate();
  auto src = buffer.samples().subspan(start, cfg.frame_length);
  f.samples.resize(cfg.frame_length);
  std::transform(src.begin(), src.end(), window.begin(), f.samples.begin(),
                 [](double s, double w) { return s * w; });
  return f;
}

std::vector<Frame> frames(const AudioBuffer& buffer, const FrameConfig& cfg) {
  cfg.validate(buffer.sample_rate());
  if (buffer.size() < cfg.frame_length) {
    throw Error(ErrorCode::kBufferTooShort,
                std::to_string(buffer.size()) + " samples < frame length " +
                    std::to_string(cfg.frame_length));
  }
  const auto window = window_coefficients(cfg.window, cfg.frame_length);
  const std::size_t n = frame_count(buffer.size(), cfg);
  std::vector<Frame> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(make_frame(buffer, cfg, i, window));
  return out;
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t pos() const { return pos_; }

  bool tag(const char (&expected)[5]) {
    if (remaining() < 4) return false;
    bool ok = std::memcmp(bytes_.data() + pos_, expected, 4) == 0;
    pos_ += 4;
    return ok;
  }
  std::string tag() {
    std::string t(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return t;
  }
  std::uint16_t u16() {
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) |
                      static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8 |
                      static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16 |
                      static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24;
    pos_ += 4;
    return v;
  }
  void skip(std::size_t n) { pos_ += n; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

struct WavFormat {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

WavFormat read_fmt(ByteReader& r, std::uint32_t size) {
  if (size < 16) throw Error(ErrorCode::kMalformedWav, "fmt chunk shorter than 16 bytes");
  WavFormat f;
  f.tag = r.u16();
  f.channels = r.u16();
  f.sample_rate = r.u32();
  r.u32();  // byte rate
  f.block_align = r.u16();
  f.bits = r.u16();
  std::uint32_t consumed = 16;
  if (f.tag == kFormatExtensible && size >= 40) {
    r.u16();  // cbSize
    r.u16();  // valid bits
    r.u32();  // channel mask
    f.tag = r.u16();  // first two bytes of the subformat GUID
    r.skip(14);
    consumed = 40;
  }
  r.skip(size - consumed);
  return f;
}

float read_f32(const unsigned char* p) {
  std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
                       static_cast<std::uint32_t>(p[2]) << 16 |
                       static_cast<std::uint32_t>(p[3]) << 24;
  float v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

AudioBuffer parse_wav(std::span<const unsigned char> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 12 || !r.tag("RIFF")) {
    throw Error(ErrorCode::kMalformedWav, "missing RIFF magic");
  }
  const std::uint32_t riff_size = r.u32();
  if (!r.tag("WAVE")) throw Error(ErrorCode::kMalformedWav, "missing WAVE magic");
  if (riff_size < 4 || riff_size > bytes.size() - 8) {
    throw Error(ErrorCode::kMalformedWav, "RIFF size exceeds file");
  }

  std::optional<WavFormat> fmt;
  std::optional<std::span<const unsigned char>> data;
  while (r.remaining() >= 8 && !(fmt && data)) {
    const std::string id = r.tag();
    const std::uint32_t size = r.u32();
    if (size > r.remaining()) {
      throw Error(ErrorCode::kMalformedWav, "chunk '" + id + "' exceeds file");
    }
    if (id == "fmt ") {
      fmt = read_fmt(r, size);
    } else if (id == "data") {
      data = bytes.subspan(r.pos(), size);
      r.skip(size);
    } else {
      r.skip(size);
    }
    if (size % 2 == 1 && r.remaining() > 0) r.skip(1);
  }
  if (!fmt) throw Error(ErrorCode::kMalformedWav, "no fmt chunk");
  if (!data) throw Error(ErrorCode::kMalformedWav, "no data chunk");

  const bool pcm16 = fmt->tag == kFormatPcm && fmt->bits == 16;
  const bool float32 = fmt->tag == kFormatFloat && fmt->bits == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorCode::kUnsupportedEncoding,
                "format tag " + std::to_string(fmt->tag) + ", " +
                    std::to_string(fmt->bits) + " bits");
  }
  if (fmt->channels != 1 && fmt->channels != 2) {
    throw Error(ErrorCode::kUnsupportedEncoding,
                std::to_string(fmt->channels) + " channels");
  }
  const std::size_t width = fmt->bits / 8;
  if (fmt->block_align != width * fmt->channels) {
    throw Error(ErrorCode::kMalformedWav, "block align inconsistent with format");
  }
  const std::size_t count = data->size() / fmt->block_align;
  if (count == 0) throw Error(ErrorCode::kEmptyAudio, "data chunk holds no samples");
  if (fmt->sample_rate > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorCode::kMalformedWav, "sample rate out of range");
  }

  std::vector<double> samples(count);
  const unsigned char* p = data->data();
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < fmt->channels; ++c, p += width) {
      if (pcm16) {
        auto v = static_cast<std::int16_t>(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
        acc += static_cast<double>(v) / 32768.0;
      } else {
        acc += std::clamp(static_cast<double>(read_f32(p)), -1.0, 1.0);
      }
    }
    samples[i] = acc / fmt->channels;
  }
  return AudioBuffer(std::move(samples), static_cast<int>(fmt->sample_rate));
}

AudioBuffer load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return parse_wav(bytes);
}

}  // namespace vowelprint
