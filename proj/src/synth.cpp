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

#include "vowelprint/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "vowelprint/classifier.hpp"
#include "vowelprint/error.hpp"

namespace vowelprint {

double FormantPeak::center_at(double t, double duration) const {
  switch (sweep) {
    case Sweep::kNone: return center;
    case Sweep::kLinear: return center + (sweep_to - center) * (t / duration);
    case Sweep::kSine: return center + (sweep_to - center) * std::sin(std::numbers::pi * t / duration);
  }
  return center;
}

void SynthSpec::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kInvalidSpec, why); };
  if (sample_rate < AudioBuffer::kMinSampleRate) fail("sample rate below 8000 Hz");
  const double nyquist = sample_rate / 2.0;
  for (double f : {f0_start, f0_end}) {
    if (!(f > 0.0 && f <= nyquist / 4.0)) fail("f0 must lie in (0, Nyquist/4]");
  }
  if (!(duration > 0.0 && std::isfinite(duration))) fail("duration must be positive");
  if (!(noise_level >= 0.0 && std::isfinite(noise_level))) fail("noise level must be >= 0");
  for (const auto& p : formants) {
    if (!(p.center >= 0.0 && p.center < nyquist)) fail("formant centre outside [0, Nyquist)");
    if (p.sweep != Sweep::kNone && !(p.sweep_to >= 0.0 && p.sweep_to < nyquist)) {
      fail("formant sweep target outside [0, Nyquist)");
    }
    if (!(p.bandwidth > 0.0 && std::isfinite(p.bandwidth))) fail("formant bandwidth must be > 0");
    if (!(p.gain >= 0.0 && std::isfinite(p.gain))) fail("formant gain must be >= 0");
  }
}

AudioBuffer render(const SynthSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(std::llround(spec.duration * spec.sample_rate));
  const double sr = spec.sample_rate;
  const double nyquist = sr / 2.0;
  const double df = spec.f0_end - spec.f0_start;
  const int harmonics = static_cast<int>(std::floor(nyquist / std::max(spec.f0_start, spec.f0_end)));
  double max_gain = 0.0;
  for (const auto& p : spec.formants) max_gain = std::max(max_gain, p.gain);
  const double negligible = 1e-12 * max_gain;

  std::vector<double> x(n, 0.0);
  if (max_gain > 0.0) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / sr;
      const double f0 = spec.f0_start + df * t / spec.duration;
      const double phase = spec.f0_start * t + df * t * t / (2.0 * spec.duration);
      double acc = 0.0;
      for (int k = 1; k <= harmonics; ++k) {
        const double fk = k * f0;
        if (fk >= nyquist) break;
        double a = 0.0;
        for (const auto& p : spec.formants) {
          const double d = fk - p.center_at(t, spec.duration);
          a += p.gain * std::exp(-d * d / (2.0 * p.bandwidth * p.bandwidth));
        }
        if (a <= negligible) continue;
        acc += a * std::sin(2.0 * std::numbers::pi * k * phase);
      }
      x[i] = acc;
    }
  }
  if (spec.noise_level > 0.0) {
    std::mt19937_64 gen(spec.seed);
    for (double& s : x) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      s += spec.noise_level * (2.0 * u - 1.0);
    }
  }
  double peak = 0.0;
  for (double s : x) peak = std::max(peak, std::abs(s));
  if (peak > 0.0) {
    const double g = 0.9 / peak;
    for (double& s : x) s *= g;
  }
  return AudioBuffer(std::move(x), spec.sample_rate);
}

namespace {

// Harmonic of f0 inside `band` closest to the middle of `range`, preferring
// harmonics that fall inside the range; lower frequency wins ties.
double snap(const Band& range, const Band& band, double f0) {
  double best = 0.0;
  bool best_inside = false;
  for (int k = 1; k * f0 <= band.hi; ++k) {
    const double f = k * f0;
    if (f < band.lo) continue;
    const bool inside = range.contains(f);
    const double d = std::abs(f - range.mid());
    if (best == 0.0 || (inside && !best_inside) ||
        (inside == best_inside && d < std::abs(best - range.mid()))) {
      best = f;
      best_inside = inside;
    }
  }
  return best;
}

}  // namespace

SynthSpec vowel_spec(std::string_view label, double f0, double duration, int sample_rate) {
  auto canon = canonical_vowel(label);
  const auto& templates = builtin_templates();
  auto it = std::find_if(templates.begin(), templates.end(),
                         [&](const VowelTemplate& t) { return canon && t.label == *canon; });
  if (it == templates.end()) {
    throw Error(ErrorCode::kUnknownVowel, "no rule template for '" + std::string(label) + "'");
  }
  const VowelTemplate& t = *it;
  const BandConfig bands;
  SynthSpec spec;
  spec.f0_start = spec.f0_end = f0;
  spec.duration = duration;
  spec.sample_rate = sample_rate;
  if (!(f0 > 0.0)) {
    spec.validate();  // reports the invalid f0
  }

  const double bw = 0.25 * f0;
  // Weak broadband source so every harmonic exists for pitch estimation; it
  // stays below the harmonic masking depth.
  spec.formants.push_back({0.0, 1500.0, 0.05});

  const double low1 = snap(t.low_range, bands.lower, f0);
  spec.formants.push_back({low1, bw, 1.0});
  const double low2 = t.low_dominance == Dominance::kFirstOverSecond ? low1 - f0 : low1 + f0;
  if (low2 >= bands.lower.lo && low2 <= bands.lower.hi) spec.formants.push_back({low2, bw, 0.5});

  switch (t.up_shape) {
    case UpShape::kTwoBands: {
      const double up1 = snap(*t.up1_range, bands.upper, f0);
      double up2 = snap(*t.up2_range, bands.upper, f0);
      if (up2 == up1) up2 += f0;
      spec.formants.push_back({up1, bw, 1.0});
      spec.formants.push_back({up2, bw, 0.6});
      break;
    }
    case UpShape::kSecondOverFirst: {
      const double up1 = snap(*t.up1_range, bands.upper, f0);
      // One harmonic of separation keeps the pair resolved as two regions.
      const double up2 = up1 + 2.0 * f0 <= bands.upper.hi ? up1 + 2.0 * f0 : up1 + f0;
      spec.formants.push_back({up1, bw, 1.0});
      spec.formants.push_back({up2, bw, 0.6});
      break;
    }
    case UpShape::kConvexUp:
      spec.formants.push_back(
          {t.up1_range->lo, 0.5 * f0, 1.0, Sweep::kSine, t.up1_range->hi});
      break;
    case UpShape::kSingleBand:
      spec.formants.push_back({snap(*t.up1_range, bands.upper, f0), bw, 1.0});
      break;
  }
  return spec;
}

AudioBuffer render_vowel(std::string_view label, double f0, double duration, int sample_rate) {
  return render(vowel_spec(label, f0, duration, sample_rate));
}

std::vector<unsigned char> encode_wav(const AudioBuffer& buffer) {
  if (buffer.empty()) throw Error(ErrorCode::kEmptyAudio, "refusing to write zero samples");
  const auto data_bytes = static_cast<std::uint32_t>(buffer.size() * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  auto tag = [&](const char* s) { out.insert(out.end(), s, s + 4); };
  auto u16 = [&](std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xFF));
    out.push_back(static_cast<unsigned char>(v >> 8));
  };
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
  };
  const auto rate = static_cast<std::uint32_t>(buffer.sample_rate());
  tag("RIFF");
  u32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(1);
  u16(1);
  u32(rate);
  u32(rate * 2);
  u16(2);
  u16(16);
  tag("data");
  u32(data_bytes);
  for (double s : buffer.samples()) {
    const double q = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  const auto bytes = encode_wav(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

AudioBuffer concat(const std::vector<AudioBuffer>& parts) {
  if (parts.empty()) throw Error(ErrorCode::kEmptyAudio, "nothing to concatenate");
  const int rate = parts.front().sample_rate();
  std::vector<double> out;
  for (const auto& p : parts) {
    if (p.sample_rate() != rate) throw Error(ErrorCode::kInvalidAudio, "sample rates differ");
    out.insert(out.end(), p.samples().begin(), p.samples().end());
  }
  return AudioBuffer(std::move(out), rate);
}

AudioBuffer silence(double duration, int sample_rate) {
  return AudioBuffer(
      std::vector<double>(static_cast<std::size_t>(std::llround(duration * sample_rate)), 0.0),
      sample_rate);
}

AudioBuffer scaled(const AudioBuffer& buffer, double gain) {
  std::vector<double> out(buffer.samples().begin(), buffer.samples().end());
  for (double& s : out) s *= gain;
  return AudioBuffer(std::move(out), buffer.sample_rate());
}

}  // namespace vowelprint
