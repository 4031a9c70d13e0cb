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


#include <doctest.h>

#include <random>
#include <vector>

#include "support.hpp"
#include "vowelprint/error.hpp"
#include "vowelprint/pipeline.hpp"
#include "vowelprint/pitch.hpp"
#include "vowelprint/synth.hpp"

using namespace vowelprint;

namespace {
constexpr int kRate = 16000;

PitchEstimate voiced_at(double f0, double intensity = 1.0) {
  PitchEstimate e;
  e.f0 = f0;
  e.voiced = true;
  e.intensity = intensity;
  return e;
}
}  // namespace

TEST_CASE("140 Hz series with 10 equal harmonics") {
  auto spec = vptest::frame_spectrum(
      vptest::harmonic_series(140.0, std::vector<double>(10, 1.0), kRate, 4096), kRate);
  auto e = estimate_pitch(spec, {});
  REQUIRE(e.voiced);
  REQUIRE(e.f0);
  CHECK(std::abs(*e.f0 - 140.0) <= spec.bin_hz);
  CHECK(e.intensity > 0.0);
}

TEST_CASE("silence and noise are unvoiced") {
  FrameSpectrum zero{std::vector<double>(2049, 0.0), 3.90625, 0, 4096};
  auto z = estimate_pitch(zero, {});
  CHECK_FALSE(z.voiced);
  CHECK_FALSE(z.f0);

  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> noise(4096);
  for (double& v : noise) v = u(gen);
  auto n = estimate_pitch(vptest::frame_spectrum(noise, kRate), {});
  CHECK_FALSE(n.voiced);
  CHECK(n.harmonicity < 0.5);
}

TEST_CASE("band coverage and config checks") {
  FrameSpectrum narrow{std::vector<double>(257, 0.0), 1.0, 0, 512};  // Nyquist 256 Hz
  CHECK_THROWS_AS(estimate_pitch(narrow, {}), Error);
  PitchConfig bad;
  bad.f0_min = 400;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("voicing is monotone in SNR") {
  auto clean = vptest::harmonic_series(160.0, {1.0, 0.8, 0.6, 0.5, 0.4}, kRate, 4096);
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> noise(4096);
  for (double& v : noise) v = u(gen);
  bool seen_voiced = false;
  // Decreasing noise gain means increasing SNR.
  for (double g = 8.0; g >= 0.0; g -= 0.25) {
    std::vector<double> x(4096);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = clean[i] + g * noise[i];
    const bool v = estimate_pitch(vptest::frame_spectrum(x, kRate), {}).voiced;
    if (seen_voiced) CHECK(v);
    seen_voiced = seen_voiced || v;
  }
  CHECK(seen_voiced);
}

TEST_CASE("track statistics") {
  SUBCASE("constant") {
    std::vector<PitchEstimate> e(10, voiced_at(200.0));
    auto t = track(e, 0.064);
    CHECK(*t.f0_mean == doctest::Approx(200.0));
    CHECK(*t.f0_deviation == doctest::Approx(0.0));
    CHECK(*t.f0_slope == doctest::Approx(0.0));
  }
  SUBCASE("linear rise 150 to 250 over one second") {
    std::vector<PitchEstimate> e;
    for (int i = 0; i <= 10; ++i) e.push_back(voiced_at(150.0 + 10.0 * i, 1.0 + i));
    auto t = track(e, 0.1);
    CHECK(std::abs(*t.f0_slope - 100.0) < 1e-6);
    CHECK(*t.intensity_slope == doctest::Approx(10.0));
    CHECK(*t.f0_deviation == doctest::Approx(std::sqrt(1000.0)));  // population sd of 0..100 step 10
  }
  SUBCASE("unvoiced frames are skipped, one voiced frame gives no stats") {
    std::vector<PitchEstimate> e(5);
    e[2] = voiced_at(120.0);
    auto t = track(e, 0.064);
    CHECK(t.voiced_count() == 1);
    CHECK_FALSE(t.f0_mean);
    CHECK_FALSE(t.f0_slope);
  }
  SUBCASE("intensity scaling touches only intensity slope") {
    std::vector<PitchEstimate> a, b;
    for (int i = 0; i < 8; ++i) {
      a.push_back(voiced_at(100.0 + i * i, 1.0 + i));
      b.push_back(voiced_at(100.0 + i * i, 3.0 * (1.0 + i)));
    }
    auto ta = track(a, 0.05), tb = track(b, 0.05);
    CHECK(*ta.f0_mean == *tb.f0_mean);
    CHECK(*ta.f0_deviation == *tb.f0_deviation);
    CHECK(*ta.f0_slope == *tb.f0_slope);
    CHECK(*tb.intensity_slope == doctest::Approx(3.0 * *ta.intensity_slope));
  }
}

TEST_CASE("glide 120 to 180 Hz gives a 60 Hz/s slope") {
  SynthSpec s;
  s.f0_start = 120;
  s.f0_end = 180;
  s.duration = 1.0;
  s.formants = {{0.0, 1500.0, 1.0}};
  auto buf = render(s);
  AnalysisConfig cfg;
  cfg.frame.frame_length = 2048;
  cfg.frame.hop_length = 256;
  auto frames = analyze_frames(buf, cfg);
  std::vector<PitchEstimate> est;
  for (const auto& f : frames) est.push_back(f.pitch);
  auto t = track(est, cfg.hop_seconds(kRate));
  REQUIRE(t.f0_slope);
  CHECK(*t.f0_slope == doctest::Approx(60.0).epsilon(0.05));
}

TEST_CASE("harmonic ratio") {
  const double f0 = 150.0;
  SUBCASE("1/k amplitudes") {
    auto spec = vptest::frame_spectrum(
        vptest::harmonic_series(f0, {1.0, 0.5, 1.0 / 3, 0.25, 0.2}, kRate, 4096), kRate);
    auto e = estimate_pitch(spec, {});
    REQUIRE(e.voiced);
    CHECK(harmonic_ratio(spec, e, 2) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(harmonic_ratio(spec, e, 4) == doctest::Approx(0.25).epsilon(0.05));
  }
  SUBCASE("missing third harmonic") {
    auto spec = vptest::frame_spectrum(
        vptest::harmonic_series(f0, {1.0, 0.7, 0.0, 0.5, 0.4}, kRate, 4096), kRate);
    auto e = estimate_pitch(spec, {});
    REQUIRE(e.voiced);
    CHECK(harmonic_ratio(spec, e, 3) == 0.0);
  }
  SUBCASE("errors") {
    auto spec = vptest::frame_spectrum(vptest::harmonic_series(f0, {1.0, 0.5}, kRate, 4096), kRate);
    auto e = estimate_pitch(spec, {});
    CHECK_THROWS_AS(harmonic_ratio(spec, e, 1), Error);
    CHECK_THROWS_AS(harmonic_ratio(spec, e, 60), Error);
    CHECK_THROWS_AS(harmonic_ratio(spec, PitchEstimate{}, 2), Error);
  }
}

TEST_CASE("ols slope") {
  std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  CHECK(*ols_slope(x, y) == doctest::Approx(2.0));
  std::vector<double> one{1.0};
  CHECK_FALSE(ols_slope(one, one));
}
