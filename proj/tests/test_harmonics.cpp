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

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"
#include "vowelprint/error.hpp"
#include "vowelprint/harmonics.hpp"
#include "vowelprint/pitch.hpp"
#include "vowelprint/synth.hpp"

using namespace vowelprint;

namespace {
constexpr int kRate = 16000;

FrameHarmonics extract(const std::vector<double>& x) {
  auto spec = vptest::frame_spectrum(x, kRate);
  return extract_frame_harmonics(spec, estimate_pitch(spec, {}), {});
}

FrameHarmonics with_up1(double hz) {
  FrameHarmonics h;
  h.voiced = true;
  h.up1 = vptest::peak(hz, 1.0);
  h.low1 = vptest::peak(300.0, 1.0);
  return h;
}
}  // namespace

TEST_CASE("formant-shaped vowel at 150 Hz") {
  SynthSpec s;
  s.f0_start = s.f0_end = 150;
  s.duration = 0.3;
  s.formants = {{450, 100, 1.0}, {1800, 100, 0.8}, {0, 1500, 0.05}};
  auto buf = render(s);
  std::vector<double> x(buf.samples().begin(), buf.samples().begin() + 4096);
  auto spec = vptest::frame_spectrum(x, kRate);
  auto h = extract_frame_harmonics(spec, estimate_pitch(spec, {}), {});
  REQUIRE(h.voiced);
  REQUIRE(h.low1);
  REQUIRE(h.up1);
  CHECK(std::abs(h.low1->frequency - 450) <= spec.bin_hz);
  CHECK(std::abs(h.up1->frequency - 1800) <= spec.bin_hz);
}

TEST_CASE("single 300 Hz sinusoid") {
  auto h = extract(vptest::harmonic_series(300.0, {1.0}, kRate, 4096));
  REQUIRE(h.voiced);
  REQUIRE(h.low1);
  CHECK(std::abs(h.low1->frequency - 300.0) <= 3.91);
  CHECK_FALSE(h.low2);
  CHECK_FALSE(h.up1);
  CHECK_FALSE(h.up2);
}

TEST_CASE("unvoiced frame has no peaks") {
  FrameSpectrum spec{std::vector<double>(2049, 1.0), 3.90625, 0, 4096};
  auto h = extract_frame_harmonics(spec, PitchEstimate{}, {});
  CHECK(h == FrameHarmonics{});
}

TEST_CASE("harmonic gate, band membership and dominance order") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double f0 = 90 + 220 * u(gen);
    std::vector<double> amps(20);
    for (double& a : amps) a = u(gen);
    auto spec = vptest::frame_spectrum(vptest::harmonic_series(f0, amps, kRate, 4096), kRate);
    auto p = estimate_pitch(spec, {});
    auto h = extract_frame_harmonics(spec, p, {});
    if (!h.voiced) continue;
    const double est = *p.f0;
    BandConfig bands;
    auto gated = [&](const std::optional<SpectralPeak>& pk, const Band& b) {
      if (!pk) return;
      CHECK(b.contains(pk->frequency));
      const double k = std::max(1.0, std::round(pk->frequency / est));
      CHECK(std::abs(pk->frequency - k * est) <= est / 2);
    };
    gated(h.low1, bands.lower);
    gated(h.low2, bands.lower);
    gated(h.up1, bands.upper);
    gated(h.up2, bands.upper);
    if (h.low1 && h.low2) CHECK(h.low1->intensity >= h.low2->intensity);
    if (h.up1 && h.up2) CHECK(h.up1->intensity >= h.up2->intensity);
    if (!h.low1) CHECK_FALSE(h.low2);
    if (!h.up1) CHECK_FALSE(h.up2);
  }
}

TEST_CASE("band config validation") {
  CHECK_NOTHROW(BandConfig{}.validate());
  CHECK_THROWS_AS((BandConfig{{60, 800}, {750, 2500}}.validate()), Error);
  CHECK_THROWS_AS((BandConfig{{60, 50}, {750, 2500}}.validate()), Error);
}

TEST_CASE("trend examples") {
  std::vector<double> t, v;
  SUBCASE("flat") {
    for (int i = 0; i < 10; ++i) {
      t.push_back(i * 0.05);
      v.push_back(900.0);
    }
    auto f = fit_trend(t, v);
    REQUIRE(f);
    CHECK(f->trend == Trend::kFlat);
  }
  SUBCASE("rising 800 to 1300 over 0.5 s") {
    for (int i = 0; i <= 10; ++i) {
      t.push_back(i * 0.05);
      v.push_back(800.0 + 1000.0 * i * 0.05);
    }
    auto f = fit_trend(t, v);
    REQUIRE(f);
    CHECK(f->trend == Trend::kRising);
    CHECK(std::abs(f->slope - 1000.0) < 1e-6);
  }
  SUBCASE("half sine is convex up") {
    const double T = 0.8;
    for (int i = 0; i <= 16; ++i) {
      t.push_back(i * T / 16);
      v.push_back(800.0 + 500.0 * std::sin(vptest::kPi * t.back() / T));
    }
    auto f = fit_trend(t, v);
    REQUIRE(f);
    CHECK(f->trend == Trend::kConvexUp);
  }
  SUBCASE("too few points") {
    t = {0.0, 0.1};
    v = {1.0, 2.0};
    CHECK_FALSE(fit_trend(t, v));
  }
  CHECK(parse_trend(trend_name(Trend::kConvexUp)) == Trend::kConvexUp);
}

TEST_CASE("trend is invariant under time shift") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> t, ts, v;
    const double a = 2000 * u(gen), b = 600 * u(gen);
    for (int i = 0; i < 12; ++i) {
      t.push_back(i * 0.064);
      ts.push_back(i * 0.064 + 3.7);
      v.push_back(1000 + b * t.back() + a * t.back() * t.back());
    }
    auto f1 = fit_trend(t, v), f2 = fit_trend(ts, v);
    CHECK(f1->trend == f2->trend);
  }
}

TEST_CASE("band track uses voiced frames with up1") {
  std::vector<FrameHarmonics> frames;
  for (int i = 0; i < 10; ++i) frames.push_back(with_up1(900.0 + 50.0 * i));
  frames.insert(frames.begin() + 3, FrameHarmonics{});  // unvoiced gap
  auto bt = band_track(frames, 0.064);
  REQUIRE(bt.trend_up1);
  CHECK(*bt.trend_up1 == Trend::kRising);
  CHECK(*bt.up1_mean == doctest::Approx(1125.0));

  std::vector<FrameHarmonics> two{with_up1(900), with_up1(900)};
  auto none = band_track(two, 0.064);
  CHECK_FALSE(none.trend_up1);
}

TEST_CASE("segmentation") {
  auto voiced_est = [](double f0) {
    PitchEstimate e;
    e.voiced = true;
    e.f0 = f0;
    e.intensity = 1.0;
    return e;
  };
  SUBCASE("all unvoiced") {
    PitchTrack pt;
    pt.estimates.resize(12);
    std::vector<FrameHarmonics> h(12);
    auto s = segment(pt, h);
    REQUIRE(s.size() == 1);
    CHECK_FALSE(s[0].voiced);
    CHECK(s[0].start_frame == 0);
    CHECK(s[0].end_frame == 12);
  }
  SUBCASE("unvoiced, voiced, unvoiced") {
    PitchTrack pt;
    std::vector<FrameHarmonics> h;
    for (int i = 0; i < 20; ++i) {
      const bool v = i >= 5 && i < 15;
      pt.estimates.push_back(v ? voiced_est(150) : PitchEstimate{});
      h.push_back(v ? with_up1(900) : FrameHarmonics{});
    }
    auto s = segment(pt, h);
    REQUIRE(s.size() == 3);
    CHECK(s[1].voiced);
    CHECK(s[1].start_frame == 5);
    CHECK(s[1].end_frame == 15);
  }
  SUBCASE("up1 step splits a voiced run") {
    PitchTrack pt;
    std::vector<FrameHarmonics> h;
    for (int i = 0; i < 16; ++i) {
      pt.estimates.push_back(voiced_est(150));
      h.push_back(with_up1(i < 9 ? 900 : 1800));
    }
    auto s = segment(pt, h);
    REQUIRE(s.size() == 2);
    CHECK(s[1].start_frame == 9);
    CHECK(s[1].dynamics_split);
  }
  SUBCASE("one-frame glitches do not split, short runs fold") {
    PitchTrack pt;
    std::vector<FrameHarmonics> h;
    for (int i = 0; i < 16; ++i) {
      pt.estimates.push_back(i == 7 ? PitchEstimate{} : voiced_est(150));
      h.push_back(i == 7 ? FrameHarmonics{} : with_up1(i == 3 ? 1500 : 900));
    }
    auto s = segment(pt, h);
    REQUIRE(s.size() == 1);
    CHECK(s[0].voiced);
  }
  SUBCASE("partition property on random voicing") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 30; ++trial) {
      PitchTrack pt;
      std::vector<FrameHarmonics> h;
      const std::size_t n = 1 + gen() % 60;
      for (std::size_t i = 0; i < n; ++i) {
        const bool v = gen() % 3 != 0;
        pt.estimates.push_back(v ? voiced_est(150) : PitchEstimate{});
        h.push_back(v ? with_up1(800.0 + static_cast<double>(gen() % 1500)) : FrameHarmonics{});
      }
      auto s = segment(pt, h);
      REQUIRE(!s.empty());
      CHECK(s.front().start_frame == 0);
      CHECK(s.back().end_frame == n);
      for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i].start_frame == s[i - 1].end_frame);
        CHECK(s[i].start_frame < s[i].end_frame);
        CHECK((s[i].voiced != s[i - 1].voiced || s[i].dynamics_split));
      }
    }
  }
  SUBCASE("length mismatch") {
    PitchTrack pt;
    pt.estimates.resize(3);
    std::vector<FrameHarmonics> h(4);
    CHECK_THROWS_AS(segment(pt, h), Error);
  }
}
